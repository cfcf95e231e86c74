"""Dense statevector simulation of the data-encoding circuit.

Each scalar feature is rotated onto the Bloch sphere twice (two qubits per
feature) and the joint register is passed through an entangling unitary.
Qubit 0 is the most significant bit of the amplitude index, so the CNOT
matrix below has its control on the first qubit.

The rotation convention keeps the full angle in the trigonometric argument
(no 1/2 factor): rx(theta)|0> = (cos theta, -i sin theta).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ConfigurationError, DomainError

MAX_FEATURES = 4  # 2 qubits per feature, 8 qubits / 256 amplitudes total

CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class FeatureMap:
    """Encoding configuration shared by every datapoint and centre of a model."""

    feature_count: int
    alpha: np.ndarray  # per-feature scaling, radians per data unit
    entangler_seed: int = 0

    def __post_init__(self):
        alpha = np.atleast_1d(np.asarray(self.alpha, dtype=float))
        object.__setattr__(self, "alpha", alpha)
        if self.feature_count < 1:
            raise ConfigurationError("feature_count must be >= 1")
        if alpha.shape != (self.feature_count,):
            raise ConfigurationError(
                f"alpha has shape {alpha.shape}, expected ({self.feature_count},)"
            )
        if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0):
            raise ConfigurationError("alpha entries must be finite and > 0")


@dataclass(frozen=True)
class Entangler:
    """Unitary applied after the rotation layer. kind is 'cnot' or 'haar'."""

    matrix: np.ndarray
    kind: str

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def single_qubit_rx_state(theta: float) -> np.ndarray:
    """State of one qubit after rotating |0> by the full angle theta."""
    theta = float(theta)
    if not np.isfinite(theta):
        raise DomainError(f"rotation angle must be finite, got {theta}")
    return np.array([np.cos(theta), -1j * np.sin(theta)])


def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    R-diagonal phases folded into Q."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def make_entangler(feature_count: int, seed: int = 0) -> Entangler:
    """CNOT for a single feature (two qubits), seeded Haar unitary otherwise."""
    if not 1 <= feature_count <= MAX_FEATURES:
        raise CapabilityError(
            f"feature_count must be in [1, {MAX_FEATURES}], got {feature_count}"
        )
    if feature_count == 1:
        return Entangler(CNOT.copy(), "cnot")
    dim = 4**feature_count
    rng = np.random.default_rng(seed)
    return Entangler(haar_random_unitary(dim, rng), "haar")


def identity_entangler(feature_count: int) -> Entangler:
    """Identity in place of the entangling layer (diagnostics only)."""
    return Entangler(np.eye(4**feature_count, dtype=complex), "identity")


def encode(x, feature_map: FeatureMap, entangler: Entangler) -> np.ndarray:
    """Encode one datapoint: tensor the per-feature qubit pairs, then entangle."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    p = feature_map.feature_count
    if x.shape != (p,):
        raise ConfigurationError(f"datapoint has shape {x.shape}, expected ({p},)")
    if entangler.dim != 4**p:
        raise ConfigurationError(
            f"entangler dimension {entangler.dim} does not match 4^{p}"
        )
    state = np.ones(1, dtype=complex)
    for theta in feature_map.alpha * x:
        qubit = single_qubit_rx_state(theta)
        state = np.kron(state, np.kron(qubit, qubit))
    return entangler.matrix @ state


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Squared overlap |<a|b>|^2, clamped into [0, 1] against rounding."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DomainError(f"state lengths differ: {a.shape} vs {b.shape}")
    return float(min(max(abs(np.vdot(a, b)) ** 2, 0.0), 1.0))
