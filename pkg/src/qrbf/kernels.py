"""Kernel functions and assembly of the kernel matrix.

The quantum kernel is the state fidelity used directly as the matrix entry
(a linear kernel function applied to the overlap). Classical kernels act on
the Euclidean distance between a datapoint and a centre.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError
from .quantum import Entangler, FeatureMap, encode, fidelity, make_entangler

CLASSICAL_KINDS = ("linear", "gaussian", "spline")
QUANTUM_KIND = "quantum"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice applied uniformly across all centres.

    kind 'quantum' requires a feature_map; 'gaussian' requires gamma > 0.
    """

    kind: str
    gamma: float | None = None
    feature_map: FeatureMap | None = None

    def __post_init__(self):
        if self.kind == QUANTUM_KIND:
            if self.feature_map is None:
                raise ConfigurationError("quantum kernel requires a feature_map")
        elif self.kind == "gaussian":
            if self.gamma is None or not self.gamma > 0:
                raise ConfigurationError("gaussian kernel requires gamma > 0")
        elif self.kind not in CLASSICAL_KINDS:
            raise ConfigurationError(f"unknown kernel kind {self.kind!r}")

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.gamma is not None:
            d["gamma"] = self.gamma
        if self.feature_map is not None:
            d["feature_map"] = {
                "feature_count": self.feature_map.feature_count,
                "alpha": self.feature_map.alpha.tolist(),
                "entangler_seed": self.feature_map.entangler_seed,
            }
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "KernelSpec":
        fm = d.get("feature_map")
        feature_map = None
        if fm is not None:
            feature_map = FeatureMap(
                feature_count=int(fm["feature_count"]),
                alpha=np.asarray(fm["alpha"], dtype=float),
                entangler_seed=int(fm["entangler_seed"]),
            )
        return cls(kind=d["kind"], gamma=d.get("gamma"), feature_map=feature_map)


def eval_classical(kind: str, z: float, gamma: float | None = None) -> float:
    """Classical kernel value at distance z >= 0."""
    z = float(z)
    if not np.isfinite(z) or z < 0:
        raise DomainError(f"distance must be finite and >= 0, got {z}")
    if kind == "linear":
        return z
    if kind == "gaussian":
        if gamma is None or not gamma > 0:
            raise ConfigurationError("gaussian kernel requires gamma > 0")
        return float(np.exp(-gamma * z * z))
    if kind == "spline":
        # z log z -> 0 as z -> 0+
        return 0.0 if z == 0.0 else float(z * np.log(z))
    raise ConfigurationError(f"unknown classical kernel kind {kind!r}")


def eval_quantum(x, y, feature_map: FeatureMap, entangler: Entangler) -> float:
    """Fidelity of the two encoded states."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape:
        raise DomainError(f"datapoint shapes differ: {x.shape} vs {y.shape}")
    return fidelity(encode(x, feature_map, entangler), encode(y, feature_map, entangler))


def _encode_rows(points: np.ndarray, feature_map: FeatureMap, entangler: Entangler) -> np.ndarray:
    return np.stack([encode(row, feature_map, entangler) for row in points])


def build_kernel_matrix(data, centres, spec: KernelSpec, entangler: Entangler | None = None) -> np.ndarray:
    """Kernel matrix with entry (i, j) = kernel(data_i, centre_j).

    For the quantum kernel the entangler is derived from the feature map's
    seed unless one is supplied explicitly.
    """
    data = np.atleast_2d(np.asarray(data, dtype=float))
    centres = np.atleast_2d(np.asarray(centres, dtype=float))
    if data.shape[1] != centres.shape[1]:
        raise ConfigurationError(
            f"data has {data.shape[1]} columns but centres have {centres.shape[1]}"
        )
    if data.shape[0] < 1 or centres.shape[0] < 1:
        raise ConfigurationError("data and centres must each have at least one row")

    if spec.kind == QUANTUM_KIND:
        fm = spec.feature_map
        if data.shape[1] != fm.feature_count:
            raise ConfigurationError(
                f"data has {data.shape[1]} columns but feature map expects {fm.feature_count}"
            )
        if entangler is None:
            entangler = make_entangler(fm.feature_count, fm.entangler_seed)
        states_d = _encode_rows(data, fm, entangler)
        states_c = _encode_rows(centres, fm, entangler)
        phi = np.abs(states_d @ states_c.conj().T) ** 2
        return np.clip(phi, 0.0, 1.0)

    diff = data[:, None, :] - centres[None, :, :]
    z = np.linalg.norm(diff, axis=2)
    if spec.kind == "linear":
        return z
    if spec.kind == "gaussian":
        return np.exp(-spec.gamma * z * z)
    # spline, with the z = 0 limit defined as 0
    return np.where(z > 0, z * np.log(np.where(z > 0, z, 1.0)), 0.0)
