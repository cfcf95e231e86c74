"""Centre-selection strategies for the hidden layer."""

from __future__ import annotations

import warnings

import numpy as np

from .errors import CapabilityError, ConfigurationError, DomainError


def uniform_centres(low, high, n: int) -> np.ndarray:
    """n equally spaced 1-D centres spanning [low, high] inclusive.

    n = 1 returns the left endpoint. Grids for P > 1 are unsupported;
    use gaussian_centres or kmeans_centres instead.
    """
    low = np.atleast_1d(np.asarray(low, dtype=float))
    high = np.atleast_1d(np.asarray(high, dtype=float))
    if low.size != 1 or high.size != 1:
        raise CapabilityError("uniform grids are only defined for 1-D inputs")
    if n < 1:
        raise DomainError("centre count must be >= 1")
    if not low[0] < high[0]:
        raise DomainError(f"low must be < high, got [{low[0]}, {high[0]}]")
    return np.linspace(low[0], high[0], n)[:, None]


def gaussian_centres(data, n: int, seed: int = 0) -> np.ndarray:
    """Centres drawn per feature from Normal(mean_p, std_p) of the data."""
    data = np.atleast_2d(np.asarray(data, dtype=float))
    if data.shape[0] < 2:
        raise ConfigurationError("gaussian sampling needs at least 2 datapoints")
    if n < 1:
        raise DomainError("centre count must be >= 1")
    mean = data.mean(axis=0)
    std = data.std(axis=0)
    if np.any(std == 0):
        warnings.warn(
            "zero-variance feature(s): centres fall back to the feature mean",
            stacklevel=2,
        )
    rng = np.random.default_rng(seed)
    return rng.normal(mean, std, size=(n, data.shape[1]))


def kmeans_centres(
    data,
    n: int,
    seed: int = 0,
    max_iters: int = 100,
    return_objective: bool = False,
):
    """Lloyd's algorithm from a seeded random assignment of points to clusters.

    Stops at an assignment fixed point or after max_iters. Empty clusters are
    reseeded from the point farthest from its current centre. With
    return_objective, also returns the within-cluster sum of squares per
    iteration.
    """
    data = np.atleast_2d(np.asarray(data, dtype=float))
    m = data.shape[0]
    if n < 1:
        raise DomainError("centre count must be >= 1")
    if n > m:
        raise ConfigurationError(f"cannot form {n} clusters from {m} points")
    rng = np.random.default_rng(seed)
    # balanced random start guarantees every cluster is non-empty
    assignment = rng.permutation(np.arange(m) % n)
    centres = _cluster_means(data, assignment, n)
    objective = []
    for _ in range(max_iters):
        dists = np.linalg.norm(data[:, None, :] - centres[None, :, :], axis=2)
        new_assignment = np.argmin(dists, axis=1)
        for k in range(n):
            if not np.any(new_assignment == k):
                # steal the farthest point, but never empty a singleton cluster
                counts = np.bincount(new_assignment, minlength=n)
                movable = counts[new_assignment] > 1
                own_dist = np.where(movable, dists[np.arange(m), new_assignment], -np.inf)
                new_assignment[np.argmax(own_dist)] = k
        objective.append(float(np.sum(dists[np.arange(m), new_assignment] ** 2)))
        if np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment
        centres = _cluster_means(data, assignment, n)
    if return_objective:
        return centres, objective
    return centres


def _cluster_means(data: np.ndarray, assignment: np.ndarray, n: int) -> np.ndarray:
    centres = np.empty((n, data.shape[1]))
    for k in range(n):
        centres[k] = data[assignment == k].mean(axis=0)
    return centres
