"""Small dense real linear algebra with an explicit tolerance policy.

Everything downstream works with operators of size at most 64, stored as
numpy arrays.  Rank decisions are made on singular values relative to the
largest one; eigenvalue multiplicities are decided with a coarser clustering
threshold so that module-dimension counting survives accumulated round-off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NearSingular, NotSymmetric

#: Default seed for every randomized routine in the library.
DEFAULT_SEED = 0xC0FFEE

#: Eigenvalues closer than this are reported as one cluster.
CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class TolerancePolicy:
    """Thresholds used for rank, equality and zero decisions.

    rank_tol is relative to the largest singular value; eq_tol is an
    entrywise threshold; zero_tol decides when a scalar counts as zero.
    """

    rank_tol: float = 1e-9
    eq_tol: float = 1e-9
    zero_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_tol", "eq_tol", "zero_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {value}")


DEFAULT_TOL = TolerancePolicy()


def rng(seed=DEFAULT_SEED):
    """Deterministic generator; pass around explicitly, never use global state."""
    return np.random.default_rng(seed)


def check_matrix(m, square=False):
    """Validate shape and finiteness; return the array as float64."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    # Operators live in dimension <= 64; stacked systems (e.g. the Leibniz
    # system, 512 x 64) may have up to 64 columns but more rows.
    if not (1 <= m.shape[0] <= 4096 and 1 <= m.shape[1] <= 4096):
        raise ValueError(f"matrix dimensions out of range: {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def nullspace(m, tol=DEFAULT_TOL):
    """Orthonormal basis of ker(m), returned as the columns of an array.

    The rank cut is rank_tol relative to the largest singular value; an
    all-zero matrix has a full kernel.
    """
    m = check_matrix(m)
    _, s, vt = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    if smax <= tol.zero_tol:
        rank = 0
    else:
        rank = int(np.sum(s > tol.rank_tol * smax))
    return vt[rank:].T.copy()


def rank(m, tol=DEFAULT_TOL):
    """Numerical rank with the same cut as nullspace()."""
    m = check_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    smax = s[0] if s.size else 0.0
    if smax <= tol.zero_tol:
        return 0
    return int(np.sum(s > tol.rank_tol * smax))


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition of a symmetric matrix with clustered eigenvalues.

    values are ascending, vectors[:, i] is the eigenvector of values[i], and
    clusters lists index ranges whose eigenvalues agree within CLUSTER_TOL.
    """

    values: np.ndarray
    vectors: np.ndarray
    clusters: list


def sym_eigen(m, tol=DEFAULT_TOL, cluster_tol=CLUSTER_TOL):
    m = check_matrix(m, square=True)
    if m.size and np.max(np.abs(m - m.T)) >= tol.eq_tol:
        raise NotSymmetric(f"asymmetry {np.max(np.abs(m - m.T)):g} exceeds eq_tol")
    w, v = np.linalg.eigh(0.5 * (m + m.T))
    clusters = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > cluster_tol:
            clusters.append(list(range(start, i)))
            start = i
    return SymEigen(values=w, vectors=v, clusters=clusters)


def det_sign(m, tol=DEFAULT_TOL):
    """Sign of det(m) as +1 or -1; NearSingular when |det| <= zero_tol."""
    m = check_matrix(m, square=True)
    sign, logabs = np.linalg.slogdet(m)
    if sign == 0 or np.exp(logabs) <= tol.zero_tol:
        raise NearSingular("determinant within zero_tol of 0")
    return int(sign)


def is_orthogonal(m, tol=DEFAULT_TOL):
    m = check_matrix(m, square=True)
    gram = m.T @ m
    return bool(np.max(np.abs(gram - np.eye(m.shape[0]))) < tol.eq_tol)
