"""Derivation Lie algebras and module decompositions.

derivation_basis solves the Leibniz system on basis pairs as one big linear
kernel problem; lie_type reads the label off structural invariants (derived
algebra, center, Killing signature), which separate the five types that can
occur here.  decompose splits the algebra into irreducible invariant
subspaces by peeling off the common kernel and then eigen-splitting random
symmetric elements of the commutant until irreducibility certifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import AbelianDerivations, NotInvariant
from .numerics import (CLUSTER_TOL, DEFAULT_SEED, DEFAULT_TOL, nullspace, rank, rng,
                       sym_eigen)

#: Residual accepted on the Leibniz rule; looser than rank_tol because the
#: two-parameter family tensors carry trigonometric round-off.
LEIBNIZ_TOL = 1e-8

#: Residual accepted for invariance of subspaces under derivations.
INVARIANCE_TOL = 1e-7


@dataclass
class DerivationAlgebra:
    """Orthonormal basis of Der(A) with its structural invariants."""

    basis: list
    dim: int
    killing_signature: tuple
    derived_dim: int
    center_dim: int
    structure: np.ndarray  # c[a, b, e]: [basis_a, basis_b] = sum_e c[a,b,e] basis_e


class LieTypeLabel(Enum):
    G2 = "g2"
    SU3 = "su3"
    SU2xSU2 = "su2+su2"
    SU2xA1 = "su2+center"
    SU2 = "su2"
    ABELIAN = "abelian"
    OTHER = "other"


@dataclass
class ModuleDecomposition:
    """Orthogonal decomposition into irreducible invariant subspaces."""

    subspaces: list        # list of (dim x d_i) orthonormal bases
    partition: tuple       # sorted multiset of the d_i
    trivial_dim: int

    def to_json(self):
        return {"partition": list(self.partition), "trivial_dim": self.trivial_dim}


def leibniz_matrix(algebra):
    """The dim^3 x dim^2 system whose kernel is Der(A), acting on vec(D)."""
    s = algebra.sc
    n = algebra.dim
    eye = np.eye(n)
    coeff = np.einsum("ijc,kr->ijkrc", s, eye)
    coeff = coeff - np.einsum("rjk,ci->ijkrc", s, eye)
    coeff = coeff - np.einsum("irk,cj->ijkrc", s, eye)
    return coeff.reshape(n ** 3, n ** 2)


def derivation_basis(algebra, tol=DEFAULT_TOL):
    """Orthonormal basis (under the trace form) of the derivation algebra."""
    n = algebra.dim
    kernel = nullspace(leibniz_matrix(algebra), tol)
    mats = [kernel[:, a].reshape(n, n) for a in range(kernel.shape[1])]
    return _structure(mats, tol)


def _structure(mats, tol):
    d = len(mats)
    struct = np.zeros((d, d, d))
    for a in range(d):
        for b in range(a + 1, d):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            for e in range(d):
                struct[a, b, e] = np.sum(comm * mats[e])
            struct[b, a] = -struct[a, b]
    if d == 0:
        return DerivationAlgebra([], 0, (0, 0, 0), 0, 0, struct)

    # derived algebra: span of the commutators
    pairs = [struct[a, b] for a in range(d) for b in range(a + 1, d)]
    derived_dim = rank(np.array(pairs), tol) if pairs else 0

    # center: x with [x, basis_b] = 0 for all b
    ad = np.einsum("abe->bea", struct)  # ad matrix of x: sum_a x_a struct[a, b, e]
    center_dim = nullspace(ad.reshape(d * d, d), tol).shape[1]

    # kappa(x, y) = tr(ad_x ad_y); ad_a[e, b] = struct[a, b, e]
    ad_mats = [struct[a].T for a in range(d)]
    killing = np.array([[np.trace(ad_mats[a] @ ad_mats[b]) for b in range(d)]
                        for a in range(d)])
    eig = np.linalg.eigvalsh(0.5 * (killing + killing.T))
    scale = max(1.0, float(np.max(np.abs(eig))) if eig.size else 1.0)
    neg = int(np.sum(eig < -CLUSTER_TOL * scale))
    pos = int(np.sum(eig > CLUSTER_TOL * scale))
    zero = d - neg - pos
    return DerivationAlgebra(mats, d, (neg, zero, pos), derived_dim, center_dim, struct)


def lie_type(der):
    """Label the Lie algebra by dimension, derived dimension, center and
    Killing signature; negative-definite Killing form means compact semisimple."""
    d = der.dim
    neg, zero, pos = der.killing_signature
    semisimple = (zero == 0 and pos == 0 and d > 0)
    if der.derived_dim == 0:
        return LieTypeLabel.ABELIAN
    if d == 14 and semisimple:
        return LieTypeLabel.G2
    if d == 8 and semisimple:
        return LieTypeLabel.SU3
    if d == 6 and der.derived_dim == 6 and der.center_dim == 0:
        return LieTypeLabel.SU2xSU2
    if d == 4 and der.derived_dim == 3 and der.center_dim == 1:
        return LieTypeLabel.SU2xA1
    if d == 3 and semisimple:
        return LieTypeLabel.SU2
    return LieTypeLabel.OTHER


def leibniz_residual(algebra, delta):
    """Max norm of delta(xy) - delta(x)y - x delta(y) over basis pairs."""
    s = algebra.sc
    lhs = np.einsum("km,ijm->ijk", delta, s)
    rhs = np.einsum("mi,mjk->ijk", delta, s) + np.einsum("mj,imk->ijk", delta, s)
    return float(np.max(np.abs(lhs - rhs)))


def trivial_submodule(algebra, der=None, tol=DEFAULT_TOL):
    """Orthonormal basis of the common kernel of all derivations."""
    if der is None:
        der = derivation_basis(algebra, tol)
    if der.dim == 0:
        return np.eye(algebra.dim)
    stacked = np.vstack(der.basis)
    return nullspace(stacked, tol)


def _restrict(der, basis):
    return [basis.T @ delta @ basis for delta in der.basis]


def commutant_basis(restricted, d, tol=DEFAULT_TOL):
    """Basis of {Y : Y delta = delta Y for all restricted derivations}."""
    eye = np.eye(d)
    blocks = [np.kron(eye, delta.T) - np.kron(delta, eye) for delta in restricted]
    kernel = nullspace(np.vstack(blocks), tol)
    return [kernel[:, c].reshape(d, d) for c in range(kernel.shape[1])]


def _random_symmetric_commutant(comm, gen, d):
    for _ in range(16):
        y = sum(float(c) * m for c, m in zip(gen.standard_normal(len(comm)), comm))
        y = 0.5 * (y + y.T)
        norm = np.linalg.norm(y)
        if norm > 1e-8:
            return y / norm
    return None


def is_irreducible(subspace, der, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Certify irreducibility of an invariant subspace.

    Two generic checks: random vectors must generate the whole subspace
    under repeated application of the derivations, and a random symmetric
    commutant element of the restricted action must have a single
    eigenvalue cluster (otherwise its eigenspaces split the subspace).
    """
    subspace = np.asarray(subspace, dtype=float)
    if subspace.ndim == 1:
        subspace = subspace.reshape(-1, 1)
    if subspace.ndim != 2:
        raise ValueError("subspace must be given by basis columns")
    d = subspace.shape[1]
    proj_out = np.eye(subspace.shape[0]) - subspace @ subspace.T
    for delta in der.basis:
        if np.max(np.abs(proj_out @ delta @ subspace)) >= INVARIANCE_TOL:
            raise NotInvariant("subspace is not invariant under the derivations")
    if d == 1:
        return True
    gen = rng(seed)
    restricted = _restrict(der, subspace)
    for _ in range(5):
        v = gen.standard_normal(d)
        v /= np.linalg.norm(v)
        span = v.reshape(-1, 1)
        while True:
            grown = [span]
            for delta in restricted:
                grown.append(delta @ span)
            q, r = np.linalg.qr(np.hstack(grown))
            keep = np.abs(np.diag(r)) > 1e-9
            new_span = q[:, keep]
            if new_span.shape[1] == span.shape[1]:
                break
            span = new_span
        if span.shape[1] != d:
            return False
    comm = commutant_basis(restricted, d, tol)
    y = _random_symmetric_commutant(comm, gen, d)
    if y is None:
        return True
    return len(sym_eigen(y, tol).clusters) == 1


def decompose(algebra, tol=DEFAULT_TOL, seed=DEFAULT_SEED, der=None):
    """Decompose A into irreducible submodules of its derivation algebra.

    Splits off the common kernel first (as one-dimensional trivial pieces),
    then recursively eigen-splits the invariant complement along random
    symmetric commutant elements until every piece certifies irreducible.
    Raises AbelianDerivations when there is nothing to decompose against.
    """
    if der is None:
        der = derivation_basis(algebra, tol)
    if der.derived_dim == 0:
        raise AbelianDerivations("derivation algebra is abelian")
    gen = rng(seed)
    n = algebra.dim
    triv = trivial_submodule(algebra, der, tol)
    pieces = [triv[:, [k]] for k in range(triv.shape[1])]
    if triv.shape[1] < n:
        if triv.shape[1]:
            complement = nullspace(triv.T, tol)
        else:
            complement = np.eye(n)
        queue = [complement]
        while queue:
            sub = queue.pop()
            d = sub.shape[1]
            if d == 1 or is_irreducible(sub, der, tol, seed=int(gen.integers(2 ** 31))):
                pieces.append(sub)
                continue
            restricted = _restrict(der, sub)
            comm = commutant_basis(restricted, d, tol)
            split_done = False
            for _ in range(16):
                y = _random_symmetric_commutant(comm, gen, d)
                if y is None:
                    break
                eig = sym_eigen(y, tol)
                if len(eig.clusters) > 1:
                    for cluster in eig.clusters:
                        queue.append(sub @ eig.vectors[:, cluster])
                    split_done = True
                    break
            if not split_done:
                # No symmetric commutant element separates it; accept as one piece.
                pieces.append(sub)
    pieces.sort(key=lambda p: (p.shape[1], tuple(np.round(np.abs(p[:, 0]), 6))))
    partition = tuple(sorted(p.shape[1] for p in pieces))
    return ModuleDecomposition(subspaces=pieces, partition=partition,
                               trivial_dim=triv.shape[1])
