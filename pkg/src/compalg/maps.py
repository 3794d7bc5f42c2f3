"""Constructors for the orthogonal operators on O used throughout the library.

Every constructor returns an OrthoMap8 whose matrix is orthogonal; maps carry
a provenance label (family name + parameters) so that later stages can
recover constructor parameters and pick closed-form triality components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import octonion as oc
from .errors import NotOrthonormal, NotUnitNorm
from .numerics import DEFAULT_TOL, det_sign, is_orthogonal

#: Label families that are automorphisms of O by construction.
G2_FAMILIES = frozenset({"identity", "tau", "kappa_hat", "eps", "g2", "g2_product"})


@dataclass(frozen=True)
class MapLabel:
    family: str
    params: dict

    def to_json(self):
        out = {}
        for key, value in self.params.items():
            out[key] = value.tolist() if isinstance(value, np.ndarray) else value
        return {"family": self.family, "params": out}


class OrthoMap8:
    """An orthogonal operator on O (or on H for 4-dimensional work)."""

    __slots__ = ("mat", "label")

    def __init__(self, mat, label: Optional[MapLabel] = None, tol=DEFAULT_TOL, check=True):
        mat = np.asarray(mat, dtype=float)
        if check and not is_orthogonal(mat, tol):
            from .errors import NotOrthogonal

            raise NotOrthogonal("matrix is not orthogonal within eq_tol")
        self.mat = mat
        self.label = label

    @property
    def dim(self):
        return self.mat.shape[0]

    def __matmul__(self, other):
        if isinstance(other, OrthoMap8):
            label = None
            if (self.label and other.label
                    and self.label.family in G2_FAMILIES
                    and other.label.family in G2_FAMILIES):
                label = MapLabel("g2_product", {})
            return OrthoMap8(self.mat @ other.mat, label, check=False)
        return NotImplemented

    def inv(self):
        label = None
        if self.label and self.label.family in G2_FAMILIES:
            label = MapLabel("g2_product", {})
        return OrthoMap8(self.mat.T.copy(), label, check=False)

    def apply(self, x):
        if isinstance(x, oc.Octonion):
            return oc.Octonion(self.mat @ x.coords)
        return self.mat @ np.asarray(x, dtype=float)

    def power(self, k):
        out = np.linalg.matrix_power(self.mat, k)
        return OrthoMap8(out, self.label if k == 1 else None, check=False)

    def is_g2_labelled(self):
        return self.label is not None and self.label.family in G2_FAMILIES

    def __repr__(self):
        tag = self.label.family if self.label else "raw"
        return f"OrthoMap8({tag}, dim={self.dim})"

    def to_json(self):
        return {"matrix": self.mat.tolist(),
                "label": self.label.to_json() if self.label else None}


def identity_map(dim=8):
    return OrthoMap8(np.eye(dim), MapLabel("identity", {}), check=False)


def conj_map():
    """The standard involution K."""
    return OrthoMap8(oc.conj_matrix(), MapLabel("conj", {}), check=False)


def conj_map4():
    return OrthoMap8(np.diag([1.0, -1, -1, -1]), MapLabel("conj", {}), check=False)


def lambda_map(t, k, tol=DEFAULT_TOL):
    """t K^k on C = span(1, u), identity on the complement; t is unit complex."""
    t2 = oc.as_unit_complex(t, tol, "lambda parameter")
    k = int(k) % 2
    block = np.array([[t2[0], -t2[1]], [t2[1], t2[0]]])
    if k:
        block = block @ np.diag([1.0, -1.0])
    mat = np.eye(8)
    mat[:2, :2] = block
    return OrthoMap8(mat, MapLabel("lambda", {"t": t2.copy(), "k": k}), check=False)


def g2_from_triples(t1, t2, tol=DEFAULT_TOL):
    """The unique automorphism of O carrying the Cayley triple t1 to t2.

    Images of the induced product bases determine the map: if B1, B2 are the
    bases (1, a, b, ab, c, ac, bc, (ab)c) of the two triples, the map is
    B2 B1^T.
    """
    t1 = t1 if isinstance(t1, oc.CayleyTriple) else oc.CayleyTriple(*t1, tol=tol)
    t2 = t2 if isinstance(t2, oc.CayleyTriple) else oc.CayleyTriple(*t2, tol=tol)
    b1 = t1.product_basis()
    b2 = t2.product_basis()
    return OrthoMap8(b2 @ b1.T, MapLabel("g2", {}), check=False)


def tau_map(p, tol=DEFAULT_TOL):
    """The automorphism fixing H pointwise with z -> z p, for unit quaternion p.

    Built by multiplicative extension from the triple images rather than an
    explicit table; is_automorphism gates the construction in the tests.
    """
    p4 = oc.as_unit_quaternion(p, tol, "tau parameter")
    zp = oc.Z * oc.Octonion.from_quaternion(p4)
    phi = g2_from_triples(oc.CayleyTriple.fixed(), oc.CayleyTriple(oc.U, oc.V, zp, tol=tol), tol)
    return OrthoMap8(phi.mat, MapLabel("tau", {"p": p4.copy()}), check=False)


def kappa4(q, tol=DEFAULT_TOL):
    """4x4 matrix of x -> q x conj(q) on H."""
    q4 = oc.as_unit_quaternion(q, tol, "kappa parameter")
    cols = [oc.quat_mul(oc.quat_mul(q4, e), oc.quat_conj(q4)) for e in np.eye(4)]
    return np.column_stack(cols)


def kappa3(q, tol=DEFAULT_TOL):
    """The rotation of Im(H) induced by conjugation by q."""
    return kappa4(q, tol)[1:, 1:].copy()


def kappa_hat_map(q, tol=DEFAULT_TOL):
    """The automorphism acting as kappa_q on H and as x z -> kappa_q(x) z on Hz."""
    q4 = oc.as_unit_quaternion(q, tol, "kappa parameter")
    k4 = kappa4(q4, tol)
    mat = np.zeros((8, 8))
    mat[:4, :4] = k4
    mat[4:, 4:] = k4
    return OrthoMap8(mat, MapLabel("kappa_hat", {"q": q4.copy()}), check=False)


def eps_hat(eps, tol=DEFAULT_TOL):
    """The automorphism (u, v, z) -> ((-1)^eps u, v, z)."""
    eps = int(eps) % 2
    if eps == 0:
        mat = np.eye(8)
    else:
        mat = np.diag([1.0, -1, 1, -1, 1, -1, 1, -1])
    return OrthoMap8(mat, MapLabel("eps", {"eps": eps}), check=False)


def T_map(a, b, k, tol=DEFAULT_TOL):
    """x -> a K^k(x) b on H, identity on the complement; a, b unit quaternions."""
    a4 = oc.as_unit_quaternion(a, tol, "T parameter a")
    b4 = oc.as_unit_quaternion(b, tol, "T parameter b")
    k = int(k) % 2
    block = np.zeros((4, 4))
    for j, e in enumerate(np.eye(4)):
        x = oc.quat_conj(e) if k else e
        block[:, j] = oc.quat_mul(oc.quat_mul(a4, x), b4)
    mat = np.eye(8)
    mat[:4, :4] = block
    return OrthoMap8(mat, MapLabel("T", {"a": a4.copy(), "b": b4.copy(), "k": k}), check=False)


def sigma_map(vectors, tol=DEFAULT_TOL):
    """Reflection: -1 on the span of the given orthonormal vectors, +1 elsewhere."""
    cols = []
    for w in vectors:
        w = w.coords if isinstance(w, oc.Octonion) else np.asarray(w, dtype=float)
        cols.append(w)
    if not cols:
        return identity_map()
    basis = np.column_stack(cols)
    gram = basis.T @ basis
    if np.max(np.abs(gram - np.eye(basis.shape[1]))) >= tol.eq_tol:
        raise NotOrthonormal("reflection vectors must be orthonormal")
    dim = basis.shape[0]
    mat = np.eye(dim) - 2.0 * basis @ basis.T
    return OrthoMap8(mat, MapLabel("sigma", {"span": basis.copy()}), check=False)


def sigma_u():
    return sigma_map([oc.U])


def sigma_w_special():
    """Reflection negating the special subspace span(v, z, vz)."""
    return sigma_map([oc.V, oc.Z, oc.VZ])


def sigma_uw():
    """The product of the hyperplane reflections in uv, uz and (uv)z.

    Negates span(uv, uz, (uv)z), i.e. u times span(v, z, vz); this is the
    involution that together with sigma_u gives the diagonal automorphism
    flipping u.
    """
    return sigma_map([oc.UV, oc.UZ, oc.UVZ])


def big_sigma():
    """sigma_u composed with sigma_uw: equals eps_hat(1)."""
    return OrthoMap8(sigma_u().mat @ sigma_uw().mat, MapLabel("eps", {"eps": 1}), check=False)


def _as_unit_octonion(a, tol, what):
    if not isinstance(a, oc.Octonion):
        arr = np.asarray(a, dtype=float)
        a = oc.Octonion(arr) if arr.shape == (8,) else oc.Octonion.from_quaternion(arr)
    if abs(a.norm() - 1.0) >= tol.eq_tol:
        raise NotUnitNorm(f"{what} needs a unit element")
    return a


def B_map(a, tol=DEFAULT_TOL):
    """Bimultiplication x -> a (x a) for unit a; equals B_{-a}."""
    a = _as_unit_octonion(a, tol, "bimultiplication")
    mat = oc.left_mul_matrix(a) @ oc.right_mul_matrix(a)
    return OrthoMap8(mat, MapLabel("B", {"a": a.coords.copy()}), check=False)


def C_map(a, tol=DEFAULT_TOL):
    """Conjugation x -> a (x conj(a)) for unit a; fixes 1."""
    a = _as_unit_octonion(a, tol, "conjugation")
    mat = oc.left_mul_matrix(a) @ oc.right_mul_matrix(a.conj())
    return OrthoMap8(mat, MapLabel("C", {"a": a.coords.copy()}), check=False)


def _complex_unit(theta):
    return oc.Octonion(np.array([np.cos(theta), np.sin(theta), 0, 0, 0, 0, 0, 0.0]))


def G_map(theta, gamma, k1, k2, tol=DEFAULT_TOL):
    """B_{cos theta + u sin theta} sigma_u^{k1} (sigma_uv sigma_uz sigma_w(gamma))^{k2}.

    w(gamma) = vz sin(gamma) - (uv)z cos(gamma).  theta enters with period pi.
    """
    k1, k2 = int(k1) % 2, int(k2) % 2
    mat = B_map(_complex_unit(theta), tol).mat
    if k1:
        mat = mat @ sigma_u().mat
    if k2:
        w = np.zeros(8)
        w[6] = np.sin(gamma)
        w[7] = -np.cos(gamma)
        refl = sigma_map([oc.UV, oc.UZ, oc.Octonion(w)], tol)
        mat = mat @ refl.mat
    return OrthoMap8(
        mat, MapLabel("G", {"theta": float(theta), "gamma": float(gamma), "k1": k1, "k2": k2}),
        check=False)


def F_map(theta, k1, k2, tol=DEFAULT_TOL):
    """C_{cos theta + u sin theta} sigma_u^{k1} sigma_uw^{k2}."""
    k1, k2 = int(k1) % 2, int(k2) % 2
    mat = C_map(_complex_unit(theta), tol).mat
    if k1:
        mat = mat @ sigma_u().mat
    if k2:
        mat = mat @ sigma_uw().mat
    return OrthoMap8(mat, MapLabel("F", {"theta": float(theta), "k1": k1, "k2": k2}), check=False)


def f_block_matrix(theta, k1, k2):
    """Closed block-diagonal form of F_map: diag(1, (-1)^k1, R(2t), R(2t), R(-2t)),
    where R(s) is the planar rotation-or-reflection with determinant (-1)^k2."""

    def hat(zeta, k):
        sign = -1.0 if k else 1.0
        return np.array([[np.cos(zeta), -sign * np.sin(zeta)],
                         [np.sin(zeta), sign * np.cos(zeta)]])

    k1, k2 = int(k1) % 2, int(k2) % 2
    mat = np.zeros((8, 8))
    mat[0, 0] = 1.0
    mat[1, 1] = -1.0 if k1 else 1.0
    mat[2:4, 2:4] = hat(2 * theta, k2)
    mat[4:6, 4:6] = hat(2 * theta, k2)
    mat[6:8, 6:8] = hat(-2 * theta, k2)
    return mat


def left_right_mul_map(t, s, rho, tol=DEFAULT_TOL):
    """L_t R_s rho for unit t, s and an automorphism rho.

    Carries the provenance needed for its closed-form triality components
    (B_t R_{conj s} rho, L_{conj t} B_s rho).
    """
    t = t if isinstance(t, oc.Octonion) else oc.Octonion(t)
    s = s if isinstance(s, oc.Octonion) else oc.Octonion(s)
    if abs(t.norm() - 1) >= tol.eq_tol or abs(s.norm() - 1) >= tol.eq_tol:
        raise NotUnitNorm("isotopy factors must be unit norm")
    rho_mat = rho.mat if isinstance(rho, OrthoMap8) else np.asarray(rho, dtype=float)
    mat = oc.left_mul_matrix(t) @ oc.right_mul_matrix(s) @ rho_mat
    return OrthoMap8(mat, MapLabel("lr_mul", {"t": t.coords.copy(), "s": s.coords.copy(),
                                              "rho": rho_mat.copy()}), check=False)


def bimul_map(c, rho, tol=DEFAULT_TOL):
    """B_c rho for unit c and an automorphism rho; triality components (L_c rho, R_c rho)."""
    c = c if isinstance(c, oc.Octonion) else oc.Octonion(c)
    if abs(c.norm() - 1) >= tol.eq_tol:
        raise NotUnitNorm("bimultiplication factor must be unit norm")
    rho_mat = rho.mat if isinstance(rho, OrthoMap8) else np.asarray(rho, dtype=float)
    mat = oc.left_mul_matrix(c) @ oc.right_mul_matrix(c) @ rho_mat
    return OrthoMap8(mat, MapLabel("bimul", {"c": c.coords.copy(), "rho": rho_mat.copy()}),
                     check=False)


def is_automorphism(phi, tol=DEFAULT_TOL):
    """True iff phi(e_i e_j) = phi(e_i) phi(e_j) on all 64 basis pairs and det = +1."""
    mat = phi.mat if isinstance(phi, OrthoMap8) else np.asarray(phi, dtype=float)
    if mat.shape != (8, 8):
        return False
    struct = oc.STRUCTURE.astype(float)
    lhs = np.einsum("km,ijm->ijk", mat, struct)
    rhs = np.einsum("ai,bj,abk->ijk", mat, mat, struct)
    if np.max(np.abs(lhs - rhs)) >= tol.eq_tol:
        return False
    try:
        return det_sign(mat, tol) == 1
    except Exception:
        return False


def map_from_json(obj):
    label = None
    if obj.get("label"):
        params = {k: (np.asarray(v, dtype=float) if isinstance(v, list) else v)
                  for k, v in obj["label"]["params"].items()}
        label = MapLabel(obj["label"]["family"], params)
    return OrthoMap8(np.asarray(obj["matrix"], dtype=float), label)
