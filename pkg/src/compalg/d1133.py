"""The {1,1,3,3} block: parameter conversion, membership, isomorphism and
canonical forms for the two-parameter block-diagonal families.

A point is a 4-tuple of indices (i1, j1, i2, j2) with i2 = 1 or j2 = 1 plus
angles (alpha, beta) in [0, pi).  Conversion to the conjugation-twisted
presentation (xi, eta) goes through an explicit special-orthogonal witness
L_t R_s rho whose triality components conjugate the pair onto block form.
Isomorphism inside a block reduces to (alpha', beta') = (alpha, beta) or
(-alpha, -beta) mod pi, giving the half-square fundamental region."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import maps as mp
from . import octonion as oc
from .errors import BadIndices, NotInBlock
from .numerics import DEFAULT_TOL

PI = np.pi


def _check_indices(i1, j1, i2, j2):
    for k in (i1, j1, i2, j2):
        if int(k) not in (0, 1):
            raise BadIndices(f"indices must be 0 or 1, got {k}")
    i1, j1, i2, j2 = int(i1), int(j1), int(i2), int(j2)
    if i2 != 1 and j2 != 1:
        raise BadIndices("need i2 = 1 or j2 = 1")
    return i1, j1, i2, j2


@dataclass(frozen=True)
class GParams:
    """Indices plus the two angles of the block-diagonal presentation."""

    i1: int
    j1: int
    i2: int
    j2: int
    alpha: float
    beta: float

    def __post_init__(self):
        _check_indices(self.i1, self.j1, self.i2, self.j2)
        object.__setattr__(self, "alpha", float(self.alpha) % PI)
        object.__setattr__(self, "beta", float(self.beta) % PI)

    @property
    def indices(self):
        return (self.i1, self.j1, self.i2, self.j2)


@dataclass(frozen=True)
class FParams:
    """Indices plus the angles of the conjugation-twisted presentation."""

    i1: int
    j1: int
    i2: int
    j2: int
    xi: float
    eta: float

    def __post_init__(self):
        _check_indices(self.i1, self.j1, self.i2, self.j2)

    @property
    def indices(self):
        return (self.i1, self.j1, self.i2, self.j2)


def _theta_zeta(i1, j1, alpha, beta):
    table = {
        (0, 0): (alpha + 2 * beta, 2 * alpha + beta),
        (0, 1): (-alpha, -2 * alpha - 3 * beta),
        (1, 0): (-3 * alpha - 2 * beta, -beta),
        (1, 1): (-alpha, -beta),
    }
    x, y = table[(i1, j1)]
    return (2.0 / 3.0) * x, (2.0 / 3.0) * y


def _xi_eta(i2, j2, theta, zeta, gamma):
    table = {
        (0, 1): (theta - 2 * gamma / 3, zeta - 2 * theta),
        (1, 0): (2 * zeta - theta, -zeta - 2 * gamma / 3),
        (1, 1): (theta - 2 * gamma / 3, -zeta - 2 * gamma / 3),
    }
    x, y = table[(i2, j2)]
    return x / 2.0, y / 2.0


def _complex8(t):
    v = np.zeros(8)
    v[0], v[1] = np.cos(t), np.sin(t)
    return oc.Octonion(v)


@dataclass
class GtoFWitness:
    theta: float
    zeta: float
    phi: mp.OrthoMap8       # L_t R_s rho, with closed-form triality components


def g_to_f(params: GParams, gamma=0.0, tol=DEFAULT_TOL):
    """Convert block-diagonal parameters (with twist angle gamma) to the
    conjugation-twisted presentation, with the witness isomorphism.

    The witness is phi = L_t R_s rho where rho rotates (v, z) by -gamma/3
    inside their complex lines; its triality components conjugate the pair
    (G_alpha,gamma, G_beta,gamma) onto (F_xi, F_eta) exactly.
    """
    i1, j1, i2, j2 = params.indices
    theta, zeta = _theta_zeta(i1, j1, params.alpha, params.beta)
    xi, eta = _xi_eta(i2, j2, theta, zeta, gamma)
    c = np.zeros(8)
    c[0], c[1] = np.cos(gamma / 3.0), -np.sin(gamma / 3.0)
    c = oc.Octonion(c)
    rho = mp.g2_from_triples(oc.CayleyTriple.fixed(),
                             oc.CayleyTriple(oc.U, c * oc.V, c * oc.Z, tol=tol), tol)
    phi = mp.left_right_mul_map(_complex8(theta), _complex8(zeta), rho, tol)
    return (FParams(i1, j1, i2, j2, xi, eta), GtoFWitness(theta, zeta, phi))


def f_to_g(params: FParams):
    """Invert the conversion at gamma = 0, folding the angles into [0, pi)."""
    i1, j1, i2, j2 = params.indices
    xi, eta = params.xi, params.eta
    if (i2, j2) == (0, 1):
        theta = 2 * xi
        zeta = 2 * eta + 4 * xi
    elif (i2, j2) == (1, 0):
        zeta = -2 * eta
        theta = 2 * zeta - 2 * xi
    else:
        theta = 2 * xi
        zeta = -2 * eta
    if (i1, j1) == (0, 0):
        # solve alpha + 2 beta = 3 theta / 2, 2 alpha + beta = 3 zeta / 2
        alpha = zeta - theta / 2
        beta = theta - zeta / 2
    elif (i1, j1) == (0, 1):
        alpha = -1.5 * theta
        beta = theta - zeta / 2
    elif (i1, j1) == (1, 0):
        beta = -1.5 * zeta
        alpha = zeta - theta / 2
    else:
        alpha = -1.5 * theta
        beta = -1.5 * zeta
    return GParams(i1, j1, i2, j2, alpha % PI, beta % PI)


def excluded_point(i1, j1, i2, j2):
    """The unique (alpha, beta) in [0, pi)^2 whose pair degenerates out of
    the block: cos(2 alpha) = (-1)^(j1+j2) and cos(2 beta) = (-1)^(i1+i2)."""
    i1, j1, i2, j2 = _check_indices(i1, j1, i2, j2)
    alpha = 0.0 if (j1 + j2) % 2 == 0 else PI / 2
    beta = 0.0 if (i1 + i2) % 2 == 0 else PI / 2
    return alpha, beta


def in_d1133(params: GParams, tol=DEFAULT_TOL):
    """Exclusion test: (cos 2a, cos 2b) != ((-1)^(j1+j2), (-1)^(i1+i2))."""
    # the excluded equation is quadratic in the angle near its root, so take
    # the deadband on the angle distance rather than on the cosine residual
    alpha0, beta0 = excluded_point(*params.indices)
    da = min((params.alpha - alpha0) % PI, (alpha0 - params.alpha) % PI)
    db = min((params.beta - beta0) % PI, (beta0 - params.beta) % PI)
    return not (da < tol.zero_tol and db < tol.zero_tol)


def _fold(x):
    return x % PI


def _region_member(alpha, beta, tol):
    z = tol.zero_tol
    if alpha < PI / 2 - z:
        return True
    if abs(alpha - PI / 2) <= z:
        return beta <= PI / 2 + z
    return False


def canonical_1133(params: GParams, tol=DEFAULT_TOL):
    """Fold (alpha, beta) into the fundamental region
    ([0, pi/2) x [0, pi)) u ({pi/2} x [0, pi/2]) of the involution
    (alpha, beta) -> (-alpha, -beta) mod pi.

    On the fixed lines of the involution both candidates qualify; the
    lexicographically smaller one is chosen so that canonical forms stay
    orbit-constant there as well.  Returns ((alpha, beta), eps) where eps
    records whether the flip was applied.
    """
    if not in_d1133(params, tol):
        raise NotInBlock("parameters hit the excluded point of the block")
    cand0 = (params.alpha, params.beta)
    cand1 = (_fold(-params.alpha), _fold(-params.beta))
    ok0 = _region_member(*cand0, tol)
    ok1 = _region_member(*cand1, tol)
    if ok0 and ok1:
        pick = min((cand0, 0), (cand1, 1))
    elif ok0:
        pick = (cand0, 0)
    elif ok1:
        pick = (cand1, 1)
    else:
        # both at the deadband rim; keep the lexicographically smaller
        pick = min((cand0, 0), (cand1, 1))
    (alpha, beta), eps = pick
    return GParams(params.i1, params.j1, params.i2, params.j2, alpha, beta), eps


def iso_1133(p: GParams, q: GParams, tol=1e-8):
    """Same block indices and equal canonical angles."""
    if p.indices != q.indices:
        return False
    cp, _ = canonical_1133(p)
    cq, _ = canonical_1133(q)
    da = min((cp.alpha - cq.alpha) % PI, (cq.alpha - cp.alpha) % PI)
    db = min((cp.beta - cq.beta) % PI, (cq.beta - cp.beta) % PI)
    return bool(da < tol and db < tol)


def _angle_mod(x, modulus, tol):
    r = x % modulus
    return min(r, modulus - r) < tol


def iso_1133_lattice_oracle(p: GParams, q: GParams, tol=1e-8):
    """Independent isomorphism test through the conjugation-twisted angles.

    Converts both points at gamma = 0 and checks the sign-and-lattice
    conditions on (xi, eta): shifts by pi/3 or pi per index pattern, with
    the coupled residue when both second indices are 1 and the first pair
    is not (1, 1)."""
    if p.indices != q.indices:
        return False
    i1, j1, i2, j2 = p.indices
    fp, _ = g_to_f(p, 0.0)
    fq, _ = g_to_f(q, 0.0)
    xi, eta, xip, etap = fp.xi, fp.eta, fq.xi, fq.eta
    for sign in (1.0, -1.0):
        dx = xip - sign * xi
        dy = etap - sign * eta
        if (i1, j1) != (1, 1):
            if (i2, j2) == (0, 1):
                ok = _angle_mod(dx, PI / 3, tol) and _angle_mod(dy, PI, tol)
            elif (i2, j2) == (1, 0):
                ok = _angle_mod(dx, PI, tol) and _angle_mod(dy, PI / 3, tol)
            else:
                ok = _angle_mod(dx, PI / 3, tol) and _angle_mod(dy - dx, PI, tol)
        else:
            ok = _angle_mod(dx, PI / 3, tol) and _angle_mod(dy, PI / 3, tol)
        if ok:
            return True
    return False
