"""Triality components of special orthogonal operators and isotope isomorphism.

For phi in SO(8) there is a pair (phi1, phi2), unique up to a simultaneous
sign, with phi(xy) = phi1(x) phi2(y).  Both components are determined by
s = phi2(1): phi1 = R_{conj s} phi and phi2 = L_{s conj(phi(1))} phi.  We
read the pair off closed forms when phi carries provenance (automorphisms,
bimultiplication or left/right isotopy composites) and otherwise minimize
the quartic residual in s over the unit sphere by multistart Gauss-Newton.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import maps as mp
from . import octonion as oc
from .errors import NoConvergence, NoIsotopeProvenance, NotSpecialOrthogonal, PreconditionViolated
from .numerics import DEFAULT_SEED, DEFAULT_TOL, det_sign, is_orthogonal, rng

#: Squared-residual acceptance threshold for the sphere solve; iterations
#: keep polishing down to SOLVE_TARGET while they improve.
SOLVE_TOL = 1e-16
SOLVE_TARGET = 1e-24

PAIR_TOL = 1e-8


@dataclass
class TrialityPair:
    phi1: np.ndarray
    phi2: np.ndarray
    residual: float


def _as_matrix(phi):
    return phi.mat if isinstance(phi, mp.OrthoMap8) else np.asarray(phi, dtype=float)


def is_triality_pair(phi, phi1, phi2, tol=DEFAULT_TOL):
    """Check phi(e_i e_j) = phi1(e_i) phi2(e_j) over all 64 basis pairs."""
    m, m1, m2 = _as_matrix(phi), _as_matrix(phi1), _as_matrix(phi2)
    for x in (m, m1, m2):
        if not is_orthogonal(x, tol):
            return False
    return _pair_residual(m, m1, m2) < PAIR_TOL


def _pair_residual(m, m1, m2):
    struct = oc.STRUCTURE.astype(float)
    lhs = np.einsum("km,ijm->ijk", m, struct)
    rhs = np.einsum("ai,bj,abk->ijk", m1, m2, struct)
    return float(np.max(np.abs(lhs - rhs)))


def _pair_from_s(m, s):
    """Reconstruct (phi1, phi2) from s = phi2(1)."""
    c = oc.conj_matrix() @ m[:, 0]          # conj(phi(1))
    sbar = oc.conj_matrix() @ s
    phi1 = oc.right_mul_matrix(sbar) @ m
    phi2 = oc.left_mul_matrix(oc.Octonion(s) * oc.Octonion(c)) @ m
    return phi1, phi2


def _normalize_sign(phi1, phi2, zero_tol):
    s = phi2[:, 0]
    for coord in s:
        if abs(coord) > zero_tol:
            if coord < 0:
                return -phi1, -phi2
            return phi1, phi2
    return phi1, phi2


def solve_triality_components(m, tol=DEFAULT_TOL, seed=DEFAULT_SEED,
                              starts=8, max_iter=100):
    """Find s = phi2(1) minimizing the defining residual, by projected
    Gauss-Newton on the sphere from the 8 basis directions plus `starts`
    seeded random ones.  The residual is symmetric under s -> -s, so signs
    need no extra starts."""
    struct = oc.STRUCTURE.astype(float)
    kmat = oc.conj_matrix()
    c = kmat @ m[:, 0]
    rc = oc.right_mul_matrix(c)             # s -> s c
    target = np.einsum("km,ijm->ijk", m, struct)

    # u_i(s) = phi(e_i) conj(s), w_j(s) = (s c) phi(e_j); both linear in s.
    du = np.einsum("abk,ai,bc->kic", struct, m, kmat)
    dw = np.einsum("abk,ac,bj->kjc", struct, rc, m)

    def residual_and_jac(s):
        u = du @ s                      # u[a, i] = coordinate a of phi(e_i) conj(s)
        w = dw @ s                      # w[b, j] = coordinate b of (s c) phi(e_j)
        prod = np.einsum("abk,ai,bj->ijk", struct, u, w)
        r = (prod - target).ravel()
        jac = (np.einsum("abk,aic,bj->ijkc", struct, du, w)
               + np.einsum("abk,ai,bjc->ijkc", struct, u, dw))
        return r, jac.reshape(-1, 8)

    gen = rng(seed)
    cand = [np.eye(8)[:, k] for k in range(8)]
    for _ in range(starts):
        v = gen.standard_normal(8)
        cand.append(v / np.linalg.norm(v))

    best = None
    for s0 in cand:
        s = s0.copy()
        val = None
        for _ in range(max_iter):
            r, jac = residual_and_jac(s)
            val = float(r @ r)
            if val < SOLVE_TARGET:
                break
            jac_t = jac - np.outer(jac @ s, s)
            step, *_ = np.linalg.lstsq(jac_t, -r, rcond=None)
            step -= (step @ s) * s
            if np.linalg.norm(step) < 1e-15:
                break
            new = s + step
            s = new / np.linalg.norm(new)
        if val is None:
            r, _ = residual_and_jac(s)
            val = float(r @ r)
        if best is None or val < best[1]:
            best = (s, val)
        if best[1] < SOLVE_TARGET:
            break
    if best is not None and best[1] < SOLVE_TOL:
        return best
    raise NoConvergence(f"sphere solve stalled at squared residual {best[1]:g}")


def triality_pair(phi, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """A triality pair of phi in SO(8), sign-normalized deterministically
    (first significant coordinate of phi2(1) positive).

    Closed forms: automorphisms give (phi, phi); B_c rho gives
    (L_c rho, R_c rho); L_t R_s rho gives (B_t R_conj(s) rho, L_conj(t) B_s rho).
    """
    m = _as_matrix(phi)
    if det_sign(m, tol) != 1:
        raise NotSpecialOrthogonal("triality pairs exist only for determinant +1")
    label = phi.label if isinstance(phi, mp.OrthoMap8) else None

    phi1 = phi2 = None
    if label is not None and label.family == "bimul":
        c = oc.Octonion(label.params["c"])
        rho = label.params["rho"]
        phi1 = oc.left_mul_matrix(c) @ rho
        phi2 = oc.right_mul_matrix(c) @ rho
    elif label is not None and label.family == "lr_mul":
        t = oc.Octonion(label.params["t"])
        s = oc.Octonion(label.params["s"])
        rho = label.params["rho"]
        phi1 = oc.left_mul_matrix(t) @ oc.right_mul_matrix(t) @ oc.right_mul_matrix(s.conj()) @ rho
        phi2 = oc.left_mul_matrix(t.conj()) @ oc.left_mul_matrix(s) @ oc.right_mul_matrix(s) @ rho
    elif (label is not None and label.family in mp.G2_FAMILIES) or mp.is_automorphism(m, tol):
        phi1 = m.copy()
        phi2 = m.copy()

    if phi1 is None:
        s, _ = solve_triality_components(m, tol, seed)
        phi1, phi2 = _pair_from_s(m, s)

    phi1, phi2 = _normalize_sign(phi1, phi2, tol.zero_tol)
    res = _pair_residual(m, phi1, phi2)
    if res >= PAIR_TOL:
        raise NoConvergence(f"candidate pair residual {res:g} exceeds {PAIR_TOL:g}")
    return TrialityPair(phi1=phi1, phi2=phi2, residual=res)


def iso_isotopes(a, b, phi, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Is phi an isomorphism between the isotopes a and b?

    True iff phi is special orthogonal and, for a triality pair of phi (or
    its negative), phi1 f phi^-1 and phi2 g phi^-1 give b's pair.
    """
    if a.isotope is None or b.isotope is None:
        raise NoIsotopeProvenance("isotope presentations required")
    m = _as_matrix(phi)
    try:
        if det_sign(m, tol) != 1:
            return False
    except Exception:
        return False
    pair = triality_pair(phi, tol, seed)
    f, g = a.isotope
    fp, gp = b.isotope
    for sign in (1.0, -1.0):
        lhs_f = sign * pair.phi1 @ f @ m.T
        lhs_g = sign * pair.phi2 @ g @ m.T
        if (np.max(np.abs(lhs_f - fp)) < PAIR_TOL
                and np.max(np.abs(lhs_g - gp)) < PAIR_TOL):
            return True
    return False


def g2_iso_fixed_subspace(a, b, subspace, phi, tol=DEFAULT_TOL):
    """Isomorphism test when all four isotope factors fix a subspace pointwise.

    In that situation every isomorphism is an automorphism of O preserving
    the subspace and conjugating the pairs onto each other.
    """
    if a.isotope is None or b.isotope is None:
        raise NoIsotopeProvenance("isotope presentations required")
    basis = np.asarray(subspace, dtype=float)
    if basis.ndim == 1:
        basis = basis.reshape(-1, 1)
    for mat in (*a.isotope, *b.isotope):
        if np.max(np.abs(mat @ basis - basis)) >= 1e-9:
            raise PreconditionViolated("isotope factors must fix the subspace pointwise")
    m = _as_matrix(phi)
    if not mp.is_automorphism(m, tol):
        return False
    image = m @ basis
    # phi(U) = U: image columns must lie in the span of basis
    proj = basis @ np.linalg.lstsq(basis, image, rcond=None)[0]
    if np.max(np.abs(image - proj)) >= tol.eq_tol:
        return False
    f, g = a.isotope
    fp, gp = b.isotope
    return bool(np.max(np.abs(m @ f @ m.T - fp)) < PAIR_TOL
                and np.max(np.abs(m @ g @ m.T - gp)) < PAIR_TOL)
