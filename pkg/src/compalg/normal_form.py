"""Normal forms for the conjugation actions of SO(3) on pairs of unit
quaternions, on sign classes of pairs, and on pairs of sign classes.

Quaternions are 4-vectors in the basis (1, u, v, uv).  The canonical sets:

* P  = units with no uv-part, v-part >= 0 and nonzero imaginary part,
* P0 = units of the form cos(a) + u sin(a) with sin(a) > 0,
* M  = ({+-1} x {+-1}) u ({+-1} x P0) u (P0 x {+-1}) u (P0 x P),

with refinements M1...M4 for the bracket actions, built from the same
coordinate inequalities plus lexicographic tie rules.  All comparisons use a
zero deadband: values within zero_tol of 0 count as 0, and results whose
coordinates sit within 10x the deadband of a boundary are flagged.

The reductions are constructive: rotate the first imaginary part onto the
u-axis, then rotate about u to push the second component's (v, uv)-part onto
the +v ray.  Reductions modulo a stabilizer subgroup enumerate its finitely
many cosets combined with the same closed-form angle placements, and keep
the candidate that lands in the target transversal; transversality makes
that candidate unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotCanonical
from .numerics import DEFAULT_TOL
from .octonion import quat_conj, quat_mul, rotation_quaternion

ONE4 = np.array([1.0, 0.0, 0.0, 0.0])
U4 = np.array([0.0, 1.0, 0.0, 0.0])
V4 = np.array([0.0, 0.0, 1.0, 0.0])
UV4 = np.array([0.0, 0.0, 0.0, 1.0])

BOUNDARY_FACTOR = 10.0


@dataclass(frozen=True)
class PairTT:
    """An element of T x T."""

    a: np.ndarray
    b: np.ndarray

    def __iter__(self):
        yield self.a
        yield self.b

    def close_to(self, other, tol=1e-8):
        return (np.max(np.abs(self.a - other.a)) < tol
                and np.max(np.abs(self.b - other.b)) < tol)

    def to_json(self):
        out = {"a": self.a.tolist(), "b": self.b.tolist()}
        out.update(pair_angles(self))
        return out


def make_pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (4,) or b.shape != (4,):
        raise ValueError("pair entries must be quaternion 4-vectors")
    return PairTT(a.copy(), b.copy())


@dataclass(frozen=True)
class BracketTT:
    """A pair modulo simultaneous sign, stored by its sign-normalized
    representative (first coordinate beyond the deadband made positive)."""

    rep: PairTT

    @classmethod
    def of(cls, a, b, tol=DEFAULT_TOL):
        return cls(rep=_sign_normalize(make_pair(a, b), tol))

    def pair(self):
        return self.rep

    def close_to(self, other, tol=1e-8):
        rep2 = other.rep if isinstance(other, BracketTT) else other
        flipped = PairTT(-rep2.a, -rep2.b)
        return self.rep.close_to(rep2, tol) or self.rep.close_to(flipped, tol)


def _sign_normalize(pair, tol=DEFAULT_TOL):
    concat = np.concatenate([pair.a, pair.b])
    for value in concat:
        if abs(value) > tol.zero_tol:
            if value < 0:
                return PairTT(-pair.a, -pair.b)
            return pair
    return pair


class StabilizerCase(Enum):
    FULL = "full"
    CIRCLE_U = "circle_u"
    CIRCLE_U_PLUS_VU = "circle_u_plus_vu"
    TWO_ELT = "two_elt"
    TRIVIAL = "trivial"


@dataclass
class NFResult:
    canonical: object            # PairTT, or (PairTT, PairTT) for pair reductions
    witness_q: np.ndarray        # rotation with kappa_q(input) ~ canonical
    witness_eps: int             # sign representative used, where applicable
    tag: object                  # constituent tag(s)
    boundary_flag: bool = False


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------

def kappa(q, x):
    return quat_mul(quat_mul(q, x), quat_conj(q))


def act_TxT(q, pair):
    q = np.asarray(q, dtype=float)
    return PairTT(kappa(q, pair.a), kappa(q, pair.b))


def act_bracket(q, br, tol=DEFAULT_TOL):
    moved = act_TxT(q, br.pair())
    return BracketTT(rep=_sign_normalize(moved, tol))


def act_pair(q, brackets, tol=DEFAULT_TOL):
    return (act_bracket(q, brackets[0], tol), act_bracket(q, brackets[1], tol))


# ---------------------------------------------------------------------------
# Coordinate predicates with deadbands
# ---------------------------------------------------------------------------

def _zero(x, tol):
    return abs(x) < tol.zero_tol


def _lex_ge00(x, y, tol):
    """Deadbanded lexicographic (x, y) >= (0, 0)."""
    if _zero(x, tol):
        return y > -tol.zero_tol
    return x > 0


def is_pm_one(q, tol=DEFAULT_TOL):
    return bool(np.max(np.abs(q[1:])) < tol.zero_tol)


def is_plus_one(q, tol=DEFAULT_TOL):
    return is_pm_one(q, tol) and q[0] > 0


def in_P0(q, tol=DEFAULT_TOL):
    return _zero(q[2], tol) and _zero(q[3], tol) and q[1] > tol.zero_tol


def in_P(q, tol=DEFAULT_TOL):
    if not _zero(q[3], tol):
        return False
    if q[2] < -tol.zero_tol:
        return False
    return not is_pm_one(q, tol)


def _in_T(q, m, n, tol):
    return _lex_ge00(0.0 if _zero(q[m - 1], tol) else q[m - 1],
                     0.0 if _zero(q[n - 1], tol) else q[n - 1], tol)


def in_T12(q, tol=DEFAULT_TOL):
    return _in_T(q, 1, 2, tol)


def in_T14(q, tol=DEFAULT_TOL):
    return _in_T(q, 1, 4, tol)


def in_T24(q, tol=DEFAULT_TOL):
    return _in_T(q, 2, 4, tol)


def in_T23(q, tol=DEFAULT_TOL):
    return _in_T(q, 2, 3, tol)


# ---------------------------------------------------------------------------
# Transversal membership
# ---------------------------------------------------------------------------

def in_M(pair, tol=DEFAULT_TOL):
    a, b = pair
    if is_pm_one(a, tol) and is_pm_one(b, tol):
        return True, "pm1_pm1"
    if is_pm_one(a, tol) and in_P0(b, tol):
        return True, "pm1_P0"
    if in_P0(a, tol) and is_pm_one(b, tol):
        return True, "P0_pm1"
    if in_P0(a, tol) and in_P(b, tol):
        return True, "P0_P"
    return False, None


def in_M1(pair, tol=DEFAULT_TOL):
    a, b = pair
    if is_plus_one(a, tol) and is_pm_one(b, tol):
        return True, "1_pm1"
    if is_plus_one(a, tol) and in_P0(b, tol):
        return True, "1_P0"
    if in_P0(a, tol) and is_plus_one(b, tol):
        return True, "P0_1"
    if in_P0(a, tol) and in_P(b, tol) and _lex_ge00(
            0.0 if _zero(a[0], tol) else a[0],
            0.0 if _zero(b[0], tol) else b[0], tol):
        return True, "P0_P_plus"
    return False, None


def in_M2(pair, tol=DEFAULT_TOL):
    a, b = pair
    if (is_plus_one(a, tol) or in_P0(a, tol)) and (is_pm_one(b, tol) or in_P(b, tol)):
        return True, "c1"
    if np.max(np.abs(a - V4)) < tol.zero_tol and in_T12(b, tol):
        return True, "c2"
    if (_zero(a[3], tol) and a[2] > tol.zero_tol
            and (a[0] > tol.zero_tol or (_zero(a[0], tol) and a[1] > tol.zero_tol))):
        return True, "c3"
    return False, None


def _in_P_beta_first_half(b, tol):
    # P with beta in [0, pi/2]: u- and v-coordinates both >= 0
    return (in_P(b, tol) and b[1] > -tol.zero_tol)


def _in_P_alpha_first_half(b, tol):
    # P with alpha in (0, pi/2]: real part >= 0
    return in_P(b, tol) and b[0] > -tol.zero_tol


def in_M3(pair, tol=DEFAULT_TOL):
    a, b = pair
    if is_plus_one(a, tol):
        if is_pm_one(b, tol) or _in_P_beta_first_half(b, tol):
            return True, "c1"
        return False, None
    if _zero(a[2], tol) and _zero(a[3], tol) and a[0] > tol.zero_tol and a[1] > tol.zero_tol:
        if is_pm_one(b, tol) or in_P(b, tol):
            return True, "c2"
        return False, None
    if np.max(np.abs(a - U4)) < tol.zero_tol:
        if is_plus_one(b, tol) or _in_P_alpha_first_half(b, tol):
            return True, "c3"
        return False, None
    if np.max(np.abs(a - V4)) < tol.zero_tol:
        if in_T14(b, tol) and in_T24(b, tol):
            return True, "c4"
        return False, None
    if not _zero(a[2], tol) and a[2] > 0 and _zero(a[3], tol):
        if _zero(a[0], tol) and a[1] > tol.zero_tol:
            return (True, "c5") if in_T14(b, tol) else (False, None)
        if a[0] > tol.zero_tol and _zero(a[1], tol):
            return (True, "c6") if in_T24(b, tol) else (False, None)
        if a[0] > tol.zero_tol and a[1] > tol.zero_tol:
            return True, "c7"
    return False, None


def in_M4(pair, tol=DEFAULT_TOL):
    a, _ = pair
    if in_T14(a, tol) and in_T23(a, tol):
        return True, "c1"
    return False, None


def stabilizer_case(pair, tol=DEFAULT_TOL):
    """The five-way stabilizer classification of a sign class in M1."""
    ok, _ = in_M1(pair, tol)
    if not ok:
        raise NotCanonical("stabilizer classification needs a canonical M1 representative")
    a, b = pair
    a_c = is_pm_one(a, tol)
    b_c = is_pm_one(b, tol)
    if a_c and b_c:
        return StabilizerCase.FULL
    a_cu = _zero(a[2], tol) and _zero(a[3], tol)
    b_cu = _zero(b[2], tol) and _zero(b[3], tol)
    if a_cu and b_cu:
        a_u = _zero(a[0], tol) and not a_c
        b_u = _zero(b[0], tol) and not b_c
        if a_u and b_u:
            return StabilizerCase.CIRCLE_U_PLUS_VU
        return StabilizerCase.CIRCLE_U
    a_uv_plane = _zero(a[0], tol) and _zero(a[3], tol)
    b_uv_plane = _zero(b[0], tol) and _zero(b[3], tol)
    if a_uv_plane and b_uv_plane and not _zero(a[1] * b[2] - a[2] * b[1], tol):
        return StabilizerCase.TWO_ELT
    return StabilizerCase.TRIVIAL


def in_N(brackets, tol=DEFAULT_TOL):
    """Membership in the transversal for the action on pairs of sign classes.

    Takes the pair of canonical pair representatives; the second component's
    target set is keyed by the stabilizer case of the first."""
    first, second = brackets
    ok, _ = in_M1(first, tol)
    if not ok:
        return False, None
    case = stabilizer_case(first, tol)
    if case is StabilizerCase.FULL:
        ok, tag = in_M1(second, tol)
    elif case is StabilizerCase.CIRCLE_U:
        ok, tag = in_M2(second, tol)
    elif case is StabilizerCase.CIRCLE_U_PLUS_VU:
        ok, tag = in_M3(second, tol)
    elif case is StabilizerCase.TWO_ELT:
        ok, tag = in_M4(second, tol)
    else:
        ok, tag = True, "any"
    if not ok:
        return False, None
    return True, (case, tag)


def in_transversal(point, which, tol=DEFAULT_TOL):
    """Dispatch membership with constituent tag for M, M1, M2, M3, M4 or N."""
    table = {"M": in_M, "M1": in_M1, "M2": in_M2, "M3": in_M3, "M4": in_M4}
    if which in table:
        return table[which](point, tol)
    if which == "N":
        return in_N(point, tol)
    raise ValueError(f"unknown transversal {which!r}")


def _boundary_flag(pairs, tol):
    bound = BOUNDARY_FACTOR * tol.zero_tol
    for pair in pairs:
        for q in pair:
            for x in q:
                if tol.zero_tol <= abs(x) < bound:
                    return True
    return False


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

def _u_axis_rotation(phi):
    return np.array([np.cos(phi / 2.0), np.sin(phi / 2.0), 0.0, 0.0])


def _snap_sign(q):
    return np.array([1.0 if q[0] > 0 else -1.0, 0.0, 0.0, 0.0])


def nf_TxT(pair, tol=DEFAULT_TOL):
    """Reduce a point of T x T into the transversal M.

    If the first component is real, rotate the second one's imaginary part
    onto the u-axis; otherwise rotate the first one onto the u-axis and then
    turn about u until the second one's (v, uv)-part lies on the +v ray.
    """
    a, b = pair
    if is_pm_one(a, tol):
        a_c = _snap_sign(a)
        if is_pm_one(b, tol):
            q = ONE4.copy()
            canonical = PairTT(a_c, _snap_sign(b))
        else:
            im = b.copy()
            im[0] = 0.0
            q = rotation_quaternion(im / np.linalg.norm(im), U4, tol)
            canonical = PairTT(a_c, kappa(q, b))
    else:
        im = a.copy()
        im[0] = 0.0
        q1 = rotation_quaternion(im / np.linalg.norm(im), U4, tol)
        a1, b1 = kappa(q1, a), kappa(q1, b)
        proj = np.hypot(b1[2], b1[3])
        if proj < tol.zero_tol:
            q = q1
            canonical = PairTT(a1, b1)
        else:
            q2 = _u_axis_rotation(-np.arctan2(b1[3], b1[2]))
            q = quat_mul(q2, q1)
            canonical = PairTT(kappa(q2, a1), kappa(q2, b1))
    ok, tag = in_M(canonical, tol)
    return NFResult(canonical=canonical, witness_q=q, witness_eps=0, tag=tag,
                    boundary_flag=_boundary_flag([canonical], tol))


def nf_M1(bracket, tol=DEFAULT_TOL):
    """Reduce a sign class into M1: run nf_TxT on both sign representatives
    and keep the one landing in M1 (ties give the same canonical point)."""
    pair = bracket.pair() if isinstance(bracket, BracketTT) else bracket
    chosen = None
    for eps in (0, 1):
        rep = pair if eps == 0 else PairTT(-pair.a, -pair.b)
        res = nf_TxT(rep, tol)
        ok, tag = in_M1(res.canonical, tol)
        if ok:
            chosen = NFResult(canonical=res.canonical, witness_q=res.witness_q,
                              witness_eps=eps, tag=tag,
                              boundary_flag=res.boundary_flag)
            break
    if chosen is None:
        # Both representatives sit on a deadband boundary; take the larger key.
        res0 = nf_TxT(pair, tol)
        res1 = nf_TxT(PairTT(-pair.a, -pair.b), tol)
        pick, eps = max([(res0, 0), (res1, 1)],
                        key=lambda t: (t[0].canonical.a[0], t[0].canonical.b[0]))
        chosen = NFResult(canonical=pick.canonical, witness_q=pick.witness_q,
                          witness_eps=eps, tag="boundary",
                          boundary_flag=True)
    return chosen


def _placements(pair, tol):
    """Closed-form angle placements for rotations about the u-axis."""
    out = []
    pa = np.hypot(pair.a[2], pair.a[3])
    pb = np.hypot(pair.b[2], pair.b[3])
    if pa >= tol.zero_tol:
        out.append(-np.arctan2(pair.a[3], pair.a[2]))
    if pb >= tol.zero_tol:
        out.append(-np.arctan2(pair.b[3], pair.b[2]))
    out.append(0.0)
    return out


def _reduce_with_cosets(pair, cosets, member, tol):
    """Reduce a sign class modulo (finite cosets) x (u-axis circle).

    Enumerates coset representative x sign x angle placement, filters by the
    target transversal; transversality makes any hit canonical."""
    for coset in cosets:
        base = PairTT(kappa(coset, pair.a), kappa(coset, pair.b)) \
            if np.max(np.abs(coset - ONE4)) > 0 else pair
        for eps in (0, 1):
            rep = base if eps == 0 else PairTT(-base.a, -base.b)
            for phi in _placements(rep, tol):
                qu = _u_axis_rotation(phi) if phi != 0.0 else ONE4
                cand = PairTT(kappa(qu, rep.a), kappa(qu, rep.b))
                ok, tag = member(cand, tol)
                if ok:
                    return cand, quat_mul(qu, coset), eps, tag
    return None


def _reduce_circle_u(pair, tol):
    return _reduce_with_cosets(pair, [ONE4], in_M2, tol)


def _reduce_two_circles(pair, tol):
    return _reduce_with_cosets(pair, [ONE4, V4], in_M3, tol)


def _reduce_two_elt(pair, tol):
    for coset in (ONE4, UV4):
        base = PairTT(kappa(coset, pair.a), kappa(coset, pair.b)) \
            if np.max(np.abs(coset - ONE4)) > 0 else pair
        for eps in (0, 1):
            rep = base if eps == 0 else PairTT(-base.a, -base.b)
            ok, tag = in_M4(rep, tol)
            if ok:
                return rep, coset, eps, tag
    return None


def nf_pair(brackets, tol=DEFAULT_TOL):
    """Reduce a pair of sign classes into the composite transversal.

    The first class goes into M1; the second is then reduced modulo the
    stabilizer of the first, landing in M1/M2/M3/M4 or (trivial stabilizer)
    just sign-normalized.
    """
    br1, br2 = brackets
    first = nf_M1(br1, tol)
    q1 = first.witness_q
    pair2 = br2.pair() if isinstance(br2, BracketTT) else br2
    moved = PairTT(kappa(q1, pair2.a), kappa(q1, pair2.b))
    case = stabilizer_case(first.canonical, tol)

    if case is StabilizerCase.FULL:
        second = nf_M1(moved, tol)
        q2, c2, tag2, eps2 = (second.witness_q, second.canonical,
                              second.tag, second.witness_eps)
    elif case is StabilizerCase.CIRCLE_U:
        hit = _reduce_circle_u(moved, tol)
        if hit is None:
            raise NotCanonical("no candidate landed in the circle transversal")
        c2, q2, eps2, tag2 = hit
    elif case is StabilizerCase.CIRCLE_U_PLUS_VU:
        hit = _reduce_two_circles(moved, tol)
        if hit is None:
            raise NotCanonical("no candidate landed in the two-circle transversal")
        c2, q2, eps2, tag2 = hit
    elif case is StabilizerCase.TWO_ELT:
        hit = _reduce_two_elt(moved, tol)
        if hit is None:
            raise NotCanonical("no candidate landed in the two-element transversal")
        c2, q2, eps2, tag2 = hit
    else:
        normalized = _sign_normalize(moved, tol)
        q2, c2, tag2, eps2 = ONE4, normalized, "any", 0
    witness = quat_mul(q2, q1)
    canonical = (first.canonical, c2)
    return NFResult(canonical=canonical, witness_q=witness, witness_eps=eps2,
                    tag=(case, tag2),
                    boundary_flag=_boundary_flag(canonical, tol))


def is_excluded_N_point(brackets, tol=DEFAULT_TOL):
    """The four points ([1, +-1], [1, +-1]) removed from the transversal to
    classify the tuples not fixed by the whole rotation group."""
    first, second = brackets
    for pair in (first, second):
        a, b = pair
        if not (is_pm_one(a, tol) and is_pm_one(b, tol)):
            return False
    return True


def pair_angles(pair, tol=DEFAULT_TOL):
    """Angle fields of a canonical point, where defined."""
    a, b = pair
    out = {}
    if not is_pm_one(a, tol):
        out["alpha"] = float(np.arctan2(np.linalg.norm(a[1:]), a[0]))
    if not is_pm_one(b, tol):
        im = np.linalg.norm(b[1:])
        out["alpha2"] = float(np.arctan2(im, b[0]))
        out["beta"] = float(np.arctan2(b[2], b[1]))
    return out
