"""Division composition algebras as structure-constant tensors.

An Algebra is a dense dim x dim x dim tensor plus optional constructor
provenance (family name + parameters).  Parametric constructors cover the
presentations used by the classification: standard isotopes of O and H,
tau-twisted and T-twisted isotopes, the Okubo model, its special-subspace
isotopes, the two-parameter block-diagonal family, and the lambda family.
Provenance is metadata only; analysis always works on the raw tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import maps as mp
from . import octonion as oc
from .errors import BadParameter, InconsistentSigns, NoIsotopeProvenance, NotOrthogonal
from .numerics import DEFAULT_SEED, DEFAULT_TOL, det_sign, is_orthogonal, rng


@dataclass(frozen=True)
class DoubleSign:
    """(i, j) with sign pair ((-1)^i, (-1)^j) = (sgn det L_a, sgn det R_a)."""

    i: int
    j: int

    @property
    def signs(self):
        return ((-1) ** self.i, (-1) ** self.j)

    def __str__(self):
        plus_minus = {1: "+", -1: "-"}
        return "(%s,%s)" % tuple(plus_minus[s] for s in self.signs)


@dataclass(frozen=True)
class FamilyLabel:
    name: str
    params: dict

    def to_json(self):
        out = {}
        for key, value in self.params.items():
            out[key] = value.tolist() if isinstance(value, np.ndarray) else value
        return {"name": self.name, "params": out}


class Algebra:
    """A finite-dimensional real algebra given by structure constants.

    sc[i, j, :] holds the coordinates of e_i * e_j.  When built as an
    orthogonal isotope the defining pair (f, g) is kept in memory for
    transport and isomorphism testing; it is not serialized (parametric
    families rebuild it from the label).
    """

    __slots__ = ("dim", "sc", "family", "isotope")

    def __init__(self, sc, family: Optional[FamilyLabel] = None, isotope=None):
        sc = np.asarray(sc, dtype=float)
        if sc.ndim != 3 or len(set(sc.shape)) != 1:
            raise ValueError(f"structure tensor must be cubic, got {sc.shape}")
        if sc.shape[0] not in (1, 2, 4, 8):
            raise ValueError(f"dimension must be 1, 2, 4 or 8, got {sc.shape[0]}")
        self.dim = sc.shape[0]
        self.sc = sc
        self.family = family
        self.isotope = isotope

    def product(self, x, y):
        return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float), self.sc)

    def left_mul(self, a):
        return np.einsum("i,ijk->kj", np.asarray(a, float), self.sc)

    def right_mul(self, a):
        return np.einsum("j,ijk->ki", np.asarray(a, float), self.sc)

    def __repr__(self):
        tag = self.family.name if self.family else "raw"
        return f"Algebra(dim={self.dim}, family={tag})"

    def to_json(self):
        return {"dim": self.dim, "sc": self.sc.tolist(),
                "family": self.family.to_json() if self.family else None}


def octonion_algebra():
    return Algebra(oc.STRUCTURE.astype(float))


def quaternion_algebra():
    return Algebra(oc.STRUCTURE[:4, :4, :4].astype(float))


def from_isotope(f, g, family=None, dim=8):
    """The isotope with product x . y = f(x) g(y) of O (or of H for dim 4)."""
    fm = f.mat if isinstance(f, mp.OrthoMap8) else np.asarray(f, dtype=float)
    gm = g.mat if isinstance(g, mp.OrthoMap8) else np.asarray(g, dtype=float)
    if not (is_orthogonal(fm) and is_orthogonal(gm)):
        raise NotOrthogonal("isotope factors must be orthogonal")
    if fm.shape != (dim, dim) or gm.shape != (dim, dim):
        raise ValueError("isotope factors have the wrong dimension")
    base = oc.STRUCTURE[:dim, :dim, :dim].astype(float)
    sc = np.einsum("ai,bj,abk->ijk", fm, gm, base)
    return Algebra(sc, family=family, isotope=(fm.copy(), gm.copy()))


def transport(phi, algebra):
    """Conjugate the isotope pair: (f, g) -> (phi f phi^-1, phi g phi^-1).

    The result is isomorphic to the input with witness phi.  Parametric
    provenance is carried along when the transformation rule for the family
    under phi's label is known (conjugation by kappa_hat or tau on the
    tau/T families, the u-flip on the lambda and two-parameter families);
    otherwise the result keeps the pair but is labelled raw.
    """
    if algebra.isotope is None:
        raise NoIsotopeProvenance("transport needs an isotope presentation")
    phi_m = phi.mat if isinstance(phi, mp.OrthoMap8) else np.asarray(phi, dtype=float)
    f, g = algebra.isotope
    new_f = phi_m @ f @ phi_m.T
    new_g = phi_m @ g @ phi_m.T
    family = _transport_label(phi if isinstance(phi, mp.OrthoMap8) else None, algebra.family)
    return from_isotope(new_f, new_g, family=family, dim=algebra.dim)


def _conj_by(q, x):
    return oc.quat_mul(oc.quat_mul(q, x), oc.quat_conj(q))


def _transport_label(phi, family):
    if family is None or phi is None or phi.label is None:
        return None
    name, params, plabel = family.name, dict(family.params), phi.label
    if name in ("standard_isotope", "okubo", "p35") and phi.is_g2_labelled():
        # Block and double sign are invariant and these labels carry no
        # continuous parameters, so the provenance survives any G2 transport.
        return family
    if name == "quat4" and plabel.family == "kappa_hat":
        return family
    if name == "tau_family":
        if plabel.family == "kappa_hat":
            q = plabel.params["q"]
            params["a"] = _conj_by(q, params["a"])
            params["b"] = _conj_by(q, params["b"])
            return FamilyLabel(name, params)
        if plabel.family == "tau":
            p = oc.quat_conj(plabel.params["p"])
            params["a"] = _conj_by(p, params["a"])
            params["b"] = _conj_by(p, params["b"])
            return FamilyLabel(name, params)
        if plabel.family == "eps":
            if plabel.params["eps"] == 0:
                return family
            v = oc.V.coords[:4]
            params["a"] = _conj_by(v, params["a"])
            params["b"] = _conj_by(v, params["b"])
            return FamilyLabel(name, params)
    if name == "t_family":
        if plabel.family == "kappa_hat" or (plabel.family == "eps" and plabel.params["eps"] == 1):
            q = plabel.params["q"] if plabel.family == "kappa_hat" else oc.V.coords[:4]
            for key in ("a1", "b1", "a2", "b2"):
                params[key] = _conj_by(q, params[key])
            return FamilyLabel(name, params)
        if plabel.family == "tau" or (plabel.family == "eps" and plabel.params["eps"] == 0):
            return family
    if name == "lambda_family" and plabel.family == "eps":
        if plabel.params["eps"] == 1:
            params["a"] = np.array([params["a"][0], -params["a"][1]])
            params["b"] = np.array([params["b"][0], -params["b"][1]])
        return FamilyLabel(name, params)
    if name == "g_family" and plabel.family == "eps":
        if plabel.params["eps"] == 1:
            params["alpha"] = (-params["alpha"]) % np.pi
            params["beta"] = (-params["beta"]) % np.pi
        return FamilyLabel(name, params)
    return None


def double_sign(algebra, tol=DEFAULT_TOL, seed=DEFAULT_SEED, samples=4):
    """The pair (sgn det L_a, sgn det R_a), sampled at several random a.

    Disagreement between samples means the input is not a division algebra.
    """
    if algebra.dim < 2:
        raise BadParameter("double sign needs dimension at least 2")
    gen = rng(seed)
    signs = set()
    for _ in range(samples):
        a = gen.standard_normal(algebra.dim)
        a /= np.linalg.norm(a)
        signs.add((det_sign(algebra.left_mul(a), tol), det_sign(algebra.right_mul(a), tol)))
    if len(signs) != 1:
        raise InconsistentSigns(f"det signs varied across samples: {sorted(signs)}")
    sl, sr = signs.pop()
    return DoubleSign(i=0 if sl > 0 else 1, j=0 if sr > 0 else 1)


def is_division(algebra, trials=8, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    gen = rng(seed)
    for _ in range(trials):
        a = gen.standard_normal(algebra.dim)
        a /= np.linalg.norm(a)
        for m in (algebra.left_mul(a), algebra.right_mul(a)):
            sign, logabs = np.linalg.slogdet(m)
            if sign == 0 or np.exp(logabs) <= tol.zero_tol:
                return False
    return True


def norm_multiplicative(algebra, trials=64, tol=1e-9, seed=DEFAULT_SEED):
    gen = rng(seed)
    for _ in range(trials):
        a = gen.standard_normal(algebra.dim)
        b = gen.standard_normal(algebra.dim)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        if abs(np.linalg.norm(algebra.product(a, b)) - 1.0) >= tol:
            return False
    return True


# ---------------------------------------------------------------------------
# Parametric families
# ---------------------------------------------------------------------------

def _index_pair(i, j):
    i, j = int(i), int(j)
    if i not in (0, 1) or j not in (0, 1):
        raise BadParameter(f"indices must be 0 or 1, got ({i}, {j})")
    return i, j


def standard_isotope(i, j):
    """O with product K^j(x) K^i(y)."""
    i, j = _index_pair(i, j)
    k = mp.conj_map()
    return from_isotope(k.power(j) if j else mp.identity_map(),
                        k.power(i) if i else mp.identity_map(),
                        family=FamilyLabel("standard_isotope", {"i": i, "j": j}))


def quat4(i, j):
    """H with product K^j(x) K^i(y); the four-dimensional classification."""
    i, j = _index_pair(i, j)
    k4 = mp.conj_map4()
    f = k4 if j else mp.identity_map(4)
    g = k4 if i else mp.identity_map(4)
    return from_isotope(f, g, family=FamilyLabel("quat4", {"i": i, "j": j}), dim=4)


def j_family(i, j, a, b, tol=DEFAULT_TOL):
    """O with pair (K^j tau_a, K^i tau_b) for unit quaternions a, b."""
    i, j = _index_pair(i, j)
    a4 = oc.as_unit_quaternion(a, tol, "parameter a")
    b4 = oc.as_unit_quaternion(b, tol, "parameter b")
    f = mp.tau_map(a4, tol).mat
    g = mp.tau_map(b4, tol).mat
    if j:
        f = oc.conj_matrix() @ f
    if i:
        g = oc.conj_matrix() @ g
    return from_isotope(f, g, family=FamilyLabel(
        "tau_family", {"i": i, "j": j, "a": a4.copy(), "b": b4.copy()}))


def k_family(i, j, a1, b1, a2, b2, tol=DEFAULT_TOL):
    """O with pair (T^(j)_{a1,b1}, T^(i)_{a2,b2}) for unit quaternions."""
    i, j = _index_pair(i, j)
    qs = [oc.as_unit_quaternion(x, tol, f"parameter {n}")
          for x, n in ((a1, "a1"), (b1, "b1"), (a2, "a2"), (b2, "b2"))]
    f = mp.T_map(qs[0], qs[1], j, tol)
    g = mp.T_map(qs[2], qs[3], i, tol)
    return from_isotope(f, g, family=FamilyLabel(
        "t_family", {"i": i, "j": j, "a1": qs[0], "b1": qs[1], "a2": qs[2], "b2": qs[3]}))


def lambda_family(i, j, a, b, tol=DEFAULT_TOL):
    """O with pair (lambda_a^(j), lambda_b^(i)) for unit complex a, b."""
    i, j = _index_pair(i, j)
    a2 = oc.as_unit_complex(a, tol, "parameter a")
    b2 = oc.as_unit_complex(b, tol, "parameter b")
    return from_isotope(mp.lambda_map(a2, j, tol), mp.lambda_map(b2, i, tol),
                        family=FamilyLabel("lambda_family",
                                           {"i": i, "j": j, "a": a2.copy(), "b": b2.copy()}))


#: The distinguished cube root of unity (sqrt(3) u - 1) / 2 in C.
OKUBO_TWIST = np.array([-0.5, np.sqrt(3.0) / 2.0, 0.0, 0.0])


def okubo_twist_map(tol=DEFAULT_TOL):
    return mp.tau_map(OKUBO_TWIST, tol)


def okubo_p11(tol=DEFAULT_TOL):
    """The division Okubo model: pair (K tau, K tau^-1) with the cube-root twist."""
    k = oc.conj_matrix()
    tau = okubo_twist_map(tol)
    tau_inv = mp.tau_map(oc.quat_mul(OKUBO_TWIST, OKUBO_TWIST), tol)
    return from_isotope(k @ tau.mat, k @ tau_inv.mat, family=FamilyLabel("okubo", {}))


def p35(i, j, tol=DEFAULT_TOL):
    """Isotopes of the Okubo model by the reflection in the special subspace
    span(v, z, vz); defined for (i, j) != (1, 1)."""
    i, j = _index_pair(i, j)
    if (i, j) == (1, 1):
        raise BadParameter("the (1, 1) component of the {3,5} block is empty")
    k = oc.conj_matrix()
    tau = okubo_twist_map(tol)
    tau_inv = mp.tau_map(oc.quat_mul(OKUBO_TWIST, OKUBO_TWIST), tol)
    sw = mp.sigma_w_special().mat
    f = k @ tau.mat @ np.linalg.matrix_power(sw, 1 - j)
    g = k @ tau_inv.mat @ np.linalg.matrix_power(sw, 1 - i)
    return from_isotope(f, g, family=FamilyLabel("p35", {"i": i, "j": j}))


def g_family(i1, j1, i2, j2, alpha, beta, tol=DEFAULT_TOL):
    """O with the two-parameter block-diagonal pair (G_alpha^{j1,j2}, G_beta^{i1,i2}).

    Requires i2 = 1 or j2 = 1; angles are folded into [0, pi).
    """
    i1, j1 = _index_pair(i1, j1)
    i2, j2 = _index_pair(i2, j2)
    if i2 != 1 and j2 != 1:
        raise BadParameter("need i2 = 1 or j2 = 1")
    alpha = float(alpha) % np.pi
    beta = float(beta) % np.pi
    f = mp.G_map(alpha, 0.0, j1, j2, tol)
    g = mp.G_map(beta, 0.0, i1, i2, tol)
    return from_isotope(f, g, family=FamilyLabel(
        "g_family", {"i1": i1, "j1": j1, "i2": i2, "j2": j2,
                     "alpha": alpha, "beta": beta}))


_BUILDERS = {
    "standard_isotope": lambda p: standard_isotope(p["i"], p["j"]),
    "quat4": lambda p: quat4(p["i"], p["j"]),
    "tau_family": lambda p: j_family(p["i"], p["j"], np.asarray(p["a"]), np.asarray(p["b"])),
    "t_family": lambda p: k_family(p["i"], p["j"], np.asarray(p["a1"]), np.asarray(p["b1"]),
                                   np.asarray(p["a2"]), np.asarray(p["b2"])),
    "lambda_family": lambda p: lambda_family(p["i"], p["j"],
                                             np.asarray(p["a"]), np.asarray(p["b"])),
    "okubo": lambda p: okubo_p11(),
    "p35": lambda p: p35(p["i"], p["j"]),
    "g_family": lambda p: g_family(p["i1"], p["j1"], p["i2"], p["j2"],
                                   p["alpha"], p["beta"]),
}


def from_family(name, params):
    if name not in _BUILDERS:
        raise BadParameter(f"unknown family {name!r}; choose from {sorted(_BUILDERS)}")
    return _BUILDERS[name](params)


def from_json(obj):
    """Rebuild an Algebra from its JSON form; parametric families recover
    their isotope pair, raw tensors stay raw."""
    sc = np.asarray(obj["sc"], dtype=float)
    fam = obj.get("family")
    if fam:
        rebuilt = from_family(fam["name"], fam["params"])
        if np.max(np.abs(rebuilt.sc - sc)) > 1e-12:
            raise BadParameter("family label does not reproduce the stored tensor")
        return rebuilt
    return Algebra(sc)


# ---------------------------------------------------------------------------
# Membership predicates for the parameter sets of the classification
# ---------------------------------------------------------------------------

def in_TxT_ij(i, j, a, b, tol=DEFAULT_TOL):
    """Membership of (a, b) in the tau-family parameter set for double sign (i, j).

    Excludes (1, 1) always, and for (i, j) = (1, 1) also the curve
    (a, a^2) with a^2 + a + 1 = 0 (the Okubo points)."""
    i, j = _index_pair(i, j)
    a4 = oc.as_unit_quaternion(a, tol, "a")
    b4 = oc.as_unit_quaternion(b, tol, "b")
    one = np.array([1.0, 0, 0, 0])
    if np.max(np.abs(a4 - one)) < tol.eq_tol and np.max(np.abs(b4 - one)) < tol.eq_tol:
        return False
    if (i, j) == (1, 1):
        cube = oc.quat_mul(a4, a4) + a4 + one
        if np.max(np.abs(cube)) < tol.eq_tol and np.max(np.abs(b4 - oc.quat_mul(a4, a4))) < tol.eq_tol:
            return False
    return True


def in_S(a1, b1, a2, b2, tol=DEFAULT_TOL):
    """True iff not all four unit quaternions lie in {1, -1}."""
    for x in (a1, b1, a2, b2):
        x4 = oc.as_unit_quaternion(x, tol, "parameter")
        if np.max(np.abs(x4[1:])) >= tol.eq_tol:
            return True
    return False


def _imaginary_span_dim(quats, tol=DEFAULT_TOL):
    ims = np.array([np.asarray(x, float)[1:] for x in quats])
    if np.max(np.abs(ims)) < tol.eq_tol:
        return 0
    s = np.linalg.svd(ims, compute_uv=False)
    return int(np.sum(s > tol.rank_tol * max(s[0], 1.0)))


def in_S_ij(i, j, a1, b1, a2, b2, tol=DEFAULT_TOL):
    """Membership in the T-family parameter set for double sign (i, j):
    tuples not all in {1, -1} that do not satisfy the one-axis alignment
    with b1 = (-1)^j a1 and b2 = (-1)^i a2."""
    i, j = _index_pair(i, j)
    qs = [oc.as_unit_quaternion(x, tol, "parameter") for x in (a1, b1, a2, b2)]
    if not in_S(*qs, tol=tol):
        return False
    aligned = (_imaginary_span_dim(qs, tol) == 1
               and np.max(np.abs(qs[1] - (-1.0) ** j * qs[0])) < tol.eq_tol
               and np.max(np.abs(qs[3] - (-1.0) ** i * qs[2])) < tol.eq_tol)
    return not aligned
