"""Block detection, canonical forms, and the isomorphism decision.

analyze() works on raw structure-constant tensors: double sign, derivation
algebra, trivial submodule and module partition determine the block.
canonical() additionally needs constructor provenance and reduces the
parameters into the block's transversal, returning a witness map onto the
canonical representative.  isomorphic() composes these: definite No on
differing invariants, definite Yes (with a verified witness) on equal
canonical forms, Unknown for raw tensors in continuous-moduli blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import algebra as al
from . import d1133 as d33
from . import derivations as dv
from . import maps as mp
from . import normal_form as nf
from . import octonion as oc
from .errors import NotInBlock, RawTensorNotSupported
from .numerics import DEFAULT_SEED, DEFAULT_TOL

PARAMETER_FREE_KINDS = frozenset({"D17", "D8", "D35", "D4"})

_PARTITION_TO_KIND = {
    (1, 7): "D17",
    (8,): "D8",
    (1, 1, 6): "D116",
    (1, 1, 2, 4): "D1124",
    (1, 1, 1, 1, 4): "D11114",
    (3, 5): "D35",
    (1, 1, 3, 3): "D1133",
}


@dataclass(frozen=True)
class BlockLabel:
    kind: str
    sign: Optional[al.DoubleSign] = None
    d1133_indices: Optional[tuple] = None

    def __str__(self):
        out = self.kind
        if self.d1133_indices:
            out += "[%d%d%d%d]" % self.d1133_indices
        if self.sign is not None:
            out += f"^{self.sign}"
        return out


@dataclass
class AnalysisReport:
    double_sign: al.DoubleSign
    der_dim: int
    lie_type: dv.LieTypeLabel
    trivial_dim: int
    partition: Optional[tuple]
    block: BlockLabel

    def to_json(self):
        return {
            "double_sign": {"i": self.double_sign.i, "j": self.double_sign.j,
                            "signs": list(self.double_sign.signs)},
            "der_dim": self.der_dim,
            "lie_type": self.lie_type.value,
            "trivial_dim": self.trivial_dim,
            "partition": list(self.partition) if self.partition else None,
            "block": str(self.block),
        }


def _a0_double_sign(algebra, a0_basis, tol, seed):
    """Double sign of the trivial submodule as a 2-dimensional algebra."""
    sub = np.zeros((2, 2, 2))
    for i in range(2):
        for j in range(2):
            prod = algebra.product(a0_basis[:, i], a0_basis[:, j])
            sub[i, j] = a0_basis.T @ prod
    return al.double_sign(al.Algebra(sub), tol, seed)


def analyze(algebra, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Invariant report: double sign, derivation data, partition and block."""
    ds = al.double_sign(algebra, tol, seed)
    der = dv.derivation_basis(algebra, tol)
    ltype = dv.lie_type(der)
    a0 = dv.trivial_submodule(algebra, der, tol)
    trivial_dim = a0.shape[1]
    if ltype is dv.LieTypeLabel.ABELIAN or der.dim == 0:
        block = BlockLabel("NotInD", ds)
        return AnalysisReport(ds, der.dim, ltype, trivial_dim, None, block)
    dec = dv.decompose(algebra, tol, seed, der=der)
    partition = dec.partition
    if algebra.dim == 4:
        block = BlockLabel("D4", ds)
    elif algebra.dim != 8:
        block = BlockLabel("NotInD", ds)
    else:
        kind = _PARTITION_TO_KIND.get(partition)
        if kind is None and partition == (1, 3, 4):
            kind = "D134s" if ltype is dv.LieTypeLabel.SU2xSU2 else "D134a"
        indices = None
        if kind == "D1133":
            sub_sign = _a0_double_sign(algebra, a0, tol, seed)
            indices = (sub_sign.i, sub_sign.j,
                       (ds.i - sub_sign.i) % 2, (ds.j - sub_sign.j) % 2)
        block = BlockLabel(kind or "NotInD", ds, indices)
    return AnalysisReport(ds, der.dim, ltype, trivial_dim, partition, block)


@dataclass
class CanonicalForm:
    block: BlockLabel
    params: object                  # None, PairTT, (PairTT, PairTT) or (alpha, beta)
    witness: Optional[mp.OrthoMap8]  # maps the input onto the canonical algebra
    boundary_flag: bool = False

    def to_json(self):
        out = {"block": str(self.block), "kind": self.block.kind}
        if self.block.sign is not None:
            out["i"], out["j"] = self.block.sign.i, self.block.sign.j
        if self.block.kind == "D1133":
            i1, j1, i2, j2 = self.block.d1133_indices
            alpha, beta = self.params
            out.update({"i1": i1, "j1": j1, "i2": i2, "j2": j2,
                        "alpha": alpha, "beta": beta})
        elif isinstance(self.params, nf.PairTT):
            out["point"] = self.params.to_json()
        elif isinstance(self.params, tuple) and self.params and isinstance(self.params[0], nf.PairTT):
            out["point"] = [p.to_json() for p in self.params]
        return out


def canonical_algebra(form):
    """Rebuild the canonical representative algebra of a canonical form."""
    kind = form.block.kind
    sign = form.block.sign
    if kind == "D17":
        return al.standard_isotope(sign.i, sign.j)
    if kind == "D8":
        return al.okubo_p11()
    if kind == "D35":
        return al.p35(sign.i, sign.j)
    if kind == "D4":
        return al.quat4(sign.i, sign.j)
    if kind in ("D134s", "D134a"):
        point = form.params
        return al.j_family(sign.i, sign.j, point.a, point.b)
    if kind in ("D116", "D1124", "D11114"):
        first, second = form.params
        return al.k_family(sign.i, sign.j, first.a, first.b, second.a, second.b)
    if kind == "D1133":
        i1, j1, i2, j2 = form.block.d1133_indices
        alpha, beta = form.params
        return al.g_family(i1, j1, i2, j2, alpha, beta)
    raise NotInBlock(f"no canonical representative for block {form.block}")


def _tau_trichotomy(i, j, a, b, tol):
    """Which block a tau-family parameter point lands in."""
    one = np.array([1.0, 0, 0, 0])
    if np.max(np.abs(a - one)) < tol.eq_tol and np.max(np.abs(b - one)) < tol.eq_tol:
        return "D17"
    cube = oc.quat_mul(a, a) + a + one
    if ((i, j) == (1, 1) and np.max(np.abs(cube)) < tol.eq_tol
            and np.max(np.abs(b - oc.quat_mul(a, a))) < tol.eq_tol):
        return "D8"
    in_pm1 = (np.max(np.abs(a[1:])) < tol.eq_tol and np.max(np.abs(b[1:])) < tol.eq_tol)
    return "D134s" if in_pm1 else "D134a"


def _t_dichotomy(i, j, qs, tol):
    if not al.in_S(*qs, tol=tol):
        return None
    if al.in_S_ij(i, j, *qs, tol=tol):
        span = al._imaginary_span_dim(qs, tol)
        return "D1124" if span == 1 else "D11114"
    return "D116"


def _lambda_to_t(i, j, a2, b2):
    """Rewrite a lambda pair as a T pair: the circle map with determinant k
    equals conjugation by the half-angle element combined with (-1)^k."""
    out = []
    for e2, k in ((a2, j), (b2, i)):
        angle = float(np.arctan2(e2[1], e2[0])) % (2 * np.pi)
        half = ((angle - np.pi * k) / 2.0) % np.pi
        q = np.array([np.cos(half), np.sin(half), 0.0, 0.0])
        out.append((q, (-1.0) ** k * q))
    (a1, b1), (a2t, b2t) = out
    return a1, b1, a2t, b2t


def canonical(algebra, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Canonical form of a provenance-carrying algebra.

    tau family points reduce through the pair transversal, T and lambda
    families through the bracket-pair transversal, the two-parameter family
    through its angle region; the remaining families are parameter-free.
    Raises RawTensorNotSupported without provenance and NotInBlock for
    parameters outside the covered blocks.
    """
    if algebra.family is None:
        raise RawTensorNotSupported("canonical forms need constructor provenance")
    name = algebra.family.name
    p = algebra.family.params
    if name == "standard_isotope":
        return CanonicalForm(BlockLabel("D17", al.DoubleSign(p["i"], p["j"])), None,
                             mp.identity_map())
    if name == "quat4":
        return CanonicalForm(BlockLabel("D4", al.DoubleSign(p["i"], p["j"])), None,
                             mp.identity_map(4))
    if name == "okubo":
        return CanonicalForm(BlockLabel("D8", al.DoubleSign(1, 1)), None, mp.identity_map())
    if name == "p35":
        return CanonicalForm(BlockLabel("D35", al.DoubleSign(p["i"], p["j"])), None,
                             mp.identity_map())
    if name == "tau_family":
        i, j = p["i"], p["j"]
        a, b = np.asarray(p["a"], float), np.asarray(p["b"], float)
        res = nf.nf_TxT(nf.make_pair(a, b), tol)
        kind = _tau_trichotomy(i, j, res.canonical.a, res.canonical.b, tol)
        witness = mp.kappa_hat_map(res.witness_q, tol)
        # the canonical pair is kept even for the parameter-free kinds (it is
        # then the fixed point of the block); equality ignores it there
        return CanonicalForm(BlockLabel(kind, al.DoubleSign(i, j)), res.canonical, witness,
                             res.boundary_flag)
    if name in ("t_family", "lambda_family"):
        i, j = p["i"], p["j"]
        if name == "lambda_family":
            qs = _lambda_to_t(i, j, np.asarray(p["a"], float), np.asarray(p["b"], float))
        else:
            qs = tuple(np.asarray(p[k], float) for k in ("a1", "b1", "a2", "b2"))
        kind = _t_dichotomy(i, j, qs, tol)
        if kind is None:
            raise NotInBlock("all four parameters in {1,-1}: outside the bracket-pair blocks")
        res = nf.nf_pair((nf.BracketTT.of(qs[0], qs[1], tol),
                          nf.BracketTT.of(qs[2], qs[3], tol)), tol)
        witness = mp.kappa_hat_map(res.witness_q, tol)
        return CanonicalForm(BlockLabel(kind, al.DoubleSign(i, j)), res.canonical, witness,
                             res.boundary_flag)
    if name == "g_family":
        gp = d33.GParams(p["i1"], p["j1"], p["i2"], p["j2"], p["alpha"], p["beta"])
        cp, eps = d33.canonical_1133(gp, tol)
        witness = mp.eps_hat(eps)
        sign = al.DoubleSign((gp.i1 + gp.i2) % 2, (gp.j1 + gp.j2) % 2)
        return CanonicalForm(BlockLabel("D1133", sign, gp.indices),
                             (cp.alpha, cp.beta), witness)
    raise RawTensorNotSupported(f"unsupported family {name!r}")


def _params_close(kind, left, right, tol=1e-8):
    if kind in PARAMETER_FREE_KINDS:
        return True
    if kind in ("D134s", "D134a"):
        return left.close_to(right, tol)
    if kind in ("D116", "D1124", "D11114"):
        return (left[0].close_to(right[0], tol)
                and nf.BracketTT.of(*left[1]).close_to(nf.BracketTT.of(*right[1]), tol))
    if kind == "D1133":
        da = min((left[0] - right[0]) % np.pi, (right[0] - left[0]) % np.pi)
        db = min((left[1] - right[1]) % np.pi, (right[1] - left[1]) % np.pi)
        return da < tol and db < tol
    return False


def witness_residual(phi, source, target):
    """Max basis-pair deviation of phi from being a homomorphism source -> target."""
    m = phi.mat if isinstance(phi, mp.OrthoMap8) else np.asarray(phi, float)
    lhs = np.einsum("km,ijm->ijk", m, source.sc)
    rhs = np.einsum("ai,bj,abk->ijk", m, m, target.sc)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass
class IsoVerdict:
    verdict: str                     # "yes" | "no" | "unknown"
    witness: Optional[mp.OrthoMap8] = None
    reason: str = ""

    def __bool__(self):
        return self.verdict == "yes"


def isomorphic(a, b, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Decide isomorphism: No on differing invariants, Yes with verified
    witness through canonical forms, Unknown for raw tensors."""
    if a.dim != b.dim:
        return IsoVerdict("no", reason="dimensions differ")
    ra = analyze(a, tol, seed)
    rb = analyze(b, tol, seed)
    if (ra.double_sign.i, ra.double_sign.j) != (rb.double_sign.i, rb.double_sign.j):
        return IsoVerdict("no", reason="double signs differ")
    if str(ra.block) != str(rb.block):
        return IsoVerdict("no", reason=f"blocks differ: {ra.block} vs {rb.block}")
    try:
        ca = canonical(a, tol, seed)
        cb = canonical(b, tol, seed)
    except RawTensorNotSupported:
        return IsoVerdict("unknown",
                          reason="equal invariants, but canonical parameters need provenance")
    if ca.block.kind != cb.block.kind or str(ca.block) != str(cb.block):
        return IsoVerdict("no", reason=f"canonical blocks differ: {ca.block} vs {cb.block}")
    if not _params_close(ca.block.kind, ca.params, cb.params):
        return IsoVerdict("no", reason="canonical parameters differ")
    witness = mp.OrthoMap8(cb.witness.mat.T @ ca.witness.mat, check=False)
    residual = witness_residual(witness, a, b)
    if residual >= 1e-8:
        return IsoVerdict("unknown",
                          reason=f"canonical forms agree but witness residual {residual:g}")
    return IsoVerdict("yes", witness=witness)


# ---------------------------------------------------------------------------
# Enumeration of canonical representatives
# ---------------------------------------------------------------------------

def _sign_pairs():
    return [(0, 0), (0, 1), (1, 0), (1, 1)]


def _grid_open(n, lo=0.0, hi=np.pi):
    return [(lo + (hi - lo) * (k + 1) / (n + 1)) for k in range(n)]


def _cx(angle):
    return np.array([np.cos(angle), np.sin(angle), 0.0, 0.0])


def enumerate_block(kind, grid=3, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Stream canonical representatives of a block (all double signs).

    Parameter-free blocks yield their finitely many classes; blocks with
    continuous moduli are sampled on a grid of the stated resolution, every
    item passing its transversal membership and pairwise non-isomorphic.
    """
    if grid < 1:
        raise ValueError("grid resolution must be at least 1")
    if kind == "D17":
        for i, j in _sign_pairs():
            yield canonical(al.standard_isotope(i, j), tol, seed)
        return
    if kind == "D8":
        yield canonical(al.okubo_p11(), tol, seed)
        return
    if kind == "D35":
        for i, j in _sign_pairs():
            if (i, j) != (1, 1):
                yield canonical(al.p35(i, j), tol, seed)
        return
    if kind == "D4":
        for i, j in _sign_pairs():
            yield canonical(al.quat4(i, j), tol, seed)
        return
    if kind == "D134s":
        signs = [(1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        for i, j in _sign_pairs():
            for sa, sb in signs:
                yield canonical(al.j_family(i, j, sa * nf.ONE4, sb * nf.ONE4), tol, seed)
        return
    if kind == "D134a":
        for i, j in _sign_pairs():
            for alpha in _grid_open(grid):
                a = _cx(alpha)
                for alpha2 in _grid_open(grid):
                    for beta in np.linspace(0.0, np.pi, grid):
                        b = np.array([np.cos(alpha2),
                                      np.sin(alpha2) * np.cos(beta),
                                      np.sin(alpha2) * np.sin(beta), 0.0])
                        if not al.in_TxT_ij(i, j, a, b, tol):
                            continue
                        if _tau_trichotomy(i, j, a, b, tol) != "D134a":
                            continue
                        yield canonical(al.j_family(i, j, a, b), tol, seed)
        return
    if kind in ("D116", "D1124", "D11114"):
        yield from _enumerate_bracket_block(kind, grid, tol, seed)
        return
    if kind == "D1133":
        for i1, j1 in _sign_pairs():
            for i2, j2 in _sign_pairs():
                if i2 != 1 and j2 != 1:
                    continue
                for alpha in _grid_open(grid, 0.0, np.pi / 2):
                    for beta in _grid_open(grid):
                        gp = d33.GParams(i1, j1, i2, j2, alpha, beta)
                        if not d33.in_d1133(gp, tol):
                            continue
                        cp, _ = d33.canonical_1133(gp, tol)
                        if (cp.alpha, cp.beta) != (gp.alpha, gp.beta):
                            continue
                        yield canonical(al.g_family(i1, j1, i2, j2, alpha, beta), tol, seed)
        return
    raise NotInBlock(f"unknown or unenumerable block kind {kind!r}")


def _enumerate_bracket_block(kind, grid, tol, seed):
    for i, j in _sign_pairs():
        seen = []
        for qs in _bracket_param_grid(kind, i, j, grid):
            if _t_dichotomy(i, j, qs, tol) != kind:
                continue
            form = canonical(al.k_family(i, j, *qs), tol, seed)
            if any(_params_close(kind, form.params, other, 1e-6) for other in seen):
                continue
            seen.append(form.params)
            yield form


def _bracket_param_grid(kind, i, j, grid):
    angles = _grid_open(grid)
    if kind == "D116":
        for s1 in angles:
            for s2 in angles:
                a1, a2 = _cx(s1), _cx(s2)
                yield (a1, (-1.0) ** j * a1, a2, (-1.0) ** i * a2)
    elif kind == "D1124":
        for s1 in angles:
            for t1 in angles:
                for s2 in angles:
                    a1, b1, a2 = _cx(s1), _cx(t1), _cx(s2)
                    yield (a1, b1, a2, (-1.0) ** i * a2)
    else:
        for s1 in angles:
            for t1 in angles:
                for s2 in angles:
                    b2 = np.array([np.cos(s2), 0.0, np.sin(s2), 0.0])
                    yield (_cx(s1), (-1.0) ** j * _cx(s1), _cx(t1), b2)
