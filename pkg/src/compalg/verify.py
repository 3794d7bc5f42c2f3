"""Deterministic verification suite behind `compalg verify`.

Each check exercises one family of identities: exact basis-level laws of the
multiplication, the operator conjugation rules, the derivation dimension and
partition tables, invariance and idempotence of the normal forms, triality
consistency, the two-parameter block pipeline, and end-to-end block
detection.  Every randomized step draws from one generator seeded by the
caller, so two runs with the same seed produce identical reports.
"""

from __future__ import annotations

import numpy as np

from . import algebra as al
from . import classify as cl
from . import d1133 as d33
from . import derivations as dv
from . import maps as mp
from . import normal_form as nf
from . import octonion as oc
from . import triality as tr
from .numerics import DEFAULT_SEED, DEFAULT_TOL, rng

TOL = DEFAULT_TOL


def _unit(gen, n):
    v = gen.standard_normal(n)
    return v / np.linalg.norm(v)


def _random_valid_g_indices(gen):
    i1, j1 = int(gen.integers(0, 2)), int(gen.integers(0, 2))
    if gen.integers(0, 2):
        return i1, j1, 1, int(gen.integers(0, 2))
    return i1, j1, int(gen.integers(0, 2)), 1


def _random_cayley_triple(gen):
    while True:
        a = gen.standard_normal(8)
        a[0] = 0.0
        a /= np.linalg.norm(a)
        b = gen.standard_normal(8)
        b[0] = 0.0
        b -= (b @ a) * a
        nb = np.linalg.norm(b)
        if nb < 0.1:
            continue
        b /= nb
        ab = (oc.Octonion(a) * oc.Octonion(b)).coords
        c = gen.standard_normal(8)
        c[0] = 0.0
        for w in (a, b, ab):
            c -= (c @ w) * w
        nc = np.linalg.norm(c)
        if nc < 0.1:
            continue
        return oc.CayleyTriple(oc.Octonion(a), oc.Octonion(b), oc.Octonion(c / nc))


def check_mul_trick_identity(gen, fast):
    """(z x) y = z (y x) exactly on the 16 quaternion basis pairs."""
    for i in range(4):
        for j in range(4):
            x, y = oc.Octonion.basis(i), oc.Octonion.basis(j)
            lhs = ((oc.Z * x) * y).coords
            rhs = (oc.Z * (y * x)).coords
            if not np.array_equal(lhs, rhs):
                return False, f"pair ({i},{j})"
    return True, "exact on 16 pairs"


def check_mul_norm_multiplicative(gen, fast):
    trials = 1000 if fast else 10_000
    worst = 0.0
    for _ in range(trials):
        x, y = _unit(gen, 8), _unit(gen, 8)
        prod = oc.Octonion(x) * oc.Octonion(y)
        worst = max(worst, abs(prod.norm() - 1.0))
    return worst < 1e-12, f"max deviation {worst:.2e} over {trials} pairs"


def check_mul_alternative(gen, fast):
    trials = 1000 if fast else 10_000
    worst = 0.0
    for _ in range(trials):
        x, y = oc.Octonion(gen.standard_normal(8)), oc.Octonion(gen.standard_normal(8))
        worst = max(worst, np.max(np.abs((x * (x * y)).coords - ((x * x) * y).coords)))
        worst = max(worst, np.max(np.abs(((y * x) * x).coords - (y * (x * x)).coords)))
    return worst < 1e-10, f"max residual {worst:.2e}"


def check_mul_conj_antihomomorphism(gen, fast):
    worst = 0.0
    for _ in range(100):
        x, y = oc.Octonion(gen.standard_normal(8)), oc.Octonion(gen.standard_normal(8))
        worst = max(worst, np.max(np.abs((x * y).conj().coords - (y.conj() * x.conj()).coords)))
    return worst < 1e-12, f"max residual {worst:.2e}"


def check_maps_orthogonal(gen, fast):
    from .numerics import is_orthogonal

    samples = [
        mp.lambda_map(_unit(gen, 2), int(gen.integers(0, 2))),
        mp.tau_map(_unit(gen, 4)),
        mp.kappa_hat_map(_unit(gen, 4)),
        mp.T_map(_unit(gen, 4), _unit(gen, 4), int(gen.integers(0, 2))),
        mp.sigma_u(), mp.sigma_w_special(), mp.sigma_uw(),
        mp.B_map(_unit(gen, 8)), mp.C_map(_unit(gen, 8)),
        mp.G_map(gen.uniform(0, np.pi), gen.uniform(0, np.pi),
                 int(gen.integers(0, 2)), int(gen.integers(0, 2))),
        mp.F_map(gen.uniform(0, np.pi), int(gen.integers(0, 2)), int(gen.integers(0, 2))),
        mp.eps_hat(1),
    ]
    bad = [m for m in samples if not is_orthogonal(m.mat, TOL)]
    return not bad, f"{len(samples)} constructors"


def check_maps_automorphisms(gen, fast):
    samples = [mp.tau_map(_unit(gen, 4)), mp.kappa_hat_map(_unit(gen, 4)),
               mp.eps_hat(1),
               mp.g2_from_triples(oc.CayleyTriple.fixed(), _random_cayley_triple(gen))]
    bad = [m for m in samples if not mp.is_automorphism(m, TOL)]
    return not bad, "tau, kappa, u-flip, triple map"


def _delta(p, q):
    return mp.tau_map(oc.quat_conj(p)).mat @ mp.kappa_hat_map(q).mat


def check_maps_semidirect_homomorphism(gen, fast):
    trials = 50 if fast else 200
    worst = 0.0
    for _ in range(trials):
        p, q = _unit(gen, 4), _unit(gen, 4)
        p2, q2 = _unit(gen, 4), _unit(gen, 4)
        lhs = _delta(p, q) @ _delta(p2, q2)
        rhs = _delta(oc.quat_mul(p, mp.kappa4(q) @ p2), oc.quat_mul(q, q2))
        worst = max(worst, np.max(np.abs(lhs - rhs)))
    return worst < 1e-10, f"max residual {worst:.2e} over {trials} tuples"


def check_maps_tau_conjugation(gen, fast):
    trials = 30 if fast else 100
    worst = 0.0
    for _ in range(trials):
        p, q, w = _unit(gen, 4), _unit(gen, 4), _unit(gen, 4)
        d = _delta(p, q)
        pq = oc.quat_mul(p, q)
        rhs = mp.tau_map(oc.quat_mul(oc.quat_mul(pq, w), oc.quat_conj(pq))).mat
        worst = max(worst, np.max(np.abs(d @ mp.tau_map(w).mat @ d.T - rhs)))
    return worst < 1e-10, f"max residual {worst:.2e}"


def check_maps_T_conjugation(gen, fast):
    trials = 30 if fast else 100
    worst = 0.0
    for _ in range(trials):
        p, q, a, b = (_unit(gen, 4) for _ in range(4))
        d = _delta(p, q)
        for k in (0, 1):
            lhs = d @ mp.T_map(a, b, k).mat @ d.T
            rhs = mp.T_map(oc.quat_mul(oc.quat_mul(q, a), oc.quat_conj(q)),
                           oc.quat_mul(oc.quat_mul(q, b), oc.quat_conj(q)), k).mat
            worst = max(worst, np.max(np.abs(lhs - rhs)))
    return worst < 1e-10, f"max residual {worst:.2e}"


def check_maps_block_forms(gen, fast):
    worst = 0.0
    for _ in range(20):
        theta = gen.uniform(0, np.pi)
        k1, k2 = int(gen.integers(0, 2)), int(gen.integers(0, 2))
        worst = max(worst, np.max(np.abs(mp.F_map(theta, k1, k2).mat
                                         - mp.f_block_matrix(theta, k1, k2))))
        lam = mp.lambda_map(np.array([np.cos(2 * theta), np.sin(2 * theta)]), k1)
        worst = max(worst, np.max(np.abs(mp.G_map(theta, 0.0, k1, 0).mat - lam.mat)))
    return worst < 1e-12, f"max deviation {worst:.2e}"


def _family_draws(gen, count):
    draws = []
    for _ in range(count):
        which = int(gen.integers(0, 4))
        if which == 0:
            i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
            draws.append(al.j_family(i, j, _unit(gen, 4), _unit(gen, 4)))
        elif which == 1:
            i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
            draws.append(al.k_family(i, j, *(_unit(gen, 4) for _ in range(4))))
        elif which == 2:
            i1, j1, i2, j2 = _random_valid_g_indices(gen)
            draws.append(al.g_family(i1, j1, i2, j2,
                                     gen.uniform(0, np.pi), gen.uniform(0, np.pi)))
        else:
            i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
            draws.append(al.lambda_family(i, j, _unit(gen, 2), _unit(gen, 2)))
    return draws


def check_algebra_double_signs(gen, fast):
    for i in (0, 1):
        for j in (0, 1):
            ds = al.double_sign(al.standard_isotope(i, j), TOL, int(gen.integers(2 ** 31)))
            if (ds.i, ds.j) != (i, j):
                return False, f"standard isotope ({i},{j})"
            if (i, j) != (1, 1):
                dsp = al.double_sign(al.p35(i, j), TOL, int(gen.integers(2 ** 31)))
                if (dsp.i, dsp.j) != (i, j):
                    return False, f"special-subspace isotope ({i},{j})"
    ds = al.double_sign(al.okubo_p11(), TOL, int(gen.integers(2 ** 31)))
    if (ds.i, ds.j) != (1, 1):
        return False, "okubo model"
    trials = 10 if fast else 50
    for _ in range(trials):
        i1, j1, i2, j2 = _random_valid_g_indices(gen)
        a = al.g_family(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        ds = al.double_sign(a, TOL, int(gen.integers(2 ** 31)))
        if (ds.i, ds.j) != ((i1 + i2) % 2, (j1 + j2) % 2):
            return False, f"two-parameter family {(i1, j1, i2, j2)}"
    return True, "fixed families plus random two-parameter draws"


def check_algebra_division_norm(gen, fast):
    for a in _family_draws(gen, 8 if fast else 20):
        seed = int(gen.integers(2 ** 31))
        if not al.is_division(a, seed=seed):
            return False, "division failed"
        if not al.norm_multiplicative(a, seed=seed):
            return False, "norm multiplicativity failed"
    return True, "random family draws"


def check_derivation_dimensions(gen, fast):
    table = [
        (al.octonion_algebra(), 14),
        (al.okubo_p11(), 8),
        (al.quat4(0, 0), 3), (al.quat4(0, 1), 3), (al.quat4(1, 0), 3), (al.quat4(1, 1), 3),
        (al.j_family(0, 0, nf.U4, nf.U4), 4),
        (al.j_family(0, 0, -nf.ONE4, -nf.ONE4), 6),
        (al.j_family(0, 0, nf.U4, nf.V4), 3),
    ]
    for algebra, expected in table:
        got = dv.derivation_basis(algebra, TOL).dim
        if got != expected:
            return False, f"expected {expected}, got {got}"
    return True, "dimension table"


def check_derivation_partitions(gen, fast):
    def pt(a):
        return dv.decompose(a, TOL, seed=int(gen.integers(2 ** 31))).partition

    if pt(al.octonion_algebra()) != (1, 7):
        return False, "octonions"
    if pt(al.okubo_p11()) != (8,):
        return False, "okubo model"
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)):
        if pt(al.standard_isotope(i, j)) != (1, 7):
            return False, f"standard isotope ({i},{j})"
        if (i, j) != (1, 1) and pt(al.p35(i, j)) != (3, 5):
            return False, f"special-subspace isotope ({i},{j})"
    count = 3 if fast else 8
    for _ in range(count):
        i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
        a4, b4 = _unit(gen, 4), _unit(gen, 4)
        if not al.in_TxT_ij(i, j, a4, b4, TOL):
            continue
        if pt(al.j_family(i, j, a4, b4)) != (1, 3, 4):
            return False, "tau family point"
    for _ in range(count):
        i1, j1, i2, j2 = _random_valid_g_indices(gen)
        gp = d33.GParams(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        if not d33.in_d1133(gp, TOL):
            continue
        if pt(al.g_family(i1, j1, i2, j2, gp.alpha, gp.beta)) != (1, 1, 3, 3):
            return False, "two-parameter family point"
    return True, "partition table"


def check_derivation_skewness(gen, fast):
    for a in [al.okubo_p11(), al.j_family(0, 1, _unit(gen, 4), _unit(gen, 4))]:
        der = dv.derivation_basis(a, TOL)
        for delta in der.basis:
            if np.max(np.abs(delta + delta.T)) > 1e-8:
                return False, "derivation not skew"
            if dv.leibniz_residual(a, delta) > 1e-8:
                return False, "leibniz residual"
    return True, "skewness and leibniz residuals"


def check_trivial_submodule_subalgebra(gen, fast):
    for a in [al.octonion_algebra(), al.lambda_family(0, 1, _unit(gen, 2), _unit(gen, 2)),
              al.g_family(*_random_valid_g_indices(gen), gen.uniform(0, np.pi),
                          gen.uniform(0, np.pi))]:
        basis = dv.trivial_submodule(a, tol=TOL)
        d = basis.shape[1]
        for i in range(d):
            for j in range(d):
                prod = a.product(basis[:, i], basis[:, j])
                resid = prod - basis @ (basis.T @ prod)
                if np.max(np.abs(resid)) > 1e-8:
                    return False, "trivial submodule not closed"
    return True, "product closure"


def check_nf_invariance_TxT(gen, fast):
    trials = 200 if fast else 1000
    worst = 0.0
    for _ in range(trials):
        x = nf.make_pair(_unit(gen, 4), _unit(gen, 4))
        q = _unit(gen, 4)
        r1 = nf.nf_TxT(x, TOL)
        r2 = nf.nf_TxT(nf.act_TxT(q, x), TOL)
        worst = max(worst, np.max(np.abs(r1.canonical.a - r2.canonical.a)),
                    np.max(np.abs(r1.canonical.b - r2.canonical.b)))
        ok, _ = nf.in_M(r1.canonical, TOL)
        if not ok:
            return False, "canonical point left the transversal"
        moved = nf.act_TxT(r1.witness_q, x)
        if not moved.close_to(r1.canonical, 1e-9):
            return False, "witness mismatch"
    return worst < 1e-8, f"max deviation {worst:.2e} over {trials} trials"


def check_nf_invariance_pair(gen, fast):
    trials = 200 if fast else 1000
    for k in range(trials):
        br1 = nf.BracketTT.of(_unit(gen, 4), _unit(gen, 4))
        br2 = nf.BracketTT.of(_unit(gen, 4), _unit(gen, 4))
        q = _unit(gen, 4)
        r1 = nf.nf_pair((br1, br2), TOL)
        r2 = nf.nf_pair(nf.act_pair(q, (br1, br2), TOL), TOL)
        if not (r1.canonical[0].close_to(r2.canonical[0], 1e-8)
                and nf.BracketTT.of(*r1.canonical[1]).close_to(
                    nf.BracketTT.of(*r2.canonical[1]), 1e-8)):
            return False, f"trial {k}"
        ok, _ = nf.in_N(r1.canonical, TOL)
        if not ok:
            return False, "canonical pair left the transversal"
    return True, f"{trials} trials"


def check_nf_idempotence(gen, fast):
    trials = 50 if fast else 200
    for _ in range(trials):
        x = nf.make_pair(_unit(gen, 4), _unit(gen, 4))
        r = nf.nf_TxT(x, TOL)
        again = nf.nf_TxT(r.canonical, TOL)
        if not again.canonical.close_to(r.canonical, 1e-9):
            return False, "pair normal form moved a canonical point"
        if abs(abs(again.witness_q[0]) - 1.0) > 1e-7:
            return False, "witness of a canonical point is not the identity"
    return True, f"{trials} trials"


def check_nf_irredundancy(gen, fast):
    pairs = 20 if fast else 50
    grid = 2000 if fast else 5000
    qs = gen.standard_normal((grid, 4))
    qs /= np.linalg.norm(qs, axis=1)[:, None]
    points = []
    while len(points) < pairs * 2:
        r = nf.nf_TxT(nf.make_pair(_unit(gen, 4), _unit(gen, 4)), TOL)
        points.append(r.canonical)
    for k in range(pairs):
        x, y = points[2 * k], points[2 * k + 1]
        if x.close_to(y, 1e-3):
            continue
        best = _grid_min_distance(qs, x, y)
        if best < 1e-3:
            return False, f"grid rotation connects distinct canonical points ({best:.1e})"
    return True, f"{pairs} pairs against {grid} rotations"


def _qmul_batch(a, b):
    w1, x1, y1, z1 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    w2, x2, y2, z2 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ], axis=-1)


def grid_kappa(qs, v):
    """Conjugate one quaternion by every row of qs."""
    conj = qs * np.array([1.0, -1, -1, -1])
    return _qmul_batch(_qmul_batch(qs, np.broadcast_to(v, qs.shape)), conj)


def _grid_min_distance(qs, x, y):
    da = np.max(np.abs(grid_kappa(qs, x.a) - y.a), axis=1)
    db = np.max(np.abs(grid_kappa(qs, x.b) - y.b), axis=1)
    return float(np.min(np.maximum(da, db)))


def check_triality_g2_pairs(gen, fast):
    trials = 5 if fast else 20
    worst = 0.0
    for _ in range(trials):
        phi = mp.g2_from_triples(oc.CayleyTriple.fixed(), _random_cayley_triple(gen))
        s, _ = tr.solve_triality_components(phi.mat, TOL, seed=int(gen.integers(2 ** 31)))
        got = tr._pair_from_s(phi.mat, s)[0]
        worst = max(worst, min(np.max(np.abs(got - phi.mat)), np.max(np.abs(got + phi.mat))))
    return worst < 1e-8, f"max deviation {worst:.2e} over {trials} solves"


def check_triality_closed_forms(gen, fast):
    trials = 5 if fast else 20
    for _ in range(trials):
        rho = mp.g2_from_triples(oc.CayleyTriple.fixed(), _random_cayley_triple(gen))
        t8, s8 = _unit(gen, 8), _unit(gen, 8)
        phi = mp.left_right_mul_map(t8, s8, rho)
        pair = tr.triality_pair(phi, TOL)
        if pair.residual > 1e-8:
            return False, "left/right isotopy composite"
        phi2 = mp.bimul_map(_unit(gen, 8), rho)
        pair2 = tr.triality_pair(phi2, TOL)
        if pair2.residual > 1e-8:
            return False, "bimultiplication composite"
    return True, f"{trials} draws each"


def check_triality_identities(gen, fast):
    trials = 5 if fast else 20
    worst = 0.0
    for k in range(trials):
        m = np.linalg.qr(gen.standard_normal((8, 8)))[0]
        if np.linalg.det(m) < 0:
            m[:, 0] *= -1
        pair = tr.triality_pair(mp.OrthoMap8(m), TOL, seed=int(gen.integers(2 ** 31)))
        lhs1 = oc.right_mul_matrix(oc.Octonion(pair.phi2[:, 0]).conj()) @ m
        lhs2 = oc.left_mul_matrix(oc.Octonion(pair.phi1[:, 0]).conj()) @ m
        worst = max(worst, np.max(np.abs(lhs1 - pair.phi1)), np.max(np.abs(lhs2 - pair.phi2)))
    return worst < 1e-8, f"max deviation {worst:.2e}"


def check_d1133_roundtrip(gen, fast):
    trials = 10 if fast else 50
    for _ in range(trials):
        i1, j1, i2, j2 = _random_valid_g_indices(gen)
        p = d33.GParams(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        f, _ = d33.g_to_f(p, 0.0)
        back = d33.f_to_g(f)
        da = min((p.alpha - back.alpha) % np.pi, (back.alpha - p.alpha) % np.pi)
        db = min((p.beta - back.beta) % np.pi, (back.beta - p.beta) % np.pi)
        if da > 1e-9 or db > 1e-9:
            return False, "roundtrip moved the angles"
    return True, f"{trials} draws"


def check_d1133_witness(gen, fast):
    trials = 3 if fast else 10
    for _ in range(trials):
        i1, j1, i2, j2 = _random_valid_g_indices(gen)
        p = d33.GParams(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        gamma = gen.uniform(0, np.pi)
        f, w = d33.g_to_f(p, gamma)
        a = al.from_isotope(mp.G_map(p.alpha, gamma, j1, j2), mp.G_map(p.beta, gamma, i1, i2))
        b = al.from_isotope(mp.F_map(f.xi, j1, j2), mp.F_map(f.eta, i1, i2))
        if not tr.iso_isotopes(a, b, w.phi, TOL):
            return False, "witness rejected"
    return True, f"{trials} draws"


def check_d1133_exclusion(gen, fast):
    steps = 40 if fast else 100
    grid = np.arange(steps) * np.pi / steps
    for i1, j1 in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for i2, j2 in ((0, 1), (1, 0), (1, 1)):
            count = 0
            for a in grid:
                for b in grid:
                    if not d33.in_d1133(d33.GParams(i1, j1, i2, j2, a, b), TOL):
                        count += 1
            if count != 1:
                return False, f"{(i1, j1, i2, j2)}: {count} excluded grid points"
    return True, f"{steps}x{steps} grid, 12 index tuples"


def check_d1133_oracle(gen, fast):
    trials = 30 if fast else 100
    for _ in range(trials):
        i1, j1, i2, j2 = _random_valid_g_indices(gen)
        p = d33.GParams(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        if gen.integers(0, 2):
            q = d33.GParams(i1, j1, i2, j2,
                            (-p.alpha) % np.pi if gen.integers(0, 2) else p.alpha,
                            (-p.beta) % np.pi if gen.integers(0, 2) else p.beta)
        else:
            q = d33.GParams(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        if d33.iso_1133(p, q) != d33.iso_1133_lattice_oracle(p, q):
            return False, f"disagreement at {p} vs {q}"
    return True, f"{trials} pairs"


def check_classify_blocks(gen, fast):
    trials = 20 if fast else 60
    count = 0
    for _ in range(trials):
        which = int(gen.integers(0, 3))
        seed = int(gen.integers(2 ** 31))
        if which == 0:
            i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
            a4, b4 = _unit(gen, 4), _unit(gen, 4)
            algebra = al.j_family(i, j, a4, b4)
            expected = cl._tau_trichotomy(i, j, a4, b4, TOL)
        elif which == 1:
            i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
            qs = tuple(_unit(gen, 4) for _ in range(4))
            algebra = al.k_family(i, j, *qs)
            expected = cl._t_dichotomy(i, j, qs, TOL)
        else:
            i1, j1, i2, j2 = _random_valid_g_indices(gen)
            gp = d33.GParams(i1, j1, i2, j2, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
            if not d33.in_d1133(gp, TOL):
                continue
            algebra = al.g_family(i1, j1, i2, j2, gp.alpha, gp.beta)
            expected = "D1133"
        got = cl.analyze(algebra, TOL, seed).block.kind
        if got != expected:
            return False, f"expected {expected}, detected {got}"
        count += 1
    return True, f"{count} random draws"


def check_classify_enumerate(gen, fast):
    counts = {"D17": 4, "D8": 1, "D35": 3}
    for kind, expected in counts.items():
        forms = list(cl.enumerate_block(kind, 1, TOL, DEFAULT_SEED))
        if len(forms) != expected:
            return False, f"{kind}: {len(forms)} items"
        signs = {(f.block.sign.i, f.block.sign.j) for f in forms}
        if len(signs) != expected:
            return False, f"{kind}: repeated double signs"
    if any((f.block.sign.i, f.block.sign.j) == (1, 1)
           for f in cl.enumerate_block("D35", 1, TOL, DEFAULT_SEED)):
        return False, "the (-,-) component of the {3,5} block must be empty"
    return True, "D17=4, D8=1, D35=3"


def check_classify_orbit_constancy(gen, fast):
    trials = 5 if fast else 20
    for _ in range(trials):
        i, j = int(gen.integers(0, 2)), int(gen.integers(0, 2))
        a = al.j_family(i, j, _unit(gen, 4), _unit(gen, 4))
        phi = mp.kappa_hat_map(_unit(gen, 4))
        moved = al.transport(phi, a)
        f1 = cl.canonical(a, TOL)
        f2 = cl.canonical(moved, TOL)
        if not cl._params_close(f1.block.kind, f1.params, f2.params):
            return False, "tau-family transport changed the canonical point"
    return True, f"{trials} transports"


CHECKS = [
    ("mul.trick_identity", check_mul_trick_identity),
    ("mul.norm_multiplicative", check_mul_norm_multiplicative),
    ("mul.alternative", check_mul_alternative),
    ("mul.conj_antihomomorphism", check_mul_conj_antihomomorphism),
    ("maps.orthogonal", check_maps_orthogonal),
    ("maps.automorphisms", check_maps_automorphisms),
    ("maps.semidirect_homomorphism", check_maps_semidirect_homomorphism),
    ("maps.tau_conjugation", check_maps_tau_conjugation),
    ("maps.T_conjugation", check_maps_T_conjugation),
    ("maps.block_forms", check_maps_block_forms),
    ("algebra.double_signs", check_algebra_double_signs),
    ("algebra.division_norm", check_algebra_division_norm),
    ("derivations.dimensions", check_derivation_dimensions),
    ("derivations.partitions", check_derivation_partitions),
    ("derivations.skewness", check_derivation_skewness),
    ("derivations.trivial_submodule", check_trivial_submodule_subalgebra),
    ("normal_form.invariance_pairs", check_nf_invariance_TxT),
    ("normal_form.invariance_bracket_pairs", check_nf_invariance_pair),
    ("normal_form.idempotence", check_nf_idempotence),
    ("normal_form.irredundancy", check_nf_irredundancy),
    ("triality.automorphism_pairs", check_triality_g2_pairs),
    ("triality.closed_forms", check_triality_closed_forms),
    ("triality.reconstruction_identities", check_triality_identities),
    ("block1133.roundtrip", check_d1133_roundtrip),
    ("block1133.witness", check_d1133_witness),
    ("block1133.exclusion_unique", check_d1133_exclusion),
    ("block1133.iso_oracle", check_d1133_oracle),
    ("classify.block_detection", check_classify_blocks),
    ("classify.enumerate_counts", check_classify_enumerate),
    ("classify.orbit_constancy", check_classify_orbit_constancy),
]


def verify_suite(seed=DEFAULT_SEED, fast=False):
    """Run every named check with its own generator derived from the seed
    and the check name; returns (name, passed, detail) triples in
    declaration order."""
    results = []
    for name, fn in CHECKS:
        gen = rng([seed] + list(name.encode()))
        try:
            passed, detail = fn(gen, fast)
        except Exception as err:  # a crash counts as a failure, with the message
            passed, detail = False, f"{type(err).__name__}: {err}"
        results.append((name, bool(passed), detail))
    return results
