import json

import numpy as np
import pytest

from compalg import algebra as al
from compalg import maps as mp
from compalg import octonion as oc
from compalg.errors import (BadParameter, InconsistentSigns, NoIsotopeProvenance,
                            NotOrthogonal)

from conftest import unit


def kappa_q(q, x):
    return oc.quat_mul(oc.quat_mul(q, x), oc.quat_conj(q))


def test_from_isotope_identity_is_octonions():
    a = al.from_isotope(mp.identity_map(), mp.identity_map())
    assert np.array_equal(a.sc, oc.STRUCTURE.astype(float))


def test_from_isotope_conj_pair_double_sign():
    a = al.from_isotope(mp.conj_map(), mp.conj_map())
    ds = al.double_sign(a)
    assert ds.signs == (-1, -1)


def test_from_isotope_lambda_u_product():
    # 1 . 1 = f(1) g(1) = u u = -1
    lam = mp.lambda_map([0.0, 1.0], 0)
    a = al.from_isotope(lam, lam)
    assert np.allclose(a.product(oc.ONE.coords, oc.ONE.coords), -oc.ONE.coords)


def test_from_isotope_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        al.from_isotope(2.0 * np.eye(8), np.eye(8))


def test_double_sign_table():
    assert al.double_sign(al.octonion_algebra()).signs == (1, 1)
    for i in (0, 1):
        for j in (0, 1):
            ds = al.double_sign(al.standard_isotope(i, j))
            assert (ds.i, ds.j) == (i, j)
    assert al.double_sign(al.okubo_p11()).signs == (-1, -1)
    for i, j in ((0, 0), (0, 1), (1, 0)):
        assert al.double_sign(al.p35(i, j)).signs == ((-1) ** i, (-1) ** j)


def test_double_sign_inconsistent_for_non_division():
    # symmetrized octonion product: commutative, not a division algebra
    from compalg.errors import NearSingular

    sym = 0.5 * (oc.STRUCTURE + np.swapaxes(oc.STRUCTURE, 0, 1))
    with pytest.raises((InconsistentSigns, NearSingular)):
        al.double_sign(al.Algebra(sym.astype(float)))


def test_is_division_and_norm():
    o = al.octonion_algebra()
    assert al.is_division(o) and al.norm_multiplicative(o)
    sym = al.Algebra(0.5 * (oc.STRUCTURE + np.swapaxes(oc.STRUCTURE, 0, 1)).astype(float))
    assert not al.norm_multiplicative(sym)


def test_random_isotopes_division(gen):
    for _ in range(5):
        f = np.linalg.qr(gen.standard_normal((8, 8)))[0]
        g = np.linalg.qr(gen.standard_normal((8, 8)))[0]
        a = al.from_isotope(f, g)
        assert al.is_division(a)
        assert al.norm_multiplicative(a)


def test_family_constructor_invariants(gen):
    draws = [
        al.j_family(0, 0, unit(gen, 4), unit(gen, 4)),
        al.k_family(1, 0, *(unit(gen, 4) for _ in range(4))),
        al.lambda_family(0, 1, unit(gen, 2), unit(gen, 2)),
        al.g_family(0, 1, 1, 0, gen.uniform(0, np.pi), gen.uniform(0, np.pi)),
    ]
    expected = [(0, 0), (1, 0), (0, 1), (1, 1)]
    for a, (i, j) in zip(draws, expected):
        assert al.is_division(a)
        assert al.norm_multiplicative(a)
        ds = al.double_sign(a)
        assert (ds.i, ds.j) == (i, j)


def test_j_family_trivial_point_is_standard():
    a = al.j_family(0, 0, [1, 0, 0, 0], [1, 0, 0, 0])
    assert np.array_equal(a.sc, oc.STRUCTURE.astype(float))


def test_g_family_index_constraint():
    with pytest.raises(BadParameter):
        al.g_family(0, 0, 0, 0, 0.3, 0.4)


def test_p35_rejects_minus_minus():
    with pytest.raises(BadParameter):
        al.p35(1, 1)


def test_okubo_equals_tau_point():
    t = al.OKUBO_TWIST
    a = al.okubo_p11()
    b = al.j_family(1, 1, t, oc.quat_mul(t, t))
    assert np.max(np.abs(a.sc - b.sc)) < 1e-14


def test_transport_identity_and_kappa(gen):
    a4, b4 = unit(gen, 4), unit(gen, 4)
    a = al.j_family(0, 1, a4, b4)
    same = al.transport(mp.identity_map(), a)
    assert np.max(np.abs(same.sc - a.sc)) < 1e-14
    q = unit(gen, 4)
    moved = al.transport(mp.kappa_hat_map(q), a)
    direct = al.j_family(0, 1, kappa_q(q, a4), kappa_q(q, b4))
    assert np.max(np.abs(moved.sc - direct.sc)) < 1e-12
    assert moved.family.name == "tau_family"
    assert np.allclose(moved.family.params["a"], kappa_q(q, a4))


def test_transport_preserves_invariants(gen):
    from compalg.derivations import derivation_basis

    a = al.j_family(1, 1, unit(gen, 4), unit(gen, 4))
    moved = al.transport(mp.kappa_hat_map(unit(gen, 4)), a)
    assert al.double_sign(moved).signs == al.double_sign(a).signs
    assert derivation_basis(moved).dim == derivation_basis(a).dim


def test_transport_eps_on_lambda(gen):
    t1, t2 = unit(gen, 2), unit(gen, 2)
    a = al.lambda_family(0, 1, t1, t2)
    moved = al.transport(mp.eps_hat(1), a)
    direct = al.lambda_family(0, 1, np.array([t1[0], -t1[1]]), np.array([t2[0], -t2[1]]))
    assert np.max(np.abs(moved.sc - direct.sc)) < 1e-12
    assert np.allclose(moved.family.params["a"], [t1[0], -t1[1]])


def test_transport_requires_provenance():
    raw = al.Algebra(oc.STRUCTURE.astype(float))
    with pytest.raises(NoIsotopeProvenance):
        al.transport(mp.identity_map(), raw)


def test_membership_predicates():
    one = [1.0, 0, 0, 0]
    assert not al.in_TxT_ij(0, 0, one, one)
    t = al.OKUBO_TWIST
    assert not al.in_TxT_ij(1, 1, t, oc.quat_mul(t, t))
    assert al.in_TxT_ij(0, 0, t, oc.quat_mul(t, t))
    assert al.in_TxT_ij(1, 1, t, t)
    assert not al.in_S(one, [-1.0, 0, 0, 0], one, one)
    assert al.in_S([0.0, 1, 0, 0], one, one, one)
    # aligned one-axis tuples with matching signs fall outside S_ij
    u = np.array([0.0, 1, 0, 0])
    a = np.array([np.cos(0.4), np.sin(0.4), 0, 0])
    assert not al.in_S_ij(0, 1, a, -a, u, u)
    assert al.in_S_ij(0, 1, a, a, u, u)


def test_json_roundtrip_bit_exact(gen):
    a = al.g_family(1, 0, 0, 1, gen.uniform(0, np.pi), gen.uniform(0, np.pi))
    blob = json.dumps(a.to_json())
    b = al.from_json(json.loads(blob))
    assert np.array_equal(a.sc, b.sc)
    assert b.family.name == "g_family"
    raw = al.Algebra(a.sc.copy())
    blob2 = json.dumps(raw.to_json())
    c = al.from_json(json.loads(blob2))
    assert np.array_equal(c.sc, raw.sc)
    assert c.family is None


def test_quat4_block():
    h = al.quat4(0, 0)
    assert h.dim == 4
    assert np.array_equal(h.sc, oc.STRUCTURE[:4, :4, :4].astype(float))
    for i in (0, 1):
        for j in (0, 1):
            ds = al.double_sign(al.quat4(i, j))
            assert (ds.i, ds.j) == (i, j)
