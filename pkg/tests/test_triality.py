import numpy as np
import pytest

from compalg import algebra as al
from compalg import maps as mp
from compalg import octonion as oc
from compalg import triality as tr
from compalg.errors import NoIsotopeProvenance, NotSpecialOrthogonal, PreconditionViolated

from conftest import unit


def random_g2(gen):
    from compalg.verify import _random_cayley_triple

    return mp.g2_from_triples(oc.CayleyTriple.fixed(), _random_cayley_triple(gen))


def random_so8(gen):
    m = np.linalg.qr(gen.standard_normal((8, 8)))[0]
    if np.linalg.det(m) < 0:
        m[:, 0] *= -1
    return mp.OrthoMap8(m)


def test_is_triality_pair_basics(gen):
    ident = np.eye(8)
    assert tr.is_triality_pair(ident, ident, ident)
    phi = mp.kappa_hat_map(unit(gen, 4))
    assert tr.is_triality_pair(phi, phi, phi)
    # simultaneous sign flip stays a triality pair
    assert tr.is_triality_pair(phi.mat, -phi.mat, -phi.mat)
    assert not tr.is_triality_pair(ident, phi.mat, ident)


def test_triality_pair_of_automorphisms(gen):
    for _ in range(10):
        phi = random_g2(gen)
        pair = tr.triality_pair(phi)
        assert pair.residual < 1e-8
        assert min(np.max(np.abs(pair.phi1 - phi.mat)),
                   np.max(np.abs(pair.phi1 + phi.mat))) < 1e-8


def test_solver_recovers_automorphism_pairs(gen):
    for k in range(10):
        phi = random_g2(gen)
        s, val = tr.solve_triality_components(phi.mat, seed=k)
        assert val < 1e-16
        phi1, phi2 = tr._pair_from_s(phi.mat, s)
        assert min(np.max(np.abs(phi1 - phi.mat)), np.max(np.abs(phi1 + phi.mat))) < 1e-8


def test_closed_form_left_right_isotopy(gen):
    for _ in range(10):
        rho = random_g2(gen)
        t8, s8 = unit(gen, 8), unit(gen, 8)
        phi = mp.left_right_mul_map(t8, s8, rho)
        pair = tr.triality_pair(phi)
        assert pair.residual < 1e-10
        t = oc.Octonion(t8)
        s = oc.Octonion(s8)
        expected1 = oc.left_mul_matrix(t) @ oc.right_mul_matrix(t) \
            @ oc.right_mul_matrix(s.conj()) @ rho.mat
        assert min(np.max(np.abs(pair.phi1 - expected1)),
                   np.max(np.abs(pair.phi1 + expected1))) < 1e-10


def test_closed_form_bimultiplication(gen):
    for _ in range(10):
        rho = random_g2(gen)
        c8 = unit(gen, 8)
        phi = mp.bimul_map(c8, rho)
        pair = tr.triality_pair(phi)
        c = oc.Octonion(c8)
        expected = (oc.left_mul_matrix(c) @ rho.mat, oc.right_mul_matrix(c) @ rho.mat)
        assert min(np.max(np.abs(pair.phi1 - expected[0])),
                   np.max(np.abs(pair.phi1 + expected[0]))) < 1e-10
        assert pair.residual < 1e-10


def test_reconstruction_identities(gen):
    for k in range(10):
        phi = random_so8(gen)
        pair = tr.triality_pair(phi, seed=k)
        m = phi.mat
        lhs1 = oc.right_mul_matrix(oc.Octonion(pair.phi2[:, 0]).conj()) @ m
        lhs2 = oc.left_mul_matrix(oc.Octonion(pair.phi1[:, 0]).conj()) @ m
        assert np.max(np.abs(lhs1 - pair.phi1)) < 1e-8
        assert np.max(np.abs(lhs2 - pair.phi2)) < 1e-8


def test_triality_pair_rejects_reflections():
    with pytest.raises(NotSpecialOrthogonal):
        tr.triality_pair(mp.conj_map())


def test_sign_normalization_deterministic(gen):
    phi = random_so8(gen)
    p1 = tr.triality_pair(phi, seed=1)
    p2 = tr.triality_pair(phi, seed=2)
    assert np.max(np.abs(p1.phi1 - p2.phi1)) < 1e-7
    assert np.max(np.abs(p1.phi2 - p2.phi2)) < 1e-7


def test_iso_isotopes(gen):
    a4, b4 = unit(gen, 4), unit(gen, 4)
    a = al.j_family(1, 1, a4, b4)
    assert tr.iso_isotopes(a, a, mp.identity_map())
    q = unit(gen, 4)
    phi = mp.kappa_hat_map(q)
    b = al.transport(phi, a)
    assert tr.iso_isotopes(a, b, phi)
    assert tr.iso_isotopes(b, a, phi.inv())
    assert not tr.iso_isotopes(al.standard_isotope(0, 0), al.standard_isotope(1, 1),
                               mp.identity_map())
    with pytest.raises(NoIsotopeProvenance):
        tr.iso_isotopes(al.Algebra(a.sc.copy()), a, mp.identity_map())


def test_iso_isotopes_via_general_solver(gen):
    # strip the label so the sphere solver must find the components
    a4, b4 = unit(gen, 4), unit(gen, 4)
    a = al.j_family(0, 0, a4, b4)
    q = unit(gen, 4)
    phi = mp.OrthoMap8(mp.kappa_hat_map(q).mat.copy())
    b = al.transport(mp.kappa_hat_map(q), a)
    assert tr.iso_isotopes(a, b, phi)


def test_g2_iso_fixed_subspace(gen):
    # T-type pairs all fix the complement of H pointwise
    qs = [unit(gen, 4) for _ in range(4)]
    a = al.k_family(0, 1, *qs)
    q = unit(gen, 4)
    phi = mp.kappa_hat_map(q)
    b = al.transport(phi, a)
    subspace = np.eye(8)[:, 4:]
    assert tr.g2_iso_fixed_subspace(a, b, subspace, phi)
    assert not tr.g2_iso_fixed_subspace(a, b, subspace, mp.conj_map())
    # the u-flip on a k-point with its own transport, fixing the unit line
    c = al.transport(mp.eps_hat(1), a)
    assert tr.g2_iso_fixed_subspace(a, c, np.eye(8)[:, 4:], mp.eps_hat(1))
    with pytest.raises(PreconditionViolated):
        # the okubo pair moves z, so it does not fix the complement of H
        okubo = al.okubo_p11()
        tr.g2_iso_fixed_subspace(okubo, okubo, np.eye(8)[:, 4:], mp.identity_map())


def test_g2_iso_fixing_unit_line(gen):
    # conjugate-paired parameters make the T-type maps fix 1, so the unit
    # line works as the shared fixed subspace
    a1, a2 = unit(gen, 4), unit(gen, 4)
    a = al.k_family(1, 0, a1, oc.quat_conj(a1), a2, oc.quat_conj(a2))
    for mat in a.isotope:
        assert np.max(np.abs(mat[:, 0] - np.eye(8)[:, 0])) < 1e-12
    phi = mp.eps_hat(1)
    b = al.transport(phi, a)
    one_line = np.eye(8)[:, :1]
    assert tr.g2_iso_fixed_subspace(a, b, one_line, phi)
    # a different conjugate-paired target is rejected
    a1p = unit(gen, 4)
    c = al.k_family(1, 0, a1p, oc.quat_conj(a1p), a2, oc.quat_conj(a2))
    assert not tr.g2_iso_fixed_subspace(a, c, one_line, phi)


def test_random_so8_pairs(gen):
    worst = 0.0
    for k in range(10):
        phi = random_so8(gen)
        pair = tr.triality_pair(phi, seed=k)
        worst = max(worst, pair.residual)
    assert worst < 1e-8


def test_iso_isotopes_reflexive_and_symmetric_on_families(gen):
    ident = mp.identity_map()
    for _ in range(50):
        which = int(gen.integers(0, 3))
        if which == 0:
            a = al.j_family(int(gen.integers(0, 2)), int(gen.integers(0, 2)),
                            unit(gen, 4), unit(gen, 4))
        elif which == 1:
            a = al.k_family(int(gen.integers(0, 2)), int(gen.integers(0, 2)),
                            *(unit(gen, 4) for _ in range(4)))
        else:
            i2, j2 = (1, int(gen.integers(0, 2))) if gen.integers(0, 2) \
                else (int(gen.integers(0, 2)), 1)
            a = al.g_family(int(gen.integers(0, 2)), int(gen.integers(0, 2)), i2, j2,
                            gen.uniform(0, np.pi), gen.uniform(0, np.pi))
        assert tr.iso_isotopes(a, a, ident)
        phi = mp.kappa_hat_map(unit(gen, 4))
        b = al.transport(phi, a)
        assert tr.iso_isotopes(a, b, phi)
        assert tr.iso_isotopes(b, a, phi.inv())
