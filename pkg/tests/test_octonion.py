import numpy as np
import pytest

from compalg import octonion as oc
from compalg.errors import NotImaginaryUnit
from compalg.numerics import det_sign

from conftest import unit


def test_basis_products():
    assert np.array_equal((oc.U * oc.V).coords, oc.UV.coords)
    assert np.array_equal((oc.Z * oc.Z).coords, -oc.ONE.coords)


def test_quaternion_block_matches_hamilton(gen):
    for _ in range(50):
        a4, b4 = gen.standard_normal(4), gen.standard_normal(4)
        lhs = (oc.Octonion.from_quaternion(a4) * oc.Octonion.from_quaternion(b4)).coords
        assert np.max(np.abs(lhs[4:])) == 0.0
        assert np.allclose(lhs[:4], oc.quat_mul(a4, b4))


def test_trick_identity_exact_on_basis():
    for i in range(4):
        for j in range(4):
            x, y = oc.Octonion.basis(i), oc.Octonion.basis(j)
            assert np.array_equal(((oc.Z * x) * y).coords, (oc.Z * (y * x)).coords)


def test_structure_constants_integer():
    assert oc.STRUCTURE.dtype == np.int64
    assert set(np.unique(oc.STRUCTURE)) <= {-1, 0, 1}


def test_norm_multiplicative(gen):
    worst = 0.0
    for _ in range(2000):
        x, y = oc.random_octonion(gen, unit=True), oc.random_octonion(gen, unit=True)
        worst = max(worst, abs((x * y).norm() - 1.0))
    assert worst < 1e-12


def test_alternative_laws(gen):
    for _ in range(500):
        x, y = oc.random_octonion(gen), oc.random_octonion(gen)
        assert np.allclose((x * (x * y)).coords, ((x * x) * y).coords, atol=1e-12)
        assert np.allclose(((y * x) * x).coords, (y * (x * x)).coords, atol=1e-12)


def test_conj():
    assert np.array_equal(oc.ONE.conj().coords, oc.ONE.coords)
    assert np.array_equal(oc.U.conj().coords, -oc.U.coords)
    x = oc.Octonion(np.arange(8.0))
    assert np.array_equal(x.conj().conj().coords, x.coords)


def test_conj_antihomomorphism_brute_force():
    # check conj(e_i e_j) = conj(e_j) conj(e_i) on every basis pair
    k = np.diag([1.0, -1, -1, -1, -1, -1, -1, -1])
    s = oc.STRUCTURE.astype(float)
    lhs = np.einsum("km,ijm->ijk", k, s)
    rhs = np.einsum("ai,bj,abk->jik", k, k, s)
    assert np.array_equal(lhs, rhs)


def test_real_imaginary_parts():
    x = oc.ONE + 2.0 * oc.U
    assert x.re() == 1.0
    assert oc.Octonion.from_real(3.0).im().norm() == 0.0
    t = 0.5 * (np.sqrt(3.0) * oc.U.coords - oc.ONE.coords)
    im = oc.Octonion(t).im()
    assert np.allclose(im.coords, (np.sqrt(3) / 2) * oc.U.coords)


def test_sum_with_conj_is_twice_real(gen):
    for _ in range(20):
        x = oc.random_octonion(gen)
        assert np.allclose((x + x.conj()).coords, 2 * x.re() * oc.ONE.coords)


def test_left_right_mul_matrices(gen):
    assert np.array_equal(oc.left_mul_matrix(oc.ONE), np.eye(8))
    assert np.array_equal(oc.left_mul_matrix(oc.U) @ oc.V.coords, (oc.U * oc.V).coords)
    for _ in range(10):
        a = oc.random_octonion(gen, unit=True)
        x = oc.random_octonion(gen)
        assert np.allclose(oc.left_mul_matrix(a) @ x.coords, (a * x).coords)
        assert np.allclose(oc.right_mul_matrix(a) @ x.coords, (x * a).coords)
        assert np.max(np.abs(oc.left_mul_matrix(a).T @ oc.left_mul_matrix(a) - np.eye(8))) < 1e-12


def test_left_mul_det_sign_constant(gen):
    signs = {det_sign(oc.left_mul_matrix(oc.random_octonion(gen, unit=True)))
             for _ in range(50)}
    assert signs == {1}


def test_is_cayley_triple():
    assert oc.is_cayley_triple(oc.U, oc.V, oc.Z)
    assert not oc.is_cayley_triple(oc.U, oc.V, oc.UV)
    assert oc.is_cayley_triple(oc.V, oc.U, oc.Z)


def test_kappa_hat_compatibility(gen):
    # conjugation of H lifts to Hz: q (x z) conj-free form kappa_q(x) z
    from compalg.maps import kappa4, kappa_hat_map

    for _ in range(20):
        q = unit(gen, 4)
        x = gen.standard_normal(4)
        xz = oc.Octonion.from_quaternion(x) * oc.Z
        lhs = kappa_hat_map(q).apply(xz)
        rhs = oc.Octonion.from_quaternion(kappa4(q) @ x) * oc.Z
        assert np.allclose(lhs.coords, rhs.coords, atol=1e-12)


def test_rotation_quaternion_aligned():
    q = oc.rotation_quaternion(oc.U, oc.U)
    assert np.array_equal(q, np.array([1.0, 0, 0, 0]))


def test_rotation_quaternion_generic(gen):
    for _ in range(50):
        wf = oc.random_imaginary_unit_quaternion(gen)
        wt = oc.random_imaginary_unit_quaternion(gen)
        q = oc.rotation_quaternion(wf, wt)
        moved = oc.quat_mul(oc.quat_mul(q, wf), oc.quat_conj(q))
        assert np.max(np.abs(moved - wt)) < 1e-10


def test_rotation_quaternion_v_to_u():
    q = oc.rotation_quaternion(oc.V, oc.U)
    moved = oc.quat_mul(oc.quat_mul(q, oc.V.coords[:4]), oc.quat_conj(q))
    assert np.max(np.abs(moved - oc.U.coords[:4])) < 1e-10


def test_rotation_quaternion_antipodal():
    q = oc.rotation_quaternion(oc.U, oc.Octonion(-oc.U.coords))
    # deterministic axis: v survives the projection first
    assert np.allclose(q, oc.V.coords[:4])
    moved = oc.quat_mul(oc.quat_mul(q, oc.U.coords[:4]), oc.quat_conj(q))
    assert np.max(np.abs(moved + oc.U.coords[:4])) < 1e-12


def test_rotation_quaternion_rejects_bad_input():
    with pytest.raises(NotImaginaryUnit):
        oc.rotation_quaternion(oc.ONE, oc.U)
    with pytest.raises(NotImaginaryUnit):
        oc.rotation_quaternion(oc.Z, oc.U)
