import numpy as np
import pytest

from transversal_kit import sphere as sp


def c2v(z):
    z = np.atleast_1d(z)
    return np.stack([z.real, z.imag], axis=-1)


def test_circle_is_complex_multiplication():
    # oracle: on S^1 with e0 = 1 the operation is angle addition
    rng = np.random.default_rng(3)
    a = np.exp(1j * rng.uniform(-np.pi, np.pi, 500))
    b = np.exp(1j * rng.uniform(-np.pi, np.pi, 500))
    got = sp.circ(c2v(a), c2v(b))
    assert np.max(np.abs(got - c2v(a * b))) < 1e-12
    chi = sp.chi_sphere(c2v(a), c2v(b))
    assert np.max(np.abs(chi - c2v(b / a))) < 1e-12


def test_r_map_special_points():
    for n in (1, 2, 3, 6):
        e0 = sp.basis(n)
        assert np.allclose(sp.r_map(e0).matrix, np.eye(n))
        assert np.allclose(sp.r_map(-e0).matrix, -np.eye(n))


def test_r_map_sends_e0_to_x_and_is_orthogonal():
    rng = np.random.default_rng(0)
    for n in (2, 3, 5, 10):
        e0 = sp.basis(n)
        for x in sp.random_unit(n, 20, rng):
            R = sp.r_map(x)
            assert np.allclose(R.apply(e0), x, atol=1e-13)
            assert np.allclose(R.matrix.T @ R.matrix, np.eye(n), atol=1e-13)
            # x o y = R_y(x)
            y = sp.random_unit(n, rng=rng)
            assert np.allclose(sp.r_map(y).apply(x), sp.circ(x, y), atol=1e-13)


def test_proj_j_and_reflection():
    e0, e1 = sp.basis(3, 0), sp.basis(3, 1)
    assert np.allclose(sp.proj([2.0, 0, 0], [1.0, 5.0, 0]), [1.0, 0, 0])
    with pytest.raises(ValueError):
        sp.proj([0.0, 0, 0], [1.0, 0, 0])
    assert np.allclose(sp.j_map(e1, e0), -e1)
    assert np.allclose(sp.j_map(e0, e0), e0)
    u = (e0 + e1) / np.sqrt(2)
    assert np.allclose(sp.reflect_line(u, e0), e1)


def test_circ_examples_in_three_dimensions():
    e0, e1, e2 = (sp.basis(3, i) for i in range(3))
    assert np.allclose(sp.circ(e1, e0), e1)
    assert np.allclose(sp.circ(e0, e1), e1)
    assert np.allclose(sp.circ(e1, -e0), -e1)
    # y = e1: axis (e0+e1)/sqrt2; J e1 = -e1, reflected gives -e0
    assert np.allclose(sp.circ(e1, e1), -e0)
    # e2 is orthogonal to the axis, so J and the reflection cancel
    assert np.allclose(sp.circ(e2, e1), e2)


def test_as_unit_and_isometry_checks():
    with pytest.raises(ValueError):
        sp.as_unit([1.0, 1.0])
    assert np.allclose(sp.as_unit([0.6, 0.8]), [0.6, 0.8])
    with pytest.raises(ValueError):
        sp.Isometry(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_near_branch_stays_accurate():
    e0, e1 = sp.basis(4, 0), sp.basis(4, 1)
    y = sp.random_unit(4, rng=1)
    for eps in (1e-4, 1e-6, 1e-8):
        x = -np.cos(eps) * e0 + np.sin(eps) * e1
        assert sp.section_residuals(x[None])[0] < 1e-14
        assert np.linalg.norm(sp.circ(sp.chi_sphere(x, y), x) - y) < 1e-13
    # inside the branch tolerance R_x = -I, so the section misses x by eps
    x = -np.cos(1e-10) * e0 + np.sin(1e-10) * e1
    assert sp.section_residuals(x[None])[0] == pytest.approx(1e-10, rel=1e-3)


def test_conditioning_labels():
    e0, e1 = sp.basis(3, 0), sp.basis(3, 1)
    pts = np.stack([e0, -e0, -np.cos(1e-8) * e0 + np.sin(1e-8) * e1, e1])
    assert list(sp.conditioning(pts)) == ["ok", "branch", "ill", "ok"]


def test_discontinuity_witness_values():
    rows = sp.discontinuity_witness(3, [1e-3])
    assert abs(rows[0]["distance"] - 2.0) < 1e-5
    assert rows[0]["e0_distance"] < 1e-2
    rows = sp.discontinuity_witness(5, [1e-2, 1e-4, 1e-6])
    assert [r["eps"] for r in rows] == [1e-2, 1e-4, 1e-6]
    assert all(abs(r["distance"] - 2.0) < 1e-3 for r in rows)
    gaps = [r["gap_to_minus_e0"] for r in rows]
    assert gaps == sorted(gaps, reverse=True)
    with pytest.raises(ValueError):
        sp.discontinuity_witness(2, [1e-3])


def test_coset_residuals():
    rng = np.random.default_rng(2)
    x = sp.random_unit(5, 300, rng)
    y = sp.random_unit(5, 300, rng)
    assert np.max(sp.coset_residuals(x, y)) < 1e-12
    assert sp.coset_consistency(x[0], y[0]) < 1e-12


def test_continuity_probe():
    empty = sp.continuity_probe(3, 0, 1e-6, 0)
    assert empty["max_modulus"] is None and empty["excluded"] == 0
    rep = sp.continuity_probe(3, 2000, 1e-7, 0, margin=0.3)
    assert rep["max_modulus"] is not None and np.isfinite(rep["max_modulus"])
    assert rep["max_modulus"] < 1e3
    with pytest.raises(ValueError):
        sp.continuity_probe(3, 10, 0.0, 0)
    assert sp.continuity_probe(1, 50, 1e-3, 0)["samples"] == 50


def test_nonassociativity_witness():
    w = sp.nonassociativity_witness(3, seed=1)
    assert w is not None
    x, y, z, res = w
    assert res > 0.1
    assert np.linalg.norm(sp.circ(sp.circ(x, y), z) - sp.circ(x, sp.circ(y, z))) == pytest.approx(res)
    assert sp.nonassociativity_witness(1, seed=0) is None
    with pytest.raises(ValueError):
        sp.nonassociativity_witness(2, seed=0)
