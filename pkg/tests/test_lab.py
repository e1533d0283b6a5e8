import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszfact import lab
from rieszfact.harmonics import zonal_harmonic
from rieszfact.kernel import HarmonicSpec
from rieszfact.lab import GridError, GridField, OmegaSpec


def _random_field(d, n, seed, L=8.0):
    rng = np.random.default_rng(seed)
    return GridField(d, n, L, rng.standard_normal((n,) * d) + 1j * rng.standard_normal((n,) * d))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([1, 2, 3]), st.sampled_from([4, 8, 16]), st.integers(0, 2**32 - 1))
def test_parseval(d, n, seed):
    f = _random_field(d, n, seed)
    assert lab.spectral_norm(f) == pytest.approx(f.l2_norm(), rel=1e-12)


def test_grid_validation():
    with pytest.raises(GridError):
        GridField(4, 4, 1.0, np.zeros((4,) * 4))
    with pytest.raises(GridError):
        GridField(2, 6, 1.0, np.zeros((6, 6)))
    with pytest.raises(GridError):
        GridField(1, 8, 0.0, np.zeros(8))
    f = lab.gaussian(2, 16)
    with pytest.raises(ValueError):
        f.values[0, 0] = 1.0
    with pytest.raises(GridError):
        _ = f + lab.gaussian(2, 32)


def test_plane_wave_orthogonal_to_axis_is_annihilated():
    n, L = 32, 4.0
    f = GridField.from_function(lambda x: np.exp(2j * math.pi * 3 * x[..., 1] / (2 * L)), 2, n, L)
    out = lab.riesz_apply(f, HarmonicSpec(1, 2))
    assert np.max(np.abs(out.values)) <= 1e-12


@pytest.mark.parametrize("k,d", [(1, 2), (2, 3), (3, 2)])
def test_riesz_bounded_by_sup_of_p(k, d):
    f = _random_field(d, 16, k)
    spec = HarmonicSpec(k, d)
    assert lab.riesz_apply(f, spec).l2_norm() <= spec.polynomial.sup_on_sphere() * f.l2_norm() * (1 + 1e-12)


def test_hilbert_square_is_minus_identity_on_mean_zero():
    f = _random_field(1, 64, 3)
    spec = HarmonicSpec(1, 1)
    twice = lab.riesz_apply(lab.riesz_apply(f, spec), spec)
    expected = -(f.values - f.values.mean())
    np.testing.assert_allclose(twice.values, expected, atol=1e-12)


def test_small_truncation_approaches_full_transform():
    f = lab.gaussian(2, 64)
    spec = HarmonicSpec(2, 2)
    full = lab.riesz_apply(f, spec)
    near = lab.truncated_riesz_apply_multiplier(f, spec, 1e-3)
    assert lab.relative_gap(near, full) <= 0.05


@pytest.mark.parametrize("k,d,t", [(1, 2, 0.5), (3, 2, 1.0), (4, 3, 0.25), (1, 1, 2.0)])
def test_truncation_contracts(k, d, t):
    f = _random_field(d, 32 if d < 3 else 16, k + d)
    spec = HarmonicSpec(k, d)
    assert lab.truncated_riesz_apply_multiplier(f, spec, t).l2_norm() <= lab.riesz_apply(f, spec).l2_norm() + 1e-9


def test_linearity():
    f, g = _random_field(2, 32, 1), _random_field(2, 32, 2)
    spec = HarmonicSpec(3, 2)
    lhs = lab.truncated_riesz_apply_multiplier(f + 2.5 * g, spec, 0.5)
    rhs = lab.truncated_riesz_apply_multiplier(f, spec, 0.5) + 2.5 * lab.truncated_riesz_apply_multiplier(g, spec, 0.5)
    np.testing.assert_allclose(lhs.values, rhs.values, atol=1e-12)


@pytest.mark.parametrize("k", [2, 4])
def test_radial_input_even_order_keeps_rotation_symmetry(k):
    f = lab.gaussian(2, 64)
    out = lab.truncated_riesz_apply_multiplier(f, HarmonicSpec(k, 2), 0.5)
    mag = np.abs(out.spectrum())
    # rotation by 90 degrees on the periodic lattice: xi -> (-xi_2, xi_1), index -j mod n
    rot = np.roll(np.flip(mag.T, axis=0), 1, axis=0)
    assert np.max(np.abs(rot - mag)) <= 1e-10 * np.max(mag)


def test_direct_route_matches_multiplier_route():
    f = lab.modulated_gaussian(2, 128)
    spec = HarmonicSpec(3, 2)
    res = lab.truncated_riesz_apply_direct(f, spec, 0.5)
    assert lab.relative_gap(res.field, lab.truncated_riesz_apply_multiplier(f, spec, 0.5)) <= 1e-2
    assert res.edge_fraction <= lab.EDGE_ENERGY_LIMIT
    assert res.tail_bound > 0


def test_direct_route_edge_cases():
    f = lab.modulated_gaussian(2, 32)
    spec = HarmonicSpec(1, 2)
    empty = lab.truncated_riesz_apply_direct(f, spec, 100.0)
    assert np.all(empty.field.values == 0)
    with pytest.raises(GridError):
        lab.truncated_riesz_apply_direct(f, spec, f.h)
    wide = lab.gaussian(2, 32, sigma=8.0)
    with pytest.raises(GridError):
        lab.truncated_riesz_apply_direct(wide, spec, 1.0)


def test_single_term_omega_is_the_riesz_operator():
    f = lab.gaussian(2, 32, shift=[0.5, -0.3])
    p = zonal_harmonic(2, 2)
    omega = OmegaSpec(2, ((2, 1.0, p),))
    spec = HarmonicSpec(2, 2, p)
    np.testing.assert_allclose(lab.omega_apply(f, omega).values, lab.riesz_apply(f, spec).values, atol=1e-14)
    np.testing.assert_allclose(lab.omega_apply(f, omega, 0.5).values,
                               lab.truncated_riesz_apply_multiplier(f, spec, 0.5).values, atol=1e-14)


def test_radial_omega_contraction():
    omega = lab.default_omega()
    f = lab.gaussian(2, 64)
    assert lab.omega_apply(f, omega, 1.0).l2_norm() <= lab.omega_apply(f, omega).l2_norm() + 1e-9


def test_omega_validation():
    with pytest.raises(ValueError):
        OmegaSpec(2, ())
    with pytest.raises(ValueError):
        OmegaSpec(2, ((2, 1.0, zonal_harmonic(3, 2)),))
    with pytest.raises(GridError):
        lab.omega_apply(lab.gaussian(3, 8), lab.default_omega())


@pytest.mark.parametrize("d", [1, 2, 3])
def test_binary_round_trip(tmp_path, d):
    f = _random_field(d, 8, d, L=3.5)
    lab.save_field(f, tmp_path / "f.field")
    raw = (tmp_path / "f.field").read_bytes()
    assert raw[:8] == lab.FIELD_MAGIC
    g = lab.load_field(tmp_path / "f.field")
    assert (g.d, g.n, g.L) == (d, 8, 3.5)
    assert np.array_equal(g.values, f.values)


def test_binary_rejects_garbage(tmp_path):
    (tmp_path / "bad").write_bytes(b"nope")
    with pytest.raises(GridError):
        lab.load_field(tmp_path / "bad")
    (tmp_path / "bad2").write_bytes(b"X" * 40)
    with pytest.raises(GridError):
        lab.load_field(tmp_path / "bad2")


@pytest.mark.parametrize("d", [1, 2])
def test_csv_round_trip(tmp_path, d):
    f = _random_field(d, 8, 11 + d, L=2.0)
    lab.save_field_csv(f, tmp_path / "f.csv")
    g = lab.load_field_csv(tmp_path / "f.csv")
    assert (g.d, g.n, g.L) == (d, 8, 2.0)
    assert np.array_equal(g.values, f.values)
    with pytest.raises(GridError):
        lab.save_field_csv(_random_field(3, 4, 0), tmp_path / "g.csv")
