"""Aperture states: geometry validation, normalisation, closed-form spectra."""

import numpy as np
import pytest

from weakslit import (GeometryError, ResolutionError, SlitGeometry,
                      build_double_slit, build_momentum_peak,
                      build_single_slit, make_grid)

from oracles import double_slit_momentum_amplitude


class TestSlitGeometry:
    def test_orders_width_and_separation(self):
        with pytest.raises(GeometryError):
            SlitGeometry(width=1.0, separation=0.5)
        with pytest.raises(GeometryError):
            SlitGeometry(width=0.0, separation=1.0)

    def test_rejects_unknown_profile(self):
        with pytest.raises(GeometryError):
            SlitGeometry(width=0.5, separation=1.0, edge_profile="cosine")

    def test_default_edge_scale_is_tenth_of_width(self):
        geom = SlitGeometry(width=0.5, separation=1.0,
                            edge_profile="gaussian_smoothed")
        assert geom.edge_scale == pytest.approx(0.05)
        assert not geom.sharp

    def test_rejects_nonpositive_edge_scale(self):
        with pytest.raises(GeometryError):
            SlitGeometry(width=0.5, separation=1.0,
                         edge_profile="gaussian_smoothed", edge_scale=-0.1)


def test_double_slit_is_normalised_h_polarised(slit_state):
    assert slit_state.norm_sq() == pytest.approx(1.0, rel=1e-12)
    assert np.all(slit_state.amp_v == 0.0)
    assert slit_state.sharp_edges


def test_double_slit_density_is_even(slit_state):
    # x[0] = -n/2*dx has no positive partner on a centred lattice; skip it
    dens = slit_state.spatial_density()
    np.testing.assert_allclose(dens[1:], dens[1:][::-1], atol=1e-14)


def test_double_slit_momentum_matches_closed_form(geom, grid):
    """FFT spectrum vs the continuum transform of the two top-hats."""
    state = build_double_slit(geom, grid)
    h_t, _ = state.momentum_amplitudes()
    sel = np.abs(grid.p) < 6.0 * np.pi
    expected = double_slit_momentum_amplitude(grid.p[sel], geom.width)
    # both are real-positive-normalised up to a common factor
    scale = np.max(np.abs(h_t[sel].real)) / np.max(np.abs(expected))
    np.testing.assert_allclose(h_t[sel].real, expected * scale,
                               atol=2e-3 * np.max(np.abs(h_t[sel])))
    np.testing.assert_allclose(h_t[sel].imag, 0.0, atol=1e-12)


def test_double_slit_fringe_zeros(slit_state, grid):
    """Destructive interference at odd half-multiples of h/s."""
    h_t, v_t = slit_state.momentum_amplitudes()
    dens = np.abs(h_t) ** 2 + np.abs(v_t) ** 2
    for p_zero in (-3.0 * np.pi, -np.pi, np.pi, 3.0 * np.pi):
        k = int(np.argmin(np.abs(grid.p - p_zero)))
        assert dens[k] < 1e-6 * dens.max()


def test_sharp_edges_take_midpoint_value(geom, grid):
    """Slit edges land on lattice sites here; the sample gets half height."""
    state = build_single_slit(geom, grid, which="left")
    amp = state.amp_h.real
    interior = np.max(amp)
    for edge in (-0.75, -0.25):
        k = int(np.argmin(np.abs(grid.x - edge)))
        assert grid.x[k] == pytest.approx(edge, abs=1e-15)
        assert amp[k] == pytest.approx(0.5 * interior, rel=1e-12)


def test_single_slit_sides(geom, grid):
    left = build_single_slit(geom, grid, which="left")
    right = build_single_slit(geom, grid, which="right")
    x = grid.x
    mean_left = float(np.sum(left.spatial_density() * x) * grid.dx)
    mean_right = float(np.sum(right.spatial_density() * x) * grid.dx)
    assert mean_left == pytest.approx(-0.5, abs=1e-9)
    assert mean_right == pytest.approx(+0.5, abs=1e-9)
    with pytest.raises(GeometryError):
        build_single_slit(geom, grid, which="centre")


def test_zero_weight_reduces_to_single_slit(geom, grid):
    pair = build_double_slit(geom, grid, weights=(1.0, 0.0))
    single = build_single_slit(geom, grid, which="left")
    np.testing.assert_allclose(pair.amp_h, single.amp_h, atol=1e-14)


def test_slit_needs_margin_inside_grid(geom):
    tight = make_grid(64, 1.55)
    with pytest.raises(GeometryError):
        build_double_slit(geom, tight)


def test_smoothed_slits_suppress_spectral_tails(slit_state, smooth_state, grid):
    """Sharp edges give 1/p^2 tails; erf edges kill them exponentially."""
    far = np.abs(grid.p) > 25.0 * 2.0 * np.pi
    assert np.count_nonzero(far) > 0
    sharp_t, _ = slit_state.momentum_amplitudes()
    smooth_t, _ = smooth_state.momentum_amplitudes()
    sharp_tail = np.max(np.abs(sharp_t[far]) ** 2)
    smooth_tail = np.max(np.abs(smooth_t[far]) ** 2)
    assert smooth_state.sharp_edges is False
    assert smooth_tail < 1e-8 * sharp_tail


class TestMomentumPeak:
    def test_moments(self, grid):
        p0, width = 3.0, 0.8
        state = build_momentum_peak(p0, width, grid)
        assert state.norm_sq() == pytest.approx(1.0, rel=1e-12)
        h_t, _ = state.momentum_amplitudes()
        dens = np.abs(h_t) ** 2
        dens /= np.sum(dens) * grid.dp
        mean = float(np.sum(dens * grid.p) * grid.dp)
        var = float(np.sum(dens * (grid.p - mean) ** 2) * grid.dp)
        assert mean == pytest.approx(p0, abs=1e-10)
        # amplitude width w gives density sigma = w / sqrt(2)
        assert np.sqrt(var) == pytest.approx(width / np.sqrt(2.0), rel=1e-10)

    def test_rejects_unresolvable_width(self, grid):
        with pytest.raises(ResolutionError):
            build_momentum_peak(0.0, 3.9 * grid.dp, grid)
