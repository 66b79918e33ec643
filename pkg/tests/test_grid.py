import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvseg.errors import ParameterError, ShapeError
from cvseg.grid import (
    LevelSetField,
    ScalarField,
    diff,
    gradient_central,
    require_same_shape,
    sample_clamped,
    shifted,
)


def ramp_x(n=8, h=1.0):
    # values[i, j] = i * h, a unit ramp along the stencil x axis (rows)
    v = np.arange(n, dtype=np.float64)[:, None] * h * np.ones((1, n))
    return ScalarField(v, h)


class TestScalarField:
    def test_stores_float64(self):
        f = ScalarField(np.ones((3, 4), dtype=np.int32))
        assert f.values.dtype == np.float64
        assert f.height == 3 and f.width == 4 and f.shape == (3, 4)

    def test_rejects_non_2d(self):
        with pytest.raises(ShapeError):
            ScalarField(np.zeros(9))

    def test_rejects_too_small(self):
        with pytest.raises(ParameterError):
            ScalarField(np.zeros((2, 5)))

    def test_rejects_bad_spacing(self):
        with pytest.raises(ParameterError):
            ScalarField(np.zeros((3, 3)), spacing_h=0.0)

    def test_rejects_non_finite(self):
        v = np.zeros((3, 3))
        v[1, 1] = np.nan
        with pytest.raises(ParameterError):
            ScalarField(v)

    def test_copy_is_independent(self):
        f = ScalarField(np.zeros((3, 3)))
        g = f.copy()
        g.values[0, 0] = 7.0
        assert f.values[0, 0] == 0.0

    def test_like_keeps_spacing(self):
        f = ScalarField(np.zeros((3, 3)), spacing_h=0.5)
        assert f.like(np.ones((3, 3))).spacing_h == 0.5


class TestSampleClamped:
    def test_in_bounds_identity(self):
        f = ramp_x()
        assert sample_clamped(f, 3, 2) == f.values[3, 2]

    def test_clamps_negative_row(self):
        f = ramp_x()
        assert sample_clamped(f, -1, 2) == f.values[0, 2]

    def test_clamps_past_last_row(self):
        f = ramp_x()
        assert sample_clamped(f, f.height, 2) == f.values[f.height - 1, 2]

    @given(st.integers(-50, 50), st.integers(-50, 50))
    def test_never_raises_out_of_range(self, i, j):
        f = ramp_x()
        v = sample_clamped(f, i, j)
        assert np.isfinite(v)


class TestDiff:
    @pytest.mark.parametrize("scheme", ["forward", "backward", "central"])
    def test_unit_ramp_interior(self, scheme):
        f = ramp_x()
        assert diff(f, "x", scheme, 3, 3) == pytest.approx(1.0)

    @pytest.mark.parametrize("scheme", ["forward", "backward", "central"])
    def test_constant_field(self, scheme):
        f = ScalarField(np.full((6, 6), 2.5))
        assert diff(f, "x", scheme, 2, 2) == 0.0
        assert diff(f, "y", scheme, 2, 2) == 0.0

    def test_forward_at_far_boundary_is_zero(self):
        # clamped neighbor equals self at the last row
        f = ramp_x()
        assert diff(f, "x", "forward", f.height - 1, 3) == 0.0

    def test_bad_axis_and_scheme(self):
        f = ramp_x()
        with pytest.raises(ParameterError):
            diff(f, "z", "forward", 1, 1)
        with pytest.raises(ParameterError):
            diff(f, "x", "upwind", 1, 1)

    @given(
        st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5),
        st.integers(1, 6), st.integers(1, 6),
    )
    @settings(max_examples=50)
    def test_linear_field_exact(self, a, b, c, i, j):
        ii, jj = np.meshgrid(np.arange(8.0), np.arange(8.0), indexing="ij")
        f = ScalarField(a * ii + b * jj + c)
        for scheme in ("forward", "backward", "central"):
            assert diff(f, "x", scheme, i, j) == pytest.approx(a, abs=1e-9)
            assert diff(f, "y", scheme, i, j) == pytest.approx(b, abs=1e-9)

    def test_central_is_mean_of_one_sided(self, rng):
        f = ScalarField(rng.normal(size=(9, 9)))
        for i in range(1, 8):
            for j in range(1, 8):
                fwd = diff(f, "x", "forward", i, j)
                bwd = diff(f, "x", "backward", i, j)
                assert diff(f, "x", "central", i, j) == pytest.approx(
                    (fwd + bwd) / 2.0, rel=1e-12, abs=1e-15)


class TestShifted:
    def test_matches_sample_clamped(self, rng):
        f = ScalarField(rng.normal(size=(7, 5)))
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (1, -1)):
            s = shifted(f.values, di, dj)
            for i in range(7):
                for j in range(5):
                    assert s[i, j] == sample_clamped(f, i + di, j + dj)


class TestGradientCentral:
    def test_linear_field(self):
        ii, jj = np.meshgrid(np.arange(10.0), np.arange(10.0), indexing="ij")
        gx, gy = gradient_central(ScalarField(3.0 * ii - 2.0 * jj))
        assert np.allclose(gx[1:-1, 1:-1], 3.0)
        assert np.allclose(gy[1:-1, 1:-1], -2.0)

    def test_spacing_scales(self):
        ii = np.arange(6.0)[:, None] * np.ones((1, 6))
        gx, _ = gradient_central(ScalarField(ii, spacing_h=2.0))
        assert np.allclose(gx[1:-1, :], 0.5)


def test_require_same_shape():
    a = ScalarField(np.zeros((4, 4)))
    b = ScalarField(np.zeros((4, 5)))
    with pytest.raises(ShapeError):
        require_same_shape(a, b)
    require_same_shape(a, a)


def test_level_set_field_wraps():
    f = ScalarField(np.ones((3, 3)), spacing_h=0.5)
    phi = LevelSetField(f)
    assert phi.spacing_h == 0.5
    assert phi.shape == (3, 3)
    assert phi.copy().values is not phi.values
    assert phi.like(np.zeros((3, 3))).values[0, 0] == 0.0
