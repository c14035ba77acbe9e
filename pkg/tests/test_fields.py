"""Grid containers and finite-difference helpers."""
import math

import numpy as np
import pytest

from compmedia.fields import (
    DEFAULT_FD_STEP,
    Geometry,
    InsufficientGridError,
    RadialField,
    ScalarField1D,
    SmoothFunction,
    grid_derivatives,
    richardson_d1,
    richardson_d2,
    uniform_spacing,
)


def test_geometry_enum_values():
    assert Geometry.ONE_D.value == "1d"
    assert Geometry.THREE_D.value == "3d"


# ---------------------------------------------------------------------------
# Richardson-extrapolated derivatives
# ---------------------------------------------------------------------------


def test_richardson_first_derivative_of_exp():
    x = 0.7
    assert richardson_d1(math.exp, x, h=1e-3) == pytest.approx(
        math.exp(x), rel=1e-11
    )


def test_richardson_second_derivative_of_sin():
    x = 1.1
    assert richardson_d2(math.sin, x, h=1e-3) == pytest.approx(
        -math.sin(x), rel=1e-8
    )


def test_richardson_vectorizes_over_numpy_arrays():
    xs = np.linspace(0.5, 2.0, 7)
    out = richardson_d1(np.exp, xs)
    np.testing.assert_allclose(out, np.exp(xs), rtol=1e-10)


# ---------------------------------------------------------------------------
# SmoothFunction
# ---------------------------------------------------------------------------


def test_smooth_function_from_callable_differentiates():
    prof = SmoothFunction.from_callable(lambda x: x ** 3)
    assert prof(2.0) == pytest.approx(8.0)
    assert prof.d1(2.0) == pytest.approx(12.0, rel=1e-9)
    assert prof.d2(2.0) == pytest.approx(12.0, rel=1e-7)


def test_smooth_function_constant():
    prof = SmoothFunction.constant(3.5)
    assert prof(123.0) == 3.5
    assert prof.d1(-1.0) == 0.0
    assert prof.d2(0.25) == 0.0


# ---------------------------------------------------------------------------
# field containers
# ---------------------------------------------------------------------------


def test_field_requires_increasing_grid():
    with pytest.raises(ValueError):
        ScalarField1D(np.array([0.0, 1.0, 1.0]), np.zeros(3))
    with pytest.raises(ValueError):
        ScalarField1D(np.array([2.0, 1.0]), np.zeros(2))


def test_field_requires_matching_shapes():
    with pytest.raises(ValueError):
        ScalarField1D(np.linspace(0, 1, 5), np.zeros(4))


def test_node_index_finds_grid_points():
    f = ScalarField1D(np.linspace(0.0, 1.0, 11), np.zeros(11))
    assert f.node_index(0.3) == 3
    with pytest.raises(InsufficientGridError):
        f.node_index(0.35)


def test_radial_field_rejects_negative_radii():
    with pytest.raises(ValueError):
        RadialField(np.array([-0.1, 0.5, 1.0]), np.zeros(3))
    # the origin itself is allowed
    RadialField(np.array([0.0, 0.5, 1.0]), np.zeros(3))


def test_fields_are_immutable():
    import dataclasses

    f = ScalarField1D(np.linspace(0.0, 1.0, 5), np.zeros(5))
    with pytest.raises(dataclasses.FrozenInstanceError):
        f.values = np.ones(5)


# ---------------------------------------------------------------------------
# uniform grids and stencil derivatives
# ---------------------------------------------------------------------------


def test_uniform_spacing_value_and_rejection():
    assert uniform_spacing(np.linspace(0.0, 1.0, 101)) == pytest.approx(0.01)
    warped = np.linspace(0.0, 1.0, 101) ** 2
    with pytest.raises(InsufficientGridError):
        uniform_spacing(warped)


def test_grid_derivatives_fourth_order_convergence():
    def errors(n):
        xs = np.linspace(0.2, 1.2, n)
        h = xs[1] - xs[0]
        d1, d2, interior = grid_derivatives(np.sin(xs), h)
        e1 = np.max(np.abs(d1 - np.cos(xs[interior])))
        e2 = np.max(np.abs(d2 + np.sin(xs[interior])))
        return e1, e2

    # grids coarse enough that truncation, not roundoff, dominates
    e1_coarse, e2_coarse = errors(26)
    e1_fine, e2_fine = errors(51)
    # halving h should shrink a 4th-order error by about 16
    assert e1_coarse / e1_fine > 10.0
    assert e2_coarse / e2_fine > 10.0
    assert e1_fine < 1e-7
    assert e2_fine < 1e-7


def test_grid_derivatives_needs_five_nodes():
    with pytest.raises(InsufficientGridError):
        grid_derivatives(np.zeros(4), 0.1)


def test_default_step_is_sane():
    assert DEFAULT_FD_STEP == pytest.approx(1e-3)
