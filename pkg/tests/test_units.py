"""Dimensional bookkeeping: scale factors and coordinate round trips."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compmedia.units import (
    PhysicalParams,
    ScaledCoords,
    from_dimensionless,
    lambda_bar,
    momentum_scale,
    to_dimensionless,
    to_scaled,
)

DEFAULTS = PhysicalParams(mass=0.5, energy=1.0)


def test_default_length_scale_is_unity():
    assert lambda_bar(DEFAULTS) == pytest.approx(1.0, rel=0, abs=0)
    assert momentum_scale(DEFAULTS) == pytest.approx(1.0)


def test_lambda_bar_formula():
    params = PhysicalParams(mass=2.0, energy=3.0, hbar=0.7)
    assert lambda_bar(params) == pytest.approx(0.7 / math.sqrt(12.0), rel=1e-15)


def test_momentum_scale_is_hbar_over_lambda():
    params = PhysicalParams(mass=1.3, energy=0.4, hbar=2.0)
    assert momentum_scale(params) == pytest.approx(
        params.hbar / lambda_bar(params), rel=1e-15
    )


@pytest.mark.parametrize("bad", [
    dict(mass=0.0, energy=1.0),
    dict(mass=-1.0, energy=1.0),
    dict(mass=1.0, energy=0.0),
    dict(mass=1.0, energy=-2.0),
    dict(mass=1.0, energy=1.0, hbar=0.0),
])
def test_params_must_be_positive(bad):
    with pytest.raises(ValueError):
        PhysicalParams(**bad)


@given(
    x=st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
    mass=st.floats(min_value=0.01, max_value=100.0),
    energy=st.floats(min_value=0.01, max_value=100.0),
)
@settings(max_examples=60, deadline=None)
def test_dimensionless_round_trip(x, mass, energy):
    params = PhysicalParams(mass=mass, energy=energy)
    back = from_dimensionless(to_dimensionless(x, params), params)
    assert back == pytest.approx(x, rel=1e-12, abs=1e-12)


def test_to_dimensionless_accepts_arrays():
    xs = np.linspace(-2.0, 2.0, 11)
    params = PhysicalParams(mass=2.0, energy=2.0)
    out = to_dimensionless(xs, params)
    assert out.shape == xs.shape
    np.testing.assert_allclose(out, xs / lambda_bar(params), rtol=1e-15)


def test_scaled_coords_product_matches_dimensionless():
    params = PhysicalParams(mass=0.5, energy=4.0)
    coords = to_scaled(1.5, params)
    assert coords.sqrtE == pytest.approx(2.0)
    assert coords.product == pytest.approx(
        to_dimensionless(1.5, params), rel=1e-14
    )


def test_scaled_coords_allows_negative_zeta_only():
    assert ScaledCoords(zeta=-2.0, sqrtE=1.0).product == pytest.approx(-2.0)
    with pytest.raises(ValueError):
        ScaledCoords(zeta=1.0, sqrtE=0.0)
    with pytest.raises(ValueError):
        ScaledCoords(zeta=1.0, sqrtE=-1.0)
