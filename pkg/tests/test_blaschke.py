import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toeplitz_completion import FiniteBlaschkeProduct, blaschke, divides, gcd, is_coprime, lcm
from toeplitz_completion.blaschke import (
    BlaschkeFactor,
    cluster_points,
    coefficient_tail_bound,
    div,
    fourier_analytic,
    mul,
)
from toeplitz_completion.errors import InvalidZero, NotDivisible, PoleEvaluation

from conftest import blaschke_value, disk_points, products, quadrature


# evaluation

def test_b0_is_identity():
    assert blaschke(0)(0.5) == pytest.approx(0.5)


def test_factor_vanishes_at_its_zero():
    a = 0.3 - 0.4j
    assert abs(blaschke(a)(a)) < 1e-15


def test_direct_formula_value():
    assert blaschke(0.5)(0.25) == pytest.approx((0.25 - 0.5) / (1 - 0.125), abs=1e-15)
    assert blaschke(0.5)(0.25) == pytest.approx(-0.2857142857142857, abs=1e-15)


def test_pole_raises():
    with pytest.raises(PoleEvaluation):
        blaschke(0.5)(2.0)


@pytest.mark.parametrize("a", [1.0, 1j, 1.5, -0.6 - 0.8j])
def test_boundary_zero_rejected(a):
    with pytest.raises(InvalidZero):
        blaschke(a)


def test_constant_must_be_unimodular():
    with pytest.raises(ValueError):
        FiniteBlaschkeProduct(2.0, ())


def test_single_factor_class_agrees_with_product():
    a = 0.2 + 0.6j
    z = np.exp(1j * np.linspace(0, 6, 7))
    assert np.allclose(BlaschkeFactor(a)(z), blaschke(a)(z), atol=1e-15)


# multiplicative structure

def test_mul_is_zero_union():
    B = mul(blaschke(0.5), blaschke(0.2))
    assert B.same_zeros(FiniteBlaschkeProduct(1, (0.2, 0.5)))


def test_div_removes_zero():
    assert div(blaschke(0.5) * blaschke(0.2), blaschke(0.2)).isclose(blaschke(0.5))


def test_div_not_contained():
    with pytest.raises(NotDivisible):
        div(blaschke(0.5), blaschke(0.2))


def test_gcd_intersection():
    g = gcd(blaschke(0.5) * blaschke(0.2), blaschke(0.2) * blaschke(0.7))
    assert g.isclose(blaschke(0.2))


def test_disjoint_zeros_coprime():
    assert is_coprime(blaschke(0.5), blaschke(0.2))


def test_lcm_takes_max_multiplicity():
    b = blaschke(0.5)
    assert lcm(b ** 2, b).isclose(b ** 2)


def test_zero_tolerance_identifies_near_zeros():
    assert divides(blaschke(0.5 + 5e-10), blaschke(0.5))
    assert not divides(blaschke(0.5 + 5e-9), blaschke(0.5))


# Taylor coefficients

def test_taylor_of_z():
    c = fourier_analytic(blaschke(0), 5)
    assert np.allclose(c, [0, 1, 0, 0, 0, 0])


def test_taylor_of_half():
    c = fourier_analytic(blaschke(0.5), 3)
    assert np.allclose(c, [-0.5, 0.75, 0.375, 0.1875], atol=1e-15)


def test_taylor_of_product_constant_term():
    B = blaschke(0.5) * blaschke(0.2)
    c = fourier_analytic(B, 6)
    oracle = quadrature(lambda z: blaschke_value([0.5, 0.2], 1, z), 0, 6)
    assert c[0] == pytest.approx(0.1)
    assert np.allclose(c, oracle, atol=1e-12)


def test_negative_max_index():
    with pytest.raises(ValueError):
        fourier_analytic(blaschke(0.5), -1)


def test_cluster_points():
    out = cluster_points([0.5, 0.5 + 1e-10, 0.2], 1e-9)
    assert sorted(c for _, c in out) == [1, 2]


# properties

@given(products(max_degree=6))
def test_unimodular_on_circle(B):
    z = np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.max(np.abs(np.abs(B(z)) - 1)) <= 1e-10


@given(products(max_degree=6))
def test_taylor_matches_quadrature(B):
    c = fourier_analytic(B, 40)
    oracle = quadrature(lambda z: blaschke_value(B.zeros, B.constant, z), 0, 40)
    assert np.max(np.abs(c - oracle)) <= 1e-9


@given(products(), products())
def test_gcd_times_lcm_is_product(B1, B2):
    assert (gcd(B1, B2) * lcm(B1, B2)).same_zeros(B1 * B2)


@given(products(), products())
def test_div_inverts_mul(B1, B2):
    q = div(mul(B1, B2), B2)
    assert q.same_zeros(B1)
    assert abs(q.constant - B1.constant) <= 1e-12


@given(products(max_degree=4), st.integers(0, 40))
def test_tail_bound_dominates_actual_tail(B, s):
    c = fourier_analytic(B, s + 400)
    actual = float(np.sum(np.abs(c[s + 1:])))
    assert coefficient_tail_bound(B, s) >= actual - 1e-12


@given(products(max_degree=4))
def test_geometric_decay(B):
    if B.degree == 0 or B.rho < 1e-3:
        return
    # Cauchy estimate on |z| = R with 1 < R < 1/rho
    c = np.abs(fourier_analytic(B, 80))
    R = 2 / (1 + B.rho)
    assert np.all(c <= B.max_modulus(R) * R ** -np.arange(81.0) * (1 + 1e-12))


@given(disk_points(0.95), products())
def test_polynomials_reproduce_values(a, B):
    num, den = B.polynomials()
    for z in (a, cmath.exp(0.3j)):
        assert abs(np.polyval(num[::-1], z) / np.polyval(den[::-1], z) - B(z)) < 1e-10
