import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toeplitz_completion import (
    FiniteBlaschkeProduct,
    MatrixSymbol,
    ScalarSymbol,
    blaschke,
    coprime_diag,
    coprime_point_test,
    diagonal_hull,
    diagonal_hull_bruteforce,
    is_coprime,
    is_inner,
    kernel_check,
    kernel_inner_delta,
    kernel_phi_minus,
    lcm,
)
from toeplitz_completion.errors import CaseHypothesisViolated
from toeplitz_completion.gallery import z
from toeplitz_completion.inner_matrix import Case, det_zeros

from conftest import pool_points, unimodular

S = ScalarSymbol
A = S.analytic


def _rotation(t, u=1.0):
    c, s = math.cos(t), math.sin(t)
    return MatrixSymbol.constant([[c, -s * u], [s * np.conj(u), c]])


def _diag(*Bs):
    return MatrixSymbol.diag([A(B) for B in Bs])


# is_inner

def test_diagonal_blaschke_is_inner():
    assert is_inner(_diag(blaschke(0), blaschke(0.5)))[0]


def test_constant_two_is_not_inner():
    ok, defect = is_inner(MatrixSymbol.constant([[1, 0], [0, 2]]))
    assert not ok and defect == pytest.approx(3)


def test_coanalytic_is_not_inner():
    assert not is_inner(MatrixSymbol.scalar(S.coanalytic(blaschke(0))))[0]


def test_rotated_diagonal_is_inner():
    D = _rotation(0.4, 1j).matmul(_diag(blaschke(0.3), blaschke(-0.5)))
    assert is_inner(D)[0]


# diagonal hull

def test_hull_of_scalar_multiple_of_identity():
    assert diagonal_hull(_diag(blaschke(0.5), blaschke(0.5))).same_zeros(blaschke(0.5))


def test_hull_of_diagonal_is_lcm():
    h = diagonal_hull(_diag(blaschke(0.5), blaschke(0.2)))
    assert h.same_zeros(blaschke(0.5) * blaschke(0.2))


def test_hull_ignores_constant_unitary():
    D = _diag(blaschke(0) ** 2, FiniteBlaschkeProduct(1, ())).matmul(_rotation(0.9))
    assert diagonal_hull(D).same_zeros(blaschke(0) ** 2)


def test_hull_of_kernel_fixture():
    D = kernel_inner_delta(blaschke(0.5), blaschke(0.3), 1, 1, 0, Case.C)
    assert diagonal_hull(D).same_zeros(blaschke(0) * blaschke(0.3) * blaschke(0.5))


@st.composite
def inner_2x2(draw, max_degree=6):
    """U1 diag(B1, B2) U2 with pool zeros and total degree <= max_degree."""
    d1 = draw(st.integers(0, 3))
    d2 = draw(st.integers(0, max_degree - d1))
    d2 = min(d2, 3)
    B1 = FiniteBlaschkeProduct(1, tuple(draw(st.lists(pool_points(), min_size=d1, max_size=d1))))
    B2 = FiniteBlaschkeProduct(1, tuple(draw(st.lists(pool_points(), min_size=d2, max_size=d2))))
    U1 = _rotation(draw(st.floats(0, math.pi)), draw(unimodular()))
    U2 = _rotation(draw(st.floats(0, math.pi)), draw(unimodular()))
    return U1.matmul(_diag(B1, B2)).matmul(U2), B1, B2


@given(inner_2x2())
def test_hull_matches_bruteforce(data):
    D, B1, B2 = data
    h = diagonal_hull(D)
    assert h.same_zeros(diagonal_hull_bruteforce(D))
    # for a rotated diagonal the hull is the lcm of the diagonal entries
    assert h.same_zeros(lcm(B1, B2))


@given(inner_2x2())
def test_hull_times_inverse_is_bounded(data):
    D, _, _ = data
    h = diagonal_hull(D)
    norms = []
    for r in (0.99, 0.999):
        w = r * np.exp(2j * np.pi * np.arange(512) / 512)
        M = np.linalg.inv(D(w)) * h(w)[:, None, None]
        norms.append(np.max(np.linalg.norm(M, ord=2, axis=(-2, -1))))
    assert max(norms) <= 1 + 1e-6


def test_det_zero_multiplicities():
    D = _diag(blaschke(0.5) ** 2, blaschke(0.5) * blaschke(0.2))
    got = sorted((round(w.real, 9), m) for w, m in det_zeros(D))
    assert got == [(0.2, 1), (0.5, 3)]


# coprimality routes

def test_coprime_examples():
    D = _diag(blaschke(0.5), blaschke(0.2))
    assert coprime_diag(blaschke(0.3), D)
    assert not coprime_diag(blaschke(0.5), D)
    ok, w = coprime_point_test(blaschke(0.5), D)
    assert not ok and w == pytest.approx(0.5)
    assert coprime_point_test(blaschke(0.3), D) == (True, None)


@given(inner_2x2(max_degree=4), st.lists(pool_points(), max_size=3))
def test_coprime_routes_agree(data, zs):
    D, _, _ = data
    theta = FiniteBlaschkeProduct(1, tuple(zs))
    hull = diagonal_hull(D)
    det = FiniteBlaschkeProduct(1, tuple(w for w, m in det_zeros(D) for _ in range(m)))
    a = coprime_diag(theta, D)
    assert a == coprime_point_test(theta, D)[0]
    assert a == is_coprime(theta, det) == is_coprime(theta, hull)


# kernel description for 2x2 minus parts

ALPHA = 0.3
BA = blaschke(ALPHA)
CASES = {
    "A simple": (Case.A, BA * blaschke(0.5), blaschke(-0.2)),
    "A double": (Case.A, BA * BA * blaschke(0.5), blaschke(-0.2)),
    "B simple": (Case.B, blaschke(0.5), BA * blaschke(-0.2)),
    "B double": (Case.B, blaschke(0.5), BA * BA * blaschke(-0.2)),
    "C": (Case.C, blaschke(0.5), blaschke(-0.2)),
    "D generic": (Case.D, BA * blaschke(0.5), BA * blaschke(-0.2)),
}


@pytest.mark.parametrize("name", list(CASES))
def test_kernel_delta_each_case(name):
    case, t0, t1 = CASES[name]
    a, b = S.constant(0.7), S.constant(0.4 - 0.1j)
    D = kernel_inner_delta(t0, t1, a, b, ALPHA, case)
    assert is_inner(D.symbol)[0]
    v = kernel_check(kernel_phi_minus(t0, t1, a, b, ALPHA), D)
    assert v.holds
    assert v.details["hankel_rank"] == v.details["det_degree"]


def test_kernel_delta_exceptional_identity():
    # a(alpha) b(alpha) = theta0'(alpha) theta1'(alpha) drops the rank by one
    t0, t1 = BA * blaschke(0.5), BA * blaschke(-0.2)
    r = blaschke(0.5)(ALPHA) * blaschke(-0.2)(ALPHA)
    a, b = S.constant(1.0), S.constant(r)
    D = kernel_inner_delta(t0, t1, a, b, ALPHA, Case.D)
    v = kernel_check(kernel_phi_minus(t0, t1, a, b, ALPHA), D)
    assert v.holds and v.details["det_degree"] == 3


def test_kernel_delta_with_nonconstant_data():
    t0, t1 = blaschke(0.5) * blaschke(0.2), blaschke(-0.4)
    # inners divide the thetas; a and b do not vanish at their zeros
    a = A(blaschke(0.5), 0.6) + 0.1
    b = A(blaschke(-0.4), 0.3j) + 1
    D = kernel_inner_delta(t0, t1, a, b, ALPHA, Case.C)
    assert kernel_check(kernel_phi_minus(t0, t1, a, b, ALPHA), D).holds


def test_wrong_delta_fails():
    t0, t1 = blaschke(0.5), blaschke(0.3)
    P = kernel_phi_minus(t0, t1, 1, 1, 0)
    assert kernel_check(P, _diag(blaschke(0), blaschke(0))).fails


def test_scalar_shift_kernel():
    assert kernel_check(MatrixSymbol.scalar(z()), MatrixSymbol.scalar(z())).holds


@pytest.mark.parametrize("case, t0, t1", [
    (Case.A, blaschke(0.5), blaschke(-0.2)),
    (Case.B, BA, BA),
    (Case.C, BA, blaschke(0.1)),
    (Case.D, BA, blaschke(0.1)),
])
def test_case_hypotheses_enforced(case, t0, t1):
    with pytest.raises(CaseHypothesisViolated):
        kernel_inner_delta(t0, t1, 1, 1, ALPHA, case)


def _case_for(t0, t1, alpha):
    o0, o1 = t0.order_at(alpha, 1e-9), t1.order_at(alpha, 1e-9)
    if o0 and o1:
        return Case.D
    if o0:
        return Case.A
    if o1:
        return Case.B
    return Case.C


def _nonzero():
    return st.complex_numbers(max_magnitude=2).filter(lambda c: abs(c) >= 0.1)


@given(st.lists(pool_points(), min_size=0, max_size=2), st.lists(pool_points(), min_size=0, max_size=2),
       pool_points(), _nonzero(), _nonzero())
def test_kernel_delta_property(z0, z1, alpha, a, b):
    t0 = FiniteBlaschkeProduct(1, tuple(z0))
    t1 = FiniteBlaschkeProduct(1, tuple(z1))
    D = kernel_inner_delta(t0, t1, a, b, alpha, _case_for(t0, t1, alpha))
    assert is_inner(D.symbol)[0]
    assert kernel_check(kernel_phi_minus(t0, t1, a, b, alpha), D).holds
