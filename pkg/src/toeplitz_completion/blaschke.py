"""Finite Blaschke products on the unit disk.

A finite Blaschke product is ``c * prod_k (z - a_k) / (1 - conj(a_k) z)`` with
``|c| = 1`` and every ``|a_k| < 1``.  These are exactly the rational inner
functions, and every symbol in this package is assembled from them.

Zeros are stored as a sorted tuple so that equal multisets compare equal.
Two zeros are identified when they lie within ``ZERO_TOL`` of each other.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import InvalidZero, NotDivisible, PoleEvaluation

ZERO_TOL = 1e-9
UNIMODULAR_TOL = 1e-12
POLE_TOL = 1e-12


def _sort_key(a: complex) -> tuple[float, float]:
    return (round(a.real, 12), round(a.imag, 12))


@dataclass(frozen=True)
class BlaschkeFactor:
    """The disk automorphism ``b_alpha(z) = (z - alpha) / (1 - conj(alpha) z)``."""

    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        if not abs(a) < 1:
            raise InvalidZero(f"Blaschke zero {a} is not inside the open unit disk")
        object.__setattr__(self, "alpha", a)

    def __call__(self, z):
        a = self.alpha
        z = np.asarray(z, dtype=complex)
        return (z - a) / (1 - a.conjugate() * z)

    def taylor(self, max_index: int) -> np.ndarray:
        a = self.alpha
        c = np.zeros(max_index + 1, dtype=complex)
        c[0] = -a
        if max_index >= 1:
            c[1:] = (1 - abs(a) ** 2) * a.conjugate() ** np.arange(max_index)
        return c

    def as_product(self) -> "FiniteBlaschkeProduct":
        return FiniteBlaschkeProduct(1.0, (self.alpha,))


@dataclass(frozen=True)
class FiniteBlaschkeProduct:
    constant: complex = 1.0
    zeros: tuple[complex, ...] = field(default_factory=tuple)

    def __post_init__(self):
        c = complex(self.constant)
        if abs(abs(c) - 1) > UNIMODULAR_TOL:
            raise ValueError(f"constant {c} is not unimodular")
        zs = tuple(sorted((complex(a) for a in self.zeros), key=_sort_key))
        for a in zs:
            if not abs(a) < 1:
                raise InvalidZero(f"Blaschke zero {a} is not inside the open unit disk")
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "zeros", zs)

    # construction helpers
    @classmethod
    def from_zeros(cls, zeros: Iterable[complex], constant: complex = 1.0):
        return cls(constant, tuple(zeros))

    @classmethod
    def one(cls) -> "FiniteBlaschkeProduct":
        return cls(1.0, ())

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def rho(self) -> float:
        """Largest zero modulus; 0 for monomials and constants."""
        return max((abs(a) for a in self.zeros), default=0.0)

    def is_monomial(self) -> bool:
        return all(abs(a) <= ZERO_TOL for a in self.zeros)

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        z_arr = np.asarray(z, dtype=complex)
        out = np.full(z_arr.shape, self.constant, dtype=complex)
        for a in self.zeros:
            if a != 0:
                pole = 1 / a.conjugate()
                if np.any(np.abs(z_arr - pole) < POLE_TOL):
                    raise PoleEvaluation(f"evaluation at pole {pole}")
            out = out * (z_arr - a) / (1 - a.conjugate() * z_arr)
        if np.ndim(z) == 0:
            return complex(out)
        return out

    def __mul__(self, other: "FiniteBlaschkeProduct") -> "FiniteBlaschkeProduct":
        return mul(self, other)

    def __truediv__(self, other: "FiniteBlaschkeProduct") -> "FiniteBlaschkeProduct":
        return div(self, other)

    def __pow__(self, k: int) -> "FiniteBlaschkeProduct":
        if k < 0:
            raise ValueError("negative powers are not inner")
        return FiniteBlaschkeProduct(self.constant**k, self.zeros * k)

    def normalized(self) -> "FiniteBlaschkeProduct":
        return FiniteBlaschkeProduct(1.0, self.zeros)

    def scaled(self, unimodular: complex) -> "FiniteBlaschkeProduct":
        return FiniteBlaschkeProduct(self.constant * unimodular, self.zeros)

    def same_zeros(self, other: "FiniteBlaschkeProduct", tol: float = ZERO_TOL) -> bool:
        return self.degree == other.degree and _multiset_difference(self.zeros, other.zeros, tol) == []

    def isclose(self, other: "FiniteBlaschkeProduct", tol: float = ZERO_TOL) -> bool:
        return self.same_zeros(other, tol) and abs(self.constant - other.constant) <= tol

    def taylor(self, max_index: int) -> np.ndarray:
        return fourier_analytic(self, max_index)

    def polynomials(self) -> tuple[np.ndarray, np.ndarray]:
        """Ascending coefficients ``(num, den)`` with ``B = num / den``."""
        num = np.array([self.constant], dtype=complex)
        den = np.array([1.0], dtype=complex)
        for a in self.zeros:
            num = P.polymul(num, [-a, 1.0])
            den = P.polymul(den, [1.0, -a.conjugate()])
        return num, den

    def order_at(self, w: complex, tol: float = ZERO_TOL) -> int:
        return sum(1 for a in self.zeros if abs(a - w) <= tol)

    def max_modulus(self, radius: float) -> float:
        """Upper bound for ``|B|`` on the circle ``|z| = radius`` (radius >= 1)."""
        m = 1.0
        for a in self.zeros:
            r = abs(a)
            if r * radius >= 1:
                return np.inf
            m *= (radius + r) / (1 - r * radius)
        return m

    def tail_bound(self, s: int) -> float:
        """Rigorous bound on ``sum_{p > s} |c_p|`` for the Taylor coefficients."""
        return coefficient_tail_bound(self, s)

    def __repr__(self) -> str:
        zs = ", ".join(f"{a:.6g}" for a in self.zeros)
        return f"FiniteBlaschkeProduct(constant={self.constant:.6g}, zeros=({zs}))"


def blaschke(alpha: complex) -> FiniteBlaschkeProduct:
    """Single factor ``b_alpha`` as a product."""
    return FiniteBlaschkeProduct(1.0, (complex(alpha),))


def constant(c: complex = 1.0) -> FiniteBlaschkeProduct:
    return FiniteBlaschkeProduct(c, ())


def eval(B: FiniteBlaschkeProduct, z):  # noqa: A001 - mirrors the operation name
    return B.eval(z)


def _multiset_difference(a: Sequence[complex], b: Sequence[complex], tol: float):
    """Return ``a - b`` as a list, or None when ``b`` is not contained in ``a``."""
    rest = list(a)
    for w in b:
        idx = next((i for i, v in enumerate(rest) if abs(v - w) <= tol), None)
        if idx is None:
            return None
        rest.pop(idx)
    return rest


def _multiset_intersection(a: Sequence[complex], b: Sequence[complex], tol: float):
    rest = list(b)
    common = []
    for v in a:
        idx = next((i for i, w in enumerate(rest) if abs(v - w) <= tol), None)
        if idx is not None:
            common.append(v)
            rest.pop(idx)
    return common


def mul(B1: FiniteBlaschkeProduct, B2: FiniteBlaschkeProduct) -> FiniteBlaschkeProduct:
    return FiniteBlaschkeProduct(B1.constant * B2.constant, B1.zeros + B2.zeros)


def div(B1: FiniteBlaschkeProduct, B2: FiniteBlaschkeProduct, tol: float = ZERO_TOL) -> FiniteBlaschkeProduct:
    rest = _multiset_difference(B1.zeros, B2.zeros, tol)
    if rest is None:
        raise NotDivisible(f"{B2!r} does not divide {B1!r}")
    return FiniteBlaschkeProduct(B1.constant / B2.constant, tuple(rest))


def divides(B2: FiniteBlaschkeProduct, B1: FiniteBlaschkeProduct, tol: float = ZERO_TOL) -> bool:
    return _multiset_difference(B1.zeros, B2.zeros, tol) is not None


def gcd(B1: FiniteBlaschkeProduct, B2: FiniteBlaschkeProduct, tol: float = ZERO_TOL) -> FiniteBlaschkeProduct:
    return FiniteBlaschkeProduct(1.0, tuple(_multiset_intersection(B1.zeros, B2.zeros, tol)))


def lcm(B1: FiniteBlaschkeProduct, B2: FiniteBlaschkeProduct, tol: float = ZERO_TOL) -> FiniteBlaschkeProduct:
    extra = _multiset_difference(B2.zeros, _multiset_intersection(B2.zeros, B1.zeros, tol), tol)
    return FiniteBlaschkeProduct(1.0, B1.zeros + tuple(extra))


def is_coprime(B1: FiniteBlaschkeProduct, B2: FiniteBlaschkeProduct, tol: float = ZERO_TOL) -> bool:
    return gcd(B1, B2, tol).degree == 0


def fourier_analytic(B: FiniteBlaschkeProduct, max_index: int) -> np.ndarray:
    """Taylor coefficients ``c_0 .. c_max_index`` of ``B`` at the origin.

    Each factor contributes ``-a + (1 - |a|^2) sum_{n>=1} conj(a)^(n-1) z^n``;
    the factor series are convolved and truncated.
    """
    if max_index < 0:
        raise ValueError("max_index must be >= 0")
    c = np.zeros(max_index + 1, dtype=complex)
    c[0] = B.constant
    for a in B.zeros:
        c = np.convolve(c, BlaschkeFactor(a).taylor(max_index))[: max_index + 1]
    return c


def coefficient_tail_bound(B: FiniteBlaschkeProduct, s: int) -> float:
    """Bound ``sum_{p > s} |c_p|`` via Cauchy estimates on circles ``|z| = R > 1``.

    ``|c_p| <= M(R) R^-p`` where ``M(R)`` bounds ``|B|`` on ``|z| = R``; the
    radius is optimized over a grid inside ``(1, 1/rho)``.
    """
    if s < 0:
        return np.inf
    if B.is_monomial():
        return 0.0 if s >= B.degree else 1.0
    best = np.inf
    for R in radius_grid(B.rho):
        M = B.max_modulus(R)
        bound = M * R ** (-(s + 1)) / (1 - 1 / R)
        best = min(best, bound)
    return float(best)


def radius_grid(rho: float, points: int = 49, max_log: float = 30.0) -> np.ndarray:
    """Radii in ``(1, 1/rho)``, geometrically spaced and capped at ``e^max_log``."""
    top = min(-math.log(rho), max_log) if rho > 0 else max_log
    return np.exp(np.linspace(0.02, 0.98, points) * top)


def cluster_points(points: Iterable[complex], tol: float) -> list[tuple[complex, int]]:
    """Greedy clustering of nearby complex points into ``(center, count)``."""
    pts = list(points)
    clusters: list[list[complex]] = []
    for p in pts:
        for cl in clusters:
            if abs(np.mean(cl) - p) <= tol:
                cl.append(p)
                break
        else:
            clusters.append([p])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]


def phase(z: complex) -> float:
    """Argument reduced to ``[0, 2*pi)``."""
    t = cmath.phase(z)
    return t + 2 * np.pi if t < 0 else t
