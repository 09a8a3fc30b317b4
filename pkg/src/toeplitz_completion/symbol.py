"""Scalar and matrix symbols built from finite Blaschke products.

A symbol term is either analytic, ``coeff * B(z)``, or coanalytic,
``coeff * conj(B(z))``.  Scalar symbols are finite sums of terms and matrix
symbols are square grids of scalar symbols.  On the unit circle
``conj(B) = 1/B``, so all of these are rational functions with poles off the
circle and their Fourier coefficients are available in closed form.

Convention for the analytic/coanalytic split: constants always live in the
analytic part, so ``Phi_minus(0) = 0``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .blaschke import (
    ZERO_TOL,
    FiniteBlaschkeProduct,
    blaschke,
    cluster_points,
    coefficient_tail_bound,
    divides,
    div,
    lcm,
)
from .errors import GrammarOverflow, InvalidZero, ParseError, ZeroSymbol

COEFF_TOL = 1e-15
DEFAULT_SAMPLES = 4096


class Kind(str, Enum):
    ANALYTIC = "analytic"
    COANALYTIC = "coanalytic"


@dataclass(frozen=True)
class SymbolTerm:
    coeff: complex
    kind: Kind
    inner: FiniteBlaschkeProduct

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "kind", Kind(self.kind))

    def normalized(self) -> "SymbolTerm":
        """Absorb the inner constant into ``coeff``; constants become analytic."""
        c = self.inner.constant
        coeff = self.coeff * (c if self.kind is Kind.ANALYTIC else c.conjugate())
        kind = Kind.ANALYTIC if self.inner.degree == 0 else self.kind
        return SymbolTerm(coeff, kind, self.inner.normalized())

    def __call__(self, z):
        v = self.inner.eval(z)
        return self.coeff * (v if self.kind is Kind.ANALYTIC else np.conj(v))

    def conj(self) -> "SymbolTerm":
        kind = Kind.COANALYTIC if self.kind is Kind.ANALYTIC else Kind.ANALYTIC
        return SymbolTerm(self.coeff.conjugate(), kind, self.inner)


def _zeros_key(B: FiniteBlaschkeProduct) -> tuple:
    return tuple((round(a.real, 9), round(a.imag, 9)) for a in B.zeros)


class ScalarSymbol:
    """Finite sum of analytic and coanalytic Blaschke terms, kept canonical."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[SymbolTerm] = ()):
        merged: dict[tuple, SymbolTerm] = {}
        for t in terms:
            t = t.normalized()
            key = (t.kind, _zeros_key(t.inner))
            if key in merged:
                prev = merged[key]
                merged[key] = SymbolTerm(prev.coeff + t.coeff, t.kind, prev.inner)
            else:
                merged[key] = t
        kept = [t for t in merged.values() if abs(t.coeff) > COEFF_TOL]
        kept.sort(key=lambda t: (t.kind.value, t.inner.degree, _zeros_key(t.inner)))
        self.terms: tuple[SymbolTerm, ...] = tuple(kept)

    # constructors
    @classmethod
    def constant(cls, c: complex) -> "ScalarSymbol":
        return cls([SymbolTerm(c, Kind.ANALYTIC, FiniteBlaschkeProduct.one())])

    @classmethod
    def analytic(cls, B: FiniteBlaschkeProduct, coeff: complex = 1.0) -> "ScalarSymbol":
        return cls([SymbolTerm(coeff, Kind.ANALYTIC, B)])

    @classmethod
    def coanalytic(cls, B: FiniteBlaschkeProduct, coeff: complex = 1.0) -> "ScalarSymbol":
        return cls([SymbolTerm(coeff, Kind.COANALYTIC, B)])

    @classmethod
    def zero(cls) -> "ScalarSymbol":
        return cls()

    # arithmetic
    def __add__(self, other) -> "ScalarSymbol":
        other = as_scalar(other)
        return ScalarSymbol(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "ScalarSymbol":
        return ScalarSymbol(SymbolTerm(-t.coeff, t.kind, t.inner) for t in self.terms)

    def __sub__(self, other) -> "ScalarSymbol":
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> "ScalarSymbol":
        return as_scalar(other) - self

    def __mul__(self, c) -> "ScalarSymbol":
        if isinstance(c, ScalarSymbol):
            return self.multiply(c)
        c = complex(c)
        return ScalarSymbol(SymbolTerm(c * t.coeff, t.kind, t.inner) for t in self.terms)

    __rmul__ = __mul__

    def multiply(self, other: "ScalarSymbol") -> "ScalarSymbol":
        """Exact product, defined when every pairwise term product stays in the grammar.

        Analytic times analytic is analytic; ``B * conj(C)`` is analytic when
        ``C`` divides ``B`` and coanalytic when ``B`` divides ``C``.
        """
        out = []
        for s in self.terms:
            for t in other.terms:
                out.append(_term_product(s, t))
        return ScalarSymbol(out)

    def conj(self) -> "ScalarSymbol":
        return ScalarSymbol(t.conj() for t in self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_analytic(self) -> bool:
        return all(t.kind is Kind.ANALYTIC for t in self.terms)

    def is_coanalytic(self) -> bool:
        return all(t.kind is Kind.COANALYTIC or t.inner.degree == 0 for t in self.terms)

    @property
    def rho(self) -> float:
        return max((t.inner.rho for t in self.terms), default=0.0)

    @property
    def degree(self) -> int:
        """Total Blaschke degree over all terms."""
        return sum(t.inner.degree for t in self.terms)

    def inners(self, kind: Kind | None = None) -> list[FiniteBlaschkeProduct]:
        return [t.inner for t in self.terms if kind is None or t.kind is kind]

    def __call__(self, z):
        """Boundary values; coanalytic terms are only meaningful for ``|z| = 1``."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for t in self.terms:
            out = out + t(z)
        return out if out.ndim else complex(out)

    def value_in_disk(self, z):
        if not self.is_analytic():
            raise ValueError("disk evaluation needs an analytic symbol")
        return self(z)

    def fourier(self, index: int) -> complex:
        return complex(self.fourier_range(index, index)[0])

    def fourier_range(self, lo: int, hi: int) -> np.ndarray:
        """Fourier coefficients at ``lo, lo+1, ..., hi`` (inclusive)."""
        idx = np.arange(lo, hi + 1)
        out = np.zeros(idx.size, dtype=complex)
        top = max(hi, -lo, 0)
        for t in self.terms:
            c = t.inner.taylor(top)
            if t.kind is Kind.ANALYTIC:
                mask = idx >= 0
                out[mask] += t.coeff * c[idx[mask]]
            else:
                mask = idx <= 0
                out[mask] += t.coeff * np.conj(c[-idx[mask]])
        return out

    def tail_bound(self, s: int, side: str) -> float:
        """Bound on ``sum_{p > s} |hat f(p)|`` (side='+') or ``|hat f(-p)|`` (side='-')."""
        want = Kind.ANALYTIC if side == "+" else Kind.COANALYTIC
        return float(sum(abs(t.coeff) * coefficient_tail_bound(t.inner, s)
                         for t in self.terms if t.kind is want and t.inner.degree > 0))

    def sup_bound(self) -> float:
        """``sum |coeff|``: an upper bound for the sup norm (inner parts are unimodular)."""
        return float(sum(abs(t.coeff) for t in self.terms))

    def annulus_bound(self, R: float) -> float:
        """Bound for the rational extension on both circles ``|z| = R`` and ``|z| = 1/R``."""
        return float(sum(abs(t.coeff) * t.inner.max_modulus(R) for t in self.terms))

    def analytic_part(self) -> "ScalarSymbol":
        """Analytic terms plus the constant parts of the coanalytic terms."""
        out = [t for t in self.terms if t.kind is Kind.ANALYTIC]
        for t in self.terms:
            if t.kind is Kind.COANALYTIC:
                out.append(SymbolTerm(t.coeff * np.conj(t.inner.eval(0.0)), Kind.ANALYTIC,
                                      FiniteBlaschkeProduct.one()))
        return ScalarSymbol(out)

    def minus_part(self) -> "ScalarSymbol":
        """The H^2 function ``f_-`` with ``f = conj(f_-) + f_+`` and ``f_-(0) = 0``."""
        out = []
        for t in self.terms:
            if t.kind is Kind.COANALYTIC:
                c = t.coeff.conjugate()
                out.append(SymbolTerm(c, Kind.ANALYTIC, t.inner))
                out.append(SymbolTerm(-c * t.inner.eval(0.0), Kind.ANALYTIC,
                                      FiniteBlaschkeProduct.one()))
        return ScalarSymbol(out)

    def isclose(self, other: "ScalarSymbol", tol: float = 1e-9, span: int = 16) -> bool:
        d = (self - other).fourier_range(-span, span)
        return bool(np.max(np.abs(d), initial=0.0) <= tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarSymbol):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple((t.kind, _zeros_key(t.inner), round(t.coeff.real, 9),
                           round(t.coeff.imag, 9)) for t in self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "ScalarSymbol(0)"
        parts = []
        for t in self.terms:
            zs = ",".join(f"{a:.4g}" for a in t.inner.zeros)
            f = "B" if t.kind is Kind.ANALYTIC else "conj(B)"
            parts.append(f"({t.coeff:.6g})*{f}[{zs}]" if t.inner.degree else f"({t.coeff:.6g})")
        return "ScalarSymbol(" + " + ".join(parts) + ")"


def _term_product(s: SymbolTerm, t: SymbolTerm) -> SymbolTerm:
    s, t = s.normalized(), t.normalized()
    c = s.coeff * t.coeff
    if s.inner.degree == 0:
        return SymbolTerm(c, t.kind, t.inner)
    if t.inner.degree == 0:
        return SymbolTerm(c, s.kind, s.inner)
    if s.kind is t.kind:
        return SymbolTerm(c, s.kind, s.inner * t.inner)
    a, b = (s, t) if s.kind is Kind.ANALYTIC else (t, s)
    # a.inner * conj(b.inner)
    if divides(b.inner, a.inner):
        return SymbolTerm(c, Kind.ANALYTIC, div(a.inner, b.inner))
    if divides(a.inner, b.inner):
        return SymbolTerm(c, Kind.COANALYTIC, div(b.inner, a.inner))
    raise GrammarOverflow("mixed product B*conj(C) with neither inner dividing the other")


def as_scalar(x) -> ScalarSymbol:
    if isinstance(x, ScalarSymbol):
        return x
    if isinstance(x, FiniteBlaschkeProduct):
        return ScalarSymbol.analytic(x)
    return ScalarSymbol.constant(complex(x))


def z_symbol() -> ScalarSymbol:
    return ScalarSymbol.analytic(blaschke(0))


def zbar_symbol() -> ScalarSymbol:
    return ScalarSymbol.coanalytic(blaschke(0))


def circle_points(samples: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(samples) / samples)


class MatrixSymbol:
    """Square ``n x n`` grid of scalar symbols."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [[as_scalar(e) for e in row] for row in entries]
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("matrix symbol must be square with n >= 1")
        self.n = n
        self.entries: tuple[tuple[ScalarSymbol, ...], ...] = tuple(tuple(r) for r in rows)

    @classmethod
    def scalar(cls, s) -> "MatrixSymbol":
        return cls([[s]])

    @classmethod
    def diag(cls, items: Sequence) -> "MatrixSymbol":
        n = len(items)
        return cls([[items[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def constant(cls, M) -> "MatrixSymbol":
        M = np.atleast_2d(np.asarray(M, dtype=complex))
        return cls([[complex(v) for v in row] for row in M])

    def __getitem__(self, ij) -> ScalarSymbol:
        i, j = ij
        return self.entries[i][j]

    def map(self, fn) -> "MatrixSymbol":
        return MatrixSymbol([[fn(e) for e in row] for row in self.entries])

    def __add__(self, other) -> "MatrixSymbol":
        if not isinstance(other, MatrixSymbol):
            other = MatrixSymbol.constant(np.asarray(other) * np.eye(self.n))
        return MatrixSymbol([[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "MatrixSymbol":
        return self.map(lambda e: -e)

    def __sub__(self, other) -> "MatrixSymbol":
        if not isinstance(other, MatrixSymbol):
            other = MatrixSymbol.constant(np.asarray(other) * np.eye(self.n))
        return self + (-other)

    def __mul__(self, c) -> "MatrixSymbol":
        if isinstance(c, MatrixSymbol):
            return self.matmul(c)
        return self.map(lambda e: e * complex(c))

    __rmul__ = __mul__

    def matmul(self, other: "MatrixSymbol") -> "MatrixSymbol":
        n = self.n
        return MatrixSymbol([[sum((self.entries[i][k].multiply(other.entries[k][j])
                                   for k in range(n)), ScalarSymbol.zero())
                              for j in range(n)] for i in range(n)])

    def adjoint(self) -> "MatrixSymbol":
        """Pointwise conjugate transpose ``Phi^*``."""
        n = self.n
        return MatrixSymbol([[self.entries[j][i].conj() for j in range(n)] for i in range(n)])

    def is_analytic(self) -> bool:
        return all(e.is_analytic() for row in self.entries for e in row)

    @property
    def rho(self) -> float:
        return max(e.rho for row in self.entries for e in row)

    @property
    def max_degree(self) -> int:
        return max(e.degree for row in self.entries for e in row)

    def fourier(self, index: int) -> np.ndarray:
        return self.fourier_range(index, index)[0]

    def fourier_range(self, lo: int, hi: int) -> np.ndarray:
        """Array of shape ``(hi - lo + 1, n, n)`` of matrix Fourier coefficients."""
        n = self.n
        out = np.zeros((hi - lo + 1, n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                out[:, i, j] = self.entries[i][j].fourier_range(lo, hi)
        return out

    def __call__(self, z) -> np.ndarray:
        """Values at boundary points; returns shape ``z.shape + (n, n)``."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (self.n, self.n), dtype=complex)
        for i in range(self.n):
            for j in range(self.n):
                out[..., i, j] = self.entries[i][j](z)
        return out

    def eval_boundary(self, t) -> np.ndarray:
        return self(np.exp(1j * np.asarray(t, dtype=float)))

    def samples(self, count: int = DEFAULT_SAMPLES) -> np.ndarray:
        return self(circle_points(count))

    def tail_bound(self, s: int, side: str) -> float:
        """Bound on ``sum_{p > s} ||hat Phi(+-p)||_2`` using entrywise absolute sums."""
        return float(sum(e.tail_bound(s, side) for row in self.entries for e in row))

    def sup_bound(self) -> float:
        """Frobenius-type upper bound for ``||Phi||_inf``."""
        return float(np.sqrt(sum(e.sup_bound() ** 2 for row in self.entries for e in row)))

    def annulus_bound(self, R: float) -> float:
        """Spectral-norm bound (``n * max entry``) on the circles ``|z| = R, 1/R``."""
        return float(self.n * max(e.annulus_bound(R) for row in self.entries for e in row))

    def isclose(self, other: "MatrixSymbol", tol: float = 1e-9, span: int = 16) -> bool:
        return self.n == other.n and all(
            a.isclose(b, tol, span) for r1, r2 in zip(self.entries, other.entries)
            for a, b in zip(r1, r2))

    def __repr__(self) -> str:
        return f"MatrixSymbol(n={self.n}, entries={[list(r) for r in self.entries]!r})"


# operations ---------------------------------------------------------------

def fourier(s: ScalarSymbol, index: int) -> complex:
    return s.fourier(index)


def split(Phi: MatrixSymbol) -> tuple[MatrixSymbol, MatrixSymbol]:
    """``(Phi_plus, Phi_minus)`` with ``Phi = Phi_minus^* + Phi_plus`` and ``Phi_minus(0) = 0``."""
    n = Phi.n
    plus = MatrixSymbol([[Phi[i, j].analytic_part() for j in range(n)] for i in range(n)])
    minus = MatrixSymbol([[Phi[j, i].minus_part() for j in range(n)] for i in range(n)])
    return plus, minus


def eval_boundary(Phi: MatrixSymbol, t) -> np.ndarray:
    return Phi.eval_boundary(t)


def is_normal_symbol(Phi: MatrixSymbol, samples: int = 256, tol: float = 1e-9) -> tuple[bool, float]:
    """Sampled check of ``Phi^* Phi = Phi Phi^*`` on the circle; returns (ok, max defect)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    V = Phi.samples(samples)
    Vh = np.conj(np.swapaxes(V, -1, -2))
    defect = np.linalg.norm(Vh @ V - V @ Vh, ord=2, axis=(-2, -1)).max()
    return bool(defect <= tol), float(defect)


def sup_norm(Phi: MatrixSymbol, samples: int = DEFAULT_SAMPLES) -> float:
    """Max of the spectral norm over sampled boundary points (a lower estimate of the ess-sup)."""
    if samples < 16:
        raise ValueError("samples must be >= 16")
    V = Phi.samples(samples)
    return float(np.linalg.norm(V, ord=2, axis=(-2, -1)).max())


# coprime factorization -----------------------------------------------------

def _scaled_taylor(f, w: complex, r: float, count: int = 64) -> np.ndarray:
    """Coefficients ``c_k r^k`` of ``f`` around ``w`` from samples on ``|z - w| = r``."""
    pts = w + r * np.exp(2j * np.pi * np.arange(count) / count)
    return np.fft.fft(f(pts)) / count


def order_of_zero(f, w: complex, r: float, tol: float = 1e-9, max_order: int = 24) -> int:
    """Order of vanishing of an analytic ``f`` at ``w``, from scaled Cauchy coefficients."""
    c = _scaled_taylor(f, w, r, max(64, 2 * max_order))
    scale = np.max(np.abs(c))
    if scale == 0:
        return max_order
    for k in range(max_order):
        if abs(c[k]) > tol * scale:
            return k
    return max_order


def _local_radius(w: complex, others: Iterable[complex]) -> float:
    r = min(0.05, 0.5 * (1 - abs(w)))
    for o in others:
        d = abs(o - w)
        if d > ZERO_TOL:
            r = min(r, 0.4 * d)
    return r


class AnalyticRational:
    """Analytic rational function ``num / den`` (ascending polynomial coefficients)."""

    def __init__(self, num, den):
        self.num = np.atleast_1d(np.asarray(num, dtype=complex))
        self.den = np.atleast_1d(np.asarray(den, dtype=complex))

    def __call__(self, z):
        from numpy.polynomial import polynomial as P
        return P.polyval(z, self.num) / P.polyval(z, self.den)

    def taylor(self, max_index: int) -> np.ndarray:
        # solve den * c = num term by term
        c = np.zeros(max_index + 1, dtype=complex)
        d0 = self.den[0]
        for k in range(max_index + 1):
            acc = self.num[k] if k < self.num.size else 0
            for j in range(1, min(k, self.den.size - 1) + 1):
                acc -= self.den[j] * c[k - j]
            c[k] = acc / d0
        return c


@dataclass(frozen=True)
class CoprimeFactorization:
    """``f_minus = inner * conj(outer)`` on the circle with ``inner`` minimal."""

    inner: FiniteBlaschkeProduct
    outer: object  # ScalarSymbol when representable, else AnalyticRational
    notes: tuple[str, ...] = field(default_factory=tuple)

    def outer_value(self, z):
        return self.outer(z)


def coprime_factorization(fminus: ScalarSymbol) -> CoprimeFactorization:
    """Factor an analytic symbol as ``theta * conj(b)`` with ``theta`` a minimal finite Blaschke product.

    On the circle ``conj(fminus) = N / L`` with ``L`` the lcm of the term inners
    and ``N`` analytic; ``theta`` keeps the zeros of ``L`` that ``N`` does not
    cancel, and ``b = N * theta / L``.
    """
    if not fminus.is_analytic():
        raise ValueError("coprime_factorization expects an analytic symbol")
    if fminus.is_zero():
        raise ZeroSymbol("cannot factor the zero symbol")
    L = FiniteBlaschkeProduct.one()
    for t in fminus.terms:
        L = lcm(L, t.inner)
    # N = sum conj(d_k) * L / C_k
    N = ScalarSymbol(SymbolTerm(t.coeff.conjugate(), Kind.ANALYTIC, div(L, t.inner))
                     for t in fminus.terms)
    keep: list[complex] = []
    cancelled: list[complex] = []
    centers = cluster_points(L.zeros, ZERO_TOL)
    for w, m in centers:
        r = _local_radius(w, [c for c, _ in centers])
        ordN = 0 if N.is_zero() else order_of_zero(N, w, r, max_order=m + 1)
        kept = m - min(m, ordN)
        keep += [w] * kept
        cancelled += [w] * (m - kept)
    theta = FiniteBlaschkeProduct(1.0, tuple(keep))
    D = FiniteBlaschkeProduct(1.0, tuple(cancelled))
    if D.degree == 0:
        return CoprimeFactorization(theta, N)
    num_N = _symbol_polynomials(N)
    dnum, dden = D.polynomials()
    from numpy.polynomial import polynomial as P
    # b = N / D = (nN / dN) * (dden / dnum); exact division of nN by dnum
    q, rem = P.polydiv(P.polymul(num_N[0], dden), dnum)
    notes = ("pole cancellation: outer factor is not a finite Blaschke sum",)
    return CoprimeFactorization(theta, AnalyticRational(q, num_N[1]), notes)


def _symbol_polynomials(s: ScalarSymbol) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator polynomials of an analytic symbol."""
    from numpy.polynomial import polynomial as P
    den = np.array([1.0], dtype=complex)
    for t in s.terms:
        _, d = t.inner.polynomials()
        den = P.polymul(den, d)
    num = np.array([0.0], dtype=complex)
    for t in s.terms:
        n_t, d_t = t.inner.polynomials()
        rest = np.array([1.0], dtype=complex)
        for u in s.terms:
            if u is not t:
                rest = P.polymul(rest, u.inner.polynomials()[1])
        num = P.polyadd(num, t.coeff * P.polymul(n_t, rest))
    return num, den


# JSON grammar --------------------------------------------------------------

def _cpx(v, where: str) -> complex:
    try:
        re, im = v
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: expected [re, im], got {v!r}") from exc


def term_from_json(obj: dict, where: str = "term") -> SymbolTerm:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - {"coeff", "kind", "constant", "zeros"}
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
    try:
        kind = Kind(obj.get("kind", "analytic"))
    except ValueError as exc:
        raise ParseError(f"{where}.kind: {obj.get('kind')!r} is not analytic|coanalytic") from exc
    coeff = _cpx(obj.get("coeff", [1, 0]), f"{where}.coeff")
    const = _cpx(obj.get("constant", [1, 0]), f"{where}.constant")
    zeros = []
    for k, zv in enumerate(obj.get("zeros", [])):
        a = _cpx(zv, f"{where}.zeros[{k}]")
        if abs(a) >= 1 - 1e-10:
            raise InvalidZero(f"{where}.zeros[{k}]: |{a}| >= 1")
        zeros.append(a)
    try:
        inner = FiniteBlaschkeProduct(const, tuple(zeros))
    except ValueError as exc:
        raise ParseError(f"{where}.constant: {exc}") from exc
    return SymbolTerm(coeff, kind, inner)


def term_to_json(t: SymbolTerm) -> dict:
    return {
        "coeff": [t.coeff.real, t.coeff.imag],
        "kind": t.kind.value,
        "constant": [t.inner.constant.real, t.inner.constant.imag],
        "zeros": [[a.real, a.imag] for a in t.inner.zeros],
    }


def matrix_from_json(obj: dict) -> MatrixSymbol:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ParseError("symbol: expected an object with 'n' and 'entries'")
    n = obj["n"]
    rows = obj["entries"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"n: expected a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"entries: expected a {n}x{n} grid")
    entries = []
    for i, row in enumerate(rows):
        out_row = []
        for j, cell in enumerate(row):
            if not isinstance(cell, list):
                raise ParseError(f"entries[{i}][{j}]: expected a list of terms")
            out_row.append(ScalarSymbol(term_from_json(t, f"entries[{i}][{j}][{k}]")
                                        for k, t in enumerate(cell)))
        entries.append(out_row)
    return MatrixSymbol(entries)


def matrix_to_json(Phi: MatrixSymbol) -> dict:
    return {"n": Phi.n,
            "entries": [[[term_to_json(t) for t in e.terms] for e in row] for row in Phi.entries]}


def scalar_from_json(obj) -> ScalarSymbol:
    """A scalar symbol is either a bare term list or a 1x1 matrix symbol."""
    if isinstance(obj, list):
        return ScalarSymbol(term_from_json(t, f"terms[{k}]") for k, t in enumerate(obj))
    Phi = matrix_from_json(obj)
    if Phi.n != 1:
        raise ParseError("expected a scalar (1x1) symbol")
    return Phi[0, 0]


def load_matrix(path) -> MatrixSymbol:
    return matrix_from_json(_load_json(path))


def _load_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def load_scalar(path) -> ScalarSymbol:
    return scalar_from_json(_load_json(path))
