"""Inner matrix functions with finite-Blaschke entries and their diagonal hulls.

``diagonal_hull(Delta)`` returns the smallest finite Blaschke product ``delta``
such that ``delta * Delta^{-1}`` is analytic in the disk, so that
``D(Delta) = delta I``.  The zeros of ``det Delta`` are found as polynomial
roots of the determinant numerator; multiplicities and adjugate orders come
from scaled Cauchy coefficients on small circles around each zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.polynomial import polynomial as P

from .blaschke import FiniteBlaschkeProduct, blaschke, cluster_points, div, is_coprime, lcm
from .classify import Status, Verdict
from .errors import CaseHypothesisViolated, DegenerateDeterminant
from .hardy_ops import hankel_matrix, numerical_rank
from .symbol import MatrixSymbol, ScalarSymbol, circle_points, order_of_zero

CLUSTER_TOL = 1e-7
SINGULAR_TOL = 1e-9


def is_inner(Theta: MatrixSymbol, samples: int = 256, tol: float = 1e-9) -> tuple[bool, float]:
    """Sampled check that ``Theta`` is analytic with unitary boundary values."""
    if not Theta.is_analytic():
        return False, np.inf
    V = Theta.samples(samples)
    G = np.conj(np.swapaxes(V, -1, -2)) @ V - np.eye(Theta.n)
    defect = float(np.linalg.norm(G, ord=2, axis=(-2, -1)).max())
    return defect <= tol, defect


@dataclass(frozen=True)
class InnerMatrixFunction:
    symbol: MatrixSymbol

    def __post_init__(self):
        if not self.symbol.is_analytic():
            raise ValueError("inner matrix functions must have analytic entries")

    @property
    def n(self) -> int:
        return self.symbol.n

    def __call__(self, z):
        return self.symbol(z)

    def check(self, samples: int = 256, tol: float = 1e-9) -> None:
        ok, defect = is_inner(self.symbol, samples, tol)
        if not ok:
            raise ValueError(f"not inner: unitarity defect {defect:.3g}")


def _as_symbol(D) -> MatrixSymbol:
    return D.symbol if isinstance(D, InnerMatrixFunction) else D


def _row_denominators(Delta: MatrixSymbol) -> list[FiniteBlaschkeProduct]:
    """Per row, the lcm of every term's inner part: its poles clear that row."""
    out = []
    for i in range(Delta.n):
        L = FiniteBlaschkeProduct(1.0, ())
        for j in range(Delta.n):
            for B in Delta[i, j].inners():
                L = lcm(L, B)
        out.append(L)
    return out


def _det_numerator(Delta: MatrixSymbol) -> np.ndarray:
    """Coefficients of ``det Delta * prod_i den_i``, a polynomial for analytic ``Delta``.

    Row-wise lcm denominators keep the degree low; the extra roots all lie
    outside the closed disk.  Coefficients come from FFT samples on the circle.
    """
    if not Delta.is_analytic():
        raise ValueError("determinant zeros need analytic entries")
    pole_zeros = [a for L in _row_denominators(Delta) for a in L.zeros]
    degree = len(pole_zeros)  # row i times den_i is polynomial of degree <= deg den_i
    M = 1 << max(4, int(np.ceil(np.log2(4 * (degree + 1)))))
    z = circle_points(M)
    q = np.ones(M, dtype=complex)
    for a in pole_zeros:
        q *= 1 - np.conj(a) * z
    c = np.fft.fft(np.linalg.det(Delta(z)) * q) / M
    return c[:degree + 1]


def _anchors(Delta: MatrixSymbol) -> list[complex]:
    """Zeros of the entries' inner parts: exact centers for clustered root estimates."""
    pts = {complex(w) for i in range(Delta.n) for j in range(Delta.n)
           for B in Delta[i, j].inners() for w in B.zeros}
    return sorted(pts, key=lambda w: (w.real, w.imag))


def det_zeros(Delta, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Zeros of ``det Delta`` in the open disk as ``(center, multiplicity)``."""
    Delta = _as_symbol(Delta)
    num = _det_numerator(Delta)
    num = np.trim_zeros(num, "b") if np.any(num) else num
    scale = np.max(np.abs(num)) if num.size else 0.0
    if scale == 0 or np.all(np.abs(num) <= 1e-13 * max(scale, 1.0)):
        raise DegenerateDeterminant("det Delta vanishes identically")
    # drop negligible leading coefficients before root finding
    while num.size > 1 and abs(num[-1]) <= 1e-14 * scale:
        num = num[:-1]
    roots = P.polyroots(num) if num.size > 1 else np.array([])
    inside = [complex(r) for r in roots if abs(r) < 1 - 1e-9]
    return _confirmed_clusters(inside, _det_function(Delta), tol, _anchors(Delta))


def _confirmed_clusters(points, f, tol: float, anchors=(), radius: float = 2e-2
                        ) -> list[tuple[complex, int]]:
    """Group root estimates and confirm each group's order at its mean.

    Multiple roots spread like ``eps^(1/m)`` but their mean stays accurate, so a
    loose grouping is tried first; a group near an exact anchor is centered
    there.  Groups whose confirmed order is short of their size are split again
    with a tighter radius.
    """
    out: list[tuple[complex, int]] = []
    groups = _groups(points, radius)
    centers = [_center(g, anchors, radius) for g in groups]
    for g, c in zip(groups, centers):
        r = _radius(c, [o for o in centers if o is not c] + [x for x in points if abs(x - c) > radius])
        r = min(r, max(10 * radius, 1e-6))
        k = order_of_zero(f, c, r, tol=tol, max_order=len(g) + 2)
        if k >= len(g) or len(g) == 1 or radius <= 1e-7:
            if k > 0:
                out.append((complex(c), k))
        else:
            out += _confirmed_clusters(g, f, tol, anchors, radius / 10)
    return out


def _center(group, anchors, radius: float) -> complex:
    mean = complex(np.mean(group))
    near = [a for a in anchors if abs(a - mean) <= radius]
    return min(near, key=lambda a: abs(a - mean)) if near else mean


def _groups(points, radius: float) -> list[list[complex]]:
    """Single-linkage grouping."""
    groups: list[list[complex]] = []
    for p in points:
        hit = [g for g in groups if any(abs(p - q) <= radius for q in g)]
        merged = [p] + [q for g in hit for q in g]
        groups = [g for g in groups if not any(g is h for h in hit)] + [merged]
    return groups


def _det_function(Delta: MatrixSymbol):
    return lambda z: np.linalg.det(Delta(np.asarray(z)))


def _radius(w: complex, others) -> float:
    r = min(0.05, 0.5 * (1 - abs(w)))
    for o in others:
        d = abs(o - w)
        if d > 1e-6:
            r = min(r, 0.4 * d)
    return r


def _adjugate_entry(Delta: MatrixSymbol, i: int, j: int):
    n = Delta.n

    def f(z):
        M = Delta(np.asarray(z))
        if n == 1:
            return np.ones(M.shape[:-2], dtype=complex)
        minor = np.delete(np.delete(M, j, axis=-2), i, axis=-1)
        return (-1) ** (i + j) * np.linalg.det(minor)
    return f


def diagonal_hull(Delta) -> FiniteBlaschkeProduct:
    """Minimal ``delta`` with ``delta * Delta^{-1}`` analytic, so ``D(Delta) = delta I``.

    At each zero ``w`` of ``det Delta`` the multiplicity is
    ``max_ij max(0, ord_w det - ord_w adj_ij)``.
    """
    Delta = _as_symbol(Delta)
    zeros = det_zeros(Delta)
    out: list[complex] = []
    centers = [w for w, _ in zeros]
    for w, k in zeros:
        r = _radius(w, centers)
        worst = 0
        for i in range(Delta.n):
            for j in range(Delta.n):
                o = order_of_zero(_adjugate_entry(Delta, i, j), w, r, tol=CLUSTER_TOL,
                                  max_order=k + 1)
                worst = max(worst, k - min(k, o))
        out += [w] * worst
    return FiniteBlaschkeProduct(1.0, tuple(out))


def diagonal_hull_bruteforce(Delta, eps=(1e-3, 1e-4)) -> FiniteBlaschkeProduct:
    """Oracle: smallest sub-multiset ``delta`` of the determinant zeros making ``delta Delta^-1`` bounded.

    Boundedness is probed by sampling on shrinking circles around each zero;
    a pole shows up as growth by ``eps_0 / eps_1`` or more.
    """
    Delta = _as_symbol(Delta)
    zeros = det_zeros(Delta)
    choices = [range(m + 1) for _, m in zeros]
    best = None
    t = np.exp(2j * np.pi * np.arange(16) / 16)
    for mult in itertools.product(*choices):
        if best is not None and sum(mult) >= best[0]:
            continue
        delta = FiniteBlaschkeProduct(1.0, tuple(w for (w, _), m in zip(zeros, mult) for _ in range(m)))
        ok = True
        for w, _ in zeros:
            norms = []
            for e in eps:
                pts = w + e * t
                M = np.linalg.inv(Delta(pts)) * delta(pts)[:, None, None]
                norms.append(np.max(np.linalg.norm(M, ord=2, axis=(-2, -1))))
            if norms[1] > 3 * norms[0]:
                ok = False
                break
        if ok:
            best = (sum(mult), delta)
    return best[1]


def coprime_diag(theta: FiniteBlaschkeProduct, Delta) -> bool:
    return is_coprime(theta, diagonal_hull(Delta))


def coprime_point_test(theta: FiniteBlaschkeProduct, A) -> tuple[bool, complex | None]:
    """``A(w)`` invertible at every zero ``w`` of ``theta``; returns the first failing zero."""
    A = _as_symbol(A)
    for w, _ in cluster_points(theta.zeros, 1e-9):
        s = np.linalg.svd(A(np.array([w]))[0], compute_uv=False)
        if s[-1] <= SINGULAR_TOL:
            return False, w
    return True, None


# kernels of Hankel operators with 2x2 minus parts -----------------------

class Case(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


def _order_at(theta: FiniteBlaschkeProduct, alpha: complex) -> int:
    return theta.order_at(alpha, 1e-9)


def _value(f, alpha: complex) -> complex:
    if isinstance(f, ScalarSymbol):
        return complex(f.value_in_disk(alpha))
    if callable(f):
        return complex(f(alpha))
    return complex(f)


def kernel_inner_delta(theta0: FiniteBlaschkeProduct, theta1: FiniteBlaschkeProduct, a, b,
                  alpha: complex, case) -> InnerMatrixFunction:
    """Inner ``Delta`` with ``ker H(Phi_-^*) = Delta H^2`` for
    ``Phi_- = [[b_alpha, theta1 conj(b)], [theta0 conj(a), b_alpha]]``.

    ``case`` names the branch; its pointwise hypotheses are validated.
    """
    case = Case(case)
    alpha = complex(alpha)
    ba = blaschke(alpha)
    S = ScalarSymbol.analytic
    o0, o1 = _order_at(theta0, alpha), _order_at(theta1, alpha)
    if case is Case.A:
        if o0 < 1:
            raise CaseHypothesisViolated("case A needs theta0(alpha) = 0")
        if o1 != 0:
            raise CaseHypothesisViolated("case A needs theta1(alpha) != 0")
        n = o0
        t0p = div(theta0, ba ** n)
        if n == 1:
            return _inner([[S(ba * theta1), 0], [0, S(theta0)]])
        gamma = -_value(a, alpha) / theta1(alpha)
        nu = 1 / np.sqrt(abs(gamma) ** 2 + 1)
        return _inner([[S(ba * theta1, nu), S(theta1, nu * gamma)],
                       [S(theta0, -nu * gamma.conjugate()), S(ba ** (n - 1) * t0p, nu)]])
    if case is Case.B:
        if o1 < 1:
            raise CaseHypothesisViolated("case B needs theta1(alpha) = 0")
        if o0 != 0:
            raise CaseHypothesisViolated("case B needs theta0(alpha) != 0")
        n = o1
        t1p = div(theta1, ba ** n)
        if n == 1:
            return _inner([[S(theta1), 0], [0, S(ba * theta0)]])
        gamma = -_value(b, alpha) / theta0(alpha)
        nu = 1 / np.sqrt(abs(gamma) ** 2 + 1)
        return _inner([[S(ba ** (n - 1) * t1p, nu), S(theta1, -nu * gamma.conjugate())],
                       [S(theta0, nu * gamma), S(ba * theta0, nu)]])
    if case is Case.C:
        if o0 != 0 or o1 != 0:
            raise CaseHypothesisViolated("case C needs theta0(alpha) != 0 and theta1(alpha) != 0")
        return _inner([[S(ba * theta1), 0], [0, S(ba * theta0)]])
    # case D
    if o0 < 1 or o1 < 1:
        raise CaseHypothesisViolated("case D needs theta0(alpha) = theta1(alpha) = 0")
    t0p, t1p = div(theta0, ba), div(theta1, ba)
    lhs = _value(a, alpha) * _value(b, alpha)
    rhs = t0p(alpha) * t1p(alpha)
    if abs(lhs - rhs) > 1e-10:
        return _inner([[S(theta1), 0], [0, S(theta0)]])
    gamma = -_value(a, alpha) / t1p(alpha)
    nu = 1 / np.sqrt(abs(gamma) ** 2 + 1)
    return _inner([[S(theta1, nu), S(t1p, nu * gamma)],
                   [S(theta0, -nu * gamma.conjugate()), S(t0p, nu)]])


def _inner(rows) -> InnerMatrixFunction:
    return InnerMatrixFunction(MatrixSymbol(rows))


def kernel_phi_minus(theta0: FiniteBlaschkeProduct, theta1: FiniteBlaschkeProduct,
                      a: ScalarSymbol, b: ScalarSymbol, alpha: complex) -> MatrixSymbol:
    """Build ``[[b_alpha, theta1 conj(b)], [theta0 conj(a), b_alpha]]`` in the symbol grammar.

    Needs every inner of ``a`` (resp. ``b``) to divide ``theta0`` (resp. ``theta1``).
    """
    ba = ScalarSymbol.analytic(blaschke(alpha))
    a, b = _scalar(a), _scalar(b)
    return MatrixSymbol([[ba, ScalarSymbol.analytic(theta1).multiply(b.conj())],
                         [ScalarSymbol.analytic(theta0).multiply(a.conj()), ba]])


def _scalar(x) -> ScalarSymbol:
    return x if isinstance(x, ScalarSymbol) else ScalarSymbol.constant(complex(x))


def kernel_check(Phi_minus: MatrixSymbol, Delta, N: int = 32, tol: float = 1e-7,
                 rank_tol: float = 1e-8) -> Verdict:
    """Check ``ker H(Phi_minus^*) = Delta H^2`` on sections.

    (i) ``H(Phi_minus^*)`` annihilates ``Delta z^k e_j`` for ``k = 0..3``;
    (ii) the numerical rank of the section equals ``deg det Delta``.
    """
    Delta = _as_symbol(Delta)
    G = Phi_minus.adjoint()
    n = G.n
    cols = 4 * N
    H = hankel_matrix(G, N, cols)
    tail = G.tail_bound(cols, "-") * Delta.sup_bound()
    coeffs = Delta.fourier_range(0, cols - 1)  # (cols, n, n)
    worst = 0.0
    for k in range(4):
        for j in range(n):
            v = np.zeros((cols, n), dtype=complex)
            v[k:] = coeffs[:cols - k, :, j]
            worst = max(worst, float(np.linalg.norm(H @ v.reshape(-1))))
    rank = numerical_rank(hankel_matrix(G, N), rank_tol)
    degree = sum(m for _, m in det_zeros(Delta))
    details = {"annihilation_residual": worst, "tail_bound": tail,
               "hankel_rank": rank, "det_degree": degree}
    if worst > tol + tail:
        return Verdict(Status.FAILS, worst, N, {"annihilation_residual": worst}, details)
    if rank != degree:
        return Verdict(Status.FAILS, float(abs(rank - degree)), N,
                       {"hankel_rank": rank, "det_degree": degree}, details)
    return Verdict(Status.HOLDS, worst, N, None, details)
