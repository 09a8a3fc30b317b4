"""Finite sections of block Toeplitz and Hankel operators on vector-valued H^2.

Block ``(i, j)`` of the Toeplitz section is ``Phi_hat(i - j)`` and block
``(i, j)`` of the Hankel section is ``Phi_hat(-(i + j + 1))``.  With these
conventions

    T(Phi Psi) - T(Phi) T(Psi) = H(Phi^*)^* H(Psi)
    H(Phi Psi) = H(Phi) T(Psi)            (Psi analytic)

hold exactly for the infinite matrices, and the tests pin them on sections.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blaschke import radius_grid
from .errors import BufferTooSmall, GrammarOverflow
from .symbol import DEFAULT_SAMPLES, MatrixSymbol, circle_points

DEFAULT_TOL = 1e-8
DEFAULT_N = 64
DEFAULT_BUFFER = 32


@dataclass(frozen=True)
class TruncatedOperator:
    """An ``nN x nN`` section together with a bound on what was dropped.

    ``error_bound`` bounds the operator norm of the difference between
    ``matrix`` and the exact compression ``P_N A P_N``; it is 0 for exact
    sections.  ``decay_rate`` is the largest zero modulus of the generating
    symbol and ``tail_constant`` the sup-norm bound of its coefficients.
    """

    n: int
    N: int
    matrix: np.ndarray
    decay_rate: float = 0.0
    tail_constant: float = 0.0
    error_bound: float = 0.0
    kind: str = "general"

    def __post_init__(self):
        if self.matrix.shape != (self.n * self.N, self.n * self.N):
            raise ValueError("matrix shape does not match n*N")

    def block(self, i: int, j: int) -> np.ndarray:
        n = self.n
        return self.matrix[i * n:(i + 1) * n, j * n:(j + 1) * n]

    def compress(self, N: int) -> "TruncatedOperator":
        k = self.n * N
        return TruncatedOperator(self.n, N, self.matrix[:k, :k], self.decay_rate,
                                 self.tail_constant, self.error_bound, self.kind)

    @property
    def H(self) -> np.ndarray:
        return self.matrix.conj().T

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def _assemble(blocks: np.ndarray, rows: int, cols: int, index) -> np.ndarray:
    """Place ``blocks[index(i, j)]`` at block position ``(i, j)``."""
    n = blocks.shape[1]
    I, J = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    B = blocks[index(I, J)]  # rows x cols x n x n
    return B.transpose(0, 2, 1, 3).reshape(rows * n, cols * n)


def toeplitz_matrix(Phi: MatrixSymbol, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    lo, hi = -(cols - 1), rows - 1
    coeffs = Phi.fourier_range(lo, hi)
    return _assemble(coeffs, rows, cols, lambda i, j: i - j - lo)


def hankel_matrix(Phi: MatrixSymbol, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    top = rows + cols - 1
    coeffs = Phi.fourier_range(-top, -1)  # index -top .. -1
    return _assemble(coeffs, rows, cols, lambda i, j: top - (i + j + 1))


def toeplitz(Phi: MatrixSymbol, N: int) -> TruncatedOperator:
    if N < 1:
        raise ValueError("N must be >= 1")
    return TruncatedOperator(Phi.n, N, toeplitz_matrix(Phi, N), Phi.rho, Phi.sup_bound(),
                             0.0, "toeplitz")


def hankel(Phi: MatrixSymbol, N: int) -> TruncatedOperator:
    if N < 1:
        raise ValueError("N must be >= 1")
    return TruncatedOperator(Phi.n, N, hankel_matrix(Phi, N), Phi.rho, Phi.sup_bound(),
                             0.0, "hankel")


# product symbols by quadrature ---------------------------------------------

def sampled_fourier(values: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Fourier coefficients ``lo..hi`` of a function sampled at ``L`` circle points.

    ``values`` has shape ``(L, ...)``.  Aliasing folds index ``p`` onto ``p mod L``.
    """
    L = values.shape[0]
    if hi - lo + 1 > L:
        raise GrammarOverflow("requested more coefficients than quadrature points")
    c = np.fft.fft(values, axis=0) / L
    return c[np.arange(lo, hi + 1) % L]


def product_symbol_fourier(factors: Sequence[MatrixSymbol], lo: int, hi: int,
                           samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Fourier coefficients of the pointwise product ``F_1 F_2 ... F_k``.

    Raises GrammarOverflow when the aliasing error at the given resolution
    cannot be bounded below ``tol``.
    """
    alias = aliasing_bound(factors, samples, max(abs(lo), abs(hi)))
    if alias > tol:
        raise GrammarOverflow(f"aliasing bound {alias:.3g} exceeds tol at {samples} samples")
    z = circle_points(samples)
    V = factors[0](z)
    for F in factors[1:]:
        V = V @ F(z)
    return sampled_fourier(V, lo, hi)


def aliasing_bound(factors: Sequence[MatrixSymbol], samples: int, reach: int) -> float:
    """Bound on the aliasing error of quadrature coefficients ``|p| <= reach``.

    The product is rational and bounded by ``C(R)`` on ``|z| = R`` and
    ``|z| = 1/R``, so ``|c_q| <= C(R) R^-|q|`` and the folded indices
    ``p + jL`` contribute at most ``2 C(R) R^-(L - reach) / (1 - 1/R)``.
    """
    gap = samples - reach
    if gap <= 0:
        return np.inf
    rho = max(F.rho for F in factors)
    if rho == 0:
        degree = sum(F.max_degree for F in factors)
        return 0.0 if degree < gap else np.inf
    best = np.inf
    for R in radius_grid(rho):
        C = math.prod(F.annulus_bound(R) for F in factors)
        best = min(best, 2 * C * R ** (-gap) / (1 - 1 / R))
    return float(best)


def hankel_inner_dim(Phi: MatrixSymbol, N: int, tol: float = DEFAULT_TOL) -> int:
    """Rows ``K`` of the Hankel section so that ``||H^* H - H_K^* H_K|| <= tol``.

    The dropped rows have norm at most the coanalytic tail beyond ``K``; the
    smallest ``K`` whose squared tail is below ``tol`` is returned.
    """
    K = N
    while True:
        tail = Phi.tail_bound(K, "-")
        if tail ** 2 <= tol or K > 64 * N + 4096:
            return K
        K += max(8, N // 2)


def self_commutator(Phi: MatrixSymbol, N: int = DEFAULT_N, tol: float = DEFAULT_TOL,
                    samples: int = DEFAULT_SAMPLES) -> TruncatedOperator:
    """Compression of ``[T_Phi^*, T_Phi]`` to the first ``N`` blocks.

    Assembled as ``T(Phi^* Phi - Phi Phi^*) + H(Phi^*)^* H(Phi^*) - H(Phi)^* H(Phi)``;
    the Hankel factors use enough rows for the neglected tail to fall below
    ``tol`` and the product symbol coefficients come from quadrature.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    Phis = Phi.adjoint()
    z = circle_points(samples)
    V = Phi(z)
    Vh = np.conj(np.swapaxes(V, -1, -2))
    D = Vh @ V - V @ Vh
    coeffs = sampled_fourier(D, -(N - 1), N - 1)
    alias = 2 * aliasing_bound([Phis, Phi], samples, N)
    if alias > tol:
        raise GrammarOverflow(f"aliasing bound {alias:.3g} exceeds tol")
    T = _assemble(coeffs, N, N, lambda i, j: i - j + N - 1)
    K1 = hankel_inner_dim(Phis, N, tol)
    K2 = hankel_inner_dim(Phi, N, tol)
    Hs = hankel_matrix(Phis, K1, N)
    Hp = hankel_matrix(Phi, K2, N)
    M = T + Hs.conj().T @ Hs - Hp.conj().T @ Hp
    M = 0.5 * (M + M.conj().T)
    err = Phis.tail_bound(K1, "-") ** 2 + Phi.tail_bound(K2, "-") ** 2
    return TruncatedOperator(Phi.n, N, M, Phi.rho, Phi.sup_bound(), err, "self_commutator")


# products of Toeplitz operators ---------------------------------------------

def op_product(factors: Sequence[MatrixSymbol], N: int = DEFAULT_N, buffer: int = DEFAULT_BUFFER,
               tol: float | None = None) -> TruncatedOperator:
    """Compression of ``T(F_1) T(F_2) ... T(F_k)`` to the first ``N`` blocks.

    Intermediate spaces are widened by ``buffer`` blocks per factor.  Writing
    ``P_N A_1 ... A_k P_N`` and inserting ``I = P_M + Q_M`` between factors,
    each leaked term is bounded by the norms of the other factors times the
    coanalytic tail of the leaking factor beyond ``buffer``, giving a
    rigorous bound in operator norm (hence on every entry).
    """
    if not factors:
        raise ValueError("need at least one factor")
    n = factors[0].n
    if any(F.n != n for F in factors):
        raise ValueError("all factors must share the block size")
    if buffer < 0:
        raise ValueError("buffer must be >= 0")
    k = len(factors)
    sizes = [N] + [N + m * buffer for m in range(1, k)] + [N]
    # left-to-right: factor m maps space of size sizes[m+1] into sizes[m]
    out = None
    for m, F in enumerate(factors):
        A = toeplitz_matrix(F, sizes[m], sizes[m + 1])
        out = A if out is None else out @ A
    norms = [F.sup_bound() for F in factors]
    bound = 0.0
    for m in range(k - 1):
        others = math.prod(norms[:m] + norms[m + 1:])
        bound += others * factors[m].tail_bound(buffer, "-")
    if tol is not None and bound > tol:
        raise BufferTooSmall(f"error bound {bound:.3g} exceeds tol {tol:.3g} at buffer={buffer}")
    rho = max(F.rho for F in factors)
    return TruncatedOperator(n, N, out, rho, math.prod(norms), bound, "product")


def combine(terms: Sequence[tuple[complex, TruncatedOperator]]) -> TruncatedOperator:
    """Linear combination of sections sharing ``n`` and ``N``; error bounds add."""
    c0, A0 = terms[0]
    M = c0 * A0.matrix
    err = abs(c0) * A0.error_bound
    for c, A in terms[1:]:
        M = M + c * A.matrix
        err += abs(c) * A.error_bound
    return TruncatedOperator(A0.n, A0.N, M, max(A.decay_rate for _, A in terms),
                             max(A.tail_constant for _, A in terms), err, "combination")


# reproducing kernels ----------------------------------------------------------

@dataclass(frozen=True)
class CauchyKernelVector:
    """Section of ``sqrt(1 - |alpha|^2) / (1 - alpha z)``."""

    alpha: complex
    N: int

    @property
    def vector(self) -> np.ndarray:
        a = complex(self.alpha)
        return math.sqrt(1 - abs(a) ** 2) * a ** np.arange(self.N)

    def __array__(self, dtype=None, copy=None):
        v = self.vector
        return v if dtype is None else v.astype(dtype)


def kernel_vector(alpha: complex, N: int) -> CauchyKernelVector:
    if not abs(alpha) < 1:
        raise ValueError("alpha must lie in the open unit disk")
    if N < 1:
        raise ValueError("N must be >= 1")
    return CauchyKernelVector(complex(alpha), N)


def rank_one_kernel_projector(alpha: complex, N: int) -> np.ndarray:
    """Section of ``1 - T(b_alpha) T(conj b_alpha)``: the projection onto ``delta``.

    Here ``delta = sqrt(1-|alpha|^2)/(1 - conj(alpha) z)`` spans the kernel of
    ``T(conj b_alpha)``.
    """
    d = kernel_vector(np.conj(alpha), N).vector
    return np.outer(d, d.conj())


def numerical_rank(M: np.ndarray, tol: float = 1e-8) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > tol))
