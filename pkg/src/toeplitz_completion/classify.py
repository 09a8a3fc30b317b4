"""Operator-level verdicts on finite sections, plus symbol-level certificate checks.

A ``Holds`` verdict means no counterexample was found at the tested sections;
it is evidence, not proof.  A ``Fails`` verdict carries a finite witness that
can be re-checked by plain matrix arithmetic, and since compressions of a
positive operator are positive, a negative eigenvalue of a section is
conclusive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DegenerateDeterminant
from .hardy_ops import (
    DEFAULT_TOL,
    TruncatedOperator,
    op_product,
    sampled_fourier,
    self_commutator,
)
from .symbol import MatrixSymbol, circle_points, split, sup_norm

DEFAULT_LADDER = (16, 32, 64)


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    status: Status
    defect: float = 0.0
    atN: int | None = None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def to_json(self) -> dict:
        out = {"status": self.status.value, "defect": self.defect, "atN": self.atN}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, Enum):
        return obj.value
    return obj


def _matrix(H) -> np.ndarray:
    return H.matrix if isinstance(H, TruncatedOperator) else np.asarray(H, dtype=complex)


def psd_check(H, tol: float = DEFAULT_TOL, error_bound: float = 0.0) -> Verdict:
    """Positivity of a Hermitian section.

    ``Fails`` iff ``lambda_min < -(tol + error_bound)``; a negative eigenvalue
    hidden inside the truncation error is ``Inconclusive``.
    """
    M = _matrix(H)
    M = 0.5 * (M + M.conj().T)
    w, V = np.linalg.eigh(M)
    lam = float(w[0])  # eigh sorts ascending; ties resolve to the lowest index
    atN = H.N if isinstance(H, TruncatedOperator) else M.shape[0]
    details = {"lambda_min": lam}
    if error_bound:
        details["error_bound"] = error_bound
    if lam < -(tol + error_bound):
        return Verdict(Status.FAILS, -lam, atN,
                       {"eigenvalue": lam, "vector": V[:, 0]}, details)
    if lam < -tol:
        return Verdict(Status.INCONCLUSIVE, -lam, atN, None, details)
    return Verdict(Status.HOLDS, max(0.0, -lam), atN, None, details)


def recheck_witness(H, witness: dict) -> float:
    """Rayleigh quotient of the witness vector, for independent confirmation."""
    M = _matrix(H)
    v = np.asarray(witness["vector"], dtype=complex)
    return float(np.real(v.conj() @ M @ v) / np.real(v.conj() @ v))


def hyponormal(Phi: MatrixSymbol, Ns: Sequence[int] = DEFAULT_LADDER,
               tol: float = DEFAULT_TOL) -> Verdict:
    worst = 0.0
    last = None
    unsure = None
    for N in Ns:
        C = self_commutator(Phi, N, tol=min(tol, 1e-10))
        v = psd_check(C, tol, C.error_bound)
        if v.fails:
            return v
        if v.status is Status.INCONCLUSIVE and unsure is None:
            unsure = v
        worst = max(worst, v.defect)
        last = v
    if unsure is not None:
        return unsure
    return Verdict(Status.HOLDS, worst, Ns[-1], None, last.details if last else {})


def normal_operator(Phi: MatrixSymbol, Ns: Sequence[int] = DEFAULT_LADDER,
                    tol: float = DEFAULT_TOL) -> Verdict:
    """``Holds`` iff the compressed self-commutator has norm ``<= tol`` at every N."""
    worst = 0.0
    for N in Ns:
        C = self_commutator(Phi, N, tol=min(tol, 1e-10))
        w, V = np.linalg.eigh(C.matrix)
        k = int(np.argmax(np.abs(w)))
        norm = float(abs(w[k]))
        if norm > tol + C.error_bound:
            return Verdict(Status.FAILS, norm, N, {"eigenvalue": float(w[k]), "vector": V[:, k]})
        if norm > tol:
            return Verdict(Status.INCONCLUSIVE, norm, N, None, {"error_bound": C.error_bound})
        worst = max(worst, norm)
    return Verdict(Status.HOLDS, worst, Ns[-1])


def _quasinormal_matrix(Phi: MatrixSymbol, N: int, buffer: int):
    S = Phi.adjoint()
    a = op_product([S, S, Phi], N, buffer)
    b = op_product([S, Phi, S], N, buffer)
    return a.matrix - b.matrix, a.error_bound + b.error_bound


def adaptive_buffer(Phi: MatrixSymbol, N: int, tol: float = 1e-14, cap: int = 1024) -> int:
    """Buffer from ``2N`` upward, doubled until the symbol tails beyond it are below ``tol``."""
    b = 2 * N
    while b < cap and max(Phi.tail_bound(b, "+"), Phi.tail_bound(b, "-")) > tol:
        b *= 2
    return min(b, cap)


def quasinormal_defect(Phi: MatrixSymbol, N: int = 32, buffer: int | None = None,
                       tol: float = DEFAULT_TOL) -> Verdict:
    """Norm of the section of ``T^* [T^*, T]``; quasinormality means it vanishes."""
    if buffer is None:
        buffer = adaptive_buffer(Phi, N)
    M, err = _quasinormal_matrix(Phi, N, buffer)
    norm = float(np.linalg.norm(M, 2))
    details = {"error_bound": err}
    if norm > tol + err:
        u, s, vh = np.linalg.svd(M)
        return Verdict(Status.FAILS, norm, N,
                       {"singular_value": float(s[0]), "vector": vh[0].conj()}, details)
    if norm > tol:
        return Verdict(Status.INCONCLUSIVE, norm, N, None, details)
    return Verdict(Status.HOLDS, norm, N, None, details)


def quasinormal_after_shift(Phi: MatrixSymbol, beta: complex, N: int = 32, buffer: int | None = None,
                            tol: float = DEFAULT_TOL) -> Verdict:
    """Quasinormality of ``T_Phi - beta``."""
    v = quasinormal_defect(Phi - complex(beta), N, buffer, tol)
    v.details["beta"] = complex(beta)
    return v


def k_hyponormal_matrix(Phi: MatrixSymbol, k: int, N: int, buffer: int | None = None):
    """Block matrix with ``(i, j)`` block the section of ``[T^{*j}, T^i]``."""
    if buffer is None:
        buffer = adaptive_buffer(Phi, N)
    S = Phi.adjoint()
    nN = Phi.n * N
    M = np.zeros((k * nN, k * nN), dtype=complex)
    err = 0.0
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            a = op_product([S] * j + [Phi] * i, N, buffer)
            b = op_product([Phi] * i + [S] * j, N, buffer)
            M[(i - 1) * nN:i * nN, (j - 1) * nN:j * nN] = a.matrix - b.matrix
            err += a.error_bound + b.error_bound
    return 0.5 * (M + M.conj().T), err


def k_hyponormal(Phi: MatrixSymbol, k: int = 2, N: int = 32, buffer: int | None = None,
                 tol: float = DEFAULT_TOL) -> Verdict:
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    M, err = k_hyponormal_matrix(Phi, k, N, buffer)
    v = psd_check(M, tol, err)
    v.atN = N
    v.details["error_bound"] = err
    v.details["k"] = k
    return v


def commutator_rank(Phi: MatrixSymbol, N: int = 32, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank of the compressed self-commutator, taken as the max over N and N+8."""
    ranks = []
    for M in (N, N + 8):
        w = np.linalg.eigvalsh(self_commutator(Phi, M, tol=min(tol, 1e-10)).matrix)
        ranks.append(int(np.sum(np.abs(w) > tol)))
    return max(ranks)


def _negative_window(Phi: MatrixSymbol, tol: float, cap: int = 512) -> int:
    s = 8
    while s < cap and Phi.tail_bound(s, "-") > tol:
        s *= 2
    return min(s, cap)


def ghr_certificate(Phi: MatrixSymbol, K: MatrixSymbol, samples: int = 4096,
                    tol: float = DEFAULT_TOL) -> Verdict:
    """Check ``||K||_inf <= 1`` and that ``Phi - K Phi^*`` has no negative Fourier modes."""
    knorm = sup_norm(K, samples)
    z = circle_points(samples)
    V = Phi(z)
    G = V - K(z) @ np.conj(np.swapaxes(V, -1, -2))
    M = _negative_window(Phi, tol)
    neg = sampled_fourier(G, -M, -1)
    norms = np.linalg.norm(neg, ord=2, axis=(-2, -1))
    worst = int(np.argmax(norms))
    coeff_defect = float(norms[worst])
    details = {"K_sup_norm": knorm, "max_negative_coefficient": coeff_defect, "window": M}
    if knorm > 1 + tol:
        return Verdict(Status.FAILS, knorm - 1, None, {"K_sup_norm": knorm}, details)
    if coeff_defect > tol:
        return Verdict(Status.FAILS, coeff_defect, None,
                       {"index": -M + worst, "coefficient": neg[worst]}, details)
    return Verdict(Status.HOLDS, max(coeff_defect, knorm - 1, 0.0), None, None, details)


def normality_unitary_test(Phi: MatrixSymbol, max_index: int | None = None,
                           tol: float = DEFAULT_TOL):
    """Search for a constant unitary ``U`` with ``Phi_+ - Phi_+(0) = (Phi_- - Phi_-(0)) U``.

    Matches Taylor coefficients ``m = 1..max_index`` in least squares.
    Returns ``(Verdict, U)``.
    """
    plus, minus = split(Phi)
    d = np.linalg.det(plus(circle_points(16)))
    if np.max(np.abs(d)) < 1e-12:
        raise DegenerateDeterminant("det Phi_+ vanishes at every sampled boundary point")
    if max_index is None:
        max_index = 2 * Phi.max_degree + 4
    A = minus.fourier_range(1, max_index).reshape(-1, Phi.n)
    B = plus.fourier_range(1, max_index).reshape(-1, Phi.n)
    U, *_ = np.linalg.lstsq(A, B, rcond=None)
    residual = float(np.linalg.norm(A @ U - B))
    unitarity = float(np.linalg.norm(U.conj().T @ U - np.eye(Phi.n), 2))
    defect = max(residual, unitarity)
    details = {"residual": residual, "unitarity_defect": unitarity}
    if residual <= tol and unitarity <= tol:
        return Verdict(Status.HOLDS, defect, None, None, details), U
    return Verdict(Status.FAILS, defect, None, {"U": U, **details}, details), None
