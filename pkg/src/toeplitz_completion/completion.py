"""Subnormal completions of ``[[T_{conj b_alpha}, ?], [?, T_{conj b_beta}]]``.

Constructors for the normal and quasinormal solution families, a decision
procedure that recognizes a candidate pair ``(phi, psi)``, and a harness that
cross-checks a verdict against the finite-section operator tests.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .blaschke import FiniteBlaschkeProduct, blaschke, divides, div
from .classify import (
    commutator_rank,
    hyponormal,
    k_hyponormal,
    normal_operator,
    quasinormal_after_shift,
    _jsonable,
)
from .errors import GrammarParse, InvalidFamilyParameters, ToeplitzCompletionError
from .symbol import MatrixSymbol, ScalarSymbol, coprime_factorization

ALPHA_TOL = 1e-10
MATCH_TOL = 1e-9
TWO_PI = 2 * math.pi


class Tag(str, Enum):
    FAMILY1 = "Family1"
    FAMILY2 = "Family2"
    QUASINORMAL = "QuasinormalFamily"


def _wrap(t: float) -> float:
    t = math.fmod(t, TWO_PI)
    return t + TWO_PI if t < 0 else (0.0 if t >= TWO_PI else t)


def _angle_close(a: float, b: float, tol: float = MATCH_TOL) -> bool:
    d = _wrap(a - b)
    return min(d, TWO_PI - d) <= tol


@dataclass(frozen=True)
class CompletionFamily:
    alpha: complex
    tag: Tag
    mu: complex = 0.0
    theta_angle: float = 0.0
    omega_angle: float = 0.0
    zeta: complex = 0.0

    def __post_init__(self):
        try:
            tag = Tag(self.tag)
            alpha, mu, zeta = complex(self.alpha), complex(self.mu), complex(self.zeta)
            th, om = float(self.theta_angle), float(self.omega_angle)
        except (TypeError, ValueError) as exc:
            raise InvalidFamilyParameters(str(exc)) from exc
        if not abs(alpha) < 1:
            raise InvalidFamilyParameters(f"|alpha| = {abs(alpha)} must be < 1")
        if not all(map(math.isfinite, (th, om, mu.real, mu.imag, zeta.real, zeta.imag))):
            raise InvalidFamilyParameters("parameters must be finite")
        if tag is Tag.FAMILY2 and mu == 0:
            raise InvalidFamilyParameters("Family2 requires mu != 0")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "mu", mu if tag is Tag.FAMILY2 else 0j)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "theta_angle", _wrap(th))
        object.__setattr__(self, "omega_angle", _wrap(om) if tag is not Tag.FAMILY2 else 0.0)

    @property
    def psi_phase(self) -> float:
        """Angle kappa with ``psi = e^{i kappa} phi``."""
        if self.tag is Tag.FAMILY1:
            return self.omega_angle
        if self.tag is Tag.FAMILY2:
            return _wrap(math.pi - 2 * cmath.phase(self.mu))
        return _wrap(-2 * self.theta_angle)

    @property
    def unimodular_mu(self) -> bool:
        return self.tag is Tag.FAMILY2 and abs(abs(self.mu) - 1) <= MATCH_TOL

    def phi(self) -> ScalarSymbol:
        b = blaschke(self.alpha)
        e = cmath.exp(1j * self.theta_angle)
        if self.tag is Tag.FAMILY1:
            return ScalarSymbol.analytic(b, e) + self.zeta
        if self.tag is Tag.FAMILY2:
            lam = e * math.sqrt(1 + abs(self.mu) ** 2)
            return ScalarSymbol.coanalytic(b, self.mu) + ScalarSymbol.analytic(b, lam) + self.zeta
        w = cmath.exp(1j * self.omega_angle)
        return ScalarSymbol.coanalytic(b, e) + ScalarSymbol.analytic(b, 2 * w) + self.zeta

    def psi(self) -> ScalarSymbol:
        return self.phi() * cmath.exp(1j * self.psi_phase)

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "alpha": _jsonable(self.alpha),
            "mu": _jsonable(self.mu),
            "thetaAngle": self.theta_angle,
            "omegaAngle": self.omega_angle,
            "zeta": _jsonable(self.zeta),
        }


def build_completion(f: CompletionFamily) -> MatrixSymbol:
    """The 2x2 symbol ``[[conj b_alpha, phi], [psi, conj b_alpha]]``."""
    d = ScalarSymbol.coanalytic(blaschke(f.alpha))
    return MatrixSymbol([[d, f.phi()], [f.psi(), d]])


class CompletionStatus(str, Enum):
    NORMAL = "Normal"
    QUASINORMAL_AFTER_SHIFT = "QuasinormalAfterShift"
    EXCEPTIONAL = "ExceptionalCaseUnresolved"
    NOT_SUBNORMAL = "NotSubnormal"


@dataclass
class CompletionVerdict:
    status: CompletionStatus
    matched_family: CompletionFamily | None = None
    beta: complex | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.beta is not None:
            out["beta"] = _jsonable(complex(self.beta))
        out["matchedFamily"] = None if self.matched_family is None else self.matched_family.to_json()
        out["diagnostics"] = list(self.diagnostics)
        return out


# candidate recognition ------------------------------------------------------

@dataclass
class _Fit:
    mu: complex
    lam: complex
    zeta: complex
    residual: float


def _fit_span(phi: ScalarSymbol, alpha: complex, window: int) -> _Fit:
    """Least-squares fit ``phi = mu conj(b_alpha) + lam b_alpha + zeta`` by Fourier coefficients.

    ``b_alpha`` has coefficient ``1 - |alpha|^2`` at index 1 and ``-alpha`` at 0.
    """
    s = 1 - abs(alpha) ** 2
    mu = phi.fourier(-1) / s
    lam = phi.fourier(1) / s
    zeta = phi.fourier(0) + lam * alpha + mu * alpha.conjugate()
    b = blaschke(alpha)
    model = ScalarSymbol.coanalytic(b, mu) + ScalarSymbol.analytic(b, lam) + zeta
    diff = (phi - model).fourier_range(-window, window)
    tail = max(phi.tail_bound(window, "+"), phi.tail_bound(window, "-"))
    return _Fit(mu, lam, zeta, float(np.max(np.abs(diff))) + tail)


def _window(*fs: ScalarSymbol, tol: float = 1e-12, cap: int = 4096) -> int:
    """Coefficient window beyond which every tail is below ``tol``."""
    w = 16
    while w < cap and max(f.tail_bound(w, side) for f in fs for side in "+-") > tol:
        w *= 2
    return w


def _psi_phase(phi: ScalarSymbol, psi: ScalarSymbol, window: int) -> float | None:
    """``kappa`` with ``psi = e^{i kappa} phi``, or None."""
    p = phi.fourier_range(-window, window)
    q = psi.fourier_range(-window, window)
    k = int(np.argmax(np.abs(p)))
    if abs(p[k]) <= MATCH_TOL:
        return None
    r = q[k] / p[k]
    if abs(abs(r) - 1) > MATCH_TOL or np.max(np.abs(q - r * p)) > MATCH_TOL:
        return None
    return _wrap(cmath.phase(r))


def _value(f, w: complex) -> complex:
    return complex(f.value_in_disk(w)) if isinstance(f, ScalarSymbol) else complex(f(w))


@dataclass
class _Exceptional:
    matched: bool
    deg0: int = 0
    deg1: int = 0
    note: str = ""


def _exceptional_detector(phi: ScalarSymbol, psi: ScalarSymbol, alpha: complex) -> _Exceptional:
    """Test ``(ab)(alpha) = (theta0' theta1')(alpha) != 0`` for the coprime factorizations
    ``phi_- = b_alpha theta0' conj(a)`` and ``psi_- = b_alpha theta1' conj(b)``."""
    pm, qm = phi.minus_part(), psi.minus_part()
    if pm.is_zero() or qm.is_zero():
        return _Exceptional(False, note="a coanalytic part vanishes")
    f0, f1 = coprime_factorization(pm), coprime_factorization(qm)
    ba = blaschke(alpha)
    if not (divides(ba, f0.inner) and divides(ba, f1.inner)):
        return _Exceptional(False, f0.inner.degree, f1.inner.degree,
                            "b_alpha does not divide both inner parts")
    t0, t1 = div(f0.inner, ba), div(f1.inner, ba)
    lhs = _value(f0.outer, alpha) * _value(f1.outer, alpha)
    rhs = t0(alpha) * t1(alpha)
    hit = abs(lhs - rhs) <= MATCH_TOL * max(1.0, abs(rhs)) and abs(rhs) > MATCH_TOL
    note = f"(ab)(alpha) = {lhs:.12g}, (theta0' theta1')(alpha) = {rhs:.12g}"
    return _Exceptional(hit, f0.inner.degree, f1.inner.degree, note)


def classify_candidate(alpha: complex, beta: complex, phi, psi) -> CompletionVerdict:
    """Decide which class the completion with off-diagonal symbols ``(phi, psi)`` falls in."""
    alpha, beta = complex(alpha), complex(beta)
    if abs(alpha - beta) > ALPHA_TOL:
        return CompletionVerdict(CompletionStatus.NOT_SUBNORMAL, diagnostics=["alpha != beta"])
    try:
        phi = phi if isinstance(phi, ScalarSymbol) else ScalarSymbol.constant(complex(phi))
        psi = psi if isinstance(psi, ScalarSymbol) else ScalarSymbol.constant(complex(psi))
    except (TypeError, ValueError) as exc:
        raise GrammarParse(f"cannot canonicalize candidate: {exc}") from exc

    diags: list[str] = []
    window = _window(phi, psi)
    fit = _fit_span(phi, alpha, window)
    kappa = _psi_phase(phi, psi, window)
    in_span = fit.residual <= MATCH_TOL
    if not in_span:
        diags.append("phi is outside span{conj b_alpha, b_alpha, 1}")
    if kappa is None:
        diags.append("psi is not a unimodular multiple of phi")

    if in_span and kappa is not None:
        theta = _wrap(cmath.phase(fit.lam)) if abs(fit.lam) > MATCH_TOL else 0.0
        if abs(fit.mu) <= MATCH_TOL and abs(abs(fit.lam) - 1) <= MATCH_TOL:
            f = CompletionFamily(alpha, Tag.FAMILY1, 0, theta, kappa, fit.zeta)
            return CompletionVerdict(CompletionStatus.NORMAL, f, diagnostics=diags)
        if abs(fit.mu) > MATCH_TOL and abs(abs(fit.lam) - math.sqrt(1 + abs(fit.mu) ** 2)) <= MATCH_TOL:
            f = CompletionFamily(alpha, Tag.FAMILY2, fit.mu, theta, 0.0, fit.zeta)
            if _angle_close(kappa, f.psi_phase):
                if f.unimodular_mu:
                    diags.append("|mu| = 1: Family2 member, normal without the rational refinement")
                return CompletionVerdict(CompletionStatus.NORMAL, f, diagnostics=diags)
            diags.append("Family2 moduli match but the psi phase is not pi - 2 arg mu")

    exc = _exceptional_detector(phi, psi, alpha)
    diags.append(exc.note)
    if not exc.matched:
        return CompletionVerdict(CompletionStatus.NOT_SUBNORMAL, diagnostics=diags)
    diags.append("exceptional case detected")
    if exc.deg0 != exc.deg1:
        diags.append(f"pole counts differ ({exc.deg0} vs {exc.deg1}); rational refinement not applicable")
        if max(exc.deg0, exc.deg1) >= 2:
            diags.append("one symbol has at least two poles; the other must have exactly one")
        return CompletionVerdict(CompletionStatus.EXCEPTIONAL, diagnostics=diags)

    diags.append(f"rational refinement applies (equal pole counts {exc.deg0})")
    if in_span and kappa is not None and abs(abs(fit.mu) - 1) <= MATCH_TOL:
        if abs(abs(fit.lam) - 2) <= MATCH_TOL:
            theta = _wrap(cmath.phase(fit.mu))
            omega = _wrap(cmath.phase(fit.lam))
            if _angle_close(kappa, -2 * theta):
                f = CompletionFamily(alpha, Tag.QUASINORMAL, 0, theta, omega, fit.zeta)
                beta_shift = -cmath.exp(-1j * theta) * fit.zeta
                return CompletionVerdict(CompletionStatus.QUASINORMAL_AFTER_SHIFT, f,
                                         beta=beta_shift, diagnostics=diags)
            diags.append("quasinormal moduli match but the psi phase is not -2 theta")
    diags.append("no solution family matches")
    return CompletionVerdict(CompletionStatus.NOT_SUBNORMAL, diagnostics=diags)


# cross-validation -----------------------------------------------------------

@dataclass
class VerificationReport:
    verdict: CompletionVerdict
    checks: dict = field(default_factory=dict)
    consistent: bool = True

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.to_json(),
            "consistent": self.consistent,
            "checks": {k: (v.to_json() if hasattr(v, "to_json") else _jsonable(v))
                       for k, v in self.checks.items()},
        }


def _diagonal_alpha(Phi: MatrixSymbol) -> complex:
    d = Phi[0, 0]
    if len(d.terms) != 1 or d.terms[0].inner.degree != 1:
        raise ToeplitzCompletionError("diagonal entries must be conj(b_alpha)")
    return d.terms[0].inner.zeros[0]


def verify_completion(Phi: MatrixSymbol, verdict: CompletionVerdict, N: int = 32,
                      tol: float = 1e-8) -> VerificationReport:
    """Run the operator tests that the verdict predicts and record each outcome."""
    if Phi.n != 2:
        raise ToeplitzCompletionError("completion symbols are 2x2")
    rep = VerificationReport(verdict)
    ladder = (N // 2, N, 2 * N)
    st = verdict.status
    if st is CompletionStatus.NORMAL:
        v = normal_operator(Phi, ladder, tol)
        rep.checks["normal_operator"] = v
        rep.consistent = v.holds
    elif st is CompletionStatus.QUASINORMAL_AFTER_SHIFT:
        q = quasinormal_after_shift(Phi, verdict.beta or 0, N=N, tol=tol)
        r = commutator_rank(Phi, N, tol)
        nv = normal_operator(Phi, ladder, tol)
        rep.checks.update({"quasinormal_after_shift": q, "commutator_rank": r, "normal_operator": nv})
        rep.consistent = q.holds and r == 1 and nv.fails
    elif st is CompletionStatus.NOT_SUBNORMAL:
        if Phi[0, 1].is_analytic() or Phi[1, 0].is_analytic():
            rep.checks["skipped"] = "an off-diagonal entry is analytic"
        else:
            h = hyponormal(Phi, ladder, tol)
            rep.checks["hyponormal"] = h
            if h.fails:
                rep.consistent = True
            else:
                k2 = k_hyponormal(Phi, 2, N, tol=tol)
                rep.checks["k_hyponormal_2"] = k2
                rep.consistent = k2.fails
    else:
        rep.checks["skipped"] = "no operator prediction for the exceptional case"
    return rep
