"""Named symbols used by the tests, scripts and shipped fixtures."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .blaschke import FiniteBlaschkeProduct, blaschke
from .symbol import MatrixSymbol, ScalarSymbol, sup_norm

S = ScalarSymbol


def z() -> ScalarSymbol:
    return S.analytic(blaschke(0))


def zbar() -> ScalarSymbol:
    return S.coanalytic(blaschke(0))


@dataclass
class HyponormalNonnormal:
    """Normal-valued symbol whose Toeplitz operator is hyponormal but not normal.

    ``Phi = Phi_-^* + Phi_+`` with ``Phi_- = [[t, b_beta], [t b_alpha, t]]`` and
    ``Phi_+ = c [[0, t b_beta], [t^2 b_alpha, 0]]``, where ``t`` is a single
    Blaschke factor coprime to ``b_alpha`` and ``b_beta``.
    """

    Phi: MatrixSymbol
    K: MatrixSymbol
    c: float
    theta: FiniteBlaschkeProduct
    alpha: complex
    beta: complex


def hyponormal_nonnormal(theta_zero: complex = 0.7, alpha: complex = 0.3, beta: complex = -0.4,
                         margin: float = 0.1, samples: int = 4096) -> HyponormalNonnormal:
    t = blaschke(theta_zero)
    ba, bb = blaschke(alpha), blaschke(beta)
    minus = MatrixSymbol([[S.analytic(t), S.analytic(bb)],
                          [S.analytic(t * ba), S.analytic(t)]])
    c = sup_norm(minus, samples) + margin
    plus = MatrixSymbol([[S.zero(), S.analytic(t * bb, c)],
                         [S.analytic(t * t * ba, c), S.zero()]])
    return HyponormalNonnormal(minus.adjoint() + plus, minus * (1 / c), c, t,
                               complex(alpha), complex(beta))


def quasinormal_completion() -> MatrixSymbol:
    """``[[zbar, zbar + 2z], [zbar + 2z, zbar]]``: quasinormal, not normal."""
    off = zbar() + z() * 2
    return MatrixSymbol([[zbar(), off], [off, zbar()]])


def control_not_subnormal() -> MatrixSymbol:
    return MatrixSymbol([[zbar(), zbar()], [zbar(), zbar()]])


def exceptional_pair(w: complex = 0.4) -> tuple[ScalarSymbol, ScalarSymbol]:
    """Off-diagonal pair at ``alpha = 0`` hitting the exceptional identity with pole counts 1 and 2.

    ``phi`` is the Family2 member with ``mu = 1``; ``psi`` carries an extra pole.
    ``phi_- = z`` and ``psi_- = -conj(w) z b_w`` give ``(ab)(0) = -w = (theta0' theta1')(0)``.
    """
    phi = zbar() + z() * math.sqrt(2)
    psi = S.coanalytic(blaschke(0) * blaschke(w), -w) + S.analytic(blaschke(0.2), 0.5)
    return phi, psi
