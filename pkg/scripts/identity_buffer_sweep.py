"""Residual of the Toeplitz product identity against zero modulus and buffer size.

``T(Phi Psi) - T(Phi) T(Psi) = H(Phi^*)^* H(Psi)`` on N-block sections, with
the product computed through a finite buffer.  The residual decays like
``rho^buffer``; this sweep shows where a fixed buffer stops reaching 1e-8.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from toeplitz_completion import FiniteBlaschkeProduct, MatrixSymbol, ScalarSymbol, op_product
from toeplitz_completion.hardy_ops import hankel_matrix, product_symbol_fourier

from _common import parse_config, save

S = ScalarSymbol


@dataclass
class Config:
    N: int = 24
    buffers: tuple = (12, 24, 48)
    radii_pct: tuple = (50, 60, 70, 80, 90)
    draws: int = 30
    seed: int = 6


def _scalar(rng, rmax, budget=2):
    s = S.constant(complex(*rng.normal(size=2)))
    while budget > 0:
        d = int(rng.integers(1, min(2, budget) + 1))
        budget -= d
        zs = tuple(rmax * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()) for _ in range(d))
        c = complex(*rng.normal(size=2))
        B = FiniteBlaschkeProduct(1, zs)
        s = s + (S.analytic(B, c) if rng.uniform() < 0.5 else S.coanalytic(B, c))
    return s


def _matrix(rng, n, rmax):
    return MatrixSymbol([[_scalar(rng, rmax) for _ in range(n)] for _ in range(n)])


def residual(Phi, Psi, N, buffer):
    c = product_symbol_fourier([Phi, Psi], -(N - 1), N - 1)
    n = Phi.n
    T = np.zeros((N * n, N * n), dtype=complex)
    for i in range(N):
        for j in range(N):
            T[i * n:(i + 1) * n, j * n:(j + 1) * n] = c[i - j + N - 1]
    H = hankel_matrix(Phi.adjoint(), N + 400, N).conj().T @ hankel_matrix(Psi, N + 400, N)
    return float(np.max(np.abs(T - op_product([Phi, Psi], N, buffer).matrix - H)))


def run(cfg: Config) -> list[dict]:
    rows = []
    for pct in cfg.radii_pct:
        rmax = pct / 100
        rng = np.random.default_rng(cfg.seed)
        pairs = [(_matrix(rng, 1 + k % 2, rmax), _matrix(rng, 1 + k % 2, rmax)) for k in range(cfg.draws)]
        for buf in cfg.buffers:
            worst = max(residual(P, Q, cfg.N, buf) for P, Q in pairs)
            rows.append({"rmax": rmax, "buffer": buf, "worst_residual": worst})
            print(f"rmax={rmax:.2f} buffer={buf:3d} worst residual {worst:.2e}")
    return rows


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__.splitlines()[0])
    print("wrote", save("identity_buffer_sweep", cfg, run(cfg)))
