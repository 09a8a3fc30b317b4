"""How the 2-hyponormality witness of the hyponormal non-normal example behaves as N grows.

For each section size the smallest eigenvalue of the k = 2 Bram-Halmos block
matrix is reported together with its rigorous truncation bound and the
resulting verdict; the hyponormal (k = 1) rung is printed alongside.
"""
from __future__ import annotations

from dataclasses import dataclass

from toeplitz_completion import k_hyponormal
from toeplitz_completion.gallery import hyponormal_nonnormal

from _common import parse_config, save


@dataclass
class Config:
    sizes: tuple = (8, 16, 24, 32, 48, 64)
    theta_zero: float = 0.7
    alpha: float = 0.3
    beta: float = -0.4
    margin: float = 0.1
    tol: float = 1e-8


def run(cfg: Config) -> list[dict]:
    E = hyponormal_nonnormal(cfg.theta_zero, cfg.alpha, cfg.beta, cfg.margin)
    rows = []
    for N in cfg.sizes:
        row = {"N": N}
        for k in (1, 2):
            v = k_hyponormal(E.Phi, k, N, tol=cfg.tol)
            row[f"k{k}_lambda_min"] = v.details["lambda_min"]
            row[f"k{k}_error_bound"] = v.details["error_bound"]
            row[f"k{k}_status"] = v.status.value
        rows.append(row)
        print(f"N={N:3d}  k=1 {row['k1_status']:>12} {row['k1_lambda_min']:+.3e}   "
              f"k=2 {row['k2_status']:>12} {row['k2_lambda_min']:+.3e} (bound {row['k2_error_bound']:.1e})")
    return rows


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__.splitlines()[0])
    print("wrote", save("witness_ladder", cfg, run(cfg)))
