"""Classification round trip over many random completion families.

Draws families, builds the completion, classifies the off-diagonal pair and
records the largest parameter error per family tag.  Optionally cross-checks
each verdict with the operator tests.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from toeplitz_completion import CompletionFamily, build_completion, classify_candidate, verify_completion

from _common import parse_config, save


@dataclass
class Config:
    draws: int = 600
    seed: int = 0
    alpha_max: float = 0.8
    verify: bool = False
    verify_N: int = 16


def _angle(a, b):
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _draw(rng, cfg, tag):
    alpha = cfg.alpha_max * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
    r = rng.uniform(0.2, 0.9) if rng.uniform() < 0.5 else rng.uniform(1.1, 3.0)
    return CompletionFamily(alpha, tag, r * cmath.exp(2j * math.pi * rng.uniform()),
                            rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi),
                            complex(*rng.normal(size=2)))


def run(cfg: Config) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    tags = ("Family1", "Family2", "QuasinormalFamily")
    rows = []
    for k in range(cfg.draws):
        f = _draw(rng, cfg, tags[k % 3])
        Phi = build_completion(f)
        v = classify_candidate(f.alpha, f.alpha, Phi[0, 1], Phi[1, 0])
        g = v.matched_family
        row = {"tag": f.tag.value, "status": v.status.value, "matched": g is not None and g.tag is f.tag}
        if row["matched"]:
            row["error"] = max(_angle(g.theta_angle, f.theta_angle), _angle(g.omega_angle, f.omega_angle),
                               abs(g.mu - f.mu), abs(g.zeta - f.zeta))
        if cfg.verify:
            row["consistent"] = verify_completion(Phi, v, cfg.verify_N).consistent
        rows.append(row)
    for tag in tags:
        sub = [r for r in rows if r["tag"] == tag]
        errs = [r["error"] for r in sub if r["matched"]]
        line = f"{tag:>18}: {sum(r['matched'] for r in sub)}/{len(sub)} matched, max error {max(errs):.2e}"
        if cfg.verify:
            line += f", {sum(r['consistent'] for r in sub)} operator-consistent"
        print(line)
    return rows


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__.splitlines()[0])
    print("wrote", save("round_trip_sweep", cfg, run(cfg)))
