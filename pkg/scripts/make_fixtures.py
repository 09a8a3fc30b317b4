"""Regenerate the JSON fixtures shipped in ``fixtures/``."""
from __future__ import annotations

import argparse
import cmath
import json
from dataclasses import dataclass
from pathlib import Path

from toeplitz_completion import (
    Case,
    CompletionFamily,
    MatrixSymbol,
    ScalarSymbol,
    blaschke,
    kernel_inner_delta,
    kernel_phi_minus,
    matrix_to_json,
)
from toeplitz_completion.gallery import (
    control_not_subnormal,
    exceptional_pair,
    hyponormal_nonnormal,
    quasinormal_completion,
    z,
)


@dataclass
class Config:
    out: Path = Path(__file__).resolve().parent.parent / "fixtures"


def _scalar(s: ScalarSymbol) -> dict:
    return matrix_to_json(MatrixSymbol([[s]]))


def fixtures() -> dict[str, dict]:
    out: dict[str, dict] = {}
    E = hyponormal_nonnormal()
    out["hyponormal_nonnormal.json"] = matrix_to_json(E.Phi)
    out["hyponormal_nonnormal_K.json"] = matrix_to_json(E.K)
    out["quasinormal.json"] = matrix_to_json(quasinormal_completion())
    out["control.json"] = matrix_to_json(control_not_subnormal())

    f1 = CompletionFamily(0, "Family1", omega_angle=1.0)
    out["family1.json"] = _scalar(f1.phi())
    out["family1psi.json"] = _scalar(f1.psi())
    f2 = CompletionFamily(0.3, "Family2", mu=2 * cmath.exp(0.5j), theta_angle=0.4, zeta=1 - 0.5j)
    out["family2phi.json"] = _scalar(f2.phi())
    out["family2psi.json"] = _scalar(f2.psi())
    phi, psi = exceptional_pair()
    out["exceptional_phi.json"] = _scalar(phi)
    out["exceptional_psi.json"] = _scalar(psi)

    one = ScalarSymbol.constant(1)
    t0, t1 = blaschke(0.5), blaschke(0.3)
    out["kernel_phi_minus.json"] = matrix_to_json(kernel_phi_minus(t0, t1, one, one, 0))
    out["kernel_delta.json"] = matrix_to_json(kernel_inner_delta(t0, t1, one, one, 0, Case.C).symbol)
    out["fminus.json"] = _scalar(z() + ScalarSymbol.analytic(blaschke(0) * blaschke(0)))
    return out


def main(cfg: Config) -> None:
    cfg.out.mkdir(exist_ok=True)
    for name, obj in fixtures().items():
        (cfg.out / name).write_text(json.dumps(obj, indent=1) + "\n")
        print(cfg.out / name)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Config.out)
    main(Config(ap.parse_args().out))
