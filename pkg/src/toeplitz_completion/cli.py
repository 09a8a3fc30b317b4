"""Command-line front end.

    toeplitz-completion analyze --test hyponormal --N 48 symbol.json
    toeplitz-completion completion classify --alpha 0 --beta 0 --phi phi.json --psi psi.json
    toeplitz-completion completion build --family Family1 --alpha 0.3 --theta 0.7
    toeplitz-completion kernel --phi-minus phim.json delta.json
    toeplitz-completion hull delta.json
    toeplitz-completion coprime --theta-zeros 0.5,0.3 delta.json
    toeplitz-completion factor fminus.json

Exit codes: 0 holds / normal class, 1 fails / not subnormal, 2 inconclusive or
exceptional, 64 usage error, 65 input parse error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Sequence

import numpy as np

from . import classify as C
from .blaschke import FiniteBlaschkeProduct, blaschke, is_coprime
from .classify import Status, Verdict, _jsonable
from .completion import (
    CompletionFamily,
    CompletionStatus,
    build_completion,
    classify_candidate,
    verify_completion,
)
from .errors import (
    GrammarParse,
    InvalidFamilyParameters,
    InvalidZero,
    ParseError,
    ToeplitzCompletionError,
)
from .hardy_ops import DEFAULT_TOL, self_commutator
from .inner_matrix import coprime_diag, coprime_point_test, diagonal_hull, kernel_check
from .symbol import (
    MatrixSymbol,
    ScalarSymbol,
    coprime_factorization,
    is_normal_symbol,
    load_matrix,
    load_scalar,
    matrix_to_json,
    term_to_json,
)

EX_OK, EX_FAIL, EX_UNSURE, EX_USAGE, EX_DATAERR = 0, 1, 2, 64, 65

TESTS = ("hyponormal", "psd", "normal", "2-hyponormal", "3-hyponormal", "quasinormal",
         "normal-symbol", "unitary", "rank")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_symbol(path) -> MatrixSymbol:
    """Read a matrix symbol from a JSON file."""
    return load_matrix(path)


# formatting -----------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "null"
        return format(x + 0.0, ".17g")  # + 0.0 folds -0.0
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return _fmt(_jsonable(x))


def dumps(report: dict) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 significant digits."""
    return _fmt(_jsonable(report))


def _text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for k, v in report["inputs"].items():
        lines.append(f"  {k} = {v}")
    verdict = report.get("verdict", {})
    for k, v in verdict.items():
        if k in ("witness",):
            continue
        lines.append(f"{k}: {_fmt(_jsonable(v)) if not isinstance(v, str) else v}")
    return "\n".join(lines)


# arguments ------------------------------------------------------------------

def _complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {s!r}") from exc


def _ladder(s: str) -> tuple[int, ...]:
    try:
        out = tuple(int(p) for p in s.split(",") if p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad ladder {s!r}") from exc
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("ladder entries must be positive integers")
    return out


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--N", type=_positive_int, default=None)
    p.add_argument("--buffer", type=_positive_int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--samples", type=_positive_int, default=4096)
    p.add_argument("--ladder", type=_ladder, default=None)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (breaks byte-identical output)")
    p.set_defaults(fmt="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="toeplitz-completion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="operator test on a matrix symbol")
    a.add_argument("--test", choices=TESTS, required=True)
    a.add_argument("--beta", type=_complex, default=0j, help="shift for the quasinormal test")
    a.add_argument("symbol")

    c = sub.add_parser("completion", help="completion families")
    csub = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cc = csub.add_parser("classify", parents=[common])
    cc.add_argument("--alpha", type=_complex, required=True)
    cc.add_argument("--beta", type=_complex, required=True)
    cc.add_argument("--phi", required=True)
    cc.add_argument("--psi", required=True)
    cc.add_argument("--verify", action="store_true", help="cross-check with operator tests")
    cb = csub.add_parser("build", parents=[common])
    cb.add_argument("--family", choices=("Family1", "Family2", "QuasinormalFamily"), required=True)
    cb.add_argument("--alpha", type=_complex, default=0j)
    cb.add_argument("--mu", type=_complex, default=0j)
    cb.add_argument("--theta", type=float, default=0.0)
    cb.add_argument("--omega", type=float, default=0.0)
    cb.add_argument("--zeta", type=_complex, default=0j)

    k = sub.add_parser("kernel", parents=[common], help="kernel check of H(Phi_minus^*)")
    k.add_argument("--phi-minus", required=True)
    k.add_argument("delta")

    h = sub.add_parser("hull", parents=[common], help="diagonal hull of an inner matrix")
    h.add_argument("delta")

    cp = sub.add_parser("coprime", parents=[common], help="coprimeness of theta I and Delta")
    cp.add_argument("--theta-zeros", required=True, help="comma-separated complex zeros")
    cp.add_argument("delta")

    f = sub.add_parser("factor", parents=[common], help="coprime factorization of f_minus")
    f.add_argument("symbol")
    return parser


# commands -------------------------------------------------------------------

def _code(status) -> int:
    return {
        Status.HOLDS: EX_OK,
        Status.FAILS: EX_FAIL,
        Status.INCONCLUSIVE: EX_UNSURE,
        CompletionStatus.NORMAL: EX_OK,
        CompletionStatus.QUASINORMAL_AFTER_SHIFT: EX_OK,
        CompletionStatus.NOT_SUBNORMAL: EX_FAIL,
        CompletionStatus.EXCEPTIONAL: EX_UNSURE,
    }[status]


def _ladder_of(args) -> tuple[int, ...]:
    if args.ladder:
        return args.ladder
    return (args.N,) if args.N else C.DEFAULT_LADDER


def _analyze(args) -> tuple[dict, dict, int]:
    Phi = parse_symbol(args.symbol)
    N = args.N or 32
    inputs = {"symbol": args.symbol, "test": args.test}
    t = args.test
    if t in ("hyponormal", "normal"):
        ladder = _ladder_of(args)
        inputs["ladder"] = list(ladder)
        fn = C.hyponormal if t == "hyponormal" else C.normal_operator
        v = fn(Phi, ladder, args.tol)
    elif t == "psd":
        inputs["N"] = N
        S = self_commutator(Phi, N)
        v = C.psd_check(S, args.tol, S.error_bound)
    elif t in ("2-hyponormal", "3-hyponormal"):
        inputs["N"] = N
        v = C.k_hyponormal(Phi, int(t[0]), N, args.buffer, args.tol)
    elif t == "quasinormal":
        buf = args.buffer or C.adaptive_buffer(Phi, N)
        inputs.update(N=N, buffer=buf, beta=args.beta)
        v = C.quasinormal_after_shift(Phi, args.beta, N, buf, args.tol)
    elif t == "normal-symbol":
        ok, defect = is_normal_symbol(Phi, min(args.samples, 4096), max(args.tol, 1e-9))
        v = Verdict(Status.HOLDS if ok else Status.FAILS, defect)
    elif t == "unitary":
        v, U = C.normality_unitary_test(Phi, tol=args.tol)
        if U is not None:
            v.details["U"] = U
    else:  # rank
        inputs["N"] = N
        r = C.commutator_rank(Phi, N, args.tol)
        v = Verdict(Status.HOLDS, 0.0, N, None, {"commutator_rank": r})
    inputs["tol"] = args.tol
    return inputs, v.to_json(), _code(v.status)


def _completion(args) -> tuple[dict, dict, int]:
    if args.action == "build":
        f = CompletionFamily(args.alpha, args.family, args.mu, args.theta, args.omega, args.zeta)
        Phi = build_completion(f)
        return ({"family": f.to_json()},
                {"status": "Built", "symbol": matrix_to_json(Phi)}, EX_OK)
    phi, psi = load_scalar(args.phi), load_scalar(args.psi)
    inputs = {"alpha": args.alpha, "beta": args.beta, "phi": args.phi, "psi": args.psi}
    v = classify_candidate(args.alpha, args.beta, phi, psi)
    out = v.to_json()
    code = _code(v.status)
    if args.verify and v.status is not CompletionStatus.EXCEPTIONAL and abs(args.alpha - args.beta) <= 1e-10:
        d = ScalarSymbol.coanalytic(blaschke(args.alpha))
        rep = verify_completion(MatrixSymbol([[d, phi], [psi, d]]), v, args.N or 32, args.tol)
        out["verification"] = rep.to_json()
        if not rep.consistent:
            code = EX_UNSURE
    return inputs, out, code


def _kernel(args) -> tuple[dict, dict, int]:
    Pm, D = parse_symbol(args.phi_minus), parse_symbol(args.delta)
    N = args.N or 32
    v = kernel_check(Pm, D, N, max(args.tol, 1e-7))
    return {"phi_minus": args.phi_minus, "delta": args.delta, "N": N}, v.to_json(), _code(v.status)


def _blaschke_json(B: FiniteBlaschkeProduct) -> dict:
    return {"constant": B.constant, "zeros": list(B.zeros), "degree": B.degree}


def _hull(args) -> tuple[dict, dict, int]:
    D = parse_symbol(args.delta)
    delta = diagonal_hull(D)
    return {"delta": args.delta}, {"status": "Computed", "hull": _blaschke_json(delta)}, EX_OK


def _coprime(args) -> tuple[dict, dict, int]:
    try:
        zeros = tuple(_complex(s) for s in args.theta_zeros.split(",") if s.strip())
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from exc
    theta = FiniteBlaschkeProduct(1.0, zeros)
    D = parse_symbol(args.delta)
    hull = diagonal_hull(D)
    via_hull = coprime_diag(theta, D)
    via_point, bad = coprime_point_test(theta, D)
    out = {"status": "Coprime" if via_hull else "NotCoprime",
           "coprime_diag": via_hull, "coprime_point_test": via_point,
           "failing_zero": bad, "hull": _blaschke_json(hull),
           "routes_agree": via_hull == via_point == is_coprime(theta, hull)}
    return ({"theta_zeros": list(zeros), "delta": args.delta}, out,
            EX_OK if via_hull else EX_FAIL)


def _factor(args) -> tuple[dict, dict, int]:
    f = load_scalar(args.symbol)
    fac = coprime_factorization(f)
    if hasattr(fac.outer, "terms"):
        outer = {"kind": "symbol", "terms": [term_to_json(t) for t in fac.outer.terms]}
    else:
        outer = {"kind": "rational", "num": fac.outer.num, "den": fac.outer.den}
    out = {"status": "Computed", "inner": _blaschke_json(fac.inner), "outer": outer,
           "notes": list(fac.notes)}
    return {"symbol": args.symbol}, out, EX_OK


COMMANDS = {"analyze": _analyze, "completion": _completion, "kernel": _kernel,
            "hull": _hull, "coprime": _coprime, "factor": _factor}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv in (["-h"], ["--help"]) or not argv:
        stdout.write(build_parser().format_help())
        return EX_OK if argv else EX_USAGE
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except SystemExit as exc:  # --help inside a subcommand
        return EX_OK if exc.code in (0, None) else EX_USAGE
    name = args.command + (f"-{args.action}" if args.command == "completion" else "")
    t0 = time.perf_counter()
    try:
        inputs, verdict, code = COMMANDS[args.command](args)
    except (ParseError, InvalidZero, GrammarParse, json.JSONDecodeError) as exc:
        stderr.write(f"parse error: {exc}\n")
        return EX_DATAERR
    except OSError as exc:
        stderr.write(f"parse error: cannot read input: {exc}\n")
        return EX_DATAERR
    except (UsageError, InvalidFamilyParameters) as exc:
        stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except ToeplitzCompletionError as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EX_UNSURE
    timings = {"total_seconds": time.perf_counter() - t0} if args.timings else None
    report = {"command": name, "inputs": inputs, "verdict": verdict, "timings": timings}
    stdout.write((dumps(report) if args.fmt == "json" else _text(report)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
