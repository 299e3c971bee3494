"""Command-line interface.

Every subcommand takes a state space as its first argument: a path to a
JSON document, ``-`` for standard input, inline JSON, or a generator
shorthand such as ``simplex:c=3`` or ``polygon:n=6``.

Exit codes: 0 success, 1 verification failure, 2 unreadable input,
3 unsupported operation for this space, 4 state outside the space.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import discrimination as di
from . import metrics as me
from . import symmetry as sy
from . import verify as vf
from .core import GENERATORS, Ball, StateSpace
from .documents import encode_rational, parse_rational, parse_space, parse_state
from .errors import (DimensionMismatch, DocumentError, NoneFound, NotAState, NotDistinguishable,
                     UnsupportedSpace)

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_DOMAIN = 0, 1, 2, 3, 4
SEED_ENV = "GPTLAB_SEED"


# --- input ---------------------------------------------------------------------

def _shorthand(arg: str) -> Optional[dict]:
    name, _, rest = arg.partition(":")
    if name not in GENERATORS:
        return None
    params: dict[str, Any] = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise DocumentError(f"expected key=value in {arg!r}")
        key = key.strip()
        params[key] = int(val) if key in ("c", "d", "n", "dim") and val.strip().lstrip("-").isdigit() else val.strip()
    return {"type": "generator", "name": name, "params": params}


def load_space(arg: str) -> tuple[StateSpace, dict]:
    if arg == "-":
        return parse_space(sys.stdin.read())
    if arg.lstrip().startswith("{"):
        return parse_space(arg)
    doc = _shorthand(arg)
    if doc is not None:
        return parse_space(doc)
    path = Path(arg)
    if not path.is_file():
        raise DocumentError(f"{arg!r} is neither a file, inline JSON nor a generator name")
    return parse_space(path.read_text())


def load_state(space: StateSpace, text: str) -> tuple:
    return parse_state(text, allow_decimal_number=isinstance(space, Ball))


def resolve_seed(seed: int) -> int:
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return seed
    try:
        return int(env)
    except ValueError:
        raise DocumentError(f"{SEED_ENV} must be an integer, got {env!r}") from None


# --- output ----------------------------------------------------------------------

def _jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return encode_rational(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "point"):
        return _jsonable(x.point)
    raise TypeError(f"cannot encode {type(x).__name__}")


def _text(x: Any) -> str:
    x = _jsonable(x)
    if isinstance(x, list):
        return "(" + ", ".join(_text(v) for v in x) + ")"
    if isinstance(x, dict):
        return ", ".join(f"{k}={_text(v)}" for k, v in x.items())
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x).lower() if isinstance(x, bool) else str(x)


def emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(_jsonable(report), indent=2) + "\n")
        return
    width = max((len(k) for k in report), default=0)
    for key, val in report.items():
        out.write(f"{key.ljust(width)}  {_text(val)}\n")


# --- commands --------------------------------------------------------------------

def cmd_analyze(space: StateSpace, samples: int = 1000, seed: int = 0) -> dict:
    """Summary of the structural properties of a space."""
    is_ball = isinstance(space, Ball)
    simplex = di.is_simplex(space)
    p6 = di.satisfies_p6_sampled(space, samples, seed)
    p6_report: dict = {"status": p6.status}
    if p6.counterexample is not None:
        p6_report["counterexample"] = p6.counterexample.point
    group = sy.automorphism_group(space)
    if simplex:
        tag = "classical"
    elif is_ball:
        tag = "qubit-like-ball"
    else:
        tag = "other"
    return {
        "dim": space.dim,
        "num_pure_states": "infinite" if is_ball else space.num_vertices,
        "is_simplex": simplex,
        "c": di.max_distinguishable(space),
        "satisfies_p5": sy.satisfies_p5(space),
        "is_isogonal": sy.is_isogonal(space),
        "p6": p6_report,
        "invariant_state": sy.invariant_state(space).point,
        "invariant_state_unique": sy.invariant_state_unique(space),
        "automorphism_group_order": group.order,
        "classification_tag": tag,
    }


def cmd_distance(space: StateSpace, s1: tuple, s2: tuple) -> dict:
    d = me.kolmogorov_distance(space, s1, s2)
    p = me.optimal_success_probability(space, s1, s2)
    if isinstance(space, Ball):
        identity = abs(d - (2 * p - 1)) <= 1e-9
    else:
        identity = d == 2 * p - 1
    return {"kolmogorov": d, "success_probability": p, "identity_D_eq_2P_minus_1": identity}


def _effects_report(measurement) -> list:
    return [{"a": e.a, "b": e.b} for e in measurement.effects]


def cmd_distinguish(space: StateSpace, states: Sequence[tuple]) -> dict:
    try:
        w = di.distinguish(space, states)
    except NotDistinguishable:
        return {"distinguishable": False}
    return {"distinguishable": True, "effects": _effects_report(w.measurement)}


def cmd_decompose(space: StateSpace, s: tuple) -> dict:
    try:
        w, weights = di.decompose_distinguishable(space, s)
    except NoneFound:
        return {"found": False}
    return {"found": True, "states": [x.point for x in w.states], "weights": weights,
            "effects": _effects_report(w.measurement)}


def cmd_entropy(space: StateSpace, s: tuple) -> dict:
    return {"entropy": me.entropy(space, s)}


def cmd_symmetry(space: StateSpace, list_elements: bool = False) -> dict:
    group = sy.automorphism_group(space)
    report = {
        "automorphism_group_order": group.order,
        "satisfies_p5": sy.satisfies_p5(space),
        "is_isogonal": sy.is_isogonal(space),
        "invariant_state": sy.invariant_state(space).point,
        "invariant_state_unique": sy.invariant_state_unique(space),
        "invariant_inner_product": sy.invariant_inner_product(space),
    }
    if list_elements and not isinstance(space, Ball):
        report["vertex_permutations"] = [g.permutation for g in group]
    return report


def cmd_verify(spec: vf.CorpusSpec, seed: int, inject_fault: bool = False) -> vf.VerifyReport:
    with me.fault_injection(inject_fault or me.fault_active()):
        return vf.run_verification(spec, seed)


# --- argument parsing --------------------------------------------------------------

def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("-")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO-HI, got {text!r}") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gptlab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="summarize a state space")
    p.add_argument("space")
    p.add_argument("--samples", type=int, default=1000, help="random states for the P6 check")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("distance", parents=[common], help="Kolmogorov distance of two states")
    p.add_argument("space")
    p.add_argument("s1")
    p.add_argument("s2")

    p = sub.add_parser("distinguish", parents=[common], help="find a perfectly discriminating measurement")
    p.add_argument("space")
    p.add_argument("states", nargs="+")

    p = sub.add_parser("decompose", parents=[common], help="mix a state from distinguishable pure states")
    p.add_argument("space")
    p.add_argument("state")

    p = sub.add_parser("entropy", parents=[common], help="measurement entropy of a state")
    p.add_argument("space")
    p.add_argument("state")

    p = sub.add_parser("symmetry", parents=[common], help="automorphism group and invariants")
    p.add_argument("space")
    p.add_argument("--elements", action="store_true", help="list vertex permutations")

    p = sub.add_parser("verify", parents=[common], help="run the structural checks on a corpus")
    p.add_argument("--corpus", choices=["default", "builtin", "random", "simplices"], default="default")
    p.add_argument("--random", type=int, default=6, help="number of random polytopes")
    p.add_argument("--dims", type=_range, default=(2, 3), help="dimension range, e.g. 2-3")
    p.add_argument("--vertices", type=_range, default=(4, 8), help="vertex-count range, e.g. 4-8")
    p.add_argument("--samples", type=int, default=3, help="sampled states per instance")
    p.add_argument("--p6-samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true",
                   help="break the distance program on purpose (negative control)")
    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "verify":
        spec = vf.CorpusSpec(args.corpus, args.random, args.dims, args.vertices,
                             args.samples, args.p6_samples)
        report = cmd_verify(spec, resolve_seed(args.seed), args.inject_fault)
        if args.json:
            emit({"seed": report.seed, "passed": report.passed,
                  "results": [r.__dict__ for r in report.results]}, True)
        else:
            rows = [(r.check, r.instance, "pass" if r.passed else "FAIL", r.detail) for r in report.results]
            widths = [max(len(row[i]) for row in rows) for i in range(3)] if rows else [0, 0, 0]
            for row in rows:
                print("  ".join(c.ljust(w) for c, w in zip(row, widths)) + "  " + row[3])
            print(f"{len(report.results) - len(report.failures)}/{len(report.results)} checks passed")
        return EXIT_OK if report.passed else EXIT_VERIFY

    space, _ = load_space(args.space)
    if args.command == "analyze":
        report = cmd_analyze(space, args.samples, resolve_seed(args.seed))
    elif args.command == "distance":
        report = cmd_distance(space, load_state(space, args.s1), load_state(space, args.s2))
    elif args.command == "distinguish":
        report = cmd_distinguish(space, [load_state(space, s) for s in args.states])
    elif args.command == "decompose":
        report = cmd_decompose(space, load_state(space, args.state))
    elif args.command == "entropy":
        report = cmd_entropy(space, load_state(space, args.state))
    else:
        report = cmd_symmetry(space, args.elements)
    emit(report, args.json)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedSpace as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (NotAState, DimensionMismatch) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
