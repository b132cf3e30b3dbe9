"""Command-line front end.

    qess payoff   --preset pd --scheme eisert --alice Q --bob Q
    qess ess-scan --preset game28 --star 0,0 --b2-values 0,0.5,1
    qess invade   --case B --theta 0 --phi 0.6

Exit codes: 0 success, 1 numeric failure, 2 invalid input, 3 I/O error.
Nothing is written to ``--out`` unless the command succeeds.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import re
import sys

import numpy as np

from . import __version__
from .bimatrix import PRESETS, classical_expectation
from .eisert import ALIASES, QuantumStrategy, eisert_payoffs, strategy_grid
from .equilibrium import (
    TIE_TOL,
    classify,
    deviation_grid,
    ess_region_scan,
    bos_ne,
    mw_equilibria,
    symmetric_ess_check,
)
from .errors import NumericDegeneracyError, ValidationError
from .gamefile import SCHEMES, GameSpec, load_game_spec, preset_spec
from .invasion import CASES, DEFAULT_EPS, DEFAULT_STEPS, case_study
from .mw import PAIRINGS, EntangledInitialState, TacticProfile, bilinear, corner_payoffs, mw_payoffs

EXIT_OK, EXIT_NUMERIC, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

_PI_EXPR = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Radians as a number or a multiple of pi, e.g. ``0.6``, ``pi/2``, ``3*pi/4``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_EXPR.match(text.lower())
    if not m:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
    coef = m.group(1)
    k = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
    return k * math.pi / (float(m.group(2)) if m.group(2) else 1.0)


def parse_strategy(text: str) -> QuantumStrategy:
    """``C``, ``D``, ``Q``, ``theta`` (one-parameter) or ``theta,phi``."""
    key = text.strip().upper()
    if key in ALIASES:
        return ALIASES[key]
    parts = text.split(",")
    try:
        angles = [parse_angle(p) for p in parts]
    except argparse.ArgumentTypeError as exc:
        raise ValidationError(str(exc)) from None
    if len(angles) == 1:
        return QuantumStrategy.one(angles[0])
    if len(angles) == 2:
        return QuantumStrategy.two(*angles)
    raise ValidationError(f"strategy must be C, D, Q, 'theta' or 'theta,phi': {text!r}")


def parse_profile(text: str) -> TacticProfile:
    try:
        p, q = (float(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"profile must be 'p,q', got {text!r}") from None
    return TacticProfile(p, q)


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}") from None


def fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def render(rows: list[dict], columns: list[str], fmt_name: str, trailer: list[str] = (), meta: dict | None = None) -> str:
    if fmt_name == "json":
        doc = {"rows": rows}
        doc.update(meta or {})
        return json.dumps(doc, indent=2) + "\n"
    lines = []
    if fmt_name == "csv":
        lines.append(",".join(columns))
        lines.extend(",".join(_cell(r[c]) for c in columns) for r in rows)
    else:
        cells = [[_cell(r[c]) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        lines.extend("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells)
    lines.extend(trailer)
    return "\n".join(lines) + "\n"


def resolve_game(args, default_preset: str | None = None, default_scheme: str = "mw") -> GameSpec:
    if args.game:
        spec = load_game_spec(args.game)
    elif args.preset or default_preset:
        spec = preset_spec(args.preset or default_preset, default_scheme)
    else:
        raise ValidationError("a game is required: pass --preset or --game")
    overrides = {k: getattr(args, k) for k in ("scheme", "b2", "pairing", "gamma") if getattr(args, k) is not None}
    return dataclasses.replace(spec, **overrides)


def b2_grid(args) -> list[float]:
    if args.b2_values:
        return parse_floats(args.b2_values)
    if args.b2 is not None:
        return [args.b2]
    if args.b2_steps < 1:
        raise ValidationError("--b2-steps must be >= 1")
    if args.b2_steps == 1:
        return [args.b2_min]
    return [float(x) for x in np.linspace(args.b2_min, args.b2_max, args.b2_steps)]


def _init(spec: GameSpec) -> EntangledInitialState:
    return EntangledInitialState.from_b2(spec.b2, spec.pairing)


def cmd_payoff(args) -> str:
    spec = resolve_game(args)
    if spec.scheme == "eisert":
        if args.alice is None or args.bob is None:
            raise ValidationError("eisert payoffs need --alice and --bob strategies")
        pa, pb = eisert_payoffs(spec.bimatrix, parse_strategy(args.alice), parse_strategy(args.bob), spec.gamma)
    else:
        if args.p is None or args.q is None:
            raise ValidationError(f"{spec.scheme} payoffs need --p and --q")
        t = TacticProfile(args.p, args.q)
        if spec.scheme == "mw":
            pa, pb = mw_payoffs(spec.bimatrix, _init(spec), t)
        else:
            pa, pb = classical_expectation(spec.bimatrix, t.p, t.q)
    fmt_name = args.format or "table"
    if fmt_name == "table":
        return f"{fmt(pa)} {fmt(pb)}\n"
    return render([{"payoff_a": pa, "payoff_b": pb}], ["payoff_a", "payoff_b"], fmt_name)


def _require_mw(spec: GameSpec):
    if spec.scheme != "mw":
        raise ValidationError(f"this command works on the mw scheme, not {spec.scheme!r}")


def cmd_ess_scan(args) -> str:
    spec = resolve_game(args)
    _require_mw(spec)
    star = parse_profile(args.star)
    res = ess_region_scan(spec.bimatrix, star, b2_grid(args), spec.pairing, args.resolution, args.tol)
    rows = [dataclasses.asdict(p) for p in res.points]
    meta = {"intervals": [dataclasses.asdict(i) for i in res.intervals], "star": [star.p, star.q]}
    return render(rows, ["b2", "verdict", "min_delta_a", "min_delta_b"], args.format or "csv", meta=meta)


def cmd_ne_scan(args) -> str:
    spec = resolve_game(args)
    _require_mw(spec)
    rows = []
    for b2 in b2_grid(args):
        init = EntangledInitialState.from_b2(b2, spec.pairing)
        for rep in mw_equilibria(spec.bimatrix, init, args.resolution, args.tol):
            verdict, rep = classify(spec.bimatrix, init, rep.candidate, args.resolution, args.tol)
            rows.append({"b2": b2, "p": float(rep.candidate.p), "q": float(rep.candidate.q), "verdict": verdict,
                         "min_delta_a": rep.witness("A").difference, "min_delta_b": rep.witness("B").difference})
    return render(rows, ["b2", "p", "q", "verdict", "min_delta_a", "min_delta_b"], args.format or "csv")


def _strategy_label(s) -> str:
    if isinstance(s, QuantumStrategy):
        return f"{s.theta:.6f}" if s.phi is None else f"{s.theta:.6f};{s.phi:.6f}"
    return fmt(float(s))


def cmd_ess_check(args) -> str:
    spec = resolve_game(args, default_preset="pd", default_scheme="eisert")
    m = spec.bimatrix
    if not m.is_symmetric:
        raise ValidationError("the symmetric ESS check needs a symmetric game")
    if spec.scheme == "eisert":
        cand = parse_strategy(args.candidate or "D")
        if args.mutants:
            opponents = [parse_strategy(s) for s in args.mutants.split(";") if s.strip()]
        else:
            thetas, phis = strategy_grid(args.n_theta, args.n_phi)
            if cand.kind == "one-parameter":
                opponents = [QuantumStrategy.one(t) for t in thetas]
            else:
                opponents = [QuantumStrategy.two(t, f) for t in thetas for f in phis]
        rep = symmetric_ess_check(lambda x, y: eisert_payoffs(m, x, y, spec.gamma)[0], cand, opponents,
                                  tol=args.tol, same=lambda x, y: x.same_operator(y))
    elif spec.scheme == "mw":
        cand = float(parse_floats(args.candidate or "0")[0])
        ta, _ = corner_payoffs(m, _init(spec))
        rep = symmetric_ess_check(lambda x, y: float(bilinear(ta, x, y)), TacticProfile(cand, cand).p,
                                  deviation_grid(args.resolution), tol=args.tol)
    else:
        raise ValidationError("ess-check supports the eisert and mw schemes")
    first = rep.witness("first")
    row = {"candidate": _strategy_label(cand), "verdict": rep.verdict, "is_nash": rep.is_nash,
           "is_strict": rep.is_strict, "is_ess": rep.is_ess, "min_first_difference": first.difference,
           "worst_opponent": _strategy_label(first.deviation)}
    return render([row], list(row), args.format or "table")


def cmd_invade(args) -> str:
    mutant = QuantumStrategy.one(args.theta) if args.phi is None else QuantumStrategy.two(args.theta, args.phi)
    cs = case_study(args.case, mutant, eps_init=args.eps, steps=args.steps, source=args.source, tol=args.tol)
    rows = [{"step": k, "mutant_frequency": float(f)} for k, f in enumerate(cs.trajectory)]
    fmt_name = args.format or "csv"
    if fmt_name == "json":
        meta = {"verdict": cs.verdict, "outcome": cs.outcome, "invasion_barrier": cs.barrier,
                "table": dataclasses.asdict(cs.table)}
        return render(rows, [], "json", meta=meta)
    lines = ["step,mutant_frequency"] + [f"{r['step']},{r['mutant_frequency']:.6e}" for r in rows]
    if fmt_name == "table":
        lines.append(f"invasion_barrier={fmt(cs.barrier)} outcome={cs.outcome}")
    lines.append(f"verdict={cs.verdict}")
    return "\n".join(lines) + "\n"


def cmd_bos(args) -> str:
    init = EntangledInitialState.from_b2(args.b2, args.pairing)
    rows = []
    for rep in bos_ne(args.alpha, args.beta, args.gamma, init, args.resolution, args.tol):
        rows.append({"family": rep.context["family"], "p": float(rep.candidate.p), "q": float(rep.candidate.q),
                     "verdict": rep.verdict, "min_delta_a": rep.witness("A").difference,
                     "min_delta_b": rep.witness("B").difference})
    return render(rows, ["family", "p", "q", "verdict", "min_delta_a", "min_delta_b"], args.format or "table")


def _add_common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS lets these flags appear either before or after the subcommand
    p.add_argument("--format", choices=["csv", "json", "table"], default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS, help=f"tie tolerance (default {TIE_TOL:g})")


def _add_game(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--game", help="JSON game file")
    p.add_argument("--scheme", choices=SCHEMES)
    p.add_argument("--b2", type=float, help="|b|^2 of the initial state")
    p.add_argument("--pairing", choices=PAIRINGS)
    p.add_argument("--gamma", type=parse_angle, help="entanglement of the eisert scheme (radians)")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--b2-values", help="comma-separated |b|^2 values")
    p.add_argument("--b2-min", type=float, default=0.0)
    p.add_argument("--b2-max", type=float, default=1.0)
    p.add_argument("--b2-steps", type=int, default=11)
    p.add_argument("--resolution", type=int, default=1001, help="deviation grid points (>= 101)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qess", description="ESS and Nash analysis of quantized 2x2 games")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("payoff", help="payoffs for one strategy or tactic profile")
    _add_common(p)
    _add_game(p)
    p.add_argument("--alice", help="eisert strategy: C, D, Q, theta or theta,phi")
    p.add_argument("--bob", help="eisert strategy: C, D, Q, theta or theta,phi")
    p.add_argument("--p", type=float, help="row player's identity (or first-strategy) probability")
    p.add_argument("--q", type=float, help="column player's identity (or first-strategy) probability")
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("ess-scan", help="classify a profile over a range of |b|^2")
    _add_common(p)
    _add_game(p)
    _add_grid(p)
    p.add_argument("--star", default="0,0", help="candidate profile p,q")
    p.set_defaults(func=cmd_ess_scan)

    p = sub.add_parser("ne-scan", help="equilibria of an mw game over a range of |b|^2")
    _add_common(p)
    _add_game(p)
    _add_grid(p)
    p.set_defaults(func=cmd_ne_scan)

    p = sub.add_parser("ess-check", help="symmetric ESS test of one strategy against mutants")
    _add_common(p)
    _add_game(p)
    p.add_argument("--candidate", help="eisert strategy, or tactic probability for mw")
    p.add_argument("--mutants", help="';'-separated eisert strategies (default: parameter grid)")
    p.add_argument("--n-theta", type=int, default=21)
    p.add_argument("--n-phi", type=int, default=11)
    p.add_argument("--resolution", type=int, default=1001)
    p.set_defaults(func=cmd_ess_check)

    p = sub.add_parser("invade", help="mutant invasion of D (cases A, B) or Q (case C)")
    _add_common(p)
    p.add_argument("--case", required=True, choices=sorted(CASES))
    p.add_argument("--theta", type=parse_angle, required=True)
    p.add_argument("--phi", type=parse_angle, help="omit for a one-parameter mutant")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="initial mutant frequency")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--source", choices=["pipeline", "closed_form"], default="pipeline")
    p.set_defaults(func=cmd_invade)

    p = sub.add_parser("bos", help="equilibria of the Battle of the Sexes")
    _add_common(p)
    p.add_argument("--alpha", type=float, default=3.0)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--gamma", type=float, default=1.0, help="off-diagonal payoff")
    p.add_argument("--b2", type=float, default=0.0)
    p.add_argument("--pairing", choices=PAIRINGS, default="aligned")
    p.add_argument("--resolution", type=int, default=1001)
    p.set_defaults(func=cmd_bos)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", None)
    args.out = getattr(args, "out", None)
    args.tol = getattr(args, "tol", TIE_TOL)
    try:
        text = args.func(args)
    except (NumericDegeneracyError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
