"""Command-line interface: distributions, figure tables, pulse planning,
verification.

Numeric output is serialized with the shortest decimal that round-trips
the underlying double, rows are emitted in a fixed order with LF line
endings, and identical arguments always reproduce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .distributions import (
    RareEventSpec,
    TransferSpec,
    bose_exact,
    bose_rare_limit,
    classical_exact,
    classical_rare_limit,
    recapture_probability,
    transfer_probabilities,
)
from .dynamics import (
    NoCoupling,
    TargetUnreachable,
    TwoLevelParams,
    evolve,
    solve_pulse_duration,
)
from .verification import run_verification

__all__ = ["FigureTable", "PlanReport", "main"]

_FIGURE_GRID_MAX = 12   # m, m' range of the surface tables
_FIGURE_SECTION_MAX = 15  # m range of the section tables
_FIGURE_RECAPTURE_W = (1, 3, 5)  # w values of the recapture table


@dataclass(frozen=True)
class FigureTable:
    """One emitted table: figure id, column headers, numeric rows."""

    figure_id: int
    header: list[str]
    rows: list[list[float]]

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PlanReport:
    """Planner output: pulse duration, reached p, and predicted counts."""

    tau: float
    achieved_p: float
    w: float
    n: int
    m: int
    headline: float
    predicted: dict[int, float]
    meta: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "tau": self.tau,
            "achieved_p": self.achieved_p,
            "w": self.w,
            "n": self.n,
            "m": self.m,
            "headline": self.headline,
            "predicted": {str(k): v for k, v in sorted(self.predicted.items())},
            "meta": self.meta,
        }
        return json.dumps(payload, indent=2) + "\n"


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _rows_csv(start: int, probs: np.ndarray) -> str:
    lines = ["m_prime,probability"]
    for offset, value in enumerate(probs):
        lines.append(f"{start + offset},{_fmt(value)}")
    return "\n".join(lines) + "\n"


def _rows_json(start: int, probs: np.ndarray, meta: dict) -> str:
    rows = [[start + offset, float(value)] for offset, value in enumerate(probs)]
    return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"


def _cmd_dist(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.limit:
        if args.w is None:
            parser.error("--limit requires --w")
        spec = RareEventSpec(w=args.w, m=args.m)
        if args.model == "classical":
            if args.mmax is not None:
                parser.error("--mmax applies to the bose limit only")
            dist = classical_rare_limit(spec)
        else:
            dist = bose_rare_limit(spec, args.mmax)
        meta = {"model": dist.model, "w": args.w, "m": args.m,
                "tail_bound": dist.meta["tail_bound"]}
    else:
        if args.n is None:
            parser.error("exact mode requires --N")
        if args.mmax is not None:
            parser.error("--mmax applies to the bose limit only")
        p = args.p if args.p is not None else args.w / args.n
        if not 0.0 <= p <= 1.0:
            parser.error(f"derived p={p!r} lies outside [0, 1]")
        spec = TransferSpec(args.n, args.m, p)
        dist = classical_exact(spec) if args.model == "classical" else bose_exact(spec)
        meta = {"model": dist.model, "n": args.n, "m": args.m, "p": p}
    if args.format == "csv":
        _write(_rows_csv(dist.start, dist.probs), args.out)
    else:
        _write(_rows_json(dist.start, dist.probs, meta), args.out)
    return 0


def _figure_table(figure_id: int, n: int, w: float) -> FigureTable:
    p = w / n
    if figure_id in (3, 4):
        bose = figure_id == 4
        header = ["m", "m_prime", "probability"]
        rows = []
        for m in range(_FIGURE_GRID_MAX + 1):
            values = transfer_probabilities(TransferSpec(n, m, p), 0,
                                            _FIGURE_GRID_MAX, bose=bose)
            for m_prime, value in enumerate(values):
                rows.append([m, m_prime, float(value)])
        return FigureTable(figure_id, header, rows)
    if figure_id == 5:
        header = ["m"]
        for w_col in _FIGURE_RECAPTURE_W:
            header += [f"p0m_exact_w{w_col}", f"p0m_poisson_w{w_col}"]
        rows = []
        for m in range(_FIGURE_SECTION_MAX + 1):
            row: list[float] = [m]
            for w_col in _FIGURE_RECAPTURE_W:
                spec = TransferSpec(n, m, w_col / n)
                exact = float(transfer_probabilities(spec, 0, 0, bose=True)[0])
                poisson = recapture_probability(RareEventSpec(float(w_col), m))
                row += [exact, poisson]
            rows.append(row)
        return FigureTable(5, header, rows)
    header = ["m", "p_1_from_m", "p_m_from_m"]
    rows = []
    for m in range(_FIGURE_SECTION_MAX + 1):
        spec = TransferSpec(n, m, p)
        into_one = float(transfer_probabilities(spec, 1, 1, bose=True)[0])
        unchanged = float(transfer_probabilities(spec, m, m, bose=True)[0])
        rows.append([m, into_one, unchanged])
    return FigureTable(6, header, rows)


def _cmd_figure(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    table = _figure_table(args.id, args.n, args.w)
    _write(table.to_csv(), args.out)
    return 0


def build_plan(epsilon: float, xi: float, eta: float, n: int, m: int,
               w: float) -> PlanReport:
    """Plan the pulse: duration reaching p = w/n, plus the predicted
    bosonic final-count distribution and the empty-mode headline."""
    params = TwoLevelParams(epsilon=epsilon, xi=xi, eta=eta)
    target_p = w / n
    tau = solve_pulse_duration(params, target_p)
    achieved_p = evolve(params, tau).p
    dist = bose_exact(TransferSpec(n, m, achieved_p))
    cumulative = np.cumsum(dist.probs)
    cutoff = int(np.searchsorted(cumulative, 1.0 - 1e-12)) + 1
    cutoff = max(cutoff, m + 1)
    predicted = {mp: float(dist.probs[mp]) for mp in range(min(cutoff, n + 1))}
    tail = max(0.0, 1.0 - float(cumulative[min(cutoff, n + 1) - 1]))
    meta = {"epsilon": epsilon, "xi": xi, "eta": eta,
            "predicted_tail_bound": tail}
    return PlanReport(tau=tau, achieved_p=achieved_p, w=n * achieved_p,
                      n=n, m=m, headline=float(dist.probs[0]),
                      predicted=predicted, meta=meta)


def _cmd_plan(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    report = build_plan(args.epsilon, args.xi, args.eta, args.n, args.m, args.w)
    _write(report.to_json(), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    results = run_verification(args.max_n)
    if not results:
        sys.stdout.write(f"0 checks run (max-N={args.max_n})\n")
        return 0
    failed = False
    for check in results:
        status = "PASS" if check.passed else "FAIL"
        line = (f"{status} {check.name}: max deviation {check.max_deviation:.3e} "
                f"(tolerance {check.tolerance:.1e}, {check.cases} cases)")
        if not check.passed:
            line += f" worst at {check.worst_case}"
            failed = True
        sys.stdout.write(line + "\n")
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosecount",
        description="Occupation-transfer statistics for two-level particles: "
                    "Poissonian versus bosonic counting.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", help="compute a transfer distribution")
    dist.add_argument("--model", choices=("classical", "bose"), required=True)
    dist.add_argument("--N", dest="n", type=int, help="total particle count")
    dist.add_argument("--m", type=int, default=0,
                      help="initial marked-mode count (default 0)")
    group = dist.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=float, help="one-particle switch probability")
    group.add_argument("--w", type=float, help="mean event number (p = w/N)")
    dist.add_argument("--limit", action="store_true",
                      help="rare-event limit instead of the exact finite-N law")
    dist.add_argument("--mmax", type=int,
                      help="explicit support cap for the bose limit")
    dist.add_argument("--format", choices=("csv", "json"), default="csv")
    dist.add_argument("--out", help="output path (default stdout)")
    dist.set_defaults(func=_cmd_dist)

    figure = sub.add_parser("figure", help="emit a figure-reproduction table")
    figure.add_argument("--id", type=int, choices=(3, 4, 5, 6), required=True)
    figure.add_argument("--N", dest="n", type=int, default=100000)
    figure.add_argument("--w", type=float, default=3.0)
    figure.add_argument("--out", help="output path (default stdout)")
    figure.set_defaults(func=_cmd_figure)

    plan = sub.add_parser("plan", help="plan the double-well transfer pulse")
    plan.add_argument("--epsilon", type=float, default=0.0)
    plan.add_argument("--xi", type=float, default=1.0)
    plan.add_argument("--eta", type=float, default=0.0)
    plan.add_argument("--N", dest="n", type=int, required=True)
    plan.add_argument("--m", type=int, default=0)
    plan.add_argument("--w", type=float, default=3.0)
    plan.add_argument("--out", help="output path (default stdout)")
    plan.set_defaults(func=_cmd_plan)

    verify = sub.add_parser("verify", help="run the oracle cross-check suite")
    verify.add_argument("--max-N", dest="max_n", type=int, default=8)
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (TargetUnreachable, NoCoupling, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
