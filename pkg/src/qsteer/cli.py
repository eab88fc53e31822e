"""Command-line front end.

Subcommands: ``analyze`` a state file, regenerate the ``fig1``/``fig2``
sweep data, run the ``conjecture`` search, run the invariant ``suite``, or
print the ``counterexample`` regression numbers.  Exit codes: 0 success, 1
suite/invariant failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import experiments, serialize
from .ellipsoid import steering_ellipsoid
from .monogamy import volume_monogamy_report
from .states import StateValidationError, partial_trace

__all__ = ["build_parser", "main"]


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", help="input state file (JSON)")
    sub.add_argument("--output", help="output file; stdout when omitted")
    sub.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    sub.add_argument("--seed", type=int, default=experiments.DEFAULT_SEED, help="master seed")
    sub.add_argument("--samples", type=int, default=None, help="Monte-Carlo sample count")
    sub.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    sub.add_argument("--tol", type=float, default=1e-9, help="state-validation tolerance")
    sub.add_argument("--p", type=float, default=None, help="W-family weight in (0, 1)")
    sub.add_argument("--alpha", type=float, default=None, help="GHZ-family angle in (0, pi/2)")
    sub.add_argument("--beta", type=float, default=None, help="GHZ-family angle in (0, pi/2)")
    sub.add_argument("--theta", type=float, default=None, help="max-volume-family angle in [0, pi/2]")
    sub.add_argument("--epsilons", default=None, help="comma-separated isotropic noise strengths")
    sub.add_argument("--grid", type=int, default=None, help="sweep grid steps per axis")
    sub.add_argument(
        "--explore-mixed-4q",
        action="store_true",
        help="suite only: also probe the (conjectural) mixed 4-qubit bound, logging without failing",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsteer", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "steering ellipsoids and monogamy report for a state file"),
        ("fig1", "GHZ-family volume sweep over the (alpha, beta) grid"),
        ("fig2", "noisy W-family sweep over (p, epsilon)"),
        ("conjecture", "random search against the 4-qubit correlation bound"),
        ("suite", "run every module invariant over seeded random ensembles"),
        ("counterexample", "regression numbers for the monogamy counterexample"),
    ):
        _add_common_options(commands.add_parser(name, help=help_text))
    return parser


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(args, rows) -> None:
    if args.format == "csv":
        _write(args, serialize.rows_to_csv(rows))
    else:
        _write(args, serialize.dumps([dataclasses.asdict(row) for row in rows]))


def _cmd_analyze(args) -> int:
    if not args.input:
        print("error: analyze requires --input", file=sys.stderr)
        return 2
    state = serialize.load_state_file(args.input, tol=args.tol)
    hubs = (0, 1) if state.n_qubits == 2 else (0,)
    ellipsoids = []
    for hub in hubs:
        for steered in range(state.n_qubits):
            if steered == hub:
                continue
            if state.n_qubits == 2:
                ell = steering_ellipsoid(state, steering_qubit=hub)
            else:
                ell = steering_ellipsoid(partial_trace(state, [hub, steered]), steering_qubit=0)
            ellipsoids.append({"steering_qubit": hub, "steered_qubit": steered, **ell.to_dict()})
    monogamy_block = None
    if state.n_qubits >= 3:
        monogamy_block = volume_monogamy_report(state, hub=0).to_dict()
    if args.format == "csv":
        rows = []
        for entry in ellipsoids:
            row = {
                "steering_qubit": entry["steering_qubit"],
                "steered_qubit": entry["steered_qubit"],
                "volume": entry["volume"],
                "degenerate": entry["degenerate"],
            }
            row.update({f"center_{axis}": entry["center"][i] for i, axis in enumerate("xyz")})
            row.update({f"semiaxis_{i + 1}": entry["semiaxes"][i] for i in range(3)})
            if monogamy_block:
                row.update(
                    {
                        "sqrt_lhs": monogamy_block["sqrt_lhs"],
                        "two_thirds_lhs": monogamy_block["two_thirds_lhs"],
                        "n_bound": monogamy_block["n_bound"],
                        "mean_volume": monogamy_block["mean_volume"],
                    }
                )
            rows.append(row)
        _write(args, serialize.rows_to_csv(rows))
    else:
        _write(
            args,
            serialize.dumps(
                {"n_qubits": state.n_qubits, "ellipsoids": ellipsoids, "monogamy": monogamy_block}
            ),
        )
    return 0


def _cmd_fig1(args) -> int:
    rows = experiments.sweep_ghz_region(grid_steps=args.grid or 50)
    _emit_rows(args, rows)
    return 0


def _parse_epsilons(raw: str | None):
    if raw is None:
        return None
    try:
        return [float(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"--epsilons must be a comma-separated float list: {exc}") from exc


def _cmd_fig2(args) -> int:
    p_grid = None
    if args.grid is not None:
        p_grid = experiments._open_grid(args.grid, 1.0)
    if args.p is not None:
        p_grid = [args.p]
    rows = experiments.sweep_noisy_w(p_grid=p_grid, epsilons=_parse_epsilons(args.epsilons))
    _emit_rows(args, rows)
    return 0


def _cmd_conjecture(args) -> int:
    samples = 100_000 if args.samples is None else args.samples
    result = experiments.run_conjecture_test(samples, master_seed=args.seed, workers=args.workers)
    if args.format == "csv":
        row = {
            "samples": result.samples,
            "violations": result.violations,
            "max_lhs": result.max_lhs,
            "worst_state_seed": result.worst_state_seed,
            "near_miss_count": len(result.near_misses),
        }
        _write(args, serialize.rows_to_csv([row]))
    else:
        _write(args, serialize.dumps(result.to_dict()))
    print(
        f"conjecture: {result.samples} samples, {result.violations} violations, "
        f"max lhs {serialize.format_float(result.max_lhs)}",
        file=sys.stderr,
    )
    return 0


def _cmd_suite(args) -> int:
    samples = 10_000 if args.samples is None else args.samples
    report = experiments.run_property_suite(
        samples=samples,
        master_seed=args.seed,
        workers=args.workers,
        explore_mixed_4q=args.explore_mixed_4q,
    )
    if args.format == "csv":
        _write(args, serialize.rows_to_csv([r.to_dict() for r in report.results]))
    else:
        _write(args, serialize.dumps(report.to_dict()))
    for res in report.results:
        status = "PASS" if res.passed else ("NOTE" if res.exploratory else "FAIL")
        print(
            f"{status} {res.name}: {res.failures}/{res.samples} failures, "
            f"worst margin {serialize.format_float(res.worst_margin)}"
            + (f" ({res.error})" if res.error else ""),
            file=sys.stderr,
        )
    return 0 if report.passed else 1


def _cmd_counterexample(args) -> int:
    regression = experiments.counterexample_regression()
    if args.format == "csv":
        row = {
            "v_b_given_a": regression["volumes"][0],
            "v_c_given_a": regression["volumes"][1],
            "sqrt_lhs": regression["sqrt_lhs"],
            "two_thirds_lhs": regression["two_thirds_lhs"],
            "purified_sqrt_lhs": regression["purified_sqrt_lhs"],
        }
        _write(args, serialize.rows_to_csv([row]))
    else:
        _write(args, serialize.dumps(regression))
    print(
        f"sqrt_lhs = {serialize.format_float(regression['sqrt_lhs'])} > 1; "
        f"purified sqrt_lhs = {serialize.format_float(regression['purified_sqrt_lhs'])}",
        file=sys.stderr,
    )
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "fig1": _cmd_fig1,
    "fig2": _cmd_fig2,
    "conjecture": _cmd_conjecture,
    "suite": _cmd_suite,
    "counterexample": _cmd_counterexample,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (StateValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
