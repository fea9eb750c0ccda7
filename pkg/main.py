"""Command-line interface for measure-valued urn simulations.

Subcommands:
    simulate  run replicates and write the recorded statistics as CSV
    couple    run urns and their lifts on shared randomness, report JSON
    compare   two-sample KS test of a statistic on an urn and its lift
    models    list the built-in models

Exit codes: 0 ok, 2 configuration error, 3 error during a run,
4 broken coupling.
"""

import argparse
import json
import logging
import os
import sys

from measures.errors import ConfigError, CouplingBroken
from models.registry import describe_models
from converters.config import build_spec, build_statistics, load_config, parse_config, with_overrides
from converters.export import open_output, write_json, write_trajectories, write_values
from simulation.lift import check_couplable, coupled_runs, distributional_compare, lift_spec
from simulation.montecarlo import monte_carlo, simulate_replicates
from simulation.statistics import Final
from stats.goodness import KS_MIN_SAMPLES

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_COUPLING = 4

THREADS_ENV = "URNLIFT_THREADS"
DEFAULT_ALPHA = 0.01
DEFAULT_TOL = 1e-9
DEFAULT_SEEDS = 100

logger = logging.getLogger(__name__)


def default_threads() -> int:
    """Worker count from URNLIFT_THREADS, 1 when unset or invalid."""
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urnlift",
        description="Simulate measure-valued Polya urns and check their derandomized lifts.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py simulate --model eggenberger_polya --params '{"a": 1, "w": [1, 1]}' --steps 2
  python main.py couple --model friedman_random --params '{"p": 0.5}' --steps 200 --seeds 100
  python main.py compare --model friedman_random --params '{"p": 0.3}' --steps 50 --reps 5000 \\
      --stat '{"name": "fraction", "test_set": {"colours": [0]}}'
  python main.py models
""",
    )
    logging_parent = argparse.ArgumentParser(add_help=False)
    logging_parent.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    run_parent = argparse.ArgumentParser(add_help=False, parents=[logging_parent])
    run_parent.add_argument("--config", help="JSON run configuration")
    run_parent.add_argument("--model", help="Built-in model name")
    run_parent.add_argument("--params", help="Model parameters as a JSON object")
    run_parent.add_argument("--steps", type=int, help="Steps per run (overrides config)")
    run_parent.add_argument("--seed", type=int, help="Stream seed (overrides config)")
    run_parent.add_argument("--stat", action="append",
                            help="Statistic name or JSON object; repeat for several (overrides config)")
    run_parent.add_argument("--threads", type=_positive_int, default=default_threads(),
                            help=f"Worker processes (default: ${THREADS_ENV} or 1)")
    run_parent.add_argument("--out", help="Output path (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", parents=[run_parent], help="Run replicates, write CSV")
    simulate.add_argument("--reps", type=_positive_int, help="Replicates (overrides config)")
    simulate.add_argument("--pad-stopped", action="store_true",
                          help="Keep writing rows after an urn has stopped")
    simulate.add_argument("--final", action="store_true",
                          help="Write only the first statistic at the last step, one row per replicate")

    couple = sub.add_parser("couple", parents=[run_parent], help="Coupled runs of an urn and its lift")
    couple.add_argument("--seeds", type=_positive_int, default=DEFAULT_SEEDS,
                        help=f"Number of seeds, starting at --seed (default: {DEFAULT_SEEDS})")
    couple.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help=f"Projection tolerance (default: {DEFAULT_TOL})")

    compare = sub.add_parser("compare", parents=[run_parent], help="KS comparison with the lift")
    compare.add_argument("--reps", type=_positive_int, help="Replicates per side (overrides config)")
    compare.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                         help=f"Significance level (default: {DEFAULT_ALPHA})")
    compare.add_argument("--against", choices=("lift", "self"), default="lift",
                         help="Compare with the lifted urn or with the urn itself (default: lift)")

    sub.add_parser("models", parents=[logging_parent], help="List built-in models")
    return parser


def _parse_stat(text: str):
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--stat is not valid JSON: {exc}") from None
    return text


def load_run_config(args):
    """UrnConfig from --config or --model/--params, with flag overrides."""
    if args.config and args.model:
        raise ConfigError("Give either --config or --model, not both")
    if args.config:
        config = load_config(args.config)
    elif args.model:
        try:
            params = json.loads(args.params) if args.params else {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--params is not valid JSON: {exc}") from None
        config = parse_config({"model": args.model, "params": params})
    else:
        raise ConfigError("Give --config or --model")
    stats = [_parse_stat(s) for s in args.stat] if args.stat else None
    return with_overrides(config, steps=args.steps, replicates=getattr(args, "reps", None),
                          seed=args.seed, stats=stats)


def _prepare(args):
    config = load_run_config(args)
    spec = build_spec(config)
    statistics = build_statistics(config, spec.space)
    for statistic in statistics:
        statistic(spec.x0)
    if args.command == "couple":
        check_couplable(spec)
    if args.command == "compare":
        if config.replicates < KS_MIN_SAMPLES:
            raise ConfigError(f"compare needs at least {KS_MIN_SAMPLES} replicates, got {config.replicates}")
        if args.against == "lift":
            lift_spec(spec)
    return config, spec, statistics


def cmd_simulate(args, config, spec, statistics) -> int:
    with open_output(args.out) as out:
        if args.final:
            values = monte_carlo(spec, config.steps, config.replicates, Final(statistics[0]),
                                 config.seed, args.threads)
            write_values(values, out)
        else:
            trajectories = simulate_replicates(spec, config.steps, config.replicates, config.seed,
                                               statistics, args.threads)
            write_trajectories(trajectories, out, args.pad_stopped)
    return EXIT_OK


def cmd_couple(args, config, spec, statistics) -> int:
    report = coupled_runs(spec, config.steps, args.seeds, args.tol,
                          first_seed=config.seed, parallelism=args.threads)
    with open_output(args.out) as out:
        write_json(report, out)
    return EXIT_OK if report["pass"] else EXIT_COUPLING


def cmd_compare(args, config, spec, statistics) -> int:
    against = lift_spec(spec) if args.against == "lift" else spec
    result = distributional_compare(spec, config.steps, config.replicates, Final(statistics[0]),
                                    args.alpha, config.seed, against, args.threads)
    logger.info("%s against %s: %s", spec.name, args.against, "pass" if result.passed else "fail")
    with open_output(args.out) as out:
        write_json(result.to_dict(), out)
    return EXIT_OK


def cmd_models(args) -> int:
    for name, summary in describe_models():
        print(f"{name:28s} {summary}")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "couple": cmd_couple,
    "compare": cmd_compare,
}


def _report(exc) -> str:
    step = getattr(exc, "step", None)
    suffix = f" (step {step})" if step is not None and not isinstance(exc, CouplingBroken) else ""
    return f"error: {exc}{suffix}"


def main(argv=None) -> int:
    """Run the CLI and return its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "models":
        return cmd_models(args)
    try:
        config, spec, statistics = _prepare(args)
    except ValueError as exc:
        print(_report(exc), file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args, config, spec, statistics)
    except CouplingBroken as exc:
        print(_report(exc), file=sys.stderr)
        return EXIT_COUPLING
    except ValueError as exc:
        print(_report(exc), file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
