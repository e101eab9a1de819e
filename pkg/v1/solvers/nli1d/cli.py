"""
Command-line front end.

1. solve: solution CSV at every DOF, optionally all four kernels, a gnuplot script and a matrix dump
2. study: horizon, mesh and jump convergence tables (CSV, JSON and Markdown sidecars)
3. verify: built-in numerical checks printed as PASS/FAIL lines

Exit codes: 0 success, 1 verification failure, 2 configuration error, 3 numerical failure.
"""

import argparse
import os
import sys
from typing import Dict, List, Optional, Sequence

from dotenv import load_dotenv

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import (
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    ConfigurationError,
)
from nli1d.shared_libraries.error_middleware import handle_command_errors
from nli1d.shared_libraries.logging_config import LogLevel, configure_logging, get_logger
from nli1d.shared_libraries.types import JumpMode, KernelFamily, RunConfig, StudyKind, VerifyTarget
from nli1d.analysis.studies import delta_study, h_study, jump_study
from nli1d.analysis.verifiers import run_verification
from nli1d.local_reference import local_exact
from nli1d.pipeline import NonlocalSolution, solve_config
from nli1d.tools.config_store import dump_run_config, load_run_config, parse_length
from nli1d.tools.report_writer import solution_rows, write_csv, write_matrix_dump, write_plot_script, write_study_report

logger = get_logger(__name__)

_OVERRIDE_KEYS = ("kappa1", "kappa2", "delta1", "delta2", "h", "h_fine", "kernel", "f")
_SWEEP_KINDS = (StudyKind.DELTA, StudyKind.H, StudyKind.JUMP_H, StudyKind.JUMP_DELTA)


# --- Argument types ---

def _length(text: str) -> float:
    try:
        value = parse_length(text)
    except ConfigurationError as e:
        raise argparse.ArgumentTypeError(str(e)) from e
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive length, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


# --- Shared helpers ---

def _load_config(args: argparse.Namespace) -> RunConfig:
    overrides = {key: getattr(args, key) for key in _OVERRIDE_KEYS}
    return load_run_config(path=args.config, overrides=overrides)


def _plot_title(config: RunConfig) -> str:
    return (f"kappa=({config.kappa1:g}, {config.kappa2:g}) "
            f"delta=({config.delta1:g}, {config.delta2:g}) h={config.h:g}")


def parse_sweep(kind: StudyKind, items: Optional[Sequence[str]]) -> list:
    """Sweep values from the command line; None means the default sweep of the study."""
    if items is None:
        return list({
            StudyKind.DELTA: constants.DELTA_SWEEP,
            StudyKind.H: constants.H_SWEEP,
            StudyKind.JUMP_H: constants.JUMP_H_SWEEP,
            StudyKind.JUMP_DELTA: constants.JUMP_DELTA_SWEEP,
        }[kind])
    if not items:
        raise ConfigurationError("--sweep was given without values", user_message="The sweep list must not be empty.")
    if kind in (StudyKind.DELTA, StudyKind.JUMP_DELTA):
        pairs = []
        for item in items:
            first, sep, second = item.partition(":")
            if not sep:
                raise ConfigurationError(
                    f"sweep item {item!r} is not a pair",
                    user_message=f"Horizon sweeps take 'delta1:delta2' pairs, got {item!r}.",
                )
            pairs.append((parse_length(first), parse_length(second)))
        return pairs
    return [parse_length(item) for item in items]


# --- Commands ---

@handle_command_errors
def cmd_solve(args: argparse.Namespace) -> int:
    config = _load_config(args)
    if args.dump_config:
        sys.stdout.write(dump_run_config(config))
        return EXIT_OK

    families = list(KernelFamily) if args.all_kernels else [config.kernel]
    solutions: Dict[KernelFamily, NonlocalSolution] = {
        family: solve_config(
            config.model_copy(update={"kernel": family}),
            keep_matrix=bool(args.matrix_dump) and family == config.kernel,
        )
        for family in families
    }

    x = solutions[families[0]].mesh.dof_coordinates
    local = local_exact(config.material(), config.source(), config.a, config.x_gamma, config.b)(x)
    if args.all_kernels:
        header = ("x",) + tuple(f"u_{family.value}" for family in families) + ("u_local_exact",)
    else:
        header = constants.SOLUTION_CSV_HEADER
    columns = [solutions[family].coefficients for family in families] + [local]
    write_csv(solution_rows(x, columns), header, path=args.out, stream=None if args.out else sys.stdout)

    if args.plot_script:
        series = [(f"u_{family.value}", f"nonlocal {family.value}", x, solutions[family].coefficients, False)
                  for family in families]
        series.append(("u_local", "local", x, local, True))
        xrange = None
        if args.plot_zoom:
            xrange = (config.x_gamma - args.plot_zoom, config.x_gamma + args.plot_zoom)
        write_plot_script(args.plot_script, _plot_title(config), series, xrange)

    if args.matrix_dump:
        write_matrix_dump(args.matrix_dump, solutions[config.kernel].stiffness)
    return EXIT_OK


@handle_command_errors
def cmd_study(args: argparse.Namespace) -> int:
    kind = StudyKind(args.kind)
    config = _load_config(args)
    if args.dump_config:
        sys.stdout.write(dump_run_config(config))
        return EXIT_OK

    sweep = parse_sweep(kind, args.sweep)
    options = {"workers": args.workers, "keep_going": args.keep_going}
    if kind == StudyKind.DELTA:
        report = delta_study(config, sweep, **options)
    elif kind == StudyKind.H:
        report = h_study(config, sweep, **options)
    elif kind == StudyKind.JUMP_H:
        report = jump_study(JumpMode.FIXED_DELTA_VARY_H, config, sweep, **options)
    else:
        report = jump_study(JumpMode.FIXED_H_VARY_DELTA, config, sweep, **options)

    out = args.out or f"study_{kind.value}_{config.kernel.value}.csv"
    written = write_study_report(report, out, html=args.html)
    for path in written.values():
        print(path)

    failed = sum(1 for row in report.rows if row.error)
    if failed:
        logger.warning(f"{failed} of {len(report.rows)} study rows failed and were left empty")
    return EXIT_OK


@handle_command_errors
def cmd_verify(args: argparse.Namespace) -> int:
    results = run_verification(VerifyTarget(args.target))
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        line = f"{status} {result.name}: measured={result.measured:.3e} threshold={result.threshold:.3e}"
        print(f"{line} ({result.detail})" if result.detail else line)
    return EXIT_OK if all(result.passed for result in results) else EXIT_VERIFICATION_FAILED


# --- Parser ---

def _logging_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--log-dir", default=None,
                        help=f"Directory for a rotating log file (default: ${constants.ENV_LOG_DIR})")
    parent.add_argument("--log-json", action="store_true",
                        help=f"Write the log file as one JSON object per line (or set ${constants.ENV_LOG_JSON}=1)")
    return parent


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


def _config_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", default=None, help="JSON file with RunConfig fields")
    parent.add_argument("--kappa1", type=float, default=None)
    parent.add_argument("--kappa2", type=float, default=None)
    parent.add_argument("--delta1", type=_length, default=None, help="Horizon of the left material (e.g. 2^-5)")
    parent.add_argument("--delta2", type=_length, default=None, help="Horizon of the right material")
    parent.add_argument("--h", type=_length, default=None, help="Mesh size")
    parent.add_argument("--h-fine", dest="h_fine", type=_length, default=None, help="Reference mesh size of h studies")
    parent.add_argument("--kernel", choices=[family.value for family in KernelFamily], default=None)
    parent.add_argument("--f", type=float, default=None, help="Constant source term")
    parent.add_argument("--out", default=None, help="Output CSV path")
    parent.add_argument("--dump-config", action="store_true", help="Print the resolved configuration as JSON and exit")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nli1d", description="One-dimensional nonlocal interface solver")
    subparsers = parser.add_subparsers(dest="command", required=True)
    logging_parent, config_parent = _logging_parent(), _config_parent()

    solve = subparsers.add_parser("solve", parents=[config_parent, logging_parent],
                                  help="Solve one configuration and write the solution CSV")
    solve.add_argument("--all-kernels", action="store_true", help="Solve with k1..k4 and write one column each")
    solve.add_argument("--plot-script", default=None, help="Write a gnuplot script with the solution data")
    solve.add_argument("--plot-zoom", type=_length, default=None,
                       help="Half width of the plotted window around the interface")
    solve.add_argument("--matrix-dump", default=None, help="Write the stiffness matrix in coordinate format")
    solve.set_defaults(handler=cmd_solve)

    study = subparsers.add_parser("study", parents=[config_parent, logging_parent], help="Run a convergence study")
    study.add_argument("kind", choices=[kind.value for kind in _SWEEP_KINDS])
    study.add_argument("--sweep", nargs="*", default=None,
                       help="Mesh sizes, or 'delta1:delta2' pairs for horizon sweeps")
    study.add_argument("--workers", type=_positive_int, default=1, help="Process pool size for the study rows")
    study.add_argument("--keep-going", action="store_true", help="Record failed rows instead of stopping")
    study.add_argument("--html", action="store_true", help="Also write an HTML summary")
    study.set_defaults(handler=cmd_study)

    verify = subparsers.add_parser("verify", parents=[logging_parent], help="Run built-in verification checks")
    verify.add_argument("target", choices=[target.value for target in VerifyTarget])
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(
        console_level=LogLevel.from_name(os.getenv(constants.ENV_LOG_LEVEL), LogLevel.WARNING),
        log_dir=args.log_dir or os.getenv(constants.ENV_LOG_DIR),
        enable_json_logging=args.log_json or _env_flag(constants.ENV_LOG_JSON),
    )
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
