# kummer_chow_verifier/cli.py
"""Command-line front end.

Commands: groups, cocycles, operators, periods, rank, all. Each prints one
report (JSON by default) and exits 0 when every check passes, 1 when any
check fails or crashes, 2 on invalid arguments.

JSON report schema::

    {
      "command": str,
      "parameters": {...},              # the validated RunSettings
      "health": "healthy" | "degraded" | "unhealthy",
      "checks": [{"name", "status", "witness", "details"}, ...],
      "wall_time": float,               # omitted with --deterministic
      "table": [{...}, ...]             # rank and all only
    }

Field elements inside witnesses and tables use the prefix grammar of
``serialize_field_element``. With ``--format csv`` the rank table is written
with the columns rho_label, bullet, first_component, second_component,
F1_index, F2_index, zeta_class; other commands write one name,status row per
check.
"""
import argparse
import csv
import io
import logging
import sys
import time
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from .checks import CheckResult, CheckSuite, Report, suite_health
from .config import CONFIG, RunSettings
from .errors import VerifierError
from .suite import root_suite
from .sub_checks.cocycles import cocycles_suite
from .sub_checks.diffop_engine import diffop_engine_suite
from .sub_checks.group_engine import group_engine_suite
from .sub_checks.period_numerics import period_numerics_suite
from .sub_checks.rank_certificate import rank_suite_for
from .sub_checks.rank_certificate.tools import canonical_images, lift_table, table_rows

logging.basicConfig(level=logging.INFO, format='%(asctime)s | %(name)s | %(levelname)s | %(message)s')
logger = logging.getLogger("verifier_cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMMANDS = {
    "groups": group_engine_suite,
    "cocycles": cocycles_suite,
    "operators": diffop_engine_suite,
    "periods": period_numerics_suite,
    "all": root_suite,
}

CSV_CHECK_COLUMNS = ["name", "status"]
CSV_TABLE_COLUMNS = ["rho_label", "bullet", "first_component", "second_component",
                     "F1_index", "F2_index", "zeta_class"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kummer-chow-verifier",
                                     description="Machine checks for the higher Chow cycles on the Kummer family.")
    parser.add_argument("command", choices=[*COMMANDS, "rank"])
    parser.add_argument("--seed", type=int, default=CONFIG["seed"])
    parser.add_argument("--tol-quadrature", type=float, default=CONFIG["tol_quadrature"])
    parser.add_argument("--tol-fd", type=float, default=CONFIG["tol_fd"])
    parser.add_argument("--fd-step", type=float, default=CONFIG["fd_step"])
    parser.add_argument("--points", type=int, default=CONFIG["points"])
    parser.add_argument("--samples", type=int, default=CONFIG["cocycle_samples"])
    parser.add_argument("--format", dest="output_format", choices=["json", "csv"], default="json")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--mode", choices=["table", "full-orbit", "canonical"], default="table",
                        help="rank only: which rank statement to certify")
    parser.add_argument("--quiet", action="store_true", help="log warnings and errors only")
    parser.add_argument("--corrupt-table", action="store_true", help="flip one entry of the action table")
    parser.add_argument("--deterministic", action="store_true", help="omit wall times from the report")
    return parser


def settings_from_args(args: argparse.Namespace) -> RunSettings:
    """Validate the flags; raises pydantic.ValidationError."""
    return RunSettings(
        seed=args.seed,
        points=args.points,
        samples=args.samples,
        tol_quadrature=args.tol_quadrature,
        tol_fd=args.tol_fd,
        fd_step=args.fd_step,
        output_format=args.output_format,
        out=args.out,
        mode=args.mode,
        corrupt_table=args.corrupt_table,
        deterministic=args.deterministic,
    )


def suite_for(command: str, settings: RunSettings) -> CheckSuite:
    if command == "rank":
        return rank_suite_for(settings.mode)
    return COMMANDS[command]


def rank_table(command: str, settings: RunSettings) -> Optional[List[Dict[str, object]]]:
    """The table attached to rank and all reports; None when it cannot be built."""
    if command not in ("rank", "all") or (command == "rank" and settings.mode == "full-orbit"):
        return None
    try:
        if command == "rank" and settings.mode == "canonical":
            return table_rows(canonical_images())
        return table_rows(lift_table())
    except VerifierError as e:
        logger.error(f"❌ Table not emitted: {e}")
        return None


def run_command(command: str, settings: RunSettings) -> Report:
    logger.info(f"🚀 Running {command} with seed {settings.seed}")
    start = time.perf_counter()
    results: List[CheckResult] = suite_for(command, settings).run(settings)
    table = rank_table(command, settings)
    elapsed = time.perf_counter() - start
    report = Report(
        command=command,
        parameters=settings.model_dump(mode="json", exclude={"out", "output_format"}),
        checks=results,
        health=suite_health(results),
        wall_time=None if settings.deterministic else round(elapsed, 3),
        table=table,
    )
    logger.info(f"📊 {command}: {sum(r.passed for r in results)}/{len(results)} checks passed, "
                f"health {report.health}")
    return report


def _csv_text(rows: Sequence[Dict[str, object]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def render(report: Report, output_format: str) -> str:
    if output_format == "json":
        return report.to_json() + "\n"
    if report.table is not None:
        return _csv_text(report.table, CSV_TABLE_COLUMNS)
    return _csv_text([r.model_dump() for r in report.checks], CSV_CHECK_COLUMNS)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    try:
        settings = settings_from_args(args)
    except ValidationError as e:
        logger.error(f"❌ Invalid arguments: {e.errors(include_url=False)}")
        return EXIT_USAGE

    report = run_command(args.command, settings)
    text = render(report, settings.output_format)
    if settings.out is not None:
        settings.out.write_text(text, encoding="utf-8")
        logger.info(f"✅ Report written to {settings.out}")
    else:
        sys.stdout.write(text)

    if report.passed:
        logger.info(f"✅ {args.command}: all checks passed")
        return EXIT_OK
    logger.error(f"❌ {args.command}: {len([r for r in report.checks if not r.passed])} checks did not pass")
    return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
