"""
Command Line Interface

Reproducible runs of the engine with JSON result files.

Usage:
    broccoli compute --p2-degree 3 --real 8 --seed 7
    broccoli enumerate --p2-degree 2 --real 5 --seed 3 --list-curves
    broccoli verify relations --samples 1000 --seed 1
    broccoli verify invariance --p2-degree 3 --real 4 --complex 2 --seeds 1,2,3
    broccoli verify properties --p2-degree 3 --real 6 --complex 1
    broccoli oracle kontsevich --max-degree 5
    broccoli oracle welschinger --p2-degree 3

Every result file holds {"manifest": ..., "result": ...}. Exit codes:
0 success, 1 a verification contract failed, 2 usage or configuration error.
"""

from pathlib import Path
from typing import Optional, Sequence
import argparse
import json
import logging
import sys
import time

from app.config import configure_logging, get_settings
from app.models.schemas import (
    EnumerationReportSchema,
    InvariantResultSchema,
    RunManifest,
)
from app.services.curve_model import Degree
from app.services.enumeration import Config, enumerate_through, generic_configuration
from app.services.invariants import InvariantKind, compute_invariant
from app.services.verification import (
    RELATIONS,
    check_curve_properties,
    fuzz_relation,
    invariance_harness,
    kontsevich_N,
    welschinger_total,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_USAGE = 2


# --- Argument Parsing ---

def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a comma-separated list of integers, got {text!r}")


def _add_degree_flags(parser: argparse.ArgumentParser, with_counts: bool = True) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--p2-degree", type=int, help="Plane degree d: d ends each of (-1,0), (0,-1), (1,1)")
    source.add_argument("--degree-file", type=Path, help="JSON file {\"ends\": [[x, y], ...], \"fixed\": [...]}")
    parser.add_argument("--fixed", type=_int_list, default=None, help="Fixed end labels, e.g. 1,4")
    if with_counts:
        parser.add_argument("--real", type=int, required=True, help="Number of real markings r")
        parser.add_argument("--complex", type=int, default=0, help="Number of complex markings s")
        parser.add_argument(
            "--config", "--config-file", dest="config_file", type=Path,
            help="Explicit configuration JSON (overrides --seed)",
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Seed for configuration draws")
    common.add_argument("--out", type=Path, help="Write the JSON result file here")
    common.add_argument("--threads", type=int, default=None, help="Worker processes for multi-seed runs")
    common.add_argument("--json", action="store_true", help="Print the JSON result instead of a summary")
    common.add_argument("--log-level", default=None, help="Logging level (default from BROCCOLI_LOG_LEVEL)")

    parser = argparse.ArgumentParser(
        prog="broccoli",
        description="Refined broccoli, descendant and Severi invariants of tropical curves",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", parents=[common], help="Compute an invariant")
    _add_degree_flags(compute)
    compute.add_argument(
        "--invariant",
        choices=[kind.value for kind in InvariantKind],
        default=InvariantKind.REFINED_BROCCOLI.value,
    )

    enumerate_cmd = commands.add_parser("enumerate", parents=[common], help="List curves through a configuration")
    _add_degree_flags(enumerate_cmd)
    enumerate_cmd.add_argument("--list-curves", action="store_true", help="Include every curve")

    verify = commands.add_parser("verify", help="Run a verifier")
    checks = verify.add_subparsers(dest="check", required=True)

    relations = checks.add_parser("relations", parents=[common], help="Fuzz the wall-crossing relations")
    relations.add_argument("--relation", choices=sorted(RELATIONS) + ["all"], default="all")
    relations.add_argument("--samples", type=int, default=None)
    relations.add_argument("--max-entry", type=int, default=None)

    invariance = checks.add_parser("invariance", parents=[common], help="Compare invariants across seeds")
    _add_degree_flags(invariance)
    invariance.add_argument("--seeds", type=_int_list, required=True, help="Comma-separated seeds")
    invariance.add_argument(
        "--invariant",
        choices=[kind.value for kind in InvariantKind],
        default=InvariantKind.REFINED_BROCCOLI.value,
    )

    properties = checks.add_parser("properties", parents=[common], help="Check per-curve laws")
    _add_degree_flags(properties)

    oracle = commands.add_parser("oracle", help="Independent numeric oracles")
    oracles = oracle.add_subparsers(dest="oracle", required=True)
    kontsevich = oracles.add_parser("kontsevich", parents=[common], help="Classical rational curve counts")
    kontsevich.add_argument("--max-degree", type=int, default=4)
    welschinger = oracles.add_parser("welschinger", parents=[common], help="Sum of real multiplicities")
    welschinger.add_argument("--p2-degree", type=int, required=True)

    return parser


# --- Helpers ---

def _resolve_degree(args: argparse.Namespace) -> Degree:
    if args.p2_degree is not None:
        return Degree.projective_plane(args.p2_degree, frozenset(args.fixed or ()))
    try:
        payload = json.loads(args.degree_file.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"Cannot read degree file {args.degree_file}: {exc}") from exc
    degree = Degree.from_dict(payload)
    return degree.with_fixed(args.fixed) if args.fixed is not None else degree


def _resolve_config(args: argparse.Namespace, degree: Degree):
    """Explicit configuration from --config, or a generic one drawn from --seed."""
    if getattr(args, "config_file", None) is not None:
        try:
            cfg = Config.from_dict(json.loads(args.config_file.read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"Cannot read configuration file {args.config_file}: {exc}") from exc
        return cfg, enumerate_through(degree, args.real, args.complex, cfg)
    return generic_configuration(
        degree, args.real, args.complex, args.seed, **get_settings().draw_options()
    )


def _flags(args: argparse.Namespace) -> dict:
    return {
        key: (str(value) if isinstance(value, Path) else value)
        for key, value in sorted(vars(args).items())
        if key not in {"out", "json", "log_level", "threads"}
    }


def _emit(args: argparse.Namespace, command: str, inputs: dict, seeds: list[int], result, summary: str, started: float) -> None:
    manifest = RunManifest.build(
        command=command,
        flags=_flags(args),
        seeds=seeds,
        inputs=inputs,
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    document = {"manifest": manifest.model_dump(mode="json"), "result": result}
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    if args.out is not None:
        args.out.write_text(text)
        logger.info(f"Result written to {args.out}")
    print(text if args.json else summary, end="" if args.json else "\n")


# --- Commands ---

def cmd_compute(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    degree = _resolve_degree(args)
    cfg, report = _resolve_config(args, degree)
    kind = InvariantKind(args.invariant)
    seeds = [] if args.config_file is not None else [args.seed]
    result = compute_invariant(kind, degree, args.real, args.complex, cfg, report, tuple(seeds))
    payload = InvariantResultSchema.from_result(result).model_dump(mode="json")
    inputs = {"degree": degree.to_dict(), "config": cfg.to_dict(), "invariant": kind.value}
    _emit(args, "compute", inputs, seeds, payload, str(result.value), started)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    degree = _resolve_degree(args)
    cfg, report = _resolve_config(args, degree)
    payload = EnumerationReportSchema.from_report(report, cfg, degree.fixed, args.list_curves).model_dump(
        mode="json", by_alias=True
    )
    lines = [f"{len(report.curves)} curves ({report.labeled_count} labeled) through the configuration"]
    if args.list_curves:
        for i, curve in enumerate(payload["curves"]):
            lines.append(f"  [{i}] orbit={curve['orbit']} multiplicity={curve['multiplicity']['text']}")
    inputs = {"degree": degree.to_dict(), "config": cfg.to_dict()}
    _emit(args, "enumerate", inputs, [args.seed], payload, "\n".join(lines), started)
    return EXIT_OK


def cmd_verify_relations(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    settings = get_settings()
    samples = args.samples or settings.relation_samples
    max_entry = args.max_entry or settings.relation_max_entry
    names = sorted(RELATIONS) if args.relation == "all" else [args.relation]
    reports = [fuzz_relation(name, samples, max_entry, args.seed) for name in names]
    summary = "\n".join(
        f"Relation {r.relation}: {r.samples} samples, {len(r.violations)} violations, "
        f"{r.skipped} skipped-degenerate"
        for r in reports
    )
    inputs = {"relations": names, "samples": samples, "max_entry": max_entry}
    _emit(args, "verify relations", inputs, [args.seed], [r.to_dict() for r in reports], summary, started)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_CONTRACT


def cmd_verify_invariance(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    settings = get_settings()
    degree = _resolve_degree(args)
    report = invariance_harness(
        degree,
        args.real,
        args.complex,
        args.seeds,
        kind=InvariantKind(args.invariant),
        workers=args.threads or settings.workers,
        **settings.draw_options(),
    )
    if report.consistent:
        summary = f"consistent across {len(args.seeds)} seeds: {report.value}"
    else:
        a, b = report.mismatch
        summary = (
            f"MISMATCH: seed {args.seeds[a]} gives {report.results[a].value}, "
            f"seed {args.seeds[b]} gives {report.results[b].value}"
        )
    inputs = {"degree": degree.to_dict(), "r": args.real, "s": args.complex, "invariant": args.invariant}
    _emit(args, "verify invariance", inputs, list(args.seeds), report.to_dict(), summary, started)
    return EXIT_OK if report.consistent else EXIT_CONTRACT


def cmd_verify_properties(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    degree = _resolve_degree(args)
    cfg, report = _resolve_config(args, degree)
    found = check_curve_properties(report, degree.fixed)
    summary = f"{found.curves} curves checked, {len(found.violations)} violations"
    if found.violations:
        summary += "\n" + "\n".join(f"  {v}" for v in found.violations)
    inputs = {"degree": degree.to_dict(), "config": cfg.to_dict()}
    _emit(args, "verify properties", inputs, [args.seed], found.to_dict(), summary, started)
    return EXIT_OK if found.ok else EXIT_CONTRACT


def cmd_oracle_kontsevich(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    values = [kontsevich_N(d) for d in range(1, args.max_degree + 1)]
    payload = {"oracle": "kontsevich", "values": {str(d): str(v) for d, v in enumerate(values, start=1)}}
    _emit(args, "oracle kontsevich", {"max_degree": args.max_degree}, [], payload, ",".join(map(str, values)), started)
    return EXIT_OK


def cmd_oracle_welschinger(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    degree = Degree.projective_plane(args.p2_degree)
    r = 3 * args.p2_degree - 1
    cfg, report = generic_configuration(degree, r, 0, args.seed, **get_settings().draw_options())
    value = welschinger_total(degree, r, cfg, report)
    payload = {"oracle": "welschinger", "values": {str(args.p2_degree): str(value)}}
    inputs = {"degree": degree.to_dict(), "config": cfg.to_dict()}
    _emit(args, "oracle welschinger", inputs, [args.seed], payload, str(value), started)
    return EXIT_OK


HANDLERS = {
    ("compute", None): cmd_compute,
    ("enumerate", None): cmd_enumerate,
    ("verify", "relations"): cmd_verify_relations,
    ("verify", "invariance"): cmd_verify_invariance,
    ("verify", "properties"): cmd_verify_properties,
    ("oracle", "kontsevich"): cmd_oracle_kontsevich,
    ("oracle", "welschinger"): cmd_oracle_welschinger,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    sub = getattr(args, "check", None) or getattr(args, "oracle", None)
    handler = HANDLERS[(args.command, sub)]
    try:
        return handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
