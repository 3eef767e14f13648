"""Command-line pipeline: parse -> validate -> normalize -> assign -> rules.

Subcommands pick how far the pipeline runs and what gets serialized:

* ``normalize``  emits the normalized model (JSON or RDF/XML);
* ``assign``     emits the model annotated with membership values (JSON);
* ``rules``      emits identifying fuzzy rules (JSON or text).

Primary output goes to stdout unless --out is given; diagnostics go to
stderr; --report writes a machine-readable run report.  All file writes are
atomic (temp file + rename).  Exit codes: 0 ok, 1 parse failure, 2 validation
errors under --strict, 3 unsupported construct under --strict, 4 element
budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time

from . import emit, ingest, membership, rules as rulegen
from .errors import (
    DuplicateIdentifier,
    FixpointOverflow,
    MalformedDocument,
    UnsupportedConstruct,
)
from .normalize import DEFAULT_BOUND, normalize

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_UNSUPPORTED = 3
EXIT_OVERFLOW = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzonto",
        description="Normalize OWL subset ontologies, assign membership values, "
        "and generate identifying fuzzy rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
        p.add_argument("source", help="input document (RDF/XML or model JSON)")
        p.add_argument(
            "--format",
            choices=formats,
            default="json",
            help="output format (default: json)",
        )
        p.add_argument(
            "--strict",
            action="store_true",
            help="fail on unsupported constructs and validation errors",
        )
        p.add_argument("--trace", action="store_true", help="record rewrite traces")
        p.add_argument("--report", metavar="PATH", help="write a run report to PATH")
        p.add_argument(
            "--max-elements",
            type=int,
            default=DEFAULT_BOUND,
            metavar="N",
            help=f"element budget for normalization (default {DEFAULT_BOUND})",
        )
        p.add_argument("--out", metavar="PATH", help="write output to PATH, not stdout")

    common(sub.add_parser("normalize", help="emit the normalized model"), ("json", "rdfxml"))

    p_assign = sub.add_parser("assign", help="emit the membership-annotated model")
    common(p_assign, ("json",))
    p_assign.add_argument(
        "--asserted-only",
        action="store_true",
        help="count only asserted elements as determiners",
    )

    p_rules = sub.add_parser("rules", help="emit identifying fuzzy rules")
    common(p_rules, ("json", "text"))
    p_rules.add_argument(
        "--asserted-only",
        action="store_true",
        help="count only asserted elements as determiners",
    )
    return parser


def _sniff_format(data: bytes) -> str:
    return "rdfxml" if data.lstrip()[:1] == b"<" else "json"


def _print_diagnostics(diagnostics) -> None:
    for d in diagnostics:
        print(d.render(), file=sys.stderr)


def write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fuzzonto-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_output(data: bytes, out_path: str | None) -> None:
    if out_path:
        write_atomic(out_path, data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def run_pipeline(args: list[str]) -> int:
    options = _build_parser().parse_args(args)
    timings: dict[str, float] = {}

    try:
        with open(options.source, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        print(f"error[io]: cannot read {options.source}: {exc}", file=sys.stderr)
        return EXIT_PARSE

    started = time.perf_counter()
    try:
        model = ingest.parse_document(data, _sniff_format(data), strict=options.strict)
    except UnsupportedConstruct as exc:
        print(f"error[unsupported-construct]: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (MalformedDocument, DuplicateIdentifier) as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return EXIT_PARSE
    timings["ingest"] = time.perf_counter() - started

    diagnostics = list(model.parse_warnings) + ingest.validate_model(model)
    _print_diagnostics(diagnostics)
    if options.strict and any(d.severity == "error" for d in diagnostics):
        return EXIT_VALIDATION

    started = time.perf_counter()
    try:
        result = normalize(model, bound=options.max_elements)
    except FixpointOverflow as exc:
        print(f"error[fixpoint-overflow]: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    timings["normalize"] = time.perf_counter() - started
    _print_diagnostics(result.warnings)
    diagnostics += list(result.warnings)

    asserted_only = getattr(options, "asserted_only", False)
    annotated = None
    rule_list = None
    if options.command in ("assign", "rules"):
        started = time.perf_counter()
        annotated = membership.assign_all(result.model, asserted_only=asserted_only)
        timings["membership"] = time.perf_counter() - started
    if options.command == "rules":
        started = time.perf_counter()
        rule_list = rulegen.generate_rules(annotated)
        violations = rulegen.check_consistency(rule_list, annotated)
        _print_diagnostics(violations)
        diagnostics += violations
        timings["rules"] = time.perf_counter() - started

    if options.command == "normalize":
        if options.format == "rdfxml":
            output = emit.emit_normalized_rdf(result.model)
        else:
            output = emit.emit_json(result.model)
    elif options.command == "assign":
        output = emit.annotated_to_json(annotated)
    else:
        if options.format == "text":
            output = emit.rules_to_text(rule_list).encode("utf-8")
        else:
            output = emit.rules_to_json(rule_list)
    _emit_output(output, options.out)

    if options.trace and not options.report:
        sys.stderr.buffer.write(emit.dump_json(emit.traces_to_obj(result.traces)))
    if options.report:
        report = _build_report(options, model, result, diagnostics, timings)
        write_atomic(options.report, emit.dump_json(report))
    return EXIT_OK


def _build_report(options, model, result, diagnostics, timings) -> dict:
    report = {
        "schema": ingest.SCHEMA_VERSION,
        "command": options.command,
        "phases": list(timings),
        "warnings": [
            {
                "code": d.code,
                "severity": d.severity,
                "message": d.message,
                "location": d.location,
            }
            for d in diagnostics
        ],
        "counts": {"before": model.counts(), "after": result.model.counts()},
        "rewrites": result.tally,
        "passes": result.passes,
        "timings_ms": {k: round(v * 1000.0, 3) for k, v in timings.items()},
    }
    if options.trace:
        report["traces"] = emit.traces_to_obj(result.traces)
    return report


def main(argv: list[str] | None = None) -> int:
    return run_pipeline(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
