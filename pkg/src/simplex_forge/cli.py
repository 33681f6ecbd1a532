"""Command-line entry point: ``simplex-forge <command> [options]``.

The job document is read from stdin (or ``--input``); flags fill in or
override its fields.  Exit status is 0 for ok, 2 for infeasible input and 1
for any other error.
"""
import argparse
import json
import sys

from .errors import SimplexError, ValidationError
from .io import (COMMANDS, EXIT_ERROR, FORMATS, JobResult, export_off, job_from_dict,
                 result_to_json, run_job)
from .realization import UNITS


def _angles(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad angle list {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="simplex-forge",
        description="Realize simplices from facet volumes and run loop-space maps.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", "-i", help="job JSON file (default: stdin)")
    parser.add_argument("--output", "-o", help="output file (default: stdout)")
    parser.add_argument("--format", choices=FORMATS, help="output format; off needs dimension 3")
    parser.add_argument("--unit", choices=UNITS, help="length convention for check/realize")
    parser.add_argument("--seed", type=int, help="seed for the random command")
    parser.add_argument("--angles", type=_angles, help="dihedral angles a2,a3,... in radians")
    parser.add_argument("--dimension", "-n", type=int, help="dimension (random command)")
    parser.add_argument("--timing", action="store_true", help="add wall-clock seconds to diagnostics")
    return parser


def _read_document(args):
    if args.input:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    elif args.command == "random" and sys.stdin.isatty():
        raw = b""
    else:
        raw = sys.stdin.buffer.read()
    if not raw.strip():
        return {}
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"could not parse job: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("job document must be a JSON object")
    return doc


def _merge(doc, args):
    if doc.setdefault("command", args.command) != args.command:
        raise ValidationError(
            f"document command {doc['command']!r} does not match {args.command!r}")
    for key, value in (("format", args.format), ("unit", args.unit), ("seed", args.seed),
                       ("angles", args.angles), ("dimension", args.dimension)):
        if value is not None:
            doc[key] = value
    return doc


def _write(data, path):
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        job = job_from_dict(_merge(_read_document(args), args))
    except SimplexError as exc:
        result = JobResult("error", args.command, message=f"{type(exc).__name__}: {exc}")
        _write(result_to_json(result).encode(), args.output)
        print(f"simplex-forge: {exc}", file=sys.stderr)
        return EXIT_ERROR

    result = run_job(job, timing=args.timing)
    if result.status == "ok" and job.output_format == "off":
        try:
            data = export_off(result.realization)
        except SimplexError as exc:
            result = JobResult("error", job.command, message=f"{type(exc).__name__}: {exc}")
            data = result_to_json(result).encode()
    else:
        data = result_to_json(result).encode()
    _write(data, args.output)
    if result.message:
        print(f"simplex-forge: {result.message}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
