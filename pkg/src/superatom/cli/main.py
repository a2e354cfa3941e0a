"""``superatom`` command line: run, validate and list scenario configurations.

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O failure.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from pathlib import Path

from .. import __version__
from ..exceptions import ConfigError, InputError, SuperatomError
from .config import SCENARIOS, default_config, validate_config
from .scenarios import run_scenario
from .svg import render

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4
OUT_ENV = "SUPERATOM_OUT"


def format_value(value):
    """Locale-independent, deterministic text for one CSV cell."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool,)):
        return "true" if value else "false"
    if isinstance(value, int) or (hasattr(value, "dtype") and value.dtype.kind in "iu"):
        return str(int(value))
    return format(float(value), ".12g")


def table_text(table):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


def write_bundle(config, bundle, out_dir):
    """Write CSVs, SVGs and ``manifest.txt`` into ``out_dir``; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files, written = [], []
    payloads = [(t.name, table_text(t)) for t in bundle.tables]
    payloads += [(name, render(plot)) for name, plot in bundle.plots.items()]
    for name, text in payloads:
        data = text.encode("utf-8")
        path = out_dir / name
        path.write_bytes(data)
        files.append({"name": name, "sha256": hashlib.sha256(data).hexdigest()})
        written.append(path)
    manifest = {
        "artifact": "superatom",
        "version": __version__,
        "scenario": config.scenario,
        "config": config.resolved(),
        "files": files,
        "summary": _jsonable(bundle.summary),
        "notes": [
            "trap presets and the atom-number schedule are calibrated stand-ins, not measured values",
            "frequencies in the config are in Hz; the model works in rad/s",
        ],
    }
    path = out_dir / "manifest.txt"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(path)
    return written


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    return validate_config(text)


def _report_config_error(exc, path):
    print(f"error: invalid configuration in {path}", file=sys.stderr)
    for loc, msg in exc.problems:
        print(f"  {loc}: {msg}", file=sys.stderr)


def cmd_run(args):
    config = _load(args.config)
    out_dir = args.out or os.environ.get(OUT_ENV) or config.output_dir
    try:
        bundle = run_scenario(config)
    except InputError as exc:
        raise ConfigError([(f"scenario {config.scenario}", str(exc))]) from exc
    except (SuperatomError, ArithmeticError) as exc:
        raise _ScenarioFailure(f"scenario {config.scenario}: {type(exc).__name__}: {exc}") from exc
    paths = write_bundle(config, bundle, out_dir)
    if not args.quiet:
        for p in paths:
            print(p)
    return EXIT_OK


def cmd_validate(args):
    config = _load(args.config)
    if not args.quiet:
        print(json.dumps(config.resolved(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_presets(args):
    print(json.dumps(default_config(args.scenario).resolved(), indent=2, sort_keys=True))
    return EXIT_OK


class _ScenarioFailure(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="superatom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the scenario named in a JSON config")
    run.add_argument("config")
    run.add_argument("--out", help="output directory (overrides the config's output_dir)")
    run.add_argument("--quiet", action="store_true", help="do not list written files")
    val = sub.add_parser("validate", help="check a config and print it fully resolved")
    val.add_argument("config")
    val.add_argument("--quiet", action="store_true")
    pre = sub.add_parser("presets", help="print the built-in defaults as a config document")
    pre.add_argument("--scenario", choices=SCENARIOS, default="fig2b")
    run.set_defaults(func=cmd_run)
    val.set_defaults(func=cmd_validate)
    pre.set_defaults(func=cmd_presets)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _report_config_error(exc, getattr(args, "config", "<defaults>"))
        return EXIT_CONFIG
    except _ScenarioFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
