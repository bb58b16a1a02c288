"""Command line entry point ``bds``.

Every subcommand maps to one operation family.  Reports are JSON objects
carrying the tool version, the spec digest and the knob values; series
commands can also write CSV.  Exit codes: 0 success, 2 invalid input or a
non-canonical spec where one is required, 3 budget exhausted (partial
results are still written and flagged).

A run can also be described by a config file (``bds run config.json``)::

    {"command": "entropy", "spec": "golden.json",
     "knobs": {"n_max": 24}, "out": "bracket.csv", "format": "csv"}
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import core, decomposition, extender, language, periodic
from .errors import BDSError, BudgetExceeded, InputError, NonCanonicalError

log = logging.getLogger("bdshift")

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3

# knob name -> (type, minimum)
_KNOBS = {
    "n_max": (int, 1), "max_nodes": (int, 1), "classes": (str, None),
    "words": (list, None), "M": (int, 0), "horizon": (int, 1), "n": (int, 1),
    "cylinders": (int, 0), "v": (str, None), "w": (str, None), "radius": (int, 0),
    "zero_pad": (bool, None), "length": (int, 1), "inner": (str, None),
    "inner_alpha": (bool, None), "canonicalize": (int, 1), "threads": (int, 1),
}

COMMANDS = {
    "validate": set(),
    "count": {"n_max", "max_nodes", "classes"},
    "entropy": {"n_max", "max_nodes"},
    "decompose": {"words"},
    "pad-g": {"words", "M"},
    "sync-check": {"M", "horizon"},
    "periodic": {"n", "horizon"},
    "mme": {"n", "cylinders"},
    "certify": set(),
    "extender": {"v", "w", "radius", "zero_pad"},
    "canonicalize": {"length"},
    "contain": {"inner", "inner_alpha", "n_max"},
}
_GLOBAL_KNOBS = {"canonicalize", "threads"}


@dataclass
class ExperimentConfig:
    command: str
    spec: str
    knobs: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"
    timestamp: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise InputError(f"unknown format {self.format!r}")
        allowed = COMMANDS[self.command] | _GLOBAL_KNOBS
        for key, value in self.knobs.items():
            if key not in allowed:
                raise InputError(f"knob {key!r} is not accepted by {self.command}")
            kind, minimum = _KNOBS[key]
            if value is None:
                continue
            if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
                raise InputError(f"knob {key!r} must be an integer")
            if minimum is not None and value < minimum:
                raise InputError(f"knob {key!r} must be >= {minimum}")

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        data = json.loads(Path(path).read_text())
        unknown = set(data) - {"command", "spec", "knobs", "out", "format", "timestamp"}
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        base = Path(path).parent
        spec = data.get("spec")
        if spec is None:
            raise InputError("config needs 'spec'")
        if not Path(spec).is_absolute():
            spec = str(base / spec)
        return cls(data.get("command", ""), spec, dict(data.get("knobs", {})),
                   data.get("out"), data.get("format", "json"), bool(data.get("timestamp", False)))

    def knob(self, name, default=None):
        value = self.knobs.get(name)
        return default if value is None else value


def _fmt(x) -> str:
    return core.format_fraction(x)


def _series_csv(n_max, counts, bracket=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "count_L", "count_B", "count_G", "upper_bound", "lower_bound"])
    for n in range(1, n_max + 1):
        row = [n]
        for cls in ("L", "B", "G"):
            s = counts.get(cls)
            row.append(s[n] if s is not None and n <= s.n_max else "")
        if bracket is not None and n <= len(bracket.upper_series):
            row += [repr(bracket.upper_series[n - 1]), repr(bracket.lower_series[n - 1])]
        else:
            row += ["", ""]
        writer.writerow(row)
    return buf.getvalue()


def _need_canonical(spec: core.ShiftSpec, cfg: ExperimentConfig) -> core.ShiftSpec:
    length = cfg.knob("canonicalize")
    if length:
        fn = core.canonicalize(spec, length)
        return core.ShiftSpec(fn, name=spec.name)
    if not spec.is_canonical:
        raise NonCanonicalError("spec is not canonical; rerun with --canonicalize N", report=spec.report)
    return spec


# ----------------------------------------------------------------------------
# command handlers: (spec, cfg) -> (result dict, csv text or None)


def _cmd_validate(spec, cfg):
    rep = spec.report
    return {"canonical": rep.ok, "report": rep.to_dict(), "max_letter": spec.max_letter,
            "alpha": _fmt(core.limiting_gradient(spec))}, None


def _cmd_count(spec, cfg):
    n_max = cfg.knob("n_max", 12)
    classes = tuple(cfg.knob("classes", "L,B,G").replace(" ", "").split(","))
    if any(c not in language.CLASSES for c in classes):
        raise InputError("classes must be drawn from L, B, G")
    if set(classes) & {"B", "G"}:
        spec = _need_canonical(spec, cfg)
    counts = language.census(spec, n_max, classes, max_nodes=cfg.knob("max_nodes"),
                             workers=cfg.knob("threads"))
    return {"n_max": n_max, "series": {c: s.to_dict() for c, s in counts.items()}}, \
        _series_csv(n_max, counts)


def _cmd_entropy(spec, cfg):
    spec = _need_canonical(spec, cfg)
    n_max = cfg.knob("n_max", 16)
    counts = language.census(spec, n_max, ("L", "B", "G"), max_nodes=cfg.knob("max_nodes"),
                             workers=cfg.knob("threads"))
    bracket = language.bracket_from_counts(counts["L"], counts["G"])
    B = counts["B"]
    h_b = max((math.log(B[n]) / n for n in range(1, n_max + 1) if B[n] > 0), default=0.0)
    result = {"bracket": bracket.to_dict(), "h_B_estimate": h_b,
              "series": {c: s.to_dict() for c, s in counts.items()}}
    return result, _series_csv(n_max, counts, bracket)


def _words_knob(cfg):
    words = cfg.knob("words")
    if not words:
        raise InputError("at least one --word is required")
    return [core.as_word(w) for w in words]


def _cmd_decompose(spec, cfg):
    spec = _need_canonical(spec, cfg)
    return {"decompositions": [dict(z=str(z), **decomposition.decompose(spec, z).to_dict())
                               for z in _words_knob(cfg)]}, None


def _cmd_pad_g(spec, cfg):
    spec = _need_canonical(spec, cfg)
    M = cfg.knob("M", 0)
    out = []
    for z in _words_knob(cfg):
        padded = decomposition.pad_to_G(spec, z, M)
        out.append({"z": str(z), "tau": decomposition.tau(spec, M), "padded": str(padded)})
    return {"M": M, "padded": out}, None


def _cmd_sync_check(spec, cfg):
    report = decomposition.sync_check(spec, cfg.knob("M", 0), cfg.knob("horizon", 8))
    return report.to_dict(), None


def _cmd_periodic(spec, cfg):
    n = cfg.knob("n", 8)
    per = periodic.enumerate_per(spec, n, cfg.knob("horizon"))
    return {
        "n": n, "per_count": str(per.per_count),
        "fix_counts": {str(k): str(per.fix_count(k)) for k in range(1, n + 1)},
        "orbits": [{"word": str(o.primitive_word), "least_period": o.least_period,
                    "certification": o.certification.to_dict()} for o in per.orbits],
    }, None


def _cmd_mme(spec, cfg):
    spec = _need_canonical(spec, cfg)
    n = cfg.knob("n", 12)
    k = min(cfg.knob("cylinders", 1), n)
    mu = periodic.empirical_measure(spec, n, max(k, 1))
    diag = periodic.mme_diagnostics(spec, mu)
    return {"measure": mu.to_dict(), "diagnostics": diag.to_dict()}, None


def _cmd_certify(spec, cfg):
    spec = _need_canonical(spec, cfg)
    return periodic.certificate(spec).to_dict(), None


def _cmd_extender(spec, cfg):
    v, w = cfg.knob("v"), cfg.knob("w")
    if v is None or w is None:
        raise InputError("--v and --w are required")
    L = cfg.knob("radius", 6)
    if cfg.knob("zero_pad", False):
        verdict = extender.zero_pad_containment(spec, v, w, L)
    else:
        verdict = extender.extender_subset(spec, v, w, L)
    return verdict.to_dict(), None


def _cmd_canonicalize(spec, cfg):
    fn = core.canonicalize(spec, cfg.knob("length", 8))
    return {"spec": fn.to_dict(), "report": core.validate_canonical(fn).to_dict()}, None


def _cmd_contain(spec, cfg):
    n_max = cfg.knob("n_max", 10)
    if cfg.knob("inner_alpha", False):
        inner = core.build_x_alpha(core.limiting_gradient(spec))
    elif cfg.knob("inner"):
        inner = core.load_spec(cfg.knob("inner"))
    else:
        raise InputError("give --inner PATH or --inner-alpha")
    witness = core.containment_witness(inner, spec, n_max)
    return {"inner": inner.to_dict(), "n_max": n_max, "contained": witness is None,
            "witness": None if witness is None else str(witness)}, None


_HANDLERS = {
    "validate": _cmd_validate, "count": _cmd_count, "entropy": _cmd_entropy,
    "decompose": _cmd_decompose, "pad-g": _cmd_pad_g, "sync-check": _cmd_sync_check,
    "periodic": _cmd_periodic, "mme": _cmd_mme, "certify": _cmd_certify,
    "extender": _cmd_extender, "canonicalize": _cmd_canonicalize, "contain": _cmd_contain,
}


def _envelope(cfg, spec, result, partial=False, error=None) -> dict:
    report = {
        "tool": "bdshift", "version": __version__, "command": cfg.command,
        "spec_hash": spec.digest() if spec is not None else None,
        "knobs": {k: v for k, v in sorted(cfg.knobs.items()) if v is not None},
        "partial": partial, "result": result,
    }
    if error is not None:
        report["error"] = error
    if cfg.timestamp:
        report["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return report


def _emit(cfg, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def run(cfg: ExperimentConfig) -> int:
    """Execute one configured command; returns the process exit status."""
    spec = None
    try:
        spec = core.load_spec(cfg.spec)
        result, csv_text = _HANDLERS[cfg.command](spec, cfg)
    except BudgetExceeded as exc:
        partial = exc.partial
        if isinstance(partial, dict):
            partial = {c: s.to_dict() for c, s in partial.items()}
        elif hasattr(partial, "to_dict"):
            partial = partial.to_dict()
        _emit(cfg, json.dumps(_envelope(cfg, spec, partial, True, str(exc)), indent=2, sort_keys=True) + "\n")
        log.error("%s", exc)
        return EXIT_BUDGET
    except NonCanonicalError as exc:
        report = exc.report.to_dict() if exc.report is not None else None
        _emit(cfg, json.dumps(_envelope(cfg, spec, {"validation": report}, error=str(exc)),
                              indent=2, sort_keys=True) + "\n")
        log.error("%s", exc)
        return EXIT_INVALID
    except (BDSError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    if cfg.format == "csv":
        if csv_text is None:
            log.error("command %s has no CSV output", cfg.command)
            return EXIT_INVALID
        _emit(cfg, csv_text)
    else:
        _emit(cfg, json.dumps(_envelope(cfg, spec, result), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bds", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"bds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--spec", required=True, help="shift-spec JSON file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--timestamp", action="store_true", help="embed a UTC timestamp")
        p.add_argument("--threads", type=int, help="worker threads (default: $BDS_THREADS or 1)")
        p.add_argument("--canonicalize", type=int, metavar="N",
                       help="canonicalize to length N before commands that need it")
        return p

    add("validate", "check the canonical-function axioms")
    p = add("count", "exact counts of L_n, B_n, G_n")
    p.add_argument("--n-max", dest="n_max", type=int, default=12)
    p.add_argument("--classes", default="L,B,G")
    p.add_argument("--max-nodes", dest="max_nodes", type=int)
    p = add("entropy", "entropy bracket and count series")
    p.add_argument("--n-max", dest="n_max", type=int, default=16)
    p.add_argument("--max-nodes", dest="max_nodes", type=int)
    p = add("decompose", "B·G·B factorisation of words")
    p.add_argument("--word", dest="words", action="append", default=[])
    p = add("pad-g", "pad words of G(M) into G with zeros")
    p.add_argument("--word", dest="words", action="append", default=[])
    p.add_argument("--M", dest="M", type=int, default=0)
    p = add("sync-check", "search for a synchronisation counterexample for 0^M")
    p.add_argument("--M", dest="M", type=int, default=1)
    p.add_argument("--horizon", type=int, default=8)
    p = add("periodic", "certified primitive orbits of period <= n")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--horizon", type=int)
    p = add("mme", "uniform measure on Per(n) and its diagnostics")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--cylinders", type=int, default=1)
    add("certify", "sufficient intrinsic-ergodicity test")
    p = add("extender", "finite-radius extender-set containment")
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--zero-pad", dest="zero_pad", action="store_true",
                   help="compare E(v) with E(0^|v| w 0^|v|)")
    p = add("canonicalize", "canonical function agreeing up to a length")
    p.add_argument("--length", type=int, default=8)
    p = add("contain", "language containment of another shift")
    p.add_argument("--inner", help="inner shift-spec JSON")
    p.add_argument("--inner-alpha", dest="inner_alpha", action="store_true",
                   help="use floor(n * alpha_f) of the outer spec as the inner shift")
    p.add_argument("--n-max", dest="n_max", type=int, default=10)

    r = sub.add_parser("run", help="execute a JSON experiment config")
    r.add_argument("config")
    return parser


def config_from_args(args) -> ExperimentConfig:
    knobs = {k: v for k, v in vars(args).items()
             if k in COMMANDS[args.command] | _GLOBAL_KNOBS
             and v is not None and v is not False and v != []}
    return ExperimentConfig(args.command, args.spec, knobs, args.out, args.format, args.timestamp)


def main(argv=None) -> int:
    logging.basicConfig(format="bds: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig.from_file(args.config) if args.command == "run" else config_from_args(args)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
