"""Command line interface.

Group labels, classes and base points are passed as JSON, either inline or as a
path to a file.  Exit status: 0 on success, 1 on a domain error (or a refuted
verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import hitchin as hz
from . import moduli as mod
from . import verify as vf
from .errors import DomainError
from .torus import complex_from_json

CONFIG_ENV = "ELLHIGGS_CONFIG"


class UsageError(Exception):
    pass


@dataclass
class Config:
    model_n: int = 3
    seed: int = 42
    format: str = "json"
    cap: int = hz.DEFAULT_CAP

    def __post_init__(self):
        if self.model_n < 1:
            raise UsageError(f"model level must be at least 1, got {self.model_n}")
        if self.cap < 1:
            raise UsageError(f"size cap must be positive, got {self.cap}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, got {self.format!r}")


def load_config(args: argparse.Namespace, environ=os.environ) -> Config:
    values: dict = {}
    path = environ.get(CONFIG_ENV)
    if path:
        try:
            values = json.loads(Path(path).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed config {path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        unknown = set(values) - {"model_n", "seed", "format", "cap"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for key in ("model_n", "seed", "format"):
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    return Config(**values)


def read_json(arg: str, what: str):
    text = arg
    source = "argument"
    if not arg.lstrip().startswith(("{", "[")):
        p = Path(arg)
        if not p.is_file():
            raise UsageError(f"{what}: {arg!r} is neither inline JSON nor a readable file")
        text = p.read_text()
        source = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {what} ({source}): line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(value) -> str:
    return json.dumps(value, separators=(",", ":"))


def parse_base(label: mod.GroupLabel, data) -> hz.HitchinBasePoint:
    if isinstance(data, dict):
        if "t" not in data:
            raise DomainError("base point object needs a 't' list")
        data = data["t"]
    if not isinstance(data, list):
        raise DomainError("base point must be a list of t-values or an object with 't'")
    return hz.base_point(label, [complex_from_json(t) for t in data])


# subcommands


def cmd_descriptor(args, cfg, out):
    label = mod.label_from_json(read_json(args.group, "group"))
    desc = mod.descriptor(label, args.level)
    out.write(dumps(mod.descriptor_to_json(desc, args.verbose)) + "\n")


def cmd_canon(args, cfg, out):
    c = mod.class_from_json(read_json(args.cls, "class"))
    out.write(dumps(mod.class_to_json(c)) + "\n")


def cmd_isom(args, cfg, out):
    a = mod.class_from_json(read_json(args.a, "first class"))
    b = mod.class_from_json(read_json(args.b, "second class"))
    out.write(dumps(mod.isomorphic(a, b)) + "\n")


def cmd_singular(args, cfg, out):
    c = mod.class_from_json(read_json(args.cls, "class"))
    out.write(dumps(mod.is_singular(c)) + "\n")


def cmd_hitchin(args, cfg, out):
    c = mod.class_from_json(read_json(args.cls, "class"))
    out.write(dumps(hz.base_to_json(hz.hitchin_map(c))) + "\n")


def cmd_fiber(args, cfg, out):
    label = mod.label_from_json(read_json(args.group, "group"))
    b = parse_base(label, read_json(args.base, "base point"))
    desc = hz.fiber_descriptor(label, b)
    count = hz.fiber_count_model(label, b, cfg.model_n, cfg.cap)
    result = {
        "pattern": hz.pattern_to_json(hz.spectral_pattern(b)),
        "descriptor": hz.fiber_to_json(desc),
        "model": {"N": count.n, "enumerated": count.enumerated, "predicted": count.predicted},
    }
    out.write(dumps(result) + "\n")


def cmd_components(args, cfg, out):
    labels = mod.list_components(args.family, args.n)
    rows = []
    for lab in labels:
        rows.append(
            {
                "group": mod.label_to_json(lab),
                "block": None if lab.block is None else {"k": lab.block[0], "a": lab.block[1]},
                "copies": lab.copies,
            }
        )
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "n", "k", "a", "w2", "d", "copies"])
        for lab in labels:
            w.writerow([lab.family, lab.n, _blank(lab.k), _blank(lab.a), _blank(lab.w2), lab.d, lab.copies])
    else:
        out.write(dumps(rows) + "\n")


def _blank(v):
    return "" if v is None else v


def _emit_reports(reports, cfg, out) -> int:
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["statement", "parameters", "verdict", "counts", "seed"])
        for r in reports:
            counts = "" if r.counts is None else f"{r.counts[0]}/{r.counts[1]}"
            w.writerow([r.statement, dumps(r.parameters), r.verdict, counts, _blank(r.seed)])
    else:
        for r in reports:
            out.write(dumps(r.to_json()) + "\n")
    return 0 if all(r.confirmed for r in reports) else 1


def cmd_verify(args, cfg, out):
    if args.suite == "freeness":
        reports = vf.freeness_sweep(args.h_max, args.l_max, args.w_max)
    elif args.suite == "quotient-iso":
        if args.h is None or args.N is None:
            raise UsageError("quotient-iso needs --h and --N")
        try:
            weights = [int(w) for w in args.weights.split(",") if w.strip()]
        except ValueError:
            raise UsageError(f"--weights must be comma-separated integers, got {args.weights!r}") from None
        reports = [vf.check_quotient_iso(args.h, weights, args.N)]
    else:
        reports = vf.check_diagrams(cfg.seed, args.samples)
    return _emit_reports(reports, cfg, out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (overrides config)")
    common.add_argument("--model-n", dest="model_n", type=int, default=None, help="finite model level N")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="output format")

    parser = argparse.ArgumentParser(prog="ellhiggs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("descriptor", parents=[common], help="quotient description of a moduli space")
    p.add_argument("group")
    p.add_argument("--level", choices=("higgs", "bundle"), default="higgs")
    p.add_argument("--verbose", action="store_true", help="include the quotient presentation")
    p.set_defaults(func=cmd_descriptor)

    p = sub.add_parser("canon", parents=[common], help="canonical form of a class")
    p.add_argument("cls", metavar="class")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("isom", parents=[common], help="are two classes the same point")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_isom)

    p = sub.add_parser("singular", parents=[common], help="does a class lie in the singular locus")
    p.add_argument("cls", metavar="class")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("hitchin", parents=[common], help="Hitchin base point and characteristic polynomial")
    p.add_argument("cls", metavar="class")
    p.set_defaults(func=cmd_hitchin)

    p = sub.add_parser("fiber", parents=[common], help="Hitchin fiber description and finite-model count")
    p.add_argument("group")
    p.add_argument("base")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("components", parents=[common], help="connected components for O(n) or SO(n)")
    p.add_argument("family", choices=("O", "SO"))
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=("freeness", "quotient-iso", "diagrams"))
    p.add_argument("--h-max", dest="h_max", type=int, default=6)
    p.add_argument("--l-max", dest="l_max", type=int, default=3)
    p.add_argument("--w-max", dest="w_max", type=int, default=6)
    p.add_argument("--h", type=int)
    p.add_argument("--weights", default="")
    p.add_argument("--N", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args)
        status = args.func(args, cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
