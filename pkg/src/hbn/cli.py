"""Command line front end.

Exit codes: 0 success, 1 violations found or a value-level refusal (reported
as a JSON error object), 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import classify as C
from . import core
from . import count as _count
from .core import BNDatum, HBNError, InvalidSplittingType, SplittingType
from .enumeration import (
    SweepDomain,
    classification_table,
    csv_cells,
    csv_header,
    default_jobs,
    enumerate_splitting_types,
    verify_sweep,
    PROPERTIES,
)

SUBCOMMANDS = ("classify", "count", "enum", "table", "verify")
FORMATS = ("json", "csv", "plain")


@dataclass(frozen=True)
class Request:
    subcommand: str
    g: Optional[int] = None
    e: Optional[tuple[int, ...]] = None
    p: tuple[int, ...] = ()
    sort: bool = False
    k: Optional[int] = None
    kmin: int = 2
    kmax: int = 5
    emin: int = -5
    emax: int = 5
    gslack: int = 4
    deg: Optional[int] = None
    limit: Optional[int] = None
    properties: tuple[str, ...] = ()
    format: str = "json"

    def to_argv(self) -> list[str]:
        """An argument vector that parses back to this request."""
        argv = [self.subcommand]
        if self.subcommand in ("classify", "count"):
            argv += ["--g", str(self.g), "--e=" + ",".join(map(str, self.e))]
            if self.p:
                argv += ["--p", *map(str, self.p)]
            if self.sort:
                argv.append("--sort")
        elif self.subcommand == "enum":
            argv += ["--k", str(self.k), "--emin", str(self.emin), "--emax", str(self.emax)]
            if self.deg is not None:
                argv += ["--deg", str(self.deg)]
        else:
            argv += ["--kmin", str(self.kmin), "--kmax", str(self.kmax)]
            argv += ["--emin", str(self.emin), "--emax", str(self.emax)]
            argv += ["--gslack", str(self.gslack)]
            if self.subcommand == "table" and self.p:
                argv += ["--p", *map(str, self.p)]
            if self.properties:
                argv += ["--property", *self.properties]
        if self.limit is not None and self.subcommand in ("enum", "table"):
            argv += ["--limit", str(self.limit)]
        argv += ["--format", self.format]
        return argv


def _parts(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not parts:
        raise argparse.ArgumentTypeError("empty splitting type")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hbn",
        description="Ampleness decisions and dependent-divisor counts for Brill-Noether splitting loci.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def fmt(sp, choices=FORMATS, default="json"):
        sp.add_argument("--format", choices=choices, default=default)

    for name in ("classify", "count"):
        sp = sub.add_parser(name)
        sp.add_argument("--g", type=int, required=True, help="genus")
        sp.add_argument("--e", type=_parts, required=True, help="splitting type, e.g. -2,0,1")
        sp.add_argument(
            "--p", type=int, nargs="+", required=(name == "count"), default=(),
            help="ampleness degree(s); classify defaults to every 0 <= p <= k-1",
        )
        sp.add_argument("--sort", action="store_true", help="sort the parts instead of rejecting")
        fmt(sp, ("json", "plain"))

    sp = sub.add_parser("enum", help="list splitting types")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--emin", type=int, required=True)
    sp.add_argument("--emax", type=int, required=True)
    sp.add_argument("--deg", type=int, default=None)
    sp.add_argument("--limit", type=int, default=None)
    fmt(sp)

    for name in ("table", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("--kmin", type=int, default=2)
        sp.add_argument("--kmax", type=int, default=5)
        sp.add_argument("--emin", type=int, default=-5)
        sp.add_argument("--emax", type=int, default=5)
        sp.add_argument("--gslack", type=int, default=4)
        if name == "table":
            sp.add_argument("--p", type=int, nargs="+", default=())
            sp.add_argument("--limit", type=int, default=None)
            fmt(sp, default="csv")
        else:
            sp.add_argument("--property", dest="properties", nargs="+", default=(),
                            choices=PROPERTIES, metavar="PROPERTY")
            fmt(sp, ("json", "plain"))
    return parser


_NEGATIVE_LIST = re.compile(r"^-\d[\d,\s-]*$")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse takes "-2,0,1" for an option flag; glue it to the preceding option
    out: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if (
            tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
            and "," in argv[i + 1] and _NEGATIVE_LIST.match(argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def parse_request(argv: Sequence[str]) -> Request:
    ns = build_parser().parse_args(_join_negative_values(list(argv)))
    fields = {k: v for k, v in vars(ns).items() if v is not None or k in ("deg", "limit")}
    for key in ("p", "properties"):
        if key in fields:
            fields[key] = tuple(fields[key])
    return Request(**fields)


# -- reports -----------------------------------------------------------------


def _error(kind: str, message: str) -> dict:
    return {"error": {"type": kind, "message": message}}


def _datum(req: Request) -> tuple[BNDatum, list[str]]:
    warnings = []
    if req.sort:
        e = SplittingType.normalized(req.e)
        if e.parts != tuple(req.e):
            warnings.append(f"parts reordered from {list(req.e)} to {list(e.parts)}")
    else:
        e = SplittingType(tuple(req.e))
    return BNDatum(req.g, e), warnings


def classify_report(d: BNDatum, ps: Optional[Sequence[int]] = None) -> dict:
    if ps is None or not ps:
        ps = range(d.k)
    nn = core.nonneg_parts(d.e)
    bpf = C.basepoint_free(d)
    rel, birat, sufficient, counts = [], [], [], []
    for p in ps:
        dec = C.rel_pva(d, p)
        rel.append({"p": p, "value": dec.value, "case": dec.to_dict()["case"]})
        b = C.birationally_rel_pva(d, p)
        birat.append({"p": p, "value": b.value, "case": b.to_dict()["case"]})
        sufficient.append({
            "p": p,
            "pva": C.pva_sufficient(d, p),
            "birational_pva": C.birat_pva_sufficient(d, p),
            "conjectured_pva": C.conjectured_pva(d, p),
        })
        if nn == p + 1:
            counts.append(_count.dependent_divisor_count(d, p).to_dict())
    return {
        "input": {"g": d.g, "e": list(d.e.parts)},
        "invariants": core.invariants(d),
        "decisions": {
            "bpf": {**bpf.to_dict(), "pullback_twist": bpf.pullback_twist},
            "birational_va": C.birationally_va(d).to_dict(),
            "va": C.very_ample(d).to_dict(),
            "rel_pva": rel,
            "birational_rel_pva": birat,
            "sufficient": sufficient,
            "counts": counts,
        },
    }


def count_report(d: BNDatum, ps: Sequence[int]) -> dict:
    return {
        "input": {"g": d.g, "e": list(d.e.parts)},
        "invariants": core.invariants(d),
        "counts": [_count.dependent_divisor_count(d, p).to_dict() for p in ps],
    }


def _plain(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            lines += _plain(val, f"{prefix}{key}." if prefix or key else key)
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for i, val in enumerate(obj):
            lines += _plain(val, f"{prefix}{i}.")
    else:
        if isinstance(obj, list):
            obj = ",".join(map(str, obj))
        elif obj is None:
            obj = "-"
        elif isinstance(obj, bool):
            obj = str(obj).lower()
        lines.append(f"{prefix.rstrip('.')}: {obj}")
    return lines


def _emit(obj: dict, fmt: str, out: TextIO):
    if fmt == "plain":
        out.write("\n".join(_plain(obj)) + "\n")
    else:
        out.write(json.dumps(obj, indent=2) + "\n")


def run(req: Request, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        if req.subcommand in ("classify", "count"):
            try:
                d, warnings = _datum(req)
            except InvalidSplittingType as exc:
                _emit(_error("InvalidSplittingType", str(exc)), req.format, out)
                return 2
            except core.InvalidDatum as exc:
                _emit(_error("InvalidDatum", str(exc)), req.format, out)
                return 2
            if req.subcommand == "classify":
                report = classify_report(d, req.p)
            else:
                report = count_report(d, req.p)
            if warnings:
                report["warnings"] = warnings
            _emit(report, req.format, out)
            return 0
        if req.subcommand == "enum":
            return _run_enum(req, out)
        domain = SweepDomain(req.kmin, req.kmax, req.emin, req.emax, req.gslack,
                             tuple(req.p) or None)
        if req.subcommand == "table":
            return _run_table(req, domain, out)
        report = verify_sweep(domain, req.properties or None, jobs=default_jobs())
        _emit(report.to_dict(), req.format, out)
        if not report.ok:
            err.write(f"{len(report.violations)} violation(s)\n")
        return 0 if report.ok else 1
    except HBNError as exc:
        _emit(_error(type(exc).__name__, str(exc)), req.format if req.format != "csv" else "json", out)
        return 1
    except ValueError as exc:
        _emit(_error("MalformedInput", str(exc)), "json", out)
        return 2


def _run_enum(req: Request, out: TextIO) -> int:
    stream = enumerate_splitting_types(req.k, req.emin, req.emax, req.deg)
    writer = csv.writer(out, lineterminator="\n") if req.format == "csv" else None
    if writer:
        writer.writerow([f"e{i}" for i in range(1, req.k + 1)])
    for n, e in enumerate(stream):
        if req.limit is not None and n >= req.limit:
            break
        if writer:
            writer.writerow(e.parts)
        elif req.format == "json":
            out.write(json.dumps(list(e.parts)) + "\n")
        else:
            out.write(str(e) + "\n")
    return 0


def _run_table(req: Request, domain: SweepDomain, out: TextIO) -> int:
    ps = domain.p_values if domain.p_values is not None else tuple(range(domain.k_max))
    writer = None
    if req.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(csv_header(domain.k_max, ps))
    for n, row in enumerate(classification_table(domain)):
        if req.limit is not None and n >= req.limit:
            break
        if writer:
            writer.writerow(csv_cells(row, domain.k_max, ps))
        elif req.format == "json":
            out.write(json.dumps(row.to_dict()) + "\n")
        else:
            out.write(" ".join(_plain(row.to_dict())) + "\n")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        req = parse_request(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(req)


if __name__ == "__main__":
    sys.exit(main())
