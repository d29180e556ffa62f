"""Command-line front end.

Exit status: 0 when every check passes (or the enumeration matches), 1 when
a check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .classify import (
    DEFAULT_MAX_RANK,
    SearchConfig,
    count_orbits,
    enumerate_picard_one,
    reference_catalog_for,
    supported_types,
    verify_against_catalog,
)
from .colored import (
    ampleness_checks,
    completeness_witness,
    picard_counts,
    picard_rank,
    validate_colored_fan,
)
from .exactlin import primitive_integer
from .rootsys import format_type_label, parse_type_label
from .scf import ScfError, document_datum, document_fan, document_from, parse_scf, print_scf
from .symmcheck import NotProjectiveError, is_smooth


class UsageError(Exception):
    pass


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = parse_scf(text)
    except ScfError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return doc


def _datum_and_fan(path: str, out: list[str]):
    doc = _load(path)
    try:
        datum = document_datum(doc)
        fan = document_fan(doc, datum)
    except ValueError as exc:
        out.append(f"invalid input: {exc}")
        return None, None
    return datum, fan


def _validity(datum, fan, out: list[str]) -> bool:
    if not fan.cones:
        out.append("fan: invalid: no cones")
        return False
    v = validate_colored_fan(datum, fan)
    out.append("fan: valid" if v else f"fan: invalid: {v}")
    return bool(v)


def cmd_check(args, out: list[str]) -> int:
    datum, fan = _datum_and_fan(args.file, out)
    if datum is None:
        return 1
    ok = _validity(datum, fan, out)
    for k, cc in enumerate(fan.maximal_cones, start=1):
        try:
            rep = is_smooth(datum, cc, debug=True)
            text = rep.describe()
            ok = ok and rep.smooth
        except NotProjectiveError as exc:
            text = f"not checked: {exc}"
            ok = False
        out.append(f"cone {k} {cc}: {text}")
    return 0 if ok else 1


def cmd_complete(args, out: list[str]) -> int:
    datum, fan = _datum_and_fan(args.file, out)
    if datum is None or not _validity(datum, fan, out):
        return 1
    w = completeness_witness(datum, fan)
    if w is None:
        out.append("complete")
        return 0
    out.append(f"not complete: the valuation cone contains {_vec(primitive_integer(w))} outside the fan")
    return 1


def cmd_picard(args, out: list[str]) -> int:
    datum, fan = _datum_and_fan(args.file, out)
    if datum is None or not _validity(datum, fan, out):
        return 1
    if completeness_witness(datum, fan) is not None:
        out.append("not complete: the Picard rank is only computed for complete fans")
        return 1
    r, m, l = picard_counts(datum, fan)
    out.append(f"omitted colors r = {r}, rays m = {m}, rank l = {l}")
    out.append(f"picard rank = {picard_rank(datum, fan)}")
    return 0


def _divisor_names(datum, fan) -> dict:
    names = {str(c): c for c in datum.colors}
    for k, ray in enumerate(fan.invariant_rays(datum), start=1):
        names[f"V{k}"] = primitive_integer(ray)
    return names


def cmd_ample(args, out: list[str]) -> int:
    datum, fan = _datum_and_fan(args.file, out)
    if datum is None or not _validity(datum, fan, out):
        return 1
    names = _divisor_names(datum, fan)
    for name, key in names.items():
        if name.startswith("V"):
            out.append(f"{name} = G-stable divisor of the ray {_vec(key)}")
    coeffs = {}
    for item in args.coeff or []:
        m = re.fullmatch(r"\s*([A-Za-z0-9:]+)\s*=\s*(-?\d+)\s*", item)
        if not m:
            raise UsageError(f"bad --coeff {item!r}; expected NAME=INT")
        if m.group(1) not in names:
            raise UsageError(f"unknown divisor {m.group(1)!r}; known: {', '.join(sorted(names))}")
        coeffs[names[m.group(1)]] = int(m.group(2))
    missing = [n for n, k in names.items() if k not in coeffs]
    if missing:
        raise UsageError("missing coefficients for " + ", ".join(sorted(missing)))
    try:
        checks = ampleness_checks(datum, fan, coeffs)
    except ValueError as exc:
        out.append(f"not decided: {exc}")
        return 1
    for c in checks:
        mark = "<" if c.holds else ">="
        out.append(f"cone {c.cone_index + 1}: l({_vec(c.generator)}) = {c.linear_value} {mark} {c.phi_value}")
    uses_all = fan.colors == set(datum.colors)
    if not uses_all:
        out.append("some color of the open orbit lies in no cone of the fan")
    ample = uses_all and all(c.holds for c in checks)
    out.append("ample" if ample else "not ample")
    return 0 if ample else 1


def _count_line(t: str, entries) -> str:
    n, k = len(entries), count_orbits(entries)
    return f"{t}: {n} {'entry' if n == 1 else 'entries'}, {k} {'orbit' if k == 1 else 'orbits'}"


def _type(label: str) -> str:
    try:
        return format_type_label(parse_type_label(label))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _config(args) -> SearchConfig:
    return SearchConfig(bound=args.bound, prune=not args.no_prune)


def cmd_enumerate(args, out: list[str]) -> int:
    t = _type(args.type)
    entries = enumerate_picard_one(t, _config(args))
    for e in entries:
        out.append(e.describe())
    out.append(_count_line(t, entries))
    return 0


def cmd_catalog(args, out: list[str]) -> int:
    t = _type(args.type)
    entries = reference_catalog_for(t)
    for e in entries:
        if args.scf:
            doc = document_from(e.datum, e.fan.maximal_cones, [f"# {t}: {e.label}"])
            out.append(print_scf(doc).rstrip("\n"))
        else:
            out.append(e.describe())
    out.append(_count_line(t, entries))
    return 0


def cmd_verify(args, out: list[str]) -> int:
    if args.all == (args.type is not None):
        raise UsageError("verify needs exactly one of --type or --all")
    types = supported_types(args.max_rank) if args.all else [_type(args.type)]
    ok = True
    for t in types:
        rep = verify_against_catalog(t, _config(args))
        out.append(rep.details() if not rep.match else rep.summary())
        ok = ok and rep.match
    if args.all:
        out.append("all types match" if ok else "some types do not match")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smoothsym", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("check", cmd_check, "validate a fan and decide smoothness of each maximal cone"),
        ("complete", cmd_complete, "decide completeness"),
        ("picard", cmd_picard, "Picard rank of a complete fan"),
        ("ample", cmd_ample, "decide ampleness of a divisor"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
        sp.set_defaults(func=fn)
        if name == "ample":
            sp.add_argument("--coeff", action="append", metavar="NAME=INT", help="D<i>[:slot] or V<k>")

    def search_flags(sp):
        sp.add_argument("--bound", type=int, default=None, help="coefficient bound (default rank + 2)")
        sp.add_argument("--no-prune", action="store_true", help="search the full coefficient grid")

    sp = sub.add_parser("enumerate", help="enumerate Picard-one varieties of a type")
    sp.add_argument("--type", required=True)
    search_flags(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("catalog", help="print the reference catalog of a type")
    sp.add_argument("--type", required=True)
    sp.add_argument("--scf", action="store_true", help="print entries in the .scf format")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", help="compare the enumeration with the catalog")
    sp.add_argument("--type")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)
    search_flags(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run a command line; returns (exit status, report text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), ""
    out: list[str] = []
    try:
        status = args.func(args, out)
    except UsageError as exc:
        return 2, f"error: {exc}\n"
    return status, "\n".join(out) + ("\n" if out else "")


def main(argv: Sequence[str] | None = None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stderr if status == 2 else sys.stdout
        stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
