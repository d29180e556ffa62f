"""The ``.scf`` text format for colored fans.

A file is line oriented::

    # comment lines
    rootsystem B2
    lattice root            # or: weight, or: basis + row lines
    hermitian false
    exceptional 2           # optional
    fiber 1 2               # optional, default fiber size is 1
    cone
    ray coroot 1
    ray vec -1 0
    colors 1
    end

``lattice basis`` is followed by ``row`` lines listing a basis of chi.
Coordinates are exact rationals ``p/q`` in the realization used by
:mod:`smoothsym.rootsys`.  Comments before the first statement are kept
and reprinted; other comments are dropped by the canonical printer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .colored import ColoredCone, ColoredFan, ColorId, SphericalDatum, colored_cone, make_datum
from .exactlin import Vector, hnf_basis
from .rootsys import build_root_system, format_type_label, parse_type_label


class ScfError(ValueError):
    """A parse error, with the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ScfRay:
    kind: str  # "coroot" or "vec"
    index: int = 0
    vector: Vector = ()


@dataclass(frozen=True)
class ScfCone:
    rays: tuple[ScfRay, ...]
    colors: tuple[ColorId, ...]


@dataclass(frozen=True)
class ScfDocument:
    type_label: str
    lattice_kind: str = "root"
    lattice_rows: tuple[Vector, ...] = ()
    hermitian: bool = False
    exceptional: tuple[int, ...] = ()
    fibers: tuple[tuple[int, int], ...] = ()
    cones: tuple[ScfCone, ...] = ()
    comments: tuple[str, ...] = field(default=(), compare=False)


def _rational(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ScfError(f"not a rational number: {tok!r}", line) from None


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ScfError(f"not an integer: {tok!r}", line) from None


def _color(tok: str, line: int) -> ColorId:
    idx, _, slot = tok.partition(":")
    return ColorId(_int(idx, line), _int(slot, line) if slot else 1)


def parse_scf(text: str) -> ScfDocument:
    comments: list[str] = []
    seen_statement = False
    type_label = None
    dim = rank = 0
    lattice_kind = None
    rows: list[Vector] = []
    hermitian = False
    exceptional: tuple[int, ...] = ()
    fibers: dict[int, int] = {}
    cones: list[ScfCone] = []
    cur_rays: list[ScfRay] | None = None
    cur_colors: tuple[ColorId, ...] | None = None
    cone_line = 0

    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not seen_statement:
                comments.append(raw.rstrip())
            continue
        line = line.split("#", 1)[0].strip()
        seen_statement = True
        head, *rest = line.split()
        if head == "rootsystem":
            if type_label is not None:
                raise ScfError("rootsystem declared twice", n)
            if len(rest) != 1:
                raise ScfError("rootsystem takes one type label", n)
            try:
                type_label = format_type_label(parse_type_label(rest[0]))
            except ValueError as exc:
                raise ScfError(str(exc), n) from None
            r = build_root_system(type_label)
            dim, rank = r.ambient_dim, r.rank
            continue
        if type_label is None:
            raise ScfError("the first statement must be 'rootsystem <TYPE>'", n)
        if cur_rays is not None:
            if head == "ray":
                if len(rest) < 2 or rest[0] not in ("coroot", "vec"):
                    raise ScfError("expected 'ray coroot <i>' or 'ray vec <rationals>'", n)
                if rest[0] == "coroot":
                    if len(rest) != 2:
                        raise ScfError("'ray coroot' takes one index", n)
                    i = _int(rest[1], n)
                    if not 1 <= i <= rank:
                        raise ScfError(f"coroot index {i} out of range 1..{rank}", n)
                    cur_rays.append(ScfRay("coroot", index=i))
                else:
                    v = tuple(_rational(t, n) for t in rest[1:])
                    if len(v) != dim:
                        raise ScfError(f"vector has {len(v)} coordinates, {type_label} needs {dim}", n)
                    cur_rays.append(ScfRay("vec", vector=v))
            elif head == "colors":
                if cur_colors is not None:
                    raise ScfError("a cone takes one colors line", n)
                cur_colors = tuple(_color(t, n) for t in rest if t != "-")
            elif head == "end":
                cones.append(ScfCone(tuple(cur_rays), cur_colors or ()))
                cur_rays, cur_colors = None, None
            else:
                raise ScfError(f"unexpected {head!r} inside a cone block", n)
            continue
        if head == "lattice":
            if len(rest) != 1 or rest[0] not in ("root", "weight", "basis"):
                raise ScfError("expected 'lattice root|weight|basis'", n)
            lattice_kind = rest[0]
        elif head == "row":
            if lattice_kind != "basis":
                raise ScfError("'row' lines follow 'lattice basis'", n)
            v = tuple(_rational(t, n) for t in rest)
            if len(v) != dim:
                raise ScfError(f"row has {len(v)} coordinates, {type_label} needs {dim}", n)
            rows.append(v)
        elif head == "hermitian":
            if rest not in (["true"], ["false"]):
                raise ScfError("expected 'hermitian true|false'", n)
            hermitian = rest == ["true"]
        elif head == "exceptional":
            exceptional = tuple(_int(t, n) for t in rest)
            for i in exceptional:
                if not 1 <= i <= rank:
                    raise ScfError(f"exceptional index {i} out of range 1..{rank}", n)
        elif head == "fiber":
            if len(rest) != 2:
                raise ScfError("expected 'fiber <index> 1|2'", n)
            i, f = _int(rest[0], n), _int(rest[1], n)
            if not 1 <= i <= rank or f not in (1, 2):
                raise ScfError("fiber index out of range or size not 1|2", n)
            fibers[i] = f
        elif head == "cone":
            if rest:
                raise ScfError("'cone' takes no arguments", n)
            cur_rays, cur_colors, cone_line = [], None, n
        else:
            raise ScfError(f"unknown statement {head!r}", n)

    if cur_rays is not None:
        raise ScfError("cone block is not closed with 'end'", cone_line)
    if type_label is None:
        raise ScfError("missing 'rootsystem' statement")
    if lattice_kind == "basis" and len(rows) != rank:
        raise ScfError(f"'lattice basis' needs {rank} row lines, got {len(rows)}")
    for cone in cones:
        for c in cone.colors:
            if not 1 <= c.index <= rank or not 1 <= c.slot <= fibers.get(c.index, 1):
                raise ScfError(f"unknown color {c}")
    return ScfDocument(
        type_label,
        lattice_kind or "root",
        tuple(rows),
        hermitian,
        exceptional,
        tuple(sorted(fibers.items())),
        tuple(cones),
        tuple(comments),
    )


def _fmt(x: Fraction) -> str:
    return str(x)


def print_scf(doc: ScfDocument) -> str:
    out = list(doc.comments)
    out.append(f"rootsystem {doc.type_label}")
    out.append(f"lattice {doc.lattice_kind}")
    for row in doc.lattice_rows:
        out.append("row " + " ".join(_fmt(x) for x in row))
    out.append(f"hermitian {'true' if doc.hermitian else 'false'}")
    if doc.exceptional:
        out.append("exceptional " + " ".join(str(i) for i in doc.exceptional))
    for i, f in doc.fibers:
        out.append(f"fiber {i} {f}")
    for cone in doc.cones:
        out.append("cone")
        for ray in cone.rays:
            if ray.kind == "coroot":
                out.append(f"ray coroot {ray.index}")
            else:
                out.append("ray vec " + " ".join(_fmt(x) for x in ray.vector))
        out.append("colors " + (" ".join(str(c)[1:] for c in cone.colors) if cone.colors else "-"))
        out.append("end")
    return "\n".join(out) + "\n"


# conversion -------------------------------------------------------------------------


def document_datum(doc: ScfDocument) -> SphericalDatum:
    """The spherical datum declared by a document (raises ValueError if inadmissible)."""
    r = build_root_system(doc.type_label)
    if doc.lattice_kind == "root":
        chi = r.root_lattice
    elif doc.lattice_kind == "weight":
        chi = r.weight_lattice
    else:
        chi = hnf_basis(doc.lattice_rows, r.ambient_dim)
        if chi.rank != r.rank:
            raise ValueError("the lattice rows are not linearly independent")
    fib = [1] * r.rank
    for i, f in doc.fibers:
        fib[i - 1] = f
    return make_datum(r, chi, fibers=fib, exceptional=doc.exceptional, hermitian=doc.hermitian)


def document_cones(doc: ScfDocument, datum: SphericalDatum) -> list[ColoredCone]:
    r = datum.root_system
    out = []
    for cone in doc.cones:
        gens = [r.simple_coroots[ray.index - 1] if ray.kind == "coroot" else ray.vector for ray in cone.rays]
        if not gens:
            raise ValueError("a cone needs at least one ray")
        out.append(colored_cone(datum, gens, cone.colors))
    return out


def document_fan(doc: ScfDocument, datum: SphericalDatum) -> ColoredFan:
    return ColoredFan.from_maximal(datum, document_cones(doc, datum))


def _lattice_decl(datum: SphericalDatum) -> tuple[str, tuple[Vector, ...]]:
    r = datum.root_system
    if datum.chi == r.root_lattice:
        return "root", ()
    if datum.chi == r.weight_lattice:
        return "weight", ()
    return "basis", tuple(datum.chi.basis)


def document_from(datum: SphericalDatum, maximal: Sequence[ColoredCone], comments: Sequence[str] = ()) -> ScfDocument:
    """A document for a fan given by its maximal colored cones.

    Rays on a colored coroot are written as ``ray coroot``; the others as
    primitive chi_star vectors.
    """
    r = datum.root_system
    kind, rows = _lattice_decl(datum)
    cones = []
    for cc in maximal:
        colored_nodes = sorted({d.index for d in cc.colors})
        colored_dirs = {}
        for i in colored_nodes:
            p = colored_cone(datum, [r.simple_coroots[i - 1]], []).cone.rays[0]
            colored_dirs[p] = i
        rays = [ScfRay("coroot", index=i) for i in colored_nodes]
        for ray in cc.cone.rays:
            if ray not in colored_dirs:
                rays.append(ScfRay("vec", vector=datum.primitive(ray)))
        cones.append(ScfCone(tuple(rays), tuple(sorted(cc.colors))))
    return ScfDocument(
        datum.label,
        kind,
        rows,
        datum.hermitian,
        tuple(sorted(datum.exceptional)),
        tuple((i, f) for i, f in enumerate(datum.fibers, start=1) if f != 1),
        tuple(cones),
        tuple(comments),
    )
