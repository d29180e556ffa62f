"""Spherical data, colored cones and colored fans.

A :class:`SphericalDatum` is the combinatorial shadow of a symmetric
homogeneous space: a restricted root system, the character lattice chi
(between the root and weight lattices) with its dual lattice chi_star,
the number of colors over each simple coroot, the exceptional coroots and
a Hermitian flag.  Colors are named by :class:`ColorId`; the map rho sends
a color to its simple coroot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .cones import (
    Cone,
    cone_from_generators,
    faces,
    is_face_of,
    relint_meets,
    relint_meets_closed,
    uncovered_point,
)
from .exactlin import (
    Lattice,
    Vector,
    combo,
    dual_lattice,
    inverse,
    primitive_integer,
    solve_combination,
    vec,
)
from .rootsys import RootSystem

HERMITIAN_FAMILIES = {("A", 1), ("B", 2)}


@dataclass(frozen=True, order=True)
class ColorId:
    """A color over the simple coroot ``index`` (1-based), in fiber ``slot``."""

    index: int
    slot: int = 1

    @property
    def node(self) -> int:
        return self.index - 1

    def __str__(self) -> str:
        return f"D{self.index}" if self.slot == 1 else f"D{self.index}:{self.slot}"


@dataclass(frozen=True)
class SphericalDatum:
    root_system: RootSystem
    chi: Lattice
    fibers: tuple[int, ...]
    exceptional: frozenset[int] = frozenset()
    hermitian: bool = False

    def __post_init__(self) -> None:
        problems = self.problems()
        if problems:
            raise ValueError("invalid spherical datum: " + "; ".join(problems))

    def problems(self) -> list[str]:
        r = self.root_system
        out = []
        if len(self.fibers) != r.rank or any(f not in (1, 2) for f in self.fibers):
            out.append("each simple coroot needs a fiber of size 1 or 2")
        if any(not 1 <= i <= r.rank for i in self.exceptional):
            out.append("exceptional index out of range")
        if not all(self.chi.contains(a) for a in r.root_lattice.basis):
            out.append("chi does not contain the root lattice")
        if not all(r.weight_lattice.contains(b) for b in self.chi.basis):
            out.append("chi is not contained in the weight lattice")
        if self.hermitian:
            comps = r.components
            if len(comps) != 1 or not (
                comps[0].family in ("BC", "C") or (comps[0].family, comps[0].rank) in HERMITIAN_FAMILIES
            ):
                out.append("a Hermitian datum needs type BC_l, C_l, B2 or A1")
        if len(self.fibers) == r.rank:
            for i, f in enumerate(self.fibers, start=1):
                if f == 2 and i not in self.exceptional:
                    if not (self.hermitian and self.h_is_fixed_group and self._short_coroot(i - 1)):
                        out.append(f"fiber over coroot {i} cannot hold two colors")
        return out

    def _short_coroot(self, node: int) -> bool:
        r = self.root_system
        cos = r.simple_coroots
        lengths = [r.ip(c, c) for c in cos]
        return lengths[node] == min(lengths)

    # derived data ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def label(self) -> str:
        return self.root_system.label

    @cached_property
    def chi_star(self) -> Lattice:
        return dual_lattice(self.chi, self.root_system.gram)

    @cached_property
    def _ray_memo(self) -> dict:
        return {}

    def ray_coordinates(self, ray: Sequence) -> tuple[int, ...]:
        """Integer chi_star coordinates of the primitive vector on a ray."""
        key = tuple(ray)
        memo = self._ray_memo
        out = memo.get(key)
        if out is None:
            c = self.chi_star.coordinates(key)
            if c is None or not any(c):
                raise ValueError("direction is zero or outside the span of chi_star")
            out = memo[key] = primitive_integer(c)
        return out

    @cached_property
    def chi_dual_basis(self) -> tuple[Vector, ...]:
        """The basis of chi dual to the chosen basis of chi_star."""
        r = self.root_system
        b = list(self.chi_star.basis)
        inv = inverse([[r.ip(x, y) for y in b] for x in b])
        return tuple(combo(row, b) for row in inv)

    @cached_property
    def integer_reflections(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """Per simple root (a, c) with s(y) = y - (y . c) a in chi coordinates."""
        r = self.root_system
        out = []
        for alpha in r.simple_roots:
            a = solve_combination(self.chi_dual_basis, alpha)
            c = self.chi_star.coordinates(tuple(2 * x / r.ip(alpha, alpha) for x in alpha))
            out.append((tuple(int(x) for x in a), tuple(int(x) for x in c)))
        return tuple(out)

    @property
    def h_is_fixed_group(self) -> bool:
        """True when chi is the whole weight lattice (H is the fixed-point group)."""
        return self.chi == self.root_system.weight_lattice

    @cached_property
    def colors(self) -> tuple[ColorId, ...]:
        return tuple(ColorId(i, s) for i, f in enumerate(self.fibers, start=1) for s in range(1, f + 1))

    def rho(self, color: ColorId) -> Vector:
        if color not in self.colors:
            raise ValueError(f"{color} is not a color of this datum")
        return self.root_system.simple_coroots[color.node]

    @property
    def valuation_cone(self) -> Cone:
        return self.root_system.valuation_cone

    def primitive(self, direction: Sequence) -> Vector:
        """The primitive vector of chi_star on the ray through ``direction``."""
        return self.chi_star.primitive_on_ray(direction)

    def key(self) -> tuple:
        return (self.label, self.chi.basis, self.fibers, tuple(sorted(self.exceptional)))


def make_datum(
    root_system: RootSystem,
    chi: Lattice | None = None,
    *,
    chi_star: Lattice | None = None,
    fibers: Sequence[int] | None = None,
    exceptional: Iterable[int] = (),
    hermitian: bool = False,
) -> SphericalDatum:
    """Build a datum from chi or from its dual chi_star (root lattice by default)."""
    if chi is None:
        chi = root_system.root_lattice if chi_star is None else dual_lattice(chi_star, root_system.gram)
    fib = tuple(fibers) if fibers is not None else (1,) * root_system.rank
    return SphericalDatum(root_system, chi, fib, frozenset(exceptional), hermitian)


@dataclass(frozen=True)
class ColoredCone:
    cone: Cone
    colors: frozenset[ColorId] = frozenset()

    def sort_key(self) -> tuple:
        return (self.cone.rays, self.cone.lineality, tuple(sorted(self.colors)))

    def __str__(self) -> str:
        cols = ",".join(str(c) for c in sorted(self.colors)) or "-"
        return f"({self.cone}, {{{cols}}})"


def colored_cone(datum: SphericalDatum, generators: Iterable[Sequence], colors: Iterable[ColorId]) -> ColoredCone:
    gens = [vec(g) for g in generators]
    return ColoredCone(cone_from_generators(gens, datum.root_system.ambient_dim), frozenset(colors))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validation: ``ok`` or the first violated axiom with evidence."""

    ok: bool
    axiom: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"violation of axiom ({self.axiom}): {self.detail}"


OK = Verdict(True)


def _same_ray(u: Sequence, v: Sequence) -> bool:
    return primitive_integer(u) == primitive_integer(v)


def validate_colored_cone(datum: SphericalDatum, cc: ColoredCone) -> Verdict:
    r = datum.root_system
    if cc.cone.ambient_dim != r.ambient_dim:
        raise ValueError("cone lives in the wrong ambient space")
    for d in cc.colors:
        if d not in datum.colors:
            raise ValueError(f"{d} is not a color of this datum")
    span_eqs = r.valuation_cone.equations
    for g in cc.cone.rays + cc.cone.lineality:
        if any(sum(a * x for a, x in zip(e, g)) != 0 for e in span_eqs):
            return Verdict(False, "i", f"generator {g} is outside the span of the roots")
    cn = datum.valuation_cone
    gens = [datum.rho(d) for d in cc.colors]
    for g in cc.cone.rays:
        if cn.contains(g):
            gens.append(vec(g))
        elif not any(_same_ray(g, datum.rho(d)) for d in cc.colors):
            return Verdict(False, "i", f"ray {g} is neither a color image nor in the valuation cone")
    for l in cc.cone.lineality:
        for s in (1, -1):
            w = tuple(s * x for x in l)
            if cn.contains(w):
                gens.append(vec(w))
    if cone_from_generators(gens, r.ambient_dim) != cc.cone:
        return Verdict(False, "i", "the cone is not generated by its color images and valuation-cone vectors")
    if not relint_meets_closed(cc.cone, cn):
        return Verdict(False, "ii", "the relative interior misses the valuation cone")
    return OK


def colored_faces(datum: SphericalDatum, cc: ColoredCone) -> list[ColoredCone]:
    """Faces of a colored cone that are colored cones, with inherited colors."""
    cn = datum.valuation_cone
    out = []
    for f in faces(cc.cone):
        if not relint_meets_closed(f, cn):
            continue
        cols = frozenset(d for d in cc.colors if f.contains(datum.rho(d)))
        out.append(ColoredCone(f, cols))
    return out


@dataclass(frozen=True)
class ColoredFan:
    """All colored cones of a fan (maximal ones and their colored faces)."""

    cones: tuple[ColoredCone, ...]

    @classmethod
    def from_maximal(cls, datum: SphericalDatum, maximal: Iterable[ColoredCone]) -> "ColoredFan":
        members: dict[tuple, ColoredCone] = {}
        for cc in maximal:
            members[cc.sort_key()] = cc
            for f in colored_faces(datum, cc):
                members.setdefault(f.sort_key(), f)
        return cls(tuple(members[k] for k in sorted(members)))

    @cached_property
    def maximal_cones(self) -> tuple[ColoredCone, ...]:
        out = []
        for c in self.cones:
            mine = set(c.cone.rays)
            bigger = any(
                mine < set(o.cone.rays) and not o.cone.lineality and is_face_of(c.cone, o.cone)
                for o in self.cones
            )
            if not bigger:
                out.append(c)
        return tuple(out)

    @property
    def colors(self) -> frozenset[ColorId]:
        return frozenset(d for c in self.cones for d in c.colors)

    @cached_property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        """Distinct one-dimensional faces across the fan (as integer directions)."""
        found = set()
        for c in self.maximal_cones:
            for r in c.cone.rays:
                found.add(r)
        return tuple(sorted(found))

    def invariant_rays(self, datum: SphericalDatum) -> tuple[Vector, ...]:
        """Primitive chi_star generators of the rays meeting the valuation cone."""
        cn = datum.valuation_cone
        return tuple(datum.primitive(r) for r in self.rays if cn.contains(r))


def validate_colored_fan(datum: SphericalDatum, fan: ColoredFan) -> Verdict:
    for cc in fan.cones:
        v = validate_colored_cone(datum, cc)
        if not v:
            return Verdict(False, v.axiom, f"member {cc}: {v.detail}")
    keys = {c.sort_key() for c in fan.cones}
    for cc in fan.maximal_cones:
        for f in colored_faces(datum, cc):
            if f.sort_key() not in keys:
                return Verdict(False, "i", f"colored face {f} of {cc} is missing")
    cn = datum.valuation_cone
    members = list(fan.cones)
    for a, b in combinations(members, 2):
        if a.cone == b.cone:
            return Verdict(False, "ii", f"{a} and {b} share their relative interior")
    maximal = fan.maximal_cones
    for ci, cj in combinations(maximal, 2):
        meet = ci.cone.intersect(cj.cone)
        if is_face_of(meet, ci.cone) and is_face_of(meet, cj.cone):
            continue
        side_i = [m for m in members if is_face_of(m.cone, ci.cone)]
        side_j = [m for m in members if is_face_of(m.cone, cj.cone)]
        for a in side_i:
            for b in side_j:
                if a.cone == b.cone or not relint_meets(a.cone, b.cone):
                    continue
                if relint_meets_closed(a.cone.intersect(b.cone), cn):
                    return Verdict(False, "ii", f"{a} and {b} overlap inside the valuation cone")
    return OK


def completeness_witness(datum: SphericalDatum, fan: ColoredFan) -> Vector | None:
    """A point of the valuation cone outside the fan, or None when complete."""
    return uncovered_point(datum.valuation_cone, [c.cone for c in fan.maximal_cones])


def is_complete(datum: SphericalDatum, fan: ColoredFan) -> bool:
    return completeness_witness(datum, fan) is None


def _span_coords(datum: SphericalDatum, v: Sequence) -> Vector:
    return datum.root_system.span_coordinates(v)


def piecewise_linear_dimension(datum: SphericalDatum, fan: ColoredFan) -> int:
    """Dimension of the space of functions on the support linear on each maximal cone."""
    l = datum.rank
    maximal = fan.maximal_cones
    k = len(maximal)
    rows = []
    for i, j in combinations(range(k), 2):
        meet = maximal[i].cone.intersect(maximal[j].cone)
        for g in list(meet.rays) + list(meet.lineality):
            c = _span_coords(datum, g)
            row = [Fraction(0)] * (k * l)
            for t in range(l):
                row[i * l + t] = c[t]
                row[j * l + t] = -c[t]
            rows.append(row)
    from .exactlin import rank as mat_rank

    solutions = k * l - (mat_rank(rows) if rows else 0)
    # functionals vanishing on a lower-dimensional cone give the zero function there
    vanishing = sum(l - c.cone.dim for c in maximal)
    return solutions - vanishing


def picard_rank(datum: SphericalDatum, fan: ColoredFan) -> int:
    """r - l + (rank of piecewise-linear functions); equals r + m - l for simplicial fans."""
    if not is_complete(datum, fan):
        raise ValueError("the Picard rank formula is only used for complete fans")
    r = len(set(datum.colors) - fan.colors)
    return r - datum.rank + piecewise_linear_dimension(datum, fan)


def picard_counts(datum: SphericalDatum, fan: ColoredFan) -> tuple[int, int, int]:
    """(r, m, l): omitted colors, rays of the fan, rank."""
    return len(set(datum.colors) - fan.colors), len(fan.rays), datum.rank


@dataclass(frozen=True)
class AmpleCheck:
    cone_index: int
    generator: Vector
    linear_value: Fraction
    phi_value: Fraction

    @property
    def holds(self) -> bool:
        return self.linear_value < self.phi_value


def _divisor_values(datum: SphericalDatum, cc: ColoredCone, coeffs: Mapping) -> list[tuple[Vector, Fraction]]:
    """(vector, coefficient) for each ray of a maximal cone."""
    out = []
    cn = datum.valuation_cone
    for ray in cc.cone.rays:
        cols = [d for d in sorted(cc.colors) if _same_ray(ray, datum.rho(d))]
        if cols:
            d = cols[0]
            if d not in coeffs:
                raise ValueError(f"no coefficient for color {d}")
            out.append((datum.rho(d), Fraction(coeffs[d])))
        elif cn.contains(ray):
            p = datum.primitive(ray)
            key = primitive_integer(p)
            if key not in coeffs:
                raise ValueError(f"no coefficient for the G-stable ray {key}")
            out.append((p, Fraction(coeffs[key])))
        else:
            raise ValueError(f"ray {ray} carries no divisor")
    return out


def ampleness_checks(datum: SphericalDatum, fan: ColoredFan, coeffs: Mapping) -> list[AmpleCheck]:
    """The strict convexity inequalities l_i(g) < phi(g), one per off-cone generator."""
    maximal = fan.maximal_cones
    linear = []
    values = []
    for cc in maximal:
        if not cc.cone.is_simplicial or cc.cone.dim != datum.rank:
            raise ValueError("ampleness is only decided for full-dimensional simplicial cones")
        pairs = _divisor_values(datum, cc, coeffs)
        values.append(pairs)
        coords = [_span_coords(datum, g) for g, _ in pairs]
        inv = inverse(coords)
        # functional y with y . coords(g) = phi(g); y = inv applied to values
        y = tuple(sum(inv[t][s] * pairs[s][1] for s in range(len(pairs))) for t in range(len(pairs)))
        linear.append(y)
    checks = []
    for i, cc in enumerate(maximal):
        for j, other in enumerate(maximal):
            if i == j:
                continue
            for g, phi in values[j]:
                if cc.cone.contains(g):
                    continue
                c = _span_coords(datum, g)
                val = sum(a * b for a, b in zip(linear[i], c))
                checks.append(AmpleCheck(i, g, val, phi))
    return checks


def is_ample_two_orbit(datum: SphericalDatum, fan: ColoredFan, coeffs: Mapping) -> bool:
    """Ampleness: phi strictly convex on the fan and every color used."""
    checks = ampleness_checks(datum, fan, coeffs)
    if fan.colors != set(datum.colors):
        return False
    return all(c.holds for c in checks)


def off_shared_divisor(datum: SphericalDatum, fan: ColoredFan) -> dict:
    """Coefficients of D1 + D2 for a two-orbit fan: 1 on the two colors not
    shared by the maximal cones, 0 on every other color and G-stable ray."""
    maximal = fan.maximal_cones
    if len(maximal) != 2:
        raise ValueError("expected a fan with exactly two maximal cones")
    a, b = maximal
    off = a.colors ^ b.colors
    coeffs: dict = {d: int(d in off) for d in datum.colors}
    for ray in fan.invariant_rays(datum):
        coeffs[primitive_integer(ray)] = 0
    return coeffs
