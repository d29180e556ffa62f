"""Enumeration of smooth complete symmetric varieties of Picard number one.

For a restricted root system the search runs over every intermediate
lattice chi and every admissible color-fiber structure.  Candidate simple
colored cones omit the colors of one endpoint of the Dynkin diagram and add
one invariant ray ``v = -sum c_i omega_i^vee``.  Smooth candidates are then
assembled into fans with one or two closed orbits and filtered by
completeness and ``r + m - l = 1``.

A built-in reference catalog lists the expected answer type by type, and
:func:`verify_against_catalog` compares the two exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .colored import (
    ColoredCone,
    ColoredFan,
    ColorId,
    SphericalDatum,
    colored_cone,
    is_complete,
    make_datum,
    picard_rank,
    validate_colored_fan,
)
from .cones import cone_from_generators
from .exactlin import Lattice, Vector, combo, hnf_basis, neg, rank as mat_rank, reduce_modulo
from .rootsys import RootSystem, build_root_system, classify_components, parse_type_label, format_type_label
from .symmcheck import is_smooth

DEFAULT_MAX_RANK = 8


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the candidate search.

    ``bound`` caps the fundamental-coweight coefficients of v (None means
    rank + 2); ``prune`` restricts v on the Levi factors to the patterns a
    smooth cone can have.
    """

    bound: int | None = None
    prune: bool = True


# lattices and data -----------------------------------------------------------


def _quotient_elements(r: RootSystem) -> list[Vector]:
    """Representatives of weight lattice / root lattice."""
    q = r.root_lattice
    seen = {reduce_modulo(q, tuple(0 for _ in range(r.ambient_dim)))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for w in r.fundamental_weights:
                y = reduce_modulo(q, tuple(a + b for a, b in zip(x, w)))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def enumerate_intermediate_lattices(r: RootSystem) -> list[Lattice]:
    """Every lattice between the root lattice and the weight lattice.

    The quotient has at most two generators for the supported types, so
    subgroups generated by pairs of classes are all of them.
    """
    q = r.root_lattice
    elems = _quotient_elements(r)
    found: dict[tuple, Lattice] = {}
    for a in elems:
        for b in elems:
            lat = hnf_basis(list(q.basis) + [a, b], r.ambient_dim)
            found.setdefault(lat.basis, lat)
    p = r.weight_lattice
    return sorted(found.values(), key=lambda lat: (_index_over(q, lat), lat.basis != p.basis, lat.basis))


def _index_over(q: Lattice, lat: Lattice) -> int:
    from .exactlin import lattice_index

    return int(lattice_index(q, lat))


def _short_coroot_node(r: RootSystem) -> int:
    lengths = [r.ip(c, c) for c in r.simple_coroots]
    return lengths.index(min(lengths))


def hermitian_capable(r: RootSystem) -> bool:
    comps = r.components
    if len(comps) != 1:
        return False
    fam, rk = comps[0].family, comps[0].rank
    return fam in ("BC", "C") or (fam, rk) in (("A", 1), ("B", 2))


def data_for_type(label: str) -> list[SphericalDatum]:
    """All spherical data searched for one restricted type.

    One datum with single fibers per intermediate lattice; for A1, B2 and
    C_l a Hermitian datum with chi the weight lattice and a doubled fiber
    over the short simple coroot; for BC_l the datum with a doubled
    exceptional fiber.
    """
    r = build_root_system(label)
    out = [make_datum(r, lat) for lat in enumerate_intermediate_lattices(r)]
    comps = r.components
    if len(comps) == 1:
        fam = comps[0].family
        l = r.rank
        if fam in ("A", "B", "C") and hermitian_capable(r):
            k = _short_coroot_node(r)
            fib = [1] * l
            fib[k] = 2
            out.append(make_datum(r, r.weight_lattice, fibers=fib, hermitian=True))
        if fam == "BC":
            out.append(make_datum(r, fibers=[1] * (l - 1) + [2], exceptional=[l], hermitian=True))
    return out


# candidates -------------------------------------------------------------------


def _adjacency(r: RootSystem) -> list[set[int]]:
    a = r.cartan_matrix
    n = r.rank
    return [{j for j in range(n) if j != i and a[i][j] != 0} for i in range(n)]


def _components_of(nodes: Iterable[int], adj: list[set[int]]) -> list[list[int]]:
    left = set(nodes)
    out = []
    while left:
        start = min(left)
        stack, comp = [start], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(y for y in adj[x] if y in left)
        left -= comp
        out.append(sorted(comp))
    return out


def endpoints(r: RootSystem) -> list[int]:
    """0-based nodes of degree at most one in the Dynkin diagram."""
    adj = _adjacency(r)
    return [i for i in range(r.rank) if len(adj[i]) <= 1]


def _color_choices(datum: SphericalDatum, nodes: Sequence[int]) -> Iterator[frozenset[ColorId]]:
    per_node = []
    for i in nodes:
        f = datum.fibers[i]
        if f == 1:
            per_node.append([(ColorId(i + 1, 1),)])
        else:
            per_node.append([(ColorId(i + 1, 1),), (ColorId(i + 1, 2),), (ColorId(i + 1, 1), ColorId(i + 1, 2))])
    for pick in product(*per_node):
        yield frozenset(c for group in pick for c in group)


def _coefficient_vectors(
    datum: SphericalDatum, colors: frozenset[ColorId], bound: int, prune: bool
) -> Iterator[tuple[int, ...]] | None:
    r = datum.root_system
    l = r.rank
    if not prune:
        return product(range(bound + 1), repeat=l)
    full = [i for i, f in enumerate(datum.fibers) if all(ColorId(i + 1, s) in colors for s in range(1, f + 1))]
    comps = classify_components(r, full)
    if any(c.family != "A" for c in comps) or sum(c.rank + 1 for c in comps) > l:
        return None
    fixed_nodes = {n for c in comps for n in c.nodes}
    free = [i for i in range(l) if i not in fixed_nodes]
    patterns = []
    for c in comps:
        opts = {tuple(0 for _ in c.nodes)}
        first = tuple(1 if k == 0 else 0 for k in range(len(c.nodes)))
        opts.add(first)
        opts.add(tuple(reversed(first)))
        patterns.append([(c.nodes, o) for o in sorted(opts)])

    def gen() -> Iterator[tuple[int, ...]]:
        for pick in product(*patterns):
            base = [0] * l
            for nodes, o in pick:
                for n, x in zip(nodes, o):
                    base[n] = x
            for vals in product(range(bound + 1), repeat=len(free)):
                c = list(base)
                for n, x in zip(free, vals):
                    c[n] = x
                yield tuple(c)

    return gen()


def relint_meets_valuation_cone(r: RootSystem, included: Sequence[int], coeffs: Sequence[int]) -> bool:
    """Closed form of the second colored-cone axiom for cone(coroots, v).

    With v = -sum c_i omega_i^vee, the relative interior meets the
    valuation cone exactly when c is nonzero on every connected component
    of the included nodes (the Cartan block has a positive inverse there).
    """
    adj = _adjacency(r)
    return all(any(coeffs[i] for i in comp) for comp in _components_of(included, adj))


def candidate_colored_cones(
    datum: SphericalDatum, bound: int | None = None, prune: bool = False
) -> Iterator[ColoredCone]:
    """Candidate simple colored cones, each with one invariant ray.

    ``bound`` defaults to rank + 1.  With ``prune`` only coefficient
    patterns compatible with smoothness are produced, which is what makes
    the enumeration fast at high rank.
    """
    r = datum.root_system
    l = r.rank
    if bound is None:
        bound = l + 1
    lat = datum.chi_star
    cows = r.fundamental_coweights
    if l == 1:
        v = datum.primitive(neg(cows[0]))
        yield ColoredCone(cone_from_generators([v], r.ambient_dim), frozenset())
        return
    seen = set()
    for omit in endpoints(r):
        included = [i for i in range(l) if i != omit]
        for colors in _color_choices(datum, included):
            coeff_iter = _coefficient_vectors(datum, colors, bound, prune)
            if coeff_iter is None:
                continue
            for c in coeff_iter:
                if not any(c):
                    continue
                if not relint_meets_valuation_cone(r, included, c):
                    continue
                v = neg(combo(c, cows))
                coords = lat.integer_coordinates(v)
                if coords is None:
                    continue
                if math.gcd(*coords) != 1:
                    continue
                gens = [r.simple_coroots[i] for i in included] + [v]
                if mat_rank(gens) != l:
                    continue
                cc = ColoredCone(cone_from_generators(gens, r.ambient_dim), colors)
                key = cc.sort_key()
                if key in seen:
                    continue
                seen.add(key)
                yield cc


def coweight_coefficients(datum: SphericalDatum, v: Sequence) -> tuple:
    """c with v = -sum c_i omega_i^vee."""
    r = datum.root_system
    return tuple(-r.ip(v, a) for a in r.simple_roots)


# fans ---------------------------------------------------------------------------


def invariant_ray(datum: SphericalDatum, cc: ColoredCone) -> tuple[int, ...] | None:
    """The unique ray of a candidate cone that carries no color."""
    colored = {cone_from_generators([datum.rho(d)], datum.root_system.ambient_dim).rays[0] for d in cc.colors}
    free = [ray for ray in cc.cone.rays if ray not in colored]
    return free[0] if len(free) == 1 else None


def assemble_fans(datum: SphericalDatum, cones: Iterable[ColoredCone]) -> Iterator[ColoredFan]:
    """Simple fans and two-orbit fans glued along a shared invariant ray."""
    cones = sorted(cones, key=lambda c: c.sort_key())
    all_colors = frozenset(datum.colors)
    for cc in cones:
        fan = ColoredFan.from_maximal(datum, [cc])
        if validate_colored_fan(datum, fan):
            yield fan
    rays = {id(c): invariant_ray(datum, c) for c in cones}
    for a, b in combinations(cones, 2):
        if a.cone == b.cone or rays[id(a)] is None or rays[id(a)] != rays[id(b)]:
            continue
        if a.colors | b.colors != all_colors:
            continue
        fan = ColoredFan.from_maximal(datum, [a, b])
        if len(fan.maximal_cones) == 2 and validate_colored_fan(datum, fan):
            yield fan


# classified varieties -------------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedVariety:
    datum: SphericalDatum
    fan: ColoredFan
    label: str = ""
    hermitian_possible: bool = False

    @property
    def orbit_count(self) -> int:
        return len(self.fan.maximal_cones)

    @property
    def type_label(self) -> str:
        return self.datum.label

    def key(self) -> tuple:
        return entry_key(self.datum, self.fan.maximal_cones)

    def describe(self) -> str:
        d = self.datum
        lines = [f"{self.type_label}  {self.label}  closed orbits: {self.orbit_count}"]
        lines.append("  chi basis: " + "; ".join(_fmt_vec(b) for b in d.chi.basis))
        lines.append("  chi_star basis: " + "; ".join(_fmt_vec(b) for b in d.chi_star.basis))
        for cc in self.fan.maximal_cones:
            lines.append(f"  cone {cc}")
        if self.hermitian_possible:
            lines.append("  also realized by a Hermitian space")
        return "\n".join(lines)


def _fmt_vec(v: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _cone_key(cc: ColoredCone, color_map=None) -> tuple:
    cols = cc.colors if color_map is None else frozenset(color_map(c) for c in cc.colors)
    return (cc.cone.rays, tuple(sorted((c.index, c.slot) for c in cols)))


def entry_key(datum: SphericalDatum, maximal: Sequence[ColoredCone]) -> tuple:
    """Exact key of an entry, minimized over swaps of color slots."""
    doubled = [i + 1 for i, f in enumerate(datum.fibers) if f == 2]
    best = None
    for flips in product((False, True), repeat=len(doubled)):
        swap = {i for i, f in zip(doubled, flips) if f}

        def cmap(c: ColorId, swap=swap) -> ColorId:
            return ColorId(c.index, 3 - c.slot) if c.index in swap else c

        k = (
            datum.label,
            datum.chi.basis,
            datum.fibers,
            tuple(sorted(datum.exceptional)),
            tuple(sorted(_cone_key(cc, cmap) for cc in maximal)),
        )
        if best is None or k < best:
            best = k
    return best


def _transform(datum: SphericalDatum, maximal: Sequence[ColoredCone], perm: Sequence[int]):
    """Image of an entry under the diagram automorphism alpha_i -> alpha_perm(i)."""
    r = datum.root_system
    chi = hnf_basis([r.apply_automorphism(perm, b) for b in datum.chi.basis], r.ambient_dim)
    fibers = [0] * r.rank
    for i, f in enumerate(datum.fibers):
        fibers[perm[i]] = f
    new = SphericalDatum(
        r, chi, tuple(fibers), frozenset(perm[i - 1] + 1 for i in datum.exceptional), datum.hermitian
    )
    cones = []
    for cc in maximal:
        gens = [r.apply_automorphism(perm, ray) for ray in cc.cone.rays]
        cols = frozenset(ColorId(perm[c.index - 1] + 1, c.slot) for c in cc.colors)
        cones.append(ColoredCone(cone_from_generators(gens, r.ambient_dim), cols))
    return new, cones


def orbit_key(entry: ClassifiedVariety) -> tuple:
    """Smallest key over the diagram automorphisms and slot swaps."""
    r = entry.datum.root_system
    keys = []
    for perm in r.diagram_automorphisms:
        d, cones = _transform(entry.datum, entry.fan.maximal_cones, perm)
        keys.append(entry_key(d, cones))
    return min(keys)


def count_orbits(entries: Iterable[ClassifiedVariety]) -> int:
    return len({orbit_key(e) for e in entries})


def hermitian_flag(datum: SphericalDatum) -> bool:
    """Whether a Hermitian space can have this datum (single fibers, chi below the weights)."""
    r = datum.root_system
    return hermitian_capable(r) and not datum.h_is_fixed_group and all(f == 1 for f in datum.fibers)


def enumerate_picard_one(label: str, config: SearchConfig = SearchConfig()) -> list[ClassifiedVariety]:
    """Every smooth complete embedding with Picard number one, sorted."""
    label = format_type_label(parse_type_label(label))
    r = build_root_system(label)
    bound = config.bound if config.bound is not None else r.rank + 2
    names = {e.key(): e.label for e in reference_catalog_for(label)}
    found: dict[tuple, ClassifiedVariety] = {}
    for datum in data_for_type(label):
        smooth = [
            cc
            for cc in candidate_colored_cones(datum, bound=bound, prune=config.prune)
            if is_smooth(datum, cc).smooth
        ]
        for fan in assemble_fans(datum, smooth):
            if not is_complete(datum, fan) or picard_rank(datum, fan) != 1:
                continue
            key = entry_key(datum, fan.maximal_cones)
            if key in found:
                continue
            tag = names.get(key, "uncatalogued " + ("simple" if len(fan.maximal_cones) == 1 else "two-orbit"))
            found[key] = ClassifiedVariety(datum, fan, tag, hermitian_flag(datum))
    return [found[k] for k in sorted(found)]


# reference catalog ----------------------------------------------------------------


def supported_types(max_rank: int = DEFAULT_MAX_RANK) -> list[str]:
    """Types covered by the catalog; the exceptional types are always included."""
    out = ["A1xA1"]
    out += [f"A{l}" for l in range(1, max_rank + 1)]
    out += [f"B{l}" for l in range(2, max_rank + 1)]
    out += [f"C{l}" for l in range(3, max_rank + 1)]
    out += [f"BC{l}" for l in range(1, max_rank + 1)]
    out += [f"D{l}" for l in range(4, max_rank + 1)]
    out += ["E6", "E7", "E8", "F4", "G2"]
    return out


def _entry(datum: SphericalDatum, cones: list[tuple[list[int], list[Vector]]], label: str) -> ClassifiedVariety:
    """Build an entry from (colored nodes, extra generators) per maximal cone."""
    r = datum.root_system
    maximal = []
    for nodes, extra in cones:
        gens = [r.simple_coroots[i - 1] for i in nodes] + list(extra)
        maximal.append(colored_cone(datum, gens, [ColorId(i) for i in nodes]))
    fan = ColoredFan.from_maximal(datum, maximal)
    return ClassifiedVariety(datum, fan, label, hermitian_flag(datum))


@lru_cache(maxsize=None)
def _catalog_cached(label: str) -> tuple[ClassifiedVariety, ...]:
    r = build_root_system(label)
    fam_rank = parse_type_label(label)
    l = r.rank
    w = r.fundamental_weights
    cw = r.fundamental_coweights
    q, p = r.root_lattice, r.weight_lattice
    out: list[ClassifiedVariety] = []
    if len(fam_rank) == 2:
        chi = hnf_basis([tuple(2 * x for x in w[0]), tuple(a + b for a, b in zip(w[0], w[1]))], r.ambient_dim)
        d = make_datum(r, chi)
        v = neg(tuple(a + b for a, b in zip(cw[0], cw[1])))
        out.append(_entry(d, [([1], [v]), ([2], [v])], "A1xA1 two-orbit"))
        return tuple(out)
    fam = fam_rank[0][0]
    if l == 1:
        if fam == "A":
            out.append(_entry(make_datum(r, q), [([], [neg(cw[0])])], "rank one, chi = root lattice"))
            out.append(_entry(make_datum(r, p), [([], [neg(cw[0])])], "rank one, chi = weight lattice"))
        else:
            out.append(_entry(make_datum(r), [([], [neg(cw[0])])], "rank one, BC1"))
        return tuple(out)
    first = list(range(1, l))
    if fam == "A":
        d = make_datum(r, q)
        out.append(_entry(d, [(first, [neg(cw[0])])], "A_l simple left"))
        out.append(_entry(d, [(list(range(2, l + 1)), [neg(cw[l - 1])])], "A_l simple right"))
        if l == 2:
            v = neg(tuple(a + b for a, b in zip(cw[0], cw[1])))
            out.append(_entry(make_datum(r, p), [([1], [v]), ([2], [v])], "A_2 two-orbit"))
    elif fam == "B" and l == 2:
        out.append(_entry(make_datum(r, q), [([1], [neg(cw[0])])], "B_2 simple, chi = root lattice"))
        out.append(_entry(make_datum(r, p), [([2], [neg(cw[1])])], "B_2 simple, chi = weight lattice"))
    elif fam == "B":
        out.append(_entry(make_datum(r, q), [(first, [neg(cw[0])])], "B_l simple"))
    elif fam == "C":
        out.append(_entry(make_datum(r, p), [(first, [neg(cw[0])])], "C_l simple"))
    elif fam == "BC":
        out.append(_entry(make_datum(r), [(first, [neg(cw[0])])], "BC_l simple"))
    elif fam == "D" and l >= 5:
        gens = list(cw[: l - 2]) + [tuple(a + b for a, b in zip(cw[l - 2], cw[l - 1])), tuple(2 * x for x in cw[l - 1])]
        d = make_datum(r, chi_star=hnf_basis(gens, r.ambient_dim))
        v = neg(cw[0])
        out.append(
            _entry(d, [(list(range(1, l)), [v]), (list(range(1, l - 1)) + [l], [v])], "D_l two-orbit")
        )
    elif fam == "D":
        for i in (1, 3, 4):
            j, k = [x for x in (1, 3, 4) if x != i]
            gens = [cw[i - 1], cw[1], tuple(a + b for a, b in zip(cw[j - 1], cw[k - 1])), tuple(2 * x for x in cw[k - 1])]
            d = make_datum(r, chi_star=hnf_basis(gens, r.ambient_dim))
            v = neg(cw[i - 1])
            out.append(_entry(d, [([i, 2, j], [v]), ([i, 2, k], [v])], f"D_4 two-orbit, omega_{i} side"))
    elif fam == "G":
        out.append(_entry(make_datum(r), [([2], [neg(cw[1])])], "G_2 simple"))
    # E6, E7, E8 and F4 admit none
    return tuple(sorted(out, key=lambda e: e.key()))


def reference_catalog_for(label: str) -> list[ClassifiedVariety]:
    return list(_catalog_cached(format_type_label(parse_type_label(label))))


def reference_catalog(max_rank: int = DEFAULT_MAX_RANK) -> list[ClassifiedVariety]:
    """The expected classification for every supported type up to ``max_rank``."""
    return [e for t in supported_types(max_rank) for e in reference_catalog_for(t)]


# comparison --------------------------------------------------------------------------


@dataclass(frozen=True)
class MatchReport:
    type_label: str
    entries: int
    orbits: int
    catalog_entries: int
    catalog_orbits: int
    missing: tuple[str, ...] = ()
    extra: tuple[str, ...] = ()
    enumerated: tuple[ClassifiedVariety, ...] = field(default=(), repr=False, compare=False)

    @property
    def match(self) -> bool:
        return not self.missing and not self.extra and self.orbits == self.catalog_orbits

    def summary(self) -> str:
        status = "match" if self.match else "MISMATCH"
        noun = "entry" if self.entries == 1 else "entries"
        orb = "orbit" if self.orbits == 1 else "orbits"
        return f"{self.type_label}: {self.entries} {noun}, {self.orbits} {orb}, {status}"

    def details(self) -> str:
        lines = [self.summary()]
        lines += ["  missing: " + m for m in self.missing]
        lines += ["  extra: " + x for x in self.extra]
        return "\n".join(lines)


def verify_against_catalog(label: str, config: SearchConfig = SearchConfig()) -> MatchReport:
    label = format_type_label(parse_type_label(label))
    found = enumerate_picard_one(label, config)
    expected = reference_catalog_for(label)
    fk = {e.key(): e for e in found}
    ek = {e.key(): e for e in expected}
    missing = tuple(ek[k].describe() for k in sorted(set(ek) - set(fk)))
    extra = tuple(fk[k].describe() for k in sorted(set(fk) - set(ek)))
    return MatchReport(
        label,
        len(found),
        count_orbits(found),
        len(expected),
        count_orbits(expected),
        missing,
        extra,
        tuple(found),
    )
