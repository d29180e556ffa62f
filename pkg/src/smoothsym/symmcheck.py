"""Smoothness of simple symmetric varieties from their colored cones.

Two independent engines decide smoothness of a colored cone with a
projective closed orbit:

* :func:`smoothness_conditions` checks the combinatorial conditions
  (i) the Levi restricted system is a product of type A systems with enough
  room, (ii) the cone is generated by a basis of chi_star, and (iii) the
  dual basis can be indexed so that it reproduces the fundamental weights
  of each type A factor;
* :func:`toric_slice` builds the cone of the toric slice (Weyl saturation of
  the dual cone, dualized back) and :func:`toric_is_smooth` tests it for
  unimodularity.

A color over an exceptional coroot rules out smoothness before either
engine runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .colored import ColoredCone, SphericalDatum, make_datum
from .cones import Cone, cone_from_generators, double_description
from .exactlin import Vector, combo, det, inverse
from .rootsys import Component, RootSystem, build_root_system, classify_components


class NotProjectiveError(ValueError):
    """The closed orbit is not projective (cone of lower dimension than the rank)."""


class EngineDisagreement(RuntimeError):
    """The two smoothness engines returned different verdicts."""


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    failed_condition: str | None = None
    witness: str = ""
    indexing: tuple[tuple[Vector, ...], ...] | None = None
    indexings_found: int = 0

    def describe(self) -> str:
        if self.smooth:
            extra = "" if self.indexings_found <= 1 else f" ({self.indexings_found} indexings)"
            return "smooth" + extra
        if self.failed_condition == "exceptional":
            return f"not smooth: exceptional coroot used ({self.witness})"
        return f"not smooth: condition ({self.failed_condition}) fails: {self.witness}"


@dataclass(frozen=True)
class ToricSlice:
    """Cones of the toric slice in lattice coordinates.

    ``sigma_rays`` and ``sigma_lineality`` are integer coordinates in the
    basis of chi_star; ``saturated`` lists the generators of the
    Weyl-saturated dual cone in the dual basis of chi.
    """

    chi_star_basis: tuple[Vector, ...]
    saturated: tuple[tuple[int, ...], ...]
    sigma_rays: tuple[tuple[int, ...], ...]
    sigma_lineality: tuple[tuple[int, ...], ...]

    @property
    def sigma(self) -> Cone:
        """The slice cone in ambient coordinates."""
        n = len(self.chi_star_basis[0])
        gens = [combo(r, self.chi_star_basis) for r in self.sigma_rays]
        gens += [combo(r, self.chi_star_basis) for r in self.sigma_lineality]
        gens += [combo([-x for x in r], self.chi_star_basis) for r in self.sigma_lineality]
        return cone_from_generators(gens, n)

    @property
    def basis_vectors(self) -> tuple[Vector, ...]:
        """Primitive generators of the slice cone (ambient coordinates)."""
        return tuple(combo(r, self.chi_star_basis) for r in self.sigma_rays)


def _require_projective(datum: SphericalDatum, cc: ColoredCone) -> None:
    if cc.cone.dim != datum.rank:
        raise NotProjectiveError(
            f"cone has dimension {cc.cone.dim} < rank {datum.rank}; the closed orbit is not projective"
        )


def exceptional_obstruction(datum: SphericalDatum, cc: ColoredCone) -> int | None:
    """The first exceptional coroot index used by a color of ``cc``, or None."""
    _require_projective(datum, cc)
    used = sorted({d.index for d in cc.colors} & set(datum.exceptional))
    return used[0] if used else None


def full_fiber_nodes(datum: SphericalDatum, cc: ColoredCone) -> list[int]:
    """0-based simple roots whose whole color fiber lies in the colored cone."""
    out = []
    for i, f in enumerate(datum.fibers, start=1):
        if all(any(d.index == i and d.slot == s for d in cc.colors) for s in range(1, f + 1)):
            out.append(i - 1)
    return out


def levi_restricted_system(datum: SphericalDatum, cc: ColoredCone) -> RootSystem:
    return datum.root_system.parabolic_subsystem(full_fiber_nodes(datum, cc))


def _dual_basis(r: RootSystem, gens: list[Vector]) -> list[Vector]:
    gram = [[r.ip(a, b) for b in gens] for a in gens]
    inv = inverse(gram)
    return [combo(row, gens) for row in inv]


def _component_weights(r: RootSystem, order: tuple[int, ...]) -> list[Vector]:
    """Fundamental weights of the type A piece on ``order``, within its span."""
    simple = [r.simple_roots[i] for i in order]
    cos = [r.simple_coroots[i] for i in order]
    m = [[r.ip(a, c) for c in cos] for a in simple]
    inv = inverse(m)
    return [combo(row, simple) for row in inv]


def cone_generators(datum: SphericalDatum, cc: ColoredCone) -> list[Vector]:
    """Primitive chi_star generators of the rays of a pointed cone."""
    return [datum.primitive(r) for r in cc.cone.rays]


def smoothness_conditions(datum: SphericalDatum, cc: ColoredCone) -> SmoothnessReport:
    _require_projective(datum, cc)
    r = datum.root_system
    # components are named with the parent's simple-root numbering
    comps: tuple[Component, ...] = classify_components(r, full_fiber_nodes(datum, cc))
    # (i)
    bad = [c for c in comps if c.family != "A"]
    if bad:
        return SmoothnessReport(False, "i", f"the Levi restricted system has a factor of type {bad[0].label}")
    need = sum(c.rank + 1 for c in comps)
    if need > datum.rank:
        return SmoothnessReport(False, "i", f"rank {datum.rank} < {need} = sum of (l_j + 1)")
    # (ii)
    if not cc.cone.is_pointed:
        return SmoothnessReport(False, "ii", "the cone contains a line")
    lat = datum.chi_star
    coords = [datum.ray_coordinates(x) for x in cc.cone.rays]
    index = abs(det(coords)) if len(coords) == datum.rank else None
    if index != 1:
        if index is None:
            why = f"{len(coords)} rays for rank {datum.rank}"
        else:
            why = f"the rays span a sublattice of index {index}"
        return SmoothnessReport(False, "ii", why)
    gens = [combo(c, lat.basis) for c in coords]
    # (iii)
    lam = _dual_basis(r, gens)
    where = {g: k for k, g in enumerate(gens)}
    matched: list[list[int]] = []
    for c in comps:
        idx = []
        for node in c.nodes:
            k = where.get(r.simple_coroots[node])
            if k is None:
                return SmoothnessReport(
                    False, "iii", f"the coroot of simple root {node + 1} is not a generator of the cone"
                )
            idx.append(k)
        matched.append(idx)
    used = {k for idx in matched for k in idx}
    extras = [k for k in range(len(gens)) if k not in used]
    weights = {c.nodes: _component_weights(r, c.nodes) for c in comps}
    weights.update({tuple(reversed(c.nodes)): _component_weights(r, tuple(reversed(c.nodes))) for c in comps})
    found = []
    for assign in permutations(extras, len(comps)):
        for flips in product((False, True), repeat=len(comps)):
            groups = []
            good = True
            for c, idx, e, flip in zip(comps, matched, assign, flips):
                order = tuple(reversed(c.nodes)) if flip else c.nodes
                lam_idx = list(reversed(idx)) if flip else idx
                omegas = weights[order]
                n = c.rank + 1
                for i, (w, k) in enumerate(zip(omegas, lam_idx), start=1):
                    cand = tuple(a - Fraction(i, n) * b for a, b in zip(lam[k], lam[e]))
                    if cand != w:
                        good = False
                        break
                if not good:
                    break
                groups.append(tuple(lam[k] for k in lam_idx) + (lam[e],))
            if good:
                rest = [k for k in extras if k not in assign]
                groups += [(lam[k],) for k in rest]
                found.append(tuple(groups))
    distinct = sorted(set(found))
    if not distinct:
        return SmoothnessReport(False, "iii", "no indexing of the dual basis reproduces the fundamental weights")
    return SmoothnessReport(True, None, "", distinct[0], len(distinct))


def _iprim(v) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _integer_orbit(vectors, reflections) -> list[tuple[int, ...]]:
    """Close integer vectors under maps y -> y - (y . c) a."""
    seen = set(vectors)
    frontier = list(seen)
    while frontier:
        nxt = []
        for y in frontier:
            for a, c in reflections:
                t = sum(p * q for p, q in zip(y, c))
                if t:
                    z = tuple(p - t * q for p, q in zip(y, a))
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
        frontier = nxt
    return sorted(seen)


def toric_slice(datum: SphericalDatum, cc: ColoredCone) -> ToricSlice:
    """Saturate the dual cone under the Levi Weyl group and dualize back.

    Everything runs in integer coordinates: chi_star in a fixed basis and
    chi in the dual basis, where the pairing is the dot product and every
    reflection is an integer matrix.
    """
    _require_projective(datum, cc)
    lat = datum.chi_star
    l = lat.rank
    cone_rays = [datum.ray_coordinates(x) for x in cc.cone.rays]
    cone_lin = [datum.ray_coordinates(x) for x in cc.cone.lineality]
    # C^vee in chi coordinates
    lin, rays = double_description(l, cone_rays, cone_lin)
    gens = list(rays) + list(lin) + [tuple(-x for x in v) for v in lin]
    refl = [datum.integer_reflections[i] for i in full_fiber_nodes(datum, cc)]
    orbit = _integer_orbit([tuple(g) for g in gens], refl)
    s_lin, s_rays = double_description(l, orbit)
    return ToricSlice(
        tuple(lat.basis),
        tuple(orbit),
        tuple(sorted(_iprim(v) for v in s_rays)),
        tuple(_iprim(v) for v in s_lin),
    )


def toric_is_smooth(datum: SphericalDatum, slice_: ToricSlice) -> bool:
    """The slice cone is generated by part of a basis of chi_star."""
    if slice_.sigma_lineality:
        return False
    coords = slice_.sigma_rays
    k, n = len(coords), datum.rank
    if k > n:
        return False
    if k == n:
        return abs(det(coords)) == 1
    g = 0
    for cols in combinations(range(n), k):
        g = math.gcd(g, int(det([[row[c] for c in cols] for row in coords])))
        if g == 1:
            return True
    return False


def is_smooth(datum: SphericalDatum, cc: ColoredCone, debug: bool = False) -> SmoothnessReport:
    ex = exceptional_obstruction(datum, cc)
    if ex is not None:
        return SmoothnessReport(False, "exceptional", f"coroot {ex}")
    report = smoothness_conditions(datum, cc)
    if debug:
        toric = toric_is_smooth(datum, toric_slice(datum, cc))
        if toric != report.smooth:
            raise EngineDisagreement(f"conditions say {report.smooth}, toric slice says {toric} for {cc}")
    return report


# Symmetric spaces with an exceptional restricted root: their restricted
# root system is BC_l and the short simple coroot carries two colors.
def exceptional_involutions(max_rank: int = 8) -> list[tuple[str, SphericalDatum]]:
    out = []
    for l in range(1, max_rank + 1):
        r = build_root_system(f"BC{l}")
        datum = make_datum(r, fibers=[1] * (l - 1) + [2], exceptional=[l], hermitian=True)
        out.append((f"SU(p,q)/S(U(p)xU(q)), p={l}<q", datum))
        out.append((f"SO({4 * l + 2})/U({2 * l + 1})", datum))
        if l == 2:
            out.append(("E6/Spin(10)xU(1)", datum))
    return out
