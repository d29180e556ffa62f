"""Exact rational polyhedral cones.

A cone is stored in canonical form: a basis of its lineality space and
its extreme rays modulo lineality, all as primitive integer vectors in the
ambient coordinates, sorted.  Facets and equations (the dual description)
are computed on demand by the double description method, which here runs
entirely over Python integers.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exactlin import (
    Matrix,
    Vector,
    bilinear,
    mat_vec,
    nullspace,
    primitive_integer,
    rref,
    solve_combination,
    vec,
)

IntVec = tuple[int, ...]


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(map(operator.mul, a, b))


def _prim(v: Sequence[int]) -> IntVec:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        piv = m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [piv[c] * x - f * y for x, y in zip(m[i], piv)]
        rank += 1
        if rank == len(m):
            break
    return rank


def _as_int_rows(rows: Iterable[Sequence]) -> list[IntVec]:
    out = []
    for r in rows:
        fr = vec(r)
        if any(fr):
            out.append(primitive_integer(fr))
    return out


def double_description(dim: int, inequalities: Sequence[IntVec], equations: Sequence[IntVec] = ()):
    """Generators of {x : a.x >= 0 for inequalities, e.x = 0 for equations}.

    Returns (lineality basis, extreme rays modulo lineality), both integer.
    Adjacency of rays uses the combinatorial zero-set test, valid because
    the ray list is kept minimal at every step.
    """
    lin: list[IntVec] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]

    def pivot_out(a: IntVec) -> IntVec | None:
        nonlocal lin
        k = next((i for i, l in enumerate(lin) if _idot(a, l) != 0), None)
        if k is None:
            return None
        l0 = lin[k]
        s0 = _idot(a, l0)
        if s0 < 0:
            l0 = tuple(-x for x in l0)
            s0 = -s0
        rest = []
        for i, l in enumerate(lin):
            if i != k:
                t = _idot(a, l)
                rest.append(_prim([s0 * x - t * y for x, y in zip(l, l0)]) if t else l)
        lin = rest
        return l0

    for e in equations:
        if any(e):
            pivot_out(tuple(e))

    rays: list[tuple[IntVec, frozenset[int]]] = []
    seen: set[int] = set()
    for idx, a in enumerate(inequalities):
        a = tuple(a)
        if not any(a):
            continue
        prev = frozenset(seen)
        k = next((i for i, l in enumerate(lin) if _idot(a, l) != 0), None)
        if k is not None:
            l0 = pivot_out(a)
            s0 = _idot(a, l0)
            new_rays = []
            for r, z in rays:
                t = _idot(a, r)
                r2 = _prim([s0 * x - t * y for x, y in zip(r, l0)]) if t else r
                new_rays.append((r2, z | {idx}))
            new_rays.append((l0, prev))
            rays = new_rays
        else:
            vals = [_idot(a, r) for r, _ in rays]
            pos = [i for i, v in enumerate(vals) if v > 0]
            neg = [i for i, v in enumerate(vals) if v < 0]
            if neg:
                new_rays = [rays[i] for i in pos]
                new_rays += [(rays[i][0], rays[i][1] | {idx}) for i, v in enumerate(vals) if v == 0]
                for i in pos:
                    zp = rays[i][1]
                    for j in neg:
                        common = zp & rays[j][1]
                        adjacent = True
                        for m, (_, zm) in enumerate(rays):
                            if m != i and m != j and common <= zm:
                                adjacent = False
                                break
                        if not adjacent:
                            continue
                        p, n = rays[i][0], rays[j][0]
                        vp, vn = vals[i], vals[j]
                        new = _prim([vp * x - vn * y for x, y in zip(n, p)])
                        new_rays.append((new, common | {idx}))
                rays = new_rays
            else:
                rays = [(r, z | {idx}) if v == 0 else (r, z) for (r, z), v in zip(rays, vals)]
        seen.add(idx)
    return lin, [r for r, _ in rays]


def _canonical_lineality(lin: Sequence[Sequence[int]]) -> tuple[IntVec, ...]:
    if not lin:
        return ()
    red, _ = rref(lin)
    return tuple(primitive_integer(r) for r in red)


def _project_off(lineality: Sequence[IntVec], v: Sequence[int]) -> Vector:
    """Orthogonal projection (standard product) of v onto lineality^perp."""
    if not lineality:
        return vec(v)
    gram = [[Fraction(_idot(a, b)) for b in lineality] for a in lineality]
    rhs = [Fraction(_idot(a, v)) for a in lineality]
    coeffs = solve_combination([tuple(col) for col in zip(*gram)], rhs)
    out = list(vec(v))
    for c, a in zip(coeffs, lineality):
        for k in range(len(out)):
            out[k] -= c * a[k]
    return tuple(out)


def _canonical(dim: int, lin, rays) -> "Cone":
    lineality = _canonical_lineality(lin)
    canon = set()
    for r in rays:
        p = _project_off(lineality, r)
        if any(p):
            canon.add(primitive_integer(p))
    return Cone(dim, tuple(sorted(canon)), lineality)


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone in canonical form (see module docstring)."""

    ambient_dim: int
    rays: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...] = ()

    @cached_property
    def _hrep(self) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
        eqs, facets = double_description(self.ambient_dim, self.rays, self.lineality)
        eqs_c = _canonical_lineality(eqs)
        facets_c = _canonical(self.ambient_dim, eqs_c, facets).rays if facets else ()
        return eqs_c, facets_c

    @property
    def equations(self) -> tuple[IntVec, ...]:
        return self._hrep[0]

    @property
    def facets(self) -> tuple[IntVec, ...]:
        """Inward facet normals e with e.x >= 0 on the cone (standard product)."""
        return self._hrep[1]

    @cached_property
    def dim(self) -> int:
        return integer_rank(self.rays + self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    @property
    def is_simplicial(self) -> bool:
        return self.is_pointed and len(self.rays) == self.dim

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        return all(sum(a * x for a, x in zip(e, v)) == 0 for e in self.equations) and all(
            sum(a * x for a, x in zip(f, v)) >= 0 for f in self.facets
        )

    def relint_contains(self, v: Sequence) -> bool:
        v = vec(v)
        return all(sum(a * x for a, x in zip(e, v)) == 0 for e in self.equations) and all(
            sum(a * x for a, x in zip(f, v)) > 0 for f in self.facets
        )

    def relint_point(self) -> Vector:
        """A point of the relative interior (the sum of the extreme rays)."""
        out = [Fraction(0)] * self.ambient_dim
        for r in self.rays:
            for k, x in enumerate(r):
                out[k] += x
        return tuple(out)

    def intersect(self, other: "Cone") -> "Cone":
        _check_dims(self, other)
        return cone_from_inequalities(
            self.ambient_dim, self.facets + other.facets, self.equations + other.equations
        )

    def linear_span_equations(self) -> tuple[IntVec, ...]:
        return self.equations

    def __str__(self) -> str:
        body = ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.rays)
        if self.lineality:
            body += " + lin[" + ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.lineality) + "]"
        return f"cone[{body}]"


def _check_dims(*cs: Cone) -> None:
    if len({c.ambient_dim for c in cs}) > 1:
        raise ValueError("cones live in different ambient spaces")


def cone_from_generators(vs: Iterable[Sequence], ambient_dim: int | None = None) -> Cone:
    """The cone generated by the vectors, with redundant generators removed."""
    vs = [vec(v) for v in vs]
    if ambient_dim is None:
        if not vs:
            raise ValueError("ambient dimension needed for an empty generator list")
        ambient_dim = len(vs[0])
    if any(len(v) != ambient_dim for v in vs):
        raise ValueError("generators have inconsistent dimensions")
    gens = _as_int_rows(vs)
    if gens and len(gens) <= ambient_dim and integer_rank(gens) == len(gens):
        # independent generators: every one spans an extreme ray
        return Cone(ambient_dim, tuple(sorted(set(gens))), ())
    eqs, facets = double_description(ambient_dim, gens)
    lin, rays = double_description(ambient_dim, facets, eqs)
    return _canonical(ambient_dim, lin, rays)


def cone_from_inequalities(dim: int, inequalities: Iterable[Sequence], equations: Iterable[Sequence] = ()) -> Cone:
    """The cone {x : a.x >= 0, e.x = 0} for rational rows a, e."""
    ineqs = _as_int_rows(inequalities)
    eqs = _as_int_rows(equations)
    lin, rays = double_description(dim, ineqs, eqs)
    return _canonical(dim, lin, rays)


def subspace_equations(span: Sequence[Sequence], dim: int) -> list[Vector]:
    """Linear equations (standard product) cutting out span(span)."""
    return nullspace([vec(s) for s in span], dim) if span else [
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)
    ]


def dual_cone(c: Cone, gram: Matrix | None = None, span: Sequence[Sequence] | None = None) -> Cone:
    """{w in span : (w, x) >= 0 for all x in c} for the bilinear form ``gram``.

    ``span`` restricts the dual to a subspace (the whole space by default),
    which is how duals inside the span of a root system are formed.
    """
    n = c.ambient_dim
    if gram is None:
        ineqs = [vec(r) for r in c.rays]
        eqs = [vec(l) for l in c.lineality]
    else:
        ineqs = [mat_vec(gram, vec(r)) for r in c.rays]
        eqs = [mat_vec(gram, vec(l)) for l in c.lineality]
    if span is not None:
        eqs = eqs + subspace_equations(span, n)
    return cone_from_inequalities(n, ineqs, eqs)


def faces(c: Cone) -> list[Cone]:
    """All faces of a pointed cone, from {0} up to the cone itself."""
    if not c.is_pointed:
        raise ValueError("faces() requires a pointed cone")
    tight = [frozenset(i for i, r in enumerate(c.rays) if _idot(f, r) == 0) for f in c.facets]
    full = frozenset(range(len(c.rays)))
    found = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for t in tight:
                u = s & t
                if u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    out = [Cone(c.ambient_dim, tuple(c.rays[i] for i in sorted(s)), ()) for s in found]
    out.sort(key=lambda f: (len(f.rays), f.rays))
    return out


def contains(c: Cone, v: Sequence) -> bool:
    return c.contains(v)


def relint_contains(c: Cone, v: Sequence) -> bool:
    return c.relint_contains(v)


def relint_meets(c1: Cone, c2: Cone) -> bool:
    """Whether the relative interiors of two cones intersect."""
    _check_dims(c1, c2)
    q = c1.intersect(c2).relint_point()
    return c1.relint_contains(q) and c2.relint_contains(q)


def relint_meets_closed(c: Cone, d: Cone) -> bool:
    """Whether the relative interior of ``c`` meets the closed cone ``d``."""
    _check_dims(c, d)
    return c.relint_contains(c.intersect(d).relint_point())


def is_face_of(f: Cone, c: Cone) -> bool:
    """Whether ``f`` is a face of the pointed cone ``c``."""
    if not f.is_pointed or not all(c.contains(r) for r in f.rays):
        return False
    supporting = [e for e in c.facets if all(_idot(e, r) == 0 for r in f.rays)]
    face_rays = tuple(r for r in c.rays if all(_idot(e, r) == 0 for e in supporting))
    return face_rays == f.rays


def _subtract(region: Cone, piece: Cone, full_dim: int) -> list[Cone]:
    """Closed full-dimensional pieces covering region minus piece."""
    if all(piece.contains(r) for r in region.rays) and all(
        piece.contains(l) and piece.contains(tuple(-x for x in l)) for l in region.lineality
    ):
        return []
    if region.intersect(piece).dim < full_dim:
        return [region]
    out = []
    kept: list[IntVec] = []
    for f in piece.facets:
        flipped = tuple(-x for x in f)
        part = cone_from_inequalities(
            region.ambient_dim, region.facets + tuple(kept) + (flipped,), region.equations
        )
        if part.dim == full_dim:
            out.append(part)
        kept.append(f)
    return out


def uncovered_point(target: Cone, pieces: Sequence[Cone]) -> Vector | None:
    """A point of ``target`` outside every piece, or None if covered.

    Rays of the target are tried first so that witnesses are readable;
    otherwise region subtraction supplies an interior point of a residual.
    """
    _check_dims(target, *pieces)
    for r in target.rays:
        if not any(p.contains(r) for p in pieces):
            return vec(r)
    full_dim = target.dim
    span_eqs = target.equations
    residual = [target]
    for p in pieces:
        clipped = cone_from_inequalities(target.ambient_dim, p.facets, p.equations + span_eqs)
        if clipped.dim < full_dim:
            continue
        nxt = []
        for region in residual:
            nxt.extend(_subtract(region, clipped, full_dim))
        residual = nxt
        if not residual:
            return None
    if not residual:
        return None
    return residual[0].relint_point()


def cone_covers(target: Cone, pieces: Sequence[Cone]) -> bool:
    """Whether target is contained in the union of the pieces."""
    return uncovered_point(target, pieces) is None


def gram_pairing(u: Sequence, v: Sequence, gram: Matrix) -> Fraction:
    return bilinear(vec(u), vec(v), gram)
