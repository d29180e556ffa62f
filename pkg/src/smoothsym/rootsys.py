"""Restricted root systems over the rationals.

Classical families use the coordinate models

* ``A_l``: e_i - e_j in Q^(l+1), simple roots e_i - e_(i+1);
* ``B_l``: +-e_i +- e_j, +-e_i, simple roots e_1-e_2, ..., e_(l-1)-e_l, e_l;
* ``C_l``: +-e_i +- e_j, +-2e_i, last simple root 2e_l;
* ``BC_l``: the union of B_l and C_l, simple roots as for B_l;
* ``D_l``: +-e_i +- e_j, last simple root e_(l-1)+e_l,

all with the standard inner product.  ``E``, ``F`` and ``G`` are realized
in simple-root coordinates with the symmetrized Cartan matrix as Gram
matrix (short roots of squared length 2).  Numbering is Bourbaki's; for
``G2`` the first simple root is short.

Coroots follow the convention 2b/(a,a) * a with b = 1/2 when 2a is also a
root, so in type BC the coroot of e_l is e_l itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

from .cones import Cone, cone_from_generators
from .exactlin import (
    Lattice,
    Vector,
    bilinear,
    combo,
    hnf_basis,
    inverse,
    neg,
    scale,
    solve_combination,
    sub,
    vec,
)

TypeLabel = tuple[tuple[str, int], ...]

FAMILIES = ("A", "B", "C", "D", "BC", "E", "F", "G")


def parse_type_label(text: str) -> TypeLabel:
    """``"A1xA1"`` -> (("A", 1), ("A", 1)); validates each factor."""
    parts = []
    for chunk in text.strip().split("x"):
        fam = chunk.rstrip("0123456789")
        digits = chunk[len(fam):]
        if not fam or not digits:
            raise ValueError(f"malformed root system type {text!r}")
        parts.append((fam.upper(), int(digits)))
    for fam, n in parts:
        _check_admissible(fam, n)
    return tuple(parts)


def format_type_label(label: TypeLabel) -> str:
    return "x".join(f"{f}{n}" for f, n in label)


def _check_admissible(fam: str, n: int) -> None:
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "BC": n >= 1,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(fam)
    if not ok:
        raise ValueError(f"no root system of type {fam}{n}")


def _e(n: int, *pairs: tuple[int, int]) -> Vector:
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def _classical(fam: str, l: int):
    """(dimension, roots, simple roots) for the coordinate models."""
    if fam == "A":
        n = l + 1
        roots = [_e(n, (i, 1), (j, -1)) for i in range(n) for j in range(n) if i != j]
        simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(l)]
        return n, roots, simple
    n = l
    long_pairs = [
        _e(n, (i, s), (j, t)) for i, j in combinations(range(n), 2) for s in (1, -1) for t in (1, -1)
    ]
    short = [_e(n, (i, s)) for i in range(n) for s in (1, -1)]
    double = [_e(n, (i, 2 * s)) for i in range(n) for s in (1, -1)]
    chain = [_e(n, (i, 1), (i + 1, -1)) for i in range(l - 1)]
    if fam == "B":
        return n, long_pairs + short, chain + [_e(n, (l - 1, 1))]
    if fam == "C":
        return n, long_pairs + double, chain + [_e(n, (l - 1, 2))]
    if fam == "BC":
        return n, long_pairs + short + double, chain + [_e(n, (l - 1, 1))]
    if fam == "D":
        return n, long_pairs, chain + [_e(n, (l - 2, 1), (l - 1, 1))]
    raise ValueError(fam)


def _exceptional_cartan(fam: str, l: int) -> list[list[int]]:
    """Cartan matrix A[i][j] = <alpha_i^vee, alpha_j> (Bourbaki numbering)."""
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j], a[j][i] = aij, aji

    if fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, l - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        # alpha_2 long, alpha_3 short
        link(1, 2, aij=-1, aji=-2)
        link(2, 3)
    elif fam == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, aij=-3, aji=-1)
    return a


def _exceptional(fam: str, l: int):
    cart = _exceptional_cartan(fam, l)
    # squared lengths: short roots 2
    ratio = {"E": 1, "F": 2, "G": 3}[fam]
    if fam == "E":
        lengths = [2] * l
    elif fam == "F":
        lengths = [2 * ratio, 2 * ratio, 2, 2]
    else:
        lengths = [2, 2 * ratio]
    gram = [[Fraction(cart[i][j] * lengths[i], 2) for j in range(l)] for i in range(l)]
    simple = [tuple(Fraction(int(i == j)) for j in range(l)) for i in range(l)]
    return l, gram, simple


def _close_under_reflections(simple: Sequence[Vector], gram) -> list[Vector]:
    roots = set(simple) | {neg(a) for a in simple}
    frontier = list(roots)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = sub(v, scale(2 * bilinear(v, a, gram) / bilinear(a, a, gram), a))
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(roots)


@dataclass(frozen=True)
class Component:
    """An irreducible piece of a (sub)system; ``nodes`` index simple roots.

    For type A the nodes are listed in path order.
    """

    family: str
    rank: int
    nodes: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootSystem:
    """A possibly non-reduced root system realized in Q^n."""

    type_label: TypeLabel
    ambient_dim: int
    gram: tuple[tuple[Fraction, ...], ...]
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]

    # basic structure -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def label(self) -> str:
        return format_type_label(self.type_label) if self.type_label else "empty"

    @cached_property
    def root_set(self) -> frozenset[Vector]:
        return frozenset(self.roots)

    @property
    def reduced(self) -> bool:
        return not any(scale(2, a) in self.root_set for a in self.roots)

    def ip(self, u: Sequence, v: Sequence) -> Fraction:
        return bilinear(u, v, self.gram)

    def coroot(self, alpha: Sequence) -> Vector:
        alpha = vec(alpha)
        if alpha not in self.root_set:
            raise ValueError(f"{alpha} is not a root")
        b = Fraction(1, 2) if scale(2, alpha) in self.root_set else Fraction(1)
        return scale(2 * b / self.ip(alpha, alpha), alpha)

    def reflect(self, alpha: Sequence, v: Sequence) -> Vector:
        alpha = vec(alpha)
        return sub(vec(v), scale(2 * self.ip(v, alpha) / self.ip(alpha, alpha), alpha))

    @cached_property
    def simple_coroots(self) -> tuple[Vector, ...]:
        return tuple(self.coroot(a) for a in self.simple_roots)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Entry (i, j) is (alpha_i^vee, alpha_j) with the standard coroot."""
        s = self.simple_roots
        return tuple(
            tuple(2 * self.ip(a, b) / self.ip(a, a) for b in s) for a in s
        )

    # weights ---------------------------------------------------------------
    def _dual_in_span(self, targets: Sequence[Vector]) -> tuple[Vector, ...]:
        """Vectors x_i in span(simple roots) with (x_i, t_j) = delta_ij."""
        s = self.simple_roots
        m = [[self.ip(a, t) for t in targets] for a in s]
        inv = inverse(m)
        # x_i = sum_k c_ik alpha_k with sum_k c_ik m[k][j] = delta_ij, so c = m^-1 rows
        return tuple(combo(row, s) for row in inv)

    @cached_property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        return self._dual_in_span(self.simple_coroots)

    @cached_property
    def fundamental_coweights(self) -> tuple[Vector, ...]:
        return self._dual_in_span(self.simple_roots)

    @cached_property
    def root_lattice(self) -> Lattice:
        return hnf_basis(self.simple_roots, self.ambient_dim)

    @cached_property
    def weight_lattice(self) -> Lattice:
        return hnf_basis(self.fundamental_weights, self.ambient_dim)

    @cached_property
    def coroot_lattice(self) -> Lattice:
        return hnf_basis(self.simple_coroots, self.ambient_dim)

    @cached_property
    def coweight_lattice(self) -> Lattice:
        return hnf_basis(self.fundamental_coweights, self.ambient_dim)

    @cached_property
    def dominant_chamber(self) -> Cone:
        return cone_from_generators(self.fundamental_coweights, self.ambient_dim)

    @cached_property
    def valuation_cone(self) -> Cone:
        """The negative closed Weyl chamber -C+ inside the span of the roots."""
        return cone_from_generators([neg(w) for w in self.fundamental_coweights], self.ambient_dim)

    def span_coordinates(self, v: Sequence) -> Vector:
        """Coordinates of v in the basis of simple roots."""
        c = solve_combination(self.simple_roots, vec(v))
        if c is None:
            raise ValueError("vector is not in the span of the roots")
        return c

    # diagram -----------------------------------------------------------------
    @cached_property
    def components(self) -> tuple[Component, ...]:
        return classify_components(self, range(self.rank))

    @cached_property
    def diagram_automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """Permutations of the simple roots preserving the Cartan matrix."""
        a = self.cartan_matrix
        n = self.rank
        out = []

        def extend(perm: list[int]) -> None:
            k = len(perm)
            if k == n:
                out.append(tuple(perm))
                return
            for c in range(n):
                if c in perm:
                    continue
                if a[k][k] != a[c][c]:
                    continue
                if all(a[k][j] == a[c][perm[j]] and a[j][k] == a[perm[j]][c] for j in range(k)):
                    # the non-reduced flag must be preserved too
                    if (scale(2, self.simple_roots[k]) in self.root_set) == (
                        scale(2, self.simple_roots[c]) in self.root_set
                    ):
                        extend(perm + [c])

        extend([])
        return tuple(sorted(out))

    def apply_automorphism(self, perm: Sequence[int], v: Sequence) -> Vector:
        """The linear map on span(R) sending alpha_i to alpha_perm(i)."""
        c = self.span_coordinates(v)
        return combo(c, [self.simple_roots[perm[i]] for i in range(self.rank)])

    # subsystems ----------------------------------------------------------------
    def parabolic_subsystem(self, indices) -> "RootSystem":
        """Roots in the span of the chosen simple roots, with those as base."""
        idx = sorted(set(indices))
        simple = tuple(self.simple_roots[i] for i in idx)
        if not simple:
            return RootSystem((), self.ambient_dim, self.gram, (), ())
        roots = tuple(r for r in self.roots if solve_combination(simple, r) is not None)
        comps = classify_components(self, idx)
        label = tuple((c.family, c.rank) for c in comps)
        return RootSystem(label, self.ambient_dim, self.gram, roots, simple)

    def weyl_orbit(self, v: Sequence, reflections: Sequence[Vector] | None = None, limit: int = 200000) -> list[Vector]:
        gens = self.simple_roots if reflections is None else reflections
        return orbit_closure([vec(v)], gens, self.gram, limit)


def orbit_closure(vectors, reflections, gram, limit: int = 200000) -> list[Vector]:
    """Close a vector set under the given reflections to a fixed point."""
    seen = {vec(v) for v in vectors}
    frontier = list(seen)
    refl = [(a, bilinear(a, a, gram)) for a in reflections]
    while frontier:
        nxt = []
        for v in frontier:
            for a, aa in refl:
                c = 2 * bilinear(v, a, gram) / aa
                if c == 0:
                    continue
                w = tuple(x - c * y for x, y in zip(v, a))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise RuntimeError("orbit exceeds the size bound")
        frontier = nxt
    return sorted(seen)


def classify_components(r: RootSystem, indices) -> tuple[Component, ...]:
    """Split simple roots into connected Dynkin components and name them."""
    idx = sorted(set(indices))
    a = r.cartan_matrix
    adj = {i: [j for j in idx if j != i and a[i][j] != 0] for i in idx}
    seen: set[int] = set()
    comps = []
    for start in idx:
        if start in seen:
            continue
        stack, part = [start], []
        seen.add(start)
        while stack:
            x = stack.pop()
            part.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(_name_component(r, sorted(part), adj))
    comps.sort(key=lambda c: c.nodes[0] if c.family != "A" else min(c.nodes))
    return tuple(comps)


def _name_component(r: RootSystem, nodes: list[int], adj) -> Component:
    a = r.cartan_matrix
    n = len(nodes)
    doubled = [i for i in nodes if scale(2, r.simple_roots[i]) in r.root_set]
    degree = {i: len(adj[i]) for i in nodes}
    ends = [i for i in nodes if degree[i] <= 1]

    def path_from(start: int) -> tuple[int, ...]:
        order, prev, cur = [start], None, start
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                return tuple(order)
            prev, cur = cur, nxt[0]
            order.append(cur)

    if doubled:
        return Component("BC", n, path_from(min(ends)))
    if n == 1:
        return Component("A", 1, (nodes[0],))
    multi = [(i, j) for i in nodes for j in adj[i] if i < j and a[i][j] * a[j][i] > 1]
    if any(deg > 2 for deg in degree.values()):
        branch = next(i for i in nodes if degree[i] == 3)
        arms = []
        for y in adj[branch]:
            length, prev, cur = 1, branch, y
            while True:
                nxt = [z for z in adj[cur] if z != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return Component("D", n, tuple(nodes))
        return Component("E", n, tuple(nodes))
    order = path_from(min(ends))
    if not multi:
        return Component("A", n, order)
    i, j = multi[0]
    if a[i][j] * a[j][i] == 3:
        return Component("G", 2, order)
    if n == 2:
        return Component("B", 2, order)
    pos = sorted((order.index(i), order.index(j)))
    if pos[0] != 0 and pos[1] != n - 1:
        return Component("F", 4, order)
    # the doubled edge sits at one end; compare lengths there
    end, inner = (order[0], order[1]) if pos[0] == 0 else (order[-1], order[-2])
    end_short = r.ip(r.simple_roots[end], r.simple_roots[end]) < r.ip(r.simple_roots[inner], r.simple_roots[inner])
    return Component("B" if end_short else "C", n, order)


@lru_cache(maxsize=None)
def build_root_system(label: str | TypeLabel) -> RootSystem:
    """Realize the (possibly reducible) root system named by ``label``."""
    parts = parse_type_label(label) if isinstance(label, str) else tuple(label)
    for fam, n in parts:
        _check_admissible(fam, n)
    blocks = []
    for fam, n in parts:
        if fam in ("E", "F", "G"):
            dim, gram, simple = _exceptional(fam, n)
            roots = _close_under_reflections(simple, gram)
        else:
            dim, roots, simple = _classical(fam, n)
            gram = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        blocks.append((dim, gram, roots, simple))
    total = sum(b[0] for b in blocks)
    gram_all = [[Fraction(0)] * total for _ in range(total)]
    roots_all: list[Vector] = []
    simple_all: list[Vector] = []
    off = 0
    for dim, gram, roots, simple in blocks:
        for i in range(dim):
            for j in range(dim):
                gram_all[off + i][off + j] = Fraction(gram[i][j])

        def pad(v, off=off, dim=dim):
            return (Fraction(0),) * off + tuple(v) + (Fraction(0),) * (total - off - dim)

        roots_all += [pad(x) for x in roots]
        simple_all += [pad(x) for x in simple]
        off += dim
    return RootSystem(
        tuple(parts),
        total,
        tuple(tuple(r) for r in gram_all),
        tuple(sorted(set(roots_all))),
        tuple(simple_all),
    )


def coroot(r: RootSystem, alpha: Sequence) -> Vector:
    return r.coroot(alpha)


def fundamental_coweights(r: RootSystem) -> tuple[Vector, ...]:
    return r.fundamental_coweights


def weyl_reflect(r: RootSystem, alpha: Sequence, v: Sequence) -> Vector:
    return r.reflect(alpha, v)


def parabolic_subsystem(r: RootSystem, indices) -> RootSystem:
    return r.parabolic_subsystem(indices)


def weyl_saturate_cone(reflections: Sequence[Sequence], c: Cone, gram, limit: int = 200000) -> Cone:
    """Smallest cone containing ``c`` and stable under each reflection."""
    gens = [vec(x) for x in c.rays] + [vec(x) for x in c.lineality] + [neg(vec(x)) for x in c.lineality]
    if not reflections or not gens:
        return c
    orbit = orbit_closure(gens, [vec(a) for a in reflections], gram, limit)
    return cone_from_generators(orbit, c.ambient_dim)
