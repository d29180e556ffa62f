"""Exact rational vectors, matrices and integer lattices.

Vectors are plain tuples of :class:`fractions.Fraction`; matrices are
sequences of such rows.  Lattices carry a canonical row-style Hermite
normal form basis, so two lattices are equal iff their bases are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = Sequence[Sequence[Fraction]]


def vec(values: Iterable) -> Vector:
    """Coerce ints, strings like ``"-2/3"`` or Fractions into a Vector."""
    return tuple(Fraction(x) for x in values)


def zero(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def neg(v: Sequence) -> Vector:
    return tuple(-a for a in v)


def combo(coeffs: Sequence, vectors: Sequence[Sequence]) -> Vector:
    """Linear combination sum(c_i * v_i); vectors must be non-empty."""
    n = len(vectors[0])
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k in range(n):
                out[k] += c * v[k]
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def bilinear(u: Sequence, v: Sequence, gram: Matrix) -> Fraction:
    """u^T G v."""
    total = Fraction(0)
    for i, a in enumerate(u):
        if a:
            row = gram[i]
            total += a * sum((row[j] * b for j, b in enumerate(v) if b), Fraction(0))
    return total


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Matrix) -> list[Vector]:
    return [tuple(col) for col in zip(*m)]


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Matrix, n: int) -> list[Vector]:
    """Basis of {x in Q^n : row . x = 0 for every row}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_combination(vectors: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients c with sum c_i v_i = target, or None if no solution.

    When the vectors are dependent an arbitrary particular solution is
    returned.
    """
    k = len(vectors)
    n = len(target)
    if k == 0:
        return () if is_zero(target) else None
    # augmented system: columns are the vectors
    rows = [[Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    red, pivots = rref(rows)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        sol[p] = row[k]
    return tuple(sol)


def det(m: Matrix) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    if n == 0:
        return Fraction(1)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m: Matrix) -> list[Vector]:
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("singular matrix")
    return [tuple(row[n:]) for row in red]


def mat_mul(a: Matrix, b: Matrix) -> list[Vector]:
    bt = transpose(b)
    return [tuple(dot(row, col) for col in bt) for row in a]


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for x in values:
        d = d * x.denominator // math.gcd(d, x.denominator)
    return d


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """The primitive integer vector on the ray through a nonzero rational v."""
    fr = [Fraction(x) for x in v]
    d = common_denominator(fr)
    ints = [int(x * d) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no ray")
    return tuple(x // g for x in ints)


def integer_hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix, zero rows removed.

    Pivots are positive and increase left to right; entries above a pivot
    lie in [0, pivot).
    """
    m = [list(map(int, r)) for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[p] = m[p], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        piv = m[r][c]
        for i in range(r):
            q = m[i][c] // piv
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r] if any(row)]


@dataclass(frozen=True)
class Lattice:
    """A lattice in Q^n given by a canonical Hermite normal form basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(b) if x != 0) for b in self.basis]

    def coordinates(self, v: Sequence) -> Vector | None:
        """Rational coordinates of v in the basis, or None if v is off the span."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"dimension mismatch: {len(v)} != {self.ambient_dim}")
        rest = [Fraction(x) for x in v]
        coords = []
        for b, p in zip(self.basis, self._pivots()):
            c = rest[p] / b[p]
            coords.append(c)
            if c:
                for k in range(p, self.ambient_dim):
                    rest[k] -= c * b[k]
        if any(rest):
            return None
        return tuple(coords)

    def integer_coordinates(self, v: Sequence) -> tuple[int, ...] | None:
        c = self.coordinates(v)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def contains(self, v: Sequence) -> bool:
        return self.integer_coordinates(v) is not None

    def primitive_on_ray(self, direction: Sequence) -> Vector:
        """The primitive lattice vector on the ray through ``direction``."""
        c = self.coordinates(direction)
        if c is None or all(x == 0 for x in c):
            raise ValueError("direction is zero or outside the span of the lattice")
        ints = primitive_integer(c)
        return combo(ints, self.basis)


def hnf_basis(generators: Iterable[Sequence], ambient_dim: int | None = None) -> Lattice:
    """The lattice of integer combinations of the generators, in canonical form."""
    gens = [vec(g) for g in generators]
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient dimension needed for an empty generator list")
        ambient_dim = len(gens[0])
    if any(len(g) != ambient_dim for g in gens):
        raise ValueError("generators do not share one ambient dimension")
    d = common_denominator(x for g in gens for x in g)
    rows = integer_hnf([int(x * d) for x in g] for g in gens)
    basis = tuple(tuple(Fraction(x, d) for x in row) for row in rows)
    return Lattice(ambient_dim, basis)


def standard_lattice(n: int) -> Lattice:
    return hnf_basis([unit(n, i) for i in range(n)], n)


def lattice_contains(lattice: Lattice, v: Sequence) -> bool:
    return lattice.contains(v)


def is_primitive(lattice: Lattice, v: Sequence) -> bool:
    coords = lattice.integer_coordinates(v)
    if coords is None:
        raise ValueError("vector is not in the lattice")
    g = 0
    for x in coords:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector is not primitive")
    return g == 1


def is_lattice_basis(lattice: Lattice, vs: Sequence[Sequence]) -> bool:
    if len(vs) != lattice.rank:
        return False
    coords = [lattice.integer_coordinates(v) for v in vs]
    if any(c is None for c in coords):
        return False
    return abs(det(coords)) == 1


def lattice_index(sub: Lattice, sup: Lattice) -> int | float:
    """[sup : sub]; ``math.inf`` when sub has smaller rank."""
    coords = [sup.integer_coordinates(b) for b in sub.basis]
    if any(c is None for c in coords):
        raise ValueError("first lattice is not contained in the second")
    if sub.rank < sup.rank:
        return math.inf
    return int(abs(det(coords)))


def lattice_sum(*lattices: Lattice) -> Lattice:
    n = lattices[0].ambient_dim
    return hnf_basis([b for lat in lattices for b in lat.basis], n)


def dual_lattice(lattice: Lattice, gram: Matrix) -> Lattice:
    """{w in span(L) : (w, b) integral for all b in L} for the form ``gram``."""
    b = lattice.basis
    g = [[bilinear(x, y, gram) for y in b] for x in b]
    if b and det(g) == 0:
        raise ValueError("inner product is degenerate on the span of the lattice")
    if not b:
        return lattice
    ginv = inverse(g)
    dual = [combo(row, b) for row in ginv]
    return hnf_basis(dual, lattice.ambient_dim)


def reduce_modulo(lattice: Lattice, v: Sequence) -> Vector:
    """Canonical representative of v + L for v in the span of a lattice."""
    rest = list(vec(v))
    for b, p in zip(lattice.basis, lattice._pivots()):
        q = math.floor(rest[p] / b[p])
        if q:
            rest = [x - q * y for x, y in zip(rest, b)]
    return tuple(rest)
