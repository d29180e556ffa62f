from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from smoothsym.cones import cone_from_generators
from smoothsym.exactlin import lattice_index, neg
from smoothsym.rootsys import (
    build_root_system,
    format_type_label,
    parabolic_subsystem,
    parse_type_label,
    weyl_saturate_cone,
)

ROOT_COUNTS = {
    "A1": 2, "A2": 6, "A3": 12, "A5": 30,
    "B2": 8, "B3": 18, "C3": 18, "C4": 32,
    "BC1": 4, "BC2": 12, "BC3": 24,
    "D4": 24, "D5": 40,
    "E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12,
    "A1xA1": 4,
}

# |P / Q| is the determinant of the Cartan matrix
CONNECTION_INDEX = {
    "A1": 2, "A2": 3, "A4": 5, "B3": 2, "C3": 2, "BC2": 1, "D4": 4, "D5": 4,
    "E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1, "A1xA1": 4,
}

ALL_BUILT = [
    f"{fam}{n}"
    for fam, lo in (("A", 1), ("B", 2), ("C", 3), ("BC", 1), ("D", 4))
    for n in range(lo, 9)
] + ["E6", "E7", "E8", "F4", "G2", "A1xA1"]


@pytest.mark.parametrize("label,count", sorted(ROOT_COUNTS.items()))
def test_root_counts(label, count):
    assert len(build_root_system(label).roots) == count


@pytest.mark.parametrize("label,index", sorted(CONNECTION_INDEX.items()))
def test_weight_over_root_index(label, index):
    r = build_root_system(label)
    assert lattice_index(r.root_lattice, r.weight_lattice) == index


@pytest.mark.parametrize("label", ALL_BUILT)
def test_fundamental_weight_duality(label):
    r = build_root_system(label)
    for i, w in enumerate(r.fundamental_weights):
        for j, c in enumerate(r.simple_coroots):
            assert r.ip(w, c) == int(i == j)
    for i, w in enumerate(r.fundamental_coweights):
        for j, a in enumerate(r.simple_roots):
            assert r.ip(w, a) == int(i == j)


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "BC2", "D4", "G2", "F4"])
def test_roots_closed_under_reflections(label):
    r = build_root_system(label)
    for a in r.simple_roots:
        assert {r.reflect(a, b) for b in r.roots} == r.root_set


def test_bc_coroot_convention():
    r = build_root_system("BC2")
    assert not r.reduced
    e2 = r.simple_roots[1]
    assert r.coroot(e2) == e2
    assert r.ip(r.coroot(e2), e2) == 1


def test_g2_first_root_short():
    r = build_root_system("G2")
    a1, a2 = r.simple_roots
    assert r.ip(a2, a2) == 3 * r.ip(a1, a1)


def test_parse_labels():
    assert parse_type_label("a1xa1") == (("A", 1), ("A", 1))
    assert format_type_label(parse_type_label("bc3")) == "BC3"
    for bad in ("B1", "D3", "E5", "X2", "A"):
        with pytest.raises(ValueError):
            parse_type_label(bad)


def test_diagram_automorphisms():
    assert len(build_root_system("D4").diagram_automorphisms) == 6
    assert len(build_root_system("A4").diagram_automorphisms) == 2
    assert len(build_root_system("E6").diagram_automorphisms) == 2
    assert len(build_root_system("B3").diagram_automorphisms) == 1
    assert len(build_root_system("A1xA1").diagram_automorphisms) == 2


def test_parabolic_subsystem_type():
    r = build_root_system("D5")
    sub = parabolic_subsystem(r, [2, 3, 4])
    assert sub.label == "A3"
    assert len(sub.roots) == 12


def test_valuation_cone_is_negative_chamber():
    r = build_root_system("B2")
    for w in r.fundamental_coweights:
        assert r.valuation_cone.contains(neg(w))
        assert not r.valuation_cone.contains(w)


saturate_types = st.sampled_from(["A2", "B2", "G2", "A3", "BC2"])


@given(saturate_types, st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=3))
def test_weyl_saturation_idempotent(label, coords):
    r = build_root_system(label)
    gens = []
    for c in coords:
        v = tuple(sum(Fraction(x) * a[k] for x, a in zip(c, r.simple_roots)) for k in range(r.ambient_dim))
        if any(v):
            gens.append(v)
    if not gens:
        return
    c = cone_from_generators(gens, r.ambient_dim)
    once = weyl_saturate_cone(r.simple_roots, c, r.gram)
    assert weyl_saturate_cone(r.simple_roots, once, r.gram) == once
    for g in gens:
        assert once.contains(g)
        for a in r.simple_roots:
            assert once.contains(r.reflect(a, g))
