from itertools import product

import pytest

from smoothsym.classify import (
    SearchConfig,
    candidate_colored_cones,
    count_orbits,
    data_for_type,
    enumerate_intermediate_lattices,
    enumerate_picard_one,
    reference_catalog_for,
    supported_types,
    verify_against_catalog,
)
from smoothsym.colored import (
    is_ample_two_orbit,
    is_complete,
    off_shared_divisor,
    picard_rank,
    validate_colored_fan,
)
from smoothsym.exactlin import add, lattice_index, reduce_modulo, scale
from smoothsym.rootsys import build_root_system
from smoothsym.symmcheck import smoothness_conditions, toric_is_smooth, toric_slice


def subgroup_count_oracle(label):
    """Subgroups of P/Q by closing every subset of classes under addition."""
    r = build_root_system(label)
    q = r.root_lattice
    reps = {reduce_modulo(q, combo) for combo in _small_weights(r)}
    reps = sorted(reps)
    zero = reduce_modulo(q, (0,) * r.ambient_dim)
    found = set()
    for mask in range(1 << len(reps)):
        group = {zero} | {reps[i] for i in range(len(reps)) if mask >> i & 1}
        closed = all(reduce_modulo(q, add(x, y)) in group for x in group for y in group)
        if closed:
            found.add(frozenset(group))
    return len(found)


def _small_weights(r):
    ws = r.fundamental_weights
    for cs in product(range(4), repeat=len(ws)):
        v = (0,) * r.ambient_dim
        for c, w in zip(cs, ws):
            v = add(v, scale(c, w))
        yield v


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "BC2", "D4", "A1xA1", "G2", "A5"])
def test_lattice_count_matches_subgroup_oracle(label):
    r = build_root_system(label)
    lats = enumerate_intermediate_lattices(r)
    assert len(lats) == subgroup_count_oracle(label)
    assert len(set(lats)) == len(lats)
    for lat in lats:
        assert all(lat.contains(a) for a in r.simple_roots)
        assert lattice_index(lat, r.weight_lattice) >= 1


def test_lattice_counts_small():
    count = lambda t: len(enumerate_intermediate_lattices(build_root_system(t)))
    assert count("A2") == 2
    assert count("BC3") == 1
    assert count("A1xA1") == 5


def test_data_for_type_includes_hermitian():
    data = data_for_type("A1")
    assert any(d.fibers == (2,) for d in data)
    assert all(not d.hermitian for d in data_for_type("A2"))


def test_supported_types_rank_six():
    ts = supported_types(6)
    assert "A1xA1" in ts and "BC1" in ts and "E8" in ts and "G2" in ts
    assert "B7" not in ts and "D4" in ts and "C2" not in ts


def test_candidates_are_valid_and_bounded():
    for d in data_for_type("B3"):
        for cc in candidate_colored_cones(d, bound=4):
            assert cc.cone.dim == d.rank


@pytest.mark.parametrize("label", ["A1", "A1xA1", "A2", "B2", "C3", "BC2", "G2"])
def test_pruned_search_equals_full_search(label):
    a = {e.key() for e in enumerate_picard_one(label, SearchConfig(prune=True))}
    b = {e.key() for e in enumerate_picard_one(label, SearchConfig(prune=False))}
    assert a == b


@pytest.mark.parametrize("label", ["A2", "B3", "C3", "BC3", "D4", "G2", "E6"])
def test_bound_doubling_is_stable(label):
    rank = build_root_system(label).rank
    a = {e.key() for e in enumerate_picard_one(label)}
    b = {e.key() for e in enumerate_picard_one(label, SearchConfig(bound=2 * (rank + 2)))}
    assert a == b


def check_entry(e):
    d, f = e.datum, e.fan
    assert validate_colored_fan(d, f)
    assert is_complete(d, f)
    for cc in f.maximal_cones:
        assert smoothness_conditions(d, cc).smooth
        assert toric_is_smooth(d, toric_slice(d, cc))
    assert picard_rank(d, f) == 1
    if e.orbit_count == 2:
        assert is_ample_two_orbit(d, f, off_shared_divisor(d, f))


@pytest.mark.parametrize("label", supported_types(5))
def test_catalog_entries_satisfy_invariants(label):
    for e in reference_catalog_for(label):
        check_entry(e)


@pytest.mark.parametrize("label", supported_types(4))
def test_enumerated_entries_satisfy_invariants(label):
    entries = enumerate_picard_one(label)
    for e in entries:
        check_entry(e)
    # at most one entry per datum, up to diagram symmetry
    by_datum = {}
    for e in entries:
        by_datum.setdefault(e.datum.key(), []).append(e)
    assert all(count_orbits(group) == 1 for group in by_datum.values())


def test_catalog_sizes():
    assert len(reference_catalog_for("C4")) == 1
    assert reference_catalog_for("E7") == []
    for t in ("E6", "E8", "F4"):
        assert reference_catalog_for(t) == []
    a3 = reference_catalog_for("A3")
    assert len(a3) == 2 and count_orbits(a3) == 1
    assert all(e.orbit_count == 1 for e in a3)


@pytest.mark.parametrize("label", ["C4", "E7", "B2", "D5", "G2", "BC3", "A1xA1"])
def test_verify_matches(label):
    rep = verify_against_catalog(label)
    assert rep.match, rep.details()


def test_a3_has_an_extra_two_orbit_entry():
    rep = verify_against_catalog("A3")
    assert not rep.match
    assert len(rep.missing) == 0 and len(rep.extra) == 1
    (e,) = [x for x in rep.enumerated if x.label.startswith("uncatalogued")]
    check_entry(e)
    r = e.datum.root_system
    assert e.orbit_count == 2
    assert lattice_index(r.root_lattice, e.datum.chi) == 2


def test_hermitian_flags():
    for t in ("C3", "C4", "C5"):
        assert not any(e.hermitian_possible for e in reference_catalog_for(t))
    flags = {e.label: e.hermitian_possible for e in reference_catalog_for("B2")}
    assert flags["B_2 simple, chi = weight lattice"] is False
