import math
from itertools import product

from hypothesis import given, settings, strategies as st

from smoothsym.classify import candidate_colored_cones, data_for_type
from smoothsym.colored import ColorId, colored_cone, make_datum, validate_colored_cone
from smoothsym.exactlin import combo, neg
from smoothsym.rootsys import build_root_system
from smoothsym.symmcheck import (
    exceptional_involutions,
    exceptional_obstruction,
    full_fiber_nodes,
    is_smooth,
    levi_restricted_system,
    smoothness_conditions,
    toric_is_smooth,
    toric_slice,
)


def both_routes(datum, cc):
    a = smoothness_conditions(datum, cc).smooth
    b = toric_is_smooth(datum, toric_slice(datum, cc))
    assert a == b, cc
    return a


def grid(datum, node, top):
    """Valid cones (alpha_node^vee, -a omega_1^vee - b omega_2^vee), primitive (a, b)."""
    r = datum.root_system
    w1, w2 = r.fundamental_coweights
    out = {}
    for a, b in product(range(top + 1), repeat=2):
        if math.gcd(a, b) != 1:
            continue
        v = neg(combo([a, b], [w1, w2]))
        cc = colored_cone(datum, [r.simple_coroots[node], v], [ColorId(node + 1)])
        if validate_colored_cone(datum, cc):
            out[a, b] = cc
    return out


def test_b2_grid_only_one_zero_is_smooth():
    r = build_root_system("B2")
    d = make_datum(r)
    cones = grid(d, 0, 3)
    assert len(cones) == 8
    assert [ab for ab, cc in cones.items() if both_routes(d, cc)] == [(1, 0)]


def test_g2_short_side_never_smooth():
    (d,) = data_for_type("G2")
    cones = grid(d, 0, 7)
    assert cones
    for ab, cc in cones.items():
        assert not both_routes(d, cc), ab


def test_g2_long_side():
    r = build_root_system("G2")
    d = make_datum(r)
    assert [ab for ab, cc in grid(d, 1, 4).items() if both_routes(d, cc)] == [(0, 1)]


def test_b2_bad_reports_condition_ii():
    r = build_root_system("B2")
    d = make_datum(r)
    w1, w2 = r.fundamental_coweights
    cc = colored_cone(d, [r.simple_coroots[0], neg(combo([1, 1], [w1, w2]))], [ColorId(1)])
    rep = is_smooth(d, cc, debug=True)
    assert not rep.smooth and rep.failed_condition == "ii"
    assert "index 3" in rep.witness


def test_uncolored_chamber_smooth_iff_basis():
    r = build_root_system("A2")
    cone_gens = [neg(w) for w in r.fundamental_coweights]
    q = make_datum(r)
    p = make_datum(r, r.weight_lattice)
    # -omega_i^vee form a basis of the coweight lattice only
    assert both_routes(q, colored_cone(q, cone_gens, []))
    assert not both_routes(p, colored_cone(p, cone_gens, []))


def test_exceptional_color_obstructs():
    (d,) = {d for name, d in exceptional_involutions(2) if d.rank == 2}
    r = d.root_system
    w1, w2 = r.fundamental_coweights
    cc = colored_cone(d, [r.simple_coroots[1], neg(w1)], [ColorId(2, 1), ColorId(2, 2)])
    assert exceptional_obstruction(d, cc) == 2
    rep = is_smooth(d, cc)
    assert not rep.smooth and rep.failed_condition == "exceptional"


def test_full_fiber_nodes_need_both_colors():
    r = build_root_system("A1")
    d = make_datum(r, r.weight_lattice, fibers=[2], hermitian=True)
    (a,) = r.simple_coroots
    (w,) = r.fundamental_coweights
    half = colored_cone(d, [a, neg(w)], [ColorId(1, 1)])
    full = colored_cone(d, [a, neg(w)], [ColorId(1, 1), ColorId(1, 2)])
    assert full_fiber_nodes(d, half) == []
    assert full_fiber_nodes(d, full) == [0]


def test_levi_system_type():
    r = build_root_system("D5")
    d = make_datum(r)
    cc = colored_cone(d, list(r.simple_coroots[:4]) + [neg(r.fundamental_coweights[0])], [ColorId(i) for i in range(1, 5)])
    assert levi_restricted_system(d, cc).label == "A4"


SMALL = ["A1xA1", "A2", "A3", "B2", "B3", "C3", "BC2", "G2"]


@st.composite
def candidates(draw):
    label = draw(st.sampled_from(SMALL))
    data = data_for_type(label)
    d = draw(st.sampled_from(data))
    cands = list(candidate_colored_cones(d, bound=3))
    return d, draw(st.sampled_from(cands))


@settings(max_examples=80)
@given(candidates())
def test_engines_agree_on_random_candidates(pair):
    d, cc = pair
    if exceptional_obstruction(d, cc) is None:
        both_routes(d, cc)


def test_toric_slice_cone_is_pointed_for_smooth():
    r = build_root_system("A2")
    d = make_datum(r, r.weight_lattice)
    a1, a2 = r.simple_coroots
    v = neg(combo([1, 1], r.fundamental_coweights))
    s = toric_slice(d, colored_cone(d, [a1, v], [ColorId(1)]))
    assert s.sigma.is_pointed
    assert toric_is_smooth(d, s)
