"""Coarse maps: certification, falsification witnesses, sections,
domain decompositions, coarse inverses."""

import pytest
from hypothesis import given, settings, strategies as st

from coarsehom.coarsemaps import CoarseMap, check_coarse_embedding, \
    check_coarse_map, closeness, compose, decompose_domain, \
    displacement_set, identity_map, omega, section, table_map
from coarsehom.errors import GroupMismatchError, InvalidElementError
from coarsehom.gallery import get_map
from coarsehom.groups import IntLattice, cyclic_group

import oracles

Z = IntLattice(1)


def test_displacement_set_frozen():
    phi = get_map("z-double")
    assert displacement_set(phi, (1,), 4) == [(2,)]
    floor = get_map("z-double-floor")
    assert displacement_set(floor, (1,), 4) == [(0,), (2,)]


def test_doubling_certified():
    rep = check_coarse_embedding(get_map("z-double"), 10)
    assert rep["verdict"] == "certified-up-to-10"
    assert rep["coarse_map"]["max_fiber_size"] == 1


def test_abs_falsified_with_witness():
    rep = check_coarse_embedding(get_map("z-abs"), 10)
    assert rep["verdict"] == "falsified"
    assert rep["reverse_witness"]["pair"] == [(10,), (-10,)]
    assert rep["reverse_witness"]["source_length"] == 20
    assert rep["reverse_witness"]["cutoff"] == 0


def test_fat_fiber_embeddings_certified():
    # 2-element fibers straddle the half-radius ball edge; the checks
    # must not mistake that clipping for fiber growth or reverse-bound
    # failure.
    for name in ("z-double-floor", "z-parity-shift"):
        rep = check_coarse_embedding(get_map(name), 8)
        assert rep["verdict"] == "certified-up-to-8", name
        assert rep["coarse_map"]["max_fiber_size"] == 2


def test_coarse_inverse_certifies_as_coarse_map():
    om, _ = omega(get_map("z-double"), 8)
    rep = check_coarse_embedding(om, 8)
    assert rep["verdict"] == "certified-up-to-8"
    assert rep["coarse_map"]["proper_witness"] is None


def test_abelianize_not_proper():
    rep = check_coarse_map(get_map("f2-abelianize"), 6)
    assert rep["verdict"] == "falsified"
    assert rep["max_fiber_size"] >= 13
    assert rep["max_fiber_size"] == oracles.f2_exponent_zero_count(6)


def test_small_radius_inconclusive():
    rep = check_coarse_map(get_map("z-double"), 1)
    assert rep["verdict"] == "inconclusive"


def test_closeness_frozen():
    rep = closeness(get_map("z-double"), get_map("z-double-shift"), 8)
    assert rep["verdict"] == "close"
    assert [h for h, _ in rep["pieces"]] == [(1,)]
    far = closeness(identity_map(Z), get_map("z-double"), 8)
    assert far["verdict"] == "not-close-at-radius"


def test_compose_and_mismatch():
    d = get_map("z-double")
    inc = get_map("z-into-z2")
    comp = compose(inc, d)
    assert comp((3,)) == (6, 0)
    with pytest.raises(GroupMismatchError):
        compose(d, inc)


def test_table_map_policy():
    pairs = [[[0], [0]], [[1], [2]], [[-1], [-2]]]
    t = table_map(Z, Z, pairs, name="partial-double")
    assert t((1,)) == (2,)
    with pytest.raises(InvalidElementError):
        t((5,))


def test_section_validates():
    phi = get_map("z-double")
    sec = section(phi, 8)
    assert sec.validate()
    assert sec.x_of_y[(6,)] == (3,)
    assert phi.witness["validated_radius"] == 8


def test_domain_decomposition_floor_map():
    phi = get_map("z-double-floor")
    dec = decompose_domain(phi, 8)
    assert dec.validate(phi)
    hs = [h for _, _, h in dec.pieces]
    assert hs[0] == phi.target.identity()
    assert len(dec.pieces) == 4
    assert [(g, h) for _, g, h in dec.pieces] == [
        ((0,), (0,)), ((-1,), (0,)), ((-1,), (2,)), ((1,), (0,))]


@given(st.sampled_from(["z-double", "z-double-shift", "z-parity-shift",
                        "z-into-z2", "z-to-dihedral"]),
       st.integers(3, 7))
@settings(max_examples=25, deadline=None)
def test_domain_decomposition_validates(name, radius):
    phi = get_map(name)
    dec = decompose_domain(phi, radius)
    assert dec.validate(phi)


def test_omega_blocks_and_closed_form():
    phi = get_map("z-double")
    om, partition = omega(phi, 12)
    assert partition.hs == [(0,), (1,)]
    for y in phi.target.ball(12):
        assert om(y) == (oracles.doubling_inverse(y[0]),)
    assert om.closeness_to_identity(5) == [(0,)]


def test_omega_finite_constant_map():
    phi = get_map("z2-to-z3-const")
    om, _ = omega(phi, 3)
    for y in phi.target.elements():
        assert om(y) in phi.source.elements()
    comp = compose(phi, om)
    rep = closeness(identity_map(phi.target), comp, 3)
    assert rep["verdict"] == "close"


def test_cached_rule_and_target_check():
    calls = []

    def rule(g):
        calls.append(g)
        return (2 * g[0],)

    phi = CoarseMap(Z, Z, rule, name="counted")
    assert phi((1,)) == (2,)
    assert phi((1,)) == (2,)
    assert calls == [(1,)]
    bad = CoarseMap(Z, Z, lambda g: "junk", name="broken")
    with pytest.raises(InvalidElementError):
        bad((0,))


def test_image_and_fibers_on_ball():
    phi = get_map("z4-mod-z2")
    fibs = phi.fibers_on_ball(4)
    assert fibs[0] == [0, 2]
    assert fibs[1] == [1, 3]
