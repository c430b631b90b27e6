"""Relational-system tests: ball geometry identities, normal structure,
invariant ball sets, fixed points, one-local retracts."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from conftest import random_reflexive_involutive_system, random_selfmap
from relmetric.errors import HypothesisError, InputError, StructureError
from relmetric.relsys import RelSys, SelfMap


def two_chain() -> RelSys:
    le = [("0", "0"), ("0", "1"), ("1", "1")]
    ge = [(y, x) for x, y in le]
    return RelSys.make(["0", "1"], {"le": le, "ge": ge})


def crown() -> RelSys:
    # two incomparable tops over two incomparable bottoms, order relation
    le = {(x, x) for x in "abcd"} | {("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")}
    ge = {(y, x) for x, y in le}
    return RelSys.make(list("abcd"), {"le": le, "ge": ge})


def diamond() -> RelSys:
    # the complete lattice 0 < a,b < 1 as an order system
    le = {(x, x) for x in "0ab1"}
    le |= {("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")}
    ge = {(y, x) for x, y in le}
    return RelSys.make(list("0ab1"), {"le": le, "ge": ge})


def random_systems(seed: int, count: int, n_range=(2, 6)):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(*n_range)
        yield random_reflexive_involutive_system(rng, n, nrel=rng.randint(1, 2))


# ------------------------------------------------------------ basic geometry


def test_ball_and_center_two_chain():
    s = two_chain()
    assert s.ball("0", "le") == {"0", "1"}
    assert s.ball("1", "le") == {"1"}
    assert s.ball("1", "ge") == {"0", "1"}
    assert s.center({"0", "1"}, "le") == {"0"}
    assert s.center({"0", "1"}, "ge") == {"1"}
    assert s.cov({"0", "1"}) == {"0", "1"}
    assert s.cov({"0"}) == {"0"}


def test_unknown_names_rejected():
    s = two_chain()
    with pytest.raises(InputError):
        s.ball("2", "le")
    with pytest.raises(InputError):
        s.ball("0", "nope")


def test_empty_set_conventions():
    s = two_chain()
    assert s.diameter_set(frozenset()) == {"le", "ge"}
    assert s.radius_set(frozenset()) == frozenset()
    assert not s.is_equally_centered(frozenset())


def test_singletons_equally_centered():
    for s in random_systems(5, 10):
        for x in s.elements:
            assert s.is_equally_centered({x})


def test_structure_flags():
    s = two_chain()
    assert s.is_reflexive and s.is_involutive
    assert s.inverse_name == {"le": "ge", "ge": "le"}
    t = RelSys.make(["0", "1"], {"le": [("0", "0"), ("0", "1"), ("1", "1")]})
    assert not t.is_involutive
    with pytest.raises(StructureError):
        t.inverse_name


def test_center_properties_random():
    # containment in centers vs diameter membership, the ball formula,
    # stability under covers, and monotonicity of radius sets
    for s in random_systems(11, 25, (2, 5)):
        rng = random.Random(int(s.elements[-1]))
        subsets = [
            frozenset(x for x in s.elements if rng.random() < 0.5) for _ in range(6)
        ]
        for a in subsets:
            cov = s.cov(a)
            assert a <= cov and s.cov(cov) == cov
            for rname in s.relation_names:
                c = s.center(a, rname)
                assert (a <= c) == (rname in s.diameter_set(a))
                # center as intersection of inverse balls
                inter = frozenset(s.elements)
                for el in a:
                    inter &= s.ball(el, s.inverse_name[rname])
                assert c == inter
                # centers only see the cover of A
                assert c == s.center(cov, rname)
            assert s.radius_set(a) <= s.radius_set(cov)
            if a:
                assert s.diameter_set(a) <= s.radius_set(a)
                assert s.diameter_set(a) == s.diameter_set(cov)
            for r in s.diameter_set(a):
                assert s.inverse_name[r] in s.diameter_set(a)


def test_ball_intersections_two_chain():
    s = two_chain()
    supports = {m.support for m in s.ball_intersections()}
    assert supports == {frozenset({"0", "1"}), frozenset({"0"}), frozenset({"1"})}
    for m in s.ball_intersections():
        inter = frozenset(s.elements)
        for x, rname in m.witness:
            inter &= s.ball(x, rname)
        assert inter == m.support


def test_normal_structure_examples():
    ok, witness = two_chain().has_normal_structure()
    assert ok and witness is None
    # with only the full relation, E itself is equally centered
    full = [(x, y) for x in "ab" for y in "ab"]
    s = RelSys.make(["a", "b"], {"all": full})
    ok, witness = s.has_normal_structure()
    assert not ok and witness == {"a", "b"}


# ----------------------------------------------------------- invariant sets


def test_minimal_invariant_identity_tie_break():
    s = two_chain()
    ident = SelfMap((("0", "0"), ("1", "1")))
    m = s.minimal_invariant_ballset(ident)
    assert m.support == {"0"}


def test_minimal_invariant_constant():
    s = two_chain()
    const1 = SelfMap((("0", "1"), ("1", "1")))
    m = s.minimal_invariant_ballset(const1)
    assert m.support == {"1"}


def test_descend_invariant_is_equally_centered():
    for s in random_systems(17, 15, (2, 5)):
        for f in [random_selfmap(random.Random(3), s.elements) for _ in range(4)]:
            if not s.is_endomorphism(f):
                continue
            a = s.descend_invariant(f)
            assert f.image(a) <= a
            assert s.is_equally_centered(a)
            assert a in {m.support for m in s.ball_intersections()}


def test_fixed_point_two_chain():
    s = two_chain()
    const1 = SelfMap((("0", "1"), ("1", "1")))
    assert s.fixed_point(const1) == "1"
    ident = SelfMap((("0", "0"), ("1", "1")))
    assert s.fixed_point(ident) in {"0", "1"}


def test_fixed_point_refuses_without_normal_structure():
    full = [(x, y) for x in "ab" for y in "ab"]
    s = RelSys.make(["a", "b"], {"all": full})
    swap = SelfMap((("a", "b"), ("b", "a")))
    assert s.is_endomorphism(swap)
    with pytest.raises(HypothesisError):
        s.fixed_point(swap)


def test_fixed_point_exhaustive_small_normal_systems():
    seen = 0
    for s in random_systems(23, 40, (2, 4)):
        if not s.has_normal_structure()[0]:
            continue
        for f in s.endomorphisms():
            x = s.fixed_point(f)
            assert f(x) == x
            seen += 1
    assert seen > 50


# ------------------------------------------------------------- fixed families


def test_common_fixed_points_matches_brute_force():
    s = diamond()
    maps = list(s.endomorphisms())
    checked = 0
    for f, g in combinations(maps, 2):
        if not f.commutes_with(g):
            continue
        fix, olr = s.common_fixed_points([f, g])
        assert fix == f.fixed_points() & g.fixed_points()
        assert olr.ok
        checked += 1
        if checked > 100:
            break
    assert checked > 10


def test_common_fixed_points_refuses_without_normal_structure():
    s = crown()
    normal, witness = s.has_normal_structure()
    assert not normal and witness == frozenset({"a", "b"})
    ident = SelfMap(tuple((x, x) for x in s.elements))
    with pytest.raises(HypothesisError, match="normal"):
        s.common_fixed_points([ident])


def test_common_fixed_points_rejects_non_commuting():
    s = two_chain()
    const0 = SelfMap((("0", "0"), ("1", "0")))
    const1 = SelfMap((("0", "1"), ("1", "1")))
    with pytest.raises(InputError, match="commute"):
        s.common_fixed_points([const0, const1])


def test_common_fixed_points_empty_family():
    s = two_chain()
    fix, olr = s.common_fixed_points([])
    assert fix == {"0", "1"} and olr.ok


# -------------------------------------------------------- one-local retracts


def test_olr_agrees_with_definitional_search():
    rng = random.Random(31)
    for s in random_systems(31, 30, (2, 5)):
        for _ in range(6):
            a = frozenset(x for x in s.elements if rng.random() < 0.6)
            if not a:
                continue
            res = s.is_one_local_retract(a)
            expect = all(s.retraction_exists(a, x) for x in set(s.elements) - a)
            assert res.ok == expect
            if res.ok:
                table = res.table_dict
                assert set(table) == set(s.elements) - a
                assert all(v in a for v in table.values())


def test_olr_table_entries_are_homomorphic():
    for s in random_systems(37, 20, (3, 5)):
        a = frozenset(list(s.elements)[:2])
        res = s.is_one_local_retract(a)
        if not res.ok:
            continue
        for x, target in res.table:
            scope = a | {x}
            for _, pairs in s.relations:
                for u, v in pairs:
                    if u in scope and v in scope:
                        uu = target if u == x else u
                        vv = target if v == x else v
                        assert (uu, vv) in pairs


def test_whole_set_and_fix_sets_are_olr():
    s = diamond()
    assert s.is_one_local_retract(frozenset(s.elements)).ok
    for f in s.endomorphisms():
        fix = f.fixed_points()
        if fix:
            assert s.is_one_local_retract(fix).ok


def test_chain_intersection_olr():
    s = crown()
    chain = [frozenset(s.elements), frozenset({"a", "c", "d"}), frozenset({"a", "c"})]
    for c in chain:
        assert s.is_one_local_retract(c).ok
    res = s.chain_intersection_is_olr(chain)
    assert res.ok
    with pytest.raises(InputError):
        s.chain_intersection_is_olr([frozenset({"a"}), frozenset({"a", "b"})])


def test_restriction_to_olr_stays_normal():
    # transfer of normal structure to one-local retracts
    for s in random_systems(41, 30, (2, 5)):
        if not s.has_normal_structure()[0]:
            continue
        rng = random.Random(7)
        for _ in range(4):
            a = frozenset(x for x in s.elements if rng.random() < 0.6)
            if not a or not s.is_one_local_retract(a).ok:
                continue
            assert s.restrict(a).has_normal_structure()[0]


# --------------------------------------------------- invariant binary relations


def test_invariant_relations_closure():
    s = RelSys.make(["0", "1", "2"], {"r": [("0", "1"), ("1", "2"), ("0", "0")]})
    f = SelfMap((("0", "0"), ("1", "2"), ("2", "2")))
    rels = s.invariant_binary_relations([f])
    assert frozenset((x, x) for x in s.elements) in rels
    assert frozenset((x, y) for x in s.elements for y in s.elements) in rels
    # every listed relation really is preserved
    for r in rels:
        assert all((f(x), f(y)) in r for x, y in r)


def test_invariant_relations_of_identity_is_everything():
    s = RelSys.make(["0", "1"], {"r": []})
    ident = SelfMap((("0", "0"), ("1", "1")))
    rels = s.invariant_binary_relations([ident])
    assert len(rels) == 2 ** 4
