from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfspace.cf import (
    CFSpace,
    FiniteFamily,
    build_space,
    cf_axiom_violation,
    cf_axiom_violation_exhaustive,
    closed_by_capture,
    closed_by_directed_images,
    closed_by_directed_subfamily,
    closed_set_poset,
    compacts_match_basis,
    dense_iso,
    enumerate_closed_sets,
    is_cf_closed,
    is_dense_subspace,
    is_topological,
    principal_subspace,
    restrict_subspace,
    validate_cf_space,
    way_below_closed,
)
from cfspace.errors import CFAxiomError, DensityError, EmptyFamilyError, NotClosedError, SubfamilyError
from cfspace.fuzz import GenParams, gen_cf_space
from cfspace.ga import GASpace
from cfspace.induced import induce_cf_space, induce_topological_space
from cfspace.poset import are_isomorphic, make_poset

from conftest import CHAIN3S_PAIRS, PRE1_PAIRS, S, chain3_poset, diamond_poset, vee_poset


def strs(family) -> list[str]:
    return [str(E) for E in family]


@pytest.fixture
def vee_space():
    return induce_cf_space(vee_poset()).space


class TestValidation:
    def test_pre1_full_family(self):
        space = build_space("ab", PRE1_PAIRS, [["a"], ["b"], ["a", "b"]])
        assert isinstance(space, CFSpace)

    def test_nt1(self, nt1):
        assert len(nt1.family) == 1

    def test_chain3s_violation(self):
        with pytest.raises(CFAxiomError) as info:
            build_space("abc", CHAIN3S_PAIRS, [["b"]])
        assert str(info.value) == "F={b} K={a}"

    def test_fast_and_exhaustive_agree_on_first_failing_member(self):
        ga = GASpace.build("abc", CHAIN3S_PAIRS)
        fam = FiniteFamily.of(ga.universe, ["b"])
        fast, slow = cf_axiom_violation(ga, fam), cf_axiom_violation_exhaustive(ga, fam)
        assert fast is not None and slow is not None and fast[0] == slow[0]

    def test_empty_family(self):
        ga = GASpace.build("ab", PRE1_PAIRS)
        with pytest.raises(EmptyFamilyError):
            validate_cf_space(ga, FiniteFamily(ga.universe, []))


class TestClosedSets:
    def test_pre1_membership(self, pre1):
        assert is_cf_closed(pre1, S(pre1, "a"))
        assert not is_cf_closed(pre1, S(pre1, "b"))
        assert not is_cf_closed(pre1, S(pre1))

    def test_enumerate(self, pre1, nt1, vee_space):
        assert strs(enumerate_closed_sets(pre1)) == ["{a}", "{a b}"]
        assert strs(enumerate_closed_sets(nt1)) == ["{a}"]
        assert strs(enumerate_closed_sets(vee_space)) == ["{x}", "{y}", "{x y z}"]

    def test_oracle_agrees(self, pre1, nt1, vee_space):
        for sp in (pre1, nt1, vee_space):
            assert enumerate_closed_sets(sp).masks == enumerate_closed_sets(sp, oracle=True).masks

    def test_empty_closed_iff_empty_member(self):
        space = build_space("ab", PRE1_PAIRS, [[], ["a"]])
        assert "{}" in strs(enumerate_closed_sets(space))

    def test_closed_posets(self, pre1, nt1, vee_space):
        chain2 = make_poset("01", [("0", "1")])
        assert are_isomorphic(closed_set_poset(pre1), chain2) is not None
        assert are_isomorphic(closed_set_poset(vee_space), vee_poset()) is not None
        assert closed_set_poset(nt1).n == 1

    def test_way_below_closed(self, pre1, vee_space):
        assert way_below_closed(pre1, S(pre1, "a"), S(pre1, "a", "b"))
        assert not way_below_closed(vee_space, S(vee_space, "x"), S(vee_space, "y"))
        with pytest.raises(NotClosedError):
            way_below_closed(pre1, S(pre1, "b"), S(pre1, "a", "b"))

    def test_topological(self, pre1, nt1):
        assert is_topological(pre1)
        assert not is_topological(nt1)

    def test_compacts_match_basis(self, pre1):
        assert compacts_match_basis(pre1, definitional=True)
        for p in (diamond_poset(), chain3_poset()):
            assert compacts_match_basis(induce_topological_space(p).space, definitional=True)


class TestSubspaces:
    def test_principal(self, pre1, vee_space):
        whole = principal_subspace(pre1, S(pre1, "a", "b"))
        assert whole.universe.names == pre1.universe.names
        small = principal_subspace(pre1, S(pre1, "a"))
        assert small.universe.names == ("a",)
        assert strs(small.family) == ["{a}"]
        assert strs(enumerate_closed_sets(small)) == ["{a}"]
        assert len(principal_subspace(vee_space, S(vee_space, "x", "y", "z")).family) == 6

    def test_restrict(self, pre1):
        same = restrict_subspace(pre1, S(pre1, "a", "b"), pre1.family.sets)
        assert same.family.masks == pre1.family.masks
        sub = restrict_subspace(pre1, S(pre1, "a"), [S(pre1, "a")])
        assert strs(sub.family) == ["{a}"]

    def test_restrict_failure(self):
        nt2 = build_space("ab", [("a", "a"), ("a", "b")], [["a"], ["b"]])
        with pytest.raises(CFAxiomError) as info:
            restrict_subspace(nt2, S(nt2, "b"), [S(nt2, "b")])
        assert str(info.value) == "F={b} K={}"

    def test_restrict_rejects_non_member(self, pre1):
        with pytest.raises(SubfamilyError):
            restrict_subspace(pre1, S(pre1, "b"), [S(pre1, "b")])

    def test_dense(self, pre1):
        assert is_dense_subspace(pre1, S(pre1, "a", "b"), pre1.family.sets)
        assert not is_dense_subspace(pre1, S(pre1, "a"), [S(pre1, "a")])
        iso = dense_iso(pre1, S(pre1, "a", "b"), pre1.family.sets)
        assert {str(k): str(v) for k, v in iso.items()} == {"{a}": "{a}", "{a b}": "{a b}"}

    def test_dense_iso_failure_names_closed_set(self, pre1):
        with pytest.raises(DensityError) as info:
            dense_iso(pre1, S(pre1, "a"), [S(pre1, "a")])
        assert str(info.value.closed_set) in ("{a}", "{a b}")

    def test_induced_topological_dense(self):
        p = diamond_poset()
        big = induce_cf_space(p).space
        small = induce_topological_space(p).space
        V = big.universe.set(small.universe.names)
        G = [big.universe.set(F) for F in small.family]
        iso = dense_iso(big, V, G)
        assert all(str(k) == str(v) for k, v in iso.items())


seeds = st.integers(0, 2**32)
modes = st.sampled_from(["preorder", "transitive"])


@settings(max_examples=120, deadline=None)
@given(seeds, modes)
def test_closed_characterizations_agree(seed, mode):
    space = gen_cf_space(GenParams(min_universe=2, max_universe=6, density=0.25, mode=mode, seed=seed))
    closed = enumerate_closed_sets(space)
    assert closed.masks == enumerate_closed_sets(space, oracle=True).masks
    for m in range(1 << space.universe.size):
        E = space.elemset(m)
        c = m in closed
        assert closed_by_directed_images(space, E) == c
        assert closed_by_directed_subfamily(space, E) == c
        assert closed_by_capture(space, E) == c
    for F, img in zip(space.masks, space.images):
        assert img in closed.masks
        # absorption: a member inside a closed set has its image there too
        for E in closed.masks:
            if F & ~E == 0:
                assert img & ~E == 0


@settings(max_examples=100, deadline=None)
@given(seeds, modes)
def test_way_below_characterization(seed, mode):
    space = gen_cf_space(GenParams(min_universe=2, max_universe=6, density=0.25, mode=mode, seed=seed))
    closed = enumerate_closed_sets(space)
    P = closed.poset
    for i, E1 in enumerate(closed.sets):
        for j, E2 in enumerate(closed.sets):
            assert way_below_closed(space, E1, E2) == P.way_below(P.labels[i], P.labels[j], definitional=True)
    assert P.is_dcpo()
    if is_topological(space):
        assert compacts_match_basis(space, definitional=True)
