from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfspace.cf import dense_iso, enumerate_closed_sets, is_topological
from cfspace.errors import EnumerationLimitError
from cfspace.fuzz import GenParams, gen_poset
from cfspace.induced import (
    induce_cf_space,
    induce_topological_space,
    representation_roundtrip,
    topological_in_induced,
)
from cfspace.poset import make_poset

from conftest import bowtie_poset, chain3_poset, diamond_poset, vee_poset


def strs(xs) -> list[str]:
    return [str(x) for x in xs]


def test_vee_family_and_closed_sets():
    ind = induce_cf_space(vee_poset())
    assert strs(ind.space.family) == ["{x}", "{y}", "{z}", "{x z}", "{y z}", "{x y z}"]
    assert strs(enumerate_closed_sets(ind.space)) == ["{x}", "{y}", "{x y z}"]
    assert is_topological(ind.space)
    assert ind.tops()[ind.space.universe.set("xz")] == "z"


def test_singleton():
    ind = induce_cf_space(make_poset(["s"]))
    assert strs(ind.space.family) == ["{s}"]


def test_chain_nested():
    closed = strs(enumerate_closed_sets(induce_cf_space(chain3_poset()).space))
    assert closed == ["{p0}", "{p0 p1}", "{p0 p1 p2}"]


def test_element_map_keeps_labels():
    ind = induce_cf_space(bowtie_poset())
    assert ind.element_map == {x: x for x in bowtie_poset().labels}


@pytest.mark.parametrize("factory", [diamond_poset, vee_poset, lambda: make_poset(["s"])])
def test_finite_collapse(factory):
    p = factory()
    assert induce_topological_space(p).space == induce_cf_space(p).space


def test_limit_and_reduced():
    p = make_poset([f"e{i}" for i in range(11)])
    with pytest.raises(EnumerationLimitError):
        induce_cf_space(p)
    small = induce_cf_space(p, reduced=True)
    assert small.reduced and len(small.space.family) == 11
    red = induce_cf_space(chain3_poset(), reduced=True)
    assert strs(red.space.family) == ["{p0}", "{p1}", "{p2}", "{p0 p1}", "{p0 p2}", "{p1 p2}"]


@pytest.mark.parametrize(
    "factory, flags",
    [
        (vee_poset, {"sl": (True, True), "l": (False, False), "bc": (False, False)}),
        (bowtie_poset, {"sl": (True, True), "l": (True, True), "bc": (False, False)}),
        (diamond_poset, {"sl": (True, True), "l": (True, True), "bc": (True, True)}),
    ],
)
def test_roundtrip_fixtures(factory, flags):
    rt = representation_roundtrip(factory())
    assert rt.ok, rt.problems
    assert rt.transfer == flags


def test_roundtrip_iso_is_down_sets():
    rt = representation_roundtrip(vee_poset())
    assert {k: str(v) for k, v in rt.iso.items()} == {"x": "{x}", "y": "{y}", "z": "{x y z}"}


def test_topological_subspace_dense_diamond():
    big, V, G = topological_in_induced(diamond_poset())
    iso = dense_iso(big.space, V, G)
    assert len(iso) == 4


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([0.2, 0.4, 0.6]))
def test_random_roundtrips(seed, density):
    p = gen_poset(GenParams(max_universe=6, density=density, seed=seed))
    rt = representation_roundtrip(p)
    assert rt.ok, rt.problems
    big, V, G = topological_in_induced(p)
    iso = dense_iso(big.space, V, G)
    assert all(str(k) == str(v) for k, v in iso.items())
