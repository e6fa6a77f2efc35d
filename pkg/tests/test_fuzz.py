from __future__ import annotations

import random

import pytest

from cfspace import fuzz
from cfspace.cf import cf_axiom_violation, is_topological
from cfspace.errors import InputError, PreconditionError
from cfspace.fileio import parse_poset, parse_space
from cfspace.fuzz import (
    REGISTRY,
    SUITE_POSET,
    SUITE_SPACE,
    TARGETS,
    Finding,
    GenParams,
    SearchStats,
    check_instance,
    corrupt,
    gen_cf_space,
    gen_ga_space,
    gen_monotone_map,
    gen_poset,
    run_theorem_suite,
    search_counterexample,
    shrink,
    smallest_repair,
    with_apex,
)
from cfspace.classify import classify_space
from cfspace.ga import GASpace
from cfspace.poset import are_isomorphic, classify_poset, is_monotone, make_poset

from conftest import CHAIN3S_PAIRS, diamond_poset, vee_poset


class TestParams:
    def test_validation(self):
        with pytest.raises(InputError):
            GenParams(min_universe=3, max_universe=2)
        with pytest.raises(InputError):
            GenParams(density=1.5)
        with pytest.raises(InputError):
            GenParams(mode="lattice")


class TestGenerators:
    @pytest.mark.parametrize("mode", fuzz.MODES)
    def test_deterministic(self, mode):
        p = GenParams(mode=mode, seed=11)
        gen = gen_poset if mode == "poset" else gen_cf_space
        a, b = gen(p), gen(p)
        if mode == "poset":
            assert a.labels == b.labels and a.up == b.up
        else:
            assert a == b

    def test_ga_density_extremes(self):
        empty = gen_ga_space(GenParams(min_universe=4, max_universe=4, density=0.0, seed=1))
        assert len(empty.relation) == 0
        full = gen_ga_space(GenParams(min_universe=4, max_universe=4, density=1.0, seed=1))
        assert len(full.relation) == 16

    def test_poset_density_extremes(self):
        discrete = gen_poset(GenParams(min_universe=4, max_universe=4, density=0.0, seed=2))
        assert all(discrete.up[i] == 1 << i for i in range(4))
        chain = gen_poset(GenParams(min_universe=4, max_universe=4, density=1.0, seed=2))
        assert sorted(bin(r).count("1") for r in chain.up) == [1, 2, 3, 4]

    @pytest.mark.parametrize("mode", ["preorder", "transitive"])
    def test_generated_spaces_valid(self, mode):
        for s in range(40):
            space = gen_cf_space(GenParams(mode=mode, seed=s))
            assert space.ga.is_transitive()
            assert cf_axiom_violation(space.ga, space.family) is None
            if mode == "preorder":
                assert space.ga.is_reflexive()

    def test_smallest_repair(self):
        ga = GASpace.build("abc", CHAIN3S_PAIRS)
        # a is in img(G) iff G meets {b c}
        assert smallest_repair(ga, 0b001, 0b001) is None
        assert smallest_repair(ga, 0b001, 0b011) == 0b010

    def test_apex_keeps_flags(self, pre1):
        from test_classify import two_tops_space

        for space in (pre1, two_tops_space()):
            big = with_apex(space)
            assert not is_topological(big)
            before = dict(classify_space(space).flags, topological=None)
            after = dict(classify_space(big).flags, topological=None)
            assert before == after

    def test_monotone_maps(self):
        rng = random.Random(5)
        for _ in range(30):
            p = gen_poset(GenParams(max_universe=5, density=0.4, seed=rng.getrandbits(32)))
            q = gen_poset(GenParams(max_universe=4, density=0.4, seed=rng.getrandbits(32)))
            f = gen_monotone_map(p, q, rng)
            assert set(f) == set(p.labels) and is_monotone(f, p, q)


class TestSuite:
    def test_registry_partition(self):
        assert set(SUITE_SPACE) | set(SUITE_POSET) == set(REGISTRY)
        assert "roundtrip" in SUITE_POSET and "cf-axiom" in SUITE_SPACE

    @pytest.mark.parametrize("mode", fuzz.MODES)
    def test_clean_runs(self, mode):
        params = GenParams(max_universe=5 if mode == "poset" else 6, seed=3)
        assert run_theorem_suite(mode, 15, params) == []

    @pytest.mark.parametrize("mode", ["preorder", "poset"])
    def test_thousand_instances(self, mode):
        params = GenParams(max_universe=6, seed=20261015)
        assert run_theorem_suite(mode, 1000, params) == []

    def test_given_instances(self, pre1, nt1):
        assert run_theorem_suite([pre1, nt1, vee_poset()], 10) == []

    def test_corrupted_space_is_caught(self, pre1):
        bad = corrupt(pre1)
        hits = dict(check_instance(bad))
        assert "cf-axiom" in hits
        findings = run_theorem_suite([bad], 1, names=["cf-axiom"])
        assert [f.property for f in findings] == ["cf-axiom"]

    def test_property_filter_by_kind(self, pre1):
        assert check_instance(pre1, ["roundtrip"]) == []

    def test_finding_files(self, tmp_path, pre1):
        bad = corrupt(pre1)
        f = Finding("cf-axiom", bad, "F={b} K={}", seed=7)
        path = f.write(tmp_path)
        assert path == tmp_path / "cf-axiom" / "7.cfspace"
        text = path.read_text()
        assert "property: cf-axiom" in text and "seed: 7" in text
        sf = parse_space(text)
        assert tuple(sf.elements) == bad.universe.names
        assert f.replay() is not None

    def test_poset_finding_extension(self, tmp_path):
        f = Finding("roundtrip", vee_poset(), "made up", seed=1)
        path = f.write(tmp_path)
        assert path.suffix == ".poset"
        assert parse_poset(path.read_text()).build().n == 3


class TestShrink:
    def test_minimal_instance_unchanged(self):
        p = vee_poset()
        not_l = lambda q: not classify_poset(q).l_domain
        assert shrink(p, not_l) is p

    def test_padding_removed(self):
        padded = make_poset("xyzw", [("x", "z"), ("y", "z")])
        small = shrink(padded, lambda q: not classify_poset(q).l_domain)
        assert are_isomorphic(small, vee_poset()) is not None

    def test_space_shrinks_and_is_stable(self, nt1):
        pred = lambda s: not is_topological(s)
        small = shrink(nt1, pred)
        assert small.universe.size == 1 and pred(small)
        assert shrink(small, pred) is small

    def test_predicate_must_hold(self):
        with pytest.raises(PreconditionError):
            shrink(diamond_poset(), lambda q: not classify_poset(q).bc_domain)


class TestSearch:
    def test_unknown_target(self):
        with pytest.raises(InputError):
            search_counterexample("nope")

    @pytest.mark.parametrize("name", sorted(TARGETS))
    def test_small_budgets_find_nothing(self, name):
        stats = SearchStats()
        assert search_counterexample(name, budget=300, stats=stats) is None
        assert stats.examined == 300
