import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import V
from ksadist.coloring import (
    is_contextual_instance,
    is_scenario_contextual,
    is_valid_coloring,
    ks_color,
)
from ksadist.scenario import Scenario, ScenarioError, enumerate_contexts, generate_scenario


def brute_force_colorable(scenario, forced=None):
    """Exhaustive oracle: tries every 0/1 labelling."""
    forced = forced or {}
    n = len(scenario.vertices)
    pairs = [(i, j) for i, nb in enumerate(scenario.adjacency) for j in nb if i < j]
    for bits in itertools.product((0, 1), repeat=n):
        if any(bits[v] != x for v, x in forced.items()):
            continue
        if any(sum(bits[v] for v in c) != 1 for c in scenario.contexts):
            continue
        if any(bits[i] and bits[j] for i, j in pairs):
            continue
        return True
    return False


def sub_scenario(ds, rng, max_vertices=12):
    k = rng.randint(1, min(max_vertices, len(ds.pool)))
    picked = sorted(rng.sample(range(len(ds.pool)), k))
    return enumerate_contexts([ds.pool[i] for i in picked])


def e3():
    return enumerate_contexts([V(1, 0, 0, id="e1"), V(0, 1, 0, id="e2"), V(0, 0, 1, id="e3")])


class TestExamples:
    def test_single_context(self):
        assert ks_color(e3()) == {0: 1, 1: 0, 2: 0}

    def test_cabello_unsat(self, cabello):
        assert ks_color(cabello.scenario) is None
        assert is_scenario_contextual(cabello.scenario)

    def test_lisonek_unsat(self, lisonek):
        assert is_scenario_contextual(lisonek.scenario)

    def test_yuoh_sat_with_valid_witness(self, yuoh):
        nu = ks_color(yuoh.scenario)
        assert nu is not None and is_valid_coloring(yuoh.scenario, nu)
        assert not is_scenario_contextual(yuoh.scenario)

    def test_yuoh_forced_orange_unsat(self, yuoh):
        forced = {i: 1 for i in yuoh.ids("y1-", "y2+", "y3-")}
        assert ks_color(yuoh.scenario, forced) is None

    def test_contradictory_forcing_is_unsat(self, cabello):
        i, j = cabello.ids("+000", "0+0-")
        assert ks_color(cabello.scenario, {i: 1, j: 1}) is None

    def test_orthogonal_pair_outside_contexts_enforced(self):
        # (1,0,0) and (0,1,0) are orthogonal but no full context is present.
        sc = enumerate_contexts([V(1, 0, 0, id="a"), V(0, 1, 0, id="b")])
        assert sc.contexts == ()
        assert ks_color(sc, {0: 1, 1: 1}) is None
        assert ks_color(sc, {0: 1}) == {0: 1, 1: 0}

    def test_bad_forcing(self):
        with pytest.raises(ScenarioError):
            ks_color(e3(), {5: 1})
        with pytest.raises(ScenarioError):
            ks_color(e3(), {0: 2})


class TestContextualInstance:
    def test_yuoh_orange(self, yuoh):
        S = [yuoh.pool[i] for i in yuoh.ids("y1-", "y2+", "y3-")]
        assert is_contextual_instance([0, 1, 2], generate_scenario(S, yuoh.pool))

    def test_pbr(self, pbr):
        assert is_contextual_instance(range(4), generate_scenario(pbr.states, pbr.pool))

    def test_qubit_not_contextual(self):
        sc = generate_scenario([V(1, 0, id="a")], [V(1, 0, id="a"), V(0, 1, id="b")])
        assert not is_contextual_instance([0], sc)

    def test_requires_generation(self, yuoh):
        with pytest.raises(ScenarioError):
            is_contextual_instance(yuoh.ids("y1-", "y2+", "y3-"), yuoh.scenario)

    def test_rejects_orthogonal_pair(self):
        sc = e3()
        with pytest.raises(ScenarioError):
            is_contextual_instance([0, 1], sc)


class TestProperties:
    def test_witness_validity_and_oracle(self, all_datasets):
        rng = random.Random(7)
        for ds in all_datasets:
            for _ in range(15):
                sc = sub_scenario(ds, rng)
                nu = ks_color(sc)
                assert (nu is not None) == brute_force_colorable(sc)
                if nu is not None:
                    assert is_valid_coloring(sc, nu)

    def test_forced_matches_oracle(self, all_datasets):
        rng = random.Random(11)
        for ds in all_datasets:
            for _ in range(10):
                sc = sub_scenario(ds, rng, 10)
                n = len(sc.vertices)
                forced = {v: rng.randint(0, 1) for v in rng.sample(range(n), min(n, 2))}
                nu = ks_color(sc, forced)
                assert (nu is not None) == brute_force_colorable(sc, forced)
                if nu is not None:
                    assert all(nu[v] == x for v, x in forced.items())

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_forcing_monotone(self, cabello, data):
        n = len(cabello.scenario.vertices)
        f = data.draw(st.dictionaries(st.integers(0, n - 1), st.integers(0, 1), max_size=3))
        extra = data.draw(st.dictionaries(st.integers(0, n - 1), st.integers(0, 1), max_size=3))
        g = {**extra, **f}
        sub = Scenario(cabello.scenario.vertices, cabello.scenario.contexts[:5])
        if ks_color(sub, f) is None:
            assert ks_color(sub, g) is None

    def test_deterministic(self, yuoh):
        a = ks_color(yuoh.scenario)
        for _ in range(3):
            assert list(ks_color(yuoh.scenario).items()) == list(a.items())

    def test_first_witness_prefers_one(self, yuoh):
        nu = ks_color(yuoh.scenario)
        # lexicographically largest valid labelling under (1 before 0) order
        n = len(yuoh.scenario.vertices)
        for bits in itertools.product((1, 0), repeat=n):
            cand = dict(enumerate(bits))
            if is_valid_coloring(yuoh.scenario, cand):
                assert cand == nu
                break

    def test_invalid_colorings_detected(self, yuoh):
        nu = ks_color(yuoh.scenario)
        assert not is_valid_coloring(yuoh.scenario, {**nu, 1: 1 - nu[1]})
        assert not is_valid_coloring(yuoh.scenario, {k: v for k, v in nu.items() if k})
