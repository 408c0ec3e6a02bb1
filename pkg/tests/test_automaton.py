import json

import pytest

from core import library
from core.automaton import (
    INIT, automaton_to_dict, build_automaton, build_global_group, build_local_groups,
    check_delta, check_flow, cover_complex, transition_semigroup, witness_relational_morphism,
    witness_to_dict,
)
from core.construct import construct_ER
from core.errors import GuardExceededError
from core.limits import Limits
from core.semigroup import is_in_ER
from core.stable import build_stable

from conftest import NAMED_KEYS


def pipeline(S, limits=Limits(), reachable_only=False):
    cr = construct_ER(S, limits)
    sd = build_stable(S, cr, limits=limits)
    gg = build_global_group(build_local_groups(sd), S.order, limits)
    fa = build_automaton(S, sd, gg, limits, reachable_only=reachable_only)
    return cr, sd, gg, fa


def test_local_groups_t2(t2):
    _cr, sd, _gg, _fa = pipeline(t2)
    locals_ = build_local_groups(sd)
    assert sorted(local.order for local in locals_) == [1, 2]
    units = next(local for local in locals_ if local.order == 2)
    assert units.gens[1] == (1, 0)
    assert units.gens[0] == (0, 1)
    # constants are undefined on the unit blocks and get completed to the identity
    assert units.gens[2] == (0, 1)


@pytest.mark.parametrize("name, order", [("trivial", 1), ("c2", 2), ("c3", 3), ("c2xc2", 4), ("t2", 2), ("b2", 2)])
def test_global_group_order(name, order):
    _cr, _sd, gg, _fa = pipeline(library.NAMED[name]())
    assert len(gg) == order
    assert gg.is_group()
    assert gg.elements[gg.identity] == tuple(range(gg.degree))


def test_global_group_multiplication(c3):
    _cr, _sd, gg, _fa = pipeline(c3)
    g = gg.gen_index[1]
    assert gg.mul(g, gg.inverse(g)) == gg.identity
    assert gg.mul(gg.mul(g, g), g) == gg.identity
    assert gg.mul(g, gg.identity) == g


def test_global_group_guard(c3):
    cr = construct_ER(c3)
    sd = build_stable(c3, cr)
    with pytest.raises(GuardExceededError):
        build_global_group(build_local_groups(sd), c3.order, Limits(max_group_size=2))


def test_trivial_automaton(trivial):
    _cr, _sd, _gg, fa = pipeline(trivial)
    assert len(fa) == 2
    assert fa.states[INIT] is None
    assert fa.delta == ((1,), (1,))
    ts = transition_semigroup(fa)
    assert len(ts) == 1


def test_state_counts(t2, c3):
    assert len(pipeline(t2)[3]) == 13
    assert len(pipeline(c3)[3]) == 28


@pytest.mark.parametrize("name", NAMED_KEYS)
def test_automaton_invariants(name):
    S = library.NAMED[name]()
    cr, _sd, _gg, fa = pipeline(S)
    assert check_flow(S, fa)
    assert check_delta(fa)
    assert cover_complex(S, fa) == cr.complex
    ts = transition_semigroup(fa)
    assert is_in_ER(ts.semigroup)
    wm = witness_relational_morphism(S, fa, ts)
    for X in cr.complex:
        assert any(X.issubset(fiber) for fiber in wm.fibers.values())


def test_t2_constants_act_alike(t2, sub):
    _cr, _sd, _gg, fa = pipeline(t2)
    ts = transition_semigroup(fa)
    assert ts.generator_index[2] == ts.generator_index[3]
    wm = witness_relational_morphism(t2, fa, ts)
    assert wm.fibers[ts.generator_index[2]] == sub(t2, "c1", "c2")
    assert fa.flow[fa.step(INIT, 2)] == sub(t2, "c1", "c2")


def test_brandt_fibers_are_singletons(b2):
    _cr, _sd, _gg, fa = pipeline(b2)
    wm = witness_relational_morphism(b2, fa, transition_semigroup(fa))
    assert all(fiber.is_singleton() for fiber in wm.fibers.values())


def test_reachable_only(t2):
    _cr, _sd, _gg, full = pipeline(t2)
    _cr, _sd, _gg, reach = pipeline(t2, reachable_only=True)
    assert reach.reachable_only
    assert len(reach) <= len(full)
    assert reach.states[INIT] is None
    assert check_flow(t2, reach) and check_delta(reach)


def test_state_guard(t2):
    with pytest.raises(GuardExceededError) as info:
        pipeline(t2, Limits(max_states=5))
    assert info.value.guard == "max_states"


def test_automaton_encoding_is_deterministic(t2):
    first = json.dumps(automaton_to_dict(pipeline(t2)[3]), sort_keys=True)
    second = json.dumps(automaton_to_dict(pipeline(t2)[3]), sort_keys=True)
    assert first == second
    data = json.loads(first)
    assert data["alphabet"] == ["id", "sigma", "c1", "c2"]
    assert data["states"][0] == {"id": 0, "kind": "init"}
    assert data["group"]["order"] == 2
    assert data["group"]["generators"]["sigma"] == [1, 0, 2]
    assert len(data["transitions"]) == 13


def test_witness_encoding(t2):
    _cr, _sd, _gg, fa = pipeline(t2)
    ts = transition_semigroup(fa)
    data = witness_to_dict(t2, witness_relational_morphism(t2, fa, ts))
    assert {pair[0] for pair in data["pairs"]} == {"id", "sigma", "c1", "c2"}
    assert any(f["fiber"] == "{c1,c2}" for f in data["fibers"])
