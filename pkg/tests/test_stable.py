import pytest

from core import library
from core.construct import construct_ER
from core.stable import (
    build_stable, check_blowup, check_closure, check_idpt_blowup, check_psifacts,
    check_stability,
)

from conftest import NAMED_KEYS


def stable_for(S, choice="least"):
    return build_stable(S, construct_ER(S), choice)


def test_group_is_already_stable(c3):
    sd = stable_for(c3)
    assert sd.beta == (0, 1, 2)
    assert sd.psi == (0, 1, 2)
    assert sd.closure == (0, 1, 2)
    assert sd.fixed == {0, 1, 2}
    assert sd.blocks == {0, 1, 2}
    assert sd.scr_r == (0,)


def test_t2_stable_data(t2, sub):
    sd = stable_for(t2)
    c1 = sd.index(sub(t2, "c1"))
    constants = sd.index(sub(t2, "c1", "c2"))
    sigma = sd.singleton_index(1)
    assert sd.size == 5
    assert sd.beta[c1] == constants
    assert sd.e_choice[c1] == c1
    assert sd.psi[c1] == constants
    assert sd.closure[sd.index(sub(t2, "c2"))] == constants
    assert sd.psi[sigma] == sigma
    assert sd.e_choice[sigma] == sd.singleton_index(0)
    assert sd.fixed == {sd.singleton_index(0), sigma, constants}
    assert sd.block_union(sd.t2.block_of[constants]) == sub(t2, "c1", "c2")
    assert len(sd.scr_r) == 2


def test_adjoined_identity_is_used_when_no_idempotent_fixes(n2):
    sd = stable_for(n2)
    a = sd.singleton_index(0)
    assert sd.e_choice[a] == sd.identity
    assert sd.mul(a, sd.identity) == a
    assert sd.psi[a] == a
    assert sd.fixed == {0, 1}


@pytest.mark.parametrize("name", NAMED_KEYS)
@pytest.mark.parametrize("choice", ["least", "greatest"])
def test_stability_claims_hold(name, choice):
    sd = stable_for(library.NAMED[name](), choice)
    assert check_blowup(sd)
    assert check_idpt_blowup(sd)
    assert check_psifacts(sd)
    assert check_stability(sd)
    assert check_closure(sd)


def test_unknown_choice_rule(t2):
    with pytest.raises(ValueError):
        stable_for(t2, "random")
