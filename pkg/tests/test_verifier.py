import json

import pytest

from core import library
from core.automaton import build_global_group, build_local_groups
from core.construct import construct_ER
from core.limits import Limits
from core.stable import build_stable
from core.verifier import (
    BULLET, FLAG_NAMES, PointerPreorder, VerificationReport, certify, check_DP_r_trivial,
    check_lambda_decreasing, check_transition_in_ER, run_catalog,
)

from conftest import NAMED_KEYS


class ChainPreorder:
    """0 < 1 < ... < size-1"""

    def __init__(self, size):
        self.size = size

    def is_decreasing(self, f):
        return all(f[x] <= x for x in range(self.size))


def stable_and_group(S):
    sd = build_stable(S, construct_ER(S))
    return sd, build_global_group(build_local_groups(sd), S.order)


@pytest.mark.parametrize("name", NAMED_KEYS)
def test_certify_named(name):
    report = certify(library.NAMED[name]())
    assert report.ok, report.failed_flags()
    assert set(report.flags) == set(FLAG_NAMES)


def test_certify_brandt(b2):
    report = certify(b2)
    assert report.is_in_ER
    assert report.max_pointlikes == ["{E12}", "{E21}", "{E11}", "{E22}", "{0}"]
    assert report.construct_rounds == 0


def test_certify_t2(t2):
    report = certify(t2)
    assert not report.is_in_ER
    assert report.max_pointlikes == ["{id}", "{sigma}", "{c1,c2}"]
    assert report.complex_size == 5
    assert report.group_order == 2
    assert report.state_count == 13
    assert report.choice_invariant


def test_report_dict_is_stable(t2):
    first = certify(t2).to_dict()
    second = certify(t2).to_dict()
    assert "timings" not in first
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    assert set(first["flags"]) == set(FLAG_NAMES)
    assert first["ok"] is True
    assert "timings" in certify(t2).to_dict(include_timings=True)


def test_failed_flags_reported():
    report = VerificationReport(order=1, labels=["e"], is_in_ER=True, construct_rounds=0,
                                complex_size=1, fixed_size=1, block_count=1, group_order=1,
                                state_count=2, transition_size=1, max_pointlikes=["{e}"])
    assert not report.ok
    assert report.failed_flags() == list(FLAG_NAMES)


def test_strict_preorder_runs(t2):
    report = certify(t2, strict_preorder=True)
    assert report.strict_preorder
    assert report.to_dict()["strict_preorder"] is True
    if not report.lambda_decreasing_ok:
        assert report.lambda_counterexample is not None
        assert not report.dp_r_trivial_ok


def test_pointer_preorder(t2):
    sd, gg = stable_and_group(t2)
    preorder = PointerPreorder(sd, gg)
    assert preorder.size == 1 + len(sd.fixed) * len(gg)
    for i in range(preorder.size):
        assert preorder.leq(i, i)
        assert preorder.leq(i, BULLET)
    unit = preorder.index(sd.singleton_index(0), 0)
    constants = preorder.index(sd.closure[sd.singleton_index(2)], 0)
    assert preorder.less(constants, unit)
    assert preorder.less(unit, BULLET)
    assert preorder.format(BULLET) == "bullet"


def test_lambda_maps_decrease(t2):
    sd, gg = stable_and_group(t2)
    lam = check_lambda_decreasing(t2, sd, gg)
    assert lam
    assert len(lam.maps) == t2.order * len(gg)
    assert lam.counterexample is None
    preorder = PointerPreorder(sd, gg)
    assert check_DP_r_trivial(preorder, lam.maps)


def test_dp_r_trivial_on_a_chain():
    chain = ChainPreorder(4)
    assert check_DP_r_trivial(chain, [(0, 1, 2, 3)])
    assert check_DP_r_trivial(chain, [(0, 0, 1, 2), (0, 0, 0, 1)])
    assert check_DP_r_trivial(chain, [(0, 1, 1, 3), (0, 0, 2, 2)])


def test_dp_r_trivial_rejects_bad_input():
    chain = ChainPreorder(4)
    with pytest.raises(ValueError):
        check_DP_r_trivial(chain, [])
    with pytest.raises(ValueError):
        check_DP_r_trivial(chain, [(1, 1, 2, 3)])
    with pytest.raises(ValueError):
        check_DP_r_trivial(chain, [(0, 1, 2)])


def test_transition_in_er_examples(b2, c3, t2):
    assert check_transition_in_ER(b2)
    assert check_transition_in_ER(c3)
    assert not check_transition_in_ER(t2)


def test_catalog_up_to_order_three():
    rows = run_catalog(3)
    assert len(rows) == 1 + 5 + 24
    failing = [(row.entry_id, row.failure, row.detail, row.report and row.report.failed_flags())
               for row in rows if not row.ok]
    assert failing == []


def test_catalog_parallel_matches_serial():
    serial = run_catalog(2)
    parallel = run_catalog(2, jobs=2)
    assert [row.entry_id for row in parallel] == [row.entry_id for row in serial]
    assert [row.report.to_dict() for row in parallel] == [row.report.to_dict() for row in serial]


@pytest.mark.long
def test_catalog_order_four():
    rows = run_catalog(4, limits=Limits())
    assert len(rows) == 1 + 5 + 24 + 188
    assert all(row.ok for row in rows)
