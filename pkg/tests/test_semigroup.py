import numpy as np
import pytest

from core import library
from core.errors import AssociativityError, CayleyFormatError, GuardExceededError
from core.limits import Limits
from core.semigroup import (
    Semigroup, TransformationSemigroup, activators, adjoin_identity, congruence_quotient,
    direct_product, green, idempotents, is_in_ER, is_r_trivial, mul, omega_power,
    omega_power_of_map, rees_quotient, subsemigroup_generated,
)


def test_mul_examples(l2, c3, n2):
    assert mul(l2, 0, 1) == 0
    assert mul(c3, 1, 2) == 0
    assert mul(n2, 0, 0) == 1


def test_mul_rejects_bad_index(c3):
    with pytest.raises(IndexError):
        mul(c3, 0, 3)


def test_omega_power(c3, n2, t2):
    assert omega_power(c3, 1) == 0
    assert omega_power(n2, 0) == 1
    assert omega_power(t2, 1) == 0
    for x in range(t2.order):
        e = omega_power(t2, x)
        assert t2.is_idempotent(e)


def test_idempotents(l2, c3, t2):
    assert idempotents(l2) == {0, 1}
    assert idempotents(c3) == {0}
    assert idempotents(t2) == {0, 2, 3}


def test_green_of_group_is_one_class(c3):
    g = green(c3)
    assert len(g.r_classes) == len(g.l_classes) == len(g.h_classes) == len(g.j_classes) == 1
    assert g.regular_j == (True,)


def test_green_t2(t2):
    g = green(t2)
    assert set(g.r_classes) == {frozenset({0, 1}), frozenset({2, 3})}
    assert g.r_less(2, 0)
    assert not g.r_leq(0, 2)
    # H = R meet L
    for x in range(t2.order):
        assert g.h_classes[g.h_of[x]] == g.r_class(x) & g.l_class(x)


def test_green_null_is_trivial(n2):
    g = green(n2)
    assert all(len(c) == 1 for c in g.r_classes + g.l_classes + g.j_classes)
    assert g.regular_j[g.j_of[0]] is False
    assert g.j_leq(1, 0) and not g.j_leq(0, 1)


def test_green_with_generators_matches(t2):
    # sigma and c1 generate T2
    assert t2.green([1, 2]).r_classes == t2.green().r_classes
    assert t2.green([1, 2]).j_order == t2.green().j_order


def test_adjoin_identity(l2, n2, c3):
    L = adjoin_identity(l2)
    assert L.order == 3 and L.mul(2, 0) == 0 and L.mul(1, 2) == 1
    assert adjoin_identity(n2).order == 3
    M = adjoin_identity(c3)
    assert M.idempotents() == {0, 3}
    assert M.label(3) == "I"


def test_activators_group(c3):
    acts = activators(c3)
    assert acts.per_j_class == (frozenset({0, 1, 2}),)
    assert acts.per_element[1] == {0}


def test_activators_null(n2):
    acts = activators(n2)
    identity = acts.identity
    assert acts.per_j_class[n2.green().j_of[0]] == {identity}
    assert acts.per_element[0] == {identity}


def test_activators_brandt(b2):
    acts = activators(b2)
    assert acts.per_element[0] == {3}
    G = b2.green()
    # regular J-classes are their own activator class
    for j, J in enumerate(G.j_classes):
        if G.regular_j[j]:
            assert acts.per_j_class[j] == J


def test_activator_witnesses_fix_and_cover(t2, b2, n2):
    for S in (t2, b2, n2):
        acts = activators(S)
        SI = acts.extended
        GI = SI.green()
        for x in range(S.order):
            for t in acts.per_element[x]:
                assert SI.mul(x, t) == x
                assert {SI.mul(x, y) for y in GI.r_class(t)} == GI.r_class(x)


def test_subsemigroup_generated(c3, t2, b2):
    assert subsemigroup_generated(c3, {1}) == {0, 1, 2}
    assert subsemigroup_generated(t2, {0, 2, 3}) == {0, 2, 3}
    assert subsemigroup_generated(b2, {2, 3, 4}) == {2, 3, 4}
    with pytest.raises(ValueError):
        subsemigroup_generated(c3, set())


def test_is_r_trivial(n2, c3, t2):
    assert is_r_trivial(n2)
    assert not is_r_trivial(c3)
    assert not is_r_trivial(t2)


def test_is_in_ER(b2, t2, c3, c2xc2):
    assert is_in_ER(b2)
    assert not is_in_ER(t2)
    assert is_in_ER(c3)
    assert is_in_ER(c2xc2)


def test_associativity_checked_at_construction():
    with pytest.raises(AssociativityError) as info:
        Semigroup([[1, 0], [0, 0]])
    x, y, z = info.value.triple
    t = [[1, 0], [0, 0]]
    assert t[t[x][y]][z] != t[x][t[y][z]]


def test_malformed_tables():
    with pytest.raises(CayleyFormatError):
        Semigroup([[0, 1]])
    with pytest.raises(CayleyFormatError):
        Semigroup([[0, 2], [0, 0]])
    with pytest.raises(CayleyFormatError):
        Semigroup([[0]], labels=["a", "b"])


@pytest.mark.parametrize("labels, fragment", [
    (["left a", "b"], "whitespace"),
    (["a", ""], "non-empty"),
    (["a", "b\t"], "whitespace"),
    (["a", "b#2"], "'#'"),
    (["a", "a"], "repeated: a"),
])
def test_unusable_labels_are_rejected(labels, fragment):
    with pytest.raises(CayleyFormatError) as info:
        Semigroup([[0, 0], [1, 1]], labels=labels)
    assert fragment in str(info.value)


def test_table_is_read_only(c3):
    with pytest.raises(ValueError):
        c3.table[0, 0] = 1


def test_restrict(t2):
    sub, elems = t2.restrict({0, 2, 3})
    assert elems == (0, 2, 3)
    assert sub.order == 3 and sub.labels == ("id", "c1", "c2")
    assert not sub.is_r_trivial()
    with pytest.raises(ValueError):
        t2.restrict({1, 2})


def test_principal_ideal(t2, b2):
    assert t2.principal_ideal(2) == {2, 3}
    assert t2.principal_ideal(1) == {0, 1, 2, 3}
    assert b2.principal_ideal(4) == {4}


def test_direct_product_is_klein_four(c2):
    K = direct_product(c2, c2)
    assert K.order == 4
    assert K.idempotents() == {0}
    assert all(K.mul(x, x) == 0 for x in range(4))


def test_congruence_quotient_collapses_constants(t2):
    Q, projection = congruence_quotient(t2, [(2, 3)])
    assert Q.order == 3
    assert projection[2] == projection[3]
    assert len({projection[0], projection[1], projection[2]}) == 3


def test_rees_quotient(t2, b2):
    Q, projection = rees_quotient(t2, {2, 3})
    assert Q.order == 3
    Q, projection = rees_quotient(b2, {4})
    assert Q == b2
    with pytest.raises(ValueError):
        rees_quotient(t2, {0})


def test_omega_power_of_map():
    assert omega_power_of_map([1, 2, 2]) == (2, 2, 2)
    assert omega_power_of_map([1, 0]) == (0, 1)
    assert omega_power_of_map([0, 0, 1]) == (0, 0, 0)


def test_transformation_semigroup_generates_t2():
    ts = TransformationSemigroup([(1, 0), (0, 0)])
    assert len(ts) == 4
    assert ts.generator_index == (0, 1)
    assert not ts.is_r_trivial()
    assert not ts.semigroup.is_r_trivial()
    assert ts.apply(ts.index_of((1, 1)), 0) == 1
    # composition is left to right
    sigma, c1 = ts.generator_index
    assert ts.semigroup.mul(c1, sigma) == ts.index_of((1, 1))


def test_transformation_semigroup_guard():
    with pytest.raises(GuardExceededError):
        TransformationSemigroup([(1, 2, 0), (1, 0, 2)], Limits(max_transition_size=4))


def test_named_instances_are_semigroups():
    for name, factory in library.NAMED.items():
        S = factory()
        assert isinstance(S.table, np.ndarray), name
