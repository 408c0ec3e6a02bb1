import pytest

from core import library
from core.catalog import enumerate_catalog
from core.construct import (
    ConstructResult, construct_ER, er_membership_via_points, is_er_closed, is_pointlike,
    max_pointlikes, missing_unions,
)
from core.errors import AmbientMismatchError, GuardExceededError
from core.limits import Limits
from core.power import Complex, Subset, complex_closure, power_set_complex, singleton_complex
from core.semigroup import is_in_ER

from conftest import NAMED_KEYS


def test_groups_give_singletons(c3, c2xc2, trivial):
    for S in (c3, c2xc2, trivial):
        result = construct_ER(S)
        assert result.complex == singleton_complex(S)
        assert result.iterations == 0 and result.trace == ()


def test_brandt_is_in_er(b2):
    result = construct_ER(b2)
    assert result.complex.is_singleton_complex()
    assert len(result.complex) == 5


def test_t2_adds_the_constants(t2, sub):
    result = construct_ER(t2)
    constants = sub(t2, "c1", "c2")
    assert set(result.complex.members) == set(singleton_complex(t2).members) | {constants}
    assert result.iterations == 1
    assert result.trace == ((constants,),)
    assert result.ambient is t2


def test_max_pointlikes(t2, b2, n2, sub):
    assert max_pointlikes(construct_ER(t2)) == [sub(t2, "id"), sub(t2, "sigma"), sub(t2, "c1", "c2")]
    assert max_pointlikes(construct_ER(b2)) == [Subset.singleton(x) for x in range(5)]
    top = ConstructResult(complex=power_set_complex(n2), iterations=0, trace=())
    assert max_pointlikes(top) == [Subset.of([0, 1])]


def test_rule_closedness(t2, sub):
    assert missing_unions(singleton_complex(t2)) == [sub(t2, "c1", "c2")]
    assert not is_er_closed(singleton_complex(t2))
    assert is_er_closed(construct_ER(t2).complex)
    assert is_er_closed(power_set_complex(t2))


@pytest.mark.parametrize("name", NAMED_KEYS)
def test_construct_is_rule_closed_complex(name):
    S = library.NAMED[name]()
    C = construct_ER(S).complex
    assert C.is_valid()
    assert is_er_closed(C)
    # sing(S) is rule-closed exactly when nothing had to be added
    assert is_er_closed(singleton_complex(S)) == C.is_singleton_complex()


@pytest.fixture(scope="module")
def small_catalog():
    return [entry.semigroup() for entry in enumerate_catalog(3)]


def _saturate(S, members):
    """Close under products and the union rule, the way construct_ER does"""
    K = complex_closure(S, members)
    while True:
        added = missing_unions(K)
        if not added:
            return K
        K = complex_closure(S, list(K.members) + added)


def test_construct_lies_below_every_rule_closed_complex(small_catalog):
    checked = 0
    for S in small_catalog:
        C = construct_ER(S).complex
        singletons = list(singleton_complex(S).members)
        extra = [X for X in power_set_complex(S).members if not X.is_singleton()]
        for mask in range(1 << len(extra)):
            K = Complex(S, singletons + [X for i, X in enumerate(extra) if mask >> i & 1])
            if K.is_valid() and is_er_closed(K):
                checked += 1
                assert set(C.members) <= set(K.members), (S.rows(), K.format())
    # Po(S) is always one of them
    assert checked >= len(small_catalog)


def test_trace_grows_strictly(small_catalog):
    for S in small_catalog + [library.NAMED[name]() for name in NAMED_KEYS]:
        result = construct_ER(S)
        assert result.iterations == len(result.trace)
        assert result.iterations <= (1 << S.order) - 1
        K = complex_closure(S, ())
        for added in result.trace:
            assert added and not any(X in K for X in added)
            grown = complex_closure(S, list(K.members) + list(added))
            assert set(K.members) < set(grown.members)
            K = grown
        assert K == result.complex


def test_removed_members_come_back(small_catalog):
    for S in small_catalog + [library.full_transformation_monoid()]:
        C = construct_ER(S).complex
        for X in C.members:
            if X.is_singleton():
                continue
            K = _saturate(S, [Y for Y in C.members if Y != X])
            assert X in K
            assert set(C.members) <= set(K.members)


@pytest.mark.parametrize("name", NAMED_KEYS)
def test_points_agree_with_direct_test(name):
    S = library.NAMED[name]()
    assert er_membership_via_points(S) == is_in_ER(S)


def test_er_membership_examples(b2, t2, trivial):
    assert er_membership_via_points(b2)
    assert not er_membership_via_points(t2)
    assert er_membership_via_points(trivial)


def test_is_pointlike(t2, sub):
    assert is_pointlike(t2, sub(t2, "c1", "c2"))
    assert is_pointlike(t2, sub(t2, "sigma"))
    assert not is_pointlike(t2, sub(t2, "id", "sigma"))


def test_is_pointlike_reuses_construct(t2, b2, sub):
    result = construct_ER(t2)
    assert is_pointlike(t2, sub(t2, "c1", "c2"), result=result)
    assert not is_pointlike(t2, sub(t2, "id", "c1"), result=result)
    with pytest.raises(AmbientMismatchError):
        is_pointlike(b2, Subset.singleton(0), result=result)
    with pytest.raises(AmbientMismatchError):
        is_pointlike(t2, Subset.singleton(7))


def test_construct_guard(t2):
    with pytest.raises(GuardExceededError) as info:
        construct_ER(t2, Limits(max_order=3))
    assert info.value.guard == "max_order"
    assert info.value.observed == 4
