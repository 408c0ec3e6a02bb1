"""
ER Construct Module
Least complex closed under unioning type-II classes of its idempotents
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import AmbientMismatchError
from .limits import Limits, DEFAULT_LIMITS
from .power import Complex, Subset, as_abstract_semigroup, complex_closure, union_of
from .semigroup import Semigroup
from .type2 import type2_partition


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructResult:
    """Outcome of the fixpoint computation"""

    complex: Complex
    iterations: int                          # rounds that added at least one union
    trace: Tuple[Tuple[Subset, ...], ...]    # unions added in each such round

    @property
    def ambient(self) -> Semigroup:
        return self.complex.ambient


def missing_unions(K: Complex, limits: Limits = DEFAULT_LIMITS) -> List[Subset]:
    """
    Unions of type-II classes of idempotents of K that K lacks

    The rule is evaluated on K itself: idempotents and type-II classes are
    those of the abstract semigroup of K.
    """
    abstract = as_abstract_semigroup(K, limits)
    A = abstract.semigroup
    t2 = type2_partition(A)
    missing = set()
    for e in sorted(A.idempotents()):
        U = union_of(abstract.members[i] for i in t2.block(e))
        if U not in K:
            missing.add(U)
    return sorted(missing, key=Subset.sort_key)


def is_er_closed(K: Complex, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether K already contains every union the rule asks for"""
    return not missing_unions(K, limits)


def construct_ER(S: Semigroup, limits: Limits = DEFAULT_LIMITS) -> ConstructResult:
    """
    Compute C_ER(S)

    Starting from sing(S), each round adds every missing union at once and
    re-closes, until a round adds nothing.

    Args:
        S: Semigroup within the max_order guard
        limits: Size guards

    Returns:
        ConstructResult

    Raises:
        GuardExceededError: if S or an intermediate complex is too large
    """
    limits.check('max_order', S.order)
    K = complex_closure(S, (), limits)
    trace = []
    while True:
        added = missing_unions(K, limits)
        if not added:
            break
        trace.append(tuple(added))
        logger.debug(f"Round {len(trace)}: adding {[X.format(S.labels) for X in added]}")
        K = complex_closure(S, list(K.members) + added, limits)

    logger.info(f"C_ER over order {S.order}: {len(K)} members after {len(trace)} rounds")
    return ConstructResult(complex=K, iterations=len(trace), trace=tuple(trace))


def er_membership_via_points(S: Semigroup, limits: Limits = DEFAULT_LIMITS) -> bool:
    """S is in ER iff its construct is sing(S)"""
    return construct_ER(S, limits).complex.is_singleton_complex()


def max_pointlikes(result: ConstructResult) -> List[Subset]:
    """Inclusion-maximal members of the construct, canonically ordered"""
    return result.complex.maximal_members()


def is_pointlike(S: Semigroup, X: Subset, limits: Limits = DEFAULT_LIMITS,
                 result: Optional[ConstructResult] = None) -> bool:
    """
    Whether X is ER-pointlike in S

    Args:
        S: The semigroup
        X: Subset of S
        limits: Size guards
        result: A construct already computed for S, reused instead of recomputing

    Raises:
        AmbientMismatchError: if X is not a subset of S or result belongs to another semigroup
    """
    if X.max_element() >= S.order:
        raise AmbientMismatchError(f"{X!r} is not a subset of a semigroup of order {S.order}")
    if result is None:
        result = construct_ER(S, limits)
    elif result.ambient != S:
        raise AmbientMismatchError("construct result belongs to a different semigroup")
    return X in result.complex

