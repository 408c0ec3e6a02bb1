"""
Power Semigroup Module
Non-empty subsets as bit sets, S-complexes, closure, join and meet
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import AmbientMismatchError, InvariantViolationError
from .limits import Limits, DEFAULT_LIMITS
from .semigroup import Semigroup


logger = logging.getLogger(__name__)


class Subset:
    """An immutable non-empty set of element indices stored as an int bit mask"""

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if bits <= 0:
            raise ValueError("a subset must be non-empty")
        object.__setattr__(self, "bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("Subset is immutable")

    def __reduce__(self):
        return (Subset, (self.bits,))

    @classmethod
    def of(cls, elements: Iterable[int]) -> "Subset":
        bits = 0
        for x in elements:
            if x < 0:
                raise ValueError(f"element index must be non-negative, got {x}")
            bits |= 1 << x
        return cls(bits)

    @classmethod
    def singleton(cls, x: int) -> "Subset":
        return cls(1 << x)

    def __contains__(self, x: int) -> bool:
        return x >= 0 and (self.bits >> x) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return filter(self.__contains__, range(self.bits.bit_length()))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __eq__(self, other) -> bool:
        return isinstance(other, Subset) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __lt__(self, other: "Subset") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Subset") -> bool:
        return self.sort_key() <= other.sort_key()

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.bits | other.bits)

    def __repr__(self) -> str:
        return f"Subset({sorted(self)})"

    def sort_key(self) -> Tuple[int, int]:
        """Canonical order: cardinality, then numeric bit pattern"""
        return len(self), self.bits

    def issubset(self, other: "Subset") -> bool:
        return self.bits & ~other.bits == 0

    def is_singleton(self) -> bool:
        return self.bits & (self.bits - 1) == 0

    def max_element(self) -> int:
        return self.bits.bit_length() - 1

    def nonempty_subsets(self) -> Iterator["Subset"]:
        """Every non-empty subset, including self"""
        sub = self.bits
        while sub:
            yield Subset(sub)
            sub = (sub - 1) & self.bits

    def format(self, labels: Optional[Sequence[str]] = None) -> str:
        names = [labels[x] if labels is not None else str(x) for x in self]
        return "{" + ",".join(names) + "}"


def union_of(subsets: Iterable[Subset]) -> Subset:
    bits = 0
    for X in subsets:
        bits |= X.bits
    return Subset(bits)


class PowerSemigroup:
    """Setwise products over a fixed ambient semigroup, memoised"""

    def __init__(self, ambient: Semigroup):
        self.ambient = ambient
        t = ambient.table
        n = ambient.order
        # row_masks[x][y] = bit of x*y
        self._row_masks = [[1 << int(t[x, y]) for y in range(n)] for x in range(n)]
        self._cache: Dict[Tuple[int, int], int] = {}

    def product(self, X: Subset, Y: Subset) -> Subset:
        key = (X.bits, Y.bits)
        bits = self._cache.get(key)
        if bits is None:
            n = self.ambient.order
            if X.max_element() >= n or Y.max_element() >= n:
                raise AmbientMismatchError(f"subset not over a semigroup of order {n}")
            ys = list(Y)
            bits = 0
            for x in X:
                row = self._row_masks[x]
                for y in ys:
                    bits |= row[y]
            self._cache[key] = bits
        return Subset(bits)


@lru_cache(maxsize=16)
def power_semigroup(S: Semigroup) -> PowerSemigroup:
    """Shared memoised PowerSemigroup for S"""
    return PowerSemigroup(S)


def setwise_product(S: Semigroup, X: Subset, Y: Subset) -> Subset:
    """
    Compute X . Y = {xy : x in X, y in Y}

    Raises:
        AmbientMismatchError: if X or Y mentions an index outside S
    """
    return power_semigroup(S).product(X, Y)


@dataclass(frozen=True)
class ComplexSemigroup:
    """A complex realised as an abstract Cayley-table semigroup"""

    semigroup: Semigroup
    members: Tuple[Subset, ...]       # abstract index -> subset
    index: Dict[Subset, int]          # subset -> abstract index

    def subset(self, i: int) -> Subset:
        return self.members[i]


class Complex:
    """An S-complex: contains singletons, downward closed, product closed"""

    def __init__(self, ambient: Semigroup, members: Iterable[Subset]):
        """
        Wrap a member family (no closure is applied; see complex_closure)

        Args:
            ambient: The semigroup S
            members: Subsets of S
        """
        self.ambient = ambient
        self.members: Tuple[Subset, ...] = tuple(sorted(set(members), key=Subset.sort_key))
        self._index = {X: i for i, X in enumerate(self.members)}
        self._abstract: Optional[ComplexSemigroup] = None

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __contains__(self, X: Subset) -> bool:
        return X in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.ambient == other.ambient and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.ambient, self.members))

    def __repr__(self) -> str:
        return f"Complex({len(self.members)} members over order {self.ambient.order})"

    def index_of(self, X: Subset) -> int:
        return self._index[X]

    def format(self) -> List[str]:
        return [X.format(self.ambient.labels) for X in self.members]

    def is_singleton_complex(self) -> bool:
        return all(X.is_singleton() for X in self.members)

    def violations(self) -> List[str]:
        """Describe every failed complex invariant (empty when valid)"""
        problems = []
        labels = self.ambient.labels
        for x in range(self.ambient.order):
            if Subset.singleton(x) not in self:
                problems.append(f"missing singleton {{{labels[x]}}}")
        for X in self.members:
            for Y in X.nonempty_subsets():
                if Y not in self:
                    problems.append(f"{Y.format(labels)} below {X.format(labels)} missing")
        power = power_semigroup(self.ambient)
        for X in self.members:
            for Y in self.members:
                XY = power.product(X, Y)
                if XY not in self:
                    problems.append(f"product {X.format(labels)}{Y.format(labels)} = {XY.format(labels)} missing")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def meet(self, other: "Complex") -> "Complex":
        _check_same_ambient(self, other)
        return Complex(self.ambient, set(self.members) & set(other.members))

    def join(self, other: "Complex", limits: Limits = DEFAULT_LIMITS) -> "Complex":
        return complex_join(self, other, limits)

    def maximal_members(self) -> List[Subset]:
        """The inclusion-maximal members, canonically ordered"""
        return [X for X in self.members
                if not any(X != Y and X.issubset(Y) for Y in self.members)]

    def as_abstract_semigroup(self, limits: Limits = DEFAULT_LIMITS) -> ComplexSemigroup:
        return as_abstract_semigroup(self, limits)


def _check_same_ambient(K1: Complex, K2: Complex) -> None:
    if K1.ambient != K2.ambient:
        raise AmbientMismatchError("complexes are over different semigroups")


def singleton_complex(S: Semigroup) -> Complex:
    """sing(S), the bottom of Com(S)"""
    return Complex(S, (Subset.singleton(x) for x in range(S.order)))


def power_set_complex(S: Semigroup, limits: Limits = DEFAULT_LIMITS) -> Complex:
    """Po(S), the top of Com(S)"""
    limits.check('max_order', S.order)
    return Complex(S, (Subset(bits) for bits in range(1, 1 << S.order)))


def downward_closure(S: Semigroup, tops: Iterable[Subset], limits: Limits = DEFAULT_LIMITS) -> set:
    """Non-empty subsets of the given sets together with all singletons"""
    found = {Subset.singleton(x) for x in range(S.order)}
    for X in tops:
        if X not in found:
            found.update(X.nonempty_subsets())
        limits.check('max_complex_size', len(found))
    return found


def complex_closure(S: Semigroup, gens: Iterable[Subset] = (), limits: Limits = DEFAULT_LIMITS) -> Complex:
    """
    Smallest complex containing the given subsets

    Worklist saturation: every new member is multiplied on both sides with
    everything known, and each product brings in its non-empty subsets.

    Args:
        S: Ambient semigroup
        gens: Subsets to include (may be empty, giving sing(S))
        limits: max_order and max_complex_size guards

    Returns:
        Complex

    Raises:
        GuardExceededError: if the order or complex size guard trips
        AmbientMismatchError: if a generator mentions an index outside S
    """
    limits.check('max_order', S.order)
    gens = list(gens)
    n = S.order
    for X in gens:
        if X.max_element() >= n:
            raise AmbientMismatchError(f"{X!r} is not a subset of a semigroup of order {n}")
    power = power_semigroup(S)

    members = downward_closure(S, gens, limits)
    known: List[Subset] = sorted(members, key=Subset.sort_key)
    queue = deque(known)
    while queue:
        X = queue.popleft()
        for i in range(len(known)):
            Y = known[i]
            for product in (power.product(X, Y), power.product(Y, X)):
                if product in members:
                    continue
                for Z in product.nonempty_subsets():
                    if Z not in members:
                        members.add(Z)
                        known.append(Z)
                        queue.append(Z)
                limits.check('max_complex_size', len(members))

    logger.debug(f"Complex closure over order {n}: {len(members)} members")
    return Complex(S, members)


def complex_join(K1: Complex, K2: Complex, limits: Limits = DEFAULT_LIMITS) -> Complex:
    """Least upper bound of two complexes in Com(S)"""
    _check_same_ambient(K1, K2)
    return complex_closure(K1.ambient, list(K1.members) + list(K2.members), limits)


def as_abstract_semigroup(K: Complex, limits: Limits = DEFAULT_LIMITS) -> ComplexSemigroup:
    """
    Realise a complex as a Cayley-table semigroup

    Abstract index i corresponds to K.members[i] (canonical order).

    Raises:
        GuardExceededError: if the complex is larger than max_complex_size
        InvariantViolationError: if K is not product closed
    """
    if K._abstract is not None:
        return K._abstract
    limits.check('max_complex_size', len(K))
    power = power_semigroup(K.ambient)
    members = K.members
    table = []
    for X in members:
        row = []
        for Y in members:
            XY = power.product(X, Y)
            if XY not in K:
                raise InvariantViolationError(f"complex is not product closed at {X!r}.{Y!r}")
            row.append(K.index_of(XY))
        table.append(row)
    labels = [X.format(K.ambient.labels) for X in members]
    # the table is a restriction of the power semigroup, hence associative
    abstract = ComplexSemigroup(Semigroup(table, labels, check=False), members, dict(K._index))
    K._abstract = abstract
    return abstract
