"""
Group Kernel and Type-II Module
K_G(S), the type-II partition of each R-class, quotient PTS actions and
the ER characterisation by injectivity
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

from .errors import InvariantViolationError
from .semigroup import ActivatorData, GreenData, Semigroup, activators


logger = logging.getLogger(__name__)


def weak_inverse_pairs(S: Semigroup) -> List[Tuple[int, int]]:
    """All (x, y) with xyx = x"""
    t = S.table
    return [(x, y) for x in range(S.order) for y in range(S.order) if int(t[int(t[x, y]), x]) == x]


def group_kernel(S: Semigroup) -> FrozenSet[int]:
    """
    Compute K_G(S)

    Least product-closed set containing E(S) and closed under weak conjugation:
    s in K and xyx = x imply xsy, ysx in K.
    """
    t = S.table
    pairs = weak_inverse_pairs(S)
    kernel = set(S.idempotents())
    queue = deque(sorted(kernel))
    while queue:
        s = queue.popleft()
        produced = []
        for k in list(kernel):
            produced.append(int(t[s, k]))
            produced.append(int(t[k, s]))
        for x, y in pairs:
            produced.append(int(t[int(t[x, s]), y]))
            produced.append(int(t[int(t[y, s]), x]))
        for z in produced:
            if z not in kernel:
                kernel.add(z)
                queue.append(z)
    return frozenset(kernel)


@dataclass(frozen=True)
class TypeIIData:
    """Group kernel plus the type-II blocks, grouped by R-class"""

    kernel: FrozenSet[int]
    block_of: Tuple[int, ...]
    blocks: Tuple[FrozenSet[int], ...]      # numbered by smallest member
    per_r_class: Tuple[Tuple[int, ...], ...]  # R-class index -> block ids
    green: GreenData

    def block(self, x: int) -> FrozenSet[int]:
        return self.blocks[self.block_of[x]]

    def same_block(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def r_class_of_block(self, b: int) -> int:
        return self.green.r_of[min(self.blocks[b])]


def type2_partition(S: Semigroup, kernel: Optional[FrozenSet[int]] = None) -> TypeIIData:
    """
    Compute x == y iff xa = y and yb = x for some a, b in K_G(S)^I

    Args:
        S: Semigroup
        kernel: K_G(S) if already known

    Returns:
        TypeIIData
    """
    if kernel is None:
        kernel = group_kernel(S)
    t = S.table
    n = S.order
    ks = sorted(kernel)
    reach = [{x} | {int(t[x, a]) for a in ks} for x in range(n)]

    block_of = [-1] * n
    blocks: List[FrozenSet[int]] = []
    for x in range(n):
        if block_of[x] != -1:
            continue
        block = frozenset(y for y in reach[x] if x in reach[y])
        for y in block:
            block_of[y] = len(blocks)
        blocks.append(block)

    green = S.green()
    per_r = [[] for _ in green.r_classes]
    for b, block in enumerate(blocks):
        r_ids = {green.r_of[y] for y in block}
        if len(r_ids) != 1:
            raise InvariantViolationError(f"type-II block {sorted(block)} spans several R-classes")
        per_r[r_ids.pop()].append(b)

    return TypeIIData(kernel=frozenset(kernel), block_of=tuple(block_of), blocks=tuple(blocks),
                      per_r_class=tuple(tuple(r) for r in per_r), green=green)


@dataclass(frozen=True)
class QuotientPTS:
    """(R/II, S): blocks of one R-class under the right action of S"""

    r_class: int
    states: Tuple[int, ...]
    action: Dict[Tuple[int, int], int]   # (block, s) -> block; missing = undefined

    def act(self, block: int, s: int) -> Optional[int]:
        return self.action.get((block, s))


def quotient_pts(S: Semigroup, r_class: int, t2: TypeIIData,
                 acting: Optional[Iterable[int]] = None) -> QuotientPTS:
    """
    Quotient of the PTS (R, S) by the type-II partition

    Args:
        S: Semigroup
        r_class: Index of an R-class of S
        t2: Type-II data of S
        acting: Elements whose action is tabulated (default: all of S)

    Returns:
        QuotientPTS that is well defined and injective

    Raises:
        InvariantViolationError: if the partition is not a congruence, or the
            quotient action is not injective
    """
    t = S.table
    R = t2.green.r_classes[r_class]
    states = t2.per_r_class[r_class]
    acting = range(S.order) if acting is None else sorted(acting)
    action: Dict[Tuple[int, int], int] = {}
    for s in acting:
        images: Dict[int, int] = {}
        for b in states:
            targets = {t2.block_of[int(t[x, s])] for x in t2.blocks[b] if int(t[x, s]) in R}
            if len(targets) > 1:
                raise InvariantViolationError(
                    f"type-II partition is not a congruence on R-class {r_class} at element {s}")
            if targets:
                target = targets.pop()
                if target in images:
                    raise InvariantViolationError(
                        f"quotient action of {s} on R-class {r_class} is not injective")
                images[target] = b
                action[(b, s)] = target
    return QuotientPTS(r_class=r_class, states=states, action=action)


def check_kernel_class_is_block(S: Semigroup, t2: TypeIIData) -> bool:
    """K_G(S) meets each R-class in nothing or in exactly one block"""
    for R in t2.green.r_classes:
        meet = R & t2.kernel
        if meet and meet != t2.block(min(meet)):
            return False
    return True


def check_kernel_partial_identity(S: Semigroup, t2: TypeIIData) -> bool:
    """Every kernel element fixes every block it acts on"""
    for r in range(len(t2.green.r_classes)):
        pts = quotient_pts(S, r, t2, acting=t2.kernel)
        for (block, _a), target in pts.action.items():
            if target != block:
                return False
    return True


def check_actII(S: Semigroup, t2: Optional[TypeIIData] = None,
                acts: Optional[ActivatorData] = None) -> bool:
    """
    Check the activator/type-II compatibility claims for every x and t in F_x

    Blocks are taken in S^I (whose kernel is K_G(S) plus the identity, so its
    partition restricts to that of S) because F_x may contain the identity.
    """
    if acts is None:
        acts = activators(S)
    SI = acts.extended
    n = S.order
    kernel = (t2.kernel if t2 is not None else None)
    t2I = type2_partition(SI, None if kernel is None else kernel | {acts.identity})
    t = SI.table
    gI = t2I.green

    def translate(x: int, block: Iterable[int]) -> FrozenSet[int]:
        return frozenset(int(t[x, u]) for u in block)

    for x in range(n):
        for tt in acts.per_element[x]:
            # x . [t] = [x]
            if translate(x, t2I.block(tt)) != t2I.block(x):
                return False
            # s R t implies x . [s] = [xs]
            r_t = gI.r_class(tt)
            for s in r_t:
                if translate(x, t2I.block(s)) != t2I.block(int(t[x, s])):
                    return False
            # [s] -> [xs] is a surjective PTS morphism R_t/II -> R_x/II
            zeta = {t2I.block_of[s]: t2I.block_of[int(t[x, s])] for s in r_t}
            if set(zeta.values()) != set(t2I.per_r_class[gI.r_of[x]]):
                return False
            source = quotient_pts(SI, gI.r_of[tt], t2I, acting=range(n))
            target = quotient_pts(SI, gI.r_of[x], t2I, acting=range(n))
            for (block, s), image in source.action.items():
                if target.act(zeta[block], s) != zeta[image]:
                    return False
    return True


def is_in_ER_via_injectivity(S: Semigroup) -> bool:
    """Every s acts by a partial injection on every R-class"""
    t = S.table
    green = S.green()
    for R in green.r_classes:
        for s in range(S.order):
            images = [int(t[x, s]) for x in R if int(t[x, s]) in R]
            if len(images) != len(set(images)):
                return False
    return True


def _is_injective_congruence(S: Semigroup, R: Sequence[int], part_of: Dict[int, int]) -> bool:
    t = S.table
    members = set(R)
    for s in range(S.order):
        image_of: Dict[int, int] = {}
        for x in R:
            y = int(t[x, s])
            if y not in members:
                continue
            p, q = part_of[x], part_of[y]
            if image_of.setdefault(p, q) != q:
                return False      # not a congruence
        targets = list(image_of.values())
        if len(targets) != len(set(targets)):
            return False          # quotient not injective
    return True


def check_minimal_injective(S: Semigroup, t2: TypeIIData, max_class_size: int = 4) -> bool:
    """
    Every injective congruence on (R, S) is coarser than the type-II partition

    Exhaustive over all set partitions of R, for R-classes with at most
    max_class_size elements (larger classes are skipped).
    """
    for r, R in enumerate(t2.green.r_classes):
        if len(R) > max_class_size:
            continue
        members = sorted(R)
        for partition in multiset_partitions(members):
            part_of = {x: i for i, part in enumerate(partition) for x in part}
            if not _is_injective_congruence(S, members, part_of):
                continue
            for b in t2.per_r_class[r]:
                if len({part_of[x] for x in t2.blocks[b]}) != 1:
                    return False
    return True


def check_kernel_preserves_surjection(S: Semigroup, T: Semigroup, phi: Sequence[int]) -> bool:
    """
    For a surjective morphism phi: S -> T, phi(K_G(S)) = K_G(T)

    Raises:
        ValueError: if phi is not a surjective morphism
    """
    s_table, t_table = S.table, T.table
    if set(phi) != set(range(T.order)):
        raise ValueError("map is not surjective")
    for x in range(S.order):
        for y in range(S.order):
            if phi[int(s_table[x, y])] != int(t_table[phi[x], phi[y]]):
                raise ValueError(f"map is not a morphism at ({x}, {y})")
    return {phi[x] for x in group_kernel(S)} == set(group_kernel(T))
