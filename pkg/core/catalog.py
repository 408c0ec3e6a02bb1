"""
Catalog Module
All semigroups of small order up to isomorphism, for exhaustive acceptance runs
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .limits import Limits, DEFAULT_LIMITS
from .semigroup import Semigroup


logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]
UNSET = -1


@dataclass(frozen=True)
class CatalogEntry:
    """One isomorphism class; anti_partner is the id of the class of the transposed table"""

    iso_id: int
    order: int
    table: Table
    anti_partner: Optional[int] = None

    def semigroup(self) -> Semigroup:
        return Semigroup(self.table, check=False)

    @property
    def self_dual(self) -> bool:
        return self.anti_partner == self.iso_id


def _as_table(rows: np.ndarray) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


def canonical_form(table: Sequence[Sequence[int]]) -> Table:
    """
    Least relabelled table over all permutations of the elements

    The permutation p renames x to p[x]; tables compare row-major.
    """
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    best = None
    for p in permutations(range(n)):
        p = np.array(p, dtype=np.int64)
        inv = np.argsort(p)
        relabelled = p[t[np.ix_(inv, inv)]]
        key = tuple(relabelled.ravel().tolist())
        if best is None or key < best:
            best = key
    return tuple(best[i * n:(i + 1) * n] for i in range(n))


def anti_isomorphic(table: Sequence[Sequence[int]]) -> Table:
    """Canonical form of the opposite semigroup (xy in the opposite is yx)"""
    return canonical_form(np.asarray(table, dtype=np.int64).T)


def _consistent(t: List[List[int]], a: int, b: int, n: int) -> bool:
    """Check every associativity triple the newly set cell (a, b) takes part in"""

    def ok(x: int, y: int, z: int) -> bool:
        xy, yz = t[x][y], t[y][z]
        if xy == UNSET or yz == UNSET:
            return True
        left, right = t[xy][z], t[x][yz]
        return left == UNSET or right == UNSET or left == right

    for z in range(n):
        if not ok(a, b, z):
            return False
    for x in range(n):
        if not ok(x, a, b):
            return False
    for x in range(n):
        for y in range(n):
            if t[x][y] == a and not ok(x, y, b):
                return False
            if t[x][y] == b and not ok(a, x, y):
                return False
    return True


def associative_tables(n: int):
    """Yield every associative n x n table (labelled), by backtracking over cells"""
    t = [[UNSET] * n for _ in range(n)]
    cells = [(a, b) for a in range(n) for b in range(n)]

    def fill(k: int):
        if k == len(cells):
            yield _as_table(t)
            return
        a, b = cells[k]
        for v in range(n):
            t[a][b] = v
            if _consistent(t, a, b, n):
                yield from fill(k + 1)
        t[a][b] = UNSET

    yield from fill(0)


def enumerate_catalog(max_order: int, limits: Limits = DEFAULT_LIMITS) -> List[CatalogEntry]:
    """
    Every semigroup of order 1..max_order, one entry per isomorphism class

    Args:
        max_order: Largest order to enumerate
        limits: max_catalog_order guard

    Returns:
        Entries sorted by (order, canonical table), numbered from 0

    Raises:
        GuardExceededError: if max_order is above max_catalog_order
    """
    limits.check('max_catalog_order', max_order)
    forms: List[Table] = []
    for n in range(1, max_order + 1):
        found = {canonical_form(table) for table in associative_tables(n)}
        logger.info(f"Order {n}: {len(found)} semigroups up to isomorphism")
        forms.extend(sorted(found))

    ids = {form: i for i, form in enumerate(forms)}
    return [CatalogEntry(iso_id=i, order=len(form), table=form,
                         anti_partner=ids.get(anti_isomorphic(form)))
            for i, form in enumerate(forms)]
