"""
Named Semigroups
Small standard examples used by the CLI samples and the test suite
"""

import string
from itertools import permutations, product
from typing import List, Tuple

from .semigroup import Semigroup, direct_product


def trivial_semigroup() -> Semigroup:
    return Semigroup([[0]], ["e"])


def left_zero(n: int = 2) -> Semigroup:
    """xy = x"""
    return Semigroup([[x] * n for x in range(n)], list(string.ascii_lowercase[:n]))


def right_zero(n: int = 2) -> Semigroup:
    """xy = y"""
    return Semigroup([list(range(n)) for _ in range(n)], list(string.ascii_lowercase[:n]))


def null_semigroup(n: int = 2) -> Semigroup:
    """All products equal the zero, which is the last element"""
    labels = list(string.ascii_lowercase[:n - 1]) + ["0"]
    return Semigroup([[n - 1] * n for _ in range(n)], labels)


def semilattice_chain(n: int = 2) -> Semigroup:
    """Chain 0 < 1 < ... under meet"""
    return Semigroup([[min(x, y) for y in range(n)] for x in range(n)])


def cyclic_group(n: int) -> Semigroup:
    labels = ["e", "g"] + [f"g{k}" for k in range(2, n)]
    return Semigroup([[(x + y) % n for y in range(n)] for x in range(n)], labels[:n])


def klein_four() -> Semigroup:
    """C2 x C2"""
    return direct_product(cyclic_group(2), cyclic_group(2))


def _transformation_labels(maps: List[Tuple[int, ...]]) -> List[str]:
    if len(maps[0]) == 2:
        names = {(0, 1): "id", (1, 0): "sigma", (0, 0): "c1", (1, 1): "c2"}
        return [names[f] for f in maps]
    return ["".join(str(v) for v in f) for f in maps]


def full_transformation_monoid(k: int = 2) -> Semigroup:
    """
    All maps of {0..k-1} composed left to right, (xy)(q) = y(x(q))

    Permutations come first, then the remaining maps in lexicographic order;
    for k = 2 the elements are id, sigma, c1, c2 where c1 and c2 are the constants.
    """
    perms = sorted(permutations(range(k)))
    others = sorted(f for f in product(range(k), repeat=k) if len(set(f)) < k)
    maps = perms + others
    index = {f: i for i, f in enumerate(maps)}
    table = [[index[tuple(y[x[q]] for q in range(k))] for y in maps] for x in maps]
    return Semigroup(table, _transformation_labels(maps))


def brandt_b2() -> Semigroup:
    """Five-element Brandt semigroup with elements E12, E21, E11, E22, 0"""
    units = [(1, 2), (2, 1), (1, 1), (2, 2)]
    zero = len(units)

    def times(a: int, b: int) -> int:
        if a == zero or b == zero:
            return zero
        (i, j), (k, l) = units[a], units[b]
        return units.index((i, l)) if j == k else zero

    labels = [f"E{i}{j}" for i, j in units] + ["0"]
    return Semigroup([[times(a, b) for b in range(zero + 1)] for a in range(zero + 1)], labels)


NAMED = {
    "trivial": trivial_semigroup,
    "l2": left_zero,
    "r2": right_zero,
    "n2": null_semigroup,
    "u2": semilattice_chain,
    "c2": lambda: cyclic_group(2),
    "c3": lambda: cyclic_group(3),
    "c2xc2": klein_four,
    "t2": full_transformation_monoid,
    "b2": brandt_b2,
}
