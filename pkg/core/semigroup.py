"""
Semigroup Core Module
Finite semigroups as Cayley tables, Green's relations and activators
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import AssociativityError, CayleyFormatError, InvariantViolationError
from .limits import Limits, DEFAULT_LIMITS


logger = logging.getLogger(__name__)


def _first_non_associative(table: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """Return the first (x, y, z) with (xy)z != x(yz), or None"""
    for x in range(table.shape[0]):
        lhs = table[table[x]]      # lhs[y, z] = (x*y)*z
        rhs = table[x][table]      # rhs[y, z] = x*(y*z)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = bad[0]
            return x, int(y), int(z)
    return None


def _checked_labels(labels: Sequence[str], n: int) -> Tuple[str, ...]:
    """
    Labels must survive a trip through the text format: one token each,
    no comment marker, pairwise distinct

    Raises:
        CayleyFormatError: on a wrong count or an unusable label
    """
    labels = tuple(str(label) for label in labels)
    if len(labels) != n:
        raise CayleyFormatError(f"expected {n} labels, got {len(labels)}")
    for label in labels:
        if not label or label.split() != [label]:
            raise CayleyFormatError(f"label {label!r} must be non-empty and contain no whitespace")
        if "#" in label:
            raise CayleyFormatError(f"label {label!r} must not contain '#'")
    if len(set(labels)) != n:
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        raise CayleyFormatError(f"labels must be distinct, repeated: {' '.join(duplicates)}")
    return labels


class Semigroup:
    """A finite semigroup given by its Cayley table (row = left factor)"""

    def __init__(self, table, labels: Optional[Sequence[str]] = None, check: bool = True):
        """
        Build and validate a semigroup

        Args:
            table: n x n array-like of element indices
            labels: Optional element names (presentation only)
            check: Verify associativity (skip only for tables that are
                   associative by construction, e.g. function composition)

        Raises:
            CayleyFormatError: if the table is not square or has out-of-range entries
            AssociativityError: if the table is not associative
        """
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise CayleyFormatError(f"table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise CayleyFormatError(f"table entries must lie in [0, {n})")
        if check:
            triple = _first_non_associative(arr)
            if triple is not None:
                raise AssociativityError(triple)
        arr.setflags(write=False)
        self._table = arr

        if labels is None:
            labels = [str(i) for i in range(n)]
        self._labels = _checked_labels(labels, n)

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        """Read-only Cayley table"""
        return self._table

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    def label(self, x: int) -> str:
        return self._labels[x]

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, Semigroup):
            return NotImplemented
        return self.order == other.order and np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        return hash((self.order, self._table.tobytes()))

    def __repr__(self) -> str:
        return f"Semigroup(order={self.order})"

    def rows(self) -> List[List[int]]:
        """Table as nested Python lists"""
        return self._table.tolist()

    def mul(self, x: int, y: int) -> int:
        """
        Multiply two elements

        Raises:
            IndexError: if x or y is not a valid element index
        """
        n = self.order
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"element index out of range for order {n}: ({x}, {y})")
        return int(self._table[x, y])

    def is_idempotent(self, x: int) -> bool:
        return int(self._table[x, x]) == x

    def omega_power(self, x: int) -> int:
        """Return the unique idempotent in {x, x^2, x^3, ...}"""
        power = x
        for _ in range(self.order + 1):
            if int(self._table[power, power]) == power:
                return power
            power = int(self._table[power, x])
        raise InvariantViolationError(f"no idempotent power found for element {x}")

    @cached_property
    def _idempotents(self) -> FrozenSet[int]:
        return frozenset(int(x) for x in np.flatnonzero(np.diagonal(self._table) == np.arange(self.order)))

    def idempotents(self) -> FrozenSet[int]:
        """Return E(S)"""
        return self._idempotents

    def adjoin_identity(self) -> "Semigroup":
        """
        Return S^I: S with a new two-sided identity appended as the last index

        Returns:
            Semigroup of order n + 1
        """
        n = self.order
        table = np.empty((n + 1, n + 1), dtype=np.int64)
        table[:n, :n] = self._table
        table[n, :] = np.arange(n + 1)
        table[:, n] = np.arange(n + 1)
        label = "I"
        while label in self._labels:
            label += "'"
        return Semigroup(table, list(self._labels) + [label], check=False)

    def subsemigroup_generated(self, gens: Iterable[int]) -> FrozenSet[int]:
        """
        Smallest product-closed set containing gens

        Args:
            gens: Non-empty collection of element indices
        """
        gens = sorted(set(gens))
        if not gens:
            raise ValueError("generator set must be non-empty")
        found = set(gens)
        queue = deque(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                for product in (int(self._table[x, g]), int(self._table[g, x])):
                    if product not in found:
                        found.add(product)
                        queue.append(product)
        return frozenset(found)

    def restrict(self, elements: Iterable[int]) -> Tuple["Semigroup", Tuple[int, ...]]:
        """
        Realise a subsemigroup as its own Cayley table

        Args:
            elements: Product-closed set of element indices

        Returns:
            Tuple of (subsemigroup, ambient index of each new element)

        Raises:
            ValueError: if the set is empty or not product-closed
        """
        elems = tuple(sorted(set(elements)))
        if not elems:
            raise ValueError("cannot restrict to an empty set")
        position = {x: i for i, x in enumerate(elems)}
        sub = self._table[np.ix_(elems, elems)]
        try:
            table = np.vectorize(position.__getitem__, otypes=[np.int64])(sub)
        except KeyError as e:
            raise ValueError(f"element set is not product-closed (product {e} escapes)")
        labels = [self._labels[x] for x in elems]
        return Semigroup(table, labels, check=False), elems

    def principal_ideal(self, x: int) -> FrozenSet[int]:
        """Return S^1 x S^1"""
        t = self._table
        ideal = {x}
        ideal.update(int(v) for v in t[:, x])
        ideal.update(int(v) for v in t[x, :])
        ideal.update(int(v) for v in t[t[:, x]].ravel())
        return frozenset(ideal)

    @cached_property
    def _green(self) -> "GreenData":
        return _compute_green(self, range(self.order))

    def green(self, generators: Optional[Iterable[int]] = None) -> "GreenData":
        """Green's relations (see module function green)"""
        if generators is None:
            return self._green
        return _compute_green(self, sorted(set(generators)))

    def is_r_trivial(self, generators: Optional[Iterable[int]] = None) -> bool:
        """True iff every R-class is a singleton"""
        return all(len(cls) == 1 for cls in self.green(generators).r_classes)


@dataclass(frozen=True)
class GreenData:
    """Green's classes and the R/L/J preorders of a finite semigroup"""

    r_classes: Tuple[FrozenSet[int], ...]
    l_classes: Tuple[FrozenSet[int], ...]
    h_classes: Tuple[FrozenSet[int], ...]
    j_classes: Tuple[FrozenSet[int], ...]
    r_of: Tuple[int, ...]
    l_of: Tuple[int, ...]
    h_of: Tuple[int, ...]
    j_of: Tuple[int, ...]
    # (lower, upper) pairs of class indices, reflexive
    r_order: FrozenSet[Tuple[int, int]]
    l_order: FrozenSet[Tuple[int, int]]
    j_order: FrozenSet[Tuple[int, int]]
    regular_j: Tuple[bool, ...]

    def r_leq(self, x: int, y: int) -> bool:
        return (self.r_of[x], self.r_of[y]) in self.r_order

    def r_less(self, x: int, y: int) -> bool:
        return self.r_of[x] != self.r_of[y] and self.r_leq(x, y)

    def same_r(self, x: int, y: int) -> bool:
        return self.r_of[x] == self.r_of[y]

    def l_leq(self, x: int, y: int) -> bool:
        return (self.l_of[x], self.l_of[y]) in self.l_order

    def same_l(self, x: int, y: int) -> bool:
        return self.l_of[x] == self.l_of[y]

    def same_h(self, x: int, y: int) -> bool:
        return self.h_of[x] == self.h_of[y]

    def j_leq(self, x: int, y: int) -> bool:
        return (self.j_of[x], self.j_of[y]) in self.j_order

    def j_class_leq(self, a: int, b: int) -> bool:
        """Compare J-class indices"""
        return (a, b) in self.j_order

    def r_class(self, x: int) -> FrozenSet[int]:
        return self.r_classes[self.r_of[x]]

    def l_class(self, x: int) -> FrozenSet[int]:
        return self.l_classes[self.l_of[x]]

    def j_class(self, x: int) -> FrozenSet[int]:
        return self.j_classes[self.j_of[x]]


def _classes_and_order(n: int, edges: Iterable[Tuple[int, int]]):
    """
    Strongly connected components of a Cayley digraph and their reachability order

    An edge u -> v means v lies in the ideal generated by u, so every class
    reachable from a class c sits below c.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    condensed = nx.condensation(graph)
    members = {c: frozenset(condensed.nodes[c]['members']) for c in condensed.nodes}
    ordered = sorted(members, key=lambda c: min(members[c]))
    renumber = {c: i for i, c in enumerate(ordered)}

    classes = tuple(members[c] for c in ordered)
    index = [0] * n
    for i, cls in enumerate(classes):
        for x in cls:
            index[x] = i

    reach = nx.transitive_closure_dag(condensed)
    order = {(i, i) for i in range(len(classes))}
    order.update((renumber[v], renumber[u]) for u, v in reach.edges)
    return classes, tuple(index), frozenset(order)


def _compute_green(S: Semigroup, generators: Sequence[int]) -> GreenData:
    n = S.order
    t = S.table
    right_edges = [(x, int(t[x, g])) for x in range(n) for g in generators]
    left_edges = [(x, int(t[g, x])) for x in range(n) for g in generators]

    r_classes, r_of, r_order = _classes_and_order(n, right_edges)
    l_classes, l_of, l_order = _classes_and_order(n, left_edges)
    j_classes, j_of, j_order = _classes_and_order(n, right_edges + left_edges)

    h_groups: Dict[Tuple[int, int], set] = {}
    for x in range(n):
        h_groups.setdefault((r_of[x], l_of[x]), set()).add(x)
    h_classes = tuple(sorted((frozenset(h) for h in h_groups.values()), key=min))
    h_index = [0] * n
    for i, cls in enumerate(h_classes):
        for x in cls:
            h_index[x] = i

    idempotents = S.idempotents()
    regular_j = tuple(bool(cls & idempotents) for cls in j_classes)

    return GreenData(
        r_classes=r_classes, l_classes=l_classes, h_classes=h_classes, j_classes=j_classes,
        r_of=r_of, l_of=l_of, h_of=tuple(h_index), j_of=j_of,
        r_order=r_order, l_order=l_order, j_order=j_order,
        regular_j=regular_j,
    )


def mul(S: Semigroup, x: int, y: int) -> int:
    """Cayley table lookup"""
    return S.mul(x, y)


def omega_power(S: Semigroup, x: int) -> int:
    return S.omega_power(x)


def idempotents(S: Semigroup) -> FrozenSet[int]:
    return S.idempotents()


def adjoin_identity(S: Semigroup) -> Semigroup:
    return S.adjoin_identity()


def subsemigroup_generated(S: Semigroup, gens: Iterable[int]) -> FrozenSet[int]:
    return S.subsemigroup_generated(gens)


def green(S: Semigroup, generators: Optional[Iterable[int]] = None) -> GreenData:
    """
    Compute Green's relations

    Classes are the strongly connected components of the right, left and
    two-sided Cayley digraphs of S^1; the preorders come from reachability.

    Args:
        S: Semigroup
        generators: Optional generating set of S; when given, only these label
                    the Cayley digraph edges (same components, fewer edges)

    Returns:
        GreenData with classes numbered by smallest member
    """
    return S.green(generators)


def is_r_trivial(S: Semigroup) -> bool:
    return S.is_r_trivial()


def is_in_ER(S: Semigroup) -> bool:
    """
    Whether the idempotent-generated subsemigroup of S is R-trivial

    Green's relations are computed inside <E(S)>, not inherited from S.
    """
    gens = sorted(S.idempotents())
    sub, elems = S.restrict(S.subsemigroup_generated(gens))
    position = {x: i for i, x in enumerate(elems)}
    return sub.is_r_trivial(generators=[position[e] for e in gens])


@dataclass(frozen=True)
class ActivatorData:
    """Right activators and the witness sets F_x; indices refer to S^I"""

    extended: Semigroup                       # S^I, identity at index `identity`
    identity: int
    per_j_class: Tuple[FrozenSet[int], ...]   # RACT(J) for each J-class of S
    per_element: Tuple[FrozenSet[int], ...]   # F_x for each x in S


def activators(S: Semigroup, G: Optional[GreenData] = None) -> ActivatorData:
    """
    Compute RACT(J) for every J-class and F_x for every element

    Args:
        S: Semigroup
        G: Green data of S (computed if omitted)

    Returns:
        ActivatorData

    Raises:
        InvariantViolationError: if the minimal activator class is not unique,
            or some F_x is empty or lacks an idempotent
    """
    if G is None:
        G = S.green()
    n = S.order
    SI = S.adjoin_identity()
    GI = SI.green()
    t = SI.table

    per_j = []
    for j, J in enumerate(G.j_classes):
        members = sorted(J)
        candidates = {a for a in range(n + 1) if any(int(t[x, a]) in J for x in members)}
        cand_classes = {GI.j_of[a] for a in candidates}
        minimal = [c for c in cand_classes
                   if not any(d != c and GI.j_class_leq(d, c) for d in cand_classes)]
        if len(minimal) != 1:
            raise InvariantViolationError(
                f"J-class {j} has {len(minimal)} minimal activator classes, expected one")
        per_j.append(GI.j_classes[minimal[0]])

    per_element = []
    for x in range(n):
        r_x = GI.r_class(x)
        witnesses = set()
        for cand in sorted(per_j[G.j_of[x]]):
            if int(t[x, cand]) != x:
                continue
            if any(GI.r_less(int(t[x, s]), x) != GI.r_less(int(t[cand, s]), cand) for s in range(n)):
                continue
            if {int(t[x, y]) for y in GI.r_class(cand)} != r_x:
                continue
            witnesses.add(cand)
        if not any(SI.is_idempotent(w) for w in witnesses):
            raise InvariantViolationError(f"F_{S.label(x)} contains no idempotent: {sorted(witnesses)}")
        per_element.append(frozenset(witnesses))

    return ActivatorData(extended=SI, identity=n,
                         per_j_class=tuple(per_j), per_element=tuple(per_element))


def direct_product(S: Semigroup, T: Semigroup) -> Semigroup:
    """S x T with element (s, t) at index s * |T| + t"""
    m = T.order
    table = (S.table[:, None, :, None] * m + T.table[None, :, None, :]).reshape(S.order * m, S.order * m)
    labels = [f"({a},{b})" for a in S.labels for b in T.labels]
    return Semigroup(table, labels, check=False)


def congruence_quotient(S: Semigroup, pairs: Iterable[Tuple[int, int]]) -> Tuple[Semigroup, Tuple[int, ...]]:
    """
    Quotient by the smallest congruence containing the given pairs

    Returns:
        Tuple of (quotient semigroup, projection as a tuple x -> class index)
    """
    n = S.order
    t = S.table
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    for x, y in pairs:
        union(x, y)

    changed = True
    while changed:
        changed = False
        for x in range(n):
            root = find(x)
            if root == x:
                continue
            for s in range(n):
                changed |= union(int(t[x, s]), int(t[root, s]))
                changed |= union(int(t[s, x]), int(t[s, root]))

    roots = sorted({find(x) for x in range(n)})
    class_of = {r: i for i, r in enumerate(roots)}
    projection = tuple(class_of[find(x)] for x in range(n))
    table = [[projection[int(t[a, b])] for b in roots] for a in roots]
    labels = [S.label(r) if sum(1 for x in range(n) if find(x) == r) == 1 else f"[{S.label(r)}]"
              for r in roots]
    return Semigroup(table, labels, check=False), projection


def rees_quotient(S: Semigroup, ideal: Iterable[int]) -> Tuple[Semigroup, Tuple[int, ...]]:
    """
    Rees quotient S/I collapsing an ideal to a zero

    Raises:
        ValueError: if the set is empty or not a two-sided ideal
    """
    ideal = sorted(set(ideal))
    if not ideal:
        raise ValueError("ideal must be non-empty")
    members = set(ideal)
    t = S.table
    for x in ideal:
        if not ({int(v) for v in t[x, :]} | {int(v) for v in t[:, x]}) <= members:
            raise ValueError(f"{sorted(members)} is not an ideal")
    return congruence_quotient(S, [(ideal[0], x) for x in ideal[1:]])


def omega_power_of_map(f: Sequence[int]) -> Tuple[int, ...]:
    """Idempotent power of a self-map of {0, ..., k-1}, computed on the whole table"""
    f = np.asarray(f, dtype=np.int64)
    power = f
    for _ in range(len(f) + 1):
        if np.array_equal(power[power], power):
            return tuple(int(v) for v in power)
        power = f[power]   # apply power, then f
    raise InvariantViolationError("map has no idempotent power")


class TransformationSemigroup:
    """
    Semigroup generated by full transformations of {0, ..., degree-1}

    Transformations act on the right: (f.g)(q) = g(f(q)).
    """

    def __init__(self, generators: Sequence[Sequence[int]], limits: Limits = DEFAULT_LIMITS,
                 labels: Optional[Sequence[str]] = None):
        """
        Enumerate the semigroup breadth-first from its generators

        Args:
            generators: Non-empty list of transformations (as index sequences)
            limits: Guards; max_transition_size bounds the element count
            labels: Optional names of the generators

        Raises:
            GuardExceededError: if the semigroup grows past max_transition_size
        """
        if not generators:
            raise ValueError("at least one generator is required")
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators must all have the same degree")

        elements: List[np.ndarray] = []
        index: Dict[bytes, int] = {}
        generator_index = []
        for g in gens:
            key = g.tobytes()
            if key not in index:
                index[key] = len(elements)
                elements.append(g)
            generator_index.append(index[key])

        distinct_gens = sorted(set(generator_index))
        right_edges = []
        queue = deque(range(len(elements)))
        while queue:
            i = queue.popleft()
            for gi in distinct_gens:
                product = elements[gi][elements[i]]
                key = product.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(elements)
                    limits.check('max_transition_size', j + 1)
                    index[key] = j
                    elements.append(product)
                    queue.append(j)
                right_edges.append((i, j))

        self.degree = degree
        self._elements = elements
        self._index = index
        self.generator_index = tuple(generator_index)
        self._distinct_gens = tuple(distinct_gens)
        self._right_edges = right_edges
        self._generator_labels = list(labels) if labels is not None else None
        logger.debug(f"Transformation semigroup: {len(elements)} elements on {degree} points")

    def __len__(self) -> int:
        return len(self._elements)

    @property
    def transformations(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in e) for e in self._elements)

    def transformation(self, i: int) -> np.ndarray:
        return self._elements[i]

    def index_of(self, f: Sequence[int]) -> int:
        return self._index[np.asarray(f, dtype=np.int64).tobytes()]

    def apply(self, i: int, point: int) -> int:
        return int(self._elements[i][point])

    def is_r_trivial(self) -> bool:
        """R-triviality from the generator-labelled right Cayley digraph (no table needed)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self._elements)))
        graph.add_edges_from(self._right_edges)
        return all(len(c) == 1 for c in nx.strongly_connected_components(graph))

    @cached_property
    def semigroup(self) -> Semigroup:
        """The abstract semigroup (composition table); built on first use"""
        stacked = np.stack(self._elements)
        size = len(self._elements)
        table = np.empty((size, size), dtype=np.int64)
        for i, f in enumerate(self._elements):
            products = stacked[:, f]          # row j = f followed by element j
            table[i] = [self._index[row.tobytes()] for row in products]
        labels = [f"t{i}" for i in range(size)]
        if self._generator_labels is not None:
            for gen_label, i in zip(self._generator_labels, self.generator_index):
                if labels[i].startswith("t"):
                    labels[i] = f"~{gen_label}"
        return Semigroup(table, labels, check=False)
