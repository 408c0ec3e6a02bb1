"""
Flow Automaton Module
Local permutation groups, the global group, the permute-first-fall-later
automaton with its flow, cover complex, transition semigroup and the
witness relational morphism
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from .errors import InvariantViolationError
from .limits import Limits, DEFAULT_LIMITS
from .power import Complex, Subset, downward_closure, power_semigroup
from .semigroup import Semigroup, TransformationSemigroup
from .stable import StableData


logger = logging.getLogger(__name__)

INIT = 0


@dataclass(frozen=True)
class LocalGroup:
    """Permutations of the type-II blocks of one R-class of C"""

    r_class: int
    states: Tuple[int, ...]                 # block ids in canonical order
    gens: Tuple[Tuple[int, ...], ...]       # per letter s: local position -> position
    group: PermutationGroup

    @property
    def order(self) -> int:
        return int(self.group.order())


def _complete_permutation(partial: Dict[int, int], size: int) -> Tuple[int, ...]:
    """Extend a partial injection to a permutation, pairing leftovers in order"""
    undefined = [p for p in range(size) if p not in partial]
    unhit = sorted(set(range(size)) - set(partial.values()))
    image = dict(partial)
    image.update(zip(undefined, unhit))
    return tuple(image[p] for p in range(size))


def build_local_groups(sd: StableData) -> List[LocalGroup]:
    """
    One local group per R-class of C meeting F

    Each letter s acts on blocks through the singleton {s}; undefined points
    and unhit points are paired positionally in canonical block order.

    Raises:
        InvariantViolationError: if a quotient action is not injective
    """
    n = sd.ambient.order
    locals_ = []
    for r in sd.scr_r:
        pts = sd.quotients[r]
        states = tuple(pts.states)
        position = {b: i for i, b in enumerate(states)}
        gens = []
        for s in range(n):
            a = sd.singleton_index(s)
            partial = {position[b]: position[pts.act(b, a)]
                       for b in states if pts.act(b, a) is not None}
            if len(set(partial.values())) != len(partial):
                raise InvariantViolationError(f"letter {sd.ambient.label(s)} is not injective on R-class {r}")
            gens.append(_complete_permutation(partial, len(states)))
        group = PermutationGroup([Permutation(list(g)) for g in gens])
        locals_.append(LocalGroup(r_class=r, states=states, gens=tuple(gens), group=group))
        logger.debug(f"Local group on R-class {r}: {len(states)} blocks, order {group.order()}")
    return locals_


class GlobalGroup:
    """
    The group generated by the tuples g_s, realised as a permutation group on
    the disjoint union of the block sets; permutations act on the right
    """

    def __init__(self, locals_: Sequence[LocalGroup], letters: int, limits: Limits = DEFAULT_LIMITS):
        self.locals = tuple(locals_)
        self.block_position: Dict[int, int] = {}
        self.position_block: List[int] = []
        offsets = []
        for local in self.locals:
            offsets.append(len(self.position_block))
            for b in local.states:
                self.block_position[b] = len(self.position_block)
                self.position_block.append(b)
        self.degree = len(self.position_block)

        generators = []
        for s in range(letters):
            array = []
            for local, offset in zip(self.locals, offsets):
                array.extend(offset + p for p in local.gens[s])
            generators.append(Permutation(array))
        self.group = PermutationGroup(generators)
        order = int(self.group.order())
        limits.check('max_group_size', order)

        self.elements: Tuple[Tuple[int, ...], ...] = tuple(
            sorted(tuple(p.array_form) for p in self.group.generate()))
        self.index: Dict[Tuple[int, ...], int] = {g: i for i, g in enumerate(self.elements)}
        self._perms = [Permutation(list(g)) for g in self.elements]
        self.identity = self.index[tuple(range(self.degree))]
        self.gen_index = tuple(self.index[tuple(p.array_form)] for p in generators)
        self._mul_cache: Dict[Tuple[int, int], int] = {}
        self._inverse = tuple(self.index[tuple((~p).array_form)] for p in self._perms)
        logger.info(f"Global group: order {order} on {self.degree} blocks")

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, g: int, h: int) -> int:
        """g then h"""
        key = (g, h)
        product = self._mul_cache.get(key)
        if product is None:
            product = self.index[tuple((self._perms[g] * self._perms[h]).array_form)]
            self._mul_cache[key] = product
        return product

    def inverse(self, g: int) -> int:
        return self._inverse[g]

    def act_block(self, block: int, g: int) -> int:
        """[X] acted on by g"""
        return self.position_block[self.elements[g][self.block_position[block]]]

    def is_group(self) -> bool:
        """Closed, has the identity and inverses"""
        for g, perm in enumerate(self._perms):
            if self.mul(g, self.inverse(g)) != self.identity:
                return False
            for h in self.gen_index:
                if tuple((perm * self._perms[h]).array_form) not in self.index:
                    return False
        return True


def build_global_group(locals_: Sequence[LocalGroup], letters: int,
                       limits: Limits = DEFAULT_LIMITS) -> GlobalGroup:
    """
    Raises:
        GuardExceededError: if the group is larger than max_group_size
        InvariantViolationError: if the generated set fails the group axioms
    """
    gg = GlobalGroup(locals_, letters, limits)
    if not gg.is_group():
        raise InvariantViolationError("generated tuples do not form a group")
    return gg


@dataclass
class FlowAutomaton:
    """States, transitions and flow; state 0 is init, others are (X, d, g)"""

    stable: StableData
    group: GlobalGroup
    states: Tuple[Optional[Tuple[int, int, int]], ...]
    delta: Tuple[Tuple[int, ...], ...]        # delta[q][s]
    flow: Tuple[Optional[Subset], ...]        # flow[q], None at init
    reachable_only: bool = False
    state_index: Dict[Tuple[int, int, int], int] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def step(self, q: int, s: int) -> int:
        return self.delta[q][s]

    def lam(self, q: int, s: int) -> Tuple[int, int]:
        """(X, d) part of the successor of a non-init state"""
        X, d, _g = self.states[self.delta[q][s]]
        return X, d


def state_block(sd: StableData, gg: GlobalGroup, X: int, d: int, g: int) -> Optional[int]:
    """Block of [X] acted on by d^-1 g when it lies in B (so (X, d, g) is a state), else None"""
    block = gg.act_block(sd.t2.block_of[X], gg.mul(gg.inverse(d), g))
    return block if block in sd.blocks else None


def successor(sd: StableData, gg: GlobalGroup, state: Optional[Tuple[int, int, int]],
              s: int) -> Tuple[int, int, int]:
    """
    The state reached from `state` (None for init) on letter s

    init goes to (cl{s}, g_s, g_s). From (X, d, g) with value v: if v{s} R v and
    (X, d, g g_s) is a state, stay on (X, d) and move g; otherwise fall to
    (cl(v{s}), g g_s, g g_s).
    """
    gs = gg.gen_index[s]
    letter = sd.singleton_index(s)
    if state is None:
        return sd.closure[letter], gs, gs
    X, d, g = state
    v = sd.index(sd.block_union(state_block(sd, gg, X, d, g)))
    vs = sd.mul(v, letter)
    ggs = gg.mul(g, gs)
    if sd.green.same_r(vs, v) and state_block(sd, gg, X, d, ggs) is not None:
        return X, d, ggs
    return sd.closure[vs], ggs, ggs


def build_automaton(S: Semigroup, sd: StableData, gg: GlobalGroup,
                    limits: Limits = DEFAULT_LIMITS, reachable_only: bool = False) -> FlowAutomaton:
    """
    Build the state set, the full transition table and the flow

    Args:
        S: The semigroup (alphabet)
        sd: Stable data over C_ER(S)
        gg: Global group
        limits: max_states guard
        reachable_only: Keep only states reachable from init (changes the
                        transition semigroup; off by default)

    Raises:
        GuardExceededError: if there are more than max_states states
        InvariantViolationError: if a transition leaves the state set
    """
    n = S.order
    size = len(gg)

    states: List[Optional[Tuple[int, int, int]]] = [None]
    flow: List[Optional[Subset]] = [None]
    for X in sorted(sd.fixed):
        for d in range(size):
            for g in range(size):
                block = state_block(sd, gg, X, d, g)
                if block is None:
                    continue
                states.append((X, d, g))
                flow.append(sd.block_union(block))
                limits.check('max_states', len(states))
    index = {q: i for i, q in enumerate(states) if q is not None}

    delta: List[Tuple[int, ...]] = []
    for q, state in enumerate(states):
        row = []
        for s in range(n):
            target = successor(sd, gg, state, s)
            if target not in index:
                raise InvariantViolationError(f"transition from state {q} on {S.label(s)} leaves Q(S)")
            row.append(index[target])
        delta.append(tuple(row))

    fa = FlowAutomaton(stable=sd, group=gg, states=tuple(states), delta=tuple(delta),
                       flow=tuple(flow), state_index=index)
    if reachable_only:
        fa = _restrict_to_reachable(fa)
    logger.info(f"Automaton: {len(fa.states)} states over {n} letters")
    return fa


def _restrict_to_reachable(fa: FlowAutomaton) -> FlowAutomaton:
    seen = {INIT}
    queue = deque([INIT])
    while queue:
        q = queue.popleft()
        for target in fa.delta[q]:
            if target not in seen:
                seen.add(target)
                queue.append(target)
    keep = sorted(seen)
    renumber = {q: i for i, q in enumerate(keep)}
    states = tuple(fa.states[q] for q in keep)
    return FlowAutomaton(
        stable=fa.stable, group=fa.group, states=states,
        delta=tuple(tuple(renumber[t] for t in fa.delta[q]) for q in keep),
        flow=tuple(fa.flow[q] for q in keep), reachable_only=True,
        state_index={state: i for i, state in enumerate(states) if state is not None},
    )


def check_flow(S: Semigroup, fa: FlowAutomaton) -> bool:
    """s lies in the flow of init.s, and flow(q).{s} lies in flow(q.s)"""
    power = power_semigroup(S)
    for s in range(S.order):
        if s not in fa.flow[fa.step(INIT, s)]:
            return False
        letter = Subset.singleton(s)
        for q in range(1, len(fa.states)):
            if not power.product(fa.flow[q], letter).issubset(fa.flow[fa.step(q, s)]):
                return False
    return True


def check_delta(fa: FlowAutomaton) -> bool:
    """Transitions never return to init and every flow value lies in F"""
    sd = fa.stable
    for q in range(len(fa.states)):
        if any(target == INIT for target in fa.delta[q]):
            return False
        if q != INIT and sd.index(fa.flow[q]) not in sd.fixed:
            return False
    return True


def cover_complex(S: Semigroup, fa: FlowAutomaton, limits: Limits = DEFAULT_LIMITS) -> Complex:
    """
    All non-empty subsets of flow values, certified to be a complex

    Raises:
        InvariantViolationError: if the family is not a complex
    """
    tops = sorted({v for v in fa.flow if v is not None}, key=Subset.sort_key)
    K = Complex(S, downward_closure(S, tops, limits))
    problems = K.violations()
    if problems:
        raise InvariantViolationError(f"cover family is not a complex: {problems[0]}")
    return K


def transition_semigroup(fa: FlowAutomaton, limits: Limits = DEFAULT_LIMITS) -> TransformationSemigroup:
    """
    Semigroup of Q(S) generated by the letter actions q -> q.s

    The result's generator_index maps each letter s to its transformation.
    """
    S = fa.stable.ambient
    letters = [[fa.delta[q][s] for q in range(len(fa.states))] for s in range(S.order)]
    ts = TransformationSemigroup(letters, limits, labels=S.labels)
    logger.info(f"Transition semigroup: {len(ts)} elements")
    return ts


@dataclass(frozen=True)
class WitnessMorphism:
    """Subsemigroup of S x T generated by the pairs (s, s~)"""

    pairs: Tuple[Tuple[int, int], ...]
    fibers: Dict[int, Subset]            # t -> {s : (s, t) in graph}
    init_images: Dict[int, int]          # t -> init acted on by t


def witness_relational_morphism(S: Semigroup, fa: FlowAutomaton, ts: TransformationSemigroup,
                                validate: bool = True) -> WitnessMorphism:
    """
    Generate the graph of the canonical relational morphism S -> T

    Args:
        S: The semigroup
        fa: Flow automaton
        ts: Its transition semigroup
        validate: Raise if a fiber escapes the flow value of init.t

    Raises:
        InvariantViolationError: if the projection to S is not onto, or (when
            validating) some fiber is not contained in flow(init.t)
    """
    T = ts.semigroup.table
    s_table = S.table
    generators = [(s, ts.generator_index[s]) for s in range(S.order)]
    found = set(generators)
    queue = deque(generators)
    while queue:
        s1, t1 = queue.popleft()
        for s2, t2 in generators:
            for pair in ((int(s_table[s1, s2]), int(T[t1, t2])), (int(s_table[s2, s1]), int(T[t2, t1]))):
                if pair not in found:
                    found.add(pair)
                    queue.append(pair)

    pairs = tuple(sorted(found))
    if {s for s, _t in pairs} != set(range(S.order)):
        raise InvariantViolationError("witness morphism does not cover S")

    members: Dict[int, List[int]] = {}
    for s, t in pairs:
        members.setdefault(t, []).append(s)
    fibers = {t: Subset.of(ss) for t, ss in sorted(members.items())}
    init_images = {t: ts.apply(t, INIT) for t in fibers}

    if validate:
        for t, fiber in fibers.items():
            if not fiber.issubset(fa.flow[init_images[t]]):
                raise InvariantViolationError(f"fiber of transformation {t} escapes its flow value")
    logger.debug(f"Witness morphism: {len(pairs)} pairs, {len(fibers)} fibers")
    return WitnessMorphism(pairs=pairs, fibers=fibers, init_images=init_images)


def automaton_to_dict(fa: FlowAutomaton) -> dict:
    """JSON-ready encoding with canonical subset and permutation encodings"""
    sd = fa.stable
    S = sd.ambient
    labels = S.labels
    gg = fa.group
    states = []
    for q, state in enumerate(fa.states):
        if state is None:
            states.append({"id": q, "kind": "init"})
            continue
        X, d, g = state
        states.append({
            "id": q,
            "kind": "state",
            "X": sd.subset(X).format(labels),
            "d": list(gg.elements[d]),
            "g": list(gg.elements[g]),
            "flow": fa.flow[q].format(labels),
        })
    return {
        "alphabet": list(labels),
        "group": {
            "degree": gg.degree,
            "order": len(gg),
            "blocks": [sd.block_union(b).format(labels) for b in gg.position_block],
            "generators": {labels[s]: list(gg.elements[gg.gen_index[s]]) for s in range(S.order)},
        },
        "reachable_only": fa.reachable_only,
        "states": states,
        "transitions": [list(row) for row in fa.delta],
    }


def witness_to_dict(S: Semigroup, wm: WitnessMorphism) -> dict:
    labels = S.labels
    return {
        "pairs": [[labels[s], t] for s, t in wm.pairs],
        "fibers": [{"t": t, "init_image": wm.init_images[t], "fiber": wm.fibers[t].format(labels)}
                   for t in sorted(wm.fibers)],
    }
