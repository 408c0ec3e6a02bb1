"""
Stable Blocks Module
The maps beta and psi on C_ER(S), the closure, fixed points F and blocks B
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

from .construct import ConstructResult
from .errors import InvariantViolationError
from .power import ComplexSemigroup, Subset, as_abstract_semigroup, union_of
from .limits import Limits, DEFAULT_LIMITS
from .semigroup import ActivatorData, GreenData, Semigroup, activators, omega_power_of_map
from .type2 import QuotientPTS, TypeIIData, quotient_pts, type2_partition


logger = logging.getLogger(__name__)

CHOICE_RULES = ("least", "greatest")


@dataclass(frozen=True)
class StableData:
    """
    Stabilisation data over C = C_ER(S)

    Element indices are those of the abstract semigroup of C; index
    `identity` (= |C|) is the adjoined identity, which may serve as E_X.
    """

    ambient: Semigroup
    construct: ConstructResult
    abstract: ComplexSemigroup
    green: GreenData
    t2: TypeIIData
    activators: ActivatorData
    choice: str
    e_choice: Tuple[int, ...]
    beta: Tuple[int, ...]
    psi: Tuple[int, ...]
    closure: Tuple[int, ...]
    fixed: FrozenSet[int]                  # F
    blocks: FrozenSet[int]                 # B, as type-II block ids of C
    scr_r: Tuple[int, ...]                 # R-classes of C meeting F
    quotients: Dict[int, QuotientPTS]      # per R-class in scr_r

    @property
    def identity(self) -> int:
        return self.activators.identity

    @property
    def size(self) -> int:
        return self.abstract.semigroup.order

    def subset(self, X: int) -> Subset:
        return self.abstract.members[X]

    def index(self, X: Subset) -> int:
        return self.abstract.index[X]

    def mul(self, X: int, Y: int) -> int:
        """Product in C with the adjoined identity"""
        return int(self.activators.extended.table[X, Y])

    def block_union(self, b: int) -> Subset:
        return union_of(self.abstract.members[i] for i in self.t2.blocks[b])

    def singleton_index(self, s: int) -> int:
        return self.abstract.index[Subset.singleton(s)]


def _choose_idempotents(A: Semigroup, acts: ActivatorData, choice: str) -> Tuple[int, ...]:
    SI = acts.extended
    chosen = []
    for X in range(A.order):
        candidates = sorted(e for e in acts.per_element[X] if SI.is_idempotent(e))
        if A.is_idempotent(X):
            if X not in candidates:
                raise InvariantViolationError(f"idempotent {A.label(X)} missing from its own F set")
            chosen.append(X)
            continue
        proper = [e for e in candidates if e != acts.identity]
        if not proper:
            chosen.append(acts.identity)
        elif choice == "least":
            chosen.append(proper[0])
        else:
            chosen.append(proper[-1])
    return tuple(chosen)


def build_stable(S: Semigroup, cr: ConstructResult, choice: str = "least",
                 limits: Limits = DEFAULT_LIMITS) -> StableData:
    """
    Build beta, psi, the closure and the sets F, B over C_ER(S)

    Args:
        S: The semigroup
        cr: construct_ER(S)
        choice: Rule for E_X among idempotents of F_X ('least' or 'greatest'
                canonical subset order; idempotent X always gets E_X = X)
        limits: Size guards

    Returns:
        StableData

    Raises:
        InvariantViolationError: if a union of a type-II class leaves C, or no
            idempotent is available in some F_X
    """
    if choice not in CHOICE_RULES:
        raise ValueError(f"choice must be one of {CHOICE_RULES}, got {choice!r}")
    abstract = as_abstract_semigroup(cr.complex, limits)
    A = abstract.semigroup
    m = A.order
    green = A.green()
    t2 = type2_partition(A)
    acts = activators(A, green)
    AI = acts.extended

    beta = []
    for X in range(m):
        U = union_of(abstract.members[i] for i in t2.block(X))
        if U not in abstract.index:
            raise InvariantViolationError(f"union of the type-II class of {A.label(X)} is not in C")
        beta.append(abstract.index[U])
    beta.append(acts.identity)

    e_choice = _choose_idempotents(A, acts, choice)
    psi = tuple(int(AI.table[X, AI.omega_power(beta[e_choice[X]])]) for X in range(m))
    closure = omega_power_of_map(psi)

    fixed = frozenset(X for X in range(m) if psi[X] == X)
    blocks = set()
    for b in range(len(t2.blocks)):
        i = abstract.index.get(union_of(abstract.members[j] for j in t2.blocks[b]))
        if i is not None and i in t2.blocks[b]:
            blocks.add(b)
    scr_r = tuple(sorted({green.r_of[X] for X in fixed}))
    quotients = {r: quotient_pts(A, r, t2) for r in scr_r}

    logger.info(f"Stable data: |C|={m}, |F|={len(fixed)}, |B|={len(blocks)}, |scrR|={len(scr_r)}")
    return StableData(
        ambient=S, construct=cr, abstract=abstract, green=green, t2=t2, activators=acts,
        choice=choice, e_choice=e_choice, beta=tuple(beta[:m]), psi=psi, closure=closure,
        fixed=fixed, blocks=frozenset(blocks), scr_r=scr_r, quotients=quotients,
    )


def check_blowup(sd: StableData) -> bool:
    """X is contained in beta(X) and beta(X) sits R-below X"""
    for X in range(sd.size):
        if not sd.subset(X).issubset(sd.subset(sd.beta[X])):
            return False
        if not sd.green.r_leq(sd.beta[X], X):
            return False
    return True


def check_idpt_blowup(sd: StableData) -> bool:
    """For idempotent E: beta(E) is aperiodic, and (E beta)^2 H E beta forces equality"""
    A = sd.abstract.semigroup
    for E in sorted(A.idempotents()):
        B = sd.beta[E]
        omega = A.omega_power(B)
        if A.mul(omega, B) != omega:
            return False
        square = A.mul(B, B)
        if sd.green.same_h(square, B) and square != B:
            return False
    return True


def check_psifacts(sd: StableData) -> bool:
    """The five psi facts, for every X in C"""
    green = sd.green
    for X in range(sd.size):
        pX = sd.psi[X]
        E = sd.e_choice[X]
        psi_E = sd.psi[E] if E != sd.identity else sd.identity
        if not green.r_leq(pX, X):
            return False
        if not sd.subset(X).issubset(sd.subset(pX)):
            return False
        if pX != sd.mul(sd.beta[X], psi_E):
            return False
        if sd.psi[sd.closure[X]] != sd.closure[X]:
            return False
        if green.same_r(X, pX) and not sd.t2.same_block(X, pX):
            return False
        if (sd.beta[X] == X) != (pX == X):
            return False
    return True


def check_stability(sd: StableData) -> bool:
    """
    For X in F and Y in C with (XY)psi R XY R X, the block of XY is the block
    of X acted on by Y, and it lies in B
    """
    A = sd.abstract.semigroup
    green = sd.green
    t2 = sd.t2
    for X in sorted(sd.fixed):
        pts = sd.quotients[green.r_of[X]]
        for Y in range(sd.size):
            XY = A.mul(X, Y)
            if not (green.same_r(sd.psi[XY], XY) and green.same_r(XY, X)):
                continue
            if pts.act(t2.block_of[X], Y) != t2.block_of[XY]:
                return False
            if t2.block_of[XY] not in sd.blocks:
                return False
    return True


def check_closure(sd: StableData) -> bool:
    """Closures are fixed, the closure map is idempotent, and B is the set of blocks of F"""
    for X in range(sd.size):
        c = sd.closure[X]
        if c not in sd.fixed or sd.closure[c] != c:
            return False
    if sd.fixed != frozenset(X for X in range(sd.size) if sd.beta[X] == X):
        return False
    return sd.blocks == frozenset(sd.t2.block_of[X] for X in sd.fixed)
