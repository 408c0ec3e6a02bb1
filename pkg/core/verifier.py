"""
Verifier Module
Decreasing pointer maps, ER membership of the transition semigroup and the
end-to-end certification of a semigroup's ER-pointlike sets
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .automaton import (
    FlowAutomaton, GlobalGroup, WitnessMorphism, build_automaton, build_global_group,
    build_local_groups, check_delta, check_flow, cover_complex, state_block, successor,
    transition_semigroup, witness_relational_morphism,
)
from .construct import ConstructResult, construct_ER, max_pointlikes
from .catalog import enumerate_catalog
from .errors import GuardExceededError, InvariantViolationError
from .limits import Limits, DEFAULT_LIMITS
from .semigroup import Semigroup, TransformationSemigroup, is_in_ER, rees_quotient
from .stable import (
    StableData, build_stable, check_blowup, check_closure, check_idpt_blowup,
    check_psifacts, check_stability,
)
from .type2 import (
    check_actII, check_kernel_class_is_block, check_kernel_partial_identity,
    check_kernel_preserves_surjection, check_minimal_injective, is_in_ER_via_injectivity,
    type2_partition,
)


logger = logging.getLogger(__name__)

BULLET = 0


class PointerPreorder:
    """
    The preorder on (F x G) plus a top point, indexed 0 (the bullet) .. size-1

    (X1, d1) <= (X2, d2) iff X1 <=_R X2 in C. With strict=True the pairs must
    also share their second component.
    """

    def __init__(self, sd: StableData, gg: GlobalGroup, strict: bool = False):
        self.stable = sd
        self.strict = strict
        self.points: List[Optional[Tuple[int, int]]] = [None]
        self.points.extend((X, d) for X in sorted(sd.fixed) for d in range(len(gg)))
        self._index = {p: i for i, p in enumerate(self.points) if p is not None}

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, X: int, d: int) -> int:
        return self._index[(X, d)]

    def leq(self, i: int, j: int) -> bool:
        if j == BULLET:
            return True
        if i == BULLET:
            return False
        X1, d1 = self.points[i]
        X2, d2 = self.points[j]
        if self.strict and d1 != d2:
            return False
        return self.stable.green.r_leq(X1, X2)

    def less(self, i: int, j: int) -> bool:
        return self.leq(i, j) and not self.leq(j, i)

    def is_decreasing(self, f: Sequence[int]) -> bool:
        """Every point is fixed or sent strictly below itself"""
        return all(f[x] == x or self.less(f[x], x) for x in range(self.size))

    def format(self, i: int) -> str:
        if i == BULLET:
            return "bullet"
        X, d = self.points[i]
        return f"({self.stable.subset(X).format(self.stable.ambient.labels)}, d{d})"


@dataclass(frozen=True)
class LambdaCheck:
    """Outcome of the decreasing-map check with the realised maps"""

    ok: bool
    maps: Tuple[Tuple[int, ...], ...]             # one per (s, g), s-major
    counterexample: Optional[Tuple[int, int, int]] = None   # (s, g, point)

    def __bool__(self) -> bool:
        return self.ok


def pointer_map(preorder: PointerPreorder, gg: GlobalGroup, s: int, g: int) -> Tuple[int, ...]:
    """The map (-, g) lambda_s on the pointer carrier"""
    sd = preorder.stable
    image = [preorder.index(sd.closure[sd.singleton_index(s)], gg.gen_index[s])]
    for X, d in preorder.points[1:]:
        if state_block(sd, gg, X, d, g) is None:
            image.append(preorder.index(X, d))
            continue
        X2, d2, _g2 = successor(sd, gg, (X, d, g), s)
        image.append(preorder.index(X2, d2))
    return tuple(image)


def check_lambda_decreasing(S: Semigroup, sd: StableData, gg: GlobalGroup,
                            fa: Optional[FlowAutomaton] = None, strict: bool = False) -> LambdaCheck:
    """
    Check that every extended map (-, g) lambda_s decreases in the pointer preorder

    Args:
        S: The semigroup
        sd: Stable data
        gg: Global group
        fa: Automaton (when given, its transitions must agree with the maps)
        strict: Compare pairs only when their second components agree

    Returns:
        LambdaCheck carrying the first offending (s, g, point) if any
    """
    preorder = PointerPreorder(sd, gg, strict=strict)
    maps = []
    counterexample = None
    for s in range(S.order):
        for g in range(len(gg)):
            f = pointer_map(preorder, gg, s, g)
            maps.append(f)
            if counterexample is not None:
                continue
            for x in range(preorder.size):
                if f[x] != x and not preorder.less(f[x], x):
                    counterexample = (s, g, x)
                    logger.warning(f"lambda_{S.label(s)} at g{g} does not decrease {preorder.format(x)}")
                    break

    if fa is not None and not fa.reachable_only:
        for q, state in enumerate(fa.states):
            if state is None:
                continue
            X, d, g = state
            for s in range(S.order):
                expected = preorder.index(*fa.lam(q, s))
                if maps[s * len(gg) + g][preorder.index(X, d)] != expected:
                    raise InvariantViolationError(f"pointer map disagrees with the automaton at state {q}")

    return LambdaCheck(ok=counterexample is None, maps=tuple(maps), counterexample=counterexample)


def check_DP_r_trivial(preorder, maps: Sequence[Sequence[int]],
                       limits: Limits = DEFAULT_LIMITS) -> bool:
    """
    Whether the semigroup generated by decreasing maps is R-trivial

    Args:
        preorder: Any object with `size` and `is_decreasing(map)`
        maps: Maps of {0, ..., size-1}

    Raises:
        ValueError: if no map is given or a map is not decreasing
    """
    if not maps:
        raise ValueError("at least one map is required")
    for f in maps:
        if len(f) != preorder.size or not preorder.is_decreasing(f):
            raise ValueError(f"map {tuple(f)} is not decreasing")
    return TransformationSemigroup(maps, limits).is_r_trivial()


def check_transition_in_ER(T: Semigroup) -> bool:
    return is_in_ER(T)


FLAG_NAMES = (
    "flow_ok",
    "delta_ok",
    "lambda_decreasing_ok",
    "dp_r_trivial_ok",
    "transition_in_ER",
    "cover_equals_construct",
    "points_agrees_direct",
    "fibers_ok",
    "choice_invariant",
    "kernel_partial_identity_ok",
    "kernel_class_is_block_ok",
    "act_ii_ok",
    "minimal_injective_ok",
    "blowup_ok",
    "idpt_blowup_ok",
    "psifacts_ok",
    "stability_ok",
    "closure_ok",
    "kernel_preserves_surjections",
)


@dataclass
class VerificationReport:
    """Every certification flag plus sizes, the answer and timings"""

    order: int
    labels: List[str]
    is_in_ER: bool
    construct_rounds: int
    complex_size: int
    fixed_size: int
    block_count: int
    group_order: int
    state_count: int
    transition_size: int
    max_pointlikes: List[str]
    flow_ok: bool = False
    delta_ok: bool = False
    lambda_decreasing_ok: bool = False
    dp_r_trivial_ok: bool = False
    transition_in_ER: bool = False
    cover_equals_construct: bool = False
    points_agrees_direct: bool = False
    fibers_ok: bool = False
    choice_invariant: bool = False
    kernel_partial_identity_ok: bool = False
    kernel_class_is_block_ok: bool = False
    act_ii_ok: bool = False
    minimal_injective_ok: bool = False
    blowup_ok: bool = False
    idpt_blowup_ok: bool = False
    psifacts_ok: bool = False
    stability_ok: bool = False
    closure_ok: bool = False
    kernel_preserves_surjections: bool = False
    strict_preorder: bool = False
    lambda_counterexample: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def flags(self) -> Dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def failed_flags(self) -> List[str]:
        return [name for name, value in self.flags.items() if not value]

    def to_dict(self, include_timings: bool = False) -> dict:
        """JSON-ready dict; timings are left out by default so output is byte-stable"""
        data = asdict(self)
        if not include_timings:
            data.pop("timings")
        data["flags"] = {name: data.pop(name) for name in FLAG_NAMES}
        data["ok"] = self.ok
        return data


def _fibers_ok(cr: ConstructResult, fa: FlowAutomaton, wm: WitnessMorphism) -> bool:
    for t, fiber in wm.fibers.items():
        if not fiber.issubset(fa.flow[wm.init_images[t]]):
            return False
    fibers = list(wm.fibers.values())
    return all(any(X.issubset(F) for F in fibers) for X in cr.complex)


def _kernel_preserves_surjections(S: Semigroup) -> bool:
    """Image of the group kernel under every Rees quotient by a principal ideal"""
    for x in range(S.order):
        T, phi = rees_quotient(S, S.principal_ideal(x))
        if not check_kernel_preserves_surjection(S, T, phi):
            logger.warning(f"kernel not preserved by the Rees quotient at {S.label(x)}")
            return False
    return True


def _cover_for_stable(S: Semigroup, sd: StableData, limits: Limits):
    gg = build_global_group(build_local_groups(sd), S.order, limits)
    fa = build_automaton(S, sd, gg, limits)
    return cover_complex(S, fa, limits)


class _Stopwatch:
    def __init__(self):
        self.timings: Dict[str, float] = {}
        self._last = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.timings[name] = round(now - self._last, 6)
        self._last = now


def certify(S: Semigroup, limits: Limits = DEFAULT_LIMITS, strict_preorder: bool = False,
            check_choice: bool = True) -> VerificationReport:
    """
    Run the whole pipeline on S and set every certification flag

    Args:
        S: The semigroup
        limits: Size guards
        strict_preorder: Use the same-second-component preorder
        check_choice: Re-run the automaton with the other E_X rule

    Returns:
        VerificationReport

    Raises:
        GuardExceededError: if any size guard trips
        InvariantViolationError: if an internal consistency check fails
    """
    logger.info(f"Certifying semigroup of order {S.order}")
    clock = _Stopwatch()

    cr = construct_ER(S, limits)
    clock.lap("construct")
    sd = build_stable(S, cr, limits=limits)
    clock.lap("stable")
    gg = build_global_group(build_local_groups(sd), S.order, limits)
    clock.lap("group")
    fa = build_automaton(S, sd, gg, limits)
    clock.lap("automaton")
    ts = transition_semigroup(fa, limits)
    T = ts.semigroup
    clock.lap("transition")
    cover = cover_complex(S, fa, limits)
    wm = witness_relational_morphism(S, fa, ts, validate=False)
    clock.lap("witness")

    in_er = is_in_ER(S)
    report = VerificationReport(
        order=S.order,
        labels=list(S.labels),
        is_in_ER=in_er,
        construct_rounds=cr.iterations,
        complex_size=len(cr.complex),
        fixed_size=len(sd.fixed),
        block_count=len(sd.blocks),
        group_order=len(gg),
        state_count=len(fa),
        transition_size=len(ts),
        max_pointlikes=[X.format(S.labels) for X in max_pointlikes(cr)],
        strict_preorder=strict_preorder,
    )

    report.flow_ok = check_flow(S, fa)
    report.delta_ok = check_delta(fa)
    lam = check_lambda_decreasing(S, sd, gg, fa, strict=strict_preorder)
    report.lambda_decreasing_ok = lam.ok
    if lam.counterexample is not None:
        s, g, x = lam.counterexample
        report.lambda_counterexample = f"s={S.label(s)} g={g} point={x}"
    preorder = PointerPreorder(sd, gg, strict=strict_preorder)
    report.dp_r_trivial_ok = lam.ok and check_DP_r_trivial(preorder, lam.maps, limits)
    report.transition_in_ER = check_transition_in_ER(T)
    if report.dp_r_trivial_ok and not report.transition_in_ER:
        logger.warning("decreasing pointer maps are R-trivial but the transition semigroup is not in ER")
    clock.lap("upper_bound")

    report.cover_equals_construct = cover == cr.complex
    report.points_agrees_direct = (cr.complex.is_singleton_complex() == in_er
                                   == is_in_ER_via_injectivity(S))
    report.fibers_ok = _fibers_ok(cr, fa, wm)
    report.choice_invariant = True
    if check_choice:
        alternative = build_stable(S, cr, choice="greatest", limits=limits)
        if alternative.e_choice != sd.e_choice:
            report.choice_invariant = _cover_for_stable(S, alternative, limits) == cr.complex
    clock.lap("answer")

    t2S = type2_partition(S)
    report.kernel_partial_identity_ok = check_kernel_partial_identity(S, t2S)
    report.kernel_class_is_block_ok = check_kernel_class_is_block(S, t2S)
    report.act_ii_ok = check_actII(S, t2S)
    report.minimal_injective_ok = check_minimal_injective(S, t2S)
    report.blowup_ok = check_blowup(sd)
    report.idpt_blowup_ok = check_idpt_blowup(sd)
    report.psifacts_ok = check_psifacts(sd)
    report.stability_ok = check_stability(sd)
    report.closure_ok = check_closure(sd)
    report.kernel_preserves_surjections = _kernel_preserves_surjections(S)
    clock.lap("properties")

    report.timings = clock.timings
    if report.ok:
        logger.info(f"All {len(FLAG_NAMES)} checks passed")
    else:
        logger.warning(f"Failed checks: {report.failed_flags()}")
    return report


@dataclass(frozen=True)
class CatalogRow:
    """One catalog entry and how its certification went"""

    entry_id: int
    order: int
    table: Tuple[Tuple[int, ...], ...]
    report: Optional[VerificationReport]
    failure: Optional[str] = None      # 'guard' or 'invariant'
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failure is None and self.report is not None and self.report.ok


def _certify_entry(args) -> CatalogRow:
    entry_id, table, limits = args
    S = Semigroup(table, check=False)
    try:
        report = certify(S, limits)
    except GuardExceededError as e:
        return CatalogRow(entry_id, S.order, table, None, "guard", str(e))
    except InvariantViolationError as e:
        return CatalogRow(entry_id, S.order, table, None, "invariant", str(e))
    return CatalogRow(entry_id, S.order, table, report)


def run_catalog(max_order: int, jobs: int = 1, limits: Limits = DEFAULT_LIMITS) -> List[CatalogRow]:
    """
    Certify every semigroup of order up to max_order, up to isomorphism

    Args:
        max_order: Largest order enumerated (bounded by max_catalog_order)
        jobs: Worker processes; entries are independent
        limits: Size guards

    Returns:
        One CatalogRow per entry, in catalog order
    """
    entries = enumerate_catalog(max_order, limits)
    work = [(e.iso_id, e.table, limits) for e in entries]
    logger.info(f"Certifying {len(work)} catalog entries with {jobs} job(s)")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_certify_entry, work, chunksize=4))
    else:
        rows = [_certify_entry(item) for item in work]
    failed = [row.entry_id for row in rows if not row.ok]
    if failed:
        logger.warning(f"Catalog entries failing certification: {failed}")
    return rows
