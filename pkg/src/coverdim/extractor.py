"""Two-phase extraction of a clique subdivision from the cover graph of a poset.

Phase 1 maintains ``(A, B, C, D)``: shrinking sets of minimal and maximal
points plus two collections of disjoint cover-connected support sets, one
sitting below ``B`` and avoiding ``A`` and one dual.  Each step either swaps
support sets for a better-placed singleton or adds a support set found by
unfolding.  A sorted "val" sequence per collection strictly decreases, so the
loop terminates.

Phase 2 takes the full collection and picks principal vertices one at a time,
walking down from a fresh maximal point while the number of support sets below
the walker stays large.  The final sets then route one path per principal pair.

With the thresholds that make every step provably succeed, nothing fits in
memory, so ``mode="best-effort"`` substitutes user thresholds and a smaller
collection cap.  Structural invariants are still enforced and raise
:class:`InvariantViolation`; quantitative guarantees that small thresholds no
longer imply raise :class:`GuaranteeFailure`, which the drivers report as
data.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, getcontext
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .bits import iter_bits, mask_of
from .dimension import chi, inc_between, inc_minmax_pairs
from .errors import (
    AssignmentExhausted,
    BadParameters,
    ChiBelowThreshold,
    GuaranteeFailure,
    InvariantViolation,
    NoFreshMaximal,
)
from .minor import SubdivisionCertificate, UGraph, verify_subdivision
from .poset import (
    PointSet,
    Poset,
    cover_chain,
    cover_path_within,
    is_connected_mask,
    longest_directed_path_len,
    min_max_reduction,
)
from .unfolding import AVOIDS, select_support


SCHEMA_VERSION = 1
PAPER = "paper"
BEST_EFFORT = "best-effort"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("COVERDIM_JOBS", "1")))
    except ValueError:
        return 1


# -- constants ---------------------------------------------------------------


def _digits_of_power(base: int, exponent: int) -> int:
    getcontext().prec = 60
    return int((Decimal(exponent) * Decimal(base).log10()).to_integral_value(rounding="ROUND_FLOOR")) + 1


def paper_constants(n: int, h: int) -> dict:
    """Exact collection size ``M`` and iteration bound ``L`` for clique size ``n`` and height ``h``."""
    if n < 3 or h < 2:
        raise BadParameters("constants need n >= 3 and h >= 2")
    M = comb(n, 2) ** (h**n)
    L = 2 * comb(M + h, h) - 1
    return {"n": n, "h": h, "M": M, "L": L, "dim_threshold_digits": _digits_of_power(n, L)}


def kk_constants(n: int, k: int) -> dict:
    """Same as :func:`paper_constants` for the ``(k+k)``-free variant (height surrogate ``k-1``)."""
    if n < 3 or k < 2:
        raise BadParameters("constants need n >= 3 and k >= 2")
    M = comb(n, 2) ** ((k - 1) ** n)
    L = 2 * comb(M + k - 1, k - 1) - 1
    return {"n": n, "k": k, "M": M, "L": L, "size_threshold_digits": _digits_of_power(n, L)}


# -- parameters ----------------------------------------------------------------


@dataclass(frozen=True)
class ExtractParams:
    n: int
    h: int
    mode: str = BEST_EFFORT
    thresholds: tuple[int, ...] = ()
    cap: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.n < 3 or self.h < 2:
            raise BadParameters("need n >= 3 and h >= 2")
        if self.mode not in (PAPER, BEST_EFFORT):
            raise BadParameters(f"unknown mode {self.mode!r}")
        if self.mode == BEST_EFFORT:
            t = self.thresholds
            if not t or any(x < 1 for x in t) or any(t[i] < t[i + 1] for i in range(len(t) - 1)):
                raise BadParameters("thresholds must be positive and non-increasing")
            if self.cap < 1:
                raise BadParameters("collection cap must be positive")

    def threshold(self, i: int) -> int:
        return self.thresholds[min(i, len(self.thresholds) - 1)]

    def to_dict(self) -> dict:
        return {"n": self.n, "h": self.h, "mode": self.mode, "thresholds": list(self.thresholds), "cap": self.cap}


# -- val sequences -------------------------------------------------------------


def val_sequence(values: Sequence[int], cap: int, pad: int) -> tuple[int, ...]:
    """Sorted values padded with ``pad`` up to length ``cap``."""
    if len(values) > cap:
        raise InvariantViolation("cap", f"collection of size {len(values)} exceeds {cap}")
    return tuple(sorted(values)) + (pad,) * (cap - len(values))


def improves(old_c, old_d, new_c, new_d) -> bool:
    """Strict decrease of one sequence with the other not increasing (lexicographic)."""
    return (new_c < old_c and new_d <= old_d) or (new_c <= old_c and new_d < old_d)


# -- phase 1 ---------------------------------------------------------------------


@dataclass(frozen=True)
class Phase1State:
    a: PointSet
    b: PointSet
    cc: tuple[PointSet, ...] = ()
    dd: tuple[PointSet, ...] = ()
    iteration: int = 0

    def snapshot(self) -> dict:
        return {
            "iteration": self.iteration,
            "a": sorted(self.a),
            "b": sorted(self.b),
            "C": [sorted(c) for c in self.cc],
            "D": [sorted(d) for d in self.dd],
        }


def _val_c(p: Poset, h: int, cset: PointSet, bmask: int) -> int:
    if len(cset) > 1:
        return h
    (c,) = cset
    vals = [longest_directed_path_len(p, c, y) for y in iter_bits(bmask)]
    vals = [v for v in vals if v is not None]
    if not vals:
        raise InvariantViolation("b.ii", f"singleton {c} lies below no point of B")
    return max(vals)


def _val_d(p: Poset, h: int, dset: PointSet, amask: int) -> int:
    if len(dset) > 1:
        return h
    (d,) = dset
    vals = [longest_directed_path_len(p, x, d) for x in iter_bits(amask)]
    vals = [v for v in vals if v is not None]
    if not vals:
        raise InvariantViolation("c.ii", f"singleton {d} lies above no point of A")
    return max(vals)


def phase1_vals(p: Poset, params: ExtractParams, state: Phase1State) -> tuple[tuple[int, ...], tuple[int, ...]]:
    amask, bmask = mask_of(state.a), mask_of(state.b)
    vc = [_val_c(p, params.h, c, bmask) for c in state.cc]
    vd = [_val_d(p, params.h, d, amask) for d in state.dd]
    pad = params.h + 1
    return val_sequence(vc, params.cap, pad), val_sequence(vd, params.cap, pad)


def phase1_violations(p: Poset, params: ExtractParams, state: Phase1State) -> list[str]:
    """Structural clauses of the Phase 1 invariants that fail (empty when all hold)."""
    bad = []
    amask, bmask = mask_of(state.a), mask_of(state.b)
    if amask & ~p.minimals_mask:
        bad.append("a.min")
    if bmask & ~p.maximals_mask:
        bad.append("a.max")
    for tag, coll, dual in (("b", state.cc, False), ("c", state.dd, True)):
        masks = [mask_of(x) for x in coll]
        if len(coll) > params.cap:
            bad.append(f"{tag}.size")
        union = 0
        for m in masks:
            if union & m:
                bad.append(f"{tag}.disjoint")
                break
            union |= m
        for m in masks:
            if not is_connected_mask(p, m):
                bad.append(f"{tag}.i")
                break
        for m in masks:
            down, up = p.downset_mask(m), p.upset_mask(m)
            if not dual and (amask & down or bmask & ~up):
                bad.append(f"{tag}.ii")
                break
            if dual and (amask & ~down or bmask & up):
                bad.append(f"{tag}.ii")
                break
        for i, m in enumerate(masks):
            if m.bit_count() != 1:
                continue
            (x,) = iter_bits(m)
            reach = p.down[x] | m if not dual else p.up[x] | m
            if any(reach & other for j, other in enumerate(masks) if j != i):
                bad.append(f"{tag}.iii")
                break
    return bad


def _guarantee_chi(p: Poset, params: ExtractParams, a, b, i: int, where: str) -> int:
    value = chi(p, a, b)
    t = params.threshold(i)
    if value <= t:
        raise ChiBelowThreshold(
            f"{where}: chi(A, B) = {value} is not above threshold {t}", iteration=i, chi=value, threshold=t
        )
    return value


def phase1_init(p: Poset, params: ExtractParams) -> Phase1State:
    state = Phase1State(p.minimals(), p.maximals())
    _guarantee_chi(p, params, state.a, state.b, 0, "init")
    return state


def _scan(candidates: list[int], test: Callable[[int], bool], jobs: int) -> int | None:
    """Lowest candidate passing ``test``; parallel evaluation keeps the same answer."""
    if jobs <= 1 or len(candidates) < 2:
        for x in candidates:
            if test(x):
                return x
        return None
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for x, ok in zip(candidates, pool.map(test, candidates)):
            if ok:
                return x
    return None


def q1_find(p: Poset, params: ExtractParams, state: Phase1State, i: int | None = None) -> int | None:
    """Point strictly above some support set whose upper part of ``B`` keeps ``chi`` above threshold."""
    if i is None:
        i = state.iteration + 1
    t = params.threshold(i)
    above = 0
    for c in state.cc:
        for x in c:
            above |= p.up[x]
    bmask = mask_of(state.b)
    cands = sorted(iter_bits(above))

    def ok(x: int) -> bool:
        bx = bmask & p.upset_mask(1 << x)
        if len(inc_between(p, state.a, iter_bits(bx))) <= t:
            return False
        return chi(p, state.a, iter_bits(bx)) > t

    return _scan(cands, ok, params.jobs)


def q2_find(p: Poset, params: ExtractParams, state: Phase1State, i: int | None = None) -> int | None:
    if i is None:
        i = state.iteration + 1
    t = params.threshold(i)
    below = 0
    for d in state.dd:
        for x in d:
            below |= p.down[x]
    amask = mask_of(state.a)
    cands = sorted(iter_bits(below))

    def ok(x: int) -> bool:
        ax = amask & p.downset_mask(1 << x)
        if len(inc_between(p, iter_bits(ax), state.b)) <= t:
            return False
        return chi(p, iter_bits(ax), state.b) > t

    return _scan(cands, ok, params.jobs)


@dataclass
class StepResult:
    state: Phase1State
    action: str
    info: dict = field(default_factory=dict)


Q1, Q2, Q3C, Q3D, DONE = "q1-update", "q2-update", "q3-extend-C", "q3-extend-D", "terminated"


def phase1_step(p: Poset, params: ExtractParams, state: Phase1State, check: bool = True) -> StepResult:
    i = state.iteration + 1
    old_vals = phase1_vals(p, params, state)
    info: dict = {"iteration": i, "threshold": params.threshold(i)}

    x = q1_find(p, params, state, i)
    if x is not None:
        up_x = p.upset_mask(1 << x)
        new = Phase1State(
            PointSet(z for z in state.a if not p.leq(z, x)),
            PointSet(iter_bits(mask_of(state.b) & up_x)),
            tuple(c for c in state.cc if not any(p.leq(z, x) for z in c)) + (PointSet([x]),),
            state.dd,
            i,
        )
        action = Q1
        info["point"] = x
    else:
        x = q2_find(p, params, state, i)
        if x is not None:
            down_x = p.downset_mask(1 << x)
            new = Phase1State(
                PointSet(iter_bits(mask_of(state.a) & down_x)),
                PointSet(z for z in state.b if not p.leq(x, z)),
                state.cc,
                tuple(d for d in state.dd if not any(p.leq(x, z) for z in d)) + (PointSet([x]),),
                i,
            )
            action = Q2
            info["point"] = x
        elif len(state.cc) < params.cap and len(state.dd) < params.cap:
            chi_ab = chi(p, state.a, state.b)
            if chi_ab < 3:
                raise GuaranteeFailure(
                    "support-precondition", f"chi(A, B) = {chi_ab} < 3 before support selection", iteration=i
                )
            sel = select_support(p, state.a, state.b)
            if sel.case_tag == AVOIDS:
                new = Phase1State(sel.a_prime, sel.b_prime, state.cc + (sel.s,), state.dd, i)
                action = Q3C
            else:
                new = Phase1State(sel.a_prime, sel.b_prime, state.cc, state.dd + (sel.s,), i)
                action = Q3D
            info["support"] = sel.to_dict()
        else:
            return StepResult(state, DONE, info)

    info["chi"] = _guarantee_chi(p, params, new.a, new.b, i, action)
    if check:
        bad = phase1_violations(p, params, new)
        if bad:
            raise InvariantViolation(bad[0], f"after {action} at iteration {i}: {bad}")
    new_vals = phase1_vals(p, params, new)
    if not improves(old_vals[0], old_vals[1], new_vals[0], new_vals[1]):
        raise InvariantViolation("quality", f"{action} at iteration {i} did not improve {old_vals} -> {new_vals}")
    info["val_C"], info["val_D"] = list(new_vals[0]), list(new_vals[1])
    return StepResult(new, action, info)


def max_phase1_steps(cap: int, h: int) -> int:
    return 2 * comb(cap + h, h) - 1


def run_phase1(p: Poset, params: ExtractParams, check: bool = True, trace: list | None = None) -> Phase1State:
    """Run Phase 1 to termination; appends one record per step to ``trace``."""
    state = phase1_init(p, params)
    vals = phase1_vals(p, params, state)
    if trace is not None:
        trace.append({"iteration": 0, "action": "init", "chi": chi(p, state.a, state.b),
                      "val_C": list(vals[0]), "val_D": list(vals[1]), "state": state.snapshot()})
    bound = max_phase1_steps(params.cap, params.h)
    for _ in range(bound + 1):
        res = phase1_step(p, params, state, check)
        if trace is not None:
            trace.append({**res.info, "action": res.action, "state": res.state.snapshot()})
        if res.action == DONE:
            return res.state
        state = res.state
    raise InvariantViolation("termination", f"Phase 1 exceeded {bound} steps")


# -- phase 2 ---------------------------------------------------------------------


@dataclass(frozen=True)
class Phase2State:
    v: tuple[int, ...] = ()
    ee: tuple[PointSet, ...] = ()

    def snapshot(self) -> dict:
        return {"V": list(self.v), "E": [sorted(c) for c in self.ee]}


def _sorted_sets(sets) -> tuple[PointSet, ...]:
    return tuple(sorted(sets, key=lambda s: sorted(s)))


def sets_below(p: Poset, sets: Sequence[PointSet], x: int) -> list[int]:
    """Indices of the sets with a point ``<= x``."""
    down = p.down[x] | 1 << x
    return [i for i, s in enumerate(sets) if down & mask_of(s)]


def descends(count_x: int, count_v: int, cap: int, h: int, j: int) -> bool:
    """``count_x > count_v / M0**(1/(h-1))`` with ``M0 = cap**(1/h**(j-1))``, in integers."""
    e = h ** (j - 1)
    return (count_x ** (h - 1)) ** e * cap > (count_v ** (h - 1)) ** e


def stage_bound_met(size: int, cap: int, h: int, j: int) -> bool:
    """``size >= cap**(1/h**j)``."""
    return size ** (h**j) >= cap


def phase2_violations(p: Poset, state: Phase2State, j: int) -> list[str]:
    bad = []
    if len(state.v) != j or len(set(state.v)) != j:
        bad.append("D1.count")
    union = 0
    for c in state.ee:
        m = mask_of(c)
        if union & m:
            bad.append("D.disjoint")
        union |= m
    vmask = mask_of(state.v)
    if vmask & union:
        bad.append("D2")
    for v in state.v:
        for ci in range(len(state.ee)):
            if not any(sets_below(p, state.ee, x) == [ci] for x in iter_bits(p.covers_down[v])):
                bad.append("D3")
                break
        if "D3" in bad:
            break
    return bad


def phase2_step(p: Poset, params: ExtractParams, b_final: PointSet, state: Phase2State, check: bool = True) -> tuple[Phase2State, dict]:
    j = len(state.v) + 1
    h, cap = params.h, params.cap
    ee = state.ee
    taken = 0
    for v in state.v:
        taken |= p.upset_mask(1 << v)
    fresh = mask_of(b_final) & ~taken
    if not fresh:
        raise NoFreshMaximal(f"stage {j}: every point of B lies above a principal", stage=j)
    b = (fresh & -fresh).bit_length() - 1
    v = b
    count_v = len(sets_below(p, ee, v))
    path = [v]
    while True:
        best = None
        for x in iter_bits(p.covers_down[v]):
            cx = len(sets_below(p, ee, x))
            if descends(cx, count_v, cap, h, j) and (best is None or cx > best[1]):
                best = (x, cx)
        if best is None:
            break
        v, count_v = best
        path.append(v)
        if not p.down[v]:
            raise GuaranteeFailure("descent-minimal", f"stage {j}: descent reached minimal point {v}", stage=j)

    inside = [i for i, c in enumerate(ee) if v in c]
    if len(inside) > 1:
        raise InvariantViolation("D.disjoint", f"{v} lies in several support sets")
    estar = [c for i, c in enumerate(ee) if i not in inside]
    covers = sorted(iter_bits(p.covers_down[v]))
    below = {x: frozenset(sets_below(p, estar, x)) for x in covers}
    target = frozenset(sets_below(p, estar, v))
    if frozenset().union(*below.values()) != target:
        raise InvariantViolation("cover-union", f"stage {j}: covers of {v} miss support sets below it")

    kept = list(covers)
    for x in sorted(covers, reverse=True):
        rest = [y for y in kept if y != x]
        if frozenset().union(*(below[y] for y in rest)) == target:
            kept = rest
    for x in kept:
        if frozenset().union(*(below[y] for y in kept if y != x)) == target:
            raise InvariantViolation("minimal-cover", f"stage {j}: cover {x} is redundant")

    reps = []
    for x in kept:
        others = frozenset().union(*(below[y] for y in kept if y != x))
        own = sorted(below[x] - others)
        if not own:
            raise InvariantViolation("minimal-cover", f"stage {j}: cover {x} has no private set")
        reps.append(estar[own[0]])
    new = Phase2State(state.v + (v,), _sorted_sets(reps))

    info = {
        "stage": j,
        "start": b,
        "descent": path,
        "principal": v,
        "E_v": count_v,
        "E_size": len(new.ee),
        "stage_bound_met": stage_bound_met(len(new.ee), cap, h, j),
        "cover_subset": kept,
    }
    if check:
        bad = phase2_violations(p, new, j)
        if bad:
            raise InvariantViolation(bad[0], f"after stage {j}: {bad}")
    if not info["stage_bound_met"]:
        raise GuaranteeFailure(
            "stage-bound", f"stage {j}: |E| = {len(new.ee)} below cap**(1/h**{j})", stage=j, size=len(new.ee)
        )
    return new, info


def run_phase2(p: Poset, params: ExtractParams, collection: Sequence[PointSet], b_final: PointSet,
               check: bool = True, trace: list | None = None) -> Phase2State:
    state = Phase2State((), _sorted_sets(collection))
    for _ in range(params.n):
        state, info = phase2_step(p, params, b_final, state, check)
        if trace is not None:
            trace.append({**info, "state": state.snapshot()})
    return state


# -- subdivision -------------------------------------------------------------------


def cover_graph(p: Poset) -> UGraph:
    return UGraph(p.n, p.cover_arcs())


def build_subdivision(p: Poset, v_list: Sequence[int], ee: Sequence[PointSet]) -> SubdivisionCertificate:
    """Route one cover-graph path per principal pair through its assigned support set."""
    v_list = list(v_list)
    pairs = list(combinations(range(len(v_list)), 2))
    ee = list(_sorted_sets(ee))
    if len(ee) < len(pairs):
        raise AssignmentExhausted(f"{len(ee)} support sets for {len(pairs)} principal pairs", sets=len(ee))
    paths = {}
    for (i, j), cset in zip(pairs, ee):
        cidx = ee.index(cset)
        allowed = mask_of(cset)
        for v in (v_list[i], v_list[j]):
            xs = [x for x in sorted(iter_bits(p.covers_down[v])) if sets_below(p, ee, x) == [cidx]]
            if not xs:
                raise InvariantViolation("D3", f"principal {v} has no private cover towards set {cidx}")
            x = xs[0]
            c = min(z for z in cset if p.leq(z, x))
            allowed |= mask_of(cover_chain(p, c, x)) | 1 << v
        route = cover_path_within(p, v_list[i], v_list[j], allowed)
        if route is None:
            raise InvariantViolation("route", f"no route between {v_list[i]} and {v_list[j]}")
        paths[(v_list[i], v_list[j])] = route

    # pairwise check: shared vertices must be common endpoints
    items = list(paths.items())
    for (e1, r1), (e2, r2) in combinations(items, 2):
        for z in set(r1) & set(r2):
            end1, end2 = z in e1, z in e2
            if end1 and end2:
                continue
            clause = "interior-vs-interior" if not (end1 or end2) else "endpoint-vs-interior"
            raise InvariantViolation(clause, f"paths {e1} and {e2} share {z}")
    return SubdivisionCertificate(v_list, paths)


# -- reports -----------------------------------------------------------------------


@dataclass
class ExtractionReport:
    status: str
    mode: str
    params: dict
    input: dict = field(default_factory=dict)
    phase1: list = field(default_factory=list)
    phase2: list = field(default_factory=list)
    certificate: SubdivisionCertificate | None = None
    failure: dict | None = None
    constants: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "certificate"

    def to_dict(self) -> dict:
        consts = None
        if self.constants is not None:
            consts = {k: (str(v) if isinstance(v, int) and v.bit_length() > 60 else v) for k, v in self.constants.items()}
        return {
            "schema_version": SCHEMA_VERSION,
            "status": self.status,
            "mode": self.mode,
            "params": self.params,
            "input": self.input,
            "phase1": self.phase1,
            "phase2": self.phase2,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "failure": self.failure,
            "constants": consts,
            "notes": self.notes,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _failure(stage: str, exc: Exception, step: int | None = None, snapshot: dict | None = None) -> dict:
    return {
        "stage": stage,
        "guarantee": getattr(exc, "guarantee", type(exc).__name__),
        "message": str(exc),
        "step": step,
        "details": {k: v for k, v in getattr(exc, "details", {}).items()},
        "snapshot": snapshot,
    }


def paper_mode_report(p: Poset, n: int, h: int, variant: str = "height") -> ExtractionReport:
    consts = paper_constants(n, h) if variant == "height" else kk_constants(n, h)
    pairs = len(inc_minmax_pairs(p)) if variant == "height" else p.n // 2
    digits = consts.get("dim_threshold_digits", consts.get("size_threshold_digits"))
    note = (
        f"the hypothesis needs a value above {n}^{consts['L']} ({digits} digits); "
        f"this input is bounded by {pairs}, so no desk-scale input qualifies"
    )
    return ExtractionReport(
        "infeasible", PAPER, {"n": n, ("h" if variant == "height" else "k"): h, "mode": PAPER},
        {"points": p.n, "bound": pairs}, constants=consts,
        failure={"stage": "init", "guarantee": "paper-threshold", "message": note, "step": 0, "details": {}, "snapshot": None},
    )


def extract(p: Poset, params: ExtractParams, check: bool = True) -> ExtractionReport:
    """Full pipeline; failures are returned in the report, never raised."""
    if params.mode == PAPER:
        return paper_mode_report(p, params.n, params.h)
    report = ExtractionReport("failure", params.mode, params.to_dict(), {"points": p.n, "height": p.height})
    if p.height > params.h:
        report.failure = {"stage": "init", "guarantee": "height-bound", "message":
                          f"height {p.height} exceeds h = {params.h}", "step": 0, "details": {}, "snapshot": None}
        return report
    q = min_max_reduction(p)
    report.input["reduced_points"] = q.n
    report.notes.append("min-max reduction applied" if q.n != p.n else "every point already extreme")

    state = None
    try:
        state = run_phase1(q, params, check, report.phase1)
    except GuaranteeFailure as exc:
        last = report.phase1[-1]["state"] if report.phase1 else None
        report.failure = _failure("phase1", exc, len(report.phase1), last)
        return report

    if len(state.cc) >= params.cap:
        work, coll, side, flipped = q, state.cc, state.b, False
    else:
        work, coll, side, flipped = q.dual(), state.dd, state.a, True
    report.notes.append("phase 2 on the dual order" if flipped else "phase 2 on C")

    try:
        st2 = run_phase2(work, params, coll, side, check, report.phase2)
        cert = build_subdivision(work, st2.v, st2.ee)
    except GuaranteeFailure as exc:
        last = report.phase2[-1]["state"] if report.phase2 else None
        report.failure = _failure("phase2", exc, len(report.phase2), last)
        return report

    ok, why = verify_subdivision(cover_graph(p), cert, params.n)
    if not ok:
        raise InvariantViolation("certificate", why)
    report.status = "certificate"
    report.certificate = cert
    return report


def auto_params(p: Poset, n: int, h: int | None = None, cap: int | None = None) -> ExtractParams:
    """Default best-effort parameters: thresholds step down by one from ``dim* - 1`` to 2."""
    from .dimension import dim_star_exact

    q = min_max_reduction(p)
    top = dim_star_exact(q)[0] if inc_minmax_pairs(q) else 1
    thresholds = tuple(range(max(top - 1, 2), 1, -1)) or (2,)
    return ExtractParams(n, h if h is not None else max(p.height, 2), BEST_EFFORT, thresholds,
                         cap if cap is not None else comb(n, 2))


__all__ = [
    "ExtractParams",
    "Phase1State",
    "Phase2State",
    "ExtractionReport",
    "paper_constants",
    "kk_constants",
    "phase1_init",
    "q1_find",
    "q2_find",
    "phase1_step",
    "phase2_step",
    "build_subdivision",
    "extract",
    "auto_params",
    "run_phase1",
    "run_phase2",
    "phase1_violations",
    "phase2_violations",
    "phase1_vals",
    "val_sequence",
    "improves",
    "cover_graph",
]
