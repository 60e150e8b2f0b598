"""Clique-subdivision extraction from a large standard example in a (k+k)-free poset.

Phase 1 keeps a standard example ``(A, B)`` (stored as aligned tuples, so
``A[i]`` is incomparable exactly to ``B[i]``) and two antichains ``C`` below
``B`` and ``D`` above ``A`` that stay within ``k - 1`` cover steps of the
example.  New antichain points come from splitting the example around one
incomparable pair into far and close parts; (k+k)-freeness makes the close
side large.  Phase 2 and the subdivision builder are shared with
:mod:`coverdim.extractor`, with singletons as support sets and ``k - 1`` in
place of the height.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .dimension import largest_standard_example
from .errors import BadParameters, GuaranteeFailure, InvariantViolation, NotKKFree
from .extractor import (
    BEST_EFFORT,
    DONE,
    PAPER,
    ExtractionReport,
    ExtractParams,
    Q1,
    Q2,
    Q3C,
    Q3D,
    StepResult,
    _failure,
    build_subdivision,
    cover_graph,
    improves,
    paper_mode_report,
    run_phase2,
    val_sequence,
)
from .minor import verify_subdivision
from .poset import PointSet, Poset, is_kk_free, longest_directed_path_len


@dataclass(frozen=True)
class KKParams:
    n: int
    k: int
    mode: str = BEST_EFFORT
    thresholds: tuple[int, ...] = ()
    cap: int = 0

    def __post_init__(self):
        if self.n < 3 or self.k < 2:
            raise BadParameters("need n >= 3 and k >= 2")
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
        return {"n": self.n, "k": self.k, "mode": self.mode, "thresholds": list(self.thresholds), "cap": self.cap}


@dataclass(frozen=True)
class KKPhase1State:
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: PointSet = PointSet()
    d: PointSet = PointSet()
    iteration: int = 0

    def snapshot(self) -> dict:
        return {"iteration": self.iteration, "a": list(self.a), "b": list(self.b),
                "C": sorted(self.c), "D": sorted(self.d)}


def _restrict(state_a, state_b, keep_b=None, keep_a=None):
    """Sub-example on the kept maximal (or minimal) points, partners following along."""
    pairs = list(zip(state_a, state_b))
    if keep_b is not None:
        pairs = [(x, y) for x, y in pairs if y in keep_b]
    if keep_a is not None:
        pairs = [(x, y) for x, y in pairs if x in keep_a]
    return tuple(x for x, _ in pairs), tuple(y for _, y in pairs)


def kk_vals(p: Poset, params: KKParams, state: KKPhase1State):
    vc = []
    for c in sorted(state.c):
        lens = [longest_directed_path_len(p, c, y) for y in state.b]
        if any(v is None for v in lens):
            raise InvariantViolation("b.i", f"{c} is not below every point of B")
        vc.append(max(lens, default=1))
    vd = []
    for d in sorted(state.d):
        lens = [longest_directed_path_len(p, x, d) for x in state.a]
        if any(v is None for v in lens):
            raise InvariantViolation("c.i", f"{d} is not above every point of A")
        vd.append(max(lens, default=1))
    return val_sequence(vc, params.cap, params.k), val_sequence(vd, params.cap, params.k)


def kk_violations(p: Poset, params: KKParams, state: KKPhase1State) -> list[str]:
    """Structural clauses that fail for ``state`` (empty when all hold)."""
    bad = []
    a, b = state.a, state.b
    if len(a) != len(b) or len(set(a) | set(b)) != 2 * len(a):
        bad.append("a.shape")
    elif not all(p.less(x, y) == (i != j) for i, x in enumerate(a) for j, y in enumerate(b)):
        bad.append("a.standard")
    for tag, anti, dual in (("b", state.c, False), ("c", state.d, True)):
        pts = sorted(anti)
        if len(pts) > params.cap:
            bad.append(f"{tag}.size")
        if any(p.comparable(x, y) for i, x in enumerate(pts) for y in pts[i + 1:]):
            bad.append(f"{tag}.antichain")
        for z in pts:
            if not dual and (any(p.leq(x, z) for x in a) or not all(p.leq(z, y) for y in b)):
                bad.append(f"{tag}.i")
                break
            if dual and (any(p.leq(z, y) for y in b) or not all(p.leq(x, z) for x in a)):
                bad.append(f"{tag}.i")
                break
        for z in pts:
            ends = b if not dual else a
            lens = [longest_directed_path_len(p, z, y) if not dual else longest_directed_path_len(p, y, z) for y in ends]
            if any(v is not None and v >= params.k for v in lens):
                bad.append(f"{tag}.ii")
                break
    return bad


def kk_phase1_init(p: Poset, params: KKParams) -> KKPhase1State:
    size, found = largest_standard_example(p)
    t = params.threshold(0)
    if size <= t:
        raise GuaranteeFailure("standard-example-size", f"largest standard example has size {size}, threshold {t}",
                               iteration=0, size=size, threshold=t)
    return KKPhase1State(tuple(found[0]), tuple(found[1]))


def _q1(p: Poset, state: KKPhase1State, t: int) -> int | None:
    above = 0
    for c in state.c:
        above |= p.up[c]
    for x in range(p.n):
        if above >> x & 1 and sum(1 for y in state.b if p.leq(x, y)) > t:
            return x
    return None


def _q2(p: Poset, state: KKPhase1State, t: int) -> int | None:
    below = 0
    for d in state.d:
        below |= p.down[d]
    for x in range(p.n):
        if below >> x & 1 and sum(1 for y in state.a if p.leq(y, x)) > t:
            return x
    return None


def far_close_split(p: Poset, state: KKPhase1State, k: int, i0: int = 0):
    """Split the example around its ``i0``-th pair into far and close parts.

    Returns ``(a0, b0, a_far, a_cl, b_far, b_cl)``; far means a cover path of
    at least ``k`` vertices to ``b0`` (from ``a0`` for the maximal side).
    """
    a0, b0 = state.a[i0], state.b[i0]
    a_far, a_cl, b_far, b_cl = [], [], [], []
    for x in state.a:
        if x == a0:
            continue
        length = longest_directed_path_len(p, x, b0)
        (a_far if length is not None and length >= k else a_cl).append(x)
    for y in state.b:
        if y == b0:
            continue
        length = longest_directed_path_len(p, a0, y)
        (b_far if length is not None and length >= k else b_cl).append(y)
    return a0, b0, a_far, a_cl, b_far, b_cl


def kk_phase1_step(p: Poset, params: KKParams, state: KKPhase1State, check: bool = True, pair_index: int = 0) -> StepResult:
    """One Phase 1 iteration; ``pair_index`` picks which pair of the example anchors Q3."""
    i = state.iteration + 1
    t = params.threshold(i)
    old = kk_vals(p, params, state)
    info: dict = {"iteration": i, "threshold": t}

    x = _q1(p, state, t)
    if x is not None:
        keep = {y for y in state.b if p.leq(x, y)}
        a, b = _restrict(state.a, state.b, keep_b=keep)
        new = KKPhase1State(a, b, PointSet(z for z in state.c if not p.less(z, x)) | {x}, state.d, i)
        action, info["point"] = Q1, x
    else:
        x = _q2(p, state, t)
        if x is not None:
            keep = {y for y in state.a if p.leq(y, x)}
            a, b = _restrict(state.a, state.b, keep_a=keep)
            new = KKPhase1State(a, b, state.c, PointSet(z for z in state.d if not p.less(x, z)) | {x}, i)
            action, info["point"] = Q2, x
        elif len(state.c) < params.cap and len(state.d) < params.cap:
            a0, b0, a_far, a_cl, b_far, b_cl = far_close_split(p, state, params.k, pair_index)
            far_a, far_b = set(a_far), set(b_far)
            for x_, y_ in zip(state.a, state.b):
                if x_ != a0 and x_ in far_a and y_ in far_b:
                    raise InvariantViolation("dichotomy", f"pair ({x_}, {y_}) is far on both sides")
            size = len(state.a)
            if 2 * len(b_cl) >= size - 1:
                a, b = _restrict(state.a, state.b, keep_b=set(b_cl))
                new = KKPhase1State(a, b, state.c | {a0}, state.d, i)
                action = Q3C
            elif 2 * len(a_cl) >= size - 1:
                a, b = _restrict(state.a, state.b, keep_a=set(a_cl))
                new = KKPhase1State(a, b, state.c, state.d | {b0}, i)
                action = Q3D
            else:
                raise InvariantViolation("dichotomy", "neither close side reaches half the example")
            if 2 * len(new.a) < size - 1:
                raise InvariantViolation("shrinkage", f"{len(new.a)} < ({size} - 1) / 2")
            info.update({"pair": [a0, b0], "a_far": a_far, "a_cl": a_cl, "b_far": b_far, "b_cl": b_cl})
        else:
            return StepResult(state, DONE, info)

    if len(new.a) <= t:
        raise GuaranteeFailure("standard-example-size", f"{action}: example size {len(new.a)} not above {t}",
                               iteration=i, size=len(new.a), threshold=t)
    if check:
        bad = kk_violations(p, params, new)
        if bad:
            raise InvariantViolation(bad[0], f"after {action} at iteration {i}: {bad}")
    vals = kk_vals(p, params, new)
    if not improves(old[0], old[1], vals[0], vals[1]):
        raise InvariantViolation("quality", f"{action} at iteration {i} did not improve {old} -> {vals}")
    info["size"] = len(new.a)
    info["val_C"], info["val_D"] = list(vals[0]), list(vals[1])
    return StepResult(new, action, info)


def run_kk_phase1(p: Poset, params: KKParams, check: bool = True, trace: list | None = None,
                  choose_pair=None) -> KKPhase1State:
    """``choose_pair(state)`` may override the anchor pair index (defaults to 0)."""
    state = kk_phase1_init(p, params)
    if trace is not None:
        vals = kk_vals(p, params, state)
        trace.append({"iteration": 0, "action": "init", "size": len(state.a),
                      "val_C": list(vals[0]), "val_D": list(vals[1]), "state": state.snapshot()})
    bound = 2 * comb(params.cap + params.k - 1, params.k - 1) - 1
    for _ in range(bound + 1):
        idx = choose_pair(state) if choose_pair else 0
        res = kk_phase1_step(p, params, state, check, idx)
        if trace is not None:
            trace.append({**res.info, "action": res.action, "state": res.state.snapshot()})
        if res.action == DONE:
            return res.state
        state = res.state
    raise InvariantViolation("termination", f"Phase 1 exceeded {bound} steps")


def kk_extract(p: Poset, params: KKParams, check: bool = True) -> ExtractionReport:
    """Full (k+k)-free pipeline; failures are returned in the report."""
    if params.mode == PAPER:
        return paper_mode_report(p, params.n, params.k, variant="kk")
    report = ExtractionReport("failure", params.mode, params.to_dict(), {"points": p.n, "height": p.height})
    free, witness = is_kk_free(p, params.k)
    if not free:
        exc = NotKKFree(f"input contains two incomparable {params.k}-chains {witness}")
        report.failure = {"stage": "init", "guarantee": "not-kk-free", "message": str(exc), "step": 0,
                          "details": {"witness": [list(witness[0]), list(witness[1])]}, "snapshot": None}
        return report
    try:
        state = run_kk_phase1(p, params, check, report.phase1)
    except GuaranteeFailure as exc:
        last = report.phase1[-1]["state"] if report.phase1 else None
        report.failure = _failure("phase1", exc, len(report.phase1), last)
        return report

    if len(state.c) >= params.cap:
        work, coll, side = p, state.c, state.b
    else:
        work, coll, side = p.dual(), state.d, state.a
        report.notes.append("phase 2 on the dual order")
    try:
        if params.k < 3:
            raise GuaranteeFailure("height-surrogate", "Phase 2 needs k - 1 >= 2")
        p2 = ExtractParams(params.n, params.k - 1, BEST_EFFORT, params.thresholds, params.cap)
        st2 = run_phase2(work, p2, [PointSet([z]) for z in sorted(coll)], PointSet(side), check, report.phase2)
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
