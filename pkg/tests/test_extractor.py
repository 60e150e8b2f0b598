import json

import pytest

import oracles
import replay
from corpus import extraction_runs
from coverdim.errors import AssignmentExhausted, BadParameters, ChiBelowThreshold, InvariantViolation
from coverdim.extractor import (
    PAPER,
    ExtractParams,
    Phase1State,
    Phase2State,
    auto_params,
    build_subdivision,
    cover_graph,
    descends,
    extract,
    improves,
    kk_constants,
    paper_constants,
    phase1_init,
    phase1_step,
    phase1_vals,
    phase1_violations,
    phase2_step,
    q1_find,
    q2_find,
    run_phase1,
    stage_bound_met,
    val_sequence,
)
from coverdim.generators import chain, kelly, kelly_points, standard_example
from coverdim.minor import verify_subdivision
from coverdim.poset import PointSet, min_max_reduction, poset_from_cover


def _less(p):
    return [[p.less(u, v) for v in range(p.n)] for u in range(p.n)]


S6 = ExtractParams(3, 2, thresholds=(5, 4, 3, 2), cap=3)


@pytest.mark.parametrize("n,h", [(3, 2), (3, 3), (4, 2), (5, 2)])
def test_constants_match_big_integer_oracle(n, h):
    c = paper_constants(n, h)
    assert c["M"] == oracles.paper_M(n, h)
    assert c["L"] == oracles.paper_L(c["M"], h)


def test_constants_n3_h2():
    c = paper_constants(3, 2)
    assert c["M"] == 6561
    assert c["L"] == 2 * (6563 * 6562 // 2) - 1 == 43066405
    # digits of 3**L, from L * log10(3)
    assert c["dim_threshold_digits"] == 20547898


def test_kk_constants_small():
    c = kk_constants(3, 2)
    assert (c["M"], c["L"]) == (3, 7)
    c = kk_constants(3, 3)
    assert c["M"] == 3**8 and c["L"] == oracles.paper_L(3**8, 2)


def test_constants_reject_small_arguments():
    with pytest.raises(BadParameters):
        paper_constants(2, 2)
    with pytest.raises(BadParameters):
        kk_constants(3, 1)


def test_params_validation():
    with pytest.raises(BadParameters):
        ExtractParams(3, 2, thresholds=(1, 2), cap=3)
    with pytest.raises(BadParameters):
        ExtractParams(3, 2, thresholds=(0,), cap=3)
    with pytest.raises(BadParameters):
        ExtractParams(3, 2, thresholds=(2,), cap=0)
    with pytest.raises(BadParameters):
        ExtractParams(3, 2, mode="fast")
    assert ExtractParams(3, 2, mode=PAPER).mode == PAPER
    assert S6.threshold(10) == 2


def test_val_sequence_and_order():
    assert val_sequence([2, 1], 4, 3) == (1, 2, 3, 3)
    with pytest.raises(InvariantViolation):
        val_sequence([1, 1, 1], 2, 3)
    assert improves((3, 3), (3, 3), (2, 3), (3, 3))
    assert not improves((3, 3), (3, 3), (2, 3), (3, 4))
    assert not improves((2, 3), (3, 3), (2, 3), (3, 3))


def test_init_standard_example():
    st = phase1_init(standard_example(5), ExtractParams(3, 2, thresholds=(4, 2, 1), cap=3))
    assert st.a == set(range(5)) and st.b == set(range(5, 10)) and st.cc == ()
    assert phase1_vals(standard_example(5), S6, st) == ((3, 3, 3), (3, 3, 3))


def test_init_kelly():
    p = kelly(5)
    a, b = kelly_points(5)
    params = ExtractParams(3, p.height, thresholds=(4, 2, 1), cap=3)
    st = phase1_init(p, params)
    assert set(a) <= st.a and set(b) <= st.b
    assert phase1_violations(p, params, st) == []


def test_init_chain_fails_threshold():
    with pytest.raises(ChiBelowThreshold) as info:
        phase1_init(chain(2), ExtractParams(3, 2, thresholds=(1,), cap=3))
    assert info.value.guarantee == "chi-below-threshold"


def test_questions_need_a_collection():
    p = standard_example(5)
    params = ExtractParams(3, 2, thresholds=(4, 2, 1), cap=3)
    st = phase1_init(p, params)
    assert q1_find(p, params, st) is None and q2_find(p, params, st) is None


def test_q1_fires_above_support():
    # S_4 plus a point z above support {a_1} and below every b_j but b_1
    base = standard_example(4)
    arcs = [(u, v) for u, v in base.cover_arcs() if u != 0] + [(0, 8)] + [(8, v) for v in (5, 6, 7)]
    p = poset_from_cover(9, arcs)
    params = ExtractParams(3, 3, thresholds=(1,), cap=3)
    st = Phase1State(PointSet({1, 2, 3}), PointSet({4, 5, 6, 7}), (PointSet({0}),), ())
    assert q1_find(p, params, st) == 8
    res = phase1_step(p, params, st)
    assert res.action == "q1-update" and res.state.cc == (PointSet({8}),)
    assert res.state.b == {5, 6, 7}


def test_q2_is_dual_of_q1():
    base = standard_example(4)
    arcs = [(u, v) for u, v in base.cover_arcs() if v != 4] + [(8, 4)] + [(u, 8) for u in (1, 2, 3)]
    p = poset_from_cover(9, arcs)
    params = ExtractParams(3, 3, thresholds=(1,), cap=3)
    st = Phase1State(PointSet({0, 1, 2, 3}), PointSet({5, 6, 7}), (), (PointSet({4}),))
    assert q2_find(p, params, st) == 8
    res = phase1_step(p, params, st)
    assert res.action == "q2-update" and res.state.dd == (PointSet({8}),)


def test_run_on_s6_terminates_with_full_collection():
    p = standard_example(6)
    trace = []
    st = run_phase1(p, S6, trace=trace)
    assert trace[-1]["action"] == "terminated"
    assert len(st.cc) == S6.cap or len(st.dd) == S6.cap
    assert replay.check_phase1(_less(p), S6, trace) == []


def test_corrupted_state_is_diagnosed():
    p = standard_example(4)
    params = ExtractParams(3, 2, thresholds=(1,), cap=2)
    st = Phase1State(PointSet({0, 1}), PointSet({6, 7}), (PointSet({0}),), ())
    assert "b.ii" in phase1_violations(p, params, st)
    st = Phase1State(PointSet({0, 5}), PointSet({6, 7}))
    assert "a.min" in phase1_violations(p, params, st)
    st = Phase1State(PointSet({1}), PointSet({4}), (PointSet({2}), PointSet({3}), PointSet({0})))
    assert "b.size" in phase1_violations(p, params, st)


def test_descent_rule_exact_integers():
    # count_x > count_v / cap**(1/(h-1)) at stage 1
    assert descends(2, 5, 3, 2, 1) and not descends(1, 5, 3, 2, 1)
    assert stage_bound_met(3, 3, 2, 0) and not stage_bound_met(1, 3, 2, 1)
    assert stage_bound_met(2, 3, 2, 1)


def _phase2_input(d=6):
    p = standard_example(d)
    st = run_phase1(p, S6)
    return p, st


def test_phase2_single_stage():
    p, st = _phase2_input()
    state, info = phase2_step(p, S6, st.b, Phase2State((), tuple(sorted(st.cc, key=sorted))))
    assert info["stage"] == 1 and len(state.v) == 1
    assert len(info["descent"]) <= 2
    assert replay.check_phase2(_less(p), [{**info, "state": state.snapshot()}]) == []


def test_build_subdivision_needs_enough_sets():
    p, st = _phase2_input()
    with pytest.raises(AssignmentExhausted):
        build_subdivision(p, [9, 10, 11], list(st.cc)[:2])


def test_s6_certificate():
    rep = extract(standard_example(6), S6)
    assert rep.ok
    cert = rep.certificate
    assert sorted(cert.principals) == [9, 10, 11]
    assert verify_subdivision(cover_graph(standard_example(6)), cert, 3) == (True, None)
    assert replay.pairwise_disjoint(cert)


def test_report_json():
    rep = extract(standard_example(6), S6)
    data = json.loads(rep.to_json())
    assert data["status"] == "certificate" and data["schema_version"] == 1
    assert len(data["certificate"]["paths"]) == 3


def test_chain_reports_failure():
    rep = extract(chain(3), ExtractParams(3, 3, thresholds=(1,), cap=3))
    assert rep.status == "failure" and rep.failure["guarantee"] == "chi-below-threshold"
    rep = extract(chain(3), ExtractParams(3, 2, thresholds=(1,), cap=3))
    assert rep.failure["guarantee"] == "height-bound"


def test_paper_mode_is_infeasible():
    rep = extract(standard_example(6), ExtractParams(3, 2, mode=PAPER))
    assert rep.status == "infeasible"
    assert rep.constants["M"] == 6561
    assert json.loads(rep.to_json())["constants"]["L"] == 43066405


def test_jobs_do_not_change_the_answer():
    p = standard_example(8)
    one = extract(p, ExtractParams(3, 2, thresholds=(7, 2, 1), cap=3, jobs=1))
    four = extract(p, ExtractParams(3, 2, thresholds=(7, 2, 1), cap=3, jobs=4))
    assert one.to_dict() == four.to_dict()


def test_auto_params():
    params = auto_params(standard_example(6), 3)
    assert params.thresholds == (5, 4, 3, 2) and params.cap == 3 and params.h == 2
    assert extract(standard_example(6), params).ok


def test_min_max_reduction_keeps_certificates_in_p():
    # S_6 with a point hung below a_1: the reduction adds extremes, the certificate stays in P
    p = poset_from_cover(13, standard_example(6).cover_arcs() + [(12, 0)])
    rep = extract(p, ExtractParams(3, 3, thresholds=(5, 4, 3, 2), cap=3))
    assert rep.input["reduced_points"] == min_max_reduction(p).n == 15
    assert rep.ok and verify_subdivision(cover_graph(p), rep.certificate, 3)[0]


@pytest.mark.parametrize("idx", range(len(extraction_runs())))
def test_corpus_run(idx):
    name, p, params = extraction_runs()[idx]
    rep = extract(p, params)
    q = min_max_reduction(p)
    assert replay.check_phase1(_less(q), params, rep.phase1) == []
    work = q.dual() if "phase 2 on the dual order" in rep.notes else q
    assert replay.check_phase2(_less(work), rep.phase2) == []
    if params.h == 2:
        assert all(len(r["descent"]) <= 2 for r in rep.phase2)
    if rep.ok:
        assert verify_subdivision(cover_graph(p), rep.certificate, params.n)[0]
        assert replay.certificate_within(rep.certificate, p.cover_arcs())
    else:
        assert rep.failure["guarantee"] not in ("descent-minimal",)
