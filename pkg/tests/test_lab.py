from fractions import Fraction as Fr
import json

import pytest

from lafuzzy import (
    FuzzySubset,
    InputError,
    Scope,
    convolve,
    k_convolve,
    k_meet,
    run_suite,
    search_counterexamples,
    theorem_ids,
    verify_theorem,
)
from lafuzzy.lab import REGISTRY

SMALL = Scope(orders=(1, 2, 3))


@pytest.fixture(scope="module")
def small_report():
    return run_suite(SMALL)


def test_registry_covers_statements():
    ids = theorem_ids()
    for stem in ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10", "T11",
                 "T12", "T13", "T14", "T15", "L1", "L2", "L3", "P1", "P2", "P3"):
        assert any(i == stem or i.startswith(stem + ".") for i in ids), stem
    for iff in ("T1", "T2", "T6", "T11"):
        assert f"{iff}.fwd" in ids and f"{iff}.bwd" in ids


def test_t6_on_example(ex):
    r = verify_theorem("T6.fwd", Scope(groupoids=(ex,)))
    assert r.status == "passed" and r.hypotheses_met == 1
    assert verify_theorem("T6.bwd", Scope(groupoids=(ex,))).status == "passed"


def test_t13_constant_case(ex):
    for c in (Fr(0), Fr(1, 4), Fr(1, 2), Fr(3, 4), Fr(1)):
        F = FuzzySubset.constant(4, c)
        want = FuzzySubset.constant(4, min(c, Fr(1, 2)))
        assert k_meet(F, F, 0) == want
        assert k_convolve(ex, F, F, 0) == want


def test_example_scope(ex):
    r = run_suite(Scope(groupoids=(ex,), samples=200))
    for i in ("T6.fwd", "T6.bwd", "T13.meet<=conv", "T13.conv<=meet"):
        res = r.result(i)
        assert res.status == "passed" and res.instances_checked >= 1


def test_empty_scope_is_vacuous():
    r = run_suite(Scope(orders=()))
    assert {x.status for x in r.results} == {"vacuous"}


def test_small_suite_invariants(small_report):
    assert [r.id for r in small_report.results] == theorem_ids()
    for r in small_report.results:
        assert r.hypotheses_met <= r.instances_checked
        assert (r.witness is not None) == (r.status in ("counterexample", "falsified_as_written"))
        assert (r.status == "vacuous") == (r.hypotheses_met == 0 and r.witness is None)
    assert not small_report.counterexamples


def test_iff_members_nonvacuous(small_report):
    for i in ("T1.fwd", "T1.bwd", "T2.fwd", "T11.bwd", "T12.left=>right", "L1.fwd", "L2.bwd"):
        assert small_report.result(i).hypotheses_met > 0, i


def test_report_deterministic():
    a = run_suite(Scope(orders=(1, 2, 3, 4), samples=20, seed=7), ["T9", "L2.fwd", "T13.as_written"])
    b = run_suite(Scope(orders=(1, 2, 3, 4), samples=20, seed=7), ["T9", "L2.fwd", "T13.as_written"])
    assert a.to_json() == b.to_json()
    assert a.to_text() == b.to_text()
    doc = json.loads(a.to_json())
    assert doc["config"]["seed"] == 7
    assert doc["config"]["k_values"] == ["0", "1/4", "1/2"]


def test_seed_changes_samples():
    a = run_suite(Scope(orders=(4,), samples=5, seed=1), ["L1.fwd"]).result("L1.fwd")
    b = run_suite(Scope(orders=(4,), samples=5, seed=2), ["L1.fwd"]).result("L1.fwd")
    assert a.instances_checked == b.instances_checked
    assert a.hypotheses_met != b.hypotheses_met


def test_unknown_theorem():
    with pytest.raises(InputError):
        verify_theorem("T99", SMALL)


def test_search_examples():
    assert search_counterexamples("T6.fwd", 3).status == "passed"
    r = search_counterexamples("P1", 2, drop=["left_invertive"])
    assert r.status == "counterexample"
    rows = r.witness["groupoid"]
    ids = [e for e in range(2) if all(rows[e][x] == x + 1 for x in range(2))]
    assert len(ids) == 2
    for tid in theorem_ids():
        assert search_counterexamples(tid, 1).status == "passed", tid


def test_search_rejects_unknown_hypothesis():
    with pytest.raises(InputError):
        search_counterexamples("T7", 2, drop=["commutative"])


def test_search_is_deterministic():
    r1 = search_counterexamples("T6.bwd", 3, drop=["left_identity"])
    r2 = search_counterexamples("T6.bwd", 3, drop=["left_identity"])
    assert r1 == r2


def test_t11_passes_at_order_two():
    r = verify_theorem("T11.fwd", Scope(orders=(2,)))
    assert r.status == "passed"
    assert REGISTRY["T11.fwd"].asserted


def test_convolve_with_one(ex):
    # 4 factors as 1∘1, 2∘2, 3∘3 and 4∘4, so (F∘1)(4) is the largest grade
    one = FuzzySubset.one(4)
    F = FuzzySubset.of([Fr(1, 4), 0, 0, Fr(3, 4)])
    assert convolve(ex, F, one)[3] == Fr(3, 4)
