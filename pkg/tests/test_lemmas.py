from __future__ import annotations

import pytest

from builders import qprq_o1t
from o1tg.harness.lemmas import (
    blocker_checks,
    check_min7,
    collect_cuts,
    cut_count_estimate,
    run_lemma_suites,
)
from o1tg.errors import TooLarge


@pytest.mark.parametrize("name", ["q403", "q404", "kappa5", "nested"])
def test_all_suites_pass_on_fixtures(name, request):
    g = request.getfixturevalue(name)
    results = run_lemma_suites(g)
    bad = {k: r.violations for k, r in results.items() if not r.passed}
    assert bad == {}
    assert not any((r.skipped or "").startswith("budget") for r in results.values())


def test_fixtures_exercise_the_cut_suites(q403, kappa5, nested):
    assert run_lemma_suites(q403)["6cut3"].checked > 0
    assert run_lemma_suites(kappa5)["5conn"].checked > 0
    assert run_lemma_suites(nested)["4cycle"].checked > 0


def test_q403_six_cuts_are_pairs_of_triangles(q403):
    cuts = collect_cuts(q403, sizes=(6,))
    minimal = [c for c in cuts[6] if c.witness.minimal]
    # each minimal 6-cut of Q(4,0,3) is two of the four vertical triangles
    assert len(minimal) == 2
    for c in minimal:
        assert sorted(len(r.interior_vertices) for r in c.decomposition) == [3, 3]


def test_min7_has_no_cuts_on_eight_regular(q404):
    r = check_min7(collect_cuts(q404, sizes=(7,)), q404)
    assert r.passed


def test_large_instances_skip_cut_suites():
    g = qprq_o1t(6, 0, 3)
    results = run_lemma_suites(g, max_cut_n=16)
    assert results["parity"].skipped.startswith("n = 18")
    assert results["cycle_parity"].skipped is None


def test_cut_budget_is_reported(q404):
    results = run_lemma_suites(q404, cut_budget=10)
    assert results["parity"].skipped.startswith("budget")
    with pytest.raises(TooLarge):
        collect_cuts(q404, budget=10)


def test_blocker_suites_on_barrier(barrier):
    blk, edge, odd = blocker_checks(barrier)
    assert blk.checked > 0 and edge.checked > 0
    assert blk.passed and edge.passed and odd.passed


def test_blocker_suites_skip_odd_order():
    g = qprq_o1t(3, 0, 3)
    assert all(r.skipped == "odd order" for r in blocker_checks(g))


def test_cut_count_estimate():
    assert cut_count_estimate(8) == 70 + 56 + 28 + 8
