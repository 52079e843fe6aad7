"""Smoke tests for the knets extension module.

The ctest harness points KNETS_CORE_DIR at the built _core module; the
package __init__ falls back to it when the module is not installed.
"""

import pytest

import knets


def test_module_doc_mentions_networks():
    assert "network" in knets.__doc__


def test_triangle_verifies_and_round_trips():
    net = knets.triangle(5, 3)
    assert net.width == 5
    assert net.arity() == 3
    net.validate()
    report = knets.zero_one_verify(net, threads=2)
    assert report.valid
    assert report.inputs_tested == 32
    assert report.counterexample_input is None

    text = knets.to_knet(net)
    again = knets.parse_network(text)
    assert again == net
    assert knets.to_knet(again) == text


def test_apply_network_sorts_and_preserves_multiset():
    net = knets.triangle(4, 2)
    out = knets.apply_network([7, -2, 7, 0], net)
    assert out == [-2, 0, 7, 7]


def test_single_comparator_counterexample():
    net = knets.Network(3, [knets.Comparator([0, 1])])
    report = knets.zero_one_verify(net)
    assert not report.valid
    assert report.inputs_tested == 3
    assert report.counterexample_input == [0, 1, 0]
    assert report.counterexample_output == [0, 1, 0]


def test_permutation_verify_agrees_with_zero_one():
    net = knets.pass_scheme_to_network(knets.stooge_scheme(6))
    assert knets.zero_one_verify(net).valid
    assert knets.permutation_verify(net).valid
    assert knets.permutation_verify(net).inputs_tested == 720


def test_stooge_orders():
    first = knets.stooge_scheme(9)
    assert first.window == 6
    assert first.offsets == [0, 3, 0]
    last = knets.stooge_scheme(9, order=knets.StoogeOrder.LAST_FIRST_LAST)
    assert last.offsets == [3, 0, 3]


def test_triangle_size_formula_is_exact_rational():
    r = knets.triangle_size_formula(8, 3)
    assert (r.num, r.den) == (27, 2)
    assert r.value() == 13.5
    # the formula lower-bounds the construction: sum of ceil((p-1)/2) = 15
    assert len(knets.triangle(8, 3).comparators) == 15
    assert 15 >= r.value()


def test_search_finds_the_three_pass_minimum():
    spec = knets.SearchSpec()
    spec.n = 3
    spec.window = 2
    spec.max_passes = 3
    spec.mode = knets.SearchMode.CONTIGUOUS_WINDOWS
    spec.budget = 10**6
    spec.threads = 1
    res = knets.search_min_passes(spec)
    assert res.found
    assert res.min_passes == 3
    assert res.witness_scheme.offsets == [0, 1, 0]
    assert [c.lines for c in res.witness] == [[0, 1], [1, 2], [0, 1]]
    assert res.sequences_tested == 5


def test_search_not_found_below_minimum():
    spec = knets.SearchSpec()
    spec.n = 3
    spec.window = 2
    spec.max_passes = 2
    spec.budget = 10**6
    spec.threads = 1
    res = knets.search_min_passes(spec)
    assert not res.found
    assert res.min_passes is None
    assert res.witness_scheme is None
    assert res.sequences_tested == 4


def test_postulations_rows_under_a_tiny_budget():
    checks = knets.check_postulations(budget_per_instance=1000, threads=1)
    assert len(checks) == 11
    assert {c.postulation for c in checks} == {1, 2, 3}
    for chk in checks:
        assert chk.verdict in (
            knets.Verdict.CONFIRMED,
            knets.Verdict.REFUTED_AT_THIS_N,
            knets.Verdict.INCONCLUSIVE,
        )


def test_parallel_schedule_shape():
    sched = knets.parallel_merge_sort_schedule(16)
    assert sched.round_count() == 10
    assert sched.comparison_count() == 16 * 4 * 5 // 4  # n * t(t+1)/4 at t=4
    net = sched.to_network()
    net.validate()
    assert net.round_count() == 10
    assert knets.zero_one_verify(net, threads=2).valid

    out = knets.apply_schedule(list(range(16, 0, -1)), sched)
    assert out == list(range(1, 17))


def test_valley_merge_round_bound():
    sched = knets.valley_merge_schedule(knets.MergeSpec(3, 5))
    assert sched.round_count() == 3  # ceil(log2 8)
    assert sched.width == 8


def test_stage_table():
    table = knets.schedule_stage_table(4)
    rows = [(r.run_length, r.run_count, r.rounds) for r in table.rows]
    assert rows == [(1, 4, 0), (2, 2, 1), (4, 1, 2)]
    assert table.total_rounds() == 3


def test_bounds_values():
    assert (knets.comparison_bounds(5).lower, knets.comparison_bounds(5).upper) == (7, 7)
    rep = knets.comparison_bounds(12)
    assert (rep.n, rep.lower, rep.upper) == (12, 29, 30)


def test_merge_insertion_sort_counts():
    run = knets.merge_insertion_sort([5, 1, 4, 2, 3])
    assert run.input == [5, 1, 4, 2, 3]
    assert run.output == [1, 2, 3, 4, 5]
    assert run.comparisons <= 7  # worst case for n=5


def test_is_sorted_scan():
    assert knets.is_sorted_scan([1, 2, 2, 9]) == (True, 3)
    assert knets.is_sorted_scan([1, 3, 2, 9]) == (False, 2)
    assert knets.is_sorted_scan([]) == (True, 0)


def test_exception_mapping():
    with pytest.raises(knets.DomainError):
        knets.comparison_bounds(0)
    with pytest.raises(knets.DomainError):
        knets.triangle(3, 7)
    with pytest.raises(knets.DomainError):
        knets.stooge_scheme(7)
    with pytest.raises(knets.NetStructureError):
        knets.Network(3, [knets.Comparator([0, 0])]).validate()
    with pytest.raises(knets.KnetParseError, match="line 1"):
        knets.parse_network("knet 2\nn 3\n")
    with pytest.raises(knets.BudgetError):
        knets.zero_one_verify(knets.Network(31, []))
    spec = knets.SearchSpec()
    spec.n = 9
    spec.window = 6
    spec.max_passes = 3
    spec.budget = 10000
    spec.threads = 1
    with pytest.raises(knets.BudgetError):
        knets.search_min_passes(spec)
    # every knets exception shares one base
    with pytest.raises(knets.KnetsError):
        knets.comparison_bounds(-1)
