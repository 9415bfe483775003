import pytest

from minprog.codec import InvalidCodeError, encode_machine
from minprog.hierarchy import (
    SimDecider,
    build_diagonal,
    build_range_enumerator,
    build_reduction_tm,
    build_totalizer,
    composed_order_bound,
    diagonal_experiment,
    dovetail_nontotal,
    emptiness_solver,
    halting_itm,
    limitlist_memory,
    order_lookup,
    order_rows,
    totality_verdict,
)
from minprog.inductive import itm_run
from minprog.turing import run_fueled, never_halts_by_inspection
from minprog.words import nth_word
from minprog import zoo

POOL = zoo.acceptance_pool()
CODES = [encode_machine(m) for m in POOL]
NAMES = dict(zip(CODES, (m.name for m in POOL)))


# ---------------------------------------------------------------------------
# halting demonstrator


def test_halting_demonstrator_flips_at_the_observed_halt_step():
    direct = run_fueled(zoo.identity(), "0", 1000)
    v = halting_itm(encode_machine(zoo.identity()), "0", 1000)
    assert v.value == "1"
    assert v.stabilized_since == direct.steps


def test_halting_demonstrator_stays_zero_for_nonhalting_runs():
    v = halting_itm(encode_machine(zoo.looper()), "0", 1000)
    assert v.value == "0" and v.stabilized_since == 0
    assert run_fueled(zoo.epsilon_only(), "1", 1000).kind == "out-of-fuel"
    v = halting_itm(encode_machine(zoo.epsilon_only()), "1", 1000)
    assert v.value == "0"


def test_halting_demonstrator_rejects_inductive_codes():
    with pytest.raises(InvalidCodeError):
        halting_itm(encode_machine(zoo.writer()), "", 100)


# ---------------------------------------------------------------------------
# emptiness


def test_emptiness_of_never_halting_machine():
    v = emptiness_solver(encode_machine(zoo.looper()), 32)
    assert v.value == "1" and v.stabilized_since == 1 and not v.halted


def test_emptiness_detects_the_exact_cycle():
    # detection happens at the first cycle n covering both the input index
    # and the halting time of some halting pair
    steps_eps = run_fueled(zoo.identity(), nth_word(1), 100).steps
    v = emptiness_solver(encode_machine(zoo.identity()), 32)
    assert v.value == "0" and v.halted
    assert v.stabilized_since == max(1, steps_eps)

    steps_x2 = run_fueled(zoo.nonempty_only(), nth_word(2), 100).steps
    v = emptiness_solver(encode_machine(zoo.nonempty_only()), 32)
    assert v.value == "0"
    assert v.stabilized_since == max(2, steps_x2)


# ---------------------------------------------------------------------------
# the list scheduler


def test_singleton_nonhalting_pool_is_stable_at_position_zero():
    state = dovetail_nontotal([zoo.looper()], 20)
    assert state.order == [encode_machine(zoo.looper())]
    assert state.last_moved == {}


def test_total_machine_keeps_being_displaced_behind_a_frozen_one():
    pool = [zoo.identity(), zoo.looper()]
    state = dovetail_nontotal(pool, 24)
    c_id, c_loop = (encode_machine(m) for m in pool)
    assert state.order.index(c_loop) < state.order.index(c_id)
    assert state.last_moved[c_id] == 24
    assert c_loop not in state.last_moved


def test_literal_early_cycle_insertions_with_a_fast_halting_leader():
    # When the first machine halts on everything immediately, the written
    # placement rules of the second cycle insert the fourth code and skip
    # the third entirely; the third machine is still simulated.
    pool = [zoo.identity(), zoo.looper(), zoo.epsilon_only(), zoo.const_zero(), zoo.last_symbol()]
    state = dovetail_nontotal(pool, 10)
    codes = [encode_machine(m) for m in pool]
    assert codes[2] not in state.order
    assert codes[3] in state.order
    assert (3, 1) in state.halted_pairs  # epsilon-only halted on the empty word
    assert state.order[0] == codes[1]  # the non-halting machine froze in front


def test_acceptance_pool_stable_prefix_is_exactly_the_non_total_codes():
    state = dovetail_nontotal(POOL, 64)
    prefix = state.stable_prefix_estimate()
    assert [NAMES[c] for c in prefix] == ["looper", "nonempty-only", "epsilon-only"]
    assert len(state.order) == 6


def test_machines_halting_on_all_probes_never_sit_in_the_stable_prefix():
    state = dovetail_nontotal(POOL, 48)
    prefix = set(state.stable_prefix_estimate())
    for name, code in zip(state.pool_names, state.codes):
        if zoo.pool_total(name):
            assert code not in prefix


def test_statically_nonhalting_machine_never_moves():
    assert never_halts_by_inspection(zoo.looper())
    looper_code = encode_machine(zoo.looper())
    for cycles in (8, 16, 64):
        state = dovetail_nontotal(POOL, cycles)
        assert state.order[0] == looper_code
        assert looper_code not in state.last_moved


def test_enumeration_report_schema():
    report = dovetail_nontotal(POOL, 8).report()
    assert list(report) == ["cycle", "list", "halted_pairs", "stable_prefix_estimate"]
    assert report["cycle"] == 8
    assert all(isinstance(pair, tuple) and len(pair) == 2 for pair in report["halted_pairs"])


# ---------------------------------------------------------------------------
# totality


def test_totality_matches_ground_truth_at_budget_64():
    for i, name in enumerate(m.name for m in POOL):
        v = totality_verdict(POOL, i, 64)
        expected = "1" if zoo.pool_total(name) else "0"
        assert v.value == expected, name
        if expected == "0":
            assert v.halted


def test_totality_converges_by_some_budget_per_machine():
    budgets = [16, 32, 48, 64]
    for i, name in enumerate(m.name for m in POOL):
        expected = "1" if zoo.pool_total(name) else "0"
        verdicts = [totality_verdict(POOL, i, b).value for b in budgets]
        settled = [b for b, v in zip(budgets, verdicts) if v == expected]
        assert settled and settled[-1] == 64
        first = settled[0]
        assert all(v == expected for b, v in zip(budgets, verdicts) if b >= first), name


def test_totality_with_zero_budget_reports_nothing():
    v = totality_verdict(POOL, 0, 0)
    assert v.value is None and v.stabilized_since is None


def test_totality_index_out_of_range():
    with pytest.raises(IndexError):
        totality_verdict(POOL, 17, 8)


# ---------------------------------------------------------------------------
# range enumerator and totalizer


def test_totalizer_of_a_total_machine_halts_on_probes():
    m = build_totalizer(encode_machine(zoo.identity()))
    for n in range(1, 9):
        assert run_fueled(m, nth_word(n), 10_000).halted


def test_totalizer_diverges_past_the_first_diverging_input():
    m = build_totalizer(encode_machine(zoo.epsilon_only()))
    assert run_fueled(m, nth_word(1), 10_000).halted
    for n in (2, 3):
        assert run_fueled(m, nth_word(n), 10_000).kind == "out-of-fuel"


def test_totalizer_outputs_the_last_value():
    m = build_totalizer(encode_machine(zoo.identity()))
    out = run_fueled(m, nth_word(4), 10_000)
    assert out.halted and out.output == nth_word(4)


def test_range_enumerator_of_empty_range_diverges():
    m = build_range_enumerator(encode_machine(zoo.looper()))
    for n in (1, 2):
        assert run_fueled(m, nth_word(n), 4000).kind == "out-of-fuel"


def test_range_enumerator_emits_distinct_range_elements():
    m = build_range_enumerator(encode_machine(zoo.identity()))
    seen = []
    for n in range(1, 5):
        out = run_fueled(m, nth_word(n), 200_000)
        assert out.halted
        seen.append(out.output)
    assert len(set(seen)) == 4


def test_range_enumerator_of_constant_machine_stops_after_one_value():
    m = build_range_enumerator(encode_machine(zoo.const_zero()))
    first = run_fueled(m, nth_word(1), 100_000)
    assert first.halted and first.output == "0"
    assert run_fueled(m, nth_word(2), 100_000).kind == "out-of-fuel"


def test_pool_equivalence_totalizer_halts_iff_base_halts_on_prefix():
    for machine in POOL:
        m = build_totalizer(encode_machine(machine))
        for k in range(1, 6):
            base_all_halt = all(zoo.pool_halts(machine.name, nth_word(i)) for i in range(1, k + 1))
            assert run_fueled(m, nth_word(k), 20_000).halted == base_all_halt, machine.name


# ---------------------------------------------------------------------------
# the output-change reduction


def test_reduction_of_alternator_is_total_on_probes():
    t = build_reduction_tm(encode_machine(zoo.alternator()), "")
    for n in range(1, 9):
        assert run_fueled(t, nth_word(n), 10_000).halted


def test_reduction_of_writer_halts_only_on_the_first_probe():
    t = build_reduction_tm(encode_machine(zoo.writer()), "")
    first = run_fueled(t, nth_word(1), 10_000)
    assert first.halted and first.output == ""  # the value before the change
    for n in (2, 3, 8):
        assert run_fueled(t, nth_word(n), 10_000).kind == "out-of-fuel"


def test_reduction_of_silent_machine_diverges_everywhere():
    t = build_reduction_tm(encode_machine(zoo.silent()), "")
    for n in range(1, 9):
        assert run_fueled(t, nth_word(n), 10_000).kind == "out-of-fuel"


def test_reduction_totality_tracks_result_giving():
    horizon = 10_000
    for machine in [zoo.alternator(), zoo.writer(), zoo.silent()]:
        defined = itm_run(machine, "", horizon).gives_result
        t = build_reduction_tm(encode_machine(machine), "")
        total = all(run_fueled(t, nth_word(n), horizon).halted for n in range(1, 9))
        assert total == (not defined), machine.name


def test_reduction_rejects_tm_codes():
    with pytest.raises(InvalidCodeError):
        build_reduction_tm(encode_machine(zoo.identity()), "")


# ---------------------------------------------------------------------------
# diagonalization


@pytest.mark.parametrize(
    "decider", [zoo.decider_yes(), zoo.decider_no(), SimDecider(64)],
    ids=["yes", "no", "sim"],
)
def test_diagonal_contradicts_every_shipped_decider(decider):
    report = diagonal_experiment(decider, 4000)
    assert report.decider_verdict in ("0", "1")
    assert report.contradiction


def test_diagonal_trace_reports_all_three_stages():
    report = diagonal_experiment(zoo.decider_no(), 2000)
    assert set(report.stage_histories) == {"checker", "decider", "filter"}
    assert report.stage_histories["checker"], "the checker must emit the program pair"


def test_diagonal_on_garbage_input_gives_no_result():
    pipeline = build_diagonal(zoo.decider_no())
    out = itm_run(pipeline, "11", 500)
    assert out.kind == "halted-nonfinal"


def test_diagonal_accepts_decider_codes():
    pipeline = build_diagonal(encode_machine(zoo.decider_yes()))
    assert pipeline.decider is not None


# ---------------------------------------------------------------------------
# order table


def test_order_values():
    expected = {"HP": 1, "AP": 1, "TP": 2, "IfP": 2, "EmP": 1, "LEmP": 1}
    for name, order in expected.items():
        assert order_lookup(name).order == order
    assert order_lookup("RPI_1").order == 2
    assert order_lookup("RPI_3").order == 4


def test_order_rows_carry_sources():
    for row in order_rows():
        assert row.source


def test_order_lookup_unknown_name():
    with pytest.raises(KeyError):
        order_lookup("XYZ")
    with pytest.raises(KeyError):
        order_lookup("RPI_0")


def test_composed_order_bound():
    assert composed_order_bound(2, 1) == 3


# ---------------------------------------------------------------------------
# limit-list memory


def test_limitlist_connections_follow_the_scheduler():
    snapshot = limitlist_memory(POOL, budget=32)
    state = dovetail_nontotal(POOL, 32)
    for j, code in enumerate(state.order, start=1):
        machine_no = state.codes.index(code) + 1
        assert snapshot.connection(f"h{j}", "m") == f"d{machine_no}"
    assert snapshot.connection("h1", "n") == "h2"
