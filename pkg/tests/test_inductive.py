import pytest

from minprog.inductive import (
    ExplicitMemory,
    ItmRun,
    MachineITM,
    Rule,
    TmAsItm,
    build_limit_memory,
    itm_run,
)
from minprog.turing import MachineValidationError, run_fueled
from minprog.universal import itm_universal_apply
from minprog.codec import encode_machine
from minprog.words import BINARY, BLANK, words_up_to
from minprog import zoo


def _single_cell_machine(rules, cells=None, conn_types=(), states=("q0", "q1", "q2")):
    memory = ExplicitMemory(
        cells or [("c", "work"), ("d", "work")],
        [("c", t, "d") for t in conn_types],
        conn_types,
    )
    return MachineITM("t", states, "q0", (), BINARY, rules, memory)


def test_write_rule_sets_cell_and_state_without_moving():
    m = _single_cell_machine([Rule("q0", BLANK, "q1", write="1")])
    run = m.start_run("")
    run.step()
    assert run.contents["c"] == "1"
    assert run.state == "q1"
    assert run.head == "c"


def test_move_rule_with_missing_connection_keeps_head_but_changes_state():
    m = _single_cell_machine([Rule("q0", BLANK, "q2", move="t")], conn_types=("t",))
    # remove the connection by using a type with no link from c
    memory = ExplicitMemory([("c", "work")], [], ("t",))
    m = MachineITM("t", ("q0", "q2"), "q0", (), BINARY, [Rule("q0", BLANK, "q2", move="t")], memory)
    run = m.start_run("")
    run.step()
    assert run.head == "c"
    assert run.state == "q2"


def test_write_then_move_rule_does_both():
    m = _single_cell_machine(
        [Rule("q0", BLANK, "q2", write="0", move="t")], conn_types=("t",)
    )
    run = m.start_run("")
    run.step()
    assert run.contents["c"] == "0"
    assert run.head == "d"
    assert run.state == "q2"


def test_stopping_without_rule_is_an_outcome_not_an_error():
    m = _single_cell_machine([Rule("q0", BLANK, "q1", write="1")])
    out = itm_run(m, "", 10)
    assert out.kind == "halted-nonfinal"
    assert out.steps == 1


def test_duplicate_rule_left_parts_rejected():
    with pytest.raises(MachineValidationError, match="share the left part"):
        _single_cell_machine(
            [Rule("q0", BLANK, "q1", write="1"), Rule("q0", BLANK, "q2", write="0")]
        )


def test_undeclared_connection_type_rejected():
    with pytest.raises(MachineValidationError, match="undeclared connection type"):
        _single_cell_machine([Rule("q0", BLANK, "q1", move="zz")])


def test_writer_stabilizes_at_step_three():
    for horizon in (4, 10, 1000):
        out = itm_run(zoo.writer(), "", horizon)
        assert out.kind == "stabilized"
        assert out.output == "1"
        assert out.last_change_step == 3
        assert out.horizon == horizon


def test_alternator_never_stabilizes():
    out = itm_run(zoo.alternator(), "", 101)
    assert out.kind == "unstable"
    assert out.change_count == 101


def test_silent_machine_counts_as_stabilized_on_empty_from_step_zero():
    out = itm_run(zoo.silent(), "", 64)
    assert out.kind == "stabilized"
    assert out.output == ""
    assert out.last_change_step == 0


def test_horizon_monotonicity_for_stabilized_outcomes():
    base = itm_run(zoo.writer(), "", 16)
    for h in (17, 64, 256):
        later = itm_run(zoo.writer(), "", h)
        assert later.kind == "stabilized"
        assert later.output == base.output
        assert later.last_change_step == base.last_change_step


def test_halting_outcomes_are_horizon_independent():
    probe = TmAsItm(zoo.identity())
    first = itm_run(probe, "01", 50)
    assert first.kind == "halted-final"
    for h in (first.steps + 1, 100, 5000):
        again = itm_run(probe, "01", h)
        assert again == first


def test_tm_embedding_fidelity_on_pool():
    for machine in zoo.acceptance_pool():
        embedded = TmAsItm(machine)
        for x in words_up_to(3):
            direct = run_fueled(machine, x, 400)
            inductive = itm_run(embedded, x, 400)
            if direct.kind == "halted":
                assert inductive.kind == "halted-final"
                assert inductive.output == direct.output
            elif direct.kind == "no-result":
                assert inductive.kind == "halted-nonfinal"
            else:
                assert inductive.kind in ("stabilized", "unstable")


def test_itm_universal_apply_matches_direct_run():
    code = encode_machine(zoo.writer())
    out = itm_universal_apply(code, "", 100)
    direct = itm_run(zoo.writer(), "", 100)
    assert (out.kind, out.output) == (direct.kind, direct.output)


def test_itm_universal_apply_invalid_code_diverges():
    for horizon in (1, 10, 1000):
        out = itm_universal_apply("11", "", horizon)
        assert out.kind == "unstable"


def test_itm_universal_apply_accepts_tm_codes_as_embeddings():
    code = encode_machine(zoo.identity())
    out = itm_universal_apply(code, "10", 400)
    assert out.kind == "halted-final"
    assert out.output == "10"


def test_input_register_grows_lazily_on_linear_memory():
    long_word = "01" * 40
    run = ItmRun(zoo.decider_yes(), long_word)
    assert run.contents[run.memory.input_cell(79)] == "1"


def test_explicit_input_register_is_bounded():
    with pytest.raises(MachineValidationError, match="input register"):
        itm_run(zoo.alternator(), "00", 10)


# ---------------------------------------------------------------------------
# limit memory


class _Base(ExplicitMemory):
    pass


def _base_memory():
    return ExplicitMemory(
        [("a_5", "work"), ("c_1", "work"), ("x", "work")],
        [("a_5", "t", "x")],
        ("t", "p"),
    )


def test_limit_memory_reports_driver_assertions_by_budget():
    def driver(cycle):
        if cycle == 3:
            return [("a_5", "p", "c_1")]
        return []

    limit = build_limit_memory(driver, _base_memory())
    assert limit.oracle("a_5", "p", 2) is None
    assert limit.oracle("a_5", "p", 3) == "c_1"
    assert limit.oracle("a_5", "p", 7) == "c_1"
    # base connections survive at every budget
    assert limit.oracle("a_5", "t", 0) == "x"


def test_empty_driver_is_the_base_graph_at_every_budget():
    limit = build_limit_memory(lambda cycle: [], _base_memory())
    for budget in (0, 1, 5, 20):
        assert limit.oracle("a_5", "t", budget) == "x"
        assert limit.oracle("a_5", "p", budget) is None


def test_limit_memory_answers_do_not_depend_on_query_order():
    def driver(cycle):
        return [("a_5", "p", "c_1")] if cycle == 2 else []

    first = build_limit_memory(driver, _base_memory())
    a = (first.oracle("a_5", "p", 5), first.oracle("a_5", "p", 1))
    second = build_limit_memory(driver, _base_memory())
    b = (second.oracle("a_5", "p", 1), second.oracle("a_5", "p", 5))
    assert a == (b[1], b[0])


def test_thm72_memory_tracks_pool_halting():
    from minprog.hierarchy import thm72_memory

    pool = zoo.acceptance_pool()
    snapshot = thm72_memory(pool, budget=64)
    for k, machine in enumerate(pool):
        connected = snapshot.connection(f"a{k}", "p") == "c1"
        demonstrates = any(
            run_fueled(machine, w, 64).halted for w in words_up_to(4)
        )
        assert connected == demonstrates, machine.name
