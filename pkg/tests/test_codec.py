import pytest

from minprog.codec import (
    InvalidCodeError,
    canonicalize_tm,
    decode_machine,
    encode_machine,
)
from minprog.turing import MachineTM, Transition, TmRun, run_fueled
from minprog.inductive import MachineITM, itm_run
from minprog.words import BINARY, BLANK, words_up_to
from minprog import zoo


def _behaviorally_equal(a, b, inputs, fuel=500):
    for w in inputs:
        ra, rb = TmRun(a, w), TmRun(b, w)
        while True:
            assert ra.configuration() == rb.configuration()
            if ra.in_final or ra.stuck or ra.steps >= fuel:
                assert (ra.in_final, ra.stuck) == (rb.in_final, rb.stuck)
                break
            ra.step(), rb.step()
    return True


def test_roundtrip_preserves_step_by_step_behavior():
    for machine in zoo.acceptance_pool() + [zoo.blocked(), zoo.halt_now(), zoo.append_zero()]:
        back = decode_machine(encode_machine(machine))
        assert isinstance(back, MachineTM)
        assert _behaviorally_equal(canonicalize_tm(machine), back, list(words_up_to(4)))


def test_roundtrip_identity_on_short_inputs():
    back = decode_machine(encode_machine(zoo.identity()))
    for w in words_up_to(4):
        assert run_fueled(back, w, 100).output == w


def test_encode_is_stable_and_distinct():
    assert encode_machine(zoo.identity()) == encode_machine(zoo.identity())
    assert encode_machine(zoo.identity()) != encode_machine(zoo.looper())


def _variant_machines():
    """A generated family of distinct canonical machines."""
    out = []
    for write in ("0", "1", BLANK):
        for move in ("L", "R", "S"):
            for final in (True, False):
                trans = (
                    Transition("a", (BLANK, BLANK, BLANK), "b", (BLANK, BLANK, write), ("S", "S", move)),
                )
                out.append(
                    MachineTM(
                        f"v-{write}{move}{final}",
                        ("a", "b"),
                        "a",
                        frozenset(["b"] if final else []),
                        BINARY,
                        trans,
                    )
                )
    return out


def test_encode_injective_across_generated_set():
    machines = _variant_machines() + zoo.acceptance_pool()
    codes = [encode_machine(m) for m in machines]
    assert len(set(codes)) == len(codes)


def test_decode_rejects_off_image_words():
    # the spec of the parse: "11" is a reserved block, never emitted
    with pytest.raises(InvalidCodeError):
        decode_machine("11")
    for junk in ["", "0", "1", "10", "0101", "0000000000", "01" * 30]:
        with pytest.raises(InvalidCodeError):
            decode_machine(junk)


def test_decode_rejects_truncations_and_extensions():
    code = encode_machine(zoo.identity())
    with pytest.raises(InvalidCodeError):
        decode_machine(code[:-2])
    with pytest.raises(InvalidCodeError):
        decode_machine(code + "00")


def test_canonicalize_renames_in_first_use_order():
    # same machine written with scrambled state names encodes identically
    rows = [
        ("zz", ("0", BLANK, BLANK), "zz", ("0", BLANK, "0"), ("R", "S", "R")),
        ("zz", ("1", BLANK, BLANK), "zz", ("1", BLANK, "1"), ("R", "S", "R")),
        ("zz", (BLANK, BLANK, BLANK), "aa", (BLANK, BLANK, BLANK), ("S", "S", "S")),
    ]
    scrambled = MachineTM(
        "scrambled",
        ("aa", "zz"),
        "zz",
        frozenset(["aa"]),
        BINARY,
        tuple(Transition(*r) for r in rows),
    )
    assert encode_machine(scrambled) == encode_machine(zoo.identity())


def test_itm_codes_roundtrip():
    for machine in [zoo.writer(), zoo.alternator(), zoo.silent(), zoo.decider_yes()]:
        back = decode_machine(encode_machine(machine))
        assert isinstance(back, MachineITM)
        a = itm_run(machine, "", 64)
        b = itm_run(back, "", 64)
        assert (a.kind, a.output, a.last_change_step) == (b.kind, b.output, b.last_change_step)
        assert encode_machine(back) == encode_machine(machine)


def test_pipeline_codes_roundtrip():
    from minprog.hierarchy import SimDecider, build_diagonal

    for decider in [zoo.decider_no(), SimDecider(64)]:
        pipeline = build_diagonal(decider)
        code = encode_machine(pipeline)
        back = decode_machine(code)
        assert back.kind == "diagonal-pipeline"
        assert encode_machine(back) == code


def test_tm_and_itm_codes_never_collide():
    tm_codes = {encode_machine(m) for m in zoo.acceptance_pool()}
    itm_codes = {encode_machine(m) for m in [zoo.writer(), zoo.alternator(), zoo.silent()]}
    assert not (tm_codes & itm_codes)
