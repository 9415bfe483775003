"""Budgeted minimum-program searches and the experiments built on them.

The central operation scans every program word up to a length cap in
shortlex order, runs it under a machine class's universal interpreter with
a fuel or horizon bound, and returns the length of the first program whose
output satisfies the predicate.  A full length tier is always finished
before a verdict is fixed, so the reported witness is the shortlex-least
program of minimal length no matter how candidates were scheduled.

Nothing here ever claims a true infinity: a failed search is reported as
no-witness-within-budget, and every verdict carries the budget it is
relative to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .words import BINARY, MalformedPairError, unpair, words_of_length
from .turing import MachineTM, MachineValidationError, run_fueled
from .inductive import TmAsItm, itm_run
from .predicates import Predicate, PredicateSet, eval_set


@dataclass(frozen=True)
class Budget:
    """Search bounds: program length cap, per-run fuel, and, for inductive
    classes, the stabilization horizon."""

    max_len: int
    fuel: int
    horizon: int | None = None

    def __post_init__(self) -> None:
        if self.max_len < 0:
            raise ValueError("max_len must be non-negative")
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
        if self.horizon is not None and self.horizon < 1:
            raise ValueError("horizon must be at least 1")

    def as_dict(self) -> dict:
        return {"max_len": self.max_len, "fuel": self.fuel, "horizon": self.horizon}


@dataclass(frozen=True)
class ComplexityVerdict:
    kind: str  # "finite" | "no-witness-within-budget"
    value: int | None = None
    witness: str | None = None
    programs_scanned: int = 0
    runs_halted: int = 0

    @property
    def finite(self) -> bool:
        return self.kind == "finite"


def verdict_le(a: ComplexityVerdict, b: ComplexityVerdict) -> bool:
    """Order with every finite value below no-witness."""
    if a.finite:
        return (not b.finite) or a.value <= b.value
    return not b.finite


@dataclass(frozen=True)
class FunctionTable:
    """A finite probe table (x_i, f(x_i)) standing in for a function."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if not self.pairs:
            raise ValueError("a function table needs at least one probe")
        seen: dict[str, str] = {}
        for x, fx in self.pairs:
            BINARY.check_word(x)
            BINARY.check_word(fx)
            if x in seen and seen[x] != fx:
                raise ValueError(f"contradictory table entries for {x!r}")
            seen[x] = fx


# ---------------------------------------------------------------------------
# machine classes

ITM_EMBED_HEADER = "10"


@dataclass(frozen=True)
class MachineClassHandle:
    """A class of machines reduced to what the searches need: run a program
    word under the class's universal interpreter and report the produced
    word, or None when the class's run semantics give no result."""

    tag: str
    produce: Callable[[str, Budget], str | None] = field(compare=False)
    produce2: Callable[[str, str, Budget], str | None] = field(compare=False)


def tm_class(interp=None) -> MachineClassHandle:
    """Turing machines: a result is a halting run's output."""
    if interp is None:
        from .universal import U_STD

        interp = U_STD

    def produce(program: str, budget: Budget) -> str | None:
        out = interp.apply(program, budget.fuel)
        return out.output if out.halted else None

    def produce2(program: str, argument: str, budget: Budget) -> str | None:
        out = interp.apply2(program, argument, budget.fuel)
        return out.output if out.halted else None

    return MachineClassHandle(f"tm[{interp.tag}]", produce, produce2)


def itm1_class(tm_interp=None, horizon_default: int | None = None) -> MachineClassHandle:
    """First-order inductive machines.

    Program space: a fixed two-symbol header followed by any Turing-class
    program (the class contains the Turing machines, at a constant cost of
    exactly the header length), or a self-delimited inductive machine code
    followed by its input.  The two regions cannot collide because the
    header is never a valid start of a self-delimiting prefix.  A result is
    a halting-final or stabilized-at-horizon output.
    """
    if tm_interp is None:
        from .universal import U_STD

        tm_interp = U_STD
    from .codec import InvalidCodeError, decode_machine

    def run_region(program: str, argument: str | None, budget: Budget) -> str | None:
        horizon = budget.horizon or horizon_default or budget.fuel
        try:
            payload, code = unpair(program)
        except MalformedPairError:
            return None
        if argument is not None:
            if payload != "":
                return None
            payload = argument
        try:
            machine = decode_machine(code)
        except InvalidCodeError:
            return None
        if isinstance(machine, MachineTM):
            machine = TmAsItm(machine)
        try:
            outcome = itm_run(machine, payload, horizon)
        except MachineValidationError:
            return None
        return outcome.result

    def produce(program: str, budget: Budget) -> str | None:
        if program.startswith(ITM_EMBED_HEADER):
            out = tm_interp.apply(program[len(ITM_EMBED_HEADER) :], budget.fuel)
            return out.output if out.halted else None
        return run_region(program, None, budget)

    def produce2(program: str, argument: str, budget: Budget) -> str | None:
        if program.startswith(ITM_EMBED_HEADER):
            out = tm_interp.apply2(program[len(ITM_EMBED_HEADER) :], argument, budget.fuel)
            return out.output if out.halted else None
        return run_region(program, argument, budget)

    return MachineClassHandle(f"itm1[{tm_interp.tag}]", produce, produce2)


K_EMBED = len(ITM_EMBED_HEADER)


def compose_postprocess(base: MachineClassHandle, post: MachineTM) -> MachineClassHandle:
    """The class whose interpreter pipes every produced word through a
    post-processing machine; a post run that fails to halt within fuel
    makes the whole run divergent."""

    def produce(program: str, budget: Budget) -> str | None:
        word = base.produce(program, budget)
        if word is None:
            return None
        out = run_fueled(post, word, budget.fuel)
        return out.output if out.halted else None

    def produce2(program: str, argument: str, budget: Budget) -> str | None:
        word = base.produce2(program, argument, budget)
        if word is None:
            return None
        out = run_fueled(post, word, budget.fuel)
        return out.output if out.halted else None

    return MachineClassHandle(f"{base.tag}+{post.name}", produce, produce2)


# ---------------------------------------------------------------------------
# searches


def bounded_problem_complexity(
    handle: MachineClassHandle, predicate: Predicate, budget: Budget
) -> ComplexityVerdict:
    """Minimum program length whose produced word satisfies the predicate."""
    scanned = 0
    halted = 0
    for length in range(budget.max_len + 1):
        best: str | None = None
        for program in words_of_length(length):
            scanned += 1
            word = handle.produce(program, budget)
            if word is None:
                continue
            halted += 1
            if best is None and predicate(word):
                best = program
        if best is not None:
            return ComplexityVerdict("finite", length, best, scanned, halted)
    return ComplexityVerdict("no-witness-within-budget", None, None, scanned, halted)


def bounded_set_problem_complexity(
    handle: MachineClassHandle, pset: PredicateSet, budget: Budget
) -> ComplexityVerdict:
    conj = Predicate(
        "all-of(" + ",".join(p.name for p in pset.members) + ")",
        lambda w: eval_set(pset, w),
    )
    return bounded_problem_complexity(handle, conj, budget)


def bounded_kolmogorov(handle: MachineClassHandle, target: str, budget: Budget) -> ComplexityVerdict:
    """Minimum program length producing exactly the target word."""
    scanned = 0
    halted = 0
    for length in range(budget.max_len + 1):
        best: str | None = None
        for program in words_of_length(length):
            scanned += 1
            word = handle.produce(program, budget)
            if word is None:
                continue
            halted += 1
            if best is None and word == target:
                best = program
        if best is not None:
            return ComplexityVerdict("finite", length, best, scanned, halted)
    return ComplexityVerdict("no-witness-within-budget", None, None, scanned, halted)


def bounded_functional_complexity(
    handle: MachineClassHandle, table: FunctionTable, budget: Budget
) -> ComplexityVerdict:
    """Minimum program length computing the whole probe table."""
    scanned = 0
    halted = 0
    for length in range(budget.max_len + 1):
        best: str | None = None
        for program in words_of_length(length):
            scanned += 1
            results = [handle.produce2(program, x, budget) for x, _ in table.pairs]
            if any(r is not None for r in results):
                halted += 1
            if best is None and all(
                r == fx for r, (_, fx) in zip(results, table.pairs)
            ):
                best = program
        if best is not None:
            return ComplexityVerdict("finite", length, best, scanned, halted)
    return ComplexityVerdict("no-witness-within-budget", None, None, scanned, halted)


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class GapRow:
    predicate: str
    first: ComplexityVerdict
    second: ComplexityVerdict

    @property
    def comparable(self) -> bool:
        return self.first.finite and self.second.finite


@dataclass(frozen=True)
class InvarianceResult:
    """Least k with C_second <= C_first + k over the comparable rows."""

    gap: int
    rows: tuple[GapRow, ...]
    skipped: tuple[str, ...]  # predicates finite on at most one side


def invariance_gap(
    first_interp, second_interp, family: Sequence[Predicate], budget: Budget
) -> InvarianceResult:
    h1 = tm_class(first_interp)
    h2 = tm_class(second_interp)
    rows = []
    skipped = []
    gap = 0
    for pred in family:
        v1 = bounded_problem_complexity(h1, pred, budget)
        v2 = bounded_problem_complexity(h2, pred, budget)
        row = GapRow(pred.name, v1, v2)
        rows.append(row)
        if row.comparable:
            gap = max(gap, v2.value - v1.value)
        elif v1.finite or v2.finite:
            skipped.append(pred.name)
    return InvarianceResult(gap, tuple(rows), tuple(skipped))


def growth_profile(
    handle: MachineClassHandle,
    family: Callable[[int], Predicate],
    n_values: Iterable[int],
    budget: Budget,
) -> list[tuple[int, ComplexityVerdict]]:
    return [(n, bounded_problem_complexity(handle, family(n), budget)) for n in n_values]


# ---------------------------------------------------------------------------
# reports


def verdict_report(
    verdict: ComplexityVerdict,
    budget: Budget,
    class_tag: str,
    predicate_name: str,
) -> dict:
    """The stable JSON shape for one search result."""
    return {
        "kind": verdict.kind,
        "value": verdict.value,
        "witness": verdict.witness,
        "budget": budget.as_dict(),
        "class": class_tag,
        "predicate": predicate_name,
        "programs_scanned": verdict.programs_scanned,
        "runs_halted": verdict.runs_halted,
    }
