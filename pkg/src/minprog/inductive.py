"""First-order inductive machine model: structured memory, three rule forms,
and output-register stabilization semantics.

An inductive machine keeps running after its output is written; its result
is the content of the output register once that content stops changing.
A run at a finite horizon therefore reports one of four outcomes: halted in
a final state (result), halted elsewhere (no result), output stable since
some step (result so far), or output still churning (no result so far).

Memory is a set of named cells joined by typed connections, at most one
connection per type out of any cell.  Infinite memories are lazy: a pure
generator materializes cells and connections on first access, so the
unbounded cell rows used by the scheduler constructions are representable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable

from .words import BLANK, Alphabet
from .turing import MachineTM, MachineValidationError, TmRun


# ---------------------------------------------------------------------------
# memory


class MemoryGraph:
    """Base interface: deterministic cell lookup plus register layout."""

    start: str
    conn_types: tuple[str, ...]

    def connection(self, cell: str, ctype: str) -> str | None:
        raise NotImplementedError

    def input_cell(self, i: int) -> str:
        """The i-th input register cell (0-based); raises if unavailable."""
        raise NotImplementedError

    def output_rank(self, cell: str) -> int | None:
        """Position of ``cell`` in the output register, or None."""
        raise NotImplementedError

    def initial_contents(self) -> dict[str, str]:
        return {}


class ExplicitMemory(MemoryGraph):
    """Finite memory declared cell by cell.

    The head starts at the first declared cell.  Register order is
    declaration order.
    """

    def __init__(
        self,
        cells: Iterable[tuple[str, str]],
        links: Iterable[tuple[str, str, str]],
        conn_types: Iterable[str],
    ) -> None:
        self.cells: list[tuple[str, str]] = list(cells)
        if not self.cells:
            raise MachineValidationError("explicit memory declares no cells")
        names = [c for c, _ in self.cells]
        if len(set(names)) != len(names):
            raise MachineValidationError("duplicate cell declaration")
        for _, kind in self.cells:
            if kind not in ("input", "work", "output"):
                raise MachineValidationError(f"unknown cell kind {kind!r}")
        self.conn_types = tuple(conn_types)
        self.start = names[0]
        self._names = set(names)
        self._links: dict[tuple[str, str], str] = {}
        for frm, ctype, to in links:
            if frm not in self._names or to not in self._names:
                raise MachineValidationError(f"link {frm}-{ctype}->{to} uses an undeclared cell")
            if ctype not in self.conn_types:
                raise MachineValidationError(f"link uses undeclared connection type {ctype!r}")
            if (frm, ctype) in self._links:
                raise MachineValidationError(
                    f"two connections of type {ctype!r} leave cell {frm!r}"
                )
            self._links[(frm, ctype)] = to
        self._inputs = [c for c, k in self.cells if k == "input"]
        self._output_rank = {c: i for i, (c, k) in enumerate(self.cells) if k == "output"}

    def connection(self, cell: str, ctype: str) -> str | None:
        return self._links.get((cell, ctype))

    def input_cell(self, i: int) -> str:
        if i >= len(self._inputs):
            raise MachineValidationError(
                f"input register has {len(self._inputs)} cells, word needs {i + 1}"
            )
        return self._inputs[i]

    def output_rank(self, cell: str) -> int | None:
        return self._output_rank.get(cell)

    def describe(self) -> tuple:
        return ("explicit", tuple(self.cells), tuple(sorted(self._links.items())))


_CHAIN = re.compile(r"^([iwo])(\d+)$")


class LinearMemory(MemoryGraph):
    """Three unbounded chains i0,i1,... / w0,... / o0,... generated lazily.

    Types r/l walk a chain; i/w/o jump to the head of the named chain from
    anywhere.  The head starts on i0.
    """

    conn_types = ("r", "l", "i", "w", "o")
    start = "i0"

    def connection(self, cell: str, ctype: str) -> str | None:
        if ctype in ("i", "w", "o"):
            return ctype + "0"
        m = _CHAIN.match(cell)
        if not m:
            return None
        chain, idx = m.group(1), int(m.group(2))
        if ctype == "r":
            return f"{chain}{idx + 1}"
        if ctype == "l":
            return f"{chain}{idx - 1}" if idx > 0 else None
        return None

    def input_cell(self, i: int) -> str:
        return f"i{i}"

    def output_rank(self, cell: str) -> int | None:
        m = _CHAIN.match(cell)
        if m and m.group(1) == "o":
            return int(m.group(2))
        return None

    def describe(self) -> tuple:
        return ("builtin", "linear")


# ---------------------------------------------------------------------------
# limit memory: connections asserted over time by a driving process

Driver = Callable[[int], list[tuple[str, str, str]]]
"""Maps a cycle number (1-based) to the connection assertions of that cycle."""


class LimitMemory:
    """A memory whose connections accrue from a cycle-structured driver.

    ``oracle(cell, type, budget)`` answers with the latest assertion made
    within the first ``budget`` cycles, falling back to the base graph.
    Answers depend only on (cell, type, budget), never on query order, and
    stop changing once the driver stops reasserting the pair.
    """

    def __init__(self, driver: Driver, base: MemoryGraph) -> None:
        self.driver = driver
        self.base = base
        self._cycles: list[list[tuple[str, str, str]]] = []  # per completed cycle

    def _advance_to(self, budget: int) -> None:
        while len(self._cycles) < budget:
            cycle = len(self._cycles) + 1
            self._cycles.append(list(self.driver(cycle)))

    def oracle(self, cell: str, ctype: str, budget: int) -> str | None:
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self._advance_to(budget)
        answer = self.base.connection(cell, ctype)
        for cyc in range(budget):
            for frm, typ, to in self._cycles[cyc]:
                if frm == cell and typ == ctype:
                    answer = to
        return answer

    def snapshot(self, budget: int, label: tuple | None = None) -> MemoryGraph:
        """A fixed-budget view usable as an ordinary memory graph.

        ``label`` lets a stock configuration advertise itself under a
        serializable builtin name; anonymous snapshots have no code form.
        """
        self._advance_to(budget)
        return _LimitSnapshot(self, budget, label)


class _LimitSnapshot(MemoryGraph):
    def __init__(self, limit: LimitMemory, budget: int, label: tuple | None = None) -> None:
        self.limit = limit
        self.budget = budget
        self.base = limit.base
        self.start = limit.base.start
        self.conn_types = limit.base.conn_types
        self.label = label

    def connection(self, cell: str, ctype: str) -> str | None:
        return self.limit.oracle(cell, ctype, self.budget)

    def input_cell(self, i: int) -> str:
        return self.base.input_cell(i)

    def output_rank(self, cell: str) -> int | None:
        return self.base.output_rank(cell)

    def initial_contents(self) -> dict[str, str]:
        return self.base.initial_contents()

    def describe(self) -> tuple:
        if self.label is not None:
            return self.label
        return ("limit-snapshot", self.budget, self.base.describe())


def build_limit_memory(driver: Driver, base: MemoryGraph) -> LimitMemory:
    return LimitMemory(driver, base)


# ---------------------------------------------------------------------------
# machine and rules


@dataclass(frozen=True)
class Rule:
    """One rule: optional write, optional move by connection type, new state.

    write-only, move-only and write-then-move cover the three rule forms.
    """

    state: str
    read: str
    next_state: str
    write: str | None = None
    move: str | None = None

    def __post_init__(self) -> None:
        if self.write is None and self.move is None:
            raise MachineValidationError("a rule must write, move, or both")


@dataclass(frozen=True)
class ItmOutcome:
    kind: str  # "halted-final" | "halted-nonfinal" | "stabilized" | "unstable"
    output: str | None = None
    steps: int | None = None
    last_change_step: int | None = None
    horizon: int | None = None
    change_count: int = 0

    @property
    def gives_result(self) -> bool:
        return self.kind in ("halted-final", "stabilized")

    @property
    def result(self) -> str | None:
        return self.output if self.gives_result else None


class MachineITM:
    """Deterministic first-order inductive machine."""

    kind = "itm"

    def __init__(
        self,
        name: str,
        states: Iterable[str],
        start: str,
        finals: Iterable[str],
        alphabet: Alphabet,
        rules: Iterable[Rule],
        memory: MemoryGraph,
    ) -> None:
        self.name = name
        self.states = tuple(states)
        self.start = start
        self.finals = frozenset(finals)
        self.alphabet = alphabet
        self.memory = memory
        declared = set(self.states)
        if start not in declared:
            raise MachineValidationError(f"start state {start!r} is not declared")
        for s in self.finals:
            if s not in declared:
                raise MachineValidationError(f"final state {s!r} is not declared")
        self.rules = tuple(rules)
        table: dict[tuple[str, str], Rule] = {}
        for r in self.rules:
            if r.state not in declared or r.next_state not in declared:
                raise MachineValidationError(f"rule {r.state}->{r.next_state} uses an undeclared state")
            alphabet.check_symbol(r.read)
            if r.write is not None:
                alphabet.check_symbol(r.write)
            if r.move is not None and r.move not in memory.conn_types:
                raise MachineValidationError(
                    f"rule in state {r.state!r} moves by undeclared connection type {r.move!r}"
                )
            key = (r.state, r.read)
            if key in table:
                raise MachineValidationError(
                    f"two rules share the left part ({r.state}, {r.read})"
                )
            table[key] = r
        self.table = table

    def start_run(self, input_word: str) -> "ItmRun":
        return ItmRun(self, input_word)


class ItmRun:
    """Stepper for one inductive machine on one input.

    Tracks the output register after every step; ``change_log`` records the
    value taken after each change, which is the observable the reduction
    construction consumes.
    """

    def __init__(self, machine: MachineITM, input_word: str) -> None:
        machine.alphabet.check_word(input_word)
        self.machine = machine
        self.memory = machine.memory
        self.contents: dict[str, str] = {}
        self._out_ranks: dict[int, str] = {}
        self._out_cache: str | None = ""
        for cell, sym in self.memory.initial_contents().items():
            self._set_cell(cell, sym)
        for i, ch in enumerate(input_word):
            self._set_cell(self.memory.input_cell(i), ch)
        self.head = self.memory.start
        self.state = machine.start
        self.steps = 0
        self.stopped_final = machine.start in machine.finals
        self.stopped_stuck = False
        self.change_log: list[tuple[int, str]] = [(0, self.output_word())]
        self.change_count = 0

    def _set_cell(self, cell: str, sym: str) -> None:
        if sym == BLANK:
            self.contents.pop(cell, None)
        else:
            self.contents[cell] = sym
        rank = self.memory.output_rank(cell)
        if rank is not None:
            if sym == BLANK:
                self._out_ranks.pop(rank, None)
            else:
                self._out_ranks[rank] = sym
            self._out_cache = None

    def output_word(self) -> str:
        if self._out_cache is None:
            self._out_cache = "".join(sym for _, sym in sorted(self._out_ranks.items()))
        return self._out_cache

    @property
    def last_change_step(self) -> int:
        return self.change_log[-1][0]

    def step(self) -> bool:
        """Apply the unique matching rule; False once the machine stopped."""
        if self.stopped_final or self.stopped_stuck:
            return False
        sym = self.contents.get(self.head, BLANK)
        rule = self.machine.table.get((self.state, sym))
        if rule is None:
            self.stopped_stuck = True
            return False
        wrote_output = False
        if rule.write is not None:
            self._set_cell(self.head, rule.write)
            wrote_output = self._out_cache is None
        if rule.move is not None:
            target = self.memory.connection(self.head, rule.move)
            if target is not None:
                self.head = target
            # no connection of the prescribed type: the head stays put
        self.state = rule.next_state
        self.steps += 1
        if wrote_output:
            out = self.output_word()
            if out != self.change_log[-1][1]:
                self.change_log.append((self.steps, out))
                self.change_count += 1
        if self.state in self.machine.finals:
            self.stopped_final = True
        return True


def classify_run(run, horizon: int) -> ItmOutcome:
    """Turn a driven run into its horizon outcome."""
    if run.stopped_final:
        return ItmOutcome("halted-final", output=run.output_word(), steps=run.steps)
    if run.stopped_stuck:
        return ItmOutcome("halted-nonfinal", steps=run.steps)
    last = run.last_change_step
    if last < horizon:
        return ItmOutcome(
            "stabilized",
            output=run.output_word(),
            last_change_step=last,
            horizon=horizon,
            change_count=run.change_count,
        )
    return ItmOutcome("unstable", horizon=horizon, change_count=run.change_count)


def itm_run(machine, input_word: str, horizon: int) -> ItmOutcome:
    """Classify a run at a finite horizon.

    The output register is sampled after every step.  Stabilized means the
    content last changed strictly before the horizon and survived to it;
    halting outcomes are horizon-independent once reached.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    run = machine.start_run(input_word)
    while run.steps < horizon:
        if not run.step():
            break
    return classify_run(run, horizon)


# ---------------------------------------------------------------------------
# running a TM under inductive semantics

class TmAsItm:
    """A Turing machine interpreted under inductive outcome semantics.

    The same transition table runs step for step in the TM VM; only the
    observation differs.  Halting in a final state becomes halted-final,
    getting stuck halted-nonfinal, and an unfinished run is classified by
    the history of its output tape.
    """

    kind = "tm-as-itm"

    def __init__(self, machine: MachineTM) -> None:
        self.name = f"{machine.name}@itm"
        self.tm = machine
        self.alphabet = machine.alphabet

    def start_run(self, input_word: str) -> "_TmItmRun":
        return _TmItmRun(self.tm, input_word)


class _TmItmRun:
    def __init__(self, machine: MachineTM, input_word: str) -> None:
        self.run = TmRun(machine, input_word)
        self.change_log: list[tuple[int, str]] = [(0, "")]
        self.change_count = 0
        self._seen_version = 0
        self._out_cache = ""

    @property
    def steps(self) -> int:
        return self.run.steps

    @property
    def stopped_final(self) -> bool:
        return self.run.in_final

    @property
    def stopped_stuck(self) -> bool:
        return self.run.stuck

    def output_word(self) -> str:
        if self._seen_version != self.run.output_version:
            self._seen_version = self.run.output_version
            tape = self.run.tapes[2]
            self._out_cache = "".join(sym for _, sym in sorted(tape.items()))
        return self._out_cache

    @property
    def last_change_step(self) -> int:
        return self.change_log[-1][0]

    def step(self) -> bool:
        if self.run.in_final or self.run.stuck:
            return False
        before = self.run.output_version
        advanced = self.run.step()
        if advanced and self.run.output_version != before:
            out = self.output_word()
            if out != self.change_log[-1][1]:
                self.change_log.append((self.run.steps, out))
                self.change_count += 1
        return advanced
