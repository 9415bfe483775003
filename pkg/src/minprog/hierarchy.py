"""Executable limit constructions: the list scheduler that corrals
non-total machines, budgeted halting/emptiness/totality demonstrators, the
output-change reduction, and the three-stage diagonal machine.

Every verdict these produce is labelled with the budget it was computed
under.  The tools report stabilization-so-far, never a limit fact; the only
exceptions are finite certificates such as a static proof that a machine
has no reachable way to stop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import BINARY, nth_word, shortlex_index, sd
from .turing import MachineTM, RunOutcome, TmRun, run_fueled
from .inductive import (
    ItmOutcome,
    MachineITM,
    MemoryGraph,
    TmAsItm,
    build_limit_memory,
    itm_run,
)
from .codec import InvalidCodeError, decode_machine, encode_machine


@dataclass(frozen=True)
class InductiveVerdict:
    """A budgeted answer from an inductive process: the current output
    value, the cycle it last changed at, and whether the process halted
    outright (a final answer rather than an approximation)."""

    value: str | None
    stabilized_since: int | None
    budget: int
    halted: bool = False


# ---------------------------------------------------------------------------
# the halting demonstrator


def halting_itm(code: str, input_word: str, horizon: int) -> InductiveVerdict:
    """Order-one halting demonstrator: output starts at 0 and flips to 1
    the moment the simulated machine stops.

    A 0 at the horizon means "has not halted yet", the converging
    approximation; a 1 is a finite certificate.
    """
    machine = decode_machine(code)
    if not isinstance(machine, MachineTM):
        raise InvalidCodeError("the halting demonstrator simulates Turing machine codes")
    run = TmRun(machine, input_word)
    while run.steps < horizon:
        if run.in_final or run.stuck:
            break
        if not run.step():
            break
    if run.in_final or run.stuck:
        return InductiveVerdict("1", stabilized_since=run.steps, budget=horizon)
    return InductiveVerdict("0", stabilized_since=0, budget=horizon)


# ---------------------------------------------------------------------------
# the emptiness solver


def emptiness_solver(code: str, cycles: int) -> InductiveVerdict:
    """Dovetail the machine over inputs x_1..x_n for n steps in cycle n;
    the first observed result flips the output to 0 and halts the solver,
    otherwise every completed cycle reasserts 1."""
    machine = decode_machine(code)
    if not isinstance(machine, MachineTM):
        raise InvalidCodeError("the emptiness solver simulates Turing machine codes")
    for n in range(1, cycles + 1):
        for i in range(1, n + 1):
            out = run_fueled(machine, nth_word(i), n)
            if out.halted:
                return InductiveVerdict("0", stabilized_since=n, budget=n, halted=True)
    return InductiveVerdict("1", stabilized_since=1, budget=cycles)


# ---------------------------------------------------------------------------
# the non-total list scheduler


@dataclass
class EnumerationList:
    """Snapshot of the cycle scheduler's list of machine codes.

    Machines that keep demonstrating results are repeatedly demoted to the
    back; machines with a diverging probe freeze in place.  The stable
    prefix estimate is the longest prefix whose codes have not been demoted
    for the trailing half of the run.
    """

    pool_names: tuple[str, ...]
    codes: tuple[str, ...]
    order: list[str] = field(default_factory=list)
    cycle: int = 0
    halted_pairs: set[tuple[int, int]] = field(default_factory=set)
    last_moved: dict[str, int] = field(default_factory=dict)

    def stable_prefix_estimate(self, window: int | None = None) -> list[str]:
        if self.cycle == 0:
            return []
        if window is None:
            window = max(1, self.cycle // 2)
        prefix = []
        for code in self.order:
            if self.last_moved.get(code, 0) <= self.cycle - window:
                prefix.append(code)
            else:
                break
        return prefix

    def report(self) -> dict:
        return {
            "cycle": self.cycle,
            "list": list(self.order),
            "halted_pairs": sorted(self.halted_pairs),
            "stable_prefix_estimate": self.stable_prefix_estimate(),
        }


class _Dovetail:
    """Incremental implementation of the cycle schedule.

    Cycle n simulates machines 1..n on inputs x_1..x_n, n fresh steps per
    still-active pair.  List maintenance follows the construction's stated
    rules verbatim for the first three cycles, including their peculiar
    early insertions, and the uniform rule afterwards: append the next
    code, then demote every machine that produced a result on all of its
    probed inputs this cycle, preserving relative order.  Insertions are
    idempotent so each code appears at most once.
    """

    def __init__(self, pool: list[MachineTM]) -> None:
        self.pool = pool
        self.codes = tuple(encode_machine(m) for m in pool)
        self.state = EnumerationList(
            pool_names=tuple(m.name for m in pool), codes=self.codes
        )
        # live runs: giving a pair n fresh steps each cycle is equivalent to
        # resuming its paused run up to n total steps, the machines being
        # deterministic; this keeps the schedule's cost linear per pair
        self._runs: dict[tuple[int, int], TmRun] = {}

    def _pair_halts_within(self, k: int, i: int, fuel: int) -> bool:
        run = self._runs.get((k, i))
        if run is None:
            run = TmRun(self.pool[k - 1], nth_word(i))
            self._runs[(k, i)] = run
        while run.steps < fuel and not (run.in_final or run.stuck):
            run.step()
        return run.in_final

    def _code(self, k: int) -> str | None:
        """Code of machine T_k (1-based), if the pool has it."""
        return self.codes[k - 1] if 1 <= k <= len(self.codes) else None

    def _insert(self, code: str | None, position: int | None = None) -> None:
        if code is None or code in self.state.order:
            return
        if position is None:
            self.state.order.append(code)
        else:
            self.state.order.insert(position, code)

    def _demote(self, movers: list[str], cycle: int) -> None:
        if not movers:
            return
        keep = [c for c in self.state.order if c not in movers]
        tail = [c for c in self.state.order if c in movers]
        self.state.order = keep + tail
        for c in tail:
            self.state.last_moved[c] = cycle

    def run_cycle(self) -> None:
        st = self.state
        n = st.cycle + 1
        if n == 1:
            self._insert(self._code(1))
        active = min(n, len(self.pool))
        all_halted: list[int] = []
        for k in range(1, active + 1):
            simulated = 0
            halted_all = True
            for i in range(1, n + 1):
                if (k, i) in st.halted_pairs:
                    continue
                simulated += 1
                if self._pair_halts_within(k, i, n):
                    st.halted_pairs.add((k, i))
                else:
                    halted_all = False
            if simulated and halted_all:
                all_halted.append(k)
        movers = [self.codes[k - 1] for k in all_halted]

        if n == 1:
            nxt = self._code(2)
            if movers:
                self._insert(nxt, 0)
                self._demote(movers, n)
            else:
                self._insert(nxt)
        elif n == 2:
            halted1 = 1 in all_halted
            halted2 = 2 in all_halted and len(self.pool) >= 2
            if not halted1 and not halted2:
                self._insert(self._code(3))
            elif halted1 and not halted2:
                self._insert(self._code(2), 0)
                self._demote([self.codes[0]], n)
                pos = self.state.order.index(self.codes[0])
                self._insert(self._code(4), pos)
            elif halted2 and not halted1:
                self._insert(self._code(1), 0)
                self._demote([self.codes[1]], n)
                pos = self.state.order.index(self.codes[1])
                self._insert(self._code(4), pos)
            else:
                self._insert(self._code(3), 0)
                self._demote([self.codes[0], self.codes[1]], n)
        elif n == 3:
            if not movers:
                self._insert(self._code(4))
            elif len(movers) == len(self.state.order):
                self._insert(self._code(4), 0)
                self._demote(movers, n)
            else:
                self._demote(movers, n)
                first_mover = self.state.order.index(movers[0])
                self._insert(self._code(4), first_mover)
        else:
            self._insert(self._code(n + 1))
            self._demote(movers, n)
        st.cycle = n


def dovetail_nontotal(pool: list[MachineTM], cycles: int) -> EnumerationList:
    if not pool:
        raise ValueError("the scheduler needs a non-empty machine pool")
    dov = _Dovetail(pool)
    for _ in range(cycles):
        dov.run_cycle()
    return dov.state


def totality_verdict(pool: list[MachineTM], machine_index: int, cycles: int) -> InductiveVerdict:
    """Scan the stable region of the scheduler's list for the machine's
    code: found means certified non-total-so-far (0, scanner halts), not
    found means total-so-far (1)."""
    if not 0 <= machine_index < len(pool):
        raise IndexError(f"machine index {machine_index} out of range")
    if cycles == 0:
        return InductiveVerdict(None, stabilized_since=None, budget=0)
    state = dovetail_nontotal(pool, cycles)
    target = state.codes[machine_index]
    for j, code in enumerate(state.stable_prefix_estimate(), start=1):
        if code == target:
            return InductiveVerdict("0", stabilized_since=j, budget=cycles, halted=True)
    return InductiveVerdict("1", stabilized_since=1, budget=cycles)


# ---------------------------------------------------------------------------
# range / totality transformers


class HostMachine:
    """A machine realized directly in the host language.

    Exposes the fueled-run protocol; one unit of fuel pays for one
    simulated step of the machine it is built from.  Host machines have no
    code word and are never fed back into the codecs.
    """

    name: str

    def run(self, input_word: str, fuel: int) -> RunOutcome:
        raise NotImplementedError

    def start_run(self, input_word: str):
        raise TypeError(f"{self.name} does not support stepping")


class RangeEnumerator(HostMachine):
    """On input x_n, dovetails the base machine over inputs and step counts
    and outputs the n-th distinct output value discovered; diverges when
    fewer than n values exist."""

    def __init__(self, base: MachineTM) -> None:
        self.base = base
        self.name = f"range-enum({base.name})"

    def run(self, input_word: str, fuel: int) -> RunOutcome:
        n = shortlex_index(input_word) + 1
        discovered: list[str] = []
        spent = 0
        round_no = 0
        while spent < fuel:
            round_no += 1
            for i in range(1, round_no + 1):
                out = run_fueled(self.base, nth_word(i), round_no)
                spent += out.steps if out.steps else 1
                # a pair surfaces in the first round covering both its input
                # index and its halting time; later rounds re-run it only to
                # pay the dovetailer's honest cost
                if out.halted and round_no == max(i, out.steps, 1):
                    if out.output not in discovered:
                        discovered.append(out.output)
                        if len(discovered) >= n:
                            return RunOutcome.of_halt(discovered[n - 1], min(spent, fuel))
                if spent >= fuel:
                    break
        return RunOutcome.of_fuel(fuel)


class Totalizer(HostMachine):
    """On input x_n, runs the base machine on x_1..x_n in order and outputs
    the last value; diverges as soon as any prefix input diverges."""

    def __init__(self, base: MachineTM) -> None:
        self.base = base
        self.name = f"totalizer({base.name})"

    def run(self, input_word: str, fuel: int) -> RunOutcome:
        n = shortlex_index(input_word) + 1
        spent = 0
        last = ""
        for i in range(1, n + 1):
            remaining = fuel - spent
            if remaining <= 0:
                return RunOutcome.of_fuel(fuel)
            out = run_fueled(self.base, nth_word(i), remaining)
            spent += out.steps
            if not out.halted:
                return RunOutcome.of_fuel(fuel) if out.kind == "out-of-fuel" else RunOutcome.of_stuck(spent)
            last = out.output
        return RunOutcome.of_halt(last, spent)


def build_range_enumerator(code: str) -> RangeEnumerator:
    machine = decode_machine(code)
    if not isinstance(machine, MachineTM):
        raise InvalidCodeError("range enumeration is defined for Turing machine codes")
    return RangeEnumerator(machine)


def build_totalizer(code: str) -> Totalizer:
    machine = decode_machine(code)
    if not isinstance(machine, MachineTM):
        raise InvalidCodeError("the totalizer transform is defined for Turing machine codes")
    return Totalizer(machine)


# ---------------------------------------------------------------------------
# reduction: result-giving of an inductive machine vs totality of a TM


class ReductionTM(HostMachine):
    """T built from an inductive machine M and a fixed input x.

    On input x_n it replays M on x watching the output register; at the
    n-th change of the register it halts, emitting the value the register
    held just before that change.  If fewer than n changes ever happen the
    run diverges.  T is total on the probe sequence exactly when M's output
    on x never settles, i.e. when M(x) is undefined by instability.
    """

    def __init__(self, machine, x: str) -> None:
        self.machine = machine
        self.x = x
        self.name = f"reduction({getattr(machine, 'name', 'itm')}@{x or 'ε'})"

    def run(self, input_word: str, fuel: int) -> RunOutcome:
        n = shortlex_index(input_word) + 1
        run = self.machine.start_run(self.x)
        while run.steps < fuel:
            if run.change_count >= n:
                step_of_change, _ = run.change_log[n]
                value_before = run.change_log[n - 1][1]
                return RunOutcome.of_halt(value_before, step_of_change)
            if not run.step():
                break
        if run.change_count >= n:
            step_of_change, _ = run.change_log[n]
            return RunOutcome.of_halt(run.change_log[n - 1][1], step_of_change)
        return RunOutcome.of_fuel(fuel)


def build_reduction_tm(itm_code: str, x: str) -> ReductionTM:
    machine = decode_machine(itm_code)
    if isinstance(machine, MachineTM):
        raise InvalidCodeError("the reduction expects an inductive machine code")
    return ReductionTM(machine, x)


# ---------------------------------------------------------------------------
# diagonalization: M = checker -> decider -> alternating filter


class SimDecider:
    """Shipped host-level decider: simulates the coded machine on its input
    for a fixed number of steps and answers 1 if a result was observed,
    otherwise guesses 0.  Deterministic, stabilizes after its simulation
    budget; wrong whenever results take longer than the budget."""

    kind = "builtin-decider"

    def __init__(self, sim_steps: int = 64) -> None:
        self.sim_steps = sim_steps
        self.name = f"decider-sim-{sim_steps}"

    def start_run(self, input_word: str) -> "_SimDeciderRun":
        return _SimDeciderRun(self, input_word)


class _SimDeciderRun:
    def __init__(self, decider: SimDecider, input_word: str) -> None:
        self.decider = decider
        self.steps = 0
        self.stopped_final = False
        self.stopped_stuck = False
        self.change_log: list[tuple[int, str]] = [(0, "")]
        self.change_count = 0
        self._output = ""
        self._inner = None
        self._invalid = False
        from .turing import MachineValidationError
        from .words import InvalidWordError, MalformedPairError, unpair

        try:
            payload, code = unpair(input_word)
            machine = decode_machine(code)
            if isinstance(machine, MachineTM):
                machine = TmAsItm(machine)
            self._inner = machine.start_run(payload)
        except (MalformedPairError, InvalidCodeError, InvalidWordError, MachineValidationError):
            self._inner = None
            self._invalid = True

    def output_word(self) -> str:
        return self._output

    @property
    def last_change_step(self) -> int:
        return self.change_log[-1][0]

    def step(self) -> bool:
        self.steps += 1
        budget = self.decider.sim_steps
        if self.steps <= budget and self._inner is not None:
            if not (self._inner.stopped_final or self._inner.stopped_stuck):
                self._inner.step()
        if self.steps == budget:
            self._output = "1" if self._inner_gives_result() else "0"
            if self._output != self.change_log[-1][1]:
                self.change_log.append((self.steps, self._output))
                self.change_count += 1
        return True

    def _inner_gives_result(self) -> bool:
        if self._invalid or self._inner is None:
            return False
        inner = self._inner
        if inner.stopped_final:
            return True
        if inner.stopped_stuck:
            return False
        return inner.last_change_step < self.decider.sim_steps


BUILTIN_DECIDERS: tuple[tuple[str, int], ...] = (("sim-64", 64),)


def builtin_decider(index: int) -> SimDecider:
    if not 0 <= index < len(BUILTIN_DECIDERS):
        raise InvalidCodeError(f"unknown builtin decider {index}")
    return SimDecider(BUILTIN_DECIDERS[index][1])


class DiagonalPipeline:
    """The composed machine: a checker that validates its input word as a
    machine code and duplicates it into a program pair, the candidate
    decider, and the alternating filter that turns the decider's claims
    into the opposite observable behavior.

    Composition is streamed: the checker emits one symbol per step, the
    decider then advances one step per step with its output register
    sampled continuously, and the filter re-emits on every step.  The
    pipeline's output register is the filter's.
    """

    kind = "diagonal-pipeline"

    def __init__(self, decider: MachineITM | None, decider_builtin: int | None = None) -> None:
        if (decider is None) == (decider_builtin is None):
            raise ValueError("exactly one of decider / decider_builtin must be given")
        self.decider = decider
        self.decider_builtin = decider_builtin
        runtime = decider if decider is not None else builtin_decider(decider_builtin)
        self._runtime_decider = runtime
        self.name = f"diagonal({getattr(runtime, 'name', 'decider')})"
        self.alphabet = BINARY

    def start_run(self, input_word: str) -> "_PipelineRun":
        return _PipelineRun(self, input_word)


class _PipelineRun:
    def __init__(self, pipeline: DiagonalPipeline, input_word: str) -> None:
        BINARY.check_word(input_word)
        self.pipeline = pipeline
        self.input_word = input_word
        self.steps = 0
        self.stopped_final = False
        self.stopped_stuck = False
        self.change_log: list[tuple[int, str]] = [(0, "")]
        self.change_count = 0
        self._output = ""
        self._alt = False
        try:
            decode_machine(input_word)
            self._valid = True
        except InvalidCodeError:
            self._valid = False
        self._pair_word = sd(input_word) + input_word
        self._b_latency = (3 * len(input_word) + 2) if self._valid else (len(input_word) + 1)
        self._d_run = None
        self.b_events: list[tuple[int, str]] = []
        self.d_events: list[tuple[int, str]] = [(0, "")]
        self.ac_events: list[tuple[int, str]] = [(0, "")]

    def output_word(self) -> str:
        return self._output

    @property
    def last_change_step(self) -> int:
        return self.change_log[-1][0]

    def _record_output(self, value: str) -> None:
        if value != self._output:
            self._output = value
            self.change_log.append((self.steps, value))
            self.ac_events.append((self.steps, value))
            self.change_count += 1

    def step(self) -> bool:
        if self.stopped_final or self.stopped_stuck:
            return False
        self.steps += 1
        if self.steps < self._b_latency:
            pass  # checker still copying
        elif self.steps == self._b_latency:
            if not self._valid:
                self.stopped_stuck = True
                return False
            self.b_events.append((self.steps, self._pair_word))
            self._d_run = self.pipeline._runtime_decider.start_run(self._pair_word)
        else:
            d = self._d_run
            if not (d.stopped_final or d.stopped_stuck):
                d.step()
            d_out = d.output_word()
            if not self.d_events or self.d_events[-1][1] != d_out:
                self.d_events.append((self.steps, d_out))
        d_out = self._d_run.output_word() if self._d_run is not None else ""
        if d_out == "0":
            self._record_output("1")
        else:
            self._alt = not self._alt
            self._record_output("1" if self._alt else "0")
        return True


def build_diagonal(decider) -> DiagonalPipeline:
    """Build the composed machine from a decider given as an inductive
    machine, its code word, or a shipped builtin decider."""
    if isinstance(decider, str):
        machine = decode_machine(decider)
        if not isinstance(machine, MachineITM):
            raise InvalidCodeError("the diagonal construction takes an inductive decider code")
        return DiagonalPipeline(machine)
    if isinstance(decider, MachineITM):
        return DiagonalPipeline(decider)
    if isinstance(decider, SimDecider):
        index = next(
            i for i, (_, steps) in enumerate(BUILTIN_DECIDERS) if steps == decider.sim_steps
        )
        return DiagonalPipeline(None, decider_builtin=index)
    raise TypeError(f"cannot build a diagonal machine from {decider!r}")


def build_diagonal_from_slot(decider: MachineITM | None = None, builtin: int | None = None) -> DiagonalPipeline:
    return DiagonalPipeline(decider, decider_builtin=builtin)


@dataclass(frozen=True)
class DiagonalReport:
    decider_name: str
    code: str
    decider_verdict: str | None
    machine_gives_result: bool
    machine_outcome: ItmOutcome
    contradiction: bool
    stage_histories: dict


def diagonal_experiment(decider, horizon: int) -> DiagonalReport:
    """Run the composed machine on its own code and compare with the
    decider's standalone claim about that very run."""
    from .inductive import classify_run

    pipeline = build_diagonal(decider)
    code = encode_machine(pipeline)
    run = pipeline.start_run(code)
    while run.steps < horizon:
        if not run.step():
            break
    own_run_outcome = classify_run(run, horizon)
    probe = sd(code) + code
    decider_outcome = itm_run(pipeline._runtime_decider, probe, horizon)
    verdict = decider_outcome.result
    gives = own_run_outcome.gives_result
    contradiction = (verdict == "1" and not gives) or (verdict == "0" and gives)
    histories = {
        "checker": run.b_events,
        "decider": run.d_events,
        "filter": run.ac_events,
    }
    return DiagonalReport(
        decider_name=pipeline.name,
        code=code,
        decider_verdict=verdict,
        machine_gives_result=gives,
        machine_outcome=own_run_outcome,
        contradiction=contradiction,
        stage_histories=histories,
    )


# ---------------------------------------------------------------------------
# the static order table


ORDER_TABLE: dict[str, tuple[int, str]] = {
    "HP": (1, "Thm 8.1"),
    "AP": (1, "Cor 8.1"),
    "TP": (2, "Thm 8.6"),
    "IfP": (2, "Thm 8.7"),
    "EmP": (1, "Thm 8.8"),
    "LEmP": (1, "Cor 8.3"),
}


@dataclass(frozen=True)
class OrderRow:
    problem: str
    order: int
    source: str


def order_lookup(problem_name: str) -> OrderRow:
    """Strict inductive order of a named problem, with its source label.

    RPI_n rows are parameterized: the result problem for order-n inductive
    machines sits at level n+1.
    """
    name = problem_name.strip()
    if name in ORDER_TABLE:
        order, source = ORDER_TABLE[name]
        return OrderRow(name, order, source)
    if name.startswith("RPI_"):
        n = int(name[4:])
        if n < 1:
            raise KeyError(name)
        return OrderRow(name, n + 1, "Thm 8.2")
    raise KeyError(f"unknown problem {problem_name!r}")


def order_rows() -> list[OrderRow]:
    rows = [order_lookup(name) for name in ORDER_TABLE]
    rows.append(order_lookup("RPI_1"))
    rows.append(order_lookup("RPI_2"))
    rows.append(order_lookup("RPI_3"))
    return rows


def composed_order_bound(solver_order: int, reducer_order: int) -> int:
    """Upper bound on the order of a problem solved through a reduction."""
    return solver_order + reducer_order


# ---------------------------------------------------------------------------
# builtin limit-backed memories


THM72_DEFAULT_BUDGET = 64


class _Thm72Base(MemoryGraph):
    """Start cell, a marker cell, an unbounded probe row, and an input
    chain.  The probe row is walked by t-connections; p-connections into
    the marker cell are supplied by a driving process."""

    conn_types = ("t", "p", "o", "r", "l", "i")
    start = "c0"

    def connection(self, cell: str, ctype: str) -> str | None:
        if ctype == "o":
            return "out0"
        if ctype == "i":
            return "i0"
        if ctype == "t":
            if cell == "c0":
                return "a0"
            if cell.startswith("a"):
                return f"a{int(cell[1:]) + 1}"
            return None
        if ctype in ("r", "l") and cell.startswith("i"):
            idx = int(cell[1:])
            if ctype == "r":
                return f"i{idx + 1}"
            return f"i{idx - 1}" if idx > 0 else None
        return None

    def input_cell(self, i: int) -> str:
        return f"i{i}"

    def output_rank(self, cell: str) -> int | None:
        return 0 if cell == "out0" else None

    def initial_contents(self) -> dict[str, str]:
        return {"c1": "1"}

    def describe(self) -> tuple:
        return ("builtin", "thm72")


def _pool_halt_detection_cycle(machine: MachineTM, max_cycles: int) -> int | None:
    """First dovetail cycle at which the machine demonstrates a result."""
    for n in range(1, max_cycles + 1):
        for i in range(1, n + 1):
            if run_fueled(machine, nth_word(i), n).halted:
                return n
    return None


def thm72_memory(pool: list[MachineTM] | None = None, budget: int = THM72_DEFAULT_BUDGET) -> MemoryGraph:
    """Probe-row memory over a machine pool: cell a_k links to the marker
    exactly when pool machine k+1 demonstrates a result within the
    dovetail allowance of the budget."""
    default_pool = None
    if pool is None:
        from .zoo import acceptance_pool

        pool = default_pool = acceptance_pool()
    detections = [_pool_halt_detection_cycle(m, budget) for m in pool]

    def driver(cycle: int) -> list[tuple[str, str, str]]:
        return [
            (f"a{k}", "p", "c1")
            for k, det in enumerate(detections)
            if det == cycle
        ]

    limit = build_limit_memory(driver, _Thm72Base())
    label = ("builtin", "thm72") if pool is default_pool and budget == THM72_DEFAULT_BUDGET else None
    return limit.snapshot(budget, label=label)


class _LimitListBase(MemoryGraph):
    """Hypercell chain h1, h2, ... walked by n-connections; m-connections
    point each position at the landmark cell of the machine currently
    listed there."""

    conn_types = ("n", "m", "r", "l", "i")
    start = "h1"

    def connection(self, cell: str, ctype: str) -> str | None:
        if ctype == "n" and cell.startswith("h"):
            return f"h{int(cell[1:]) + 1}"
        if ctype == "i":
            return "i0"
        if ctype in ("r", "l") and cell.startswith("i"):
            idx = int(cell[1:])
            if ctype == "r":
                return f"i{idx + 1}"
            return f"i{idx - 1}" if idx > 0 else None
        return None

    def input_cell(self, i: int) -> str:
        return f"i{i}"

    def output_rank(self, cell: str) -> int | None:
        return None

    def describe(self) -> tuple:
        return ("builtin", "limitlist")


def limitlist_memory(pool: list[MachineTM] | None = None, budget: int = THM72_DEFAULT_BUDGET) -> MemoryGraph:
    default_pool = None
    if pool is None:
        from .zoo import acceptance_pool

        pool = default_pool = acceptance_pool()
    dov = _Dovetail(pool)
    code_to_machine = {code: k + 1 for k, code in enumerate(dov.codes)}

    per_cycle: list[list[tuple[str, str, str]]] = []
    for _ in range(budget):
        dov.run_cycle()
        per_cycle.append(
            [
                (f"h{j}", "m", f"d{code_to_machine[code]}")
                for j, code in enumerate(dov.state.order, start=1)
            ]
        )

    def driver(cycle: int) -> list[tuple[str, str, str]]:
        if 1 <= cycle <= len(per_cycle):
            return per_cycle[cycle - 1]
        return []

    limit = build_limit_memory(driver, _LimitListBase())
    label = ("builtin", "limitlist") if pool is default_pool and budget == THM72_DEFAULT_BUDGET else None
    return limit.snapshot(budget, label=label)


def builtin_limit_backed_memory(name: str) -> MemoryGraph:
    if name == "thm72":
        return thm72_memory()
    if name == "limitlist":
        return limitlist_memory()
    raise ValueError(f"unknown limit-backed memory {name!r}")
