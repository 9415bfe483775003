"""Universal interpreters: host-level machines that run program words.

A one-input program for the standard interpreter is pair(w, c(T)): the
self-delimited code of a machine followed by its input.  Program words
outside the image of the codec never halt, whatever the fuel, so they can
never witness a complexity minimum.  The two-input form used for function
tables carries the machine code alone and receives the argument separately.

Two constructions produce further interpreters from existing ones:

* wrapping prefixes every program with a fixed header, shifting all
  program lengths up by exactly the header length;
* biasing reserves the shortlex-least word of a chosen length as a
  shortcut that immediately outputs "0", diverges below that length, and
  otherwise strips its prefix and defers to the standard interpreter.

Both families stay universal, and their engineered short programs are what
make minimum-program experiments observable at small budgets: programs of
the standard interpreter are dozens of symbols long at minimum, far beyond
any exhaustive scan.
"""

from __future__ import annotations

from .words import BINARY, MalformedPairError, sd, unpair
from .turing import MachineTM, RunOutcome, run_fueled
from .inductive import ItmOutcome, TmAsItm, itm_run
from .codec import InvalidCodeError, decode_machine

WRAP_HEADER = "10"


class UniversalInterpreter:
    """Interface: one-input and two-input fueled application."""

    tag: str

    def apply(self, program: str, fuel: int) -> RunOutcome:
        raise NotImplementedError

    def apply2(self, program: str, argument: str, fuel: int) -> RunOutcome:
        raise NotImplementedError

    def _diverge(self, fuel: int) -> RunOutcome:
        return RunOutcome.of_fuel(fuel)

    def __repr__(self) -> str:
        return f"<interpreter {self.tag}>"


def _decode_tm_program(code: str) -> MachineTM | None:
    try:
        machine = decode_machine(code)
    except InvalidCodeError:
        return None
    if isinstance(machine, MachineTM) and machine.alphabet is BINARY:
        return machine
    return None


class StandardUniversal(UniversalInterpreter):
    tag = "std"

    def apply(self, program: str, fuel: int) -> RunOutcome:
        try:
            payload, code = unpair(program)
        except MalformedPairError:
            return self._diverge(fuel)
        machine = _decode_tm_program(code)
        if machine is None:
            return self._diverge(fuel)
        return run_fueled(machine, payload, fuel)

    def apply2(self, program: str, argument: str, fuel: int) -> RunOutcome:
        try:
            payload, code = unpair(program)
        except MalformedPairError:
            return self._diverge(fuel)
        if payload != "":
            return self._diverge(fuel)
        machine = _decode_tm_program(code)
        if machine is None:
            return self._diverge(fuel)
        return run_fueled(machine, argument, fuel)


class WrappedUniversal(UniversalInterpreter):
    """Serves exactly the header-prefixed copy of another interpreter."""

    def __init__(self, inner: UniversalInterpreter, header: str = WRAP_HEADER) -> None:
        if not header:
            raise ValueError("wrap header must be non-empty")
        BINARY.check_word(header)
        self.inner = inner
        self.header = header
        self.tag = f"wrap[{header}]({inner.tag})"

    @property
    def header_cost(self) -> int:
        return len(self.header)

    def apply(self, program: str, fuel: int) -> RunOutcome:
        if not program.startswith(self.header):
            return self._diverge(fuel)
        return self.inner.apply(program[len(self.header) :], fuel)

    def apply2(self, program: str, argument: str, fuel: int) -> RunOutcome:
        if not program.startswith(self.header):
            return self._diverge(fuel)
        return self.inner.apply2(program[len(self.header) :], argument, fuel)


class BiasedUniversal(UniversalInterpreter):
    """Diverges below length n, shortcuts 0^n to the output "0", and strips
    an n-symbol prefix off everything else before deferring to std."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError("bias length must be at least 1")
        self.n = n
        self.shortcut = "0" * n
        self.base = StandardUniversal()
        self.tag = f"biased[{n}]"

    def apply(self, program: str, fuel: int) -> RunOutcome:
        if len(program) < self.n:
            return self._diverge(fuel)
        if program == self.shortcut:
            return RunOutcome.of_halt("0", 0)
        return self.base.apply(program[self.n :], fuel)

    def apply2(self, program: str, argument: str, fuel: int) -> RunOutcome:
        if len(program) < self.n:
            return self._diverge(fuel)
        if program == self.shortcut:
            return RunOutcome.of_halt("0", 0)  # the constant-"0" function
        return self.base.apply2(program[self.n :], argument, fuel)


U_STD = StandardUniversal()


def wrap_universal(inner: UniversalInterpreter, header: str = WRAP_HEADER) -> WrappedUniversal:
    return WrappedUniversal(inner, header)


def make_biased_universal(n: int) -> BiasedUniversal:
    return BiasedUniversal(n)


def universal_apply(interp: UniversalInterpreter, program: str, fuel: int) -> RunOutcome:
    return interp.apply(program, fuel)


def universal_apply2(interp: UniversalInterpreter, program: str, argument: str, fuel: int) -> RunOutcome:
    return interp.apply2(program, argument, fuel)


def tm_program(machine: MachineTM, payload: str) -> str:
    """The standard one-input program computing machine(payload)."""
    from .codec import encode_machine

    return sd(encode_machine(machine)) + payload


def tm_program2(machine: MachineTM) -> str:
    """The standard two-input program word for a machine."""
    from .codec import encode_machine

    return sd(encode_machine(machine))


def parse_interpreter_spec(spec: str) -> UniversalInterpreter:
    """Interpreter grammar: ``std`` | ``biased:<n>`` | ``wrap:<inner>``."""
    spec = spec.strip()
    if spec == "std":
        return U_STD
    if spec.startswith("biased:"):
        return make_biased_universal(int(spec.split(":", 1)[1]))
    if spec.startswith("wrap:"):
        return wrap_universal(parse_interpreter_spec(spec.split(":", 1)[1]))
    raise ValueError(f"unknown interpreter spec {spec!r}")


def itm_universal_apply(program: str, input_word: str, horizon: int) -> ItmOutcome:
    """Run the machine coded by ``program`` under inductive semantics.

    Turing machine codes are accepted and run as their inductive embedding
    (same table, inductive observation).  Undecodable programs count as
    divergent: unstable at every horizon.
    """
    from .turing import MachineValidationError

    try:
        machine = decode_machine(program)
    except InvalidCodeError:
        return ItmOutcome("unstable", horizon=horizon, change_count=0)
    if isinstance(machine, MachineTM):
        machine = TmAsItm(machine)
    try:
        return itm_run(machine, input_word, horizon)
    except MachineValidationError:
        # input does not fit the machine's register layout: no run, no result
        return ItmOutcome("unstable", horizon=horizon, change_count=0)
