"""Total decidable predicates on words, predicate sets, and implications.

Every predicate here terminates on every word: predicates that quote a
machine or an interpreter carry an explicit budget as a parameter, which is
what makes them total.  Implications between predicates are registered only
after an exhaustive check on all words up to a stated length, so the
shipped registry is sound by verification, not by declaration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .words import BINARY, Alphabet, shortlex_le, shortlex_lt, words_up_to


class PredicateConstructionError(ValueError):
    """Unknown builtin name or malformed parameters."""


class ImplicationViolation(ValueError):
    """A registered implication failed on a counterexample word."""


@dataclass(frozen=True)
class Predicate:
    """A named total check on words.

    ``taxonomy`` classifies the problem the predicate poses when handed to
    a solver: detection (test a given word), construction (build a
    witness), or preservation; the tag is metadata only.
    """

    name: str
    fn: Callable[[str], bool] = field(compare=False)
    taxonomy: str = "construction"

    def __call__(self, word: str) -> bool:
        return bool(self.fn(word))

    def eval(self, word: str) -> bool:
        return self(word)


@dataclass(frozen=True)
class PredicateSet:
    members: tuple[Predicate, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise PredicateConstructionError("a predicate set must be non-empty")


def eval_set(pset: PredicateSet, word: str) -> bool:
    return all(p(word) for p in pset.members)


# ---------------------------------------------------------------------------
# builtin families


def any_word() -> Predicate:
    return Predicate("anyword", lambda w: True)


def non_empty() -> Predicate:
    return Predicate("nonempty", lambda w: w != "")


def equals(u: str, alphabet: Alphabet = BINARY) -> Predicate:
    alphabet.check_word(u)
    return Predicate(f"equals:{u}", lambda w: w == u)


def leq(z: str, alphabet: Alphabet = BINARY) -> Predicate:
    alphabet.check_word(z)
    return Predicate(f"leq:{z}", lambda w: shortlex_le(w, z, alphabet))


def geq(z: str, alphabet: Alphabet = BINARY) -> Predicate:
    alphabet.check_word(z)
    return Predicate(f"geq:{z}", lambda w: shortlex_le(z, w, alphabet))


def lt(z: str, alphabet: Alphabet = BINARY) -> Predicate:
    alphabet.check_word(z)
    return Predicate(f"lt:{z}", lambda w: shortlex_lt(w, z, alphabet))


def contains_factor(z: str, alphabet: Alphabet = BINARY) -> Predicate:
    """The word contains z as a contiguous factor."""
    alphabet.check_word(z)
    return Predicate(f"factor:{z}", lambda w: z in w)


def is_factor_of(z: str, alphabet: Alphabet = BINARY) -> Predicate:
    """The word occurs inside the fixed word z."""
    alphabet.check_word(z)
    return Predicate(f"infactor:{z}", lambda w: w in z)


def length_equals(n: int) -> Predicate:
    if n < 0:
        raise PredicateConstructionError("length must be non-negative")
    return Predicate(f"len:{n}", lambda w: len(w) == n)


def computed_within(n: int, interp) -> Predicate:
    """Some program of length at most n yields the word within n steps.

    Decidable by finite search over the program space; the interpreter is a
    parameter of the predicate, so different interpreters give different
    (still total) predicates.
    """
    if n < 0:
        raise PredicateConstructionError("step bound must be non-negative")

    def check(w: str) -> bool:
        for p in words_up_to(n):
            out = interp.apply(p, n)
            if out.halted and out.output == w:
                return True
        return False

    return Predicate(f"within:{n}", check)


def bounded_complexity_equals(n: int, interp, budget) -> Predicate:
    """The budgeted minimum-program length of the word equals n.

    An executable stand-in for the exact-complexity predicate, which is not
    computable; every verdict is relative to the interpreter and budget
    carried in the parameters.
    """
    from .complexity import bounded_kolmogorov, tm_class

    handle = tm_class(interp)

    def check(w: str) -> bool:
        verdict = bounded_kolmogorov(handle, w, budget)
        return verdict.kind == "finite" and verdict.value == n

    return Predicate(f"bounded-c-equals:{n}", check)


def false_pred() -> Predicate:
    return Predicate("false", lambda w: False)


def builtin(name: str, *, interp=None, budget=None, alphabet: Alphabet = BINARY) -> Predicate:
    """Constructor keyed by the textual predicate syntax, e.g. ``equals:01``.

    ``within:<n>`` and ``bounded-c-equals:<n>`` need an interpreter (and the
    latter a budget) supplied by the caller.
    """
    head, _, arg = name.partition(":")
    try:
        if head == "anyword":
            return any_word()
        if head == "nonempty":
            return non_empty()
        if head == "equals":
            return equals(arg, alphabet)
        if head == "leq":
            return leq(arg, alphabet)
        if head == "geq":
            return geq(arg, alphabet)
        if head == "lt":
            return lt(arg, alphabet)
        if head == "factor":
            return contains_factor(arg, alphabet)
        if head == "infactor":
            return is_factor_of(arg, alphabet)
        if head == "len":
            return length_equals(int(arg))
        if head == "within":
            if interp is None:
                raise PredicateConstructionError("within:<n> needs an interpreter")
            return computed_within(int(arg), interp)
        if head == "bounded-c-equals":
            if interp is None or budget is None:
                raise PredicateConstructionError("bounded-c-equals needs interpreter and budget")
            return bounded_complexity_equals(int(arg), interp, budget)
        if head == "false":
            return false_pred()
    except (ValueError, TypeError) as exc:
        if isinstance(exc, PredicateConstructionError):
            raise
        raise PredicateConstructionError(f"malformed predicate {name!r}: {exc}") from exc
    raise PredicateConstructionError(f"unknown predicate {name!r}")


# ---------------------------------------------------------------------------
# implications


def check_implication(p: Predicate, q: Predicate, max_len: int, alphabet: Alphabet = BINARY) -> bool:
    """Exhaustively test that p(w) implies q(w) for all words up to max_len."""
    return find_implication_counterexample(p, q, max_len, alphabet) is None


def find_implication_counterexample(
    p: Predicate, q: Predicate, max_len: int, alphabet: Alphabet = BINARY
) -> str | None:
    for w in words_up_to(max_len, alphabet):
        if p(w) and not q(w):
            return w
    return None


@dataclass
class ImplicationRegistry:
    """Append-only store of verified implication edges."""

    check_len: int = 6
    edges: list[tuple[Predicate, Predicate, str]] = field(default_factory=list)

    def register(self, p: Predicate, q: Predicate, justification: str = "") -> None:
        ce = find_implication_counterexample(p, q, self.check_len)
        if ce is not None:
            raise ImplicationViolation(
                f"{p.name} does not imply {q.name}: counterexample {ce!r}"
            )
        self.edges.append((p, q, justification))

    def __len__(self) -> int:
        return len(self.edges)

    def predicates(self) -> list[Predicate]:
        seen: dict[str, Predicate] = {}
        for p, q, _ in self.edges:
            seen.setdefault(p.name, p)
            seen.setdefault(q.name, q)
        return list(seen.values())


def shipped_registry(interp=None) -> ImplicationRegistry:
    """The stock edge set used by the monotonicity experiments.

    Interpreter-quoting predicates use the supplied interpreter (default:
    the length-1 biased one, whose tiny program space keeps the exhaustive
    registration checks fast).
    """
    if interp is None:
        from .universal import make_biased_universal

        interp = make_biased_universal(1)
    reg = ImplicationRegistry(check_len=6)
    strict_pairs = ["0", "1", "00", "01", "10", "11", "000"]
    for z in strict_pairs:
        reg.register(lt(z), leq(z), "strict order implies non-strict")
    for u in ["0", "1", "00", "01"]:
        reg.register(equals(u), leq(u), "a word is within its own bound")
    for u in ["0", "1", "00"]:
        reg.register(equals(u), geq(u), "a word is within its own bound")
    reg.register(equals("01"), contains_factor("0"), "factor of the fixed word")
    reg.register(equals("01"), contains_factor("1"), "factor of the fixed word")
    reg.register(equals("0101"), contains_factor("010"), "factor of the fixed word")
    reg.register(equals("00"), contains_factor("0"), "factor of the fixed word")
    for u in ["0", "01", "110"]:
        reg.register(equals(u), length_equals(len(u)), "equality fixes the length")
    for u in ["0", "1"]:
        reg.register(equals(u), non_empty(), "the fixed word is non-empty")
    for n in [1, 2, 3]:
        reg.register(length_equals(n), non_empty(), "positive length")
    reg.register(non_empty(), any_word(), "weakening to the trivial predicate")
    reg.register(length_equals(2), any_word(), "weakening to the trivial predicate")
    reg.register(lt("10"), any_word(), "weakening to the trivial predicate")
    reg.register(false_pred(), equals("0"), "ex falso")
    reg.register(false_pred(), non_empty(), "ex falso")
    reg.register(false_pred(), length_equals(5), "ex falso")
    reg.register(contains_factor("01"), non_empty(), "a factor needs a symbol")
    reg.register(contains_factor("00"), contains_factor("0"), "longer factor implies shorter")
    reg.register(contains_factor("11"), contains_factor("1"), "longer factor implies shorter")
    reg.register(is_factor_of("010"), leq("010"), "factors never exceed the host word")
    reg.register(geq("1"), non_empty(), "only the empty word precedes the first symbol")
    reg.register(computed_within(2, interp), computed_within(3, interp), "looser budget")
    reg.register(computed_within(3, interp), computed_within(5, interp), "looser budget")
    return reg


def small20_family(interp) -> list[Predicate]:
    """Twenty stock predicates for the invariance experiments.

    Most are satisfiable by the word "0" so that engineered interpreters
    give finite values on a common core; a few are deliberately not, to
    exercise the incomparable-predicate reporting path.
    """
    names = [
        "anyword",
        "nonempty",
        "leq:0",
        "leq:1",
        "leq:00",
        "leq:11",
        "geq:",
        "geq:0",
        "lt:1",
        "lt:00",
        "lt:10",
        "factor:0",
        "infactor:00",
        "infactor:010",
        "len:1",
        "equals:0",
        "equals:1",
        "equals:00",
        "leq:10",
        "within:4",
    ]
    return [builtin(n, interp=interp) for n in names]


# ---------------------------------------------------------------------------
# detection -> construction adapter


@dataclass(frozen=True)
class ConstructionProblem:
    """A detection problem recast as something to build.

    In test mode the target is the indicator table of the predicate over a
    probe domain (feeding the function-table experiments); in search or
    selection mode the target is any witness word.
    """

    predicate: Predicate
    mode: str
    statement: str
    indicator: tuple[tuple[str, str], ...] | None = None


def to_construction(
    p: Predicate, mode: str, probe_max_len: int = 2, alphabet: Alphabet = BINARY
) -> ConstructionProblem:
    if mode in ("search", "selection"):
        verb = "find" if mode == "search" else "select"
        return ConstructionProblem(
            p, mode, f"{verb} then build a word w with {p.name}(w)"
        )
    if mode == "test":
        table = tuple(
            (w, "1" if p(w) else "0") for w in words_up_to(probe_max_len, alphabet)
        )
        return ConstructionProblem(
            p,
            mode,
            f"compute the indicator of {p.name} on words up to length {probe_max_len}",
            indicator=table,
        )
    raise PredicateConstructionError(f"unknown construction mode {mode!r}")
