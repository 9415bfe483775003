"""Alphabets, shortlex-ordered words, and the self-delimiting pairing code.

Words are plain Python strings over a declared alphabet of single-character
symbols.  The reserved blank ``_`` never occurs inside a word.  All word
order used anywhere in the toolkit is *shortlex*: shorter words first, ties
broken by symbol order.  Shortlex gives the word universe order type omega,
so every word has a finite index and the enumeration x_1, x_2, ... used by
the schedulers is well defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

BLANK = "_"


class InvalidWordError(ValueError):
    """A word contains a symbol outside its alphabet."""


class MalformedPairError(ValueError):
    """A word has no valid self-delimiting prefix."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct single-character symbols, blank excluded."""

    symbols: tuple[str, ...] = ("0", "1")
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must declare at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        for s in self.symbols:
            if len(s) != 1:
                raise ValueError(f"alphabet symbols must be single characters: {s!r}")
            if s == BLANK:
                raise ValueError("the blank symbol is reserved and cannot be declared")
        object.__setattr__(self, "index", {s: i for i, s in enumerate(self.symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def check_word(self, w: str) -> str:
        for ch in w:
            if ch not in self.index:
                raise InvalidWordError(f"symbol {ch!r} is not in alphabet {''.join(self.symbols)}")
        return w

    def check_symbol(self, s: str, allow_blank: bool = True) -> str:
        if s == BLANK and allow_blank:
            return s
        if s not in self.index:
            raise InvalidWordError(f"symbol {s!r} is not in alphabet {''.join(self.symbols)}")
        return s


BINARY = Alphabet()


def shortlex_index(w: str, alphabet: Alphabet = BINARY) -> int:
    """Index of ``w`` in the shortlex enumeration; the empty word is 0."""
    alphabet.check_word(w)
    k = len(alphabet)
    # Words shorter than w: k + k^2 + ... + k^(len-1), then w's rank
    # among words of its own length read as a base-k numeral.
    n = 0
    for length in range(len(w)):
        n += k ** length
    rank = 0
    for ch in w:
        rank = rank * k + alphabet.index[ch]
    return n + rank


def word_at(n: int, alphabet: Alphabet = BINARY) -> str:
    """Inverse of :func:`shortlex_index`."""
    if n < 0:
        raise ValueError("word index must be non-negative")
    k = len(alphabet)
    length = 0
    tier = 1  # number of words of the current length
    while n >= tier:
        n -= tier
        length += 1
        tier *= k
    digits = []
    for _ in range(length):
        digits.append(alphabet.symbols[n % k])
        n //= k
    return "".join(reversed(digits))


def word_sequence(start: int = 1, alphabet: Alphabet = BINARY) -> Iterator[str]:
    """The enumeration x_start, x_start+1, ... with x_1 the empty word."""
    n = start - 1
    while True:
        yield word_at(n, alphabet)
        n += 1


def nth_word(n: int, alphabet: Alphabet = BINARY) -> str:
    """x_n in the 1-based enumeration: x_1 = empty word, x_2 = first symbol, ..."""
    if n < 1:
        raise ValueError("word enumeration is 1-based")
    return word_at(n - 1, alphabet)


def shortlex_le(a: str, b: str, alphabet: Alphabet = BINARY) -> bool:
    if len(a) != len(b):
        return len(a) < len(b)
    ia = [alphabet.index[c] for c in alphabet.check_word(a)]
    ib = [alphabet.index[c] for c in alphabet.check_word(b)]
    return ia <= ib


def shortlex_lt(a: str, b: str, alphabet: Alphabet = BINARY) -> bool:
    return a != b and shortlex_le(a, b, alphabet)


def words_of_length(length: int, alphabet: Alphabet = BINARY) -> Iterator[str]:
    """All words of exactly ``length`` symbols, in shortlex (= lex) order."""
    if length == 0:
        yield ""
        return
    k = len(alphabet)
    for rank in range(k ** length):
        digits = []
        r = rank
        for _ in range(length):
            digits.append(alphabet.symbols[r % k])
            r //= k
        yield "".join(reversed(digits))


def words_up_to(max_len: int, alphabet: Alphabet = BINARY) -> Iterator[str]:
    for length in range(max_len + 1):
        yield from words_of_length(length, alphabet)


def sd(u: str, alphabet: Alphabet = BINARY) -> str:
    """Self-delimiting form of ``u``: each symbol doubled, then the two-symbol
    terminator made of the alphabet's first two symbols.

    Over binary: sd("0") = "0001", sd(eps) = "01".  l(sd(u)) = 2*l(u) + 2.
    """
    if len(alphabet) < 2:
        raise ValueError("self-delimiting code needs at least two symbols")
    alphabet.check_word(u)
    a0, a1 = alphabet.symbols[0], alphabet.symbols[1]
    return "".join(ch + ch for ch in u) + a0 + a1


def header_cost(u: str, alphabet: Alphabet = BINARY) -> int:
    """k_u in l(pair(w, u)) = l(w) + k_u; exactly 2*l(u) + 2."""
    alphabet.check_word(u)
    return 2 * len(u) + 2


def pair(w: str, u: str, alphabet: Alphabet = BINARY) -> str:
    """Encode the pair (w, u) as sd(u) followed by w verbatim.

    The right component is the self-delimited one, so the payload w rides
    at the end and the cost of carrying u is the constant k_u.
    """
    alphabet.check_word(w)
    return sd(u, alphabet) + w


def unpair(p: str, alphabet: Alphabet = BINARY) -> tuple[str, str]:
    """Total inverse of :func:`pair` on its image.

    Scans two symbols at a time: a doubled symbol contributes one symbol of
    u, the terminator a0+a1 ends the prefix, anything else is malformed.
    """
    alphabet.check_word(p)
    if len(alphabet) < 2:
        raise MalformedPairError("alphabet too small for the pairing code")
    a0, a1 = alphabet.symbols[0], alphabet.symbols[1]
    u_syms: list[str] = []
    i = 0
    while True:
        chunk = p[i : i + 2]
        if len(chunk) < 2:
            raise MalformedPairError(f"word {p!r} ends inside its self-delimiting prefix")
        if chunk == a0 + a1:
            return p[i + 2 :], "".join(u_syms)
        if chunk[0] == chunk[1]:
            u_syms.append(chunk[0])
            i += 2
            continue
        raise MalformedPairError(f"word {p!r} has no valid self-delimiting prefix at offset {i}")
