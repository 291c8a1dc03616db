"""Free-group words and finite presentations.

Words are tuples of signed 1-based generator indices: letter ``+(i+1)``
is generator ``i``, letter ``-(i+1)`` its inverse.  The commutator
convention is left-normed, ``[x, y] = x^-1 y^-1 x y``.

Presentation text grammar (whitespace-insensitive):

    presentation := "<" genlist "|" rellist ">"
    genlist      := ident ("," ident)*
    rellist      := relation ("," relation)*
    relation     := word ("=" word)?
    word         := factor+
    factor       := ident ("^" int)?
                  | "[" word "," word "]" ("^" int)?
                  | "(" word ")" ("^" int)?

A relation ``w = v`` is stored as the freely reduced relator ``w v^-1``.
Relators that reduce to the empty word are dropped with a warning.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .errors import ParseError

MAX_GENERATORS = 8


class EmptyRelatorWarning(UserWarning):
    """A relation reduced to the empty word and was ignored."""


def free_reduce(letters) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A word in free generators; not automatically reduced."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if any(not isinstance(x, int) or x == 0 for x in self.letters):
            raise ValueError(f"word letters must be nonzero integers: {self.letters!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self.letters, self.letters[1:]))

    def reduced(self) -> "Word":
        if self.is_reduced():
            return self
        return Word(free_reduce(self.letters))

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(free_reduce(self.letters + other.letters))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(free_reduce(base.letters * abs(k)))

    def syllables(self) -> list[tuple[int, int]]:
        """Run-length form [(generator index, exponent), ...], 0-based indices."""
        out: list[tuple[int, int]] = []
        for x in self.letters:
            g = abs(x) - 1
            e = 1 if x > 0 else -1
            if out and out[-1][0] == g and (out[-1][1] > 0) == (e > 0):
                out[-1] = (g, out[-1][1] + e)
            else:
                out.append((g, e))
        return out

    def max_generator(self) -> int:
        """Largest 0-based generator index used, or -1 for the empty word."""
        return max((abs(x) for x in self.letters), default=0) - 1


def word_multiply(u: Word, v: Word) -> Word:
    """Concatenate and freely reduce."""
    return u * v


def word_commutator(x: Word, y: Word) -> Word:
    """Left-normed commutator x^-1 y^-1 x y, freely reduced."""
    return Word(free_reduce(x.inverse().letters + y.inverse().letters + x.letters + y.letters))


def format_word(w: Word, names) -> str:
    parts = []
    for g, e in w.syllables():
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class Presentation:
    """Generator names plus relator words."""

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(self.generator_names) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators supported")
        if len(set(self.generator_names)) != len(self.generator_names):
            raise ValueError("duplicate generator names")
        ngens = len(self.generator_names)
        for r in self.relators:
            if r.max_generator() >= ngens:
                raise ValueError(f"relator {r.letters!r} uses an undeclared generator")

    @property
    def n_generators(self) -> int:
        return len(self.generator_names)

    def generator(self, name: str) -> int:
        return self.generator_names.index(name)

    def to_text(self) -> str:
        gens = ",".join(self.generator_names)
        rels = ", ".join(format_word(r, self.generator_names) for r in self.relators)
        return f"<{gens} | {rels}>"

    def __str__(self) -> str:
        return self.to_text()


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|-?\d+|[<>|,=^\[\]()]")


class _Scanner:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, int, int]] = []
        line, col = 1, 1
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                col += 1
                i += 1
                continue
            m = _TOKEN_RE.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tok = m.group(0)
            self.tokens.append((tok, line, col))
            col += len(tok)
            i = m.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def here(self) -> tuple[int, int]:
        if self.pos < len(self.tokens):
            _, line, col = self.tokens[self.pos]
            return line, col
        if self.tokens:
            tok, line, col = self.tokens[-1]
            return line, col + len(tok)
        return 1, 1

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", *self.here())
        self.pos += 1
        return tok

    def expect(self, tok: str):
        line, col = self.here()
        got = self.peek()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", line, col)
        self.pos += 1


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_WORD_ENDERS = (",", "=", "|", ">", "]", ")", None)


def _parse_int(sc: _Scanner) -> int:
    line, col = sc.here()
    tok = sc.next()
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer exponent, got {tok!r}", line, col) from None


def _parse_word(sc: _Scanner, names: dict[str, int]) -> Word:
    letters = list(_parse_factor(sc, names).letters)
    while sc.peek() not in _WORD_ENDERS:
        letters.extend(_parse_factor(sc, names).letters)
    return Word(tuple(letters))


def _parse_factor(sc: _Scanner, names: dict[str, int]) -> Word:
    line, col = sc.here()
    tok = sc.peek()
    if tok == "[":
        sc.next()
        x = _parse_word(sc, names)
        sc.expect(",")
        y = _parse_word(sc, names)
        sc.expect("]")
        base = word_commutator(x, y)
    elif tok == "(":
        sc.next()
        base = _parse_word(sc, names)
        sc.expect(")")
    elif tok is not None and _IDENT_RE.match(tok):
        sc.next()
        if tok not in names:
            raise ParseError(f"undeclared generator {tok!r}", line, col)
        base = Word((names[tok] + 1,))
    else:
        raise ParseError(f"expected a generator, commutator or group, got {tok!r}", line, col)
    if sc.peek() == "^":
        sc.next()
        return base ** _parse_int(sc)
    return base


def parse_presentation(text: str) -> Presentation:
    """Parse presentation text; see the module docstring for the grammar."""
    sc = _Scanner(text)
    sc.expect("<")
    gen_names: list[str] = []
    while True:
        line, col = sc.here()
        tok = sc.next()
        if not _IDENT_RE.match(tok):
            raise ParseError(f"expected a generator name, got {tok!r}", line, col)
        if tok in gen_names:
            raise ParseError(f"duplicate generator {tok!r}", line, col)
        gen_names.append(tok)
        if len(gen_names) > MAX_GENERATORS:
            raise ParseError(f"at most {MAX_GENERATORS} generators supported", line, col)
        if sc.peek() == ",":
            sc.next()
            continue
        break
    sc.expect("|")
    names = {g: i for i, g in enumerate(gen_names)}
    relators: list[Word] = []
    while sc.peek() != ">":
        line, col = sc.here()
        w = _parse_word(sc, names)
        if sc.peek() == "=":
            sc.next()
            v = _parse_word(sc, names)
            w = w * v.inverse()
        else:
            w = w.reduced()
        if w.letters:
            relators.append(w)
        else:
            warnings.warn(
                f"relation at line {line}, column {col} reduces to the empty word; ignored",
                EmptyRelatorWarning,
                stacklevel=2,
            )
        if sc.peek() == ",":
            sc.next()
            if sc.peek() == ">":
                raise ParseError("trailing comma in relation list", *sc.here())
            continue
        break
    sc.expect(">")
    if sc.peek() is not None:
        raise ParseError(f"unexpected trailing input {sc.peek()!r}", *sc.here())
    return Presentation(tuple(gen_names), tuple(relators))
