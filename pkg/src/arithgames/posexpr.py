"""Text form of mixed-ruleset sums, e.g. ``3*2@dividing + 7@sub{1,2}``.

Grammar::

    expr    := term ("+" term)*  |  "0-sum"  |  ""
    term    := [count "*"] heap "@" ruleset
    ruleset := registered name | "sub{" s ("," s)* "}"

Whitespace is ignored around the operators.  The subscript notation ``7_t``
maps to ``7@totient``.
"""

from __future__ import annotations

import re

from .engine import Position
from .errors import DomainError, PositionSyntaxError, UnknownRulesetError
from .rulesets import lookup

EMPTY = "0-sum"

_WS = re.compile(r"\s*")
_INT = re.compile(r"\d+")
_NAME = re.compile(r"sub\{[\d,\s]*\}|[a-z][a-z0-9_-]*")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str, what: str) -> None:
        if not self.peek(s):
            raise self.error(f"expected {what}")
        self.pos += len(s)

    def token(self, pattern: re.Pattern, what: str) -> tuple[str, int]:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(), m.start()

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def error(self, msg: str, offset: int | None = None) -> PositionSyntaxError:
        return PositionSyntaxError(msg, self.text, self.pos if offset is None else offset)


def _term(sc: _Scanner) -> list[tuple[str, int]]:
    first, _ = sc.token(_INT, "a heap size")
    count = 1
    if sc.peek("*"):
        sc.pos += 1
        count = int(first)
        if count < 1:
            raise sc.error("count must be at least 1", sc.pos - 1 - len(first))
        first, _ = sc.token(_INT, "a heap size")
    heap = int(first)
    heap_at = sc.pos - len(first)
    sc.expect("@", "'@' and a ruleset name")
    name, name_at = sc.token(_NAME, "a ruleset name")
    try:
        rs = lookup(name)
    except UnknownRulesetError as e:
        raise PositionSyntaxError(str(e), sc.text, name_at) from None
    except DomainError as e:
        raise PositionSyntaxError(str(e), sc.text, name_at) from None
    if not rs.in_domain(heap):
        raise PositionSyntaxError(
            f"heap {heap} is outside the domain of {rs.name} (n >= {rs.domain_min})", sc.text, heap_at
        )
    return [(rs.name, heap)] * count


def parse(text: str) -> Position:
    sc = _Scanner(text)
    if sc.at_end():
        return Position()
    if sc.peek(EMPTY):
        sc.pos += len(EMPTY)
        if not sc.at_end():
            raise sc.error("unexpected text after the empty sum")
        return Position()
    comps = _term(sc)
    while not sc.at_end():
        sc.expect("+", "'+'")
        comps += _term(sc)
    return Position(tuple(comps))


def format_position(pos: Position) -> str:
    """Canonical text: ruleset name order, larger heaps first, repeats collapsed."""
    if not len(pos):
        return EMPTY
    terms = []
    comps = list(pos)
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        name, heap = comps[i]
        terms.append(f"{heap}@{name}" if j - i == 1 else f"{j - i}*{heap}@{name}")
        i = j
    return " + ".join(terms)


format = format_position  # noqa: A001
