"""Exception types raised across the package."""

from __future__ import annotations


class GameError(Exception):
    """Base class for all errors raised by arithgames."""


class CapacityError(GameError):
    """A requested size exceeds the configured memory budget."""


class DomainError(GameError, ValueError):
    """An argument lies outside the domain of a function or ruleset."""


class UnknownRulesetError(GameError, KeyError):
    def __init__(self, name: str, valid: list[str]):
        self.name = name
        self.valid = valid
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown ruleset {self.name!r}; valid names: {', '.join(self.valid)}, sub{{s1,s2,...}}"


class UsageError(GameError):
    """An operation was applied to a ruleset that does not support it."""


class PartialTableError(GameError):
    """Table construction stopped early; ``last_index`` is the last completed heap."""

    def __init__(self, message: str, last_index: int, partial=None):
        super().__init__(message)
        self.last_index = last_index
        self.partial = partial


class TableLimitError(GameError):
    """A heap exceeds the limit of the table asked to evaluate it."""


class OracleRefusal(GameError):
    """The brute-force oracle declined to run (subset cap exceeded)."""


class PositionSyntaxError(GameError, ValueError):
    def __init__(self, message: str, text: str, offset: int):
        self.text = text
        self.offset = offset
        super().__init__(message)

    def __str__(self) -> str:
        msg = self.args[0]
        return f"{msg} at offset {self.offset}\n  {self.text}\n  {' ' * self.offset}^"
