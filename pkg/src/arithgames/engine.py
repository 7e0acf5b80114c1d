"""Sprague-Grundy evaluation.

Tables are built bottom-up, one heap at a time, from each ruleset's option
kernel.  Powerset games never enumerate subsets here: the nim-values
reachable through nonempty sub-multisets of a value multiset form a GF(2)
span (minus zero when zero is unreachable), so their mex is read off an
echelon basis.

:func:`brute_force_sg` is the independent check: plain recursion over
:func:`rulesets.options`, with explicit subset enumeration for powerset
games.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Protocol

import numpy as np

from .errors import CapacityError, DomainError, OracleRefusal, PartialTableError, TableLimitError
from .rulesets import OptionSemantics, Ruleset, SumPosition, allowed_set, lookup, option_values, options

ENGINE = 0
CLOSED_FORM = 1
VALUE_CAP = 2**31


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


def _mex_array(vals: np.ndarray, scratch: np.ndarray) -> int:
    k = len(vals)
    if k == 0:
        return 0
    mark = scratch[: k + 1]
    mark[:] = False
    mark[vals[vals <= k]] = True
    return int(mark.argmin())


class XorBasis:
    """GF(2) basis in reduced echelon form, keyed by leading bit."""

    def __init__(self, values: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        self.zero_reachable = False
        for v in values:
            self.insert(v)

    def reduce(self, v: int) -> int:
        for bit in sorted(self.rows, reverse=True):
            if (v >> bit) & 1:
                v ^= self.rows[bit]
        return v

    def insert(self, v: int) -> bool:
        """Add v; return False (and mark zero reachable) if v is already spanned."""
        v = self.reduce(int(v))
        if v == 0:
            self.zero_reachable = True
            return False
        lead = v.bit_length() - 1
        for bit, row in self.rows.items():
            if (row >> lead) & 1:
                self.rows[bit] = row ^ v
        self.rows[lead] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(int(v)) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def span(self) -> Iterator[int]:
        rows = list(self.rows.values())
        for mask in range(1 << len(rows)):
            x = 0
            for i, r in enumerate(rows):
                if (mask >> i) & 1:
                    x ^= r
            yield x

    def reachable_mex(self) -> int:
        """mex of the XORs of nonempty subsets of the inserted values."""
        if not self.zero_reachable:
            return 0
        # every x < 2^j is spanned when bits 0..j-1 are all leading bits,
        # and 2^j is not spanned when j is not a leading bit
        j = 0
        while j in self.rows:
            j += 1
        return 1 << j


def xor_span_mex(component_values: Iterable[int]) -> int:
    return XorBasis(component_values).reachable_mex()


@dataclass(frozen=True, eq=False)
class SGTable:
    ruleset: str
    domain_min: int
    values: np.ndarray
    provenance: np.ndarray

    @property
    def limit(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return max(0, self.limit - self.domain_min + 1)

    def __getitem__(self, n: int) -> int:
        if n < self.domain_min:
            raise DomainError(f"heap {n} is outside the domain of {self.ruleset}")
        if n > self.limit:
            raise TableLimitError(f"{self.ruleset} table stops at {self.limit}, heap {n} requested")
        return int(self.values[n])

    def heaps(self) -> range:
        return range(self.domain_min, self.limit + 1)

    def sequence(self) -> list[int]:
        return self.values[self.domain_min :].tolist()

    def items(self) -> Iterator[tuple[int, int]]:
        return zip(self.heaps(), self.sequence())

    def truncated(self, limit: int) -> SGTable:
        return SGTable(self.ruleset, self.domain_min, self.values[: limit + 1], self.provenance[: limit + 1])


def _frozen(table: SGTable) -> SGTable:
    table.values.flags.writeable = False
    table.provenance.flags.writeable = False
    return table


def _value(rs: Ruleset, n: int, values: np.ndarray, scratch: np.ndarray) -> int:
    sem = rs.semantics
    if sem is OptionSemantics.COUNTING:
        t = rs.target(n)
        if t == n or t < rs.domain_min:
            return 0
        return 1 if values[t] == 0 else 0
    if sem is OptionSemantics.FULLSET_SUM:
        base = rs.base(n)
        if len(base) == 0:
            return 0
        return 1 if np.bitwise_xor.reduce(values[base]) == 0 else 0
    if sem.is_powerset:
        base = rs.base(n)
        return xor_span_mex(values[base].tolist()) if len(base) else 0
    vals = option_values(rs, n, values)
    if len(vals) >= len(scratch):
        scratch.resize(2 * len(vals) + 2, refcheck=False)
    return _mex_array(vals, scratch)


def sg_table(rs: Ruleset | str, limit: int, *, base: SGTable | None = None, max_seconds: float | None = None) -> SGTable:
    """Nim-values of heaps ``domain_min..limit``.

    ``base`` is a shorter table of the same ruleset to extend.  Exceeding
    ``max_seconds`` or the 31-bit value cap raises :class:`PartialTableError`
    carrying the completed prefix.
    """
    rs = lookup(rs)
    if limit < rs.domain_min - 1:
        raise DomainError(f"table limit {limit} is below the domain of {rs.name}")
    values = np.zeros(limit + 1, dtype=np.int64)
    start = rs.domain_min
    if base is not None:
        if base.ruleset != rs.name:
            raise ValueError(f"cannot extend a {base.ruleset} table with {rs.name}")
        if base.limit >= limit:
            return base.truncated(limit)
        values[: base.limit + 1] = base.values
        start = max(start, base.limit + 1)
    scratch = np.zeros(1024, dtype=bool)
    deadline = None if max_seconds is None else time.monotonic() + max_seconds

    def partial(last: int, why: str) -> PartialTableError:
        t = SGTable(rs.name, rs.domain_min, values[: last + 1].copy(), np.zeros(last + 1, dtype=np.uint8))
        return PartialTableError(f"{rs.name}: {why} after heap {last}", last, _frozen(t))

    for n in range(start, limit + 1):
        v = _value(rs, n, values, scratch)
        if v >= VALUE_CAP:
            raise partial(n - 1, f"nim-value of heap {n} exceeds 2^31")
        values[n] = v
        if deadline is not None and n % 64 == 0 and time.monotonic() > deadline:
            raise partial(n, "time budget exhausted")
    return _frozen(SGTable(rs.name, rs.domain_min, values, np.zeros(limit + 1, dtype=np.uint8)))


_cache: dict[str, SGTable] = {}


def cached_table(rs: Ruleset | str, limit: int) -> SGTable:
    """Shared engine table covering ``limit``, extended on demand."""
    rs = lookup(rs)
    have = _cache.get(rs.name)
    if have is None or have.limit < limit:
        have = sg_table(rs, limit, base=have)
        _cache[rs.name] = have
    return have if have.limit == limit else have.truncated(limit)


def sg_exponent_table(rs: Ruleset | str, limit: int) -> np.ndarray:
    """Powerset games in log form: entry n is e when SG(n) = 2^e, or -1 when SG(n) = 0.

    Every powerset nim-value is 0 or a power of two (see XorBasis.reachable_mex),
    so values of any size are carried exactly by their exponents.
    """
    rs = lookup(rs)
    if not rs.semantics.is_powerset:
        raise DomainError(f"{rs.name} is not a powerset game")
    exps = np.full(limit + 1, -1, dtype=np.int64)
    for n in range(rs.domain_min, limit + 1):
        base = rs.base(n)
        if len(base) == 0:
            continue
        e = exps[base]
        nonzero = e[e >= 0]
        counts = np.bincount(nonzero, minlength=1) if len(nonzero) else np.zeros(1, dtype=np.int64)
        if len(nonzero) == len(e) and counts.max(initial=0) <= 1:
            continue  # independent powers of two: zero unreachable, mex 0
        absent = np.flatnonzero(np.append(counts, 0) == 0)
        exps[n] = absent[0]
    return exps


# -- oracle -----------------------------------------------------------------


def _subset_xors(values: list[int]) -> np.ndarray:
    """XOR of every subset, one entry per subset; entry 0 is the empty subset."""
    xs = np.zeros(1, dtype=object if max(values, default=0) >= 2**62 else np.int64)
    for v in values:
        xs = np.concatenate([xs, xs ^ v])
    return xs


def brute_force_sg(rs: Ruleset | str, n: int, subset_cap: int = 20, memo: dict | None = None) -> int:
    """SG(n) by direct recursion; powerset options are enumerated subset by subset."""
    rs = lookup(rs)
    rs.check(n)
    return _bf(rs, n, subset_cap, {} if memo is None else memo)


def _bf(rs: Ruleset, n: int, cap: int, memo: dict) -> int:
    got = memo.get(n)
    if got is not None:
        return got
    if rs.semantics.is_powerset:
        members = allowed_set(rs, n)
        if len(members) > cap:
            raise OracleRefusal(f"{rs.name}({n}) has {len(members)} allowed heaps, cap is {cap}")
        vals = [_bf(rs, h, cap, memo) for h in members]
        reach = set(_subset_xors(vals)[1:].tolist())
    else:
        reach = set()
        for pos in options(rs, n):
            x = 0
            for h in pos:
                x ^= _bf(rs, h, cap, memo)
            reach.add(x)
    v = 0
    while v in reach:
        v += 1
    memo[n] = v
    return v


# -- disjunctive sums -------------------------------------------------------


class ValueSource(Protocol):
    limit: int

    def __getitem__(self, n: int) -> int: ...


@dataclass(frozen=True)
class Position:
    """Multiset of (ruleset name, heap) components, kept in canonical order."""

    components: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        comps = []
        for name, heap in self.components:
            rs = lookup(name)
            rs.check(heap)
            comps.append((rs.name, int(heap)))
        comps.sort(key=lambda c: (c[0], -c[1]))
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def of(cls, *components: tuple[str, int]) -> Position:
        return cls(tuple(components))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __str__(self) -> str:
        from .posexpr import format_position

        return format_position(self)


@dataclass(frozen=True)
class Move:
    index: int
    ruleset: str
    heap: int
    replacement: SumPosition

    def apply(self, pos: Position) -> Position:
        comps = list(pos.components)
        name, heap = comps.pop(self.index)
        assert (name, heap) == (self.ruleset, self.heap)
        comps.extend((name, h) for h in self.replacement)
        return Position(tuple(comps))

    def __str__(self) -> str:
        rhs = "+".join(map(str, self.replacement)) or "0-sum"
        return f"{self.heap}@{self.ruleset} -> {rhs}"


def resolve_tables(pos: Position, tables: Mapping[str, ValueSource] | None = None, extend: bool = True) -> dict:
    """Value sources covering every component.

    Missing rulesets get shared engine tables; a supplied engine table that
    is too short is extended when ``extend`` is set, anything else fails.
    """
    out = dict(tables or {})
    need: dict[str, int] = {}
    for name, heap in pos:
        need[name] = max(need.get(name, -1), heap)
    for name, heap in need.items():
        src = out.get(name)
        if src is None:
            out[name] = cached_table(name, heap)
        elif heap > src.limit:
            if not (extend and isinstance(src, SGTable)):
                raise TableLimitError(f"{name} values stop at {src.limit}, heap {heap} requested")
            out[name] = sg_table(name, heap, base=src)
    return out


def sum_value(pos: Position, tables: Mapping[str, ValueSource] | None = None) -> int:
    tables = resolve_tables(pos, tables)
    v = 0
    for name, heap in pos:
        v ^= tables[name][heap]
    return v


def component_options(rs: Ruleset, n: int, subset_cap: int = 20) -> list[SumPosition]:
    """Options of a single heap; powerset games enumerate subsets (capped)."""
    if not rs.semantics.is_powerset:
        return options(rs, n)
    members = allowed_set(rs, n)
    if len(members) > subset_cap:
        raise CapacityError(f"{rs.name}({n}) has 2^{len(members)} - 1 options, cap is 2^{subset_cap}")
    subsets = (
        tuple(sorted(c, reverse=True))
        for k in range(1, len(members) + 1)
        for c in itertools.combinations(members, k)
    )
    return sorted(set(subsets), key=lambda p: (-p[0], p))


def winning_moves(
    pos: Position,
    tables: Mapping[str, ValueSource] | None = None,
    *,
    first_only: bool = False,
    subset_cap: int = 20,
) -> list[Move]:
    """All moves to a position of value 0, in component order then option order."""
    tables = resolve_tables(pos, tables)
    total = 0
    vals = []
    for name, heap in pos:
        vals.append(tables[name][heap])
        total ^= vals[-1]
    if total == 0:
        return []
    moves = []
    for i, (name, heap) in enumerate(pos):
        target = total ^ vals[i]
        rs = lookup(name)
        src = tables[name]
        for opt in component_options(rs, heap, subset_cap):
            x = 0
            for h in opt:
                x ^= src[h]
            if x == target:
                moves.append(Move(i, name, heap, opt))
                if first_only:
                    return moves
    return moves


def legal_moves(pos: Position, subset_cap: int = 20) -> list[Move]:
    return [
        Move(i, name, heap, opt)
        for i, (name, heap) in enumerate(pos)
        for opt in component_options(lookup(name), heap, subset_cap)
    ]
