"""Move generation for the arithmetic heap games.

A position in a single ruleset is a heap size ``n``.  A move replaces the
heap by a *sum position*: a multiset of heap sizes of the same ruleset,
stored as a tuple sorted in descending order.  ``()`` is the empty sum
(a move that leaves nothing to play, equivalent to a terminal heap).

Every ruleset is a :class:`Ruleset`.  Besides the explicit option
generator, most rulesets carry a vectorised *kernel* that returns the
nim-values of all options of ``n`` given the values of smaller heaps; the
engine uses kernels to build long tables, while :func:`options` is the
reference description used by the oracle, the move solver and the golden
tests.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Iterator

import numpy as np

from . import arith
from .errors import DomainError, UnknownRulesetError, UsageError

SumPosition = tuple[int, ...]


class OptionSemantics(enum.Enum):
    SINGLETON_MOVE_TO = "singleton move-to"
    SINGLETON_SUBTRACT = "singleton subtract"
    COUNTING = "counting"
    SPLIT_SUM = "split into a sum"
    FULLSET_SUM = "full-set sum"
    POWERSET_MOVE_TO = "powerset move-to"
    POWERSET_SUBTRACT = "powerset subtract"

    @property
    def is_powerset(self) -> bool:
        return self in (OptionSemantics.POWERSET_MOVE_TO, OptionSemantics.POWERSET_SUBTRACT)


@dataclass(frozen=True)
class Ruleset:
    name: str
    semantics: OptionSemantics
    domain_min: int
    description: str
    # raw options of a nonterminal heap (any order, duplicates allowed)
    generate: Callable[[int], Iterable[SumPosition]] | None = None
    # counting games: the single target heap
    target: Callable[[int], int] | None = None
    # fullset / powerset games: the arithmetic property set, ascending
    base: Callable[[int], np.ndarray] | None = None
    # option values of n from the table of smaller values
    kernel: Callable[[int, np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    params: tuple[int, ...] = ()

    def __repr__(self) -> str:
        return f"Ruleset({self.name!r}, {self.semantics.name})"

    def in_domain(self, n: int) -> bool:
        return isinstance(n, (int, np.integer)) and n >= self.domain_min

    def check(self, n: int) -> None:
        if not self.in_domain(n):
            raise DomainError(f"heap {n!r} is outside the domain of {self.name} (n >= {self.domain_min})")

    def is_terminal(self, n: int) -> bool:
        """True when n has no options."""
        self.check(n)
        sem = self.semantics
        if sem is OptionSemantics.COUNTING:
            t = self.target(n)
            return t == n or t < self.domain_min
        if sem is OptionSemantics.FULLSET_SUM or sem.is_powerset:
            return len(self.base(n)) == 0
        return next(iter(self.generate(n)), None) is None


def canonical(heaps: Iterable[int]) -> SumPosition:
    return tuple(sorted((int(h) for h in heaps), reverse=True))


def emission_key(pos: SumPosition):
    return (-(pos[0] if pos else -1), pos)


def options(rs: Ruleset | str, n: int) -> list[SumPosition]:
    """All options of heap ``n``, deduplicated, in canonical order."""
    rs = lookup(rs)
    rs.check(n)
    sem = rs.semantics
    if sem.is_powerset:
        raise UsageError(f"{rs.name} is a powerset game; use allowed_set() and the engine")
    if rs.is_terminal(n):
        return []
    if sem is OptionSemantics.COUNTING:
        return [(rs.target(n),)]
    if sem is OptionSemantics.FULLSET_SUM:
        return [canonical(rs.base(n))]
    found = {canonical(p) for p in rs.generate(n)}
    return sorted(found, key=emission_key)


def allowed_set(rs: Ruleset | str, n: int) -> list[int]:
    """Heaps whose nonempty sub-multisets form the options of a powerset game."""
    rs = lookup(rs)
    rs.check(n)
    if not rs.semantics.is_powerset:
        raise UsageError(f"{rs.name} is not a powerset game")
    return [int(x) for x in rs.base(n)]


def option_values(rs: Ruleset, n: int, sg: np.ndarray) -> np.ndarray:
    """Nim-values of all options of n, given ``sg[0..n-1]`` (``sg[0]`` must be 0)."""
    if rs.kernel is not None:
        return rs.kernel(n, sg)
    vals = []
    for pos in options(rs, n):
        v = 0
        for h in pos:
            v ^= int(sg[h])
        vals.append(v)
    return np.asarray(vals, dtype=np.int64)


# -- arithmetic helpers -----------------------------------------------------


def _fac(n: int) -> arith.Factorization:
    return arith.factor(n)


def _divs(n: int) -> list[int]:
    return arith.divisors(arith.get_sieve(n), n)


def _nondivisors(n: int) -> np.ndarray:
    """k in 1..n-1 with k not dividing n."""
    k = np.arange(1, n, dtype=np.int64)
    return k[n % k != 0]


def _coprime_below(n: int) -> np.ndarray:
    k = np.arange(1, n, dtype=np.int64)
    return k[np.gcd(k, n) == 1]


def _noncoprime_below(n: int) -> np.ndarray:
    k = np.arange(1, n, dtype=np.int64)
    return k[np.gcd(k, n) > 1]


def multiplicative_partitions(n: int, distinct_prime_split: bool = False) -> Iterator[tuple[int, ...]]:
    """Multisets ``a_1 <= ... <= a_k`` (k >= 2, each a_i >= 2) with product n.

    With ``distinct_prime_split`` only pairwise coprime factorizations are
    produced, so no prime appears in two different components.
    """
    if n < 2:
        raise DomainError(f"multiplicative partitions need n >= 2, got {n}")
    divs = _divs(n)[1:]

    def rec(m: int, lo_idx: int) -> Iterator[tuple[int, ...]]:
        # factorizations of m into components >= divs[lo_idx], at least one
        for i in range(lo_idx, len(divs)):
            d = divs[i]
            if d * d > m:
                break
            if m % d == 0:
                for rest in rec(m // d, i):
                    yield (d, *rest)
        yield (m,)

    for part in rec(n, 0):
        if len(part) < 2:
            continue
        if distinct_prime_split and any(gcd(a, b) > 1 for i, a in enumerate(part) for b in part[i + 1 :]):
            continue
        yield part


# -- kernels ----------------------------------------------------------------


def _k_take(idx_fn):
    def kernel(n, sg):
        return sg[idx_fn(n)]

    return kernel


def _k_split(parts_lo, parts_hi, keep_remainder, keep_parts=True):
    """Kernel for 'm equal parts d plus remainder r' splits, d in [lo(n), hi(n)]."""

    def kernel(n, sg):
        d = np.arange(parts_lo(n), parts_hi(n) + 1, dtype=np.int64)
        out = np.zeros(len(d), dtype=np.int64)
        if keep_parts:
            odd = (n // d) & 1 == 1
            out[odd] = sg[d[odd]]
        if keep_remainder:
            out ^= sg[n % d]
        return out

    return kernel


def _k_dividing(n, sg):
    vals = [int(sg[k]) if (n // k) & 1 else 0 for k in _divs(n)[:-1]]
    return np.asarray(vals, dtype=np.int64)


# -- generators -------------------------------------------------------------


def _gen_dividing(n):
    for k in _divs(n)[:-1]:
        yield (k,) * (n // k)


def _one(n):
    return 1


def _gen_complement_grundy(n):
    for d in range(1, n // 2 + 1):
        m, r = divmod(n, d)
        yield (d,) * m + ((r,) if r else ())


def _gen_residue_throw_divisor(n):
    for d in range(1, n):
        r = n % d
        yield (r,) if r else ()


def _gen_m_factoring(distinct):
    def gen(n):
        if n < 2:
            return
        yield from multiplicative_partitions(n, distinct)

    return gen


def _gen_s_factoring(n):
    if n < 2:
        return
    # the trivial factorization n = n subtracts everything
    yield (0,)
    for part in multiplicative_partitions(n):
        yield tuple(n - a for a in part)


def _counting(name, target, domain_min, description):
    return Ruleset(name, OptionSemantics.COUNTING, domain_min, description, target=target)


def _build_registry() -> list[Ruleset]:
    S = OptionSemantics
    div_lim = lambda n: _divs(n) if n > 0 else []
    return [
        Ruleset(
            "maliquot", S.SINGLETON_MOVE_TO, 1, "move to a proper divisor",
            generate=lambda n: ((d,) for d in _divs(n)[:-1]),
            kernel=_k_take(lambda n: np.asarray(_divs(n)[:-1], dtype=np.int64)),
        ),
        Ruleset(
            "saliquot", S.SINGLETON_SUBTRACT, 0, "subtract a divisor",
            generate=lambda n: ((n - d,) for d in div_lim(n)),
            kernel=_k_take(lambda n: n - np.asarray(div_lim(n), dtype=np.int64)),
        ),
        Ruleset(
            "maliquant", S.SINGLETON_MOVE_TO, 0, "move to a smaller non-divisor (0 included)",
            generate=lambda n: ((k,) for k in ([0] + _nondivisors(n).tolist() if n > 0 else [])),
            kernel=lambda n, sg: np.concatenate(([0], sg[_nondivisors(n)])) if n else sg[:0],
        ),
        Ruleset(
            "saliquant", S.SINGLETON_SUBTRACT, 0, "subtract a non-divisor",
            generate=lambda n: ((n - k,) for k in (_nondivisors(n).tolist() if n > 0 else [])),
            kernel=_k_take(lambda n: n - _nondivisors(n)),
        ),
        Ruleset(
            "totative", S.SINGLETON_MOVE_TO, 1, "move to a smaller relatively prime residue",
            generate=lambda n: ((k,) for k in _coprime_below(n).tolist()),
            kernel=_k_take(_coprime_below),
        ),
        Ruleset(
            "nontotative", S.SINGLETON_MOVE_TO, 0, "move to a smaller residue sharing a factor (0 included)",
            generate=lambda n: ((k,) for k in ([0] + _noncoprime_below(n).tolist() if n > 0 else [])),
            kernel=lambda n, sg: np.concatenate(([0], sg[_noncoprime_below(n)])) if n else sg[:0],
        ),
        _counting("totient", lambda n: arith.totient(_fac(n)), 1, "move to phi(n)"),
        _counting("nontotient", lambda n: n - arith.totient(_fac(n)), 1, "move to n - phi(n)"),
        _counting("mtau", lambda n: arith.tau_proper(_fac(n)), 1, "move to the number of proper divisors"),
        _counting("stau", lambda n: n - arith.tau(_fac(n)) if n > 0 else 0, 0, "subtract the number of divisors"),
        _counting("momega_big", lambda n: arith.big_omega(_fac(n)), 1, "move to Omega(n)"),
        _counting("somega_big", lambda n: n - arith.big_omega(_fac(n)), 1, "subtract Omega(n)"),
        _counting("momega", lambda n: arith.small_omega(_fac(n)), 1, "move to omega(n)"),
        _counting("somega", lambda n: n - arith.small_omega(_fac(n)), 1, "subtract omega(n)"),
        Ruleset(
            "dividing", S.SPLIT_SUM, 1, "split into m > 1 equal parts",
            generate=_gen_dividing, kernel=_k_dividing,
        ),
        Ruleset(
            "divide-and-residue", S.SPLIT_SUM, 1, "split into equal parts d and a remainder r < d",
            generate=lambda n: (((d,) * (n // d)) + (((n % d),) if n % d else ()) for d in range(1, n)),
            kernel=_k_split(_one, lambda n: n - 1, keep_remainder=True),
        ),
        Ruleset(
            "complement-grundy", S.SPLIT_SUM, 1, "divide-and-residue with at least two equal parts",
            generate=_gen_complement_grundy,
            kernel=_k_split(_one, lambda n: n // 2, keep_remainder=True),
        ),
        Ruleset(
            "divide-throw-residue", S.SPLIT_SUM, 1, "split into equal parts, discard the remainder",
            generate=lambda n: ((d,) * (n // d) for d in range(1, n)),
            kernel=_k_split(_one, lambda n: n - 1, keep_remainder=False),
        ),
        Ruleset(
            "residue-throw-divisor", S.SINGLETON_MOVE_TO, 1, "move to a remainder n mod d (0 is the empty sum)",
            generate=_gen_residue_throw_divisor,
            kernel=lambda n, sg: sg[n % np.arange(1, n, dtype=np.int64)],
        ),
        Ruleset("m-factoring", S.SPLIT_SUM, 1, "split into a factorization", generate=_gen_m_factoring(False)),
        Ruleset(
            "m-factoring-distinct", S.SPLIT_SUM, 1, "split into a pairwise coprime factorization",
            generate=_gen_m_factoring(True),
        ),
        Ruleset("s-factoring", S.SPLIT_SUM, 0, "subtract each factor of a factorization", generate=_gen_s_factoring),
        Ruleset(
            "fullset-maliquot", S.FULLSET_SUM, 1, "move to the sum of all proper divisors",
            base=lambda n: np.asarray(_divs(n)[:-1], dtype=np.int64),
        ),
        Ruleset(
            "fullset-totient", S.FULLSET_SUM, 1, "move to the sum of all smaller totatives",
            base=_coprime_below,
        ),
        Ruleset(
            "ps-maliquot", S.POWERSET_MOVE_TO, 1, "move to a sum of proper divisors",
            base=lambda n: np.asarray(_divs(n)[:-1], dtype=np.int64),
        ),
        Ruleset(
            "ps-saliquot", S.POWERSET_SUBTRACT, 0, "move to a sum of differences n - d, d | n",
            base=lambda n: (n - np.asarray(div_lim(n), dtype=np.int64))[::-1].copy(),
        ),
        Ruleset("ps-maliquant", S.POWERSET_MOVE_TO, 1, "move to a sum of smaller non-divisors", base=_nondivisors),
        Ruleset(
            "ps-saliquant", S.POWERSET_SUBTRACT, 1, "move to a sum of differences n - k, k not dividing n",
            base=lambda n: (n - _nondivisors(n))[::-1].copy(),
        ),
        Ruleset("ps-totative", S.POWERSET_MOVE_TO, 1, "move to a sum of smaller totatives", base=_coprime_below),
        Ruleset(
            "ps-nontotative", S.POWERSET_MOVE_TO, 1, "move to a sum of smaller non-totatives",
            base=_noncoprime_below,
        ),
    ]


_REGISTRY = {rs.name: rs for rs in _build_registry()}
_SUB_RE = re.compile(r"sub\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}\Z")


def registry() -> list[Ruleset]:
    return list(_REGISTRY.values())


def names() -> list[str]:
    return list(_REGISTRY)


def subtraction(subset: Iterable[int]) -> Ruleset:
    """Subtraction game on S with sink 1: heaps never drop below 1."""
    s = tuple(sorted(set(int(x) for x in subset)))
    if not s or s[0] < 1:
        raise DomainError(f"subtraction set must contain positive integers, got {tuple(subset)}")
    return _subtraction(s)


@lru_cache(maxsize=None)
def _subtraction(s: tuple[int, ...]) -> Ruleset:
    arr = np.asarray(s, dtype=np.int64)
    return Ruleset(
        "sub{" + ",".join(map(str, s)) + "}",
        OptionSemantics.SINGLETON_SUBTRACT,
        1,
        f"subtract an element of {{{', '.join(map(str, s))}}}, sink 1",
        generate=lambda n: ((n - x,) for x in s if n - x >= 1),
        kernel=lambda n, sg: sg[n - arr[arr <= n - 1]],
        params=s,
    )


def lookup(name: str | Ruleset) -> Ruleset:
    if isinstance(name, Ruleset):
        return name
    rs = _REGISTRY.get(name)
    if rs is not None:
        return rs
    m = _SUB_RE.match(name.strip())
    if m:
        return subtraction(tuple(int(x) for x in m.group(1).split(",")))
    raise UnknownRulesetError(name, names())
