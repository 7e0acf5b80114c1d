"""Closed-form nim-values and checkable claims about the nim-value tables."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import arith
from .engine import CLOSED_FORM, SGTable, sg_exponent_table, sg_table
from .errors import DomainError
from .rulesets import Ruleset, lookup


class Coverage(enum.Enum):
    FULL = "full"
    PARTIAL = "partial"
    NONE = "none"


_PARTIAL_NOTES = {
    "saliquant": "odd heaps (n-1)/2; bound SG(n) < n/2",
    "nontotative": "primes, prime squares, adjacent prime products, SG(2n) = n, residue classes mod 6 and 30, bounds",
    "mtau": "observation below 46656",
    "momega_big": "observation below 2^16",
    "momega": "observation below 7!",
    "complement-grundy": "some values never occur; SG(n)/n -> 0",
}

_FULL = {
    "maliquot", "saliquot", "maliquant", "totative", "totient", "dividing",
    "divide-throw-residue", "residue-throw-divisor", "m-factoring", "m-factoring-distinct",
    "fullset-maliquot", "ps-saliquot", "ps-maliquant", "ps-totative",
}


def coverage(rs: Ruleset | str) -> tuple[Coverage, str]:
    rs = lookup(rs)
    if rs.name in _FULL:
        return Coverage.FULL, ""
    if rs.name in _PARTIAL_NOTES:
        return Coverage.PARTIAL, _PARTIAL_NOTES[rs.name]
    return Coverage.NONE, ""


def _f(n: int) -> arith.Factorization:
    return arith.factor(n)


def _i_p(n: int) -> int:
    return arith.prime_index(arith.get_sieve(n), n)


def residue_block(n: int) -> int:
    """k with 3(2^(k-1) - 1) + 2 <= n <= 3(2^k - 1) + 1; 0 for n = 1."""
    if n < 1:
        raise DomainError(f"residue block is undefined for {n}")
    k = 0
    while n > 3 * ((1 << k) - 1) + 1:
        k += 1
    return k


_PS_MALIQUANT_HEAD = (None, None, 0, None, 1, 0, 2, 3)  # exponents of 0,0,1,0,2,1,4,8


def ps_maliquant_exponent(n: int) -> int | None:
    if n < 1:
        raise DomainError(f"ps-maliquant is played on heaps >= 1, got {n}")
    while n >= 10 and n % 2 == 0:
        n //= 2
    if n <= 8:
        return _PS_MALIQUANT_HEAD[n - 1]
    return (n - 1) // 2


def closed_form_exponent(rs: Ruleset | str, n: int) -> int | None:
    """Powerset games with a solution: e such that SG(n) = 2^e, or None when SG(n) = 0."""
    rs = lookup(rs)
    rs.check(n)
    if rs.name == "ps-saliquot":
        return None if n == 0 else arith.two_valuation(n)
    if rs.name == "ps-maliquant":
        return ps_maliquant_exponent(n)
    if rs.name == "ps-totative":
        return None if n == 1 else _i_p(n) - 1
    raise DomainError(f"no exponent-form solution for {rs.name}")


def _from_exponent(name):
    def value(n):
        e = closed_form_exponent(name, n)
        return 0 if e is None else 1 << e

    return value


_CLOSED: dict[str, Callable[[int], int]] = {
    "maliquot": lambda n: arith.big_omega(_f(n)),
    "saliquot": lambda n: 0 if n == 0 else arith.two_valuation(n) + 1,
    "maliquant": lambda n: 0 if n == 0 else arith.odd_index(n),
    "totative": lambda n: 0 if n == 1 else _i_p(n),
    "totient": lambda n: 0 if n == 1 else (arith.shapiro_class(n) + 1) % 2,
    "dividing": lambda n: arith.omega_two(_f(n)),
    "divide-throw-residue": lambda n: 0 if n == 1 else arith.odd_index(n),
    "residue-throw-divisor": residue_block,
    "m-factoring": lambda n: 0 if n == 1 else arith.big_omega(_f(n)) - 1,
    "m-factoring-distinct": lambda n: 0 if n == 1 else arith.small_omega(_f(n)) - 1,
    "fullset-maliquot": lambda n: int(n > 1 and arith.is_squarefree(_f(n))),
    "ps-saliquot": _from_exponent("ps-saliquot"),
    "ps-maliquant": _from_exponent("ps-maliquant"),
    "ps-totative": _from_exponent("ps-totative"),
}


def has_closed_form(rs: Ruleset | str) -> bool:
    return lookup(rs).name in _CLOSED


def closed_form(rs: Ruleset | str, n: int) -> int | None:
    """Exact SG(n) from the solved formula, or None if the ruleset has none."""
    rs = lookup(rs)
    rs.check(n)
    fn = _CLOSED.get(rs.name)
    return None if fn is None else fn(n)


class ClosedFormValues:
    """Value source backed by the closed form, usable wherever a table is."""

    def __init__(self, rs: Ruleset | str, limit: int | None = None):
        self.rs = lookup(rs)
        if self.rs.name not in _CLOSED:
            raise DomainError(f"{self.rs.name} has no closed form")
        self.limit = arith.MAX_LIMIT if limit is None else limit

    def __getitem__(self, n: int) -> int:
        return closed_form(self.rs, n)


def closed_form_table(rs: Ruleset | str, limit: int) -> SGTable:
    rs = lookup(rs)
    if rs.name not in _CLOSED:
        raise DomainError(f"{rs.name} has no closed form")
    values = np.zeros(limit + 1, dtype=np.int64)
    for n in range(rs.domain_min, limit + 1):
        values[n] = closed_form(rs, n)
    return SGTable(rs.name, rs.domain_min, values, np.full(limit + 1, CLOSED_FORM, dtype=np.uint8))


# -- claims -----------------------------------------------------------------


@dataclass(frozen=True)
class ClaimResult:
    label: str
    passed: bool
    checked: int
    witness: tuple[int, int] | None = None  # (n, SG(n)) of the first failure
    hard: bool = True
    expected: int | None = None  # closed-form value at the witness, if any

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = ""
        if self.witness is not None:
            tail = f" (first failure n={self.witness[0]}, SG={self.witness[1]}"
            tail += ")" if self.expected is None else f", formula {self.expected})"
        kind = "" if self.hard else " [report]"
        return f"{status}{kind} {self.label}: {self.checked} heaps checked{tail}"


@dataclass(frozen=True)
class Claim:
    """A predicate over (n, SG(n)); ``applies`` selects the heaps it talks about."""

    ruleset: str
    label: str
    predicate: Callable[[int, int], bool]
    applies: Callable[[int], bool] = lambda n: True
    lo: int = 0
    hi: int | None = None  # exclusive
    kind: str = "theorem"  # theorem | observation | conjecture | hypothesis

    @property
    def hard(self) -> bool:
        return self.kind in ("theorem", "observation")

    def check(self, table: SGTable) -> ClaimResult:
        if table.ruleset != self.ruleset:
            raise ValueError(f"claim about {self.ruleset} checked against {table.ruleset}")
        hi = table.limit + 1 if self.hi is None else min(self.hi, table.limit + 1)
        checked = 0
        for n in range(max(self.lo, table.domain_min), hi):
            if not self.applies(n):
                continue
            v = int(table.values[n])
            checked += 1
            if not self.predicate(n, v):
                return ClaimResult(self.label, False, checked, (n, v), self.hard)
        return ClaimResult(self.label, True, checked, None, self.hard)


def _is_prime(n: int) -> bool:
    return arith.get_sieve(n).is_prime(n) if n >= 2 else False


def _prime_square(n: int) -> bool:
    f = _f(n)
    return len(f.pairs) == 1 and f.pairs[0][1] == 2


def _gap_product(n: int, gap: int) -> int | None:
    """i when n = p_i * p_(i+gap), else None."""
    if n < 2:
        return None
    f = _f(n)
    if len(f.pairs) != 2 or any(a != 1 for _, a in f.pairs):
        return None
    idx = arith.get_sieve(n).prime_index
    (p, _), (q, _) = f.pairs
    i, j = idx[p], idx[q]
    return i if j - i == gap else None


def _nontotative_claims() -> list[Claim]:
    def item_iii(n, v):
        i = _gap_product(n, 1)
        if n == 8:
            return v in (3, 4)
        if i is None:
            return v not in (3, 4)
        return v == (3 if i % 2 == 1 else 4)

    def item_iv(n, v):
        i = _gap_product(n, 2)
        if n == 12:
            return v in (5, 6)
        if i is None:
            return v not in (5, 6)
        return v == (5 if i % 4 in (1, 2) else 6)

    name = "nontotative"
    return [
        Claim(name, "(i) SG(n) = 1 iff n is prime", lambda n, v: (v == 1) == _is_prime(n), lo=2),
        Claim(name, "(ii) SG(n) = 2 iff n is a prime square", lambda n, v: (v == 2) == _prime_square(n), lo=1),
        Claim(name, "(iii) SG(n) in {3,4} iff n = p_i p_(i+1) or 8; 3 iff i odd", item_iii, lo=1),
        Claim(name, "(iv) SG(n) in {5,6} iff n = p_i p_(i+2) or 12; 5 iff i = 1,2 mod 4", item_iv, lo=1),
        Claim(name, "(v) SG(2n) = n", lambda n, v: v == n // 2, applies=lambda n: n % 2 == 0, lo=1),
        Claim(name, "(vi) n = 3 mod 6: SG(n) = floor((n+1)/4)", lambda n, v: v == (n + 1) // 4,
              applies=lambda n: n % 6 == 3),
        Claim(name, "(vii) n = 5, 25 mod 30: SG(n) in {floor(n/10), ceil(n/10)}",
              lambda n, v: v in (n // 10, -(-n // 10)), applies=lambda n: n % 30 in (5, 25)),
        Claim(name, "(viii) SG(n) <= n/2", lambda n, v: 2 * v <= n, lo=2),
        Claim(name, "(ix) odd n: SG(n) <= (n+1)/4", lambda n, v: 4 * v <= n + 1, applies=lambda n: n % 2 == 1,
              lo=2),
    ]


def _nonprime(k: int) -> bool:
    return not _is_prime(k)


def nontotient_dist(n: int, budget: int = 10_000) -> int | None:
    """Iterations of n -> n - phi(n) until an even prime power (1 included); None past budget."""
    if n < 1:
        raise DomainError(f"dist is undefined for {n}")
    for steps in range(budget + 1):
        f = _f(n)
        if n == 1 or (len(f.pairs) == 1 and f.pairs[0][1] % 2 == 0):
            return steps
        n -= arith.totient(f)
    return None


def _dtr_matches_maliquant(n: int, v: int) -> bool:
    return v == arith.odd_index(n)


def partial_claims(rs: Ruleset | str) -> list[Claim]:
    rs = lookup(rs)
    name = rs.name
    if name == "saliquant":
        return [
            Claim(name, "odd n: SG(n) = (n-1)/2", lambda n, v: 2 * v == n - 1, applies=lambda n: n % 2 == 1),
            Claim(name, "SG(n) < n/2", lambda n, v: 2 * v < n, lo=1),
            Claim(name, "SG(n) >= (n-2)/4", lambda n, v: 4 * v >= n - 2, kind="conjecture"),
        ]
    if name == "nontotative":
        return _nontotative_claims()
    if name == "mtau":
        return [Claim(name, "n < 46656: SG(n) = 1 iff tau'(n) is nonprime",
                      lambda n, v: (v == 1) == _nonprime(arith.tau_proper(_f(n))), lo=2, hi=46656,
                      kind="observation")]
    if name == "momega_big":
        return [Claim(name, "n < 2^16: SG(n) = 1 iff Omega(n) is nonprime",
                      lambda n, v: (v == 1) == _nonprime(arith.big_omega(_f(n))), lo=2, hi=2**16,
                      kind="observation")]
    if name == "momega":
        return [Claim(name, "n < 7!: SG(n) = 1 iff omega(n) = 1",
                      lambda n, v: (v == 1) == (arith.small_omega(_f(n)) == 1), lo=1, hi=5040,
                      kind="observation")]
    if name == "complement-grundy":
        return [Claim(name, "nim-values 12, 15, 20 never occur", lambda n, v: v not in (12, 15, 20),
                      kind="observation-report")]
    if name == "divide-throw-residue":
        return [Claim(name, "n >= 2: same values as maliquant (i_o(n))", _dtr_matches_maliquant, lo=2)]
    if name == "nontotient":
        return [Claim(name, "SG(n) = dist(n) mod 2", lambda n, v: v == (nontotient_dist(n) or 0) % 2,
                      lo=1, kind="hypothesis")]
    return []


def check_claims(table: SGTable) -> list[ClaimResult]:
    return [c.check(table) for c in partial_claims(table.ruleset)]


def agreement(table: SGTable) -> tuple[int, int | None]:
    """Compare an engine table with the closed form: (heaps checked, first mismatch or None)."""
    fn = _CLOSED.get(table.ruleset)
    if fn is None:
        raise DomainError(f"{table.ruleset} has no closed form")
    for n, v in table.items():
        if fn(n) != v:
            return n - table.domain_min + 1, n
    return len(table), None


def saliquant_even_ratios(table: SGTable) -> list[Fraction]:
    return [Fraction(table[n], n) for n in table.heaps() if n >= 2 and n % 2 == 0]


def verify(rs: Ruleset | str, limit: int) -> list[ClaimResult]:
    """Check the closed form (if any) and every partial claim against the engine up to ``limit``."""
    rs = lookup(rs)
    results = []
    lo = rs.domain_min
    if rs.semantics.is_powerset:
        exps = sg_exponent_table(rs, limit)
        if rs.name in _CLOSED:
            results.append(_agree_exponents(rs, exps))
    else:
        table = sg_table(rs, limit)
        if rs.name in _CLOSED:
            checked, bad = agreement(table)
            fail = None if bad is None else (bad, table[bad])
            results.append(ClaimResult(
                "closed form equals engine", bad is None, checked, fail,
                expected=None if bad is None else closed_form(rs, bad),
            ))
        results.extend(check_claims(table))
    if not results:
        results.append(ClaimResult(f"no closed form or claims for {rs.name}; table built", True, limit - lo + 1))
    return results


def _agree_exponents(rs: Ruleset, exps: np.ndarray) -> ClaimResult:
    def val(e):
        return 0 if e is None or e < 0 else 1 << int(e)

    checked = 0
    for n in range(rs.domain_min, len(exps)):
        checked += 1
        want = closed_form_exponent(rs, n)
        got = int(exps[n])
        if (want is None and got != -1) or (want is not None and got != want):
            return ClaimResult("closed form equals engine (exponent form)", False, checked,
                               (n, val(got)), expected=val(want))
    return ClaimResult("closed form equals engine (exponent form)", True, checked)
