import pytest

from arithgames import arith, theorems
from arithgames.engine import sg_table
from arithgames.errors import DomainError
from arithgames.rulesets import names
from arithgames.theorems import (
    ClosedFormValues, Coverage, closed_form, closed_form_exponent, closed_form_table, coverage,
    nontotient_dist, partial_claims, residue_block,
)

from .tables import NONTOTIENT_DIST


def test_closed_form_examples():
    assert closed_form("saliquot", 8) == 4
    assert closed_form("residue-throw-divisor", 7) == 2
    assert closed_form("ps-maliquant", 13) == 64
    assert closed_form_exponent("ps-maliquant", 13) == 6
    assert closed_form("stau", 5) is None
    assert closed_form("totient", 48114) == 1


def test_closed_form_domain():
    with pytest.raises(DomainError):
        closed_form("maliquot", 0)
    with pytest.raises(DomainError):
        closed_form_exponent("ps-maliquot", 6)


def test_huge_powerset_values_stay_exact():
    # 2^4999 does not fit in any machine word
    assert closed_form_exponent("ps-maliquant", 9999) == 4999
    assert closed_form("ps-maliquant", 9999) == 2**4999
    assert closed_form_exponent("ps-maliquant", 9999 * 8) == 4999


def test_coverage_column():
    full = {n for n in names() if coverage(n)[0] is Coverage.FULL}
    partial = {n for n in names() if coverage(n)[0] is Coverage.PARTIAL}
    assert "maliquot" in full and "ps-totative" in full
    assert partial == {"saliquant", "nontotative", "mtau", "momega_big", "momega", "complement-grundy"}
    for n in ("ps-maliquot", "ps-nontotative", "fullset-totient", "stau", "somega_big", "somega", "nontotient"):
        assert coverage(n)[0] is Coverage.NONE
    assert all(theorems.has_closed_form(n) for n in full)


@pytest.mark.parametrize("name", sorted(theorems._CLOSED))
def test_closed_form_matches_engine_small(name):
    table = sg_table(name, 60)
    checked, bad = theorems.agreement(table)
    assert bad is None
    assert checked == len(table)


def test_closed_form_table():
    t = closed_form_table("maliquot", 8)
    assert t.sequence() == [0, 1, 1, 2, 1, 2, 1, 3]
    assert set(t.provenance[1:].tolist()) == {1}
    with pytest.raises(DomainError):
        closed_form_table("stau", 8)


def test_closed_form_values_source():
    src = ClosedFormValues("totient")
    assert src[48114] == 1
    assert src.limit >= 10**6
    with pytest.raises(DomainError):
        ClosedFormValues("stau")


def test_totient_formula_matches_iteration():
    for n in range(2, 10_001):
        assert closed_form("totient", n) == (arith.shapiro_class_iterated(n) + 1) % 2


def test_residue_blocks_partition():
    prev_hi = 1
    for k in range(1, 14):
        lo, hi = 3 * (2 ** (k - 1) - 1) + 2, 3 * (2**k - 1) + 1
        assert lo == prev_hi + 1
        assert residue_block(lo) == residue_block(hi) == k
        prev_hi = hi
    assert residue_block(1) == 0


def test_ps_maliquant_head():
    assert [closed_form("ps-maliquant", n) for n in range(1, 9)] == [0, 0, 1, 0, 2, 1, 4, 8]
    assert closed_form("ps-maliquant", 80) == closed_form("ps-maliquant", 40) == closed_form("ps-maliquant", 20)


def test_nontotient_dist():
    assert {n: nontotient_dist(n) for n in NONTOTIENT_DIST} == NONTOTIENT_DIST
    assert nontotient_dist(10) == 2
    assert nontotient_dist(16) == 0
    assert nontotient_dist(2) == 1
    assert nontotient_dist(10, budget=1) is None
    with pytest.raises(DomainError):
        nontotient_dist(0)


def test_nontotative_claims():
    table = sg_table("nontotative", 100)
    by_label = {c.label[: c.label.index(")") + 1]: c for c in partial_claims("nontotative")}
    assert len(by_label) == 9
    res = by_label["(v)"].check(table)
    assert res.passed and res.checked == 50


def test_saliquant_odd_claim():
    table = sg_table("saliquant", 19)
    claim = partial_claims("saliquant")[0]
    assert claim.check(table).passed
    assert table[19] == 9
    assert [c.hard for c in partial_claims("saliquant")] == [True, True, False]


def test_mtau_claim_at_sixteen():
    table = sg_table("mtau", 100)
    assert arith.tau_proper(arith.factor(16)) == 4 and table[16] == 1
    assert partial_claims("mtau")[0].check(table).passed


def test_divide_throw_residue_claim():
    table = sg_table("divide-throw-residue", 500)
    assert partial_claims("divide-throw-residue")[0].check(table).passed
    assert table[1] == 0 != arith.odd_index(1)


def test_claim_reports_witness():
    claim = theorems.Claim("maliquot", "always zero", lambda n, v: v == 0)
    res = claim.check(sg_table("maliquot", 10))
    assert not res.passed and res.witness == (2, 1)
    assert "first failure n=2" in str(res)
    with pytest.raises(ValueError):
        claim.check(sg_table("saliquot", 5))


def test_verify_reports_mismatch_values():
    res = theorems.verify("saliquot", 200)
    assert [r.passed for r in res] == [True]
    soft = theorems.verify("nontotient", 200)
    assert all(not r.hard for r in soft)
    assert theorems.verify("stau", 50)[0].passed
