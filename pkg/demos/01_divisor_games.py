"""Heap games driven by divisors: tables, closed forms and where the forms stop."""

# %%
from arithgames import arith, sg_table, theorems
from arithgames.analysis import ratio_report, smallest_ratios
from arithgames.rulesets import lookup, options

for name in ("maliquot", "saliquot", "maliquant", "saliquant"):
    t = sg_table(name, 12)
    print(f"{name:10}", t.sequence())

# %% Moving to a proper divisor: the value is the number of prime factors with multiplicity.
t = sg_table("maliquot", 10_000)
assert all(v == arith.big_omega(arith.factor(n)) for n, v in t.items())
print("maliquot: SG(n) = Omega(n) holds to", t.limit)

# %% Subtracting a proper divisor: the value only depends on the 2-adic valuation.
print({n: options("saliquot", n) for n in (6, 8)})
print("saliquot verify:", *theorems.verify("saliquot", 10_000))

# %% Subtracting a non-divisor has no closed form, but odd heaps are easy and even
# heaps have small ratios near twice a prime.
sal = sg_table("saliquant", 1000)
print("odd heaps:", [(n, sal[n]) for n in range(1, 16, 2)])
print("smallest even ratios:", smallest_ratios(sal, 7, "even"))
worst = min(r for n, r in ratio_report(sal, "even", start=4))
print(f"min SG(n)/n over even n in [4, 1000]: {worst} ~ {float(worst):.3f}")

# %% Coverage of each ruleset by a proven formula.
for name in ("maliquot", "saliquant", "stau", lookup("sub{1,2}").name):
    cov, note = theorems.coverage(name)
    print(f"{name:10} {cov.value:8} {note}")
