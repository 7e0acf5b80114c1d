"""Powerset games: every value is 0 or a power of two, so tables store exponents."""

# %%
from arithgames.engine import sg_exponent_table, sg_table
from arithgames.errors import PartialTableError
from arithgames.rulesets import allowed_set
from arithgames.theorems import closed_form, closed_form_exponent, verify

print("ps-maliquot, base set of 12:", allowed_set("ps-maliquot", 12))
for name in ("ps-maliquot", "ps-totative", "ps-maliquant"):
    print(f"{name:13}", sg_table(name, 19).sequence())

# %% Values outgrow machine words quickly, and plain tables stop with a partial result.
try:
    sg_table("ps-maliquant", 100)
except PartialTableError as e:
    print(f"stopped at n={e.last_index}, last value {e.partial[e.last_index]}")

# %% The exponent table keeps going, and the closed form handles any size.
exps = sg_exponent_table("ps-maliquant", 10_000)
print("exponent at 9999:", int(exps[9999]), "closed form:", closed_form_exponent("ps-maliquant", 9999))
print("SG(101) =", closed_form("ps-maliquant", 101))
for name in ("ps-saliquot", "ps-maliquant", "ps-totative"):
    print(name, *verify(name, 10_000))
