"""Sums of heaps from different rulesets: values, winning moves and a scripted game."""

# %%
from arithgames import parse, sum_value, winning_moves
from arithgames.engine import legal_moves
from arithgames.posexpr import format_position
from arithgames.theorems import ClosedFormValues

for text in ("7@totient + 7@totative", "7@divide-and-residue + 3@divide-and-residue", "18@dividing + 7@dividing"):
    pos = parse(text)
    print(f"{text:48} value {sum_value(pos)}")
    for m in winning_moves(pos):
        print("    ", m, "=>", format_position(m.apply(pos)))

# %% A heap far past any table still works when a closed form supplies the values.
pos = parse("48114@totient + 3@sub{1,2}")
tables = {"totient": ClosedFormValues("totient")}
print(format_position(pos), "value", sum_value(pos, tables))
print("winning:", *winning_moves(pos, tables))

# %% Computer against computer: the side that starts at a nonzero value always wins.
pos = parse("9@saliquot + 2*6@dividing + 5@sub{1,3}")
player = 0
while True:
    moves = winning_moves(pos, first_only=True)
    if not moves:
        moves = legal_moves(pos)
        if not moves:
            print(f"player {player} has no move and loses")
            break
    print(f"player {player}: {moves[0]}")
    pos = moves[0].apply(pos)
    player ^= 1
