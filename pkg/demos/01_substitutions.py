"""
Block substitutions and the two grids T_n and S_n
=================================================

"""

# Every letter of the 16-letter alphabet turns into a 2x2 block.
from paperfold import MU, PHI, Grid, S, T, cell_at, mu_apply, supertile

print(MU.image("N").to_text())

# Iterating from N gives T_n, a 2^n x 2^n square.
for n in range(4):
    print(f"T_{n}:", T(n).shape)
print(T(3).to_text())

# T_n sits in the upper right quadrant of T_{n+1}.
side = 8
assert T(4).window(1, side + 1, side, side) == T(3)

# The second rule maps each letter to a block over 0..3; S_n = phi(T_{n-1}).
print(S(3).to_text())
assert PHI(T(2)) == S(3)

# Grids are immutable values with a JSON form.
text = S(1).to_json()
print(text)
assert Grid.from_json(text) == S(1)

# Single cells of deep levels without building the grid.
print("T_20 at (1, 1):", cell_at("N", 20, 1, 1))
print("T_20 at (123456, 654321):", cell_at("N", 20, 123456, 654321))

# A level-12 grid is 4096 x 4096, enough to check the streaming answer.
big = supertile("N", 12)
assert cell_at("N", 12, 4000, 17) == big[4000, 17]
print(mu_apply(Grid.single("A")).to_text())
