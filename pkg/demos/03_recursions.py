"""
A_n three ways
==============

"""

import time

import numpy as np

from paperfold import A_bruteforce, A_closed, A_recursive, abc_recursive

# Brute force over the grids.
t0 = time.perf_counter()
brute = [A_bruteforce(n) for n in range(1, 13)]
print("brute force:", brute, f"({time.perf_counter() - t0:.1f}s)")

# The halving recursion and the closed form.
print("recursion:  ", [A_recursive(n) for n in range(1, 13)])
print("closed form:", [A_closed(n) for n in range(1, 13)])

# The twelve class counts follow a mod-4 recursion of their own.
col = abc_recursive(100)
print("class counts at 100:", col)
assert sum(col[k] for k in ("a11", "a12", "a21", "a22")) == A_closed(100)

# The closed form far out, compared with the recursion.
ns = np.unique(np.logspace(0, 8, 60).astype(np.int64))
assert all(A_recursive(int(n)) == A_closed(int(n)) for n in ns)
print(f"A_(10^8) = {A_closed(10**8)}")

# With x = 2^alpha / n, A_n / n^2 is about 12 + 24x - 16x^2, which stays in [20, 21].
ratio = [A_closed(n) / n**2 for n in range(2**10, 2**12)]
print(f"A_n / n^2 between {min(ratio):.4f} and {max(ratio):.4f}")
