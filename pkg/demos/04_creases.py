"""
Crease patterns
===============

"""

# Fold a square in half n times, unfold, and record the creases.
from paperfold import S, decorate, fold_structure, quadrant_equivalence, reflect_x, reflect_y
from paperfold.render import render, render_ascii, write_atomic

f = fold_structure(2)
print(render_ascii(f))
print(f.crease_count(), "creased unit edges")

# Reflections mirror the field and swap mountain and valley.
print(render_ascii(reflect_x(fold_structure(1))))
print(render_ascii(reflect_y(fold_structure(1))))

# Decorate S_n cell by cell: each letter fixes its left and bottom edge.
print(render_ascii(decorate(S(2))))

# The decorated S_n is the upper right quadrant of the next fold structure.
for n in range(1, 7):
    print(n, bool(quadrant_equivalence(n)))

# SVG output.
write_atomic("fold_4.svg", render(fold_structure(4), "svg"))
print("wrote fold_4.svg")
