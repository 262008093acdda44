"""Different seeds can draw the same fractal.

When the mask is symmetric about a diagonal, swapping a cell's transform s
for s followed by that diagonal reflection may leave every level unchanged.
"""

from fractiling import (canonical_rep, expand, fractal_equal, is_redundant_diag, parse_config,
                        redundancy_partners)
from fractiling.tile import Configuration, format_quadruplet, parse_quadruplet

seed = parse_quadruplet("(0,R1,R3,R0)")
print(format_quadruplet(seed), "redundant:", is_redundant_diag(seed))
for other in sorted(redundancy_partners(seed), key=Configuration.encode):
    same = (expand(other, 4) == expand(seed, 4)).all()
    print("  ", format_quadruplet(other), "same depth-4 pattern:", bool(same))
print("class representative:", format_quadruplet(canonical_rep(seed)))

seed = parse_quadruplet("(0,R1,R1,R0)")
print(format_quadruplet(seed), "redundant:", is_redundant_diag(seed))

# Comparing only a few levels can mislead.  With four isolated corners
# the mask has all eight symmetries, and these two seeds first differ at
# level 3.
a = parse_config("R1 0 0 / 0 0 0 / 0 0 R0")
b = parse_config("R1 0 0 / 0 0 0 / 0 0 K1")
for depth in (1, 2, 3):
    print(f"equal through depth {depth}:", fractal_equal(a, b, depth))
