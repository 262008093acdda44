"""The eight symmetries of the square and how they compose.

Rotations are counterclockwise quarter turns; each reflection K_i flips the
rows after the rotation R_i.
"""

import numpy as np

from fractiling import D4, Transform, apply_transform, compose, inverse

probe = np.arange(9).reshape(3, 3)
for t in Transform:
    print(t.name, "(rotation)" if t.is_rotation else "(reflection)")
    print(apply_transform(t, probe), "\n")

# Composition table, compose(row, column) applies the column first.
names = [t.name for t in Transform]
print("    " + " ".join(f"{n:>3}" for n in names))
for a in Transform:
    print(f"{a.name:>3} " + " ".join(f"{compose(a, b).name:>3}" for b in Transform))

print("\ninverses:", {t.name: inverse(t).name for t in Transform})
print("transpose is", D4.main_reflection.name, "and anti-transpose is", D4.anti_reflection.name)
