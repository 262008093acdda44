"""Expanding a seed and writing the result as PBM/PPM images."""

from pathlib import Path

from fractiling import expand, expand_labeled, parse_config
from fractiling.render import PRESETS, preset, write_image

out = Path("demo_output")
out.mkdir(exist_ok=True)

seed = parse_config("0 R0 / R0 R0")
for k in range(3):
    m = expand(seed, k)
    print(f"depth {k}: side {m.shape[0]}, {int(m.sum())} cells (3^{k + 1})")
print(expand(seed, 2))

# a labeled expansion remembers which composite transform placed each cell
print(expand_labeled(parse_config("0 R1 / R0 R0"), 1))

for name in PRESETS:
    seed = preset(name)
    if name.startswith("texture"):
        path = out / f"{name}.ppm"
        write_image(path, seed, 6, mode="texture", fmt="p6", scale=2)
    else:
        depth = 8 if seed.n == 2 else 5
        path = out / f"{name}.pbm"
        write_image(path, seed, depth)
    print(f"{name:<22} {str(seed):<34} -> {path}")
