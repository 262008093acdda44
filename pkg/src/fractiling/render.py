"""Raster output: PBM/PPM encoders, named presets and the motif gallery.

Binary patterns become portable bitmaps (plain ``P1`` or raw ``P4``),
occupied cells black.  Labeled patterns become raw ``P6`` pixmaps through
a fixed 9-entry palette: index 0 is the background, indices 1..8 are
R0..K3.

Every file is written to a temporary sibling and renamed into place, so
an interrupted run never leaves a truncated image behind.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from .group import Transform
from .tile import (Configuration, SizeLimitError, expand, expand_labeled, format_config,
                   max_side, motif_id, parse_config)

__all__ = [
    "PALETTE",
    "PRESETS",
    "preset",
    "rasterize",
    "rasterize_labeled",
    "encode_pbm",
    "encode_ppm",
    "write_atomic",
    "write_image",
    "gallery",
    "palette_legend",
]

PALETTE = np.array([
    (255, 255, 255),  # background
    (0, 0, 0),        # R0
    (230, 25, 75),    # R1
    (60, 180, 75),    # R2
    (0, 130, 200),    # R3
    (245, 130, 48),   # K0
    (145, 30, 180),   # K1
    (70, 240, 240),   # K2
    (240, 50, 230),   # K3
], dtype=np.uint8)

PRESETS = {
    "sierpinski-triangle": "0 R0 / R0 R0",
    "sierpinski-carpet": "R0 R0 R0 / R0 0 R0 / R0 R0 R0",
    "von-koch": "0 R0 R0 / R0 0 R0 / R0 R0 0",
    "maple-leaf": "0 R0 / R0 R2",
    "demo-2x2-r3k2": "0 R0 / R3 K2",
    "demo-3x3-rot": "0 0 R0 / 0 0 R1 / R0 R3 R2",
    # full seeds, meant for the textural (labeled) rendering
    "texture-id-k3k1": "R0 R0 / K3 K1",
    "texture-r1-k2k3": "R0 R1 / K2 K3",
    "texture-id-k2k1": "R0 R0 / K2 K1",
}


def preset(name: str) -> Configuration:
    try:
        return parse_config(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; valid names: {', '.join(PRESETS)}") from None


def _scaled(array: np.ndarray, scale: int, limit: int | None) -> np.ndarray:
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    limit = max_side() if limit is None else limit
    side = array.shape[0] * scale
    if side > limit:
        raise SizeLimitError(f"image side {side} exceeds the limit of {limit}")
    if scale == 1:
        return array
    return np.kron(array, np.ones((scale, scale), dtype=array.dtype))


def rasterize(pattern: np.ndarray, scale: int = 1, *, limit: int | None = None) -> np.ndarray:
    """Bit image (1 = foreground) with each cell blown up to ``scale x scale`` pixels."""
    bits = (np.asarray(pattern) != 0).astype(np.uint8)
    return _scaled(bits, scale, limit)


def rasterize_labeled(labels: np.ndarray, scale: int = 1, *, limit: int | None = None) -> np.ndarray:
    """Palette-index image: 0 for empty cells, ``label + 1`` otherwise."""
    labels = np.asarray(labels)
    index = np.where(labels >= 0, labels + 1, 0).astype(np.uint8)
    return _scaled(index, scale, limit)


def encode_pbm(bits: np.ndarray, *, plain: bool = False) -> bytes:
    bits = (np.asarray(bits) != 0).astype(np.uint8)
    height, width = bits.shape
    if plain:
        lines = [b"P1", f"{width} {height}".encode()]
        for row in bits:
            digits = "".join("1" if b else "0" for b in row)
            # keep lines within the 70 characters the format recommends
            lines.extend(digits[k:k + 70].encode() for k in range(0, len(digits), 70))
        return b"\n".join(lines) + b"\n"
    header = f"P4\n{width} {height}\n".encode()
    return header + np.packbits(bits, axis=1).tobytes()


def encode_ppm(index: np.ndarray, palette: np.ndarray = PALETTE) -> bytes:
    index = np.asarray(index)
    height, width = index.shape
    return f"P6\n{width} {height}\n255\n".encode() + palette[index].tobytes()


def _umask() -> int:
    mask = os.umask(0)
    os.umask(mask)
    return mask


def write_atomic(path: str | os.PathLike, data: bytes) -> Path:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        # mkstemp creates 0600; give the result the permissions open() would
        os.chmod(tmp, 0o666 & ~_umask())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_image(path, c: Configuration, depth: int, *, mode: str = "binary",
                fmt: str = "p4", scale: int = 1) -> np.ndarray:
    """Expand, rasterize and write one image; returns the pixel array."""
    if mode == "binary":
        if fmt not in ("p1", "p4"):
            raise ValueError(f"binary images are written as p1 or p4, not {fmt}")
        pixels = rasterize(expand(c, depth), scale)
        data = encode_pbm(pixels, plain=fmt == "p1")
    elif mode == "texture":
        if fmt != "p6":
            raise ValueError(f"textural images are written as p6, not {fmt}")
        pixels = rasterize_labeled(expand_labeled(c, depth), scale)
        data = encode_ppm(pixels)
    else:
        raise ValueError(f"mode must be 'binary' or 'texture', not {mode!r}")
    write_atomic(path, data)
    return pixels


def _tile_name(c: Configuration, position: int) -> str:
    try:
        return motif_id(c)
    except ValueError:
        return f"config{position:03d}"


def gallery(configs: Sequence[Configuration], out_dir, depth: int = 6, *, scale: int = 1,
            columns: int = 16, gap: int = 2, fmt: str = "p4") -> list[Path]:
    """One image per seed plus ``index.txt`` and a composite ``index`` sheet.

    Files are named by motif id when the seed has the ``(0,b,c,d)`` form.
    The sheet tiles the images row by row in list order, ``gap`` background
    pixels apart.
    """
    if not configs:
        raise ValueError("gallery needs at least one configuration")
    if fmt not in ("p1", "p4"):
        raise ValueError(f"gallery images are p1 or p4, not {fmt}")
    sides = {c.n for c in configs}
    if len(sides) != 1:
        raise ValueError("gallery seeds must share one side length")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = ".pbm"

    images = []
    paths = []
    manifest = []
    names = set()
    for k, c in enumerate(configs):
        name = _tile_name(c, k)
        if name in names:
            raise ValueError(f"duplicate gallery entry {name}")
        names.add(name)
        path = out_dir / f"{name}{ext}"
        pixels = write_image(path, c, depth, fmt=fmt, scale=scale)
        images.append(pixels)
        paths.append(path)
        manifest.append(f"{path.name}\t{name}\t{format_config(c)}")

    columns = max(1, min(columns, len(images)))
    rows = -(-len(images) // columns)
    side = images[0].shape[0]
    sheet = np.zeros((rows * side + (rows - 1) * gap, columns * side + (columns - 1) * gap),
                     dtype=np.uint8)
    for k, pixels in enumerate(images):
        r, col = divmod(k, columns)
        y, x = r * (side + gap), col * (side + gap)
        sheet[y:y + side, x:x + side] = pixels
    paths.append(write_atomic(out_dir / f"index{ext}", encode_pbm(sheet, plain=fmt == "p1")))
    paths.append(write_atomic(out_dir / "index.txt", ("\n".join(manifest) + "\n").encode()))
    return paths


def palette_legend() -> dict[str, tuple[int, int, int]]:
    legend = {"background": tuple(int(v) for v in PALETTE[0])}
    for t in Transform:
        legend[t.name] = tuple(int(v) for v in PALETTE[t.code])
    return legend
