import importlib.util
import io
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from fractiling.census import list_motifs_2x2
from fractiling.group import Transform
from fractiling.render import (PALETTE, PRESETS, encode_pbm, encode_ppm, gallery, palette_legend,
                               preset, rasterize, rasterize_labeled, write_atomic, write_image)
from fractiling.tile import SizeLimitError, expand, expand_labeled, parse_config

GOLDEN = Path(__file__).parent / "golden"

_spec = importlib.util.spec_from_file_location("regenerate", GOLDEN / "regenerate.py")
regenerate = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(regenerate)


def naive_bits(codes, n, depth):
    """The expansion rule with plain lists: rotate counterclockwise, then flip rows."""
    m = [[1 if codes[i * n + j] else 0 for j in range(n)] for i in range(n)]
    for _ in range(depth):
        size = len(m)
        big = [[0] * (size * n) for _ in range(size * n)]
        for bi in range(n):
            for bj in range(n):
                code = codes[bi * n + bj]
                if not code:
                    continue
                t = Transform.from_code(code)
                block = m
                for _ in range(int(t) % 4):
                    block = [[block[j][size - 1 - i] for j in range(size)] for i in range(size)]
                if not t.is_rotation:
                    block = block[::-1]
                for i in range(size):
                    big[bi * size + i][bj * size:(bj + 1) * size] = block[i]
        m = big
    return np.array(m, dtype=np.uint8)


def pbm_foreground(data: bytes) -> np.ndarray:
    image = Image.open(io.BytesIO(data))
    assert image.mode == "1"
    return (~np.array(image)).astype(np.uint8)


# -- encoders

@pytest.mark.parametrize("plain", [False, True])
@pytest.mark.parametrize("shape", [(1, 1), (3, 5), (8, 8), (9, 17), (4, 100)])
def test_pbm_decodes_back(shape, plain, rng):
    bits = rng.integers(0, 2, size=shape).astype(np.uint8)
    assert np.array_equal(pbm_foreground(encode_pbm(bits, plain=plain)), bits)


def test_plain_pbm_line_length():
    data = encode_pbm(np.ones((2, 150), dtype=np.uint8), plain=True)
    assert data.startswith(b"P1\n150 2\n")
    assert max(len(line) for line in data.splitlines()) <= 70


def test_ppm_decodes_back(rng):
    index = rng.integers(0, 9, size=(6, 7))
    image = Image.open(io.BytesIO(encode_ppm(index)))
    assert image.mode == "RGB" and image.size == (7, 6)
    assert np.array_equal(np.array(image), PALETTE[index])


def test_palette_is_distinct():
    colours = {tuple(c) for c in PALETTE}
    assert len(colours) == 9
    legend = palette_legend()
    assert legend["background"] == (255, 255, 255) and legend["R0"] == (0, 0, 0)
    assert len(legend) == 9


def test_sierpinski_raster():
    bits = rasterize(expand(preset("sierpinski-triangle"), 1))
    assert int(bits.sum()) == 9


@pytest.mark.parametrize("scale", [1, 2, 5])
def test_scale_law(scale):
    pattern = expand(preset("sierpinski-carpet"), 2)
    bits = rasterize(pattern, scale)
    assert bits.shape == (27 * scale, 27 * scale)
    assert int(bits.sum()) == 8 ** 3 * scale ** 2
    labels = rasterize_labeled(expand_labeled(preset("maple-leaf"), 2), scale)
    assert labels.shape == (8 * scale, 8 * scale)


def test_raster_limits():
    with pytest.raises(SizeLimitError):
        rasterize(np.ones((8, 8)), 4, limit=16)
    with pytest.raises(ValueError):
        rasterize(np.ones((2, 2)), 0)


def test_unknown_preset_lists_names():
    with pytest.raises(KeyError, match="sierpinski-triangle"):
        preset("koch")


def test_preset_seeds():
    assert str(preset("sierpinski-triangle")) == "0 R0 / R0 R0"
    for name in PRESETS:
        preset(name)


# -- files

def test_write_atomic_leaves_no_temporaries(tmp_path):
    target = tmp_path / "out.bin"
    write_atomic(target, b"abc")
    write_atomic(target, b"defg")
    assert target.read_bytes() == b"defg"
    assert [p.name for p in tmp_path.iterdir()] == ["out.bin"]


def test_write_atomic_failure_keeps_old_file(tmp_path, monkeypatch):
    target = tmp_path / "out.bin"
    target.write_bytes(b"old")

    def broken_replace(src, dst):
        raise OSError("disk gone")

    monkeypatch.setattr("fractiling.render.os.replace", broken_replace)
    with pytest.raises(OSError):
        write_atomic(target, b"new")
    assert target.read_bytes() == b"old"
    assert [p.name for p in tmp_path.iterdir()] == ["out.bin"]


def test_write_image_modes(tmp_path):
    c = preset("maple-leaf")
    write_image(tmp_path / "a.pbm", c, 3, fmt="p1")
    write_image(tmp_path / "a.ppm", c, 3, mode="texture", fmt="p6", scale=2)
    assert np.array_equal(pbm_foreground((tmp_path / "a.pbm").read_bytes()), expand(c, 3))
    with pytest.raises(ValueError):
        write_image(tmp_path / "b.pbm", c, 3, fmt="p6")
    with pytest.raises(ValueError):
        write_image(tmp_path / "b.ppm", c, 3, mode="texture", fmt="p4")
    with pytest.raises(ValueError):
        write_image(tmp_path / "b.ppm", c, 3, mode="sepia")


# -- golden images

@pytest.mark.parametrize("name,depth", sorted(regenerate.BINARY.items()))
def test_binary_golden(name, depth, tmp_path):
    golden = (GOLDEN / f"{name}-d{depth}.pbm").read_bytes()
    out = tmp_path / "x.pbm"
    write_image(out, preset(name), depth)
    assert out.read_bytes() == golden
    c = preset(name)
    assert np.array_equal(pbm_foreground(golden), naive_bits(c.codes, c.n, depth))


@pytest.mark.parametrize("name,depth", sorted(regenerate.TEXTURE.items()))
def test_texture_golden(name, depth, tmp_path):
    golden = (GOLDEN / f"{name}-d{depth}.ppm").read_bytes()
    out = tmp_path / "x.ppm"
    write_image(out, preset(name), depth, mode="texture", fmt="p6")
    assert out.read_bytes() == golden
    rgb = np.array(Image.open(io.BytesIO(golden)))
    lookup = {tuple(c): k for k, c in enumerate(PALETTE)}
    index = np.vectorize(lambda r, g, b: lookup[(r, g, b)])(rgb[..., 0], rgb[..., 1], rgb[..., 2])
    assert np.array_equal(index - 1, expand_labeled(preset(name), depth))
    # a full seed with mixed transforms uses more than one colour
    assert len(np.unique(index)) > 1


def test_sierpinski_golden_popcount():
    bits = pbm_foreground((GOLDEN / "sierpinski-triangle-d7.pbm").read_bytes())
    assert bits.shape == (256, 256) and int(bits.sum()) == 6561


# -- gallery

def test_gallery_is_deterministic(tmp_path):
    motifs = list_motifs_2x2()
    first = gallery(motifs, tmp_path / "a", 3)
    second = gallery(motifs, tmp_path / "b", 3)
    assert len(first) == 234
    images = [p for p in first if p.name.startswith("motif")]
    assert len(images) == 232
    for p, q in zip(first, second):
        assert p.name == q.name and p.read_bytes() == q.read_bytes()
    manifest = (tmp_path / "a" / "index.txt").read_text().splitlines()
    assert manifest[0] == "motif111.pbm\tmotif111\t0 R0 / R0 R0"
    sheet = pbm_foreground((tmp_path / "a" / "index.pbm").read_bytes())
    assert sheet.shape == (15 * 16 + 14 * 2, 16 * 16 + 15 * 2)
    assert int(sheet.sum()) == 232 * 3 ** 4


def test_gallery_thumbnails_at_depth_zero(tmp_path):
    paths = gallery(list_motifs_2x2()[:4], tmp_path, 0)
    assert pbm_foreground(paths[0].read_bytes()).tolist() == [[0, 1], [1, 1]]


def test_gallery_rejects_mixed_sides(tmp_path):
    with pytest.raises(ValueError):
        gallery([preset("maple-leaf"), preset("von-koch")], tmp_path)
    with pytest.raises(ValueError):
        gallery([], tmp_path)
    names = gallery([parse_config("R0 0 / R0 R0")], tmp_path / "c", 1)
    assert names[0].name == "config000.pbm"
