"""All 232 representatives as images, plus a contact sheet."""

from pathlib import Path

from fractiling.census import list_motifs_2x2
from fractiling.render import gallery

out = Path("demo_output") / "gallery"
paths = gallery(list_motifs_2x2(), out, depth=6, scale=1)
print(f"wrote {len(paths)} files to {out}; open {out / 'index.pbm'} for the sheet")
