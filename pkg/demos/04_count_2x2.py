"""How many really different fractals come from a 2x2 seed with one hole?"""

from fractiling import census_2x2, list_motifs_2x2
from fractiling.tile import motif_id

report = census_2x2()
print(report.to_text())

fixed_total = sum(report.fixed.values())
print(f"Burnside: ({' + '.join(str(v) for v in report.fixed.values() if v)}) / 8 = "
      f"{fixed_total // 8}")

motifs = list_motifs_2x2()
print(len(motifs), "representatives, e.g.", ", ".join(motif_id(m) for m in motifs[:6]), "...")
