"""
Dividing averages versus averaging divisions
=============================================

Four papers, each with an observed citation count and the citation rate
expected for its journal (JCS) and field (FCS). The ratio-of-means
normalization sums first and divides once; the mean-of-ratios
normalization divides per paper and then averages.
"""

from citenorm import EvaluationSet, NormalizationBasis, build_report, make_record
from citenorm.display import round_half_away

rows = [  # (citations, JCS, FCS)
    (17, 16.9, 23.7),
    (4, 3.1, 3.0),
    (6, 4.8, 4.1),
    (8, 4.8, 4.1),
]
group = EvaluationSet("demo", [make_record(id=n, citations=c, jcs=j, fcs=f)
                               for n, (c, j, f) in zip(["I", "II", "III", "IV"], rows)])

report = build_report(group, [NormalizationBasis.JOURNAL, NormalizationBasis.FIELD])

# Per-paper ratios, one row per publication
print(f"{'paper':6}{'C':>4}{'JCS':>7}{'FCS':>7}{'C/JCS':>8}{'C/FCS':>8}")
for (pid, rj), (_, rf), rec in zip(report.per_paper_ratios["journal"],
                                    report.per_paper_ratios["field"], group):
    print(f"{pid:6}{rec.citations:>4}{rec.jcs:>7}{rec.fcs:>7}"
          f"{round_half_away(rj):>8}{round_half_away(rf):>8}")

fmt = round_half_away
print()
print(f"CPP = {fmt(report.cpp)}   JCSm = {fmt(report.jcsm)}   FCSm = {fmt(report.fcsm)}")
print(f"ratio of means:  CPP/JCSm = {fmt(report.rom_journal)}   CPP/FCSm = {fmt(report.rom_field)}")
print(f"mean of ratios:  C/JCS = {fmt(report.mor_journal)} (+- {fmt(report.sem_journal)})"
      f"   C/FCS = {fmt(report.mor_field)} (+- {fmt(report.sem_field)})")

# The journal and field orderings flip: journal > field under ratio of
# means, field > journal under mean of ratios.
print()
print("journal above field (ratio of means):", report.rom_journal > report.rom_field)
print("journal above field (mean of ratios):", report.mor_journal > report.mor_field)
