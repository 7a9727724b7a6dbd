"""
Re-analysing one researcher's 65 publications
=============================================

The bundled dataset lists, per publication, the observed citations and the
journal citation score. Here we compute both indicators, look at how skewed
the per-paper ratios are, and run the signed-rank test against 1.0.
"""

import numpy as np

from citenorm import (
    build_report,
    load_appendix_fixture,
    percentile_rank,
    performance_flag,
    test_against_unity,
)
from citenorm.display import round_half_away as fmt
from citenorm.ranking import relative_difference

pi = load_appendix_fixture()
report = build_report(pi)

print(f"P = {report.p}, C = {report.c}, CPP = {fmt(report.cpp)}, JCSm = {fmt(report.jcsm)}")
print(f"CPP/JCSm          = {fmt(report.rom_journal)}  -> {performance_flag(report.rom_journal).value}")
print(f"mean of C/JCS     = {fmt(report.mor_journal)} (+- {fmt(report.sem_journal)})"
      f"  -> {performance_flag(report.mor_journal).value}")
print(f"relative difference = {100 * relative_difference(report.rom_journal, report.mor_journal):+.1f}%")

# %%
# The ratios are far from symmetric: a few papers in low-impact journals
# score several times the expectation, many score well below it.
ratios = np.array([r for _, r in report.per_paper_ratios["journal"]])
print()
print(f"median ratio {np.median(ratios):.2f}, mean {ratios.mean():.2f}, "
      f"max {ratios.max():.2f}, {np.sum(ratios > 1)} of {ratios.size} above 1")

# Where do the best and worst cited papers sit within this oeuvre?
citations = [r.citations for r in pi]
for c in (max(citations), int(np.median(citations)), 0):
    print(f"  {c:3d} citations -> percentile {percentile_rank(c, citations):5.1f}")

# %%
# Signed-rank test of the per-paper ratios against 1.0. Being a test of
# location (median), it reacts to the many below-expectation papers even
# though the mean ratio is within one standard error of 1.0.
res = test_against_unity(ratios)
print()
print(f"Wilcoxon signed-rank: W+ = {res.statistic}, p = {res.p_value:.4f} ({res.method}),"
      f" significant at 0.05: {res.significant}")
z = (report.mor_journal - 1.0) / report.sem_journal
print(f"mean - 1 in SEM units: {z:+.2f}")
