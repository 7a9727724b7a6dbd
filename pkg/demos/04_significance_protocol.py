"""
Testing differences between researchers
=======================================

Per-paper ratios of three synthetic researchers: an omnibus Kruskal-Wallis
test, a one-sample test of each against 1.0, and Bonferroni-corrected
pairwise Mann-Whitney tests.
"""

import numpy as np

from citenorm import kruskal_wallis, pairwise_posthoc, test_against_unity

rng = np.random.default_rng(1)
authors = {
    "high": rng.lognormal(0.5, 0.9, size=24),
    "middle": rng.lognormal(0.0, 0.9, size=37),
    "low": rng.lognormal(-0.5, 0.9, size=32),
}
labels = list(authors)
groups = list(authors.values())

kw = kruskal_wallis(groups)
print(f"Kruskal-Wallis H = {kw.statistic:.2f}, df = {kw.df}, p = {kw.p_value:.4f}")

print()
for name, ratios in authors.items():
    res = test_against_unity(ratios)
    print(f"{name:7} mean {ratios.mean():.2f}  vs 1.0: p = {res.p_value:.4f}"
          f"  {'significant' if res.significant else 'n.s.'}")

print()
matrix = pairwise_posthoc(groups, alpha=0.05, labels=labels)
for i in range(len(labels)):
    for j in range(i + 1, len(labels)):
        r = matrix[i][j]
        print(f"{r.label:18} raw p = {r.raw_p_value:.4f}  Bonferroni(m={r.correction.m})"
              f" p = {r.p_value:.4f}  {'significant' if r.significant else 'n.s.'}")
