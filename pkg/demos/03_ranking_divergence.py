"""
How far apart do the two rankings drift?
========================================

Seven researchers with both a ratio-of-means value (CPP/JCSm) and a
mean-of-ratios value. We rank them under each indicator and regress the
relative difference on the ratio-of-means value.
"""

from citenorm.ranking import compare_values

units = ["rank6", "rank14", "rank26", "rank117", "rank118", "rank206", "rank223"]
rom = [1.99, 1.52, 1.54, 1.03, 1.03, 0.71, 0.54]
mor = [2.03, 1.74, 1.54, 1.50, 0.93, 0.91, 0.78]

cmp = compare_values(units, rom, mor)

print(f"{'unit':9}{'rom':>6}{'mor':>6}{'diff %':>9}{'rank rom':>10}{'rank mor':>10}")
for e in cmp.entries:
    print(f"{e.unit_id:9}{e.value_a:6.2f}{e.value_b:6.2f}{100 * e.relative_difference:+9.1f}"
          f"{e.rank_a:10d}{e.rank_b:10d}")

fit = cmp.regression
print()
print(f"Pearson r = {cmp.pearson_r:.3f} (p = {cmp.pearson.p_value:.3g}),"
      f" Spearman rho = {cmp.spearman_rho:.3f}")
print(f"relative difference ~ {fit.intercept:.3f} {fit.slope:+.3f} * rom")
print("divergence grows as rom falls:", fit.slope < 0)

# %%
# Plot-ready rows (the same columns `citenorm compare --plot-data` writes).
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    x = [e.value_a for e in cmp.entries]
    y = [100 * e.relative_difference for e in cmp.entries]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.scatter(x, y)
    xs = [min(x), max(x)]
    ax.plot(xs, [100 * v for v in fit.predict(xs)])
    ax.set_xlabel("CPP/JCSm")
    ax.set_ylabel("relative difference (%)")
    fig.tight_layout()
    fig.savefig("ranking_divergence.png", dpi=120)
    print("wrote ranking_divergence.png")
