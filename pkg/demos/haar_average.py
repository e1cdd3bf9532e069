"""
Typical localization: average the limit probability over random coin states.

For a Hermitian limit map the average has the closed form tr(F^dagger F)/dim,
which the Monte-Carlo estimate should reproduce within its error bar.
"""
from honeywalk import average_probability, haar_average_exact
from honeywalk.limitmap import compute_F, compute_F_line, compute_F_pair_4

maps = {"honeycomb, 3 states": compute_F(grid_n=1024)}
four = compute_F_pair_4(grid_n=512)
maps["honeycomb, 4 states, even t"] = four["F_even"]
maps["honeycomb, 4 states, odd t"] = four["F_odd"]
maps["line, 3 states"] = compute_F_line(grid_n=4096)

for label, F in maps.items():
    est = average_probability(F, samples=10**6, seed=0, workers=2)
    print(f"{label:>28}: {est.mean:.6f} +- {est.std_error:.1e}   "
          f"(trace formula {haar_average_exact(F):.6f})")
