"""
Four-state Grover walk: the walker may also stay put.

Two flat bands (+1 and -1) appear, so the origin probability settles to one
value at even times and another at odd times.
"""
import numpy as np

from honeywalk import CoinPair, grover, origin_series
from honeywalk.limitmap import compute_F_pair_4, extremal_states, limit_probability

maps = compute_F_pair_4(grid_n=512)
np.set_printoptions(precision=6, suppress=True)
for name in ("F_plus", "F_minus"):
    print(name)
    print(maps[name].matrix.real)

for name in ("F_even", "F_odd"):
    ext = extremal_states(maps[name], group_tol=1e-3)
    print(f"{name} eigenvalues: {ext.eigenvalues}")

# %% Simulated tails against the two limit maps.
pair = CoinPair.uniform(grover(4))
inputs = {
    "[1,1,0,0]/sqrt2": np.array([1, 1, 0, 0]) / np.sqrt(2),
    "[-1,-1,-1,3]/(2 sqrt3)": np.array([-1, -1, -1, 3]) / (2 * np.sqrt(3)),
    "Grover state": np.full(4, 0.5),
}
for label, psi0 in inputs.items():
    ts, p = origin_series(4, pair, psi0, 400)
    even = p[(ts >= 300) & (ts % 2 == 0)].mean()
    odd = p[(ts >= 300) & (ts % 2 == 1)].mean()
    print(f"{label:>24}: even {even:.5f} (limit {limit_probability(maps['F_even'], psi0):.5f})"
          f"   odd {odd:.5f} (limit {limit_probability(maps['F_odd'], psi0):.5f})")
