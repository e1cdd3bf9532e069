"""
Three-state Grover walk on the honeycomb lattice: how much probability stays
at the starting vertex?

Run with ``python demos/origin_localization.py``.
"""
import numpy as np

from honeywalk import CoinPair, grover, origin_series
from honeywalk.limitmap import compute_F, extremal_states, grover_state, limit_probability

pair = CoinPair.uniform(grover(3))

# %% The limit map comes from averaging the flat-band projector over the zone.
F = compute_F(pair, grid_n=1024)
print("limit map F (real part):")
print(np.round(F.matrix.real, 6))

# %% Compare the long-time prediction with direct simulation for a few inputs.
omega = np.exp(2j * np.pi / 3)
inputs = {
    "[1, 0, 0]": np.array([1, 0, 0], complex),
    "Grover state": grover_state(3),
    "[1, w, w^2]/sqrt3": np.array([1, omega, omega**2]) / np.sqrt(3),
}
for label, psi0 in inputs.items():
    ts, p = origin_series(3, pair, psi0, 400)
    tail = p[(ts >= 300) & (ts % 2 == 0)].mean()
    print(f"{label:>18}: simulated tail {tail:.5f}   predicted {limit_probability(F, psi0):.5f}")

# Odd times are exactly zero: every step flips the sublattice.
print("largest odd-t probability:", p[1::2].max())

# %% Which inputs localize most, and which not at all?
ext = extremal_states(F)
print("eigenvalues of F:", np.round(ext.eigenvalues, 6))
print("largest limit probability:", round(ext.max_prob, 6))
print("delocalizing input:", np.round(ext.zero_states[:, 0], 6))
