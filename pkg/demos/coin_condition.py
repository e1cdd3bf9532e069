"""
Position-dependent coins: which pairs keep a flat eigenvalue-1 band?

A pair (C on one sublattice, D on the other) localizes when D is the adjoint
of C and C has a real eigenbasis. This script checks a few pairs, builds the
limit map of a complex one and confirms it against simulation.
"""
import numpy as np

from honeywalk import CoinPair, check_localization_condition, coin_from_name, origin_series
from honeywalk.limitmap import compute_F, limit_probability

candidates = ["grover3,grover3", "dft3,dft3-dagger", "dft3,dft3", "machida:0.7,machida:0.7-dagger"]
for label in candidates:
    c_name, d_name = label.split(",")
    pair = CoinPair(coin_from_name(c_name), coin_from_name(d_name))
    report = check_localization_condition(pair)
    print(f"--- {label}")
    print(report.summary())

# %% The DFT pair gives a genuinely complex Hermitian limit map.
pair = CoinPair(coin_from_name("dft3"), coin_from_name("dft3-dagger"))
F_H = compute_F(pair, grid_n=1024)
np.set_printoptions(precision=5, suppress=True)
print("F for (H, H^dagger):")
print(F_H.matrix)

psi0 = np.array([1, 0, 0], complex)
ts, p = origin_series(3, pair, psi0, 400)
print("simulated even-t tail:", p[(ts >= 300) & (ts % 2 == 0)].mean())
print("predicted |F psi0|^2 :", limit_probability(F_H, psi0))
