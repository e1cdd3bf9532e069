"""
Ballistic spreading: the mean distance from the start grows linearly in t,
with a slope that depends on the coin.
"""
import numpy as np

from honeywalk import CoinPair, coin_from_name
from honeywalk.cli import linear_fit
from honeywalk.walker import radius_series

pairs = {
    "(G, G)": CoinPair.uniform(coin_from_name("grover3")),
    "(H, H^dagger)": CoinPair(coin_from_name("dft3"), coin_from_name("dft3-dagger")),
}
for label, pair in pairs.items():
    ts, r = radius_series(pair, [1, 0, 0], 400)
    sel = ts >= 50
    slope, intercept, r2 = linear_fit(ts[sel], r[sel])
    print(f"{label:>14}: r(t) ~ {slope:.4f} t + {intercept:.3f}   R^2 = {r2:.6f}")
    print("                r at t = 100, 200, 400:", np.round(r[[100, 200, 400]], 3))
