"""
Real-space state-vector simulation of the honeycomb walk.

The amplitude field is stored densely as ``[s, j, x + W, y + W]`` over a
square window of half-width ``W``. Every step gathers from the previous
field into a second buffer:

    psi_{t+1}(r, 0) = sum_j D_j psi_t(r - v_j, 1)      (+ C_4 psi_t(r, 0))
    psi_{t+1}(r, 1) = sum_j C_j psi_t(r + v_j, 0)      (+ D_4 psi_t(r, 1))

where ``C_j``/``D_j`` keep row ``j`` of the coin attached to the *source*
vertex type (``C`` on type 0, ``D`` on type 1) and the bracketed "stay"
terms exist only for four-state coins.

Consecutive hops alternate between subtracting and adding a displacement,
so after ``t`` steps the support obeys ``|x|, |y| <= ceil(t / 2)``. The
window is sized from that bound and each step only touches the part of the
window the walker can have reached.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .coin import CoinPair
from .lattice import distance_grid

__all__ = [
    "WalkerState",
    "WindowOverflowError",
    "init",
    "step",
    "trajectory",
    "origin_series",
    "radius_series",
    "spatial_distribution",
    "mean_radius",
]

NORM_TOL = 1e-10


class WindowOverflowError(RuntimeError):
    """A step was requested beyond the ``max_steps`` the window was sized for."""


def _reach(t: int) -> int:
    return t // 2 + 1


class WalkerState:
    """
    Amplitude field of a walker started at ``(0, 0, 0)``.

    Parameters
    ----------
    coin_dim : int
        3 or 4.
    psi0 : array_like
        Unit-norm initial coin state.
    max_steps : int
        Number of steps the window must accommodate.

    Attributes
    ----------
    t : int
        Steps taken so far.
    window : int
        Half-width ``W`` of the stored coordinate window.
    """

    def __init__(self, coin_dim: int, psi0, max_steps: int):
        if coin_dim not in (3, 4):
            raise ValueError(f"coin_dim must be 3 or 4, got {coin_dim}")
        psi0 = np.asarray(psi0, dtype=complex)
        if psi0.shape != (coin_dim,):
            raise ValueError(f"initial coin state must have {coin_dim} entries, got shape {psi0.shape}")
        norm = np.linalg.norm(psi0)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"initial coin state is not normalised (norm {norm:.15g})")
        if max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        self.coin_dim = coin_dim
        self.max_steps = int(max_steps)
        self.window = _reach(self.max_steps)
        self.t = 0
        n = 2 * self.window + 1
        self._bufs = [np.zeros((2, coin_dim, n, n), dtype=complex) for _ in range(2)]
        self._cur = 0
        self.amplitudes[0, :, self.window, self.window] = psi0
        self._radii = None

    @property
    def amplitudes(self) -> np.ndarray:
        """Current field, indexed ``[s, j, x + W, y + W]``."""
        return self._bufs[self._cur]

    def _index(self, x: int, y: int) -> tuple[int, int]:
        i, j = x + self.window, y + self.window
        if not (0 <= i <= 2 * self.window and 0 <= j <= 2 * self.window):
            raise IndexError(f"site ({x}, {y}) lies outside the stored window")
        return i, j

    def amplitude(self, x: int, y: int, s: int) -> np.ndarray:
        """Coin vector at vertex ``(x, y, s)``."""
        i, j = self._index(x, y)
        return self.amplitudes[s, :, i, j].copy()

    def probability(self, x: int, y: int, s: int) -> float:
        a = self.amplitude(x, y, s)
        return float(np.vdot(a, a).real)

    def probabilities(self) -> np.ndarray:
        """Site probabilities, shape ``(2, 2W+1, 2W+1)``."""
        a = self.amplitudes
        return np.einsum("sjxy,sjxy->sxy", a.conj(), a).real

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def radii(self) -> np.ndarray:
        if self._radii is None:
            self._radii = distance_grid(self.window)
        return self._radii

    def step(self, pair: CoinPair) -> "WalkerState":
        """Advance one step in place and return ``self``."""
        if pair.dim != self.coin_dim:
            raise ValueError(f"coin pair has dim {pair.dim}, walker has {self.coin_dim}")
        if self.t >= self.max_steps:
            raise WindowOverflowError(
                f"window sized for {self.max_steps} steps; cannot take step {self.t + 1}"
            )
        W = self.window
        h = min(W, _reach(self.t + 1))
        win = slice(W - h, W + h + 1)
        src = self._bufs[self._cur][:, :, win, win]
        dst = self._bufs[1 - self._cur][:, :, win, win]

        a = np.tensordot(pair.C.matrix, src[0], axes=1)
        b = np.tensordot(pair.D.matrix, src[1], axes=1)
        d0, d1 = dst[0], dst[1]

        d0[0] = b[0]
        d0[1, 1:] = b[1, :-1]
        d0[1, 0] = 0
        d0[2, :, 1:] = b[2, :, :-1]
        d0[2, :, 0] = 0

        d1[0] = a[0]
        d1[1, :-1] = a[1, 1:]
        d1[1, -1] = 0
        d1[2, :, :-1] = a[2, :, 1:]
        d1[2, :, -1] = 0

        if self.coin_dim == 4:
            d0[3] = a[3]
            d1[3] = b[3]

        self._cur = 1 - self._cur
        self.t += 1
        return self

    def copy(self) -> "WalkerState":
        new = object.__new__(WalkerState)
        new.__dict__.update(self.__dict__)
        new._bufs = [b.copy() for b in self._bufs]
        return new


def init(coin_dim: int, psi0, max_steps: int) -> WalkerState:
    """Walker at ``(0, 0, 0)`` with coin state ``psi0``, sized for ``max_steps`` steps."""
    return WalkerState(coin_dim, psi0, max_steps)


def step(state: WalkerState, pair: CoinPair) -> WalkerState:
    """Advance ``state`` by one step (in place, double-buffered) and return it."""
    return state.step(pair)


def trajectory(pair: CoinPair, psi0, T: int) -> Iterator[WalkerState]:
    """
    Yield the walker at ``t = 0, 1, ..., T``.

    The same ``WalkerState`` object is yielded every time and mutated between
    yields; copy it to keep a snapshot.
    """
    state = WalkerState(pair.dim, psi0, max(T, 1))
    yield state
    for _ in range(T):
        yield state.step(pair)


def origin_series(coin_dim: int, pair: CoinPair, psi0, T: int):
    """
    Probability of finding the walker at ``(0, 0, 0)`` for ``t = 0 .. T``.

    Returns
    -------
    t : ndarray of int
    p : ndarray of float
    """
    if pair.dim != coin_dim:
        raise ValueError(f"coin pair has dim {pair.dim}, expected {coin_dim}")
    probs = np.empty(T + 1)
    for state in trajectory(pair, psi0, T):
        a = state.amplitudes[0, :, state.window, state.window]
        probs[state.t] = np.vdot(a, a).real
    return np.arange(T + 1), probs


def radius_series(pair: CoinPair, psi0, T: int):
    """Mean radius for ``t = 0 .. T``; returns ``(t, r_bar)`` arrays."""
    rbar = np.empty(T + 1)
    for state in trajectory(pair, psi0, T):
        rbar[state.t] = mean_radius(state)
    return np.arange(T + 1), rbar


def spatial_distribution(state: WalkerState, threshold: float = 1e-12) -> np.ndarray:
    """
    Occupation probabilities above ``threshold``.

    Returns
    -------
    ndarray
        Structured array with integer fields ``x``, ``y``, ``s`` and float
        field ``p``, ordered by ``(x, y, s)``.
    """
    probs = state.probabilities()
    s, i, j = np.nonzero(probs > threshold)
    out = np.empty(s.size, dtype=[("x", np.int64), ("y", np.int64), ("s", np.int64), ("p", float)])
    out["x"] = i - state.window
    out["y"] = j - state.window
    out["s"] = s
    out["p"] = probs[s, i, j]
    return np.sort(out, order=["x", "y", "s"])


def mean_radius(state: WalkerState) -> float:
    """Probability-weighted mean distance from ``(0, 0, 0)``."""
    W = state.window
    h = min(W, _reach(state.t))
    win = slice(W - h, W + h + 1)
    a = state.amplitudes[:, :, win, win]
    p = np.einsum("sjxy,sjxy->sxy", a.conj(), a).real
    return float(np.sum(p * state.radii()[:, win, win]))
