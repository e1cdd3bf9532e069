"""
Limit transformation matrices from Brillouin-zone quadrature.

A limit map ``F`` is the zone average of the projector onto a flat
(wave-vector independent) eigenvalue branch of the momentum-space walk
operator. It maps the initial coin state linearly onto the long-time
amplitude at the starting vertex, so ``P_inf = |F psi0|^2``.

Averages use the midpoint rule on the offset grid
``k_m = -pi + (m + 1/2) 2 pi / n``. Grid rows are processed in fixed-size
chunks and the chunk sums are reduced in a fixed order, so results are
bit-identical for any number of worker threads.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .coin import CoinPair, check_localization_condition, grover
from .momentum import (
    brillouin_grid,
    flat_branch_vectors_3,
    flat_branch_vectors_4,
    flat_branch_vectors_line,
)

__all__ = [
    "LimitMap",
    "LocalizationConditionError",
    "ExtremalStates",
    "compute_F",
    "compute_F_pair_4",
    "compute_F_line",
    "limit_probability",
    "extremal_states",
    "grover_state",
    "DEFAULT_GRID_3",
    "DEFAULT_GRID_4",
    "DEFAULT_GRID_LINE",
]

KINDS = ("F", "F_plus", "F_minus", "F_even", "F_odd", "F_line")
DEFAULT_GRID_3 = 1024
DEFAULT_GRID_4 = 512
DEFAULT_GRID_LINE = 4096
_CHUNK_ROWS = 32
KERNEL_TOL = 1e-8


class LocalizationConditionError(ValueError):
    """The coin pair does not satisfy the sufficient condition for a flat branch."""

    def __init__(self, report):
        super().__init__("coin pair fails the localization condition\n" + report.summary())
        self.report = report


@dataclass
class LimitMap:
    """
    A ``dim x dim`` limit transformation matrix.

    Attributes
    ----------
    matrix : ndarray
        Complex matrix; Hermitian for every kind produced here.
    kind : str
        One of ``F``, ``F_plus``, ``F_minus``, ``F_even``, ``F_odd``, ``F_line``.
    grid_n : int
        Quadrature nodes per axis.
    meta : dict
        Free-form provenance (coin names, version).
    """

    matrix: np.ndarray
    kind: str
    grid_n: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.kind not in KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other):
        return self.matrix @ np.asarray(other)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "grid_n": self.grid_n,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
            "meta": {"version": __version__, **self.meta},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LimitMap":
        dim = int(data["dim"])
        m = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        if m.shape != (dim, dim):
            raise ValueError(f"map matrix has shape {m.shape}, expected ({dim}, {dim})")
        return cls(m, data["kind"], int(data["grid_n"]), dict(data.get("meta", {})))

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)

    @classmethod
    def load(cls, path: str | Path) -> "LimitMap":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _check_grid(grid_n: int, minimum: int = 64) -> int:
    grid_n = int(grid_n)
    if grid_n < minimum or grid_n % 2:
        raise ValueError(f"grid_n must be an even integer >= {minimum}, got {grid_n}")
    return grid_n


def _zone_average(chunk_fn, grid_n: int, threads: int = 1) -> np.ndarray:
    """Average ``chunk_fn(k_rows, l_nodes)`` over the 2-D grid in fixed row chunks."""
    nodes = brillouin_grid(grid_n)
    chunks = [nodes[i:i + _CHUNK_ROWS] for i in range(0, grid_n, _CHUNK_ROWS)]

    def work(rows):
        return chunk_fn(rows[:, None], nodes[None, :])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return np.sum(np.stack(parts), axis=0) / grid_n**2


def _gram(v: np.ndarray) -> np.ndarray:
    """``sum_i v_i v_i^dagger`` over all leading axes of ``v`` (shape ``... x d``)."""
    flat = v.reshape(-1, v.shape[-1])
    return flat.T @ flat.conj()


def compute_F(
    pair: CoinPair | None = None,
    grid_n: int = DEFAULT_GRID_3,
    threads: int = 1,
    check: bool = True,
) -> LimitMap:
    """
    Limit map of a three-state honeycomb walk.

    Parameters
    ----------
    pair : CoinPair, optional
        Three-state coin pair; the Grover walk by default.
    grid_n : int
        Even number of midpoint nodes per axis, at least 64.
    threads : int
        Worker threads for the quadrature.
    check : bool
        Refuse pairs failing ``check_localization_condition``.
    """
    if pair is None:
        pair = CoinPair.uniform(grover(3))
    grid_n = _check_grid(grid_n)
    if check:
        report = check_localization_condition(pair)
        if not report.holds:
            raise LocalizationConditionError(report)
    f = _zone_average(lambda k, l: _gram(flat_branch_vectors_3(pair, k, l)), grid_n, threads)
    return LimitMap(f, "F", grid_n, {"coins": pair.name})


def compute_F_pair_4(grid_n: int = DEFAULT_GRID_4, threads: int = 1) -> dict[str, LimitMap]:
    """
    Limit maps of the four-state Grover walk.

    Returns the type-0 blocks of the +1 and -1 projector averages together
    with ``F_even = F_plus + F_minus`` and ``F_odd = F_plus - F_minus``, which
    govern the origin amplitude at even and odd times.
    """
    grid_n = _check_grid(grid_n)

    def chunk(k, l):
        plus, minus = flat_branch_vectors_4(k, l)
        return np.stack([_gram(plus[..., :4]), _gram(minus[..., :4])])

    both = _zone_average(chunk, grid_n, threads)
    meta = {"coins": "grover4,grover4"}
    fp, fm = both[0], both[1]
    return {
        "F_plus": LimitMap(fp, "F_plus", grid_n, dict(meta)),
        "F_minus": LimitMap(fm, "F_minus", grid_n, dict(meta)),
        "F_even": LimitMap(fp + fm, "F_even", grid_n, dict(meta)),
        "F_odd": LimitMap(fp - fm, "F_odd", grid_n, dict(meta)),
    }


def compute_F_line(grid_n: int = DEFAULT_GRID_LINE) -> LimitMap:
    """Limit map of the three-state Grover walk on a line (left, stay, right)."""
    grid_n = _check_grid(grid_n)
    v = flat_branch_vectors_line(brillouin_grid(grid_n))
    return LimitMap(_gram(v) / grid_n, "F_line", grid_n, {"coins": "grover3", "model": "line3"})


def grover_state(dim: int) -> np.ndarray:
    """Uniform equal-phase coin state ``[1, ..., 1] / sqrt(dim)``."""
    return np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)


def limit_probability(limit_map: LimitMap | np.ndarray, psi0) -> float:
    """Long-time probability at the start vertex, ``|F psi0|^2``."""
    m = limit_map.matrix if isinstance(limit_map, LimitMap) else np.asarray(limit_map)
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (m.shape[1],):
        raise ValueError(f"initial state has shape {psi0.shape}, map expects ({m.shape[1]},)")
    amp = m @ psi0
    return float(np.vdot(amp, amp).real)


@dataclass
class ExtremalStates:
    max_prob: float
    max_states: np.ndarray  # columns: orthonormal basis of the maximising eigenspace
    zero_states: np.ndarray  # columns: orthonormal kernel basis
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def extremal_states(limit_map: LimitMap | np.ndarray, group_tol: float = 1e-4) -> ExtremalStates:
    """
    Initial states maximising and annihilating the limit probability.

    ``max_prob`` is the square of the largest eigenvalue modulus. The
    maximising eigenspace collects every eigenvalue whose modulus lies within
    ``group_tol`` of the largest (quadrature leaves a small splitting in
    exactly degenerate pairs); the kernel collects ``|lambda| <= 1e-8``.
    """
    m = limit_map.matrix if isinstance(limit_map, LimitMap) else np.asarray(limit_map)
    herm = 0.5 * (m + m.conj().T)
    if np.abs(herm - m).max() > 1e-8:
        raise ValueError("extremal_states needs a Hermitian map")
    evals, evecs = np.linalg.eigh(herm)
    mod = np.abs(evals)
    top = mod.max()
    max_idx = np.flatnonzero(mod >= top - group_tol)
    zero_idx = np.flatnonzero(mod <= KERNEL_TOL)
    return ExtremalStates(
        max_prob=float(top**2),
        max_states=evecs[:, max_idx],
        zero_states=evecs[:, zero_idx],
        eigenvalues=evals,
        eigenvectors=evecs,
    )
