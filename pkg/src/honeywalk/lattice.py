"""
Honeycomb lattice geometry in oblique (rhombus) coordinates.

A vertex is addressed as ``(x, y, s)``: ``(x, y)`` is the lower-left corner
of the rhombus holding the vertex and ``s`` is the sublattice bit (0 for the
black vertices, 1 for the white ones). Nearest-neighbour bonds have length
``1/sqrt(3)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "Site",
    "ORIGIN",
    "DISPLACEMENTS",
    "shift_target",
    "distance",
    "distance_grid",
    "BOND_LENGTH",
]

BOND_LENGTH = 1.0 / np.sqrt(3.0)

# Displacement attached to coin directions 1, 2 and 3.
DISPLACEMENTS: dict[int, tuple[int, int]] = {
    1: (0, 0),
    2: (1, 0),
    3: (0, 1),
}


class _SiteFields(NamedTuple):
    x: int
    y: int
    s: int


class Site(_SiteFields):
    """A honeycomb vertex ``(x, y, s)`` with sublattice bit ``s`` in {0, 1}."""

    __slots__ = ()

    def __new__(cls, x: int, y: int, s: int = 0):
        if s not in (0, 1):
            raise ValueError(f"vertex type must be 0 or 1, got {s!r}")
        return super().__new__(cls, int(x), int(y), int(s))


ORIGIN = Site(0, 0, 0)


def shift_target(site: Site, j: int) -> Site:
    """
    Destination of the flip-flop shift for coin direction ``j``.

    The walker at ``(r, s)`` moves to ``(r - (-1)**s * v_j, s XOR 1)``, so a
    type-0 vertex moves *against* ``v_j`` and a type-1 vertex moves *along* it.
    Applying the shift twice with the same ``j`` returns the original site.

    Parameters
    ----------
    site : Site
        Current vertex.
    j : int
        Coin direction in {1, 2, 3}.

    Returns
    -------
    Site
        Neighbouring vertex of opposite type.
    """
    if j not in DISPLACEMENTS:
        raise ValueError(f"direction must be one of 1, 2, 3; got {j!r}")
    vx, vy = DISPLACEMENTS[j]
    sign = 1 if site.s == 0 else -1
    return Site(site.x - sign * vx, site.y - sign * vy, site.s ^ 1)


def distance(site: Site) -> float:
    """Euclidean distance from ``(0, 0, 0)`` in units where the rhombus side is 1."""
    x, y, s = site
    return float(np.sqrt(0.75 * (x + s / 3.0) ** 2 + (y + (x + s) / 2.0) ** 2))


def distance_grid(half_width: int) -> np.ndarray:
    """
    Distances for every site of a square coordinate window.

    Returns an array of shape ``(2, 2*half_width + 1, 2*half_width + 1)``
    indexed as ``[s, x + half_width, y + half_width]``.
    """
    coords = np.arange(-half_width, half_width + 1, dtype=float)
    x = coords[:, None]
    y = coords[None, :]
    out = np.empty((2, coords.size, coords.size))
    for s in (0, 1):
        out[s] = np.sqrt(0.75 * (x + s / 3.0) ** 2 + (y + (x + s) / 2.0) ** 2)
    return out
