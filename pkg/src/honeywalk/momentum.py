"""
Momentum-space evolution operators and their spectra.

Wave vectors ``(k, l)`` are conjugate to the rhombus coordinates ``(x, y)``
under the transform ``X~(k, l) = sum_m X(m) exp(-i (k, l) . m)``. With the
phase matrix ``M = diag(1, e^{-ik}, e^{-il})`` a two-step three-state walk
acts as ``U~ = M D M^dagger C`` on the type-0 amplitude, and a single
four-state step acts on the stacked type-0/type-1 amplitudes as the 8x8 block
operator ``[[P4 C, M' D], [M'^dagger C, P4 D]]`` where ``P4`` keeps the
"stay" row and ``M' = diag(1, e^{-ik}, e^{-il}, 0)``.

All operator builders broadcast over array-valued ``k`` and ``l``: scalar
inputs return a single matrix, arrays of shape ``S`` return ``S + (n, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .coin import CoinPair, grover

__all__ = [
    "DegeneratePointError",
    "Spectrum",
    "brillouin_grid",
    "evolution_operator_3",
    "evolution_operator_4",
    "evolution_operator_line",
    "step_operator",
    "eigenphase_theta",
    "grover_eigenvector",
    "eigenvector_flat_branch",
    "flat_branch_vectors_3",
    "flat_branch_vectors_line",
    "flat_branch_vectors_4",
    "flat_branch_projectors_4",
    "spectrum",
    "spectrum_3",
    "fourier_amplitudes",
]

RESIDUAL_TOL = 1e-8
_EQ10_SWITCH = 1e-6


class DegeneratePointError(ArithmeticError):
    """The flat eigenvalue branch is not simple (or vanishes) at a wave vector."""

    def __init__(self, message: str, k: float | None = None, l: float | None = None):
        super().__init__(message)
        self.k = k
        self.l = l


@dataclass
class Spectrum:
    """Eigenphases (radians) and matching orthonormal eigenvectors (columns)."""

    eigenphases: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenphases.size

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.eigenphases)


def brillouin_grid(n: int, offset: float = 0.5) -> np.ndarray:
    """Nodes ``-pi + (m + offset) * 2 pi / n`` for ``m = 0 .. n-1``."""
    return -np.pi + (np.arange(n) + offset) * (2.0 * np.pi / n)


def _phases(k, l, stay: bool = False):
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    k, l = np.broadcast_arrays(k, l)
    cols = [np.ones(k.shape, complex), np.exp(-1j * k), np.exp(-1j * l)]
    if stay:
        cols.append(np.zeros(k.shape, complex))
    return np.stack(cols, axis=-1)


def evolution_operator_3(pair: CoinPair, k, l) -> np.ndarray:
    """Two-step three-state operator ``M D M^dagger C``."""
    if pair.dim != 3:
        raise ValueError("evolution_operator_3 needs a three-state coin pair")
    m = _phases(k, l)
    mdm = m[..., :, None] * pair.D.matrix * m.conj()[..., None, :]
    return mdm @ pair.C.matrix


def evolution_operator_4(k, l, pair: CoinPair | None = None) -> np.ndarray:
    """
    Single-step four-state operator (8x8), Grover coin unless ``pair`` is given.

    Rows/columns 0-3 hold the type-0 coin amplitudes and 4-7 the type-1 ones.
    """
    if pair is None:
        pair = CoinPair.uniform(grover(4))
    if pair.dim != 4:
        raise ValueError("evolution_operator_4 needs a four-state coin pair")
    return step_operator(pair, k, l)


def step_operator(pair: CoinPair, k, l) -> np.ndarray:
    """
    One real-space step in momentum space, acting on ``[psi~(k,l,0); psi~(k,l,1)]``.

    For three-state pairs the diagonal blocks vanish and the square of this
    operator restricted to the type-0 block is ``evolution_operator_3``.
    """
    d = pair.dim
    m = _phases(k, l, stay=(d == 4))
    C = pair.C.matrix
    D = pair.D.matrix
    out = np.zeros(m.shape[:-1] + (2 * d, 2 * d), dtype=complex)
    out[..., :d, d:] = m[..., :, None] * D
    out[..., d:, :d] = m.conj()[..., :, None] * C
    if d == 4:
        out[..., 3, :4] = C[3]
        out[..., 7, 4:] = D[3]
    return out


def evolution_operator_line(k) -> np.ndarray:
    """
    Three-state Grover walk on a line with a "stay" state.

    ``diag(e^{ik}, 1, e^{-ik}) G``: coin states 1 and 3 hop to the right and
    left neighbour, state 2 stays put.
    """
    k = np.asarray(k, dtype=float)
    m = np.stack([np.exp(1j * k), np.ones(k.shape, complex), np.exp(-1j * k)], axis=-1)
    return m[..., :, None] * grover(3).matrix


def eigenphase_theta(k, l):
    """
    Nonzero eigenphase of the three-state Grover operator, in ``[0, pi]``.

    ``cos(theta) = (4 cos k + 4 cos l + 4 cos(k - l) - 3) / 9``; the cosine is
    clipped to [-1, 1] before ``arccos``.
    """
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    c = (4.0 * np.cos(k) + 4.0 * np.cos(l) + 4.0 * np.cos(k - l) - 3.0) / 9.0
    theta = np.arccos(np.clip(c, -1.0, 1.0))
    return float(theta) if theta.ndim == 0 else theta


def grover_eigenvector(k, l, xi) -> np.ndarray:
    """
    Closed-form (unnormalised) eigenvector of the Grover ``U~`` for eigenphase ``xi``.

    Valid on all three branches ``xi in {0, theta, -theta}``; it vanishes
    identically on the line ``k = l`` for ``xi = 0``.
    """
    k, l, xi = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (k, l, xi)))
    e = lambda a: np.exp(1j * a)  # noqa: E731
    first = (
        e(l - k + xi) + e(k - l + xi) + e(xi - k) + e(xi - l) - e(-k) - e(-l)
        + 0.5 * e(xi) - 2.25 * e(2 * xi) - 0.25
    )
    second = -e(l - k + xi) + 0.5 * e(xi - k) + 0.5 * e(-k) - e(-l) + 0.5 * e(xi) + 0.5
    third = -e(k - l + xi) + 0.5 * e(xi - l) + 0.5 * e(-l) - e(-k) + 0.5 * e(xi) + 0.5
    return np.stack([first, second, third], axis=-1)


def _null_vector_3(a: np.ndarray) -> np.ndarray:
    """Kernel direction of rank-2 3x3 matrices from the largest row cross product."""
    r0, r1, r2 = a[..., 0, :], a[..., 1, :], a[..., 2, :]
    cands = np.stack([np.cross(r0, r1), np.cross(r0, r2), np.cross(r1, r2)], axis=-2)
    norms = np.linalg.norm(cands, axis=-1)
    best = np.argmax(norms, axis=-1)
    return np.take_along_axis(cands, best[..., None, None], axis=-2)[..., 0, :]


def _fix_phase(v: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(v), axis=-1)
    pivot = np.take_along_axis(v, idx[..., None], axis=-1)
    return v * (np.abs(pivot) / pivot)


def _is_grover3(pair: CoinPair | None) -> bool:
    if pair is None:
        return True
    g = grover(3).matrix
    return np.array_equal(pair.C.matrix, g) and np.array_equal(pair.D.matrix, g)


def _flat_vectors(u: np.ndarray, k, l, seed: np.ndarray | None = None) -> np.ndarray:
    """Normalised eigenvalue-1 vectors of batched 3x3 unitaries, residual-checked."""
    if seed is None:
        v = _null_vector_3(u - np.eye(3))
    else:
        v = seed.copy()
        weak = np.linalg.norm(v, axis=-1) < _EQ10_SWITCH
        if np.any(weak):
            v[weak] = _null_vector_3(u[weak] - np.eye(3))
    norms = np.linalg.norm(v, axis=-1)
    bad = norms < 1e-12
    if np.any(bad):
        i = np.unravel_index(np.argmax(bad), bad.shape)
        kk, ll = np.broadcast_to(k, bad.shape)[i], np.broadcast_to(l, bad.shape)[i]
        raise DegeneratePointError(
            f"eigenvalue-1 branch is degenerate at (k, l) = ({kk:.17g}, {ll:.17g})", kk, ll
        )
    v = _fix_phase(v / norms[..., None])
    resid = np.linalg.norm(np.einsum("...ij,...j->...i", u, v) - v, axis=-1)
    if np.any(resid > RESIDUAL_TOL):
        i = np.unravel_index(np.argmax(resid), resid.shape)
        kk, ll = np.broadcast_to(k, resid.shape)[i], np.broadcast_to(l, resid.shape)[i]
        raise DegeneratePointError(
            f"flat-branch residual {resid[i]:.3e} exceeds {RESIDUAL_TOL:g} "
            f"at (k, l) = ({kk:.17g}, {ll:.17g})", kk, ll
        )
    return v


def flat_branch_vectors_3(pair: CoinPair | None, k, l) -> np.ndarray:
    """
    Unit eigenvalue-1 eigenvectors of ``U~(k, l)`` for every broadcast point.

    The Grover walk uses the closed form at ``xi = 0`` and switches to the
    kernel of ``U~ - I`` where that closed form vanishes (the line ``k = l``).
    Other pairs always use the kernel route.
    """
    if pair is None:
        pair = CoinPair.uniform(grover(3))
    u = evolution_operator_3(pair, k, l)
    seed = grover_eigenvector(k, l, 0.0) if _is_grover3(pair) else None
    return _flat_vectors(u, k, l, seed)


def flat_branch_vectors_line(k) -> np.ndarray:
    """Unit eigenvalue-1 eigenvectors of the line operator at every ``k``."""
    u = evolution_operator_line(k)
    return _flat_vectors(u, k, np.zeros_like(np.asarray(k, dtype=float)))


def eigenvector_flat_branch(k: float, l: float, pair: CoinPair | None = None) -> np.ndarray:
    """
    Unit eigenvector of ``U~(k, l)`` with eigenvalue 1.

    The largest-modulus entry is made real and positive. Raises
    ``DegeneratePointError`` where the branch is not simple, e.g. at k = l = 0.
    """
    return flat_branch_vectors_3(pair, float(k), float(l))


def _flat_raw_4(k, l):
    k, l = np.broadcast_arrays(np.asarray(k, dtype=float), np.asarray(l, dtype=float))
    ek, el = np.exp(1j * k), np.exp(1j * l)
    z = np.zeros(k.shape, complex)
    o = np.ones(k.shape, complex)
    plus = np.stack(
        [el - ek, 1 - el, ek - 1, z, ek - el, ek * (el - 1), -el * (ek - 1), z], axis=-1
    )
    minus = np.stack(
        [
            np.stack([-o, z, z, o, -o, z, z, o], axis=-1),
            np.stack([z, 1 / ek, z, -1 / ek, z, o, z, -o], axis=-1),
            np.stack([z, z, 1 / el, -1 / el, z, z, o, -o], axis=-1),
        ],
        axis=-2,
    )
    return plus, minus


def flat_branch_vectors_4(k, l, check: bool = True):
    """
    Orthonormal eigenvectors of the four-state Grover operator for eigenvalues +1 and -1.

    Returns
    -------
    plus : ndarray, shape S + (8,)
        Normalised eigenvalue +1 vector.
    minus : ndarray, shape S + (3, 8)
        Gram-Schmidt orthonormalised eigenvalue -1 vectors.
    """
    plus, minus = _flat_raw_4(k, l)
    shape = plus.shape[:-1]

    def _where(mask):
        i = np.unravel_index(np.argmax(mask), mask.shape)
        kk = np.broadcast_to(np.asarray(k, float), shape)[i]
        ll = np.broadcast_to(np.asarray(l, float), shape)[i]
        return kk, ll

    n1 = np.linalg.norm(plus, axis=-1)
    if np.any(n1 < 1e-12):
        kk, ll = _where(n1 < 1e-12)
        raise DegeneratePointError(
            f"eigenvalue +1 vector vanishes at (k, l) = ({kk:.17g}, {ll:.17g})", kk, ll
        )
    plus = plus / n1[..., None]

    basis = np.empty_like(minus)
    for j in range(3):
        v = minus[..., j, :].copy()
        for i in range(j):
            q = basis[..., i, :]
            v -= np.sum(q.conj() * v, axis=-1)[..., None] * q
        nv = np.linalg.norm(v, axis=-1)
        if np.any(nv < 1e-10):
            kk, ll = _where(nv < 1e-10)
            raise DegeneratePointError(
                f"Gram-Schmidt lost rank on the -1 eigenspace at (k, l) = ({kk:.17g}, {ll:.17g})",
                kk, ll,
            )
        basis[..., j, :] = v / nv[..., None]

    if check:
        u = evolution_operator_4(k, l)
        r_plus = np.linalg.norm(np.einsum("...ij,...j->...i", u, plus) - plus, axis=-1)
        r_minus = np.linalg.norm(np.einsum("...ij,...kj->...ki", u, basis) + basis, axis=-1)
        worst = np.maximum(r_plus, r_minus.max(axis=-1))
        if np.any(worst > RESIDUAL_TOL):
            kk, ll = _where(worst > RESIDUAL_TOL)
            raise DegeneratePointError(
                f"four-state flat-branch residual exceeds {RESIDUAL_TOL:g} "
                f"at (k, l) = ({kk:.17g}, {ll:.17g})", kk, ll
            )
    return plus, basis


def flat_branch_projectors_4(k: float, l: float):
    """Projectors ``(P_plus, P_minus)`` onto the +1 and -1 eigenspaces (8x8 each)."""
    plus, minus = flat_branch_vectors_4(float(k), float(l))
    p_plus = np.outer(plus, plus.conj())
    p_minus = minus.T @ minus.conj()
    return p_plus, p_minus


def spectrum(u: np.ndarray) -> Spectrum:
    """
    Eigen-decomposition of a unitary matrix through the complex Schur form.

    For normal matrices the Schur factor is diagonal, so the Schur vectors are
    an orthonormal eigenbasis even inside degenerate eigenspaces.
    """
    t, z = scipy.linalg.schur(np.asarray(u, dtype=complex), output="complex")
    return Spectrum(np.angle(np.diag(t)), z)


def spectrum_3(pair: CoinPair, k: float, l: float) -> Spectrum:
    """
    Spectrum of ``U~(k, l)`` ordered as ``(0, +theta, -theta)`` with theta in [0, pi].

    The eigenphase closest to zero is placed first; this is the flat branch
    whenever the pair satisfies the localization condition.
    """
    eig = spectrum(evolution_operator_3(pair, k, l))
    phases = eig.eigenphases
    first = int(np.argmin(np.abs(phases)))
    rest = [i for i in range(3) if i != first]
    rest.sort(key=lambda i: -phases[i])
    order = [first] + rest
    return Spectrum(phases[order], eig.eigenvectors[:, order])


def fourier_amplitudes(
    pair: CoinPair, psi0, t: int, grid_n: int = 256, half_width: int | None = None
) -> np.ndarray:
    """
    Real-space amplitudes after ``t`` steps computed through momentum space.

    The walker starts at ``(0, 0, 0)`` with coin state ``psi0``; each step is
    the momentum-space operator at the grid nodes and the result is brought
    back with the inverse transform sampled on the ``grid_n`` x ``grid_n``
    midpoint grid (exact while the support is narrower than the grid).

    Returns
    -------
    ndarray, shape (2, dim, 2h+1, 2h+1)
        Indexed ``[s, j, x + h, y + h]`` with ``h = half_width`` (default ``t``).
    """
    d = pair.dim
    psi0 = np.asarray(psi0, dtype=complex)
    h = t if half_width is None else half_width
    nodes = brillouin_grid(grid_n)
    kk, ll = np.meshgrid(nodes, nodes, indexing="ij")
    op = step_operator(pair, kk, ll)
    state = np.zeros((grid_n, grid_n, 2 * d), dtype=complex)
    state[..., :d] = psi0
    for _ in range(t):
        state = np.einsum("abij,abj->abi", op, state)
    coords = np.arange(-h, h + 1)
    wave = np.exp(1j * np.outer(nodes, coords))
    amp = np.einsum("ax,by,abn->nxy", wave, wave, state) / grid_n**2
    return amp.reshape(2, d, coords.size, coords.size)
