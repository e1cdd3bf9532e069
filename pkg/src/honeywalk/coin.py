"""
Coin operators for three- and four-state walks on the honeycomb lattice.

Catalog
-------
- grover(dim): Grover reflection about the uniform state, dim in {3, 4}
- dft3(): 3x3 discrete Fourier coin (the "H" coin)
- machida_coin(epsilon): one-parameter real symmetric family
- load_coin / save_coin: JSON round trip ``{"dim", "re", "im"}``

A ``CoinPair`` attaches one coin to type-0 vertices and another to type-1
vertices. ``check_localization_condition`` tests whether a three-state pair
is guaranteed to keep a flat eigenvalue-1 branch in momentum space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.linalg

__all__ = [
    "CoinOperator",
    "CoinPair",
    "LocalizationReport",
    "grover",
    "dft3",
    "machida_coin",
    "row_mask",
    "check_localization_condition",
    "coin_from_name",
    "load_coin",
    "save_coin",
    "CATALOG",
]

UNITARY_TOL = 1e-12
ADJOINT_TOL = 1e-10
REALNESS_TOL = 1e-8
SPECTRAL_TOL = 1e-8


@dataclass(frozen=True)
class CoinOperator:
    """
    A unitary ``dim x dim`` coin, ``dim`` in {3, 4}.

    Parameters
    ----------
    matrix : array_like
        Coin entries. Copied and frozen on construction.
    name : str
        Label used in reports and output metadata.
    tol : float
        Unitarity tolerance on ``max|C^H C - I|``.
    """

    matrix: np.ndarray
    name: str = "custom"
    tol: float = field(default=UNITARY_TOL, repr=False, compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"coin must be a square matrix, got shape {m.shape}")
        if m.shape[0] not in (3, 4):
            raise ValueError(f"coin dimension must be 3 or 4, got {m.shape[0]}")
        err = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()
        if err > self.tol:
            raise ValueError(f"coin '{self.name}' is not unitary (max deviation {err:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "CoinOperator":
        name = self.name[:-7] if self.name.endswith("-dagger") else self.name + "-dagger"
        return CoinOperator(self.matrix.conj().T, name=name, tol=self.tol)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)


@dataclass(frozen=True)
class CoinPair:
    """Coin ``C`` used on type-0 vertices and ``D`` used on type-1 vertices."""

    C: CoinOperator
    D: CoinOperator

    def __post_init__(self):
        if self.C.dim != self.D.dim:
            raise ValueError(f"coin dimensions differ: {self.C.dim} vs {self.D.dim}")

    @classmethod
    def uniform(cls, coin: CoinOperator) -> "CoinPair":
        """The position-independent walk: the same coin on both sublattices."""
        return cls(coin, coin)

    @property
    def dim(self) -> int:
        return self.C.dim

    @property
    def name(self) -> str:
        return f"{self.C.name},{self.D.name}"


def grover(dim: int) -> CoinOperator:
    """
    Grover coin ``(2/d) J - I``.

    Diagonal entries are ``2/d - 1`` and off-diagonal entries are ``2/d``:
    ``-1/3`` and ``2/3`` for d=3, ``-1/2`` and ``1/2`` for d=4.
    """
    if dim not in (3, 4):
        raise ValueError(f"Grover coin is provided for dim 3 or 4, got {dim!r}")
    m = np.full((dim, dim), 2.0 / dim) - np.eye(dim)
    return CoinOperator(m, name=f"grover{dim}")


def dft3() -> CoinOperator:
    """The 3x3 unitary discrete Fourier matrix ``omega**(j*k) / sqrt(3)``."""
    omega = np.exp(2j * np.pi / 3)
    jk = np.outer(np.arange(3), np.arange(3))
    return CoinOperator(omega ** (jk % 3) / np.sqrt(3.0), name="dft3")


def machida_coin(epsilon: float) -> CoinOperator:
    """
    Real symmetric three-state coin parametrised by ``epsilon``.

    Notes
    -----
    The Grover coin is recovered at ``cos(epsilon) = -1/3`` with
    ``sin(epsilon) > 0``, i.e. ``epsilon = arccos(-1/3)``.
    """
    c, s = np.cos(epsilon), np.sin(epsilon)
    r2 = np.sqrt(2.0)
    m = 0.5 * np.array(
        [
            [-1.0 - c, r2 * s, 1.0 - c],
            [r2 * s, 2.0 * c, r2 * s],
            [1.0 - c, r2 * s, -1.0 - c],
        ]
    )
    return CoinOperator(m, name=f"machida({epsilon:.17g})")


def row_mask(coin: CoinOperator | np.ndarray, j: int) -> np.ndarray:
    """
    Matrix keeping only row ``j`` (1-based) of the coin, zeros elsewhere.

    The masks partition the coin: ``sum(row_mask(C, j) for j in 1..dim) == C``.
    """
    m = np.asarray(coin, dtype=np.complex128)
    dim = m.shape[0]
    if not 1 <= j <= dim:
        raise IndexError(f"row index {j} out of range 1..{dim}")
    out = np.zeros_like(m)
    out[j - 1] = m[j - 1]
    return out


@dataclass
class LocalizationReport:
    """Outcome of ``check_localization_condition`` with per-clause witnesses."""

    holds: bool
    adjoint_ok: bool
    adjoint_error: float
    real_eigenvectors_ok: bool
    realness_error: float
    degenerate_eigenspaces: int
    inconclusive: bool
    spectral_ok: bool
    spectral_distance: float
    failed: list[str]

    def summary(self) -> str:
        lines = [
            f"holds: {self.holds}",
            f"  D = C^dagger        : {self.adjoint_ok} (max deviation {self.adjoint_error:.3e})",
            f"  real eigenvectors   : {self.real_eigenvectors_ok} "
            f"(max phase defect {self.realness_error:.3e}, "
            f"degenerate eigenspaces {self.degenerate_eigenspaces})",
            f"  eigenvalue 1 present: {self.spectral_ok} "
            f"(max over samples of min|lambda - 1| = {self.spectral_distance:.3e})",
        ]
        if self.inconclusive:
            lines.append("  note: degenerate eigenspace realness could not be decided")
        if self.failed:
            lines.append("  failed: " + ", ".join(self.failed))
        return "\n".join(lines)


def _phase_defect(v: np.ndarray) -> float:
    # max |Im(v_a conj(v_b))| over nonzero entries; zero iff v is real up to one phase
    v = v / np.linalg.norm(v)
    nz = v[np.abs(v) > 1e-12]
    if nz.size < 2:
        return 0.0
    return float(np.abs(np.imag(np.outer(nz, nz.conj()))).max())


def _conjugation_defect(basis: np.ndarray) -> float:
    # distance of conj(span) from span; zero iff the subspace has a real basis
    proj = basis @ basis.conj().T
    resid = basis.conj() - proj @ basis.conj()
    return float(np.linalg.norm(resid, ord=2))


def check_localization_condition(
    pair: CoinPair, samples: int = 32, seed: int = 20151026
) -> LocalizationReport:
    """
    Test the sufficient condition for a flat eigenvalue-1 branch.

    The condition holds when ``D = C^dagger`` and every eigenvector of ``C`` is
    real up to a global phase. Degenerate eigenspaces are accepted when they
    are closed under complex conjugation, which is exactly when they admit a
    real orthonormal basis. Independently, the momentum-space operator
    ``M D M^dagger C`` is diagonalised at ``samples`` pseudo-random wave
    vectors and must have an eigenvalue within 1e-8 of 1.

    Parameters
    ----------
    pair : CoinPair
        Three-state coin pair.
    samples : int
        Number of wave vectors for the spectral check.
    seed : int
        Seed of the wave-vector sampler.

    Returns
    -------
    LocalizationReport
    """
    if pair.dim != 3:
        raise ValueError("the localization condition is stated for three-state coins")
    C = pair.C.matrix
    D = pair.D.matrix

    adjoint_error = float(np.abs(D - C.conj().T).max())
    adjoint_ok = adjoint_error <= ADJOINT_TOL

    # complex Schur of a normal matrix is diagonal with a unitary eigenbasis,
    # even inside degenerate eigenspaces
    T, Z = scipy.linalg.schur(C, output="complex")
    evals = np.diag(T)
    groups: list[list[int]] = []
    for i, lam in enumerate(evals):
        for g in groups:
            if abs(evals[g[0]] - lam) < 1e-6:
                g.append(i)
                break
        else:
            groups.append([i])

    realness_error = 0.0
    degenerate = 0
    inconclusive = False
    for g in groups:
        if len(g) == 1:
            defect = _phase_defect(Z[:, g[0]])
        else:
            degenerate += 1
            defect = _conjugation_defect(Z[:, g])
            if REALNESS_TOL < defect < 1e-4:
                inconclusive = True
        realness_error = max(realness_error, defect)
    real_ok = realness_error <= REALNESS_TOL

    rng = np.random.default_rng(seed)
    worst = 0.0
    for k, l in rng.uniform(-np.pi, np.pi, size=(samples, 2)):
        m = np.array([1.0, np.exp(-1j * k), np.exp(-1j * l)])
        u = (m[:, None] * D * m.conj()[None, :]) @ C
        worst = max(worst, float(np.abs(np.linalg.eigvals(u) - 1.0).min()))
    spectral_ok = worst <= SPECTRAL_TOL

    failed = []
    if not adjoint_ok:
        failed.append("D != C^dagger")
    if not real_ok:
        failed.append("eigenvectors of C not real")
    structural = adjoint_ok and real_ok
    if structural and not spectral_ok:
        failed.append("no eigenvalue 1 in momentum space")
    return LocalizationReport(
        holds=structural and spectral_ok,
        adjoint_ok=adjoint_ok,
        adjoint_error=adjoint_error,
        real_eigenvectors_ok=real_ok,
        realness_error=realness_error,
        degenerate_eigenspaces=degenerate,
        inconclusive=inconclusive,
        spectral_ok=spectral_ok,
        spectral_distance=worst,
        failed=failed,
    )


CATALOG = {
    "grover3": lambda: grover(3),
    "grover4": lambda: grover(4),
    "dft3": dft3,
    "dft3-dagger": lambda: dft3().dagger(),
    "grover3-dagger": lambda: grover(3).dagger(),
    "grover4-dagger": lambda: grover(4).dagger(),
}


def coin_from_name(name: str) -> CoinOperator:
    """
    Resolve a catalog name, ``machida:<epsilon>[-dagger]`` or a JSON file path.
    """
    key = name.strip()
    if key in CATALOG:
        return CATALOG[key]()
    if key.startswith("machida:"):
        arg = key[len("machida:"):]
        dagger = arg.endswith("-dagger")
        coin = machida_coin(float(arg[:-7] if dagger else arg))
        return coin.dagger() if dagger else coin
    path = Path(key)
    if path.suffix == ".json" or path.exists():
        return load_coin(path)
    raise KeyError(f"unknown coin '{name}'; known: {', '.join(sorted(CATALOG))}, machida:<eps>")


def load_coin(path: str | Path) -> CoinOperator:
    """Read a coin from ``{"dim": d, "re": [[...]], "im": [[...]]}`` and check unitarity."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dim = int(data["dim"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed coin file {path}: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(f"malformed coin file {path}: expected {dim}x{dim} 're' and 'im'")
    return CoinOperator(re + 1j * im, name=data.get("name", path.stem))


def save_coin(coin: CoinOperator, path: str | Path) -> None:
    data = {
        "dim": coin.dim,
        "name": coin.name,
        "re": coin.matrix.real.tolist(),
        "im": coin.matrix.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
