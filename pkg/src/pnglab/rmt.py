"""Gaussian ensembles, spectra and matrix-valued Ornstein-Uhlenbeck paths.

Normalisation puts the spectral edge at ``2N`` with fluctuations of order
``N^{1/3}``: GUE has density proportional to ``exp(-Tr H^2 / 2N)``; GOE has
off-diagonal variance ``N`` and diagonal variance ``2N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .rng import as_generator

GOE, GUE = 1, 2
_NAMES = {"goe": GOE, "gue": GUE}


class EigenError(ArithmeticError):
    pass


def ensemble_beta(kind) -> int:
    if isinstance(kind, str):
        try:
            return _NAMES[kind.lower()]
        except KeyError:
            raise ValueError(f"unknown ensemble {kind!r}") from None
    beta = int(kind)
    if beta not in (GOE, GUE):
        raise ValueError(f"beta must be 1 or 2, got {kind!r}")
    return beta


@dataclass(frozen=True)
class MatrixSample:
    N: int
    beta: int
    H: np.ndarray


@dataclass(frozen=True)
class SpectrumSample:
    N: int
    beta: int
    eigenvalues: np.ndarray

    @property
    def edge_value(self) -> float:
        return edge_rescale(self.eigenvalues[-1], self.N)

    def to_csv(self, path) -> None:
        lines = ["index,lambda"] + [f"{i},{v:.17g}" for i, v in enumerate(self.eigenvalues)]
        Path(path).write_text("\n".join(lines) + "\n")


@dataclass(frozen=True)
class EdgePath:
    taus: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.taus) != len(self.values):
            raise ValueError("taus and values differ in length")

    def to_csv(self, path) -> None:
        lines = ["tau,edge_value"] + [f"{t:.17g},{v:.17g}" for t, v in zip(self.taus, self.values)]
        Path(path).write_text("\n".join(lines) + "\n")


def _gaussian_matrix(beta: int, N: int, rng: np.random.Generator) -> np.ndarray:
    if beta == GUE:
        # diagonal variance N; real and imaginary off-diagonal parts variance N/2
        diag = rng.standard_normal(N) * math.sqrt(N)
        off = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) * math.sqrt(N / 2)
        H = np.triu(off, 1)
        H = H + H.conj().T
        H[np.diag_indices(N)] = diag
        return H
    diag = rng.standard_normal(N) * math.sqrt(2 * N)
    off = rng.standard_normal((N, N)) * math.sqrt(N)
    H = np.triu(off, 1)
    H = H + H.T
    H[np.diag_indices(N)] = diag
    return H


def sample_matrix(kind, N: int, seed) -> MatrixSample:
    """One draw from GOE (``beta=1``) or GUE (``beta=2``) of size ``N``."""
    beta = ensemble_beta(kind)
    if N < 1:
        raise ValueError("N must be positive")
    return MatrixSample(int(N), beta, _gaussian_matrix(beta, int(N), as_generator(seed)))


def eigenvalues(M) -> np.ndarray:
    """Ascending spectrum of a self-adjoint matrix (LAPACK ``*heevd``/``*syevd``)."""
    H = M.H if isinstance(M, MatrixSample) else np.asarray(M)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    # LAPACK does not reliably flag NaN input
    if not np.all(np.isfinite(H)):
        raise EigenError(f"non-finite matrix entries for N={H.shape[0]}")
    try:
        w = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"eigensolver failed for N={H.shape[0]}: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise EigenError(f"non-finite eigenvalues for N={H.shape[0]}")
    return w


def spectrum(M: MatrixSample) -> SpectrumSample:
    return SpectrumSample(M.N, M.beta, eigenvalues(M))


def edge_rescale(lambda_max, N: int):
    """``(lambda_max - 2N) / N^{1/3}``; works elementwise on arrays."""
    return (lambda_max - 2 * N) / N ** (1 / 3)


def eigen_residuals(M) -> tuple[float, float]:
    """Largest eigenpair residual and trace defect, both relative to ``N max|H|``."""
    H = M.H if isinstance(M, MatrixSample) else np.asarray(M)
    w, V = np.linalg.eigh(H)
    scale = H.shape[0] * np.abs(H).max()
    res = np.linalg.norm(H @ V - V * w, axis=0).max()
    tr = abs(w.sum() - np.trace(H).real)
    return float(res / scale), float(tr / scale)


def dyson_step(M: MatrixSample, dt: float, seed) -> MatrixSample:
    """Exact Ornstein-Uhlenbeck transition over time ``dt``.

    ``M' = q M + sqrt(1 - q^2) G`` with ``q = exp(-dt / 2N)`` and ``G`` a
    fresh draw of the same ensemble.
    """
    if not dt >= 0:
        raise ValueError(f"dt must be >= 0, got {dt}")
    if dt == 0:
        return MatrixSample(M.N, M.beta, M.H.copy())
    q = math.exp(-dt / (2 * M.N))
    G = _gaussian_matrix(M.beta, M.N, as_generator(seed))
    return MatrixSample(M.N, M.beta, q * M.H + math.sqrt(1 - q * q) * G)


def top_eigenvalue_path(kind, N: int, taus, seed) -> EdgePath:
    """Rescaled largest eigenvalue along a stationary Dyson path.

    Matrix time is ``t = 2 tau N^{2/3}``.  All randomness comes from one
    generator, so the path is a pure function of ``seed``.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or len(taus) == 0:
        raise ValueError("taus must be a non-empty 1-d sequence")
    if taus[0] < 0 or np.any(np.diff(taus) <= 0):
        raise ValueError("taus must be strictly increasing and start at >= 0")
    beta = ensemble_beta(kind)
    rng = as_generator(seed)
    M = MatrixSample(N, beta, _gaussian_matrix(beta, N, rng))
    values = [edge_rescale(eigenvalues(M)[-1], N)]
    for dtau in np.diff(taus):
        M = dyson_step(M, 2 * dtau * N ** (2 / 3), rng)
        values.append(edge_rescale(eigenvalues(M)[-1], N))
    return EdgePath(taus, np.array(values))


def edge_sample(kind, N: int, seed) -> float:
    """Rescaled largest eigenvalue of one fresh draw."""
    M = sample_matrix(kind, N, seed)
    return float(edge_rescale(eigenvalues(M)[-1], N))
