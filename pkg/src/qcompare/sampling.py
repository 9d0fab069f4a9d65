"""Seeded random states, channels and encodings.

Every sampler takes an explicit ``numpy.random.Generator``. Batch callers
derive one generator per item with :func:`indexed_rng`, so item ``i`` of a
batch is the same no matter how the batch is split or ordered.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .objects import DensityMatrix, Encoding


def indexed_rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(stream), int(index)])


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density_array(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    """Hilbert-Schmidt (rank ``d``) or induced-measure (lower rank) random state."""
    g = ginibre(rng, d, rank or d)
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_density_matrix(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    return DensityMatrix(random_density_array(d, rng, rank))


def random_choi_array(d_in: int, d_out: int, rng: np.random.Generator,
                      kraus_rank: Optional[int] = None) -> np.ndarray:
    """Random CPTP Choi matrix on ``C^d_in (x) C^d_out`` (input factor first).

    A random PSD matrix ``G G^dagger`` is pushed onto the trace-preserving set
    by congruence with ``T^{-1/2} (x) I`` where ``T`` is its output partial trace.
    """
    g = ginibre(rng, d_in * d_out, kraus_rank or d_in * d_out)
    j0 = g @ g.conj().T
    t = np.einsum("ijkj->ik", j0.reshape(d_in, d_out, d_in, d_out))
    w, v = np.linalg.eigh((t + t.conj().T) / 2)
    t_isqrt = (v / np.sqrt(w)) @ v.conj().T
    k = np.kron(t_isqrt, np.eye(d_out))
    j = k @ j0 @ k.conj().T
    return (j + j.conj().T) / 2


def random_encoding(u_size: int, rng: np.random.Generator, y_size: Optional[int] = None) -> Encoding:
    """Symmetric Dirichlet(1) draw over the joint simplex ``U x [Y x] X``."""
    shape = (u_size, 2) if y_size is None else (u_size, y_size, 2)
    p = rng.dirichlet(np.ones(int(np.prod(shape)))).reshape(shape)
    p = p / p.sum()
    return Encoding(p)
