"""Dense linear algebra over complex Hermitian matrices.

The eigensolver is a cyclic complex Jacobi iteration that operates on stacks
of matrices at once, so callers needing many small decompositions (trace
norms along a parameter grid, PSD checks of every POVM element) pay the
Python overhead once per sweep rather than once per matrix.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np

HERMITICITY_REJECT_TOL = 1e-9
JACOBI_MAX_SWEEPS = 60


class NotHermitianError(ValueError):
    """Raised when an input's anti-Hermitian part is too large."""


class EigenConvergenceError(ArithmeticError):
    """Raised when the Jacobi iteration hits its sweep cap."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(f"Jacobi eigensolver did not converge after {sweeps} sweeps "
                         f"(off-diagonal residual {residual:.3e})")
        self.residual = residual
        self.sweeps = sweeps


class HermitianMatrix:
    """An immutable dense complex Hermitian matrix.

    The constructor symmetrizes ``(M + M^dagger) / 2`` and rejects inputs
    whose anti-Hermitian part exceeds ``tol`` in max-norm.
    """

    __slots__ = ("_data",)

    def __init__(self, entries, tol: float = HERMITICITY_REJECT_TOL):
        arr = np.array(entries, dtype=complex)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix has non-finite entries")
        anti = np.max(np.abs(arr - arr.conj().T)) / 2 if arr.size else 0.0
        if anti > tol:
            raise NotHermitianError(f"anti-Hermitian part {anti:.3e} exceeds {tol:.1e}")
        data = (arr + arr.conj().T) / 2
        data.setflags(write=False)
        self._data = data

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._data.copy() if copy else self._data
        return self._data.astype(dtype)

    def trace(self) -> float:
        return float(np.trace(self._data).real)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"

    # arithmetic returns plain HermitianMatrix: sums of states are not states
    def __add__(self, other):
        return HermitianMatrix(self._data + as_array(other))

    def __sub__(self, other):
        return HermitianMatrix(self._data - as_array(other))

    def __neg__(self):
        return HermitianMatrix(-self._data)

    def __mul__(self, scalar):
        if not np.isscalar(scalar) or np.iscomplexobj(scalar):
            return NotImplemented
        return HermitianMatrix(float(scalar) * self._data)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self._data.shape == other._data.shape and np.array_equal(self._data, other._data)

    __hash__ = None


def as_array(m) -> np.ndarray:
    """Return the complex ndarray behind ``m`` (a HermitianMatrix or array-like)."""
    if isinstance(m, HermitianMatrix):
        return m.data
    return np.asarray(m, dtype=complex)


def hermitian(m) -> HermitianMatrix:
    return m if isinstance(m, HermitianMatrix) else HermitianMatrix(m)


def _jacobi_batch(a: np.ndarray, want_vectors: bool = True):
    """Cyclic complex Jacobi on a stack ``(B, n, n)`` of Hermitian matrices."""
    a = np.array(a, dtype=complex, copy=True)
    nbatch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if want_vectors else None
    if n == 1:
        return a[:, :, 0].real.copy(), v

    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    threshold = 1e-15 * scale + 1e-300
    offmask = ~np.eye(n, dtype=bool)
    sweeps = 0
    while True:
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        if np.all(off <= threshold):
            break
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise EigenConvergenceError(float(np.max(off / np.maximum(scale, 1e-300))), sweeps)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                active = mag > 1e-300
                if not np.any(active):
                    continue
                safe_mag = np.where(active, mag, 1.0)
                phase = np.where(active, apq / safe_mag, 1.0)
                theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe_mag)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                c = np.where(active, c, 1.0)
                s = np.where(active, s, 0.0)
                pc = np.conj(phase)

                # A <- A U with U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                colp = a[:, :, p].copy()
                colq = a[:, :, q]
                a[:, :, p] = colp * c[:, None] - colq * (s * pc)[:, None]
                a[:, :, q] = colp * s[:, None] + colq * (c * pc)[:, None]
                # A <- U^dagger A
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :]
                a[:, p, :] = rowp * c[:, None] - rowq * (s * phase)[:, None]
                a[:, q, :] = rowp * s[:, None] + rowq * (c * phase)[:, None]
                a[:, p, q] = np.where(active, 0.0, a[:, p, q])
                a[:, q, p] = np.where(active, 0.0, a[:, q, p])
                a[:, p, p] = a[:, p, p].real
                a[:, q, q] = a[:, q, q].real
                if want_vectors:
                    vp = v[:, :, p].copy()
                    vq = v[:, :, q]
                    v[:, :, p] = vp * c[:, None] - vq * (s * pc)[:, None]
                    v[:, :, q] = vp * s[:, None] + vq * (c * pc)[:, None]

    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    return w, v


def eigh_stack(mats: np.ndarray, want_vectors: bool = True):
    """Eigendecompose a stack of Hermitian matrices (no validation).

    Returns eigenvalues sorted descending, shape ``(..., n)``, and the matching
    unitary eigenvector matrices (columns) or ``None``.
    """
    mats = np.asarray(mats, dtype=complex)
    lead = mats.shape[:-2]
    n = mats.shape[-1]
    flat = mats.reshape(-1, n, n)
    flat = (flat + np.conj(np.swapaxes(flat, 1, 2))) / 2
    w, v = _jacobi_batch(flat, want_vectors)
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if want_vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
        v = v.reshape(lead + (n, n))
    return w.reshape(lead + (n,)), v


def eig_hermitian(m) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and unitary eigenvectors of a Hermitian matrix.

    >>> w, v = eig_hermitian([[0, 1], [1, 0]])
    >>> [round(x, 12) for x in w]
    [1.0, -1.0]
    """
    arr = hermitian(m).data
    w, v = eigh_stack(arr[None])
    return w[0], v[0]


def eigvals_hermitian(m) -> np.ndarray:
    w, _ = eigh_stack(hermitian(m).data[None], want_vectors=False)
    return w[0]


def trace_norm(m) -> float:
    """Schatten-1 norm: the sum of absolute eigenvalues."""
    return float(np.sum(np.abs(eigvals_hermitian(m))))


def trace_norm_stack(mats: np.ndarray) -> np.ndarray:
    """Trace norms of a stack ``(..., n, n)`` of Hermitian matrices."""
    w, _ = eigh_stack(mats, want_vectors=False)
    return np.sum(np.abs(w), axis=-1)


def min_eigenvalue(m) -> float:
    return float(eigvals_hermitian(m)[-1])


def psd_sqrt(m, inverse: bool = False) -> np.ndarray:
    """Square root (or inverse square root) of a positive definite matrix."""
    w, v = eig_hermitian(m)
    if inverse:
        if w[-1] <= 0:
            raise ValueError("matrix is not positive definite")
        f = 1.0 / np.sqrt(w)
    else:
        f = np.sqrt(np.clip(w, 0.0, None))
    return (v * f) @ v.conj().T


def tensor(a, b) -> HermitianMatrix:
    """Kronecker product ``a (x) b``."""
    return HermitianMatrix(np.kron(as_array(a), as_array(b)))


def partial_trace(m, dims: Tuple[int, int], keep: str = "first") -> HermitianMatrix:
    """Trace out one factor of a bipartite operator on ``C^dA (x) C^dB``.

    ``keep="first"`` traces out the second factor and returns an operator on
    the first; ``keep="second"`` does the opposite.
    """
    arr = as_array(m)
    d_a, d_b = (int(d) for d in dims)
    if d_a < 1 or d_b < 1 or arr.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"dims {dims} do not factor a matrix of shape {arr.shape}")
    t = arr.reshape(d_a, d_b, d_a, d_b)
    if keep == "first":
        out = np.einsum("ijkj->ik", t)
    elif keep == "second":
        out = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")
    return HermitianMatrix(out)


def partial_trace_array(arr: np.ndarray, dims: Tuple[int, int], keep: str = "first") -> np.ndarray:
    d_a, d_b = dims
    t = np.asarray(arr).reshape(d_a, d_b, d_a, d_b)
    return np.einsum("ijkj->ik", t) if keep == "first" else np.einsum("ijil->jl", t)


def hermitian_basis(d: int) -> np.ndarray:
    """An orthonormal (Hilbert-Schmidt) basis of the real space of d x d Hermitian matrices.

    Returns an array of shape ``(d*d, d, d)``; diagonal units first, then the
    symmetric and antisymmetric off-diagonal pairs.
    """
    basis = []
    for j in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[j, j] = 1.0
        basis.append(e)
    r = 1.0 / np.sqrt(2.0)
    for j in range(d):
        for k in range(j + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[j, k] = e[k, j] = r
            basis.append(e)
            e = np.zeros((d, d), dtype=complex)
            e[j, k] = -1j * r
            e[k, j] = 1j * r
            basis.append(e)
    return np.array(basis)
