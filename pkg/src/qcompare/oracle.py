"""Brute-force reference computations.

Nothing here touches the Jacobi eigensolver or the SDP engine: guessing
probabilities come from a sweep over projective qubit measurements, trace
norms from characteristic polynomials or power iteration, and channels from
a direct search over Choi parametrizations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import least_squares

from .linalg import as_array
from .objects import CqState, density

ORACLE_FOUND_TOL = 1e-6


def fibonacci_hemisphere(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors on the upper hemisphere, shape ``(n, 3)``.

    A projective qubit measurement along ``-v`` is the one along ``v`` with
    its outcomes swapped, so half the sphere suffices once both label
    assignments are tried. The first direction is the pole itself.
    """
    if n < 1:
        raise ValueError("need at least one direction")
    k = np.arange(n)
    z = 1.0 - k / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def bloch_vector(rho) -> np.ndarray:
    m = as_array(rho)
    return np.array([2 * m[0, 1].real, -2 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real])


def oracle_pguess_qubit(cq: CqState, n_dirs: int = 4096) -> float:
    """Best guessing probability over projective measurements along sampled Bloch directions.

    Each direction is tried with both label assignments, together with the
    two strategies that ignore the state. The result is a lower bound on the
    optimum.
    """
    if cq.dim != 2:
        raise ValueError("oracle_pguess_qubit needs qubit conditionals")
    if cq.size == 1:
        return 1.0
    if cq.size != 2:
        raise ValueError("oracle_pguess_qubit handles two labels")
    p0, p1 = (float(w) for w in cq.weights)
    v0, v1 = (bloch_vector(s) for s in cq.states)
    dirs = fibonacci_hemisphere(n_dirs)
    # tr(rho (1 + n.sigma)/2) = (1 + n.r) / 2
    a = dirs @ v0
    b = dirs @ v1
    plus_first = p0 * (1 + a) / 2 + p1 * (1 - b) / 2
    minus_first = p0 * (1 - a) / 2 + p1 * (1 + b) / 2
    return float(max(np.max(plus_first), np.max(minus_first), p0, p1))


def _eig_sym_2(m: np.ndarray) -> np.ndarray:
    a, d = m[0, 0].real, m[1, 1].real
    half = math.hypot((a - d) / 2, abs(m[0, 1]))
    mid = (a + d) / 2
    return np.array([mid + half, mid - half])


def _eig_sym_3(m: np.ndarray) -> np.ndarray:
    q = np.trace(m).real / 3
    shifted = m - q * np.eye(3)
    p2 = float(np.sum(np.abs(shifted) ** 2)) / 6
    if p2 < 1e-300:
        return np.array([q, q, q])
    p = math.sqrt(p2)
    det = np.linalg.det(shifted / p).real
    phi = math.acos(min(1.0, max(-1.0, det / 2))) / 3
    e1 = q + 2 * p * math.cos(phi)
    e3 = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    return np.array([e1, 3 * q - e1 - e3, e3])


def _eig_power(m: np.ndarray, iters: int = 5000) -> np.ndarray:
    """Eigenvalues by shifted power iteration with deflation and Rayleigh-quotient polishing."""
    n = m.shape[0]
    shift = float(np.sqrt(np.sum(np.abs(m) ** 2))) + 1.0
    work = m + shift * np.eye(n)
    rng = np.random.default_rng(12345)
    found, vecs = [], []
    for _ in range(n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for _ in range(iters):
            for u in vecs:
                v = v - u * np.vdot(u, v)
            w = work @ v
            w /= np.linalg.norm(w)
            if np.linalg.norm(w - v * np.vdot(v, w) / abs(np.vdot(v, w))) < 1e-10:
                v = w
                break
            v = w
        lam = np.vdot(v, m @ v).real
        for _ in range(3):
            try:
                z = np.linalg.solve(m - lam * np.eye(n) + 1e-300 * np.eye(n), v)
            except np.linalg.LinAlgError:
                break
            for u in vecs:
                z = z - u * np.vdot(u, z)
            nz = np.linalg.norm(z)
            if not np.isfinite(nz) or nz == 0:
                break
            v = z / nz
            lam = np.vdot(v, m @ v).real
        found.append(lam)
        vecs.append(v)
        work = work - (lam + shift) * np.outer(v, v.conj())
    return np.array(sorted(found, reverse=True))


def oracle_eigenvalues(m) -> np.ndarray:
    arr = as_array(m)
    arr = (arr + arr.conj().T) / 2
    n = arr.shape[0]
    if n == 1:
        return np.array([arr[0, 0].real])
    if n == 2:
        return _eig_sym_2(arr)
    if n == 3:
        return _eig_sym_3(arr)
    if n <= 8:
        return _eig_power(arr)
    raise ValueError("oracle eigenvalues support dimension up to 8")


def oracle_trace_norm(m) -> float:
    """Trace norm via closed forms (``d <= 3``) or power iteration (``d <= 8``)."""
    return float(np.sum(np.abs(oracle_eigenvalues(m))))


@dataclass(frozen=True)
class OracleChannelResult:
    found: bool
    residual: float
    choi: Optional[np.ndarray]
    starts: int

    def as_dict(self) -> dict:
        return {"found": self.found, "residual": self.residual, "starts": self.starts}


def _inv_sqrt_2(t: np.ndarray) -> np.ndarray:
    # sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)) for 2x2 A > 0
    det = max((t[0, 0] * t[1, 1] - t[0, 1] * t[1, 0]).real, 1e-300)
    s = math.sqrt(det)
    root = (t + s * np.eye(2)) / math.sqrt(t[0, 0].real + t[1, 1].real + 2 * s)
    # det(sqrt A) = sqrt(det A), so invert through the adjugate
    return np.array([[root[1, 1], -root[0, 1]], [-root[1, 0], root[0, 0]]]) / s


def _choi_from_params(x: np.ndarray) -> np.ndarray:
    g = (x[:16] + 1j * x[16:]).reshape(4, 4)
    j0 = g @ g.conj().T
    t = np.einsum("ijkj->ik", j0.reshape(2, 2, 2, 2))
    k = np.kron(_inv_sqrt_2(t), np.eye(2))
    return k @ j0 @ k.conj().T


def _image(j: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return np.einsum("jk,jakb->ab", rho, j.reshape(2, 2, 2, 2))


def oracle_feasibility_qubit(rho_pair, sigma_pair, n_params: int = 8, seed: int = 0,
                             maxfev: int = 4000) -> OracleChannelResult:
    """Randomized search for a qubit channel with ``Phi(rho_i) = sigma_i``.

    Each start draws a random 4x4 complex factor ``G``; the Choi matrix is
    ``G G^dagger`` congruence-normalized to be trace preserving, so every
    parameter vector is a channel. Starts are refined by a trust-region
    least-squares search on the entrywise residuals, and a channel is
    reported when the summed trace-norm residual drops below ``1e-6``.
    Failing to find one proves nothing.
    """
    rhos = [density(r).data for r in rho_pair]
    sigmas = [density(s).data for s in sigma_pair]
    if any(m.shape != (2, 2) for m in rhos + sigmas):
        raise ValueError("oracle_feasibility_qubit needs qubit states")

    def deviations(x):
        j = _choi_from_params(x)
        diff = np.concatenate([(_image(j, r) - s).ravel() for r, s in zip(rhos, sigmas)])
        return np.concatenate([diff.real, diff.imag])

    def residual(j):
        return sum(oracle_trace_norm(_image(j, r) - s) for r, s in zip(rhos, sigmas))

    best = (math.inf, None)
    for start in range(n_params):
        rng = np.random.default_rng([seed, 31, start])
        x0 = rng.standard_normal(32)
        res = least_squares(deviations, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=maxfev)
        j = _choi_from_params(res.x)
        r = residual(j)
        if r < best[0]:
            best = (r, j)
        if r < ORACLE_FOUND_TOL:
            return OracleChannelResult(True, float(r), j, start + 1)
    return OracleChannelResult(False, float(best[0]), best[1], n_params)
