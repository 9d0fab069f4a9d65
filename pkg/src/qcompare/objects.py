"""States, measurements, encodings and classical-quantum assemblies."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional, Sequence, Tuple

import numpy as np

from .linalg import HermitianMatrix, as_array, eigh_stack

VALIDATION_TOL = 1e-9
POVM_SUM_TOL = 1e-8
PROB_SUM_TOL = 1e-12
SPAN_TOL = 1e-8
X_LABELS = (0, 1)


class InvalidStateError(ValueError):
    pass


class DensityMatrix(HermitianMatrix):
    """A positive semidefinite, unit-trace Hermitian matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero; anything more negative
    is rejected. The trace must be within ``tol`` of one and is then
    renormalized exactly.
    """

    __slots__ = ()

    def __init__(self, entries, tol: float = VALIDATION_TOL):
        super().__init__(entries, tol=tol)
        data = self._data
        tr = np.trace(data).real
        if abs(tr - 1.0) > tol:
            raise InvalidStateError(f"trace {tr:.12g} is not within {tol:.1e} of 1")
        w, v = eigh_stack(data[None])
        w, v = w[0], v[0]
        if w[-1] < -tol:
            raise InvalidStateError(f"minimum eigenvalue {w[-1]:.3e} below -{tol:.1e}")
        if w[-1] < 0:
            w = np.clip(w, 0.0, None)
            data = (v * w) @ v.conj().T
            data = (data + data.conj().T) / 2
            tr = np.trace(data).real
        data = data / tr
        data.setflags(write=False)
        self._data = data

    @classmethod
    def normalized(cls, entries) -> "DensityMatrix":
        """Scale a PSD matrix to unit trace before validating it."""
        arr = np.asarray(as_array(entries), dtype=complex)
        return cls(arr / np.trace(arr).real)

    @classmethod
    def pure(cls, ket) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=complex).ravel()
        ket = ket / np.linalg.norm(ket)
        return cls(np.outer(ket, ket.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d)


def density(m) -> DensityMatrix:
    return m if isinstance(m, DensityMatrix) else DensityMatrix(m)


@dataclass(frozen=True)
class Povm:
    """A measurement: PSD elements indexed by ``labels`` summing to the identity."""

    elements: Tuple[HermitianMatrix, ...]
    labels: Tuple[Hashable, ...] = ()

    def __post_init__(self):
        elements = tuple(e if isinstance(e, HermitianMatrix) else HermitianMatrix(e) for e in self.elements)
        if not elements:
            raise ValueError("a POVM needs at least one element")
        dims = {e.dim for e in elements}
        if len(dims) != 1:
            raise ValueError(f"POVM elements have mixed dimensions {sorted(dims)}")
        labels = tuple(self.labels) if self.labels else tuple(range(len(elements)))
        if len(labels) != len(elements):
            raise ValueError("one label per POVM element is required")
        stack = np.array([e.data for e in elements])
        w, _ = eigh_stack(stack, want_vectors=False)
        if np.min(w) < -VALIDATION_TOL:
            raise ValueError(f"POVM element has eigenvalue {np.min(w):.3e}")
        dev = np.max(np.abs(stack.sum(axis=0) - np.eye(stack.shape[1])))
        if dev > POVM_SUM_TOL:
            raise ValueError(f"POVM elements sum to identity only within {dev:.3e}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def stack(self) -> np.ndarray:
        return np.array([e.data for e in self.elements])


@dataclass(frozen=True)
class Encoding:
    """A joint distribution over ``U x X`` (or ``U x Y x X``), with ``X = {0, 1}``.

    ``probs`` has shape ``(|U|, 2)`` or ``(|U|, |Y|, 2)``.
    """

    probs: np.ndarray
    labels_u: Tuple[Hashable, ...] = ()
    labels_y: Optional[Tuple[Hashable, ...]] = None

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim not in (2, 3) or p.shape[-1] != len(X_LABELS):
            raise ValueError(f"probs must have shape (|U|, 2) or (|U|, |Y|, 2), got {p.shape}")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValueError("probabilities must be finite and non-negative")
        total = p.sum()
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        labels_u = tuple(self.labels_u) if self.labels_u else tuple(range(p.shape[0]))
        if len(labels_u) != p.shape[0] or len(set(labels_u)) != len(labels_u):
            raise ValueError("labels_u must be distinct and match probs.shape[0]")
        labels_y = self.labels_y
        if p.ndim == 3:
            labels_y = tuple(labels_y) if labels_y else tuple(range(p.shape[1]))
            if len(labels_y) != p.shape[1]:
                raise ValueError("labels_y must match probs.shape[1]")
        elif labels_y:
            raise ValueError("labels_y given for an encoding without a Y component")
        else:
            labels_y = None
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "labels_u", labels_u)
        object.__setattr__(self, "labels_y", labels_y)

    @property
    def has_y(self) -> bool:
        return self.probs.ndim == 3

    @property
    def labels_x(self) -> Tuple[int, int]:
        return X_LABELS

    def marginal_u(self) -> np.ndarray:
        return self.probs.reshape(self.probs.shape[0], -1).sum(axis=1)

    @classmethod
    def from_mapping(cls, table: Mapping[tuple, float]) -> "Encoding":
        """Build from ``{(u, x): p}`` or ``{(u, y, x): p}``; missing entries are zero."""
        keys = list(table)
        if not keys:
            raise ValueError("empty probability table")
        arity = {len(k) for k in keys}
        if arity not in ({2}, {3}):
            raise ValueError("keys must all be (u, x) or all be (u, y, x)")
        us = list(dict.fromkeys(k[0] for k in keys))
        if any(k[-1] not in X_LABELS for k in keys):
            raise ValueError(f"x labels must be in {X_LABELS}")
        if arity == {2}:
            p = np.zeros((len(us), 2))
            for (u, x), v in table.items():
                p[us.index(u), x] += v
            return cls(p, tuple(us))
        ys = list(dict.fromkeys(k[1] for k in keys))
        p = np.zeros((len(us), len(ys), 2))
        for (u, y, x), v in table.items():
            p[us.index(u), ys.index(y), x] += v
        return cls(p, tuple(us), tuple(ys))

    def as_mapping(self) -> dict:
        out = {}
        for idx, v in np.ndenumerate(self.probs):
            if self.has_y:
                out[(self.labels_u[idx[0]], self.labels_y[idx[1]], idx[2])] = float(v)
            else:
                out[(self.labels_u[idx[0]], idx[1])] = float(v)
        return out


@dataclass(frozen=True)
class CqState:
    """Label weights ``p(u)`` with one conditional state per label.

    The classical register is implicit in the label index. ``states`` is a
    stack of shape ``(|U|, d, d)``.
    """

    weights: np.ndarray
    states: np.ndarray
    labels: Tuple[Hashable, ...] = ()

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).ravel()
        s = np.array(self.states, dtype=complex)
        if s.ndim != 3 or s.shape[1] != s.shape[2] or s.shape[0] != w.size or w.size == 0:
            raise ValueError(f"incompatible weights {w.shape} and states {s.shape}")
        if np.any(w < 0) or abs(w.sum() - 1.0) > PROB_SUM_TOL:
            raise ValueError("weights must be a probability vector")
        s = (s + np.conj(np.swapaxes(s, 1, 2))) / 2
        traces = np.trace(s, axis1=1, axis2=2).real
        if np.max(np.abs(traces - 1.0)) > VALIDATION_TOL:
            raise InvalidStateError("conditional states must have unit trace")
        ev, _ = eigh_stack(s, want_vectors=False)
        if np.min(ev) < -VALIDATION_TOL:
            raise InvalidStateError(f"conditional state has eigenvalue {np.min(ev):.3e}")
        labels = tuple(self.labels) if self.labels else tuple(range(w.size))
        if len(labels) != w.size:
            raise ValueError("one label per conditional state is required")
        w.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", s)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def conditionals(self) -> Tuple[DensityMatrix, ...]:
        return tuple(DensityMatrix(s) for s in self.states)

    def weighted(self) -> np.ndarray:
        """``p(u) rho^u`` for every label, stacked."""
        return self.weights[:, None, None] * self.states


@dataclass(frozen=True)
class CompleteCqChannel:
    """``d^2`` states on ``C^d`` whose span is the whole operator space."""

    states: Tuple[DensityMatrix, ...]

    def __post_init__(self):
        states = tuple(density(s) for s in self.states)
        if not states:
            raise ValueError("empty state family")
        d = states[0].dim
        if any(s.dim != d for s in states):
            raise ValueError("states must share one dimension")
        if len(states) != d * d:
            raise ValueError(f"need exactly {d * d} states on C^{d}, got {len(states)}")
        rank = span_dimension(states)
        if rank != d * d:
            raise ValueError(f"states span only {rank} of {d * d} operator dimensions")
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def stack(self) -> np.ndarray:
        return np.array([s.data for s in self.states])


def span_dimension(states: Sequence) -> int:
    """Rank of the Gram matrix ``tr(tau_y tau_y')`` (singular values above 1e-8)."""
    stack = np.array([as_array(s) for s in states])
    if stack.ndim != 3:
        raise ValueError("expected a non-empty list of square matrices")
    flat = stack.reshape(stack.shape[0], -1)
    gram = (flat.conj() @ flat.T).real
    sv = np.linalg.svd(gram, compute_uv=False)
    if sv[0] > 0:
        sv = sv / max(sv[0], 1.0)
    return int(np.sum(sv > SPAN_TOL))


def standard_complete_cq(d: int) -> CompleteCqChannel:
    """Computational projectors plus the two pairwise superpositions per pair j < k."""
    if d < 1:
        raise ValueError("dimension must be positive")
    states = []
    for j in range(d):
        ket = np.zeros(d, dtype=complex)
        ket[j] = 1
        states.append(DensityMatrix.pure(ket))
    for j in range(d):
        for k in range(j + 1, d):
            for phase in (1, 1j):
                ket = np.zeros(d, dtype=complex)
                ket[j] = 1
                ket[k] = phase
                states.append(DensityMatrix.pure(ket))
    return CompleteCqChannel(tuple(states))


def _pair_arrays(pair) -> Tuple[np.ndarray, np.ndarray]:
    if len(pair) != 2:
        raise ValueError("expected a pair of states")
    r0, r1 = (density(s).data for s in pair)
    if r0.shape != r1.shape:
        raise ValueError(f"pair states have different dimensions {r0.shape[0]} and {r1.shape[0]}")
    return r0, r1


def _assemble(weights, probs_given_u, components, labels):
    keep = weights > 0
    weights = weights[keep]
    weights = weights / weights.sum()
    cond = np.einsum("uk,kab->uab", probs_given_u[keep], components)
    return CqState(weights, cond, tuple(l for l, k in zip(labels, keep) if k))


def build_cq_state(enc: Encoding, pair) -> CqState:
    """Form ``p(u)`` and ``rho^u = sum_x p(x|u) rho^x``, dropping zero-weight labels."""
    if enc.has_y:
        raise ValueError("encoding has a Y component; use build_extended_cq_state")
    r0, r1 = _pair_arrays(pair)
    p = enc.probs
    pu = p.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cond = np.where(pu[:, None] > 0, p / pu[:, None], 0.0)
    return _assemble(pu, cond, np.array([r0, r1]), enc.labels_u)


def build_extended_cq_state(enc: Encoding, cq: CompleteCqChannel, pair) -> CqState:
    """Conditionals ``sum_{y,x} p(y,x|u) tau_y (x) rho_x`` on ``R (x) Q``."""
    if not enc.has_y:
        raise ValueError("encoding has no Y component")
    n_y = enc.probs.shape[1]
    if n_y != len(cq.states):
        raise ValueError(f"|Y| = {n_y} does not match the {len(cq.states)} channel states")
    r0, r1 = _pair_arrays(pair)
    taus = cq.stack()
    comps = np.array([[np.kron(t, r) for r in (r0, r1)] for t in taus])
    comps = comps.reshape(n_y * 2, *comps.shape[2:])
    p = enc.probs.reshape(enc.probs.shape[0], -1)
    pu = p.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cond = np.where(pu[:, None] > 0, p / pu[:, None], 0.0)
    return _assemble(pu, cond, comps, enc.labels_u)
