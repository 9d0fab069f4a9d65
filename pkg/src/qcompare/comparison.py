"""Guessing games, trace-norm criteria and channel feasibility for pairs of states."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .linalg import (HermitianMatrix, as_array, eigh_stack, hermitian_basis, partial_trace_array,
                     trace_norm, trace_norm_stack)
from .objects import (CqState, DensityMatrix, Encoding, Povm, build_cq_state, build_extended_cq_state,
                      density, standard_complete_cq)
from .policy import DEFAULT_POLICY, NumericPolicy
from .sampling import indexed_rng, random_encoding
from .sdp import SdpError, SdpProblem, SdpSolution, SdpStatus, check_certificate, solve

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
WITNESS_GAP = 1e-6


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    BORDERLINE = "borderline"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    NO_VIOLATION_FOUND = "no-violation-found"


def _pair(pair) -> Tuple[np.ndarray, np.ndarray]:
    a, b = (density(s).data for s in pair)
    if a.shape != b.shape:
        raise ValueError("states within a pair must share a dimension")
    return a, b


# ---------------------------------------------------------------------------
# guessing probability


def guessing_problem(cq: CqState) -> SdpProblem:
    """``max sum_u p(u) tr(rho^u P^u)`` over POVMs, one PSD block per outcome."""
    d, k = cq.dim, cq.size
    basis = hermitian_basis(d)
    traces = np.trace(basis, axis1=1, axis2=2).real
    stacks = tuple(basis for _ in range(k))
    return SdpProblem((d,) * k, tuple(cq.weighted()), stacks, traces, "maximize")


def _hermitian_psd_part(mats: np.ndarray) -> np.ndarray:
    w, v = eigh_stack(mats)
    w = np.clip(w, 0.0, None)
    return np.einsum("...ij,...j,...kj->...ik", v, w, v.conj())


def guessing_probability(cq: CqState, policy: NumericPolicy = DEFAULT_POLICY) -> Tuple[float, Povm]:
    """Optimal probability of guessing the label of ``cq`` and a POVM achieving it.

    The returned value is a certified upper bound read off the dual SDP
    (shifted to exact dual feasibility); the POVM is the primal solution
    cleaned to an exact measurement and attains it within the duality gap.
    """
    d, k = cq.dim, cq.size
    if k == 1:
        return 1.0, Povm((HermitianMatrix(np.eye(d)),), cq.labels)
    problem = guessing_problem(cq)
    sol = solve(problem, policy)
    if not sol.optimal:
        raise SdpError(sol)
    weighted = cq.weighted()
    y_op = np.einsum("m,mab->ab", sol.y, hermitian_basis(d))
    slack_min, _ = eigh_stack(y_op[None] - weighted, want_vectors=False)
    shift = max(0.0, -float(np.min(slack_min[:, -1])))
    upper = float(np.trace(y_op).real) + d * shift

    elems = _hermitian_psd_part(np.array(sol.X))
    total = elems.sum(axis=0)
    w, v = eigh_stack(total[None])
    t_isqrt = (v[0] / np.sqrt(w[0])) @ v[0].conj().T
    elems = t_isqrt[None] @ elems @ t_isqrt[None]
    elems = (elems + np.conj(np.swapaxes(elems, 1, 2))) / 2
    povm = Povm(tuple(HermitianMatrix(e) for e in elems), cq.labels)
    lower = float(np.einsum("uab,uba->", weighted, elems).real)
    value = min(max(upper, lower, float(np.max(cq.weights))), 1.0)
    if value - lower > 10 * policy.solver_tol * (1 + value):
        raise SdpError(SdpSolution(SdpStatus.BORDERLINE, message=f"POVM value {lower!r} trails bound {value!r}"))
    return value, povm


def hmin(cq: CqState, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Conditional min-entropy ``-log2 P_guess`` in bits."""
    return -math.log2(guessing_probability(cq, policy)[0])


def helstrom_binary(prior0: float, rho0, prior1: float, rho1) -> float:
    """Two-hypothesis guessing probability ``(1 + ||pi0 rho0 - pi1 rho1||_1) / 2``."""
    if prior0 < 0 or prior1 < 0 or abs(prior0 + prior1 - 1.0) > 1e-12:
        raise ValueError("priors must be a probability pair")
    r0, r1 = density(rho0).data, density(rho1).data
    if r0.shape != r1.shape:
        raise ValueError("states must share a dimension")
    return 0.5 * (1.0 + trace_norm(prior0 * r0 - prior1 * r1))


# ---------------------------------------------------------------------------
# trace-norm criterion


@dataclass(frozen=True)
class AuReport:
    """Result of a trace-norm (Alberti-Uhlmann) test.

    ``violation`` is the largest ``(||s0 - t s1||_1 - ||r0 - t r1||_1) / (1 + t)``
    seen over ``t > 0`` (zero when nothing is violated); ``t_witness`` is where.
    """

    verdict: Verdict
    violation: float
    t_witness: Optional[float] = None
    exact: bool = True
    intervals: Tuple[Tuple[float, float], ...] = ()

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "violation": self.violation, "t_witness": self.t_witness,
                "exact": self.exact, "violating_intervals": [list(iv) for iv in self.intervals]}


def _det_poly(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients ``(c0, c1, c2)`` of ``det(a - t b)`` for 2x2 matrices."""
    det_a = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]).real
    det_b = (b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]).real
    cross = (np.trace(a) * np.trace(b) - np.trace(a @ b)).real
    return np.array([det_a, -cross, det_b])


def _poly_eval(c: np.ndarray, t):
    return c[0] + t * (c[1] + t * c[2])


def _positive_roots(c: np.ndarray) -> List[float]:
    coeffs = c[::-1]
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        return []
    coeffs = coeffs / scale
    while coeffs.size > 1 and abs(coeffs[0]) < 1e-15:
        coeffs = coeffs[1:]
    if coeffs.size < 2:
        return []
    roots = np.roots(coeffs)
    return [float(r.real) for r in roots if r.real > 0 and np.isfinite(r.real)
            and abs(r.imag) <= 1e-7 * max(1.0, abs(r.real))]


def _qubit_norm(q: np.ndarray, t):
    # tr(a - t b) = 1 - t for states; ||.||_1 = sqrt(tr^2 + 4 max(0, -det))
    return np.sqrt((1.0 - t) ** 2 + 4.0 * np.maximum(0.0, -_poly_eval(q, t)))


def _maximize_log(f, lo: float, hi: float, samples: int = 48, iters: int = 80) -> Tuple[float, float]:
    """Maximize ``f(t)`` on ``[lo, hi]`` (``0 < lo < hi``): log-grid scan, then golden section."""
    a, b = math.log(lo), math.log(hi)
    grid = np.linspace(a, b, samples)
    vals = np.array([f(math.exp(s)) for s in grid])
    i = int(np.argmax(vals))
    left, right = grid[max(i - 1, 0)], grid[min(i + 1, samples - 1)]
    x1 = right - GOLDEN * (right - left)
    x2 = left + GOLDEN * (right - left)
    f1, f2 = f(math.exp(x1)), f(math.exp(x2))
    for _ in range(iters):
        if right - left < 1e-13 * max(1.0, abs(left)):
            break
        if f1 < f2:
            left, x1, f1 = x1, x2, f2
            x2 = left + GOLDEN * (right - left)
            f2 = f(math.exp(x2))
        else:
            right, x2, f2 = x2, x1, f1
            x1 = right - GOLDEN * (right - left)
            f1 = f(math.exp(x1))
    best_s, best_v = (x1, f1) if f1 >= f2 else (x2, f2)
    if vals[i] > best_v:
        best_s, best_v = grid[i], vals[i]
    return math.exp(best_s), float(best_v)


def _classify(violation: float, policy: NumericPolicy, holds=Verdict.HOLDS) -> Verdict:
    if violation <= policy.validation_tol:
        return holds
    if violation < policy.verdict_margin:
        return Verdict.BORDERLINE
    return Verdict.FAILS


def alberti_uhlmann_qubit(rho0, rho1, sigma0, sigma1, policy: NumericPolicy = DEFAULT_POLICY) -> AuReport:
    """Exact decision of ``||r0 - t r1||_1 >= ||s0 - t s1||_1`` for all real ``t`` (qubits).

    For a 2x2 pencil with trace ``1 - t`` the trace norm is
    ``sqrt((1-t)^2 + 4 max(0, -det))``, so the inequality at ``t`` reduces to
    ``max(0, -det_r(t)) >= max(0, -det_s(t))`` with quadratic determinants.
    Between consecutive positive roots of ``det_r``, ``det_s`` and their
    difference all signs are constant, so one probe per interval decides it.
    """
    r0, r1 = _pair((rho0, rho1))
    s0, s1 = _pair((sigma0, sigma1))
    if r0.shape != (2, 2) or s0.shape != (2, 2):
        raise ValueError("alberti_uhlmann_qubit needs 2x2 states")
    q_r = _det_poly(r0, r1)
    q_s = _det_poly(s0, s1)
    diff = q_r - q_s
    cuts = sorted(set(_positive_roots(q_r) + _positive_roots(q_s) + _positive_roots(diff)))
    edges = [0.0] + cuts + [math.inf]

    def violation(t):
        return float((_qubit_norm(q_s, t) - _qubit_norm(q_r, t)) / (1.0 + t))

    intervals = []
    best_t, best_v = None, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if math.isinf(hi):
            probe = 2.0 * lo + 1.0
        elif lo == 0.0:
            probe = hi / 2.0
        else:
            probe = math.sqrt(lo * hi)
        if not (_poly_eval(q_s, probe) < 0 and _poly_eval(diff, probe) > 0):
            continue
        intervals.append((lo, hi))
        lo_s = lo if lo > 0 else min(probe, 1.0) * 1e-12
        hi_s = hi if not math.isinf(hi) else max(probe, 1.0) * 1e12
        t, v = _maximize_log(violation, lo_s, hi_s)
        if v > best_v:
            best_t, best_v = t, v
    verdict = _classify(best_v, policy)
    return AuReport(verdict, best_v, best_t if verdict is not Verdict.HOLDS else None, True, tuple(intervals))


def au_difference(rho0, rho1, sigma0, sigma1, ts) -> np.ndarray:
    """``||r0 - t r1||_1 - ||s0 - t s1||_1`` on an array of ``t`` values."""
    r0, r1 = _pair((rho0, rho1))
    s0, s1 = _pair((sigma0, sigma1))
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    left = trace_norm_stack(r0[None] - ts[:, None, None] * r1[None])
    right = trace_norm_stack(s0[None] - ts[:, None, None] * s1[None])
    return left - right


def alberti_uhlmann_grid(rho0, rho1, sigma0, sigma1, t_max: float = 1e3, points: int = 512,
                         policy: NumericPolicy = DEFAULT_POLICY) -> AuReport:
    """Screen the trace-norm inequalities on a grid symmetric under ``t -> 1/t``.

    Works in any dimension, but only as a necessary condition:
    ``no-violation-found`` does not imply that a channel exists.
    """
    if t_max <= 1 or points < 3:
        raise ValueError("need t_max > 1 and at least 3 grid points")
    ts = np.exp(np.linspace(-math.log(t_max), math.log(t_max), points))
    viol = -au_difference(rho0, rho1, sigma0, sigma1, ts) / (1.0 + ts)
    i = int(np.argmax(viol))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, points - 1)]

    def f(t):
        return float(-au_difference(rho0, rho1, sigma0, sigma1, [t])[0] / (1.0 + t))

    t_best, v_best = _maximize_log(f, lo, hi, samples=5, iters=60)
    if viol[i] > v_best:
        t_best, v_best = float(ts[i]), float(viol[i])
    v_best = max(v_best, 0.0)
    verdict = Verdict.FAILS if v_best >= policy.verdict_margin else Verdict.NO_VIOLATION_FOUND
    return AuReport(verdict, v_best, t_best if verdict is Verdict.FAILS else None, False)


# ---------------------------------------------------------------------------
# channels


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi operator ``sum_jk |j><k| (x) Phi(|j><k|)`` of a CPTP map, input factor first."""

    mat: np.ndarray
    d_in: int
    d_out: int
    tol: float = 1e-8

    def __post_init__(self):
        j = np.array(as_array(self.mat), dtype=complex)
        n = self.d_in * self.d_out
        if j.shape != (n, n):
            raise ValueError(f"Choi matrix shape {j.shape} does not match dims ({self.d_in}, {self.d_out})")
        j = (j + j.conj().T) / 2
        w, _ = eigh_stack(j[None], want_vectors=False)
        if w[0, -1] < -self.tol:
            raise ValueError(f"Choi matrix is not PSD (min eigenvalue {w[0, -1]:.3e})")
        tp = partial_trace_array(j, (self.d_in, self.d_out), "first")
        dev = float(np.max(np.abs(tp - np.eye(self.d_in))))
        if dev > self.tol:
            raise ValueError(f"map is not trace preserving (deviation {dev:.3e})")
        j.setflags(write=False)
        object.__setattr__(self, "mat", j)

    def apply_array(self, rho: np.ndarray) -> np.ndarray:
        j4 = self.mat.reshape(self.d_in, self.d_out, self.d_in, self.d_out)
        return np.einsum("jk,jakb->ab", rho, j4)

    @classmethod
    def identity(cls, d: int) -> "ChoiMatrix":
        omega = np.eye(d).reshape(-1)
        return cls(np.outer(omega, omega), d, d)

    @classmethod
    def depolarizing(cls, d_in: int, d_out: int) -> "ChoiMatrix":
        return cls(np.eye(d_in * d_out) / d_out, d_in, d_out)

    @classmethod
    def replacement(cls, d_in: int, state) -> "ChoiMatrix":
        tau = density(state).data
        return cls(np.kron(np.eye(d_in), tau), d_in, tau.shape[0])

    def compose(self, after: "ChoiMatrix") -> "ChoiMatrix":
        """Choi matrix of ``after o self``."""
        if after.d_in != self.d_out:
            raise ValueError("dimension mismatch in composition")
        out = np.zeros((self.d_in * after.d_out,) * 2, dtype=complex)
        for j in range(self.d_in):
            for k in range(self.d_in):
                e = np.zeros((self.d_in, self.d_in))
                e[j, k] = 1
                blk = after.apply_array(self.apply_array(e))
                out[j * after.d_out:(j + 1) * after.d_out, k * after.d_out:(k + 1) * after.d_out] = blk
        return ChoiMatrix(out, self.d_in, after.d_out, tol=max(self.tol, after.tol))


def apply_choi(choi: ChoiMatrix, rho) -> DensityMatrix:
    """``Phi(rho) = tr_in[(rho^T (x) 1) J]``."""
    r = density(rho).data
    if r.shape[0] != choi.d_in:
        raise ValueError(f"state dimension {r.shape[0]} does not match channel input {choi.d_in}")
    return DensityMatrix(choi.apply_array(r), tol=max(1e-9, 10 * choi.tol))


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Whether a CPTP map sends ``rho_i`` to ``sigma_i`` for both ``i``.

    ``margin`` is a lower bound (from the dual of the residual program) on
    ``min_Phi sum_i ||Phi(rho_i) - sigma_i||_1``; it is zero for feasible
    instances. ``residual`` is that sum for the returned Choi matrix.
    """

    verdict: Verdict
    choi: Optional[ChoiMatrix] = None
    certificate: Optional[np.ndarray] = None
    margin: float = 0.0
    residual: Optional[float] = None
    problem: Optional[SdpProblem] = None
    solutions: Tuple[Tuple[SdpProblem, SdpSolution], ...] = ()
    notes: Tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "margin": self.margin,
            "residual": self.residual,
            "has_choi": self.choi is not None,
            "certificate": None if self.certificate is None else [float(v) for v in self.certificate],
            "notes": list(self.notes),
        }


def _feasibility_rows(r0, r1, s0, s1):
    d_in, d_out = r0.shape[0], s0.shape[0]
    b_in, b_out = hermitian_basis(d_in), hermitian_basis(d_out)
    eye_out = np.eye(d_out)
    rows = [np.kron(b, eye_out) for b in b_in]
    rhs = [np.trace(b).real for b in b_in]
    for r, s in ((r0, s0), (r1, s1)):
        rt = r.T
        for b in b_out:
            rows.append(np.kron(rt, b))
            rhs.append(np.trace(s @ b).real)
    return np.array(rows), np.array(rhs), b_out


def feasibility_problem(rho0, rho1, sigma0, sigma1) -> SdpProblem:
    r0, r1 = _pair((rho0, rho1))
    s0, s1 = _pair((sigma0, sigma1))
    rows, rhs, _ = _feasibility_rows(r0, r1, s0, s1)
    n = rows.shape[1]
    return SdpProblem((n,), (None,), (rows,), rhs, "minimize")


def residual_problem(rho0, rho1, sigma0, sigma1) -> SdpProblem:
    """``min sum_i ||Phi(rho_i) - sigma_i||_1`` over CPTP ``Phi`` as an SDP.

    Blocks: the Choi matrix, then ``P_0, N_0, P_1, N_1`` with
    ``Phi(rho_i) - sigma_i = P_i - N_i``. Its constraint rows restricted to
    the Choi block coincide with :func:`feasibility_problem`, so a dual
    solution is directly a Farkas ray for the feasibility program.
    """
    r0, r1 = _pair((rho0, rho1))
    s0, s1 = _pair((sigma0, sigma1))
    rows, rhs, b_out = _feasibility_rows(r0, r1, s0, s1)
    m, n, _ = rows.shape
    d_in, d_out = r0.shape[0], s0.shape[0]
    n_tp, n_out = d_in * d_in, d_out * d_out
    slack = [np.zeros((m, d_out, d_out), dtype=complex) for _ in range(4)]
    for i in range(2):
        sl = slice(n_tp + i * n_out, n_tp + (i + 1) * n_out)
        slack[2 * i][sl] = -b_out
        slack[2 * i + 1][sl] = b_out
    eye = np.eye(d_out)
    return SdpProblem((n,) + (d_out,) * 4, (None, eye, eye, eye, eye), (rows, *slack), rhs, "minimize")


def _polish_choi(j: np.ndarray, problem: SdpProblem) -> np.ndarray:
    """Least-norm correction of ``j`` onto the affine constraints."""
    rows = problem.constraint_blocks[0]
    flat = rows.reshape(rows.shape[0], -1).conj()
    resid = problem.rhs - (flat @ j.reshape(-1)).real
    # rows are Hermitian, so tr(A X) = <conj(A), X> over flattened entries
    corr, *_ = np.linalg.lstsq(np.concatenate([flat.real, -flat.imag], axis=1), resid, rcond=1e-12)
    n = j.shape[0]
    delta = (corr[: n * n] + 1j * corr[n * n:]).reshape(n, n)
    delta = (delta + delta.conj().T) / 2
    return j + delta


def _choi_residual(j: np.ndarray, pairs, d_in, d_out) -> float:
    j4 = j.reshape(d_in, d_out, d_in, d_out)
    total = 0.0
    for r, s in pairs:
        total += float(trace_norm_stack((np.einsum("jk,jakb->ab", r, j4) - s)[None])[0])
    return total


def channel_feasibility(rho0, rho1, sigma0, sigma1, policy: NumericPolicy = DEFAULT_POLICY,
                        reproduce_tol: float = 1e-7) -> FeasibilityVerdict:
    """Decide whether a CPTP map sends ``rho_i`` to ``sigma_i`` (``i = 0, 1``).

    A pure feasibility SDP over Choi matrices is solved first. When it does
    not come back feasible, the residual program supplies the margin and,
    when the instance is clearly infeasible, a Farkas ray as well.
    """
    r0, r1 = _pair((rho0, rho1))
    s0, s1 = _pair((sigma0, sigma1))
    d_in, d_out = r0.shape[0], s0.shape[0]
    pairs = ((r0, s0), (r1, s1))
    feas = feasibility_problem(r0, r1, s0, s1)
    first = solve(feas, policy)
    audit = [(feas, first)]
    notes = [f"feasibility sdp: {first.status.value} after {first.iterations} iterations"]

    def try_choi(j):
        candidates = [j, _polish_choi(j, feas)]
        best = None
        for cand in candidates:
            try:
                choi = ChoiMatrix(cand, d_in, d_out)
            except ValueError:
                continue
            res = _choi_residual(choi.mat, pairs, d_in, d_out)
            if best is None or res < best[1]:
                best = (choi, res)
        return best

    if first.optimal:
        got = try_choi(first.X[0])
        if got is not None and got[1] <= reproduce_tol:
            return FeasibilityVerdict(Verdict.FEASIBLE, choi=got[0], margin=0.0, residual=got[1],
                                      problem=feas, solutions=tuple(audit), notes=tuple(notes))
        notes.append("feasible point did not reproduce targets to tolerance")

    resid_problem = residual_problem(r0, r1, s0, s1)
    second = solve(resid_problem, policy)
    audit.append((resid_problem, second))
    notes.append(f"residual sdp: {second.status.value} after {second.iterations} iterations")
    if not second.optimal:
        margin = first.margin if first.status is SdpStatus.INFEASIBLE else 0.0
        return FeasibilityVerdict(Verdict.BORDERLINE, margin=float(margin), problem=feas,
                                  solutions=tuple(audit), notes=tuple(notes))
    margin = max(0.0, second.dual_objective)
    notes.append(f"min total trace-norm residual in [{second.dual_objective:.3e}, {second.primal_objective:.3e}]")

    if second.primal_objective <= reproduce_tol:
        got = try_choi(second.X[0])
        if got is not None and got[1] <= reproduce_tol:
            return FeasibilityVerdict(Verdict.FEASIBLE, choi=got[0], margin=0.0, residual=got[1],
                                      problem=feas, solutions=tuple(audit), notes=tuple(notes))

    if margin >= policy.verdict_margin:
        certs = []
        if first.status is SdpStatus.INFEASIBLE:
            certs.append(first.certificate)
        y = second.y / np.linalg.norm(second.y)
        certs.append(y)
        for cert in certs:
            claim = SdpSolution(SdpStatus.INFEASIBLE, certificate=cert, margin=float(feas.rhs @ cert))
            if check_certificate(feas, claim, policy):
                audit.append((feas, claim))
                return FeasibilityVerdict(Verdict.INFEASIBLE, certificate=cert, margin=margin, problem=feas,
                                          solutions=tuple(audit), notes=tuple(notes))
        notes.append("no Farkas ray passed verification")
    return FeasibilityVerdict(Verdict.BORDERLINE, margin=margin, problem=feas, solutions=tuple(audit),
                              notes=tuple(notes))


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WitnessReport:
    """An encoding on which the source pair is worse at guessing than the target pair.

    ``gap`` is ``P_guess(target) - P_guess(source)``; a witness is only
    claimed when it exceeds ``1e-6``.
    """

    witness_found: bool
    gap: float
    encoding: Optional[Encoding] = None
    uses_r: bool = False
    method: str = ""
    p_guess_source: Optional[float] = None
    p_guess_target: Optional[float] = None
    tried: int = 0

    def as_dict(self) -> dict:
        enc = None
        if self.encoding is not None:
            enc = {"shape": list(self.encoding.probs.shape), "probs": self.encoding.probs.ravel().tolist()}
        return {"witness_found": self.witness_found, "gap": self.gap, "uses_r": self.uses_r,
                "method": self.method, "p_guess_source": self.p_guess_source,
                "p_guess_target": self.p_guess_target, "encoding": enc, "tried": self.tried}


def binary_encoding_from_t(t: float) -> Encoding:
    """Two labels with ``p(a,0) = 1/(1+t)``, ``p(b,1) = t/(1+t)``.

    Guessing ``U`` then amounts to the two-hypothesis test between
    ``rho_0`` and ``t rho_1``.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    s = 1.0 / (1.0 + t)
    return Encoding(np.array([[s, 0.0], [0.0, 1.0 - s]]), ("a", "b"))


def guessing_gap(source_pair, target_pair, enc: Encoding, policy: NumericPolicy = DEFAULT_POLICY,
                 cq_channel=None) -> Tuple[float, float, float]:
    """``(gap, P_source, P_target)`` for one encoding, with the R register if ``enc`` has Y."""
    if enc.has_y:
        src = build_extended_cq_state(enc, cq_channel, source_pair)
        tgt = build_extended_cq_state(enc, cq_channel, target_pair)
    else:
        src = build_cq_state(enc, source_pair)
        tgt = build_cq_state(enc, target_pair)
    p_src = guessing_probability(src, policy)[0]
    p_tgt = guessing_probability(tgt, policy)[0]
    return p_tgt - p_src, p_src, p_tgt


def extract_witness(rho_pair, sigma_pair, verdict: FeasibilityVerdict, policy: NumericPolicy = DEFAULT_POLICY,
                    seed: int = 0, restarts: int = 24, refine_rounds: int = 2) -> WitnessReport:
    """Search for an encoding on which ``rho_pair`` guesses worse than ``sigma_pair``.

    Tried in order: the exact qubit trace-norm witness (or the grid witness in
    higher dimension), a two-label test read off the Farkas ray, then seeded
    random encodings (two labels, and ``d'^2`` labels with an auxiliary
    register when ``d' > 1``) with a short local refinement. Outside qubits
    this is a heuristic and may come back empty.
    """
    if verdict.verdict is not Verdict.INFEASIBLE:
        raise ValueError("extract_witness needs an infeasible verdict")
    r0, r1 = _pair(rho_pair)
    s0, s1 = _pair(sigma_pair)
    src, tgt = (r0, r1), (s0, s1)
    d_out = s0.shape[0]
    best = {"gap": -math.inf}
    tried = 0

    def consider(enc, method, cq_channel=None):
        nonlocal tried
        tried += 1
        try:
            gap, p_src, p_tgt = guessing_gap(src, tgt, enc, policy, cq_channel)
        except SdpError:
            return
        if gap > best["gap"]:
            best.update(gap=gap, enc=enc, method=method, p_src=p_src, p_tgt=p_tgt, r=cq_channel is not None)

    def done():
        return best["gap"] > WITNESS_GAP

    if r0.shape == (2, 2) and s0.shape == (2, 2):
        au = alberti_uhlmann_qubit(r0, r1, s0, s1, policy)
        if au.t_witness is not None:
            consider(binary_encoding_from_t(au.t_witness), "qubit trace-norm witness")
    if not done():
        au = alberti_uhlmann_grid(r0, r1, s0, s1, policy=policy)
        if au.t_witness is not None:
            consider(binary_encoding_from_t(au.t_witness), "grid trace-norm witness")
    if not done() and verdict.certificate is not None:
        for t in _certificate_t_values(verdict.certificate, r0.shape[0], d_out):
            consider(binary_encoding_from_t(t), "certificate-aligned test")
    if not done():
        cq_channel = standard_complete_cq(d_out) if d_out > 1 else None
        for i in range(restarts):
            rng = indexed_rng(seed, i, stream=7)
            consider(random_encoding(2, rng), "random two-label encoding")
            if cq_channel is not None:
                consider(random_encoding(d_out * d_out, rng, y_size=d_out * d_out),
                         "random encoding with auxiliary register", cq_channel)
            if done():
                break
        for rnd in range(refine_rounds if not done() and "enc" in best else 0):
            base = best["enc"]
            cq_ch = cq_channel if best["r"] else None
            for i in range(restarts // 2):
                rng = indexed_rng(seed, i, stream=100 + rnd)
                noise = rng.dirichlet(np.ones(base.probs.size)).reshape(base.probs.shape)
                mix = 0.25 / (rnd + 1)
                p = (1 - mix) * base.probs + mix * noise
                consider(Encoding(p / p.sum(), base.labels_u, base.labels_y), "refined random encoding", cq_ch)
    if "enc" not in best:
        return WitnessReport(False, 0.0, tried=tried, method="no encoding evaluated")
    return WitnessReport(best["gap"] > WITNESS_GAP, float(best["gap"]), best["enc"], best["r"], best["method"],
                         best["p_src"], best["p_tgt"], tried)


def _certificate_t_values(cert: np.ndarray, d_in: int, d_out: int) -> List[float]:
    """Ratios ``t`` with ``Z_1 ~ -t Z_0`` from the image parts of a Farkas ray."""
    n_tp, n_out = d_in * d_in, d_out * d_out
    z0 = cert[n_tp:n_tp + n_out]
    z1 = cert[n_tp + n_out:n_tp + 2 * n_out]
    out = []
    den = float(z0 @ z0)
    if den > 0:
        t = -float(z0 @ z1) / den
        if t > 0:
            out.append(t)
    den = float(z1 @ z1)
    if den > 0:
        t = -den / float(z0 @ z1) if float(z0 @ z1) != 0 else -1.0
        if t > 0:
            out.append(t)
    return out
