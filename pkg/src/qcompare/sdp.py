"""A small primal-dual interior-point solver for semidefinite programs.

Problems are posed over block-diagonal complex Hermitian variables::

    minimize (or maximize)  sum_k tr(C_k X_k)
    subject to              sum_k tr(A_ik X_k) = b_i,   X_k >= 0.

The dual (for minimization) is ``max b.y  s.t.  C - sum_i y_i A_i >= 0``.

Internally each Hermitian block of size n is embedded as a real symmetric
block of size 2n and the problem is solved through the homogeneous
self-dual embedding, which yields either an optimal pair or a Farkas-type
infeasibility ray without a separate phase-I. Directions are HKM with a
Mehrotra predictor-corrector. Solves are deterministic: there is no
randomness anywhere in the iteration.
"""
from __future__ import annotations

import contextlib
import contextvars
import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .linalg import eigh_stack
from .policy import DEFAULT_POLICY, NumericPolicy


class SdpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    BORDERLINE = "borderline"
    ERROR = "error"


class SdpError(RuntimeError):
    """Raised by callers that need an optimal solution and did not get one."""

    def __init__(self, solution: "SdpSolution"):
        super().__init__(f"SDP solve ended with status {solution.status.value}: {solution.message}")
        self.solution = solution


def _herm(a: np.ndarray) -> np.ndarray:
    return (a + np.conj(np.swapaxes(a, -1, -2))) / 2


@dataclass(frozen=True)
class SdpProblem:
    """Standard-form SDP over Hermitian blocks.

    :param block_dims: size of each Hermitian block.
    :param objective: one ``(n_k, n_k)`` matrix per block.
    :param constraint_blocks: one ``(m, n_k, n_k)`` stack per block; slice
        ``[i]`` is the block-``k`` part of constraint ``i``.
    :param rhs: the ``m`` right-hand sides.
    :param sense: ``"minimize"`` or ``"maximize"``.
    """

    block_dims: Tuple[int, ...]
    objective: Tuple[np.ndarray, ...]
    constraint_blocks: Tuple[np.ndarray, ...]
    rhs: np.ndarray
    sense: str = "minimize"

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims or any(n < 1 for n in dims):
            raise ValueError("need at least one block, each of positive size")
        if self.sense not in ("minimize", "maximize"):
            raise ValueError(f"sense must be 'minimize' or 'maximize', got {self.sense!r}")
        rhs = np.array(self.rhs, dtype=float).ravel()
        m = rhs.size
        obj = []
        for n, c in zip(dims, self.objective):
            c = np.zeros((n, n), dtype=complex) if c is None else np.array(c, dtype=complex)
            if c.shape != (n, n):
                raise ValueError(f"objective block has shape {c.shape}, expected {(n, n)}")
            obj.append(_herm(c))
        if len(obj) != len(dims):
            raise ValueError("one objective block per variable block is required")
        cons = []
        for n, a in zip(dims, self.constraint_blocks):
            a = np.zeros((m, n, n), dtype=complex) if a is None else np.array(a, dtype=complex)
            if a.shape != (m, n, n):
                raise ValueError(f"constraint stack has shape {a.shape}, expected {(m, n, n)}")
            cons.append(_herm(a))
        if len(cons) != len(dims):
            raise ValueError("one constraint stack per variable block is required")
        for arr in obj + cons + [rhs]:
            arr.setflags(write=False)
        object.__setattr__(self, "block_dims", dims)
        object.__setattr__(self, "objective", tuple(obj))
        object.__setattr__(self, "constraint_blocks", tuple(cons))
        object.__setattr__(self, "rhs", rhs)

    @classmethod
    def from_constraints(cls, block_dims, objective, constraints, sense="minimize") -> "SdpProblem":
        """Build from a list of ``(blocks, b)`` pairs; ``None`` blocks are zero."""
        dims = tuple(block_dims)
        m = len(constraints)
        stacks = [np.zeros((m, n, n), dtype=complex) for n in dims]
        rhs = np.zeros(m)
        for i, (blocks, b) in enumerate(constraints):
            if len(blocks) != len(dims):
                raise ValueError(f"constraint {i} has {len(blocks)} blocks, expected {len(dims)}")
            for k, blk in enumerate(blocks):
                if blk is not None:
                    stacks[k][i] = blk
            rhs[i] = b
        if objective is None:
            objective = [None] * len(dims)
        return cls(dims, tuple(objective), tuple(stacks), rhs, sense)

    @property
    def num_constraints(self) -> int:
        return self.rhs.size

    def apply(self, xs: Sequence[np.ndarray]) -> np.ndarray:
        """The constraint map ``X -> (sum_k tr(A_ik X_k))_i``."""
        out = np.zeros(self.num_constraints)
        for a, x in zip(self.constraint_blocks, xs):
            out += np.einsum("mab,ba->m", a, x).real
        return out

    def adjoint(self, y: np.ndarray) -> Tuple[np.ndarray, ...]:
        """``sum_i y_i A_i`` blockwise."""
        return tuple(np.einsum("m,mab->ab", y, a) for a in self.constraint_blocks)

    def objective_value(self, xs: Sequence[np.ndarray]) -> float:
        return float(sum(np.einsum("ab,ba->", c, x).real for c, x in zip(self.objective, xs)))

    def dual_slack(self, y: np.ndarray) -> Tuple[np.ndarray, ...]:
        """``C - A^*(y)`` for minimization, ``A^*(y) - C`` for maximization."""
        ay = self.adjoint(y)
        if self.sense == "minimize":
            return tuple(c - t for c, t in zip(self.objective, ay))
        return tuple(t - c for c, t in zip(self.objective, ay))


@dataclass(frozen=True)
class SdpSolution:
    """Outcome of :func:`solve`.

    For ``optimal``, ``X``/``y``/``S`` are a primal-dual pair. For
    ``infeasible``, ``certificate`` is a unit-norm ray ``y`` with
    ``sum_i y_i A_i <= 0`` and ``b.y > 0``; ``margin`` is ``b.y``.
    """

    status: SdpStatus
    X: Optional[Tuple[np.ndarray, ...]] = None
    y: Optional[np.ndarray] = None
    S: Optional[Tuple[np.ndarray, ...]] = None
    primal_objective: float = float("nan")
    dual_objective: float = float("nan")
    gap: float = float("nan")
    certificate: Optional[np.ndarray] = None
    margin: float = float("nan")
    iterations: int = 0
    residuals: dict = field(default_factory=dict)
    message: str = ""

    @property
    def optimal(self) -> bool:
        return self.status is SdpStatus.OPTIMAL


# ---------------------------------------------------------------------------
# real embedding


def _embed(h: np.ndarray) -> np.ndarray:
    """``H -> [[Re H, -Im H], [Im H, Re H]]`` on the last two axes."""
    re, im = h.real, h.imag
    top = np.concatenate([re, -im], axis=-1)
    bot = np.concatenate([im, re], axis=-1)
    return np.concatenate([top, bot], axis=-2)


def _unembed(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1] // 2
    re = (x[..., :n, :n] + x[..., n:, n:]) / 2
    im = (x[..., n:, :n] - x[..., :n, n:]) / 2
    return re + 1j * im


class _Blocks:
    """Real symmetric block data grouped by block size for batched numpy calls."""

    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(sizes)
        groups = {}
        for k, n in enumerate(self.sizes):
            groups.setdefault(n, []).append(k)
        self.groups = [(n, idx) for n, idx in sorted(groups.items())]
        self.nu = sum(self.sizes)

    def split(self, blocks: Sequence[np.ndarray]):
        return [np.array([blocks[k] for k in idx]) for _, idx in self.groups]

    def split_stack(self, stacks: Sequence[np.ndarray]):
        # stacks[k] has shape (m, n, n); result per group (m, count, n, n)
        return [np.stack([stacks[k] for k in idx], axis=1) for _, idx in self.groups]

    def merge(self, grouped):
        out = [None] * len(self.sizes)
        for (n, idx), g in zip(self.groups, grouped):
            for j, k in enumerate(idx):
                out[k] = g[j]
        return out

    def identity(self):
        return [np.broadcast_to(np.eye(n), (len(idx), n, n)).copy() for n, idx in self.groups]


def _inner(us, vs) -> float:
    return float(sum(np.sum(u * v) for u, v in zip(us, vs)))


def _max_step(xs, dxs) -> float:
    """Largest alpha with ``X + alpha dX`` PSD, blockwise via Cholesky."""
    alpha = np.inf
    for x, dx in zip(xs, dxs):
        lower = np.linalg.cholesky(x)
        linv = np.linalg.inv(lower)
        t = linv @ dx @ np.swapaxes(linv, -1, -2)
        lam = np.linalg.eigvalsh((t + np.swapaxes(t, -1, -2)) / 2)[..., 0]
        lam_min = float(np.min(lam))
        if lam_min < 0:
            alpha = min(alpha, -1.0 / lam_min)
    return alpha


class _Hsde:
    """Interior-point iteration on the homogeneous self-dual embedding."""

    def __init__(self, blocks: _Blocks, a_groups, c_groups, b, policy: NumericPolicy):
        self.blocks = blocks
        self.a = a_groups
        self.c = c_groups
        self.b = b
        self.m = b.size
        self.policy = policy

    def op(self, xs):
        out = np.zeros(self.m)
        for a, x in zip(self.a, xs):
            out += np.einsum("mkab,kab->m", a, x)
        return out

    def adj(self, y):
        return [np.einsum("m,mkab->kab", y, a) for a in self.a]

    @staticmethod
    def w_apply(xs, sinvs, vs):
        out = []
        for x, si, v in zip(xs, sinvs, vs):
            t = x @ v @ si
            out.append((t + np.swapaxes(t, -1, -2)) / 2)
        return out

    def schur(self, xs, sinvs):
        mat = np.zeros((self.m, self.m))
        for a, x, si in zip(self.a, xs, sinvs):
            t = x[None] @ a @ si[None]
            mat += np.einsum("ikab,jkba->ij", a, t)
        return (mat + mat.T) / 2

    def run(self):
        pol = self.policy
        b, c = self.b, self.c
        xs = self.blocks.identity()
        ss = self.blocks.identity()
        y = np.zeros(self.m)
        tau = kappa = 1.0
        nu = self.blocks.nu
        target = pol.solver_tol * 0.05
        bnorm = 1.0 + np.linalg.norm(b)
        cnorm = 1.0 + np.sqrt(_inner(c, c))
        self.history = []
        status = None
        it = 0
        stalls = 0
        for it in range(1, pol.max_iter + 1):
            rp = self.op(xs) - b * tau
            aty = self.adj(y)
            rd = [-t - s + ci * tau for t, s, ci in zip(aty, ss, c)]
            cx = _inner(c, xs)
            by = float(b @ y)
            rg = by - cx - kappa
            mu = (_inner(xs, ss) + tau * kappa) / (nu + 1)

            pres = np.linalg.norm(rp) / tau / bnorm
            dres = np.sqrt(_inner(rd, rd)) / tau / cnorm
            pobj, dobj = cx / tau, by / tau
            gap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
            self.state = (xs, y, ss, tau, kappa)
            self.history.append((pres, dres, gap, tau, kappa, mu))
            if max(pres, dres, gap) <= target:
                status = "optimal"
                break
            if by > 0:
                ray_res = np.sqrt(_inner([t + s for t, s in zip(aty, ss)], [t + s for t, s in zip(aty, ss)])) / by
                if ray_res <= target * 1e-1 and tau / kappa < 1e-6:
                    status = "primal_infeasible"
                    break
            if cx < 0:
                ray_res = np.linalg.norm(self.op(xs)) / -cx
                if ray_res <= target * 1e-1 and tau / kappa < 1e-6:
                    status = "dual_infeasible"
                    break
            if mu < 1e-300:
                status = "stalled"
                break

            try:
                sinvs = [np.linalg.inv(s) for s in ss]
                sinvs = [(t + np.swapaxes(t, -1, -2)) / 2 for t in sinvs]
                mmat = self.schur(xs, sinvs)
                if self.m:
                    reg = 1e-14 * max(1.0, np.max(np.abs(np.diag(mmat))))
                    chol_m = np.linalg.cholesky(mmat + reg * np.eye(self.m))
                else:
                    chol_m = None
            except np.linalg.LinAlgError:
                status = "stalled"
                break

            def msolve(r):
                if chol_m is None:
                    return np.zeros(0)
                z = np.linalg.solve(chol_m, r)
                return np.linalg.solve(chol_m.T, z)

            wc = self.w_apply(xs, sinvs, c)
            u = self.op(wc)
            cwc = _inner(c, wc)
            v2 = msolve(u + b)
            den_base = float((b - u) @ v2) + cwc

            def direction(eta, rcs, rtk):
                wrd = self.w_apply(xs, sinvs, rd)
                r1 = -eta * rp - self.op(rcs) + eta * self.op(wrd)
                r2 = -eta * rg + _inner(c, rcs) - eta * _inner(c, wrd) + rtk / tau
                v1 = msolve(r1)
                dtau = (r2 - float((b - u) @ v1)) / (den_base + kappa / tau)
                dy = v1 + v2 * dtau
                atdy = self.adj(dy)
                dss = [eta * r - t + ci * dtau for r, t, ci in zip(rd, atdy, c)]
                wds = self.w_apply(xs, sinvs, dss)
                dxs = [rc - w for rc, w in zip(rcs, wds)]
                dkappa = (rtk - kappa * dtau) / tau
                return dxs, dy, dss, dtau, dkappa

            def step_to_boundary(dxs, dss, dtau, dkappa):
                alpha = min(_max_step(xs, dxs), _max_step(ss, dss))
                if dtau < 0:
                    alpha = min(alpha, -tau / dtau)
                if dkappa < 0:
                    alpha = min(alpha, -kappa / dkappa)
                return alpha

            # predictor
            aff = direction(1.0, [-x for x in xs], -tau * kappa)
            try:
                alpha_aff = min(1.0, step_to_boundary(aff[0], aff[2], aff[3], aff[4]))
            except np.linalg.LinAlgError:
                status = "stalled"
                break
            mu_aff = (_inner([x + alpha_aff * dx for x, dx in zip(xs, aff[0])],
                             [s + alpha_aff * ds for s, ds in zip(ss, aff[2])])
                      + (tau + alpha_aff * aff[3]) * (kappa + alpha_aff * aff[4])) / (nu + 1)
            sigma = float(np.clip((mu_aff / mu) ** 3, 0.0, 1.0))

            # corrector
            rcs = []
            for x, si, dx, ds in zip(xs, sinvs, aff[0], aff[2]):
                t = dx @ ds @ si
                rcs.append(sigma * mu * si - x - (t + np.swapaxes(t, -1, -2)) / 2)
            rtk = sigma * mu - tau * kappa - aff[3] * aff[4]
            dxs, dy, dss, dtau, dkappa = direction(1.0 - sigma, rcs, rtk)
            try:
                alpha = min(1.0, pol.step_fraction * step_to_boundary(dxs, dss, dtau, dkappa))
            except np.linalg.LinAlgError:
                status = "stalled"
                break
            if alpha < 1e-12:
                stalls += 1
                if stalls > 3:
                    status = "stalled"
                    break
            xs = [x + alpha * d for x, d in zip(xs, dxs)]
            xs = [(x + np.swapaxes(x, -1, -2)) / 2 for x in xs]
            ss = [s + alpha * d for s, d in zip(ss, dss)]
            ss = [(s + np.swapaxes(s, -1, -2)) / 2 for s in ss]
            y = y + alpha * dy
            tau += alpha * dtau
            kappa += alpha * dkappa
        else:
            status = "iteration_cap"
        self.state = (xs, y, ss, tau, kappa)
        return status, it


def _preprocess(a_flat: np.ndarray, b: np.ndarray, tol: float):
    """Drop dependent constraint rows; detect inconsistent right-hand sides.

    Returns ``(transform, a_red, b_red, inconsistency_ray)`` where original
    dual vectors are ``transform @ y_red``.
    """
    m = b.size
    if m == 0:
        return np.zeros((0, 0)), a_flat, b, None
    u, s, vt = np.linalg.svd(a_flat, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > 1e-9 * max(smax, 1e-300))) if smax > 0 else 0
    u_r, u_null = u[:, :rank], u[:, rank:]
    z = u_null.T @ b
    if z.size and np.linalg.norm(z) > tol * (1.0 + np.linalg.norm(b)):
        ray = u_null @ z
        return None, None, None, ray / np.linalg.norm(ray)
    transform = u_r / s[:rank]
    a_red = vt[:rank]
    b_red = (u_r.T @ b) / s[:rank]
    return transform, a_red, b_red, None


def solve(problem: SdpProblem, policy: NumericPolicy = DEFAULT_POLICY) -> SdpSolution:
    """Solve ``problem``; see :class:`SdpSolution` for the possible outcomes."""
    tol = policy.solver_tol
    sign = 1.0 if problem.sense == "minimize" else -1.0
    is_real = all(np.all(a.imag == 0) for a in problem.constraint_blocks) and \
        all(np.all(c.imag == 0) for c in problem.objective)

    if is_real:
        sizes = problem.block_dims
        a_real = [a.real for a in problem.constraint_blocks]
        c_real = [sign * c.real for c in problem.objective]
    else:
        sizes = tuple(2 * n for n in problem.block_dims)
        a_real = [_embed(a) / 2 for a in problem.constraint_blocks]
        c_real = [sign * _embed(c) / 2 for c in problem.objective]

    m = problem.num_constraints
    a_flat = np.concatenate([a.reshape(m, -1) for a in a_real], axis=1) if m else np.zeros((0, 1))
    transform, a_red, b_red, ray = _preprocess(a_flat, problem.rhs, tol)
    if ray is not None:
        sol = SdpSolution(SdpStatus.INFEASIBLE, certificate=ray, margin=float(problem.rhs @ ray),
                          message="constraint right-hand side is inconsistent with the constraint span")
        return _gate(problem, sol, policy)

    r = b_red.size
    offsets = np.cumsum([0] + [n * n for n in sizes])
    a_blocks = [a_red[:, offsets[k]:offsets[k + 1]].reshape(r, n, n) for k, n in enumerate(sizes)]
    a_blocks = [(a + np.swapaxes(a, -1, -2)) / 2 for a in a_blocks]

    beta = max(1.0, float(np.linalg.norm(b_red)))
    gamma = max(1.0, float(np.sqrt(sum(np.sum(c * c) for c in c_real))))
    blocks = _Blocks(sizes)
    engine = _Hsde(blocks, blocks.split_stack(a_blocks), blocks.split([c / gamma for c in c_real]),
                   b_red / beta, policy)
    status, iters = engine.run()
    xs, y_red, ss, tau, kappa = engine.state
    xs = blocks.merge(xs)
    ss = blocks.merge(ss)
    pres, dres, gap, *_ = engine.history[-1]
    residuals = {"primal": float(pres), "dual": float(dres), "gap": float(gap),
                 "tau": float(tau), "kappa": float(kappa)}

    def to_hermitian(blks):
        return tuple(blk.astype(complex) if is_real else _unembed(blk) for blk in blks)

    if status == "primal_infeasible" or (status != "optimal" and b_red @ y_red > 0 and tau < 1e-8 * kappa):
        y_full = transform @ y_red
        nrm = np.linalg.norm(y_full)
        cert = y_full / nrm if nrm > 0 else y_full
        sol = SdpSolution(SdpStatus.INFEASIBLE, certificate=cert, margin=float(problem.rhs @ cert),
                          iterations=iters, residuals=residuals,
                          message="primal infeasible: Farkas ray from the self-dual embedding")
        return _gate(problem, sol, policy)
    if status == "dual_infeasible":
        return _record(problem, SdpSolution(SdpStatus.ERROR, iterations=iters, residuals=residuals,
                                            message="dual infeasible (primal unbounded or ill-posed)"))

    x_out = to_hermitian([x * beta / tau for x in xs])
    y_full = sign * (transform @ (y_red * gamma / tau)) if r else np.zeros(m)
    pobj = problem.objective_value(x_out)
    dobj = float(problem.rhs @ y_full)
    s_out = problem.dual_slack(y_full)
    sol = SdpSolution(SdpStatus.OPTIMAL, X=x_out, y=y_full, S=s_out, primal_objective=pobj,
                      dual_objective=dobj, gap=abs(pobj - dobj), iterations=iters,
                      residuals=residuals, message=status)
    return _gate(problem, sol, policy)


_RECORDERS: contextvars.ContextVar[tuple] = contextvars.ContextVar("sdp_recorders", default=())


@contextlib.contextmanager
def recording():
    """Collect ``(problem, solution)`` for every solve made inside the block (audit trails)."""
    log = []
    token = _RECORDERS.set(_RECORDERS.get() + (log,))
    try:
        yield log
    finally:
        _RECORDERS.reset(token)


def _record(problem: SdpProblem, sol: SdpSolution) -> SdpSolution:
    for log in _RECORDERS.get():
        log.append((problem, sol))
    return sol


def _gate(problem: SdpProblem, sol: SdpSolution, policy: NumericPolicy) -> SdpSolution:
    """Only emit ``optimal``/``infeasible`` when the independent check passes."""
    report = certificate_report(problem, sol, policy)
    if report["valid"]:
        return _record(problem, sol)
    relaxed = certificate_report(problem, sol, policy, scale=10.0)
    status = SdpStatus.BORDERLINE if relaxed["valid"] else SdpStatus.ERROR
    return _record(problem, SdpSolution(status, X=sol.X, y=sol.y, S=sol.S, primal_objective=sol.primal_objective,
                       dual_objective=sol.dual_objective, gap=sol.gap, certificate=sol.certificate,
                       margin=sol.margin, iterations=sol.iterations, residuals={**sol.residuals, **report},
                       message=f"{sol.status.value} claim failed verification ({report['reason']})"))


def _min_eig(blks) -> float:
    return min(float(eigh_stack(b[None], want_vectors=False)[0][0, -1]) for b in blks)


def _max_eig(blks) -> float:
    return max(float(eigh_stack(b[None], want_vectors=False)[0][0, 0]) for b in blks)


def certificate_report(problem: SdpProblem, sol: SdpSolution, policy: NumericPolicy = DEFAULT_POLICY,
                       scale: float = 1.0) -> dict:
    """Recompute optimality / infeasibility conditions from the raw problem data."""
    tol = policy.solver_tol * scale
    b = problem.rhs
    if sol.status is SdpStatus.OPTIMAL or (sol.X is not None and sol.certificate is None):
        if sol.X is None or sol.y is None:
            return {"valid": False, "reason": "missing primal or dual variables"}
        xs = tuple(np.asarray(x, dtype=complex) for x in sol.X)
        y = np.asarray(sol.y, dtype=float)
        if len(xs) != len(problem.block_dims) or y.shape != b.shape:
            return {"valid": False, "reason": "shape mismatch"}
        xnorm = max(float(np.max(np.abs(x))) for x in xs)
        pres = float(np.linalg.norm(problem.apply(xs) - b))
        x_min = _min_eig(xs)
        s_min = _min_eig(problem.dual_slack(y))
        cx = problem.objective_value(xs)
        gap = abs(cx - float(b @ y))
        cnorm = max(float(np.max(np.abs(c))) for c in problem.objective)
        checks = {
            "primal_residual": pres <= tol * (1.0 + np.linalg.norm(b)),
            "primal_psd": x_min >= -tol * (1.0 + xnorm),
            "dual_psd": s_min >= -tol * (1.0 + cnorm),
            "gap": gap <= tol * (1.0 + abs(cx)),
        }
        failed = [k for k, ok in checks.items() if not ok]
        return {"valid": not failed, "reason": ", ".join(failed) or "ok", "primal_residual": pres,
                "primal_min_eig": x_min, "dual_min_eig": s_min, "gap_abs": gap}
    if sol.certificate is None:
        return {"valid": False, "reason": "no certificate"}
    y = np.asarray(sol.certificate, dtype=float)
    if y.shape != b.shape or not np.all(np.isfinite(y)):
        return {"valid": False, "reason": "certificate shape mismatch"}
    nrm = np.linalg.norm(y)
    if nrm == 0:
        return {"valid": False, "reason": "zero certificate"}
    y = y / nrm
    by = float(b @ y)
    ay_max = _max_eig(problem.adjoint(y))
    checks = {"b_dot_y_positive": by > tol, "adjoint_nsd": ay_max <= tol * max(1.0, by)}
    failed = [k for k, ok in checks.items() if not ok]
    return {"valid": not failed, "reason": ", ".join(failed) or "ok", "b_dot_y": by, "adjoint_max_eig": ay_max}


def check_certificate(problem: SdpProblem, sol: SdpSolution, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """Independently re-verify an ``optimal`` or ``infeasible`` solution."""
    if sol.status not in (SdpStatus.OPTIMAL, SdpStatus.INFEASIBLE):
        return False
    if sol.status is SdpStatus.INFEASIBLE:
        sol = SdpSolution(SdpStatus.INFEASIBLE, certificate=sol.certificate)
    return bool(certificate_report(problem, sol, policy)["valid"])
