"""Deciders for the information, thermal and complete orderings of state pairs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .comparison import (AuReport, FeasibilityVerdict, Verdict, WitnessReport, alberti_uhlmann_qubit, apply_choi,
                         channel_feasibility, extract_witness, guessing_probability)
from .linalg import trace_norm
from .objects import Encoding, build_cq_state, build_extended_cq_state, density, standard_complete_cq
from .policy import DEFAULT_POLICY, NumericPolicy
from .sampling import indexed_rng, random_encoding

COMMUTING_TOL = 1e-9
THERMAL_TOL = 1e-7

REGIME_QUBIT = "qubit"
REGIME_SEMIQUANTUM = "semiquantum"
REGIME_GENERAL = "general"


class OrderingInconsistencyError(RuntimeError):
    """The exact qubit test and the channel SDP disagree outside their borderline bands."""


@dataclass(frozen=True)
class OrderingVerdict:
    """Outcome of an ordering decision.

    ``ordering`` is ``"info"`` when the plain min-entropy ordering was decided
    and ``"complete"`` when only the version with an auxiliary register was.
    """

    relation: Verdict
    regime: str
    ordering: str
    au: Optional[AuReport] = None
    feasibility: Optional[FeasibilityVerdict] = None
    witness: Optional[WitnessReport] = None
    notes: Tuple[str, ...] = ()

    @property
    def choi(self):
        return None if self.feasibility is None else self.feasibility.choi

    def as_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "regime": self.regime,
            "ordering": self.ordering,
            "au": None if self.au is None else self.au.as_dict(),
            "feasibility": None if self.feasibility is None else self.feasibility.as_dict(),
            "witness": None if self.witness is None else self.witness.as_dict(),
            "notes": list(self.notes),
        }


def commutator_norm(sigma0, sigma1) -> float:
    """Max-norm of ``s0 s1 - s1 s0``."""
    a, b = density(sigma0).data, density(sigma1).data
    if a.shape != b.shape:
        raise ValueError("states must share a dimension")
    return float(np.max(np.abs(a @ b - b @ a)))


_FROM_FEASIBILITY = {Verdict.FEASIBLE: Verdict.HOLDS, Verdict.INFEASIBLE: Verdict.FAILS,
                     Verdict.BORDERLINE: Verdict.BORDERLINE}


def _conflict(au: AuReport, fv: FeasibilityVerdict) -> bool:
    return ((au.verdict is Verdict.HOLDS and fv.verdict is Verdict.INFEASIBLE)
            or (au.verdict is Verdict.FAILS and fv.verdict is Verdict.FEASIBLE))


def decide_pair_ordering(rho_pair, sigma_pair, policy: NumericPolicy = DEFAULT_POLICY, witness: bool = True,
                         seed: int = 0) -> OrderingVerdict:
    """Decide whether ``rho_pair`` dominates ``sigma_pair``.

    Qubits are decided by the exact trace-norm test, with the channel SDP as
    a cross-check. If the target states commute, channel existence decides
    the plain ordering; otherwise it decides only the complete ordering.
    """
    r0, r1 = (density(s) for s in rho_pair)
    s0, s1 = (density(s) for s in sigma_pair)
    if r0.dim != r1.dim or s0.dim != s1.dim:
        raise ValueError("states within a pair must share a dimension")
    notes = []
    fv = channel_feasibility(r0, r1, s0, s1, policy)
    notes.extend(fv.notes)
    au = None
    if r0.dim == 2 and s0.dim == 2:
        regime, ordering = REGIME_QUBIT, "info"
        au = alberti_uhlmann_qubit(r0, r1, s0, s1, policy)
        notes.append(f"qubit regime: exact trace-norm test says {au.verdict.value} "
                     f"(violation {au.violation:.3e}); channel SDP says {fv.verdict.value}")
        if _conflict(au, fv):
            raise OrderingInconsistencyError(
                f"exact test {au.verdict.value} (violation {au.violation:.3e}) vs channel SDP "
                f"{fv.verdict.value} (margin {fv.margin:.3e})")
        relation = au.verdict
    else:
        comm = commutator_norm(s0, s1)
        if comm <= COMMUTING_TOL:
            regime, ordering = REGIME_SEMIQUANTUM, "info"
            notes.append(f"target commutator {comm:.3e} <= {COMMUTING_TOL:g}: channel verdict decides the ordering")
        else:
            regime, ordering = REGIME_GENERAL, "complete"
            notes.append(f"target commutator {comm:.3e}: channel verdict decides the complete ordering only; "
                         "the plain ordering was not decided")
        relation = _FROM_FEASIBILITY[fv.verdict]
    wit = None
    if witness and fv.verdict is Verdict.INFEASIBLE:
        wit = extract_witness((r0, r1), (s0, s1), fv, policy, seed=seed)
        notes.append(f"witness search: {'found' if wit.witness_found else 'none found'}, gap {wit.gap:.3e}")
    return OrderingVerdict(relation, regime, ordering, au, fv, wit, tuple(notes))


def decide_thermal_ordering(rho, sigma, omega, omega_out=None, policy: NumericPolicy = DEFAULT_POLICY,
                            witness: bool = True, seed: int = 0) -> OrderingVerdict:
    """Is there an ``omega``-preserving channel taking ``rho`` to ``sigma``?

    ``omega_out`` is the fixed state on the output side when it differs from
    the input space; by default the same ``omega`` is used on both sides.
    A ``holds`` verdict always carries a checked Choi matrix.
    """
    omega_in = density(omega)
    omega_out = omega_in if omega_out is None else density(omega_out)
    rho, sigma = density(rho), density(sigma)
    if rho.dim != omega_in.dim or sigma.dim != omega_out.dim:
        raise ValueError("each state must match the dimension of its fixed state")
    verdict = decide_pair_ordering((rho, omega_in), (sigma, omega_out), policy, witness, seed)
    if verdict.relation is not Verdict.HOLDS:
        return verdict
    notes = list(verdict.notes)
    choi = verdict.choi
    if choi is None:
        notes.append("no Choi matrix available to evidence the transition")
        return OrderingVerdict(Verdict.BORDERLINE, verdict.regime, verdict.ordering, verdict.au,
                               verdict.feasibility, verdict.witness, tuple(notes))
    err_fixed = trace_norm(apply_choi(choi, omega_in).data - omega_out.data)
    err_target = trace_norm(apply_choi(choi, rho).data - sigma.data)
    notes.append(f"Choi evidence: ||Phi(omega) - omega||_1 = {err_fixed:.2e}, ||Phi(rho) - sigma||_1 = {err_target:.2e}")
    if err_fixed > THERMAL_TOL or err_target > THERMAL_TOL:
        return OrderingVerdict(Verdict.BORDERLINE, verdict.regime, verdict.ordering, verdict.au,
                               verdict.feasibility, verdict.witness, tuple(notes))
    return OrderingVerdict(Verdict.HOLDS, verdict.regime, verdict.ordering, verdict.au, verdict.feasibility,
                           verdict.witness, tuple(notes))


@dataclass(frozen=True)
class SampleReport:
    """Largest violation of ``H_min(source) <= H_min(target)`` over sampled encodings.

    ``max_violation`` is in guessing probability (``P_target - P_source``);
    ``max_violation_bits`` is the same sample's min-entropy difference.
    Both are ``None`` for an empty run.
    """

    n: int
    u_size: int
    use_r: bool
    seed: int
    max_violation: Optional[float] = None
    max_violation_bits: Optional[float] = None
    worst_index: Optional[int] = None
    worst_encoding: Optional[Encoding] = None
    violations: Tuple[float, ...] = ()

    def as_dict(self) -> dict:
        enc = None
        if self.worst_encoding is not None:
            enc = {"shape": list(self.worst_encoding.probs.shape),
                   "probs": self.worst_encoding.probs.ravel().tolist()}
        return {"n": self.n, "u_size": self.u_size, "use_r": self.use_r, "seed": self.seed,
                "max_violation": self.max_violation, "max_violation_bits": self.max_violation_bits,
                "worst_index": self.worst_index, "worst_encoding": enc}


def sample_ordering_check(rho_pair, sigma_pair, n: int, u_size: int = 2, use_r: bool = False, seed: int = 0,
                          policy: NumericPolicy = DEFAULT_POLICY) -> SampleReport:
    """Probe the ordering on ``n`` random encodings.

    Sample ``i`` is drawn from its own generator keyed by ``(seed, i)``, so
    results do not depend on evaluation order. With ``use_r`` an auxiliary
    register of the target dimension, prepared by the standard complete
    cq-channel, is attached on both sides.
    """
    if n < 0 or u_size < 1:
        raise ValueError("n must be non-negative and u_size positive")
    r0, r1 = (density(s) for s in rho_pair)
    s0, s1 = (density(s) for s in sigma_pair)
    cq = standard_complete_cq(s0.dim) if use_r else None
    best = None
    violations = []
    for i in range(n):
        rng = indexed_rng(seed, i, stream=1)
        if use_r:
            enc = random_encoding(u_size, rng, y_size=len(cq.states))
            src = build_extended_cq_state(enc, cq, (r0, r1))
            tgt = build_extended_cq_state(enc, cq, (s0, s1))
        else:
            enc = random_encoding(u_size, rng)
            src = build_cq_state(enc, (r0, r1))
            tgt = build_cq_state(enc, (s0, s1))
        p_src = guessing_probability(src, policy)[0]
        p_tgt = guessing_probability(tgt, policy)[0]
        gap = p_tgt - p_src
        violations.append(gap)
        if best is None or gap > best[0]:
            best = (gap, math.log2(p_tgt) - math.log2(p_src), i, enc)
    if best is None:
        return SampleReport(0, u_size, use_r, seed)
    return SampleReport(n, u_size, use_r, seed, float(best[0]), float(best[1]), best[2], best[3], tuple(violations))
