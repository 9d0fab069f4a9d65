"""Centralized numeric tolerances.

Every decision in the package that compares a float against zero goes through
a :class:`NumericPolicy`, so the whole tolerance story can be changed (and
tested) in one place.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, asdict, replace

ENV_PREFIX = "QCOMPARE_"


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances shared by the solvers and deciders.

    :param validation_tol: slack allowed when validating inputs (Hermiticity,
        positivity, normalization).
    :param solver_tol: KKT residual / duality gap target of the SDP engine.
    :param verdict_margin: violations smaller than this are reported as
        ``borderline`` rather than ``fails``/``infeasible``.
    :param max_iter: interior-point iteration cap.
    :param step_fraction: fraction-to-boundary factor of the interior-point
        step length.
    """

    validation_tol: float = 1e-9
    solver_tol: float = 1e-8
    verdict_margin: float = 1e-6
    max_iter: int = 200
    step_fraction: float = 0.98

    @property
    def borderline_band(self) -> float:
        return 10.0 * self.solver_tol

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_env(cls, environ=None) -> "NumericPolicy":
        """Build a policy, overriding defaults from ``QCOMPARE_*`` variables.

        Recognized: ``QCOMPARE_VALIDATION_TOL``, ``QCOMPARE_SOLVER_TOL``,
        ``QCOMPARE_VERDICT_MARGIN``, ``QCOMPARE_MAX_ITER``.
        """
        environ = os.environ if environ is None else environ
        policy = cls()
        overrides = {}
        for name, cast in (("validation_tol", float), ("solver_tol", float),
                           ("verdict_margin", float), ("max_iter", int)):
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None or raw == "":
                continue
            try:
                value = cast(raw)
            except ValueError as exc:
                raise ValueError(f"{ENV_PREFIX}{name.upper()}={raw!r} is not a valid {cast.__name__}") from exc
            if value <= 0:
                raise ValueError(f"{ENV_PREFIX}{name.upper()} must be positive, got {raw!r}")
            overrides[name] = value
        return replace(policy, **overrides)


DEFAULT_POLICY = NumericPolicy()
