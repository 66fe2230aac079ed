"""Scalar searches over the amplifier transmissivity (and unit count).

All searches are deterministic: a fixed coarse grid locates the best basin,
golden-section (or bracket-shrinking, for the constrained search) refines it,
and the reported optimum is never worse than any point actually evaluated.
Ties break toward the lowest transmissivity, and toward the lowest N in the
joint searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .nla import NlaSpec, amplify_coherent

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class InfeasibleError(ValueError):
    """No parameter in the search region satisfies the constraint."""


@dataclass(frozen=True)
class SweepConfig:
    """Search-region and refinement settings shared by the optimisers."""

    t_min: float = 1e-4
    t_max: float = 1.0 - 1e-4
    grid_points: int = 200
    refine_tolerance: float = 1e-4
    n_range: tuple = (1, 8)

    def __post_init__(self):
        if not 0.0 < self.t_min < self.t_max < 1.0:
            raise ValueError("need 0 < t_min < t_max < 1")
        if self.grid_points < 3:
            raise ValueError("grid_points must be >= 3")
        if self.refine_tolerance <= 0.0:
            raise ValueError("refine_tolerance must be positive")
        lo, hi = self.n_range
        if not 1 <= lo <= hi:
            raise ValueError("n_range must satisfy 1 <= lo <= hi")


@dataclass(frozen=True)
class SweepResult:
    """Optimum of one scalar sweep plus the evaluation trace behind it."""

    optimal_t: float
    value: float
    success_prob: float | None
    trace: tuple


def _check_finite(t: float, value: float) -> float:
    if not math.isfinite(value):
        raise ValueError(f"objective returned non-finite value {value} "
                         f"at T={t}")
    return value


def maximize_over_T(objective, config: SweepConfig | None = None,
                    record: list | None = None):
    """Coarse grid plus golden-section refinement of a scalar objective.

    Returns ``(t_star, value_star)``; the value is at least as good as every
    grid sample.  ``record``, when given, collects all (t, value) pairs in
    evaluation order.
    """
    cfg = config or SweepConfig()

    def f(t: float) -> float:
        v = _check_finite(t, float(objective(t)))
        if record is not None:
            record.append((t, v))
        return v

    ts = np.linspace(cfg.t_min, cfg.t_max, cfg.grid_points)
    vals = np.array([f(t) for t in ts])
    i = int(np.argmax(vals))            # first max -> lowest-T tie-break
    best_t, best_v = float(ts[i]), float(vals[i])

    lo = float(ts[max(i - 1, 0)])
    hi = float(ts[min(i + 1, len(ts) - 1)])
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > cfg.refine_tolerance:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    for t, v in ((c, fc), (d, fd)):
        if v > best_v:
            best_t, best_v = float(t), float(v)
    return best_t, best_v


def max_fidelity_profile(alpha: complex, target_gain: float, kind: str,
                         n_units: int, n_max: int = 30,
                         config: SweepConfig | None = None):
    """T maximising the fidelity to the gain-``target_gain`` coherent target.

    Returns ``(t_star, fidelity_star, success_prob_at_t_star)``.
    """
    def objective(t: float) -> float:
        return amplify_coherent(alpha, NlaSpec(kind, n_units, t), n_max,
                                target_gain).fidelity

    t_star, f_star = maximize_over_T(objective, config)
    res = amplify_coherent(alpha, NlaSpec(kind, n_units, t_star), n_max,
                           target_gain)
    return t_star, f_star, res.success_prob


def max_success_given_fidelity(alpha: complex, target_gain: float, kind: str,
                               fidelity_floor: float, n_max: int = 30,
                               config: SweepConfig | None = None):
    """Highest success probability subject to a fidelity floor.

    Scans every unit count in ``config.n_range`` jointly with T; returns
    ``(n_star, t_star, prob_star)``.  Raises :class:`InfeasibleError` when no
    (N, T) reaches the floor.
    """
    cfg = config or SweepConfig()

    best = None
    for n_units in range(cfg.n_range[0], cfg.n_range[1] + 1):
        def eval_at(t: float):
            res = amplify_coherent(alpha, NlaSpec(kind, n_units, t), n_max,
                                   target_gain)
            return res.fidelity, res.success_prob

        lo, hi = cfg.t_min, cfg.t_max
        local = None
        while True:
            ts = np.linspace(lo, hi, max(cfg.grid_points // 4, 16))
            pairs = [eval_at(t) for t in ts]
            for t, (fid, prob) in zip(ts, pairs):
                _check_finite(t, fid)
                _check_finite(t, prob)
                if fid >= fidelity_floor and \
                        (local is None or prob > local[1]):
                    local = (float(t), float(prob))
            if local is None or hi - lo <= cfg.refine_tolerance:
                break
            step = ts[1] - ts[0]
            lo = max(cfg.t_min, local[0] - step)
            hi = min(cfg.t_max, local[0] + step)
        if local is not None and (best is None or local[1] > best[2]):
            best = (n_units, local[0], local[1])
    if best is None:
        raise InfeasibleError(
            f"no (N, T) in the search region reaches fidelity "
            f"{fidelity_floor}")
    return best


def maximize_total_logneg(scenario, n_max: int,
                          config: SweepConfig | None = None):
    """T-optimised distillation result for a fixed scenario and unit count.

    Returns the :class:`DistillResult` at the optimum with ``optimal_t`` set.
    """
    from dataclasses import replace

    from .distill import apply_strategy, lossy_pdc_densities

    lossy = lossy_pdc_densities(scenario.pdc, scenario.channel, n_max)

    def objective(t: float) -> float:
        nla = replace(scenario.nla, transmissivity=t)
        return apply_strategy(lossy, nla, scenario.strategy,
                              scenario.amplified_index).total_logneg

    t_star, _ = maximize_over_T(objective, config)
    nla = replace(scenario.nla, transmissivity=t_star)
    best = apply_strategy(lossy, nla, scenario.strategy,
                          scenario.amplified_index)
    return replace(best, optimal_t=t_star)


def sweep_objective(objective, config: SweepConfig | None = None,
                    success_at=None) -> SweepResult:
    """Run one scalar sweep and keep the full evaluation trace."""
    trace: list = []
    t_star, v_star = maximize_over_T(objective, config, record=trace)
    prob = None if success_at is None else float(success_at(t_star))
    return SweepResult(t_star, v_star, prob, tuple(trace))
