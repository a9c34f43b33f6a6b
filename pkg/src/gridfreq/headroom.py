"""Headroom sizing and single-parameter sweeps.

The sizer finds the smallest PV headroom fraction whose simulated nadir
stays at or above a target (for example an under-frequency load-shedding
threshold) by bisection. Monotonicity of nadir in headroom is probed at
three points first rather than assumed, because limiters and recovery
clamps could in principle bend the response; a failed probe is surfaced as
an error instead of silently bisecting a non-monotone curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .engine import SimConfig, run_simulation
from .metrics import FrequencyMetrics, compute_frequency_metrics
from .scenario import Scenario, set_param, valid_param_paths


class UnattainableError(RuntimeError):
    """The target is not met even at the maximum headroom."""


class NonMonotoneError(RuntimeError):
    """The three-point monotonicity probe failed."""


@dataclass(frozen=True)
class HeadroomQuery:
    scenario: Scenario
    controller: str
    target_nadir_hz: float
    h_max: float = 0.5
    tolerance: float = 0.001

    def __post_init__(self) -> None:
        if not 0.0 < self.tolerance < self.h_max <= 1.0:
            raise ValueError(
                f"need 0 < tolerance ({self.tolerance}) < h_max "
                f"({self.h_max}) <= 1"
            )
        if self.target_nadir_hz >= self.scenario.system.f0:
            raise ValueError(
                f"target nadir ({self.target_nadir_hz}) must be below "
                f"nominal frequency ({self.scenario.system.f0})"
            )


@dataclass
class HeadroomResult:
    headroom: float
    n_runs: int
    evaluations: dict[float, float] = field(default_factory=dict)


def min_headroom_for_nadir(query: HeadroomQuery,
                           sim: SimConfig | None = None) -> HeadroomResult:
    """Smallest headroom (within tolerance) whose nadir meets the target."""
    evaluations: dict[float, float] = {}

    def nadir(h: float) -> float:
        if h not in evaluations:
            s = set_param(query.scenario, "system.pv.headroom", h)
            trace = run_simulation(s, controller=query.controller, sim=sim)
            m = compute_frequency_metrics(
                trace, s.contingency.t_event, f0=s.system.f0)
            evaluations[h] = m.nadir_hz
        return evaluations[h]

    h_star = bisect_min_headroom(nadir, query.target_nadir_hz,
                                 query.h_max, query.tolerance)
    return HeadroomResult(headroom=h_star, n_runs=len(evaluations),
                          evaluations=dict(evaluations))


def bisect_min_headroom(nadir: Callable[[float], float], target: float,
                        h_max: float, tolerance: float) -> float:
    """Bisection core over a memo-friendly nadir function.

    Probes {0, h_max/2, h_max} for monotonicity, then bisects the bracket
    [largest h below target, smallest h at/above target].
    """
    probe = [0.0, h_max / 2.0, h_max]
    values = [nadir(h) for h in probe]
    if not (values[0] <= values[1] + 1e-9 and values[1] <= values[2] + 1e-9):
        raise NonMonotoneError(
            "nadir is not non-decreasing in headroom over "
            f"{probe}: {[f'{v:.4f}' for v in values]}"
        )
    if values[0] >= target:
        return 0.0
    if values[2] < target:
        raise UnattainableError(
            f"nadir at h_max={h_max} is {values[2]:.4f} Hz, below the "
            f"target {target:.4f} Hz"
        )
    lo, hi = 0.0, h_max
    if values[1] >= target:
        hi = probe[1]
    else:
        lo = probe[1]
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if nadir(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def sweep_param(scenario: Scenario, controller: str, param_path: str,
                values: list[float],
                sim: SimConfig | None = None,
                ) -> list[tuple[float, FrequencyMetrics]]:
    """One metrics row per value, in input order."""
    if param_path not in valid_param_paths():
        raise ValueError(
            f"unknown parameter path {param_path!r}; valid paths: "
            f"{', '.join(valid_param_paths())}"
        )
    rows = []
    for v in values:
        s = set_param(scenario, param_path, v)
        trace = run_simulation(s, controller=controller, sim=sim)
        rows.append((v, compute_frequency_metrics(
            trace, s.contingency.t_event, f0=s.system.f0)))
    return rows
