"""Open-loop step-response performance test for a PV controller + plant.

The controller is driven by a prescribed frequency step (default 0.002 pu,
0.12 Hz on a 60 Hz base) with no grid feedback, and the plant output is
graded against reaction/rise/settling/overshoot thresholds. The default
threshold values are configurable stand-ins in the style of North American
interconnection performance guidance, not normative figures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .engine import SimConfig, _as_steps
from .metrics import (NoResponseError, NotSettledError, StepResponseMetrics,
                      compute_step_response_metrics)
from .pv import ControllerSpec, PVPlant, PVPlantConfig, make_controller


@dataclass(frozen=True)
class ComplianceThresholds:
    step_magnitude: float = 0.002
    max_reaction: float = 0.5
    max_rise: float = 4.0
    max_settling: float = 10.0
    max_overshoot: float = 0.05
    settling_band: float = 0.025

    def __post_init__(self) -> None:
        for name in ("step_magnitude", "max_reaction", "max_rise",
                     "max_settling", "max_overshoot", "settling_band"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, "
                                 f"got {getattr(self, name)}")


@dataclass(frozen=True)
class StepResponse:
    """Sampled open-loop response (plant pu) to the frequency step."""

    t: list[float]
    y: list[float]
    step_time: float
    step_magnitude: float


@dataclass(frozen=True)
class CriterionResult:
    value: float
    limit: float
    passed: bool


@dataclass(frozen=True)
class ComplianceReport:
    metrics: StepResponseMetrics | None
    criteria: dict[str, CriterionResult]
    passed: bool
    failure_reason: str | None
    config: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "passed": self.passed,
            "failure_reason": self.failure_reason,
            "criteria": {
                name: {"value": c.value, "limit": c.limit,
                       "passed": c.passed}
                for name, c in self.criteria.items()
            },
            "config": self.config,
        }
        if self.metrics is not None:
            out["metrics"] = {
                "reaction_time_s": self.metrics.reaction_time_s,
                "rise_time_s": self.metrics.rise_time_s,
                "settling_time_s": self.metrics.settling_time_s,
                "overshoot": self.metrics.overshoot,
                "final_value": self.metrics.final_value,
            }
        return out


def run_step_test(controller_spec: ControllerSpec,
                  plant_cfg: PVPlantConfig,
                  thresholds: ComplianceThresholds | None = None,
                  sim: SimConfig | None = None,
                  step_time: float = 1.0) -> StepResponse:
    """Drive the controller with an underfrequency step and record the
    plant output (plant pu) over the horizon."""
    if controller_spec.kind == "none":
        raise ValueError(
            "controller kind 'none' has no response to test; choose "
            "droop, inertia or combined"
        )
    thr = thresholds or ComplianceThresholds()
    cfg = sim or SimConfig(t_end=20.0)
    controller = make_controller(controller_spec)
    plant = PVPlant(plant_cfg)

    dt = cfg.dt
    n_steps = _as_steps(cfg.t_end, dt, "t_end")
    stride = _as_steps(cfg.sample_interval, dt, "sample_interval")
    k_step = _first_step(step_time, dt)

    t_list = [0.0]
    y_list = [0.0]
    for k in range(n_steps):
        delta_f = -thr.step_magnitude if k >= k_step else 0.0
        cmd = controller.step(delta_f, dt)
        plant.step(cmd, dt)
        if (k + 1) % stride == 0:
            t_list.append((k + 1) * dt)
            y_list.append(plant.output_plant_pu)
    return StepResponse(t=t_list, y=y_list, step_time=step_time,
                        step_magnitude=thr.step_magnitude)


def evaluate_compliance(response: StepResponse,
                        thresholds: ComplianceThresholds | None = None,
                        config: dict[str, Any] | None = None,
                        ) -> ComplianceReport:
    """Grade a step response against the thresholds.

    A response that never leaves zero (or fails to settle) is an overall
    fail with the reason recorded, not an exception.
    """
    thr = thresholds or ComplianceThresholds()
    try:
        metrics = compute_step_response_metrics(
            response.t, response.y, response.step_time,
            settling_band=thr.settling_band)
    except NoResponseError:
        return ComplianceReport(metrics=None, criteria={}, passed=False,
                                failure_reason="no_response",
                                config=config or {})
    except NotSettledError:
        return ComplianceReport(metrics=None, criteria={}, passed=False,
                                failure_reason="not_settled",
                                config=config or {})

    criteria = {
        "reaction_time": CriterionResult(
            metrics.reaction_time_s, thr.max_reaction,
            metrics.reaction_time_s <= thr.max_reaction),
        "rise_time": CriterionResult(
            metrics.rise_time_s, thr.max_rise,
            metrics.rise_time_s <= thr.max_rise),
        "settling_time": CriterionResult(
            metrics.settling_time_s, thr.max_settling,
            metrics.settling_time_s <= thr.max_settling),
        "overshoot": CriterionResult(
            metrics.overshoot, thr.max_overshoot,
            metrics.overshoot <= thr.max_overshoot),
    }
    passed = all(c.passed for c in criteria.values())
    return ComplianceReport(metrics=metrics, criteria=criteria,
                            passed=passed,
                            failure_reason=None if passed else
                            "threshold_exceeded",
                            config=config or {})


def format_report(report: ComplianceReport) -> str:
    """Human-readable pass/fail table."""
    lines = ["criterion        value      limit      result",
             "-" * 46]
    for name, c in report.criteria.items():
        lines.append(f"{name:<15}{c.value:>9.4f}{c.limit:>11.4f}"
                     f"{'pass' if c.passed else 'FAIL':>11}")
    if report.failure_reason and not report.criteria:
        lines.append(f"(no gradable response: {report.failure_reason})")
    lines.append("-" * 46)
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def _first_step(step_time: float, dt: float) -> int:
    n = step_time / dt
    r = round(n)
    if abs(n - r) <= 1e-6 * max(1.0, abs(n)):
        return r
    return int(n) + 1
