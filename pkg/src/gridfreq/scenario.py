"""Scenario documents: parsing, validation, presets and serialization.

A scenario is a single JSON document with five sections (system,
controller, contingency, sim, plus a name). Every key is optional when a
``preset`` supplies the base values; unknown keys are rejected so typos
fail loudly. Numeric fields can also be addressed with dotted paths
(``system.h_sys``, ``controller.droop.r``) for command-line overrides and
parameter sweeps.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Any

from .engine import SimConfig
from .grid import Contingency, GovernorFleet, SystemParams
from .pv import ControllerSpec, DroopConfig, InertiaConfig, PVPlantConfig


class ScenarioError(ValueError):
    """A scenario document failed validation; the message names the field."""


@dataclass(frozen=True)
class Scenario:
    """A complete, validated unit of simulation."""

    system: SystemParams
    contingency: Contingency
    controller: ControllerSpec = field(default_factory=ControllerSpec)
    sim: SimConfig = field(default_factory=SimConfig)
    name: str = "scenario"


def preset_scenario(name: str, controller: str = "none") -> Scenario:
    """Build a full scenario from a named preset."""
    from .grid import preset_params

    try:
        system, contingency = preset_params(name)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    return Scenario(system=system, contingency=contingency,
                    controller=ControllerSpec(kind=controller), name=name)


# Section -> field -> (leaf config dataclass attribute, caster).
_SCHEMA: dict[str, Any] = {
    "system": {
        "h_sys": float, "d_load": float, "f0": float,
        "governor": {"kappa": float, "r_gov": float, "t_gov": float,
                     "reserve_limit": float},
        "pv": {"c_pv": float, "headroom": float, "available_power": float,
               "t_inv": float, "rate_limit": float},
    },
    "controller": {
        "kind": str,
        "droop": {"r": float, "deadband": float, "t_lag": float},
        "inertia": {"k": float, "deadband": float, "t_lag": float,
                    "t_washout": float, "recovery_clamp": bool},
    },
    "contingency": {"dp": float, "t_event": float},
    "sim": {"dt": float, "t_end": float, "sample_interval": float,
            "rocof_window": float},
}


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    return scenario_from_dict(doc)


def scenario_from_dict(doc: dict[str, Any]) -> Scenario:
    """Build a scenario from a parsed document, applying preset defaults."""
    doc = dict(doc)
    name = doc.pop("name", None)
    preset = doc.pop("preset", None)

    if preset is not None:
        base = preset_scenario(str(preset))
        if name is None:
            name = str(preset)
    else:
        base = None
        if name is None:
            name = "scenario"

    unknown = set(doc) - set(_SCHEMA)
    if unknown:
        raise ScenarioError(
            f"unknown key(s) {', '.join(sorted(unknown))}; expected "
            f"{', '.join(sorted(_SCHEMA))} (plus name, preset)"
        )

    system_doc = _check_section(doc.get("system", {}), "system")
    gov_doc = _check_section(system_doc.pop("governor", {}),
                             "system.governor")
    pv_doc = _check_section(system_doc.pop("pv", {}), "system.pv")
    ctrl_doc = _check_section(doc.get("controller", {}), "controller")
    droop_doc = _check_section(ctrl_doc.pop("droop", {}),
                               "controller.droop")
    inertia_doc = _check_section(ctrl_doc.pop("inertia", {}),
                                 "controller.inertia")
    cont_doc = _check_section(doc.get("contingency", {}), "contingency")
    sim_doc = _check_section(doc.get("sim", {}), "sim")

    if base is None and "h_sys" not in system_doc:
        raise ScenarioError("system.h_sys is required without a preset")
    if base is None and "dp" not in cont_doc:
        raise ScenarioError("contingency.dp is required without a preset")

    governor = _build(GovernorFleet, gov_doc, "system.governor",
                      base.system.governor if base else None)
    pv = _build(PVPlantConfig, pv_doc, "system.pv",
                base.system.pv if base else None)
    system = _build(SystemParams, dict(system_doc, governor=governor,
                                       pv=pv), "system",
                    base.system if base else None)
    droop = _build(DroopConfig, droop_doc, "controller.droop",
                   base.controller.droop if base else None)
    inertia = _build(InertiaConfig, inertia_doc, "controller.inertia",
                     base.controller.inertia if base else None)
    controller = _build(ControllerSpec,
                        dict(ctrl_doc, droop=droop, inertia=inertia),
                        "controller",
                        base.controller if base else None)
    contingency = _build(Contingency, cont_doc, "contingency",
                         base.contingency if base else None)
    sim = _build(SimConfig, sim_doc, "sim", base.sim if base else None)
    return Scenario(system=system, contingency=contingency,
                    controller=controller, sim=sim, name=str(name))


def _check_section(section: Any, path: str) -> dict[str, Any]:
    """Validate a document section against the schema; returns a copy."""
    if not isinstance(section, dict):
        raise ScenarioError(f"{path} must be an object")
    schema = _SCHEMA
    for part in path.split("."):
        schema = schema[part]
    out: dict[str, Any] = {}
    for key, value in section.items():
        if key not in schema:
            raise ScenarioError(
                f"unknown key {path}.{key}; valid keys: "
                f"{', '.join(sorted(schema))}"
            )
        caster = schema[key]
        if isinstance(caster, dict):
            out[key] = value  # nested section, checked by its own call
        elif caster is bool:
            if not isinstance(value, bool):
                raise ScenarioError(f"{path}.{key} must be true or false")
            out[key] = value
        elif caster is str:
            if not isinstance(value, str):
                raise ScenarioError(f"{path}.{key} must be a string")
            out[key] = value
        else:
            if value is None and key == "rate_limit":
                out[key] = None
            elif isinstance(value, bool) or not isinstance(
                    value, (int, float)):
                raise ScenarioError(f"{path}.{key} must be a number")
            else:
                out[key] = float(value)
    return out


def _build(cls, overrides: dict[str, Any], path: str, base=None):
    """Construct ``cls`` from a base instance plus field overrides."""
    try:
        if base is not None:
            return dataclasses.replace(base, **overrides)
        return cls(**overrides)
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from None
    except TypeError:
        missing = [f.name for f in dataclasses.fields(cls)
                   if f.default is dataclasses.MISSING
                   and f.default_factory is dataclasses.MISSING
                   and f.name not in overrides]
        raise ScenarioError(
            f"{path} is missing required field(s): {', '.join(missing)}"
        ) from None


def scenario_to_dict(scenario: Scenario) -> dict[str, Any]:
    """Serialize a scenario to its document form (no preset reference)."""
    return {
        "name": scenario.name,
        "system": {
            "h_sys": scenario.system.h_sys,
            "d_load": scenario.system.d_load,
            "f0": scenario.system.f0,
            "governor": dataclasses.asdict(scenario.system.governor),
            "pv": dataclasses.asdict(scenario.system.pv),
        },
        "controller": {
            "kind": scenario.controller.kind,
            "droop": dataclasses.asdict(scenario.controller.droop),
            "inertia": dataclasses.asdict(scenario.controller.inertia),
        },
        "contingency": dataclasses.asdict(scenario.contingency),
        "sim": dataclasses.asdict(scenario.sim),
    }


def serialize_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2, sort_keys=True)


# Dotted paths addressable by --set and by parameter sweeps.
_PATH_SECTIONS = {
    "system": ("system", SystemParams),
    "system.governor": ("system.governor", GovernorFleet),
    "system.pv": ("system.pv", PVPlantConfig),
    "controller.droop": ("controller.droop", DroopConfig),
    "controller.inertia": ("controller.inertia", InertiaConfig),
    "contingency": ("contingency", Contingency),
    "sim": ("sim", SimConfig),
}


def valid_param_paths() -> list[str]:
    """All dotted paths accepted by :func:`set_param`."""
    paths = []
    for prefix, (_, cls) in _PATH_SECTIONS.items():
        for f in dataclasses.fields(cls):
            if f.type in ("float", "float | None", "bool"):
                paths.append(f"{prefix}.{f.name}")
    return sorted(paths)


def set_param(scenario: Scenario, path: str, value: Any) -> Scenario:
    """Return a copy of ``scenario`` with the field at ``path`` replaced."""
    if path not in valid_param_paths():
        raise ScenarioError(
            f"unknown parameter path {path!r}; valid paths: "
            f"{', '.join(valid_param_paths())}"
        )
    prefix, _, leaf = path.rpartition(".")
    parts = prefix.split(".")
    try:
        return _replace_nested(scenario, parts, leaf, value)
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from None


def _replace_nested(obj, parts: list[str], leaf: str, value: Any):
    if not parts:
        return dataclasses.replace(obj, **{leaf: value})
    child = getattr(obj, parts[0])
    return dataclasses.replace(
        obj, **{parts[0]: _replace_nested(child, parts[1:], leaf, value)})


def parse_set_value(text: str) -> Any:
    """Parse a --set value: bool words, 'none', otherwise a float."""
    lowered = text.strip().lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    if lowered in ("none", "null"):
        return None
    try:
        return float(text)
    except ValueError:
        raise ScenarioError(f"cannot parse value {text!r}") from None
