"""Run configuration: JSON documents, their schema, and the built-in presets."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import jsonschema

from .errors import ConfigError
from .model import (
    AffinePlusImaginaryLinear,
    EnergyDependence,
    Family,
    ImaginaryLinear,
    ImaginarySqrtShift,
    ModelSpec,
    YekkenPower,
)
from .quadrature import QuadratureSpec

__all__ = [
    "CONFIG_SCHEMA",
    "PRESETS",
    "REFERENCE_NORMS",
    "GridSpec",
    "RunConfig",
    "config_from_dict",
    "load_config",
    "preset",
    "energy_dependence_from_dict",
]

_VARIANTS = {
    "imaginary_linear": (ImaginaryLinear, {"k"}),
    "imaginary_sqrt_shift": (ImaginarySqrtShift, {"b"}),
    "affine_plus_imaginary_linear": (AffinePlusImaginaryLinear, {"k", "re"}),
    "yekken_power": (YekkenPower, {"gamma", "nu", "lambda"}),
}

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["family", "A", "alpha", "B"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "family": {"enum": [f.value for f in Family]},
        "A": {"type": "number"},
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "B": {
            "type": "object",
            "required": ["variant", "params"],
            "additionalProperties": False,
            "properties": {
                "variant": {"enum": sorted(_VARIANTS)},
                "params": {"type": "object", "additionalProperties": {"type": "number"}},
            },
        },
        "quadrature": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "method": {"enum": ["de", "gl"]},
                "tol": {"type": "number", "exclusiveMinimum": 0},
                "max_level": {"type": "integer", "minimum": 3},
                "cutoff": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "grid": {
            "type": "object",
            "required": ["min", "max", "n"],
            "additionalProperties": False,
            "properties": {
                "min": {"type": "number"},
                "max": {"type": "number"},
                "n": {"type": "integer", "minimum": 2},
            },
        },
        "max_levels": {"type": "integer", "minimum": 1},
    },
}


def _preset(name, family, A, variant, params, *, max_levels=None):
    doc = {
        "name": name,
        "family": family,
        "A": A,
        "alpha": 1.0,
        "B": {"variant": variant, "params": params},
        "quadrature": {"method": "de", "tol": 1e-10, "max_level": 12, "cutoff": 30.0},
        "grid": {"min": -6.0, "max": 6.0, "n": 1001},
    }
    if max_levels is not None:
        doc["max_levels"] = max_levels
    return doc


PRESETS: dict[str, dict[str, Any]] = {
    doc["name"]: doc
    for doc in (
        _preset("scarf-hyp-k0.1", "hyperbolic_scarf", 3.0, "imaginary_linear", {"k": 0.1}),
        _preset("scarf-hyp-k0.01", "hyperbolic_scarf", 3.0, "imaginary_linear", {"k": 0.01}),
        _preset("scarf-trig-b0.01", "trig_scarf", 5.0, "imaginary_sqrt_shift", {"b": 0.01}, max_levels=4),
        _preset("scarf-trig-b0.1", "trig_scarf", 5.0, "imaginary_sqrt_shift", {"b": 0.1}, max_levels=4),
        _preset("morse-k0.1", "morse", 3.0, "affine_plus_imaginary_linear", {"k": 0.1, "re": 1.0}),
        _preset("morse-k0.01", "morse", 3.0, "affine_plus_imaginary_linear", {"k": 0.01, "re": 1.0}),
    )
}

# Published pseudo-norm tables, keyed by the preset they are quoted for.
REFERENCE_NORMS: dict[str, tuple[float, ...]] = {
    "scarf-hyp-k0.1": (1.06667, -1.66462, 0.745127),
    "scarf-trig-b0.01": (0.773111, -1.94853, 3.20699, -4.38392),
    "morse-k0.1": (1.875, 1.86566, 1.49046),
}


@dataclass(frozen=True)
class GridSpec:
    min: float = -6.0
    max: float = 6.0
    n: int = 1001

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError("grid needs at least two points")
        if not self.max > self.min:
            raise ConfigError("grid max must exceed grid min")


@dataclass(frozen=True)
class RunConfig:
    spec: ModelSpec
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    grid: GridSpec = field(default_factory=GridSpec)
    name: str | None = None

    def with_quadrature(self, *, method: str | None = None, tol: float | None = None) -> "RunConfig":
        q = self.quad
        if method is not None:
            q = replace(q, method=method)
        if tol is not None:
            q = replace(q, tol=tol)
        return replace(self, quad=q)


def energy_dependence_from_dict(doc: dict[str, Any]) -> EnergyDependence:
    variant = doc["variant"]
    cls, allowed = _VARIANTS[variant]
    params = dict(doc.get("params", {}))
    unknown = set(params) - allowed
    if unknown:
        raise ConfigError(f"unknown parameters {sorted(unknown)} for variant {variant}")
    if variant == "yekken_power":
        return YekkenPower(gamma=params["gamma"], nu=params["nu"], lam=params["lambda"])
    try:
        return cls(**params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {variant}: {exc}") from exc


def config_from_dict(doc: dict[str, Any]) -> RunConfig:
    """Validate a config document against the schema and build a RunConfig."""
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    extra = {} if "max_levels" not in doc else {"level_cap": doc["max_levels"]}
    try:
        spec = ModelSpec(Family(doc["family"]), float(doc["A"]), float(doc["alpha"]), energy_dependence_from_dict(doc["B"]), **extra)
        quad = QuadratureSpec(**doc.get("quadrature", {}))
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    grid = GridSpec(**doc["grid"]) if "grid" in doc else GridSpec()
    return RunConfig(spec, quad, grid, doc.get("name"))


def preset(name: str) -> RunConfig:
    try:
        doc = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return config_from_dict(copy.deepcopy(doc))


def load_config(path: str | Path) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(doc)
