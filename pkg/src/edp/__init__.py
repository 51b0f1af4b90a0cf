"""Complex energy-dependent potentials with closed-form bound states."""

from .errors import EdpError
from .model import (
    AffinePlusImaginaryLinear,
    BoundState,
    Custom,
    Family,
    ImaginaryLinear,
    ImaginarySqrtShift,
    ModelSpec,
    YekkenPower,
)
from .quadrature import QuadratureSpec

__version__ = "0.1.0"

__all__ = [
    "AffinePlusImaginaryLinear",
    "BoundState",
    "Custom",
    "EdpError",
    "Family",
    "ImaginaryLinear",
    "ImaginarySqrtShift",
    "ModelSpec",
    "QuadratureSpec",
    "YekkenPower",
]
