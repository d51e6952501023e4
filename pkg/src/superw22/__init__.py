"""Exact computations for the super W(2,2) Lie superalgebra."""

from __future__ import annotations

import json
from importlib import resources

from .algebra import Element, GeneratorId, bracket, generation_closure, jacobi_check, skew_check
from .expr import format_element, parse_element
from .scalar import Scalar, format_scalar, parse_scalar

__version__ = "0.1.0"


def data_path(*parts: str):
    """Path-like handle to a shipped data file."""
    return resources.files(__name__).joinpath("data", *parts)


def load_samples() -> dict:
    """The fixed parameter lists used by the acceptance suite."""
    return json.loads(data_path("samples.json").read_text())


__all__ = [
    "Element", "GeneratorId", "Scalar", "bracket", "data_path", "format_element", "format_scalar",
    "generation_closure", "jacobi_check", "load_samples", "parse_element", "parse_scalar", "skew_check",
]
