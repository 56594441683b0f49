"""Quantity strings: ``<number><suffix>`` to SI floats and back.

This is deliberately not a units library. Only the suffixes a lab operator
would type at the command line are accepted; everything internal is SI.
"""

import re

from .constants import ATOMIC_MASS
from .errors import MalformedQuantity

# suffix -> (scale to SI, dimension label)
SUFFIXES = {
    "m": (1.0, "length"),
    "mm": (1e-3, "length"),
    "um": (1e-6, "length"),
    "nm": (1e-9, "length"),
    "pm": (1e-12, "length"),
    "s": (1.0, "time"),
    "ms": (1e-3, "time"),
    "Hz": (1.0, "frequency"),
    "rad": (1.0, "angle"),
    "mrad": (1e-3, "angle"),
    "kg": (1.0, "mass"),
    "amu": (ATOMIC_MASS, "mass"),
    "m/s": (1.0, "velocity"),
    "rad/s": (1.0, "angular_velocity"),
    "mV": (1e-3, "voltage"),
}

_QUANTITY = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(\S+)\s*$"
)


def parse_quantity(text):
    """Parse a quantity string and return its value in SI units."""
    value, _ = parse_quantity_with_dimension(text)
    return value


def parse_quantity_with_dimension(text):
    """Parse a quantity string and return ``(si_value, dimension)``."""
    if not isinstance(text, str):
        raise MalformedQuantity(f"expected a string, got {type(text).__name__}")
    match = _QUANTITY.match(text)
    if match is None:
        raise MalformedQuantity(f"cannot parse quantity {text!r}")
    number, suffix = match.groups()
    try:
        scale, dimension = SUFFIXES[suffix]
    except KeyError:
        raise MalformedQuantity(f"unknown unit suffix {suffix!r} in {text!r}") from None
    return float(number) * scale, dimension


def format_quantity(value_si, suffix):
    """Render an SI value in the given suffix, round-trippable to 12 digits."""
    try:
        scale, _ = SUFFIXES[suffix]
    except KeyError:
        raise MalformedQuantity(f"unknown unit suffix {suffix!r}") from None
    return f"{value_si / scale:.15g}{suffix}"
