"""Deformed hexagonal tessellations of closed surfaces, their length functions
and the bracket matrix of dual curves."""

__version__ = "0.1.0"

from .errors import HexspineError, NumericInvariantError, PreconditionError  # noqa: E402
from .hexagon import build_hexagon  # noqa: E402
from .pants import pants_metrics  # noqa: E402
from .tess import CombMap, coxeter_preset, validate_axioms  # noqa: E402

__all__ = [
    "__version__",
    "CombMap",
    "HexspineError",
    "NumericInvariantError",
    "PreconditionError",
    "build_hexagon",
    "coxeter_preset",
    "pants_metrics",
    "validate_axioms",
]
