"""Exact quasimap I-functions for abelian complete-intersection GIT presentations."""
from .errors import NonInvertible, NonPositiveDegree, NotEffective
from .presentation import Presentation, RationalClass, pairing, validate

__all__ = [
    "NonInvertible",
    "NonPositiveDegree",
    "NotEffective",
    "Presentation",
    "RationalClass",
    "pairing",
    "validate",
    "data_path",
]
__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Path of a bundled example presentation, e.g. ``data_path("quartic_counterexample.json")``."""
    from importlib.resources import files

    return str(files(__package__) / "data" / name)
