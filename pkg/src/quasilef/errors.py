"""Exception types shared across the package."""
from __future__ import annotations


class NotEffective(ValueError):
    """The class is not the class of any quasimap."""

    def __init__(self, cls):
        super().__init__(f"class {cls} is not I-effective")
        self.cls = cls


class NonPositiveDegree(ValueError):
    """A nonzero effective class has degree <= 0, so degree-bounded enumeration is infinite."""

    def __init__(self, cls, degree):
        super().__init__(f"nonzero effective class {cls} has non-positive degree {degree}")
        self.cls = cls
        self.degree = degree


class EmptyFixedLocus(ValueError):
    """The group element fixes no semistable point."""


class NonInvertible(ArithmeticError):
    """A purely nilpotent linear factor has no inverse."""
