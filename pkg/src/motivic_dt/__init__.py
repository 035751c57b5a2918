"""Exact motivic classes, SNC motivic integration and the Hilb^n(A^3) DT series."""

from .parser import ParseError, parse
from .ring import (
    Atom,
    AtomTable,
    BundleGenerator,
    HalfInt,
    MissingData,
    MotivicClass,
    RingError,
    Term,
    UnsupportedSmash,
    euler_specialize,
    print_canonical,
    smash,
    upsilon,
    weight_specialize,
)

__all__ = [
    "Atom", "AtomTable", "BundleGenerator", "HalfInt", "MissingData",
    "MotivicClass", "ParseError", "RingError", "Term", "UnsupportedSmash",
    "euler_specialize", "parse", "print_canonical", "smash", "upsilon",
    "weight_specialize",
]
