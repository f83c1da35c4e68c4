"""The three proportional means and the string-length/frequency duality.

Arithmetic and harmonic means of positive rationals are rational and
computed exactly.  The geometric mean usually is not: it comes back as
an (exact-if-possible, float-always) pair, and every predicate that
involves it works on squares so no floating point sneaks into an
exactness decision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .exact import Ratio, exact_sqrt

__all__ = [
    "GeometricMean",
    "MeanKind",
    "StringModel",
    "duality_check",
    "frequency_of_length",
    "is_proportion",
    "mean_arithmetic",
    "mean_geometric",
    "mean_harmonic",
    "mean_of_kind",
]


class MeanKind(enum.Enum):
    ARITHMETIC = "A"
    GEOMETRIC = "G"
    HARMONIC = "H"


def mean_arithmetic(a: Ratio, b: Ratio) -> Ratio:
    """(a + b) / 2, exact."""
    return (a + b) / 2


def mean_harmonic(a: Ratio, b: Ratio) -> Ratio:
    """2ab / (a + b), exact."""
    return a * b * 2 / (a + b)


class GeometricMean(NamedTuple):
    exact: Ratio | None
    approx: float


def mean_geometric(a: Ratio, b: Ratio) -> GeometricMean:
    """sqrt(a*b): exact Ratio when a*b is a perfect rational square, float always."""
    product = a * b
    return GeometricMean(exact_sqrt(product), math.sqrt(float(product)))


def mean_of_kind(a: Ratio, b: Ratio, kind: MeanKind) -> Ratio | None:
    """The exact mean of the given kind, or None (geometric, irrational case)."""
    if kind is MeanKind.ARITHMETIC:
        return mean_arithmetic(a, b)
    if kind is MeanKind.HARMONIC:
        return mean_harmonic(a, b)
    return mean_geometric(a, b).exact


def is_proportion(a: Ratio, m: Ratio, b: Ratio, kind: MeanKind) -> bool:
    """Does m sit between a and b in the given proportion, exactly?

    Arithmetic: m - a = b - m.  Harmonic: (m - a)/(b - m) = a/b.  Both
    amount to m being the corresponding mean.  Geometric: a:m = m:b,
    tested as m*m == a*b so irrational roots never enter.
    """
    if kind is MeanKind.GEOMETRIC:
        return m * m == a * b
    expected = mean_of_kind(a, b, kind)
    return expected is not None and m == expected


@dataclass(frozen=True)
class StringModel:
    """A vibrating string: frequency = kappa / length."""

    kappa: Ratio = Ratio(1)


def frequency_of_length(model: StringModel, length: Ratio) -> Ratio:
    return model.kappa / length


def duality_check(model: StringModel, a: Ratio, b: Ratio) -> bool:
    """Sounding two string lengths: the harmonic-mean length vibrates at
    the arithmetic mean of their frequencies.  Holds identically; this
    just evaluates both sides so the identity is executable.
    """
    length = mean_harmonic(a, b)
    lhs = frequency_of_length(model, length)
    rhs = mean_arithmetic(frequency_of_length(model, a), frequency_of_length(model, b))
    return lhs == rhs
