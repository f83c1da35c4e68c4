"""Exact rational arithmetic for pitch ratios.

Everything downstream (scales, means, closures) is built on `Ratio`:
an immutable, always-reduced fraction of strictly positive integers.
Alongside it live prime factorization over {2, 3, 5}, smoothness tests
against a prime limit, and exact rational square roots.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

__all__ = [
    "MAGNITUDE_LIMIT",
    "ONE",
    "TWO",
    "Factorization",
    "Ratio",
    "RatioOverflowError",
    "Restriction",
    "THREE_LIMIT",
    "FIVE_LIMIT",
    "exact_sqrt",
    "factorize",
    "is_smooth",
    "make_ratio",
    "parse_ratio",
]

# Numerators/denominators may not exceed 128 bits in magnitude.  The
# worked closures stay tiny (denominators <= 768), but exploratory
# configurations can snowball; a hard ceiling turns that into a clean
# error instead of an ever-slower computation.
MAGNITUDE_LIMIT = 2**128


class RatioOverflowError(ArithmeticError):
    """A ratio operation produced a part larger than MAGNITUDE_LIMIT."""


_PARSE_PATTERN = re.compile(r"\A(\d+)(?:\s*[/:]\s*(\d+))?\Z")


class Ratio:
    """Canonical positive fraction: gcd(num, den) = 1, both parts >= 1.

    Supports *, /, +, integer **, total ordering and hashing consistent
    with the rational value.  Subtraction is deliberately absent — the
    domain has no zero or negative pitches, and nothing here needs it.
    """

    __slots__ = ("num", "den")

    num: int
    den: int

    def __init__(self, num: int, den: int = 1) -> None:
        if not isinstance(num, int) or not isinstance(den, int):
            raise TypeError(f"integer parts required, got {num!r}/{den!r}")
        if num <= 0 or den <= 0:
            raise ValueError(f"ratio parts must be strictly positive, got {num}/{den}")
        g = math.gcd(num, den)
        num //= g
        den //= g
        if num > MAGNITUDE_LIMIT or den > MAGNITUDE_LIMIT:
            raise RatioOverflowError(f"ratio part exceeds {MAGNITUDE_LIMIT.bit_length() - 1} bits")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Ratio is immutable")

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other: Union["Ratio", int]) -> "Ratio":
        other = _coerce(other)
        return Ratio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Ratio", int]) -> "Ratio":
        other = _coerce(other)
        return Ratio(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Union["Ratio", int]) -> "Ratio":
        return _coerce(other) / self

    def __add__(self, other: Union["Ratio", int]) -> "Ratio":
        other = _coerce(other)
        return Ratio(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __pow__(self, exponent: int) -> "Ratio":
        if not isinstance(exponent, int):
            raise TypeError("only integer exponents keep a Ratio exact")
        # Reject guaranteed overflows before materializing a huge integer:
        # a part with b bits is >= 2^(b-1), so its |exponent|-th power
        # already exceeds the limit when (b-1)*|exponent| does.
        bits = max(self.num.bit_length(), self.den.bit_length())
        if (bits - 1) * abs(exponent) > MAGNITUDE_LIMIT.bit_length():
            raise RatioOverflowError("power exceeds the magnitude limit")
        if exponent >= 0:
            return Ratio(self.num**exponent, self.den**exponent)
        return Ratio(self.den**-exponent, self.num**-exponent)

    def reciprocal(self) -> "Ratio":
        return Ratio(self.den, self.num)

    # -- comparisons --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Ratio):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __lt__(self, other: Union["Ratio", int]) -> bool:
        other = _coerce(other)
        return self.num * other.den < other.num * self.den

    def __le__(self, other: Union["Ratio", int]) -> bool:
        other = _coerce(other)
        return self.num * other.den <= other.num * self.den

    def __gt__(self, other: Union["Ratio", int]) -> bool:
        other = _coerce(other)
        return self.num * other.den > other.num * self.den

    def __ge__(self, other: Union["Ratio", int]) -> bool:
        other = _coerce(other)
        return self.num * other.den >= other.num * self.den

    def __hash__(self) -> int:
        # Agree with int/Fraction hashing so 2/1 and 2 collide correctly.
        return hash(Fraction(self.num, self.den))

    # -- conversions --------------------------------------------------

    def __float__(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Ratio({self.num}, {self.den})"

    def sort_key(self) -> Fraction:
        return Fraction(self.num, self.den)


ONE = Ratio(1)
TWO = Ratio(2)


def _coerce(value: Union[Ratio, int]) -> Ratio:
    if isinstance(value, Ratio):
        return value
    if isinstance(value, int):
        return Ratio(value)
    raise TypeError(f"cannot mix Ratio with {type(value).__name__}")


def make_ratio(num: int, den: int = 1) -> Ratio:
    """Canonical Ratio from two positive integers: make_ratio(6, 4) == 3/2."""
    return Ratio(num, den)


def parse_ratio(text: str) -> Ratio:
    """Parse "num/den", "num:den" or a bare integer string."""
    match = _PARSE_PATTERN.match(text.strip())
    if match is None:
        raise ValueError(f"not a ratio: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    return Ratio(num, den)


@dataclass(frozen=True)
class Restriction:
    """Prime limit: only ratios built from these primes are admitted.

    The two working limits are THREE_LIMIT ({2, 3}, the Pythagorean
    world) and FIVE_LIMIT ({2, 3, 5}, the natural world); anything
    larger can be built by passing more primes.
    """

    primes: frozenset[int]

    def __init__(self, primes) -> None:
        primes = frozenset(primes)
        if not primes:
            raise ValueError("a restriction needs at least one prime")
        if 2 not in primes:
            raise ValueError("the diapason prime 2 must be allowed")
        for p in primes:
            if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", primes)

    def __str__(self) -> str:
        return ",".join(str(p) for p in sorted(self.primes))


THREE_LIMIT = Restriction({2, 3})
FIVE_LIMIT = Restriction({2, 3, 5})


class Factorization(NamedTuple):
    """r = 2^exp2 * 3^exp3 * 5^exp5 * residual, residual coprime to 2, 3, 5."""

    exp2: int
    exp3: int
    exp5: int
    residual: Ratio

    def recompose(self) -> Ratio:
        num, den = self.residual.num, self.residual.den
        for prime, exp in ((2, self.exp2), (3, self.exp3), (5, self.exp5)):
            if exp >= 0:
                num *= prime**exp
            else:
                den *= prime**-exp
        return Ratio(num, den)


def _strip(n: int, prime: int) -> tuple[int, int]:
    """Divide out `prime` completely; return (exponent, remaining cofactor)."""
    exp = 0
    while n % prime == 0:
        n //= prime
        exp += 1
    return exp, n


def factorize(r: Ratio) -> Factorization:
    """Exponents of 2, 3, 5 in r (denominator primes count negative)."""
    exps = []
    num, den = r.num, r.den
    for prime in (2, 3, 5):
        up, num = _strip(num, prime)
        down, den = _strip(den, prime)
        exps.append(up - down)  # num and den are coprime, so one of the two is 0
    return Factorization(exps[0], exps[1], exps[2], Ratio(num, den))


def is_smooth(r: Ratio, restriction: Restriction) -> bool:
    """True iff numerator and denominator factor entirely over the allowed primes."""
    for n in (r.num, r.den):
        for prime in restriction.primes:
            _, n = _strip(n, prime)
        if n != 1:
            return False
    return True


def exact_sqrt(r: Ratio) -> Ratio | None:
    """The Ratio s with s*s == r, or None when no rational root exists.

    9/8 has none: the whole tone cannot be split into two equal
    rational intervals (Zarlino's indivisibility).
    """
    sn = math.isqrt(r.num)
    sd = math.isqrt(r.den)
    if sn * sn == r.num and sd * sd == r.den:
        return Ratio(sn, sd)
    return None
