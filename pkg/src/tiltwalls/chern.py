"""Numerical Chern classes ``(rank, deg_H, ch2)`` and the invariants built on them."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from .core import INF, ExtendedRational, Surface, as_rational, format_rational, parse_rational

__all__ = [
    "ChernClass",
    "Order",
    "ReducedHilbertPolynomial",
    "STRUCTURE_SHEAF",
    "parse_class",
    "linear_combine",
    "twist",
    "slope",
    "discriminant",
    "euler_characteristic",
    "bogomolov_check",
    "reduced_hilbert_polynomial",
    "gieseker_compare",
    "is_lattice_class",
]


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, a, b) -> "Order":
        if a < b:
            return cls.LESS
        if a > b:
            return cls.GREATER
        return cls.EQUAL

    @classmethod
    def from_sign(cls, value) -> "Order":
        return cls.of(value, 0)


@dataclass(frozen=True)
class ChernClass:
    """A class ``(rank, deg_H, ch2)``.

    No positivity is imposed: shifts and differences of sheaves are classes
    too.  ``-x`` is the class of ``x[1]``.
    """

    rank: int
    deg: Fraction
    ch2: Fraction

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise TypeError(f"rank must be an integer, got {self.rank!r}")
        object.__setattr__(self, "deg", as_rational(self.deg))
        object.__setattr__(self, "ch2", as_rational(self.ch2))

    def __add__(self, other: "ChernClass") -> "ChernClass":
        return ChernClass(self.rank + other.rank, self.deg + other.deg, self.ch2 + other.ch2)

    def __sub__(self, other: "ChernClass") -> "ChernClass":
        return ChernClass(self.rank - other.rank, self.deg - other.deg, self.ch2 - other.ch2)

    def __neg__(self) -> "ChernClass":
        return ChernClass(-self.rank, -self.deg, -self.ch2)

    def __mul__(self, k: int) -> "ChernClass":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return ChernClass(k * self.rank, k * self.deg, k * self.ch2)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rank == 0 and self.deg == 0 and self.ch2 == 0

    def literal(self) -> str:
        return f"{self.rank},{format_rational(self.deg)},{format_rational(self.ch2)}"

    def __str__(self):
        return f"({self.rank}, {format_rational(self.deg)}, {format_rational(self.ch2)})"


STRUCTURE_SHEAF = ChernClass(1, Fraction(0), Fraction(0))

_INT_RE = re.compile(r"^-?\d+$")


def parse_class(text: str) -> ChernClass:
    """Parse the literal ``"r,d,c"``, e.g. ``"2,7,23/2"``."""
    parts = text.strip().split(",")
    if len(parts) != 3:
        raise ValueError(f"class literal needs three fields r,d,c: {text!r}")
    rank_text, deg_text, ch2_text = (p.strip() for p in parts)
    if not _INT_RE.match(rank_text):
        raise ValueError(f"rank must be an integer: {rank_text!r}")
    return ChernClass(int(rank_text), parse_rational(deg_text), parse_rational(ch2_text))


def linear_combine(a: int, x: ChernClass, b: int, y: ChernClass) -> ChernClass:
    return a * x + b * y


def twist(s: Surface, x: ChernClass, k) -> ChernClass:
    """``ch(x) * exp(k H)``; ``k`` may be any rational."""
    k = as_rational(k)
    return ChernClass(
        x.rank,
        x.deg + k * x.rank * s.h_sq,
        x.ch2 + k * x.deg + k * k * x.rank * s.h_sq / 2,
    )


def slope(x: ChernClass) -> ExtendedRational:
    if x.rank == 0:
        return INF
    return x.deg / x.rank


def discriminant(x: ChernClass) -> Fraction:
    """``deg^2 - 2 ch2 rank``."""
    return x.deg * x.deg - 2 * x.ch2 * x.rank


def euler_characteristic(s: Surface, x: ChernClass) -> Fraction:
    # Riemann-Roch on a surface with -K = lam H: chi = ch2 - K.ch1/2 + rank chi(O).
    return x.ch2 + s.lam * x.deg / 2 + x.rank * s.chi_o


def bogomolov_check(x: ChernClass) -> bool:
    return discriminant(x) >= 0


def is_lattice_class(x: ChernClass) -> bool:
    return x.deg.denominator == 1 and (2 * x.ch2).denominator == 1


@dataclass(frozen=True)
class ReducedHilbertPolynomial:
    """``chi(x(tH + D)) / rank`` as ``c2 t^2 + c1 t + c0``; ``coefficients`` is
    ``None`` for the ``+inf`` polynomial of a rank-zero class."""

    coefficients: tuple[Fraction, Fraction, Fraction] | None

    @property
    def is_infinite(self) -> bool:
        return self.coefficients is None

    def __call__(self, t) -> ExtendedRational:
        if self.coefficients is None:
            return INF
        c2, c1, c0 = self.coefficients
        t = as_rational(t)
        return (c2 * t + c1) * t + c0

    def __str__(self):
        if self.coefficients is None:
            return "+inf"
        c2, c1, c0 = map(format_rational, self.coefficients)
        return f"{c2}*t^2 + {c1}*t + {c0}"


def reduced_hilbert_polynomial(s: Surface, x: ChernClass, delta=0) -> ReducedHilbertPolynomial:
    """Reduced Hilbert polynomial twisted by ``D = delta * H``.

    The Gieseker twist ``D = K/2`` corresponds to ``delta = -lam/2``.
    """
    if x.rank == 0:
        return ReducedHilbertPolynomial(None)
    delta = as_rational(delta)
    r, h = x.rank, s.h_sq
    # chi(twist(x, t + delta)) expanded in t, then divided by the rank
    c2 = Fraction(h, 2)
    c1 = x.deg / r + delta * h + s.lam * h / 2
    c0 = (
        x.ch2 / r
        + delta * x.deg / r
        + delta * delta * h / 2
        + s.lam * x.deg / (2 * r)
        + s.lam * delta * h / 2
        + s.chi_o
    )
    return ReducedHilbertPolynomial((c2, c1, c0))


def gieseker_compare(p: ReducedHilbertPolynomial, q: ReducedHilbertPolynomial) -> Order:
    """Order of ``p`` and ``q`` for ``t >> 0``."""
    if p.is_infinite or q.is_infinite:
        return Order.of(int(p.is_infinite), int(q.is_infinite))
    for a, b in zip(p.coefficients, q.coefficients):
        if a != b:
            return Order.of(a, b)
    return Order.EQUAL
