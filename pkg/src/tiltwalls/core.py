"""Exact scalars, surface constants and points of the (beta, alpha) half-plane.

Every quantity in the engine is a :class:`fractions.Fraction`.  Points of the
slice are stored through ``alpha_sq`` so that wall membership stays a rational
predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = [
    "Fraction",
    "PlusInfinity",
    "INF",
    "ExtendedRational",
    "Surface",
    "SlicePoint",
    "as_rational",
    "parse_rational",
    "format_rational",
    "make_surface",
    "in_slice",
]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


@total_ordering
class PlusInfinity:
    """The value ``+inf`` used for slopes of rank-zero classes.

    Compares greater than every rational and equal only to itself.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("tiltwalls.+inf")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __reduce__(self):
        return (PlusInfinity, ())


INF = PlusInfinity()

ExtendedRational = Union[Fraction, PlusInfinity]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (no whitespace, sign on the numerator)."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(value: ExtendedRational) -> str:
    if value is INF:
        return "+inf"
    return str(Fraction(value))


@dataclass(frozen=True)
class Surface:
    """Numerical data of a polarized surface with ``-K == lam * H``.

    ``h_sq`` is ``H^2``, ``lam`` the proportionality constant, ``chi_o`` is
    ``chi(O_X)``.
    """

    h_sq: int
    lam: Fraction
    chi_o: int = 1
    name: str = ""

    def __post_init__(self):
        if isinstance(self.h_sq, bool) or not isinstance(self.h_sq, int):
            raise TypeError("h_sq must be an integer")
        if self.h_sq < 1:
            raise ValueError(f"H^2 must be positive, got {self.h_sq}")
        object.__setattr__(self, "lam", as_rational(self.lam))
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if isinstance(self.chi_o, bool) or not isinstance(self.chi_o, int):
            raise TypeError("chi_o must be an integer")

    @property
    def k_sq(self) -> Fraction:
        """``K_X^2 = lam^2 * H^2``."""
        return self.lam * self.lam * self.h_sq

    def describe(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return (
            f"{label}H^2={self.h_sq}, lambda={format_rational(self.lam)}, "
            f"chi(O)={self.chi_o}, K^2={format_rational(self.k_sq)}"
        )


def make_surface(preset: str | None = None, *, h_sq=None, lam=None, chi_o=1) -> Surface:
    """Build a surface from a preset or from explicit constants.

    Presets: ``del-pezzo:d`` (``1 <= d <= 9``, polarized by ``-K``) and
    ``p2`` (the plane polarized by a line, so ``-K = 3H``).
    """
    if preset is not None:
        if h_sq is not None or lam is not None:
            raise ValueError("give either a preset or explicit constants, not both")
        if preset == "p2":
            return Surface(1, Fraction(3), 1, name="p2")
        kind, _, arg = preset.partition(":")
        if kind != "del-pezzo" or not arg:
            raise ValueError(f"unknown surface preset {preset!r}")
        try:
            degree = int(arg)
        except ValueError:
            raise ValueError(f"bad Del Pezzo degree {arg!r}") from None
        if not 1 <= degree <= 9:
            raise ValueError(f"Del Pezzo degree must lie in 1..9, got {degree}")
        return Surface(degree, Fraction(1), 1, name=preset)
    if h_sq is None or lam is None:
        raise ValueError("custom surfaces need both h_sq and lambda")
    return Surface(int(h_sq), as_rational(lam), int(chi_o))


def in_slice(beta, alpha_sq) -> bool:
    """True iff ``(beta, alpha_sq)`` lies in the open half-plane."""
    as_rational(beta)
    return as_rational(alpha_sq) > 0


@dataclass(frozen=True)
class SlicePoint:
    beta: Fraction
    alpha_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", as_rational(self.beta))
        object.__setattr__(self, "alpha_sq", as_rational(self.alpha_sq))
        if not in_slice(self.beta, self.alpha_sq):
            raise ValueError(f"alpha^2 must be positive, got {self.alpha_sq}")

    def __str__(self):
        return f"(beta={format_rational(self.beta)}, alpha^2={format_rational(self.alpha_sq)})"
