"""Tilt slope on the half-plane ``{(beta, alpha) : alpha > 0}``.

Slopes are kept as numerator/denominator pairs and compared by
cross-multiplication; nothing is divided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernClass, Order, slope
from .core import INF, ExtendedRational, SlicePoint, as_rational, format_rational

__all__ = [
    "ProjectiveSlope",
    "HeartSideError",
    "tilt_slope",
    "compare_tilt",
    "heart_contains",
]


class HeartSideError(ValueError):
    """A class was compared while presented with negative tilt denominator;
    shift it (negate the class) first."""


@dataclass(frozen=True)
class ProjectiveSlope:
    numerator: Fraction
    denominator: Fraction

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def value(self) -> ExtendedRational:
        """The slope itself, ``INF`` on a zero denominator."""
        if self.denominator == 0:
            return INF
        return self.numerator / self.denominator

    def __str__(self):
        return f"[{format_rational(self.numerator)} : {format_rational(self.denominator)}]"


def tilt_slope(x: ChernClass, p: SlicePoint) -> ProjectiveSlope:
    b, a2 = p.beta, p.alpha_sq
    num = x.ch2 - b * x.deg + (b * b - a2) / 2 * x.rank
    den = x.deg - b * x.rank
    return ProjectiveSlope(num, den)


def compare_tilt(x: ChernClass, y: ChernClass, p: SlicePoint) -> Order:
    """Order of the tilt slopes of ``x`` and ``y`` at ``p``.

    Both classes must sit on the heart side at ``p`` (tilt denominator
    ``>= 0``); a zero denominator reads as ``+inf``.
    """
    sx, sy = tilt_slope(x, p), tilt_slope(y, p)
    for name, s in (("x", sx), ("y", sy)):
        if s.denominator < 0:
            raise HeartSideError(f"class {name} has negative tilt denominator {s} at {p}")
        if s.denominator == 0 and s.numerator == 0:
            raise ValueError(f"class {name} has vanishing central charge at {p}")
    if sx.is_infinite and sy.is_infinite:
        return Order.EQUAL
    return Order.from_sign(sx.numerator * sy.denominator - sy.numerator * sx.denominator)


def heart_contains(
    x: ChernClass,
    beta,
    *,
    shifted: bool = False,
    mu_plus: ExtendedRational | None = None,
    mu_minus: ExtendedRational | None = None,
) -> bool:
    """Numerical membership of a sheaf (or its shift) in the tilted heart at ``beta``.

    ``mu_plus``/``mu_minus`` are the extreme Harder-Narasimhan slopes of the
    sheaf; they default to ``slope(x)``, i.e. a semistable sheaf.  A sheaf lies
    in the heart iff ``mu_minus > beta``; its shift iff ``mu_plus <= beta``.
    """
    beta = as_rational(beta)
    if shifted:
        mu = slope(x) if mu_plus is None else mu_plus
        return mu <= beta
    mu = slope(x) if mu_minus is None else mu_minus
    return mu > beta
