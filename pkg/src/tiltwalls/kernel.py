"""Kernel-sheaf classes and the numerical side of the kernel stability criterion.

For a globally generated ``E`` with ``h0`` sections the kernel ``M`` sits in
``0 -> M -> O^h0 -> E -> 0``.  Everything here is evaluated on classes only;
global generation, torsion-freeness and Gieseker stability of ``E`` are the
caller's responsibility.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chern import STRUCTURE_SHEAF, ChernClass, discriminant, euler_characteristic, slope
from .core import Surface, as_rational, format_rational
from .tilt import SlicePoint, tilt_slope
from .walls import Semicircle, largest_wall_bound

__all__ = [
    "Inequality",
    "Verdict",
    "WallDomination",
    "KernelReport",
    "Certificate",
    "DestabilizerCheck",
    "kernel_class",
    "destabilizing_wall",
    "slope_gap",
    "slope_gap_direct",
    "check_theorem_hypotheses",
    "destabilizer_filter",
    "twist_bound",
]


class Verdict(enum.Enum):
    ALL_HYPOTHESES_HOLD = "AllHypothesesHold"
    FAILS = "Fails"


@dataclass(frozen=True)
class Inequality:
    """One checked inequality with both sides kept exact."""

    name: str
    lhs_label: str
    lhs: Fraction | None
    relation: str
    rhs_label: str
    rhs: Fraction | None
    holds: bool
    note: str = ""

    def render(self) -> str:
        if self.lhs is None or self.rhs is None:
            body = f"{self.lhs_label} {self.relation} {self.rhs_label} : not evaluable ({self.note})"
            return f"{self.name}: {body} : FAIL"
        shown = self.relation if self.holds else _negate(self.relation)
        lhs = f"{self.lhs_label} = {format_rational(self.lhs)}" if self.lhs_label else format_rational(self.lhs)
        rhs = f"{format_rational(self.rhs)} = {self.rhs_label}" if self.rhs_label else format_rational(self.rhs)
        status = "PASS" if self.holds else "FAIL"
        return f"{self.name}: {lhs} {shown} {rhs} : {status}"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": None if self.lhs is None else format_rational(self.lhs),
            "relation": self.relation,
            "rhs": None if self.rhs is None else format_rational(self.rhs),
            "holds": self.holds,
        }


def _negate(rel: str) -> str:
    return {">=": "<", "<=": ">", "<": ">=", ">": "<="}[rel]


@dataclass(frozen=True)
class WallDomination:
    """Whether the destabilizing wall is strictly larger than each largest-wall bound.

    ``None`` means the comparison does not apply (negative discriminant or
    no destabilizing wall).
    """

    case1_ok: bool | None
    case2_ok: bool | None


@dataclass(frozen=True)
class KernelReport:
    surface: Surface
    sheaf_class: ChernClass
    kernel_class: ChernClass
    h0: int
    degree_bound: Inequality
    ch2_positive: Inequality
    discriminant_bound: Inequality
    destabilizing_wall: Semicircle | None
    wall_domination: WallDomination
    failed: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> Verdict:
        return Verdict.FAILS if self.failed else Verdict.ALL_HYPOTHESES_HOLD

    @property
    def holds(self) -> bool:
        return not self.failed

    def render(self) -> str:
        lines = [
            f"surface: {self.surface.describe()}",
            f"class E: {self.sheaf_class.literal()}",
            f"h0: {self.h0}",
            f"kernel class M: {self.kernel_class.literal()}",
            "assumed by caller: E globally generated, torsion-free, (H, K/2)-Gieseker stable",
            self.degree_bound.render(),
            self.ch2_positive.render(),
            self.discriminant_bound.render(),
        ]
        if self.destabilizing_wall is not None:
            lines.append(f"destabilizing wall W(O^h0[1], E): {self.destabilizing_wall}")
        dom = self.wall_domination
        lines.append(f"wall domination: case1={_tri(dom.case1_ok)} case2={_tri(dom.case2_ok)}")
        verdict = self.verdict.value
        if self.failed:
            verdict += "(" + ", ".join(self.failed) + ")"
        lines.append(f"verdict: {verdict}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "class": self.sheaf_class.literal(),
            "h0": self.h0,
            "kernel_class": self.kernel_class.literal(),
            "hypotheses": [i.as_dict() for i in (self.degree_bound, self.ch2_positive, self.discriminant_bound)],
            "destabilizing_wall": None
            if self.destabilizing_wall is None
            else {
                "center": format_rational(self.destabilizing_wall.center),
                "radius_sq": format_rational(self.destabilizing_wall.radius_sq),
            },
            "wall_domination": {"case1_ok": self.wall_domination.case1_ok, "case2_ok": self.wall_domination.case2_ok},
            "verdict": self.verdict.value,
            "failed": list(self.failed),
        }
        return json.dumps(doc, indent=2)


def _tri(v: bool | None) -> str:
    return "n/a" if v is None else ("PASS" if v else "FAIL")


def kernel_class(e: ChernClass, h0: int) -> ChernClass:
    if h0 < 0 or h0 < e.rank:
        raise ValueError(f"h0={h0} cannot surject onto a class of rank {e.rank}")
    return h0 * STRUCTURE_SHEAF - e


def destabilizing_wall(e: ChernClass) -> Semicircle:
    """``W(O^h0[1], E)``: endpoints ``0`` and ``2 ch2/deg``; independent of ``h0``."""
    if e.deg <= 0 or e.ch2 <= 0:
        raise ValueError("the destabilizing wall needs deg > 0 and ch2 > 0")
    c = e.ch2 / e.deg
    return Semicircle(c, c * c)


def slope_gap(e: ChernClass, epsilon) -> Fraction:
    """Tilt-slope gap between ``O^h0[1]`` and ``E`` at ``(beta0, alpha0 + eps)``,
    where ``beta0 = alpha0 = ch2/deg`` is the top of the destabilizing wall.

    Closed form ``deg^2 eps (2 ch2 + deg eps) / (2 ch2 (deg^2 - rank ch2))``.
    """
    eps = as_rational(epsilon)
    if e.deg <= 0 or e.ch2 <= 0:
        raise ValueError("slope gap needs deg > 0 and ch2 > 0")
    if eps < 0:
        raise ValueError("epsilon must be non-negative")
    d, c, r = e.deg, e.ch2, e.rank
    den = 2 * c * (d * d - r * c)
    if den == 0:
        raise ValueError("deg^2 - rank*ch2 vanishes; the gap is undefined")
    return d * d * eps * (2 * c + d * eps) / den


def slope_gap_direct(e: ChernClass, epsilon) -> Fraction:
    """The same gap as two tilt slopes subtracted; used as a cross-check."""
    eps = as_rational(epsilon)
    top = e.ch2 / e.deg
    p = SlicePoint(top, (top + eps) ** 2)
    a, b = tilt_slope(-STRUCTURE_SHEAF, p), tilt_slope(e, p)
    return a.numerator / a.denominator - b.numerator / b.denominator


def check_theorem_hypotheses(s: Surface, e: ChernClass, h0: int) -> KernelReport:
    """Evaluate the three numerical hypotheses of the kernel stability criterion.

    Inequalities are taken literally on the supplied surface; ``K^2`` is
    ``lam^2 H^2``.  The discriminant bound is the non-strict version; the
    strict version shows up as the wall-domination check.
    """
    if e.rank < 1:
        raise ValueError("the criterion needs rank(E) >= 1")
    m = kernel_class(e, h0)
    r, d, c = e.rank, e.deg, e.ch2
    disc = discriminant(e)

    cap = s.k_sq * (h0 - r)
    if d > 0:
        degree_bound = Inequality("degree bound", "deg", d, "<=", "K^2 (h0 - rank)", cap, d <= cap)
    else:
        degree_bound = Inequality("degree bound", "deg", d, ">", "", Fraction(0), False)
    ch2_positive = Inequality("ch2 positive", "ch2", c, ">", "", Fraction(0), c > 0)
    if d != 0:
        lhs = 2 * c / d + Fraction(1, r * r)
        disc_bound = Inequality(
            "discriminant bound", "2*ch2/deg + 1/r^2", lhs, ">=", "disc", disc, lhs >= disc,
        )
    else:
        disc_bound = Inequality(
            "discriminant bound", "2*ch2/deg + 1/r^2", None, ">=", "disc", disc, False,
            note="deg = 0",
        )

    failed = tuple(
        ineq.name for ineq in (degree_bound, ch2_positive, disc_bound) if not ineq.holds
    )
    wall = destabilizing_wall(e) if d > 0 and c > 0 else None
    domination = WallDomination(None, None)
    if wall is not None and disc >= 0:
        bounds = largest_wall_bound(e)
        radius_sq = wall.radius_sq
        # case 1 is a bound on rho^2, case 2 on rho; both sides are positive
        case1 = bounds.case1_radius_sq is None or bounds.case1_radius_sq < radius_sq
        case2 = bounds.case2_radius is None or bounds.case2_radius < wall.center
        domination = WallDomination(case1, case2)
    return KernelReport(
        surface=s,
        sheaf_class=e,
        kernel_class=m,
        h0=h0,
        degree_bound=degree_bound,
        ch2_positive=ch2_positive,
        discriminant_bound=disc_bound,
        destabilizing_wall=wall,
        wall_domination=domination,
        failed=failed,
    )


class Certificate(enum.Enum):
    CONTRADICTION_REACHED = "ContradictionReached"
    NO_CONTRADICTION = "NoContradiction"


@dataclass(frozen=True)
class DestabilizerCheck:
    ch2_ratio_ok: bool
    ch2_ratio: tuple[Fraction, Fraction]
    chi_ratio: Fraction
    chi_sign_certificate: Certificate


def destabilizer_filter(s: Surface, n: ChernClass, m: ChernClass) -> DestabilizerCheck:
    """Numerical test of a would-be maximal destabilizing subsheaf ``n`` of ``m``.

    ``ch2_ratio_ok`` is ``ch2(n)/deg(n) <= ch2(m)/deg(m)``.  The certificate
    reports whether, presuming ``h0(n) = h2(n) = 0`` so that
    ``chi(n) = -h1(n)``, the class forces ``chi(n)/deg(n) < 0`` while
    ``deg(n) < 0``; that contradicts ``-h1(n)/deg(n) >= 0``.
    """
    if n.deg == 0 or m.deg == 0:
        raise ValueError("destabilizer filter needs nonzero degrees")
    if n.rank < 1 or m.rank < 1:
        raise ValueError("destabilizer filter needs positive ranks")
    rn, rm = n.ch2 / n.deg, m.ch2 / m.deg
    chi_ratio = euler_characteristic(s, n) / n.deg
    contradiction = n.deg < 0 and chi_ratio < 0
    cert = Certificate.CONTRADICTION_REACHED if contradiction else Certificate.NO_CONTRADICTION
    return DestabilizerCheck(rn <= rm, (rn, rm), chi_ratio, cert)


def twist_bound(e: ChernClass, reg) -> int:
    """Least integer ``d`` with
    ``d >= max(sqrt(4 disc/r^2 + 1) - mu + 1/2, disc - mu, reg)``.

    The square-root term is decided exactly: ``d`` satisfies it iff
    ``t = d + mu - 1/2 >= 0`` and ``t^2 >= 4 disc/r^2 + 1``.
    """
    if e.rank < 1:
        raise ValueError("twist bound needs rank >= 1")
    disc = discriminant(e)
    if disc < 0:
        raise ValueError("twist bound needs disc >= 0")
    reg = as_rational(reg)
    mu = slope(e)
    q = 4 * disc / (e.rank * e.rank) + 1
    shift = mu - Fraction(1, 2)

    # floor(sqrt(q)) from integer square roots, then settle exactly
    root_floor = Fraction(math.isqrt(q.numerator * q.denominator), q.denominator)
    d = math.floor(root_floor - shift) - 1
    while (d + shift) < 0 or (d + shift) ** 2 < q:
        d += 1
    return max(d, math.ceil(disc - mu), math.ceil(reg))
