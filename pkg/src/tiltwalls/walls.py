"""Numerical walls, their geometry, the largest-wall bounds and candidate enumeration."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .chern import ChernClass, discriminant, euler_characteristic, slope
from .core import Surface, as_rational, format_rational

__all__ = [
    "WallCoefficients",
    "Semicircle",
    "VerticalLine",
    "Empty",
    "Everything",
    "EMPTY",
    "EVERYTHING",
    "Wall",
    "LargestWallBound",
    "EnumerationConfig",
    "CandidateWall",
    "CSV_HEADER",
    "wall_coefficients",
    "classify_wall",
    "radius_sq_via_discriminant",
    "vertical_wall",
    "walls_disjoint",
    "largest_wall_bound",
    "default_rank_range",
    "enumerate_candidate_walls",
    "candidates_to_csv",
    "sqrt_upper",
]


@dataclass(frozen=True)
class WallCoefficients:
    """``x, y, z`` of the wall equation ``x a^2 + x b^2 - 2 y b + 2 z = 0``."""

    x: Fraction
    y: Fraction
    z: Fraction

    def evaluate(self, beta, alpha_sq) -> Fraction:
        beta, alpha_sq = as_rational(beta), as_rational(alpha_sq)
        return self.x * alpha_sq + self.x * beta * beta - 2 * self.y * beta + 2 * self.z


@dataclass(frozen=True)
class Semicircle:
    center: Fraction
    radius_sq: Fraction

    def __post_init__(self):
        if self.radius_sq <= 0:
            raise ValueError("a semicircle needs positive radius^2")

    def contains(self, beta, alpha_sq) -> bool:
        d = as_rational(beta) - self.center
        return as_rational(alpha_sq) > 0 and d * d + alpha_sq == self.radius_sq

    def __str__(self):
        return f"Semicircle(center={format_rational(self.center)}, radius_sq={format_rational(self.radius_sq)})"


@dataclass(frozen=True)
class VerticalLine:
    beta: Fraction

    def __str__(self):
        return f"VerticalLine(beta={format_rational(self.beta)})"


@dataclass(frozen=True)
class Empty:
    def __str__(self):
        return "Empty"


@dataclass(frozen=True)
class Everything:
    def __str__(self):
        return "Everything"


EMPTY = Empty()
EVERYTHING = Everything()

Wall = Union[Semicircle, VerticalLine, Empty, Everything]


def wall_coefficients(e: ChernClass, f: ChernClass) -> WallCoefficients:
    return WallCoefficients(
        x=e.deg * f.rank - f.deg * e.rank,
        y=e.ch2 * f.rank - f.ch2 * e.rank,
        z=e.ch2 * f.deg - f.ch2 * e.deg,
    )


def classify_wall(e: ChernClass, f: ChernClass) -> Wall:
    c = wall_coefficients(e, f)
    if c.x != 0:
        center = c.y / c.x
        radius_sq = center * center - 2 * c.z / c.x
        return Semicircle(center, radius_sq) if radius_sq > 0 else EMPTY
    if c.y != 0:
        # x = 0 leaves -2 y beta + 2 z = 0
        return VerticalLine(c.z / c.y)
    return EVERYTHING if c.z == 0 else EMPTY


def radius_sq_via_discriminant(e: ChernClass, center) -> Fraction:
    """Radius squared of the wall of ``e`` centred at ``center``, through the
    discriminant: ``(mu - c)^2 - disc / rank^2``."""
    if e.rank == 0:
        raise ValueError("rank-zero classes have no discriminant form of the radius")
    d = slope(e) - as_rational(center)
    return d * d - discriminant(e) / (e.rank * e.rank)


def vertical_wall(e: ChernClass) -> VerticalLine:
    if e.rank == 0:
        raise ValueError("rank-zero classes have no vertical wall")
    return VerticalLine(slope(e))


def walls_disjoint(w1: Wall, w2: Wall) -> bool:
    """True iff the two walls share no point with ``alpha > 0``.

    Identical walls are not disjoint.
    """
    for w in (w1, w2):
        if not isinstance(w, (Semicircle, VerticalLine)):
            raise ValueError(f"disjointness is only defined for proper walls, got {w}")
    if isinstance(w1, VerticalLine) and isinstance(w2, VerticalLine):
        return w1.beta != w2.beta
    if isinstance(w1, VerticalLine) or isinstance(w2, VerticalLine):
        line, circ = (w1, w2) if isinstance(w1, VerticalLine) else (w2, w1)
        d = line.beta - circ.center
        return d * d >= circ.radius_sq
    if w1 == w2:
        return False
    # circles centred on the axis meet off the axis iff
    # |r1 - r2| < |c1 - c2| < r1 + r2, i.e. (dc^2 - r1^2 - r2^2)^2 < 4 r1^2 r2^2
    dc = w1.center - w2.center
    a = dc * dc - w1.radius_sq - w2.radius_sq
    return a * a >= 4 * w1.radius_sq * w2.radius_sq


@dataclass(frozen=True)
class LargestWallBound:
    """Bounds on the largest actual wall; ``None`` marks a provably empty case.

    ``case1_radius_sq`` bounds the radius *squared*, ``case2_radius`` the radius.
    """

    case1_radius_sq: Fraction | None
    case2_radius: Fraction | None

    def max_radius_sq(self) -> Fraction | None:
        vals = [v for v in (self.case1_radius_sq, self.case2_sq) if v is not None]
        return max(vals) if vals else None

    @property
    def case2_sq(self) -> Fraction | None:
        return None if self.case2_radius is None else self.case2_radius ** 2


def largest_wall_bound(e: ChernClass) -> LargestWallBound:
    if e.rank <= 0:
        raise ValueError("the largest-wall bound needs a sheaf class of positive rank")
    disc = discriminant(e)
    if disc < 0:
        raise ValueError(f"the largest-wall bound needs disc >= 0, got {disc}")
    if disc == 0:
        return LargestWallBound(None, None)
    r = e.rank
    case1 = disc / (4 * (r + 1))
    case2 = None if (disc == 1 and r == 1) else abs(disc - Fraction(1, r * r)) / 2
    return LargestWallBound(case1, case2)


@dataclass(frozen=True)
class EnumerationConfig:
    rank_range: tuple[int, int]
    deg_step: Fraction = Fraction(1)
    ch2_step: Fraction = Fraction(1, 2)
    min_radius_sq: Fraction = Fraction(0)

    def __post_init__(self):
        lo, hi = self.rank_range
        if lo > hi:
            raise ValueError(f"empty rank range {lo}..{hi}")
        object.__setattr__(self, "deg_step", as_rational(self.deg_step))
        object.__setattr__(self, "ch2_step", as_rational(self.ch2_step))
        object.__setattr__(self, "min_radius_sq", as_rational(self.min_radius_sq))
        if self.deg_step <= 0 or self.ch2_step <= 0:
            raise ValueError("lattice steps must be positive")
        if self.min_radius_sq < 0:
            raise ValueError("min_radius_sq must be non-negative")


@dataclass(frozen=True)
class CandidateWall:
    """A numerical candidate; no claim that it is an actual wall."""

    destabilizer: ChernClass
    wall: Semicircle
    filters_passed: frozenset[str] = field(default_factory=frozenset)

    def sort_key(self):
        f = self.destabilizer
        return (-self.wall.radius_sq, f.rank, f.deg, 2 * f.ch2)

    def csv_row(self) -> list[str]:
        f = self.destabilizer
        return [
            str(f.rank),
            format_rational(f.deg),
            format_rational(f.ch2),
            format_rational(self.wall.center),
            format_rational(self.wall.radius_sq),
            ";".join(sorted(self.filters_passed)),
        ]


CSV_HEADER = ["rank", "deg", "ch2", "center", "radius_sq", "filters"]


def default_rank_range(s: Surface, e: ChernClass) -> tuple[int, int]:
    chi = euler_characteristic(s, e)
    width = abs(e.rank) + math.ceil(abs(chi)) + 2
    return (-width, width)


def sqrt_upper(q: Fraction) -> Fraction:
    """A rational upper bound for ``sqrt(q)``, ``q >= 0``."""
    n, d = q.numerator, q.denominator
    # sqrt(n/d) = sqrt(n d) / d
    root = math.isqrt(n * d)
    if root * root < n * d:
        root += 1
    return Fraction(root, d)


def _floor_to_step(v: Fraction, step: Fraction) -> int:
    return math.floor(v / step)


def _ceil_to_step(v: Fraction, step: Fraction) -> int:
    return math.ceil(v / step)


def _candidates_for_rank(e: ChernClass, r2: int, cfg: EnumerationConfig) -> list[CandidateWall]:
    """All candidates ``f`` of rank ``r2``.

    Writing ``D = deg - c rank`` for the twisted degree of ``e`` at the wall
    centre ``c``, ``s = r2 / rank`` and ``delta = d2 - r2 mu``, the three
    filters force ``delta^2 <= max(s^2, (1-s)^2) disc`` and an upper bound on
    ``D`` depending on ``delta``.  These give a finite box in ``(d2, ch2_2)``
    that is then scanned and filtered exactly.
    """
    r = e.rank
    disc = discriminant(e)
    if disc <= 0:
        return []
    mu = e.deg / r
    s = Fraction(r2, r)
    spread = sqrt_upper(max(s * s, (1 - s) ** 2) * disc)
    out = []
    lo_d = _ceil_to_step(r2 * mu - spread, cfg.deg_step)
    hi_d = _floor_to_step(r2 * mu + spread, cfg.deg_step)
    for kd in range(lo_d, hi_d + 1):
        d2 = kd * cfg.deg_step
        delta = d2 - r2 * mu
        if delta == 0:
            continue  # x = 0: vertical or degenerate, never a semicircle
        if delta > 0:
            if s >= 1:
                continue
            t = 1 - s
            d_max = (delta * delta + t * t * disc) / (2 * t * delta)
        else:
            if s <= 0:
                continue
            d_max = (delta * delta + s * s * disc) / (2 * s * -delta)
        # centre c = mu - D / r with 0 <= D <= d_max
        c_a, c_b = mu, mu - d_max / r
        c_lo, c_hi = min(c_a, c_b), max(c_a, c_b)
        x = e.deg * r2 - d2 * r
        # c = y / x with y = ch2 r2 - ch2_2 r, so ch2_2 = (ch2 r2 - c x) / r
        ends = [(e.ch2 * r2 - c * x) / r for c in (c_lo, c_hi)]
        lo_c = _ceil_to_step(min(ends), cfg.ch2_step)
        hi_c = _floor_to_step(max(ends), cfg.ch2_step)
        for kc in range(lo_c, hi_c + 1):
            f = ChernClass(r2, d2, kc * cfg.ch2_step)
            cand = _check_candidate(e, f, cfg)
            if cand is not None:
                out.append(cand)
    return out


def _check_candidate(e: ChernClass, f: ChernClass, cfg: EnumerationConfig) -> CandidateWall | None:
    wall = classify_wall(e, f)
    if not isinstance(wall, Semicircle) or wall.radius_sq < cfg.min_radius_sq:
        return None
    if discriminant(f) < 0 or discriminant(e - f) < 0:
        return None
    c = wall.center
    df, de = f.deg - c * f.rank, e.deg - c * e.rank
    if not 0 <= df <= de:
        return None
    tags = {"semicircle", "bogomolov", "sandwich"}
    if e.rank > 0:
        if f.rank > e.rank:
            tags.add("case1")
        elif 0 < f.rank:
            tags.add("case2")
    return CandidateWall(f, wall, frozenset(tags))


def _rank_job(args):
    e, r2, cfg = args
    return _candidates_for_rank(e, r2, cfg)


def enumerate_candidate_walls(e: ChernClass, config: EnumerationConfig, *, workers: int = 1) -> list[CandidateWall]:
    """Lattice classes whose wall with ``e`` passes the numerical filters.

    Filters: the wall is a semicircle with ``radius_sq >= min_radius_sq``;
    both ``f`` and ``e - f`` satisfy Bogomolov; at the wall centre
    ``0 <= deg(f) - c rank(f) <= deg(e) - c rank(e)``.  Output is sorted by
    radius descending, ties by ``(rank, deg, 2 ch2)``, independent of
    ``workers``.
    """
    if e.rank == 0:
        raise ValueError("enumeration needs a class of nonzero rank")
    if discriminant(e) < 0:
        raise ValueError("enumeration needs disc(e) >= 0")
    lo, hi = config.rank_range
    jobs = [(e, r2, config) for r2 in range(lo, hi + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_rank_job, jobs))
    else:
        chunks = [_rank_job(j) for j in jobs]
    found = [c for chunk in chunks for c in chunk]
    found.sort(key=CandidateWall.sort_key)
    return found


def candidates_to_csv(candidates: Iterable[CandidateWall]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cand in candidates:
        writer.writerow(cand.csv_row())
    return buf.getvalue()
