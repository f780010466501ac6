"""Flat ``key = value`` job files.

Example::

    # tangent bundle of the plane, twisted by 2, in line-class units
    surface = p2
    class.E = 2,7,23/2
    h0 = 24

Unknown keys are errors.  ``class.NAME`` lines build the named class map in
file order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .chern import ChernClass, parse_class
from .core import Surface, make_surface, parse_rational

__all__ = ["ConfigError", "JobConfig", "load_config", "parse_config", "parse_rank_range"]

_RANGE_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")
_INT_RE = re.compile(r"^-?\d+$")


class ConfigError(ValueError):
    """Bad job configuration; ``where`` names the file/line or flag."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class JobConfig:
    surface: str | None = None
    h2: int | None = None
    lam: Fraction | None = None
    chi_o: int | None = None
    classes: dict[str, ChernClass] = field(default_factory=dict)
    h0: int | None = None
    reg: Fraction | None = None
    rank_range: tuple[int, int] | None = None
    deg_step: Fraction | None = None
    ch2_step: Fraction | None = None
    min_radius_sq: Fraction | None = None
    beta_min: Fraction | None = None
    beta_max: Fraction | None = None
    alpha_max: Fraction | None = None
    out: str | None = None
    format: str | None = None
    jobs: int | None = None

    def build_surface(self) -> Surface:
        custom = (self.h2, self.lam)
        try:
            if self.surface is not None:
                if any(v is not None for v in custom):
                    raise ConfigError("give either a surface preset or --h2/--lambda, not both", "surface")
                return make_surface(self.surface)
            if all(v is None for v in custom):
                raise ConfigError("no surface given (use a preset or --h2 and --lambda)", "surface")
            chi_o = 1 if self.chi_o is None else self.chi_o
            return make_surface(h_sq=self.h2, lam=self.lam, chi_o=chi_o)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), "surface") from None

    def merged(self, other: "JobConfig") -> "JobConfig":
        """``other`` overrides every field it sets; classes are merged by name."""
        updates = {k: v for k, v in vars(other).items() if k != "classes" and v is not None}
        out = replace(self, **updates)
        out.classes = {**self.classes, **other.classes}
        return out


def parse_rank_range(text: str) -> tuple[int, int]:
    m = _RANGE_RE.match(text.strip())
    if not m:
        raise ValueError(f"rank range must look like a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ValueError(f"empty rank range {text!r}")
    return lo, hi


def _int(text: str) -> int:
    if not _INT_RE.match(text):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(text)


def _format(text: str) -> str:
    if text not in ("text", "csv", "svg", "json"):
        raise ValueError(f"unknown format {text!r}")
    return text


_FIELDS = {
    "surface": ("surface", str),
    "h2": ("h2", _int),
    "lambda": ("lam", parse_rational),
    "chi-o": ("chi_o", _int),
    "h0": ("h0", _int),
    "reg": ("reg", parse_rational),
    "rank-range": ("rank_range", parse_rank_range),
    "deg-step": ("deg_step", parse_rational),
    "ch2-step": ("ch2_step", parse_rational),
    "min-radius-sq": ("min_radius_sq", parse_rational),
    "beta-min": ("beta_min", parse_rational),
    "beta-max": ("beta_max", parse_rational),
    "alpha-max": ("alpha_max", parse_rational),
    "out": ("out", str),
    "format": ("format", _format),
    "jobs": ("jobs", _int),
}


def set_field(cfg: JobConfig, key: str, value: str, where: str):
    if key.startswith("class."):
        name = key[len("class."):]
        if not name:
            raise ConfigError("class entries need a name, e.g. class.E", where)
        try:
            cfg.classes[name] = parse_class(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), where) from None
        return
    if key not in _FIELDS:
        raise ConfigError(f"unknown key {key!r}", where)
    attr, conv = _FIELDS[key]
    try:
        setattr(cfg, attr, conv(value))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: {exc}", where) from None


def parse_config(text: str, source: str = "<config>") -> JobConfig:
    cfg = JobConfig()
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", where)
        key, value = key.strip(), value.strip()
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first on line {seen[key]})", where)
        seen[key] = lineno
        set_field(cfg, key, value, where)
    return cfg


def load_config(path: str) -> JobConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", path) from None
    return parse_config(text, path)
