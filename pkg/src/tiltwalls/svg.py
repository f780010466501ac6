"""Hand-written SVG pictures of the (beta, alpha) half-plane.

Coordinates become floats only here; every drawn element is preceded by a
comment carrying its exact rational data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .core import as_rational, format_rational
from .walls import Semicircle, VerticalLine

__all__ = ["Window", "WallDiagram"]

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">
<defs><clipPath id="slice"><rect x="{left}" y="{top}" width="{pw}" height="{ph}"/></clipPath></defs>
<rect x="0" y="0" width="{width}" height="{height}" style="fill:#ffffff"/>
"""

POSTAMBLE = "</svg>\n"


@dataclass(frozen=True)
class Window:
    beta_min: Fraction
    beta_max: Fraction
    alpha_max: Fraction

    def __post_init__(self):
        for name in ("beta_min", "beta_max", "alpha_max"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.beta_min >= self.beta_max:
            raise ValueError("window needs beta_min < beta_max")
        if self.alpha_max <= 0:
            raise ValueError("window needs alpha_max > 0")

    def meets_semicircle(self, w: Semicircle) -> bool:
        # (c - rho, c + rho) overlaps (beta_min, beta_max), decided on squares
        left = w.center - self.beta_max
        right = self.beta_min - w.center
        return (left < 0 or left * left < w.radius_sq) and (right < 0 or right * right < w.radius_sq)

    def meets_line(self, w: VerticalLine) -> bool:
        return self.beta_min < w.beta < self.beta_max


class WallDiagram:
    """Collects walls and writes them as one SVG document."""

    margin = 40
    plot_width = 720

    def __init__(self, window: Window, title: str = ""):
        self.window = window
        self.title = title
        span_b = float(window.beta_max - window.beta_min)
        self.scale = self.plot_width / span_b
        self.plot_height = max(80.0, float(window.alpha_max) * self.scale)
        self.items: list[str] = []

    def _x(self, beta) -> float:
        return self.margin + (float(beta) - float(self.window.beta_min)) * self.scale

    def _y(self, alpha) -> float:
        return self.margin + self.plot_height - float(alpha) * self.scale

    def axis(self):
        y = self._y(0)
        self.items.append(f"<!-- beta axis alpha=0 beta in [{format_rational(self.window.beta_min)}, "
                          f"{format_rational(self.window.beta_max)}] -->")
        self.items.append(
            f'<line x1="{self._x(self.window.beta_min):.4f}" y1="{y:.4f}" '
            f'x2="{self._x(self.window.beta_max):.4f}" y2="{y:.4f}" '
            'style="stroke:#000000;stroke-width:1"/>'
        )

    def vertical(self, w: VerticalLine, label: str = "vertical wall") -> bool:
        if not self.window.meets_line(w):
            return False
        x = self._x(w.beta)
        self.items.append(f"<!-- {escape(label)} beta={format_rational(w.beta)} -->")
        self.items.append(
            f'<line x1="{x:.4f}" y1="{self._y(0):.4f}" x2="{x:.4f}" y2="{self._y(self.window.alpha_max):.4f}" '
            'style="stroke:#1f5fa8;stroke-width:1;stroke-dasharray:6,3"/>'
        )
        return True

    def semicircle(self, w: Semicircle, label: str = "candidate", highlight: bool = False) -> bool:
        if not self.window.meets_semicircle(w):
            return False
        rho = float(w.radius_sq) ** 0.5
        c = float(w.center)
        r_px = rho * self.scale
        y0 = self._y(0)
        colour, width = ("#c0392b", 2.5) if highlight else ("#555555", 1)
        self.items.append(
            f"<!-- {escape(label)} center={format_rational(w.center)} radius_sq={format_rational(w.radius_sq)} -->"
        )
        self.items.append(
            f'<path d="M {self._x(c - rho):.4f} {y0:.4f} A {r_px:.4f} {r_px:.4f} 0 0 1 {self._x(c + rho):.4f} {y0:.4f}" '
            f'clip-path="url(#slice)" style="fill:none;stroke:{colour};stroke-width:{width}"/>'
        )
        return True

    def render(self) -> str:
        width = self.plot_width + 2 * self.margin
        height = self.plot_height + 2 * self.margin
        head = PREAMBLE.format(
            width=f"{width:.0f}",
            height=f"{height:.0f}",
            left=self.margin,
            top=self.margin,
            pw=self.plot_width,
            ph=f"{self.plot_height:.4f}",
        )
        body = []
        if self.title:
            body.append(
                f'<text x="{self.margin}" y="{self.margin / 2:.0f}" font-family="monospace" font-size="12">'
                f"{escape(self.title)}</text>"
            )
        return head + "\n".join(body + self.items) + "\n" + POSTAMBLE

    def save(self, path: str):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())
