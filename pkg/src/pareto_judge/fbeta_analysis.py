"""Preference-sweep analysis: F-beta curves over a beta grid and SVG figures.

A beta grid sweeps the recall-vs-precision preference; each classifier gives
one curve, and a solution front gives the upper envelope over its members,
tracking which member wins at each preference. Renderers emit self-contained
deterministic SVG 1.1 documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _svg
from ._io import atomic_write_text
from .confusion_metrics import ConfusionMatrix, fbeta
from .indicators import hypervolume, sdr, ndr
from .objective_space import ObjectivePoint, SolutionSet, strictly_dominates

__all__ = [
    "BetaGrid",
    "FbetaCurve",
    "default_beta_grid",
    "fbeta_curve",
    "fbeta_envelope",
    "isocurve_y",
    "render_fbeta_plot",
    "render_region_plot",
    "render_isocurves",
    "HV_FILL",
    "DOMINATING_FILL",
    "DOMINATED_FILL",
    "NEUTRAL_FILL",
]

HV_FILL = "#9ecae1"
DOMINATING_FILL = "#2ca02c"
DOMINATED_FILL = "#d62728"
NEUTRAL_FILL = "#7f7f7f"

REGION_MODES = ("hypervolume", "dominance")
ISOCURVE_METRICS = ("gmean", "f1")

_ISOCURVE_SAMPLES = 257


@dataclass(frozen=True)
class BetaGrid:
    """A strictly increasing grid of positive beta values."""

    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        betas = tuple(float(b) for b in self.betas)
        if not betas:
            raise ValueError("beta grid must not be empty")
        for b in betas:
            if not math.isfinite(b) or b <= 0.0:
                raise ValueError(f"beta values must be finite and positive, got {b!r}")
        if any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
            raise ValueError("beta grid must be strictly increasing")
        object.__setattr__(self, "betas", betas)

    @classmethod
    def log_spaced(cls, lo: float, hi: float, count: int) -> "BetaGrid":
        """count points spaced uniformly in log(beta) between lo and hi."""
        if count < 2:
            raise ValueError(f"grid needs at least 2 points, got {count}")
        if not (0.0 < lo < hi):
            raise ValueError(f"need 0 < lo < hi, got lo={lo!r} hi={hi!r}")
        exponents = np.linspace(math.log10(lo), math.log10(hi), count)
        betas = 10.0 ** exponents
        betas[0] = lo
        betas[-1] = hi
        return cls(tuple(float(b) for b in betas))

    def __len__(self) -> int:
        return len(self.betas)


def default_beta_grid() -> BetaGrid:
    """201 log-uniform betas on [0.1, 10], symmetric about beta = 1."""
    return BetaGrid.log_spaced(0.1, 10.0, 201)


@dataclass(frozen=True)
class FbetaCurve:
    """F-beta values along a grid for one method, or an envelope of a front.

    For an envelope, ``argmax`` holds the winning member index at each beta,
    ties broken toward the lowest index.
    """

    method_label: str
    betas: tuple[float, ...]
    values: tuple[float, ...]
    defined: tuple[bool, ...]
    is_envelope: bool = False
    argmax: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not (len(self.betas) == len(self.values) == len(self.defined)):
            raise ValueError("curve fields must all match the grid length")
        if any(not 0.0 <= v <= 1.0 for v in self.values):
            raise ValueError("curve values must lie in [0, 1]")

    def pairs(self) -> tuple[tuple[float, float], ...]:
        """(beta, value) pairs in grid order."""
        return tuple(zip(self.betas, self.values))


def fbeta_curve(m: ConfusionMatrix, grid: BetaGrid, label: str = "") -> FbetaCurve:
    """Pointwise F-beta of one confusion matrix along the grid."""
    metrics = [fbeta(m, b) for b in grid.betas]
    return FbetaCurve(
        method_label=label,
        betas=grid.betas,
        values=tuple(mv.value for mv in metrics),
        defined=tuple(mv.defined for mv in metrics),
    )


def fbeta_envelope(
    front_matrices: list[ConfusionMatrix] | tuple[ConfusionMatrix, ...],
    grid: BetaGrid,
    label: str = "front envelope",
) -> FbetaCurve:
    """Upper envelope of the member curves, with the per-beta winning member."""
    if not front_matrices:
        raise ValueError("envelope needs at least one member matrix")
    members = [fbeta_curve(m, grid) for m in front_matrices]
    stacked = np.asarray([c.values for c in members])
    winners = np.argmax(stacked, axis=0)  # first occurrence wins ties
    columns = np.arange(len(grid))
    values = stacked[winners, columns]
    defined = np.asarray([c.defined for c in members])[winners, columns]
    return FbetaCurve(
        method_label=label,
        betas=grid.betas,
        values=tuple(float(v) for v in values),
        defined=tuple(bool(d) for d in defined),
        is_envelope=True,
        argmax=tuple(int(w) for w in winners),
    )


def isocurve_y(metric: str, level: float, x: float) -> float:
    """y such that the chosen aggregate of (x, y) equals the level.

    gmean: sqrt(x * y) = level, so y = level^2 / x.
    f1: 2xy / (x + y) = level, so y = level * x / (2x - level).
    """
    if metric == "gmean":
        return level * level / x
    if metric == "f1":
        return level * x / (2.0 * x - level)
    raise ValueError(f"unknown isocurve metric {metric!r}")


def _isocurve_domain_start(metric: str, level: float) -> float:
    # smallest x with y <= 1 on the level set
    if metric == "gmean":
        return level * level
    return level / (2.0 - level)


def _unit_ticks() -> list[tuple[float, str]]:
    return [(v, f"{v:g}") for v in (0.0, 0.25, 0.5, 0.75, 1.0)]


def _write_doc(doc: _svg.SvgDoc, out: str) -> None:
    atomic_write_text(out, doc.tostring())


def render_fbeta_plot(curves: list[FbetaCurve] | tuple[FbetaCurve, ...], out: str) -> None:
    """Curves over log10(beta), envelopes dashed, with a method legend."""
    if not curves:
        raise ValueError("nothing to plot: curve list is empty")
    betas = curves[0].betas
    for c in curves[1:]:
        if c.betas != betas:
            raise ValueError("all curves must share one beta grid")
    lo, hi = math.log10(betas[0]), math.log10(betas[-1])
    doc = _svg.SvgDoc()
    plot = _svg.Plot(doc, (lo, hi), (0.0, 1.0), "beta (log scale)", "F_beta")
    decade_ticks = [
        (float(e), f"{10.0 ** e:g}")
        for e in range(math.ceil(lo - 1e-9), math.floor(hi + 1e-9) + 1)
    ]
    plot.draw_frame(decade_ticks, _unit_ticks())
    legend = []
    for i, curve in enumerate(curves):
        color = _svg.PALETTE[i % len(_svg.PALETTE)]
        pts = [
            (plot.x_px(math.log10(b)), plot.y_px(v))
            for b, v in zip(curve.betas, curve.values)
        ]
        doc.polyline(pts, color, dashed=curve.is_envelope)
        legend.append((curve.method_label, color, curve.is_envelope))
    _svg.draw_legend(doc, legend)
    _write_doc(doc, out)


def render_region_plot(front: SolutionSet, ref: ObjectivePoint, mode: str, out: str) -> None:
    """Front vs reference point over the unit square.

    hypervolume mode shades the union of boxes between the front and the
    reference; dominance mode shades the strictly-dominating and
    strictly-dominated regions and colors front points by their class.
    """
    if front.dim != 2 or ref.dim != 2:
        raise ValueError(f"region plot requires 2 objectives, got {front.dim}")
    if mode not in REGION_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {REGION_MODES}")
    doc = _svg.SvgDoc()
    plot = _svg.Plot(doc, (0.0, 1.0), (0.0, 1.0), "objective 1", "objective 2")
    rx, ry = ref.coords
    if mode == "hypervolume":
        for p in front.points:
            px, py = p.coords
            if px > rx and py > ry:
                doc.rect(
                    plot.x_px(rx),
                    plot.y_px(py),
                    plot.x_px(px) - plot.x_px(rx),
                    plot.y_px(ry) - plot.y_px(py),
                    HV_FILL,
                )
    else:
        doc.rect(
            plot.x_px(rx),
            plot.y_px(1.0),
            plot.x_px(1.0) - plot.x_px(rx),
            plot.y_px(ry) - plot.y_px(1.0),
            DOMINATING_FILL,
            opacity=0.15,
        )
        doc.rect(
            plot.x_px(0.0),
            plot.y_px(ry),
            plot.x_px(rx) - plot.x_px(0.0),
            plot.y_px(0.0) - plot.y_px(ry),
            DOMINATED_FILL,
            opacity=0.15,
        )
    plot.draw_frame(_unit_ticks(), _unit_ticks())
    for p in front.points:
        if mode == "dominance":
            if strictly_dominates(p, ref):
                fill = DOMINATING_FILL
            elif strictly_dominates(ref, p):
                fill = DOMINATED_FILL
            else:
                fill = NEUTRAL_FILL
        else:
            fill = "#08519c"
        doc.circle(plot.x_px(p.coords[0]), plot.y_px(p.coords[1]), 4.0, fill)
    # reference marker: a black cross
    cx, cy = plot.x_px(rx), plot.y_px(ry)
    doc.line(cx - 5, cy - 5, cx + 5, cy + 5, "#000000", 2.0)
    doc.line(cx - 5, cy + 5, cx + 5, cy - 5, "#000000", 2.0)
    legend = [(f"front ({len(front)} points)", "#08519c", False), ("reference", "#000000", False)]
    if mode == "hypervolume":
        legend.append((f"HV = {hypervolume(front, ref):.4f}", HV_FILL, False))
    else:
        legend.append((f"dominating (SDR = {sdr(front, ref):.2f})", DOMINATING_FILL, False))
        legend.append((f"dominated (NDR = {ndr(front, ref):.2f})", DOMINATED_FILL, False))
    _svg.draw_legend(doc, legend)
    _write_doc(doc, out)


def render_isocurves(metric: str, levels: list[float] | tuple[float, ...], out: str) -> None:
    """Level sets of an aggregate metric over the unit square of its arguments."""
    if metric not in ISOCURVE_METRICS:
        raise ValueError(f"unknown isocurve metric {metric!r}; expected one of {ISOCURVE_METRICS}")
    if not levels:
        raise ValueError("no levels to draw")
    for level in levels:
        if not (isinstance(level, (int, float)) and 0.0 < level < 1.0):
            raise ValueError(f"levels must lie strictly inside (0, 1), got {level!r}")
    x_label, y_label = ("TPR", "TNR") if metric == "gmean" else ("precision", "recall")
    doc = _svg.SvgDoc()
    plot = _svg.Plot(doc, (0.0, 1.0), (0.0, 1.0), x_label, y_label)
    plot.draw_frame(_unit_ticks(), _unit_ticks())
    legend = []
    label = "G-mean" if metric == "gmean" else "F1"
    for i, level in enumerate(levels):
        level = float(level)
        color = _svg.PALETTE[i % len(_svg.PALETTE)]
        xs = np.linspace(_isocurve_domain_start(metric, level), 1.0, _ISOCURVE_SAMPLES)
        pts = [
            (plot.x_px(float(x)), plot.y_px(min(1.0, isocurve_y(metric, level, float(x)))))
            for x in xs
        ]
        doc.polyline(pts, color)
        legend.append((f"{label} = {level:g}", color, False))
    _svg.draw_legend(doc, legend)
    _write_doc(doc, out)
