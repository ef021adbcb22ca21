"""Drawing configurations: JSON for any dimension, SVG for circles and 2-spheres.

On the circle (ambient dimension 2) each disc is an arc, drawn as a band
just outside the unit circle so overlapping arcs stay visible.  On the
2-sphere each disc is a spherical cap; its boundary projects
orthographically to an ellipse, solid where it faces the viewer and dashed
behind.  The view is rotated so the mean disc center faces the viewer.
Complement literals (``c_X``) share the colour of X and get a hatched fill.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .constructor import Configuration

DEFAULT_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
)
_SAMPLES = 240


class UnsupportedProjection(ValueError):
    pass


class Projection(enum.Enum):
    ARC_ON_CIRCLE = "ArcOnCircle"
    ORTHOGRAPHIC = "Orthographic"


class LabelPlacement(enum.Enum):
    CENTROID = "centroid"
    LEGEND = "legend"


_PROJECTION_DIM = {Projection.ARC_ON_CIRCLE: 2, Projection.ORTHOGRAPHIC: 3}


@dataclass(frozen=True)
class RenderSpec:
    width: int = 520
    height: int = 420
    palette: tuple = DEFAULT_PALETTE
    projection: Projection | None = None  # None picks the one matching the dimension
    stroke_width: float = 2.0
    labels: LabelPlacement = LabelPlacement.LEGEND

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("width and height must be positive")
        if not self.palette:
            raise ValueError("palette must not be empty")
        if self.stroke_width <= 0:
            raise ValueError("stroke_width must be positive")


@dataclass(frozen=True)
class ArcPrimitive:
    """A disc on the circle: angular interval [mid - half, mid + half]."""

    label: str
    mid: float
    half: float
    inner: float
    outer: float
    complemented: bool


@dataclass(frozen=True)
class CapPrimitive:
    """A cap on the unit 2-sphere, axis given in view coordinates (z toward the viewer)."""

    label: str
    axis: tuple
    polar: float
    complemented: bool
    boundary: np.ndarray = field(repr=False, compare=False)


def export_json(conf: Configuration) -> str:
    """JSON text; floats are written with full precision so they read back exactly."""
    return json.dumps(conf.to_dict(), indent=1)


def load_json(text: str) -> Configuration:
    return Configuration.from_dict(json.loads(text))


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _projection_for(conf: Configuration, spec: RenderSpec) -> Projection:
    dim = conf.sphere.ambient_dim
    if dim not in (2, 3):
        raise UnsupportedProjection(
            f"cannot draw a {dim}-dimensional configuration; use export_json (or --format json) instead"
        )
    proj = spec.projection or (Projection.ARC_ON_CIRCLE if dim == 2 else Projection.ORTHOGRAPHIC)
    if _PROJECTION_DIM[proj] != dim:
        raise UnsupportedProjection(f"{proj.value} projection needs ambient dimension {_PROJECTION_DIM[proj]}, got {dim}")
    return proj


def _layout(spec: RenderSpec):
    legend_w = 120 if spec.labels is LabelPlacement.LEGEND else 0
    cx = (spec.width - legend_w) / 2
    cy = spec.height / 2
    radius = 0.34 * min(spec.width - legend_w, spec.height)
    return cx, cy, radius


def _colors(conf: Configuration, spec: RenderSpec) -> dict:
    bases = sorted({label.removeprefix("c_") for label in conf.circles})
    return {b: spec.palette[i % len(spec.palette)] for i, b in enumerate(bases)}


def _view_rotation(conf: Configuration) -> np.ndarray:
    """Rotation taking the mean disc center to +z (identity if already there or undefined)."""
    centers = np.array([c.center.coords for c in conf.circles.values()]) / conf.sphere.radius
    m = centers.sum(axis=0)
    norm = np.linalg.norm(m)
    if norm < 1e-9:
        return np.eye(3)
    m = m / norm
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(m, z)
    s, c = np.linalg.norm(v), float(m @ z)
    if s < 1e-12:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    k = v / s
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + s * K + (1 - c) * (K @ K)


def primitives(conf: Configuration, spec: RenderSpec = RenderSpec()) -> list:
    """The geometric objects an SVG is drawn from, one per stored literal in label order."""
    proj = _projection_for(conf, spec)
    R = conf.sphere.radius
    out = []
    if proj is Projection.ARC_ON_CIRCLE:
        _, _, radius = _layout(spec)
        band, gap = 0.045 * radius, 0.02 * radius
        for i, label in enumerate(sorted(conf.circles)):
            c = conf.circles[label]
            x, y = c.center.coords / R
            inner = radius + gap + i * (band + gap)
            out.append(ArcPrimitive(label, math.atan2(y, x), c.radius / R, inner, inner + band, label.startswith("c_")))
        return out
    rot = _view_rotation(conf)
    t = np.linspace(0.0, 2 * math.pi, _SAMPLES + 1)
    for label in sorted(conf.circles):
        c = conf.circles[label]
        axis = rot @ (c.center.coords / R)
        axis = axis / np.linalg.norm(axis)
        polar = c.radius / R
        helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = np.cross(axis, helper)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(axis, e1)
        pts = (
            math.cos(polar) * axis[None, :]
            + math.sin(polar) * (np.cos(t)[:, None] * e1[None, :] + np.sin(t)[:, None] * e2[None, :])
        )
        out.append(CapPrimitive(label, tuple(float(a) for a in axis), polar, label.startswith("c_"), pts))
    return out


# -- SVG pieces -----------------------------------------------------------------


def _xy(cx, cy, radius, p):
    return cx + radius * p[0], cy - radius * p[1]


def _pattern_id(color: str) -> str:
    return "hatch-" + color.lstrip("#")


def _arc_svg(prim: ArcPrimitive, cx, cy, color, spec) -> list:
    a0, a1 = prim.mid - prim.half, prim.mid + prim.half
    large = 1 if 2 * prim.half > math.pi else 0

    def at(rad, ang):
        return _fmt(cx + rad * math.cos(ang)), _fmt(cy - rad * math.sin(ang))

    (ox0, oy0), (ox1, oy1) = at(prim.outer, a0), at(prim.outer, a1)
    (ix0, iy0), (ix1, iy1) = at(prim.inner, a0), at(prim.inner, a1)
    ro, ri = _fmt(prim.outer), _fmt(prim.inner)
    # counter-clockwise in math coordinates is sweep-flag 0 in SVG's flipped y
    d = (
        f"M {ox0} {oy0} A {ro} {ro} 0 {large} 0 {ox1} {oy1} "
        f"L {ix1} {iy1} A {ri} {ri} 0 {large} 1 {ix0} {iy0} Z"
    )
    fill = f"url(#{_pattern_id(color)})" if prim.complemented else color
    opacity = "1" if prim.complemented else "0.55"
    return [
        f'<path d="{d}" fill="{fill}" fill-opacity="{opacity}" stroke="{color}" '
        f'stroke-width="{_fmt(spec.stroke_width / 2)}" data-label="{escape(prim.label)}"/>'
    ]


def _polyline(points2d) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points2d)


def _visible_runs(pts: np.ndarray):
    """Split a closed sampled curve into maximal runs of constant visibility."""
    vis = pts[:, 2] >= 0
    runs, start = [], 0
    for i in range(1, len(pts)):
        if vis[i] != vis[i - 1]:
            runs.append((bool(vis[start]), pts[start : i + 1]))
            start = i
    runs.append((bool(vis[start]), pts[start:]))
    return runs


def _cap_region_path(prim: CapPrimitive, cx, cy, radius) -> str | None:
    """Outline of the visible part of a cap, as an SVG path (evenodd), or None if hidden."""
    axis = np.array(prim.axis)
    pts = prim.boundary
    vis = pts[:, 2] >= 0
    xy = lambda p: _xy(cx, cy, radius, p)  # noqa: E731
    disc_path = (
        f"M {_fmt(cx + radius)} {_fmt(cy)} A {_fmt(radius)} {_fmt(radius)} 0 1 0 {_fmt(cx - radius)} {_fmt(cy)} "
        f"A {_fmt(radius)} {_fmt(radius)} 0 1 0 {_fmt(cx + radius)} {_fmt(cy)} Z"
    )
    back_pole_inside = math.acos(max(-1.0, min(1.0, -axis[2]))) < prim.polar
    front_pole_inside = math.acos(max(-1.0, min(1.0, axis[2]))) < prim.polar
    if vis.all():
        ring = "M " + _polyline(xy(p) for p in pts[:-1]) + " Z"
        # a cap reaching round the back covers the whole limb: the disc minus the ellipse
        return disc_path + " " + ring if back_pole_inside else ring
    if not vis.any():
        return disc_path if front_pole_inside else None
    # rotate samples so the curve starts at the beginning of a visible run
    n = len(pts) - 1
    k = next(i for i in range(n) if vis[i] and not vis[i - 1])
    order = [(k + i) % n for i in range(n + 1)]
    pieces, i = [], 0
    while i < n:
        if not vis[order[i]]:
            i += 1
            continue
        j = i
        while j < n and vis[order[j]]:
            j += 1
        run = [pts[order[m]] for m in range(i, j)]
        pieces.append(run)
        i = j
    parts = []
    for run in pieces:
        p0 = run[0]
        p1 = run[-1]
        a0 = math.atan2(p0[1], p0[0])
        a1 = math.atan2(p1[1], p1[0])
        # follow the limb from the run's end back to its start along the side inside the cap
        ccw = (a0 - a1) % (2 * math.pi)
        mid = a1 + ccw / 2
        limb_mid = np.array([math.cos(mid), math.sin(mid), 0.0])
        inside = float(limb_mid @ axis) > math.cos(prim.polar)
        sweep_ccw = inside
        extent = ccw if sweep_ccw else 2 * math.pi - ccw
        large = 1 if extent > math.pi else 0
        sweep = 0 if sweep_ccw else 1
        ex, ey = cx + radius * math.cos(a0), cy - radius * math.sin(a0)
        parts.append(
            "M "
            + _polyline(xy(p) for p in run)
            + f" A {_fmt(radius)} {_fmt(radius)} 0 {large} {sweep} {_fmt(ex)} {_fmt(ey)} Z"
        )
    return " ".join(parts)


def _cap_svg(prim: CapPrimitive, cx, cy, radius, color, spec) -> list:
    out = []
    region = _cap_region_path(prim, cx, cy, radius)
    if region is not None:
        fill = f"url(#{_pattern_id(color)})" if prim.complemented else color
        opacity = "1" if prim.complemented else "0.22"
        out.append(f'<path d="{region}" fill="{fill}" fill-opacity="{opacity}" fill-rule="evenodd" stroke="none"/>')
    sw = _fmt(spec.stroke_width)
    for visible, run in _visible_runs(prim.boundary):
        dash = "" if visible else ' stroke-dasharray="4 3" stroke-opacity="0.6"'
        pts = _polyline(_xy(cx, cy, radius, p) for p in run)
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{sw}"{dash}/>')
    return out


def _label_position(prim, cx, cy, radius):
    if isinstance(prim, ArcPrimitive):
        rad = prim.outer + 10
        return cx + rad * math.cos(prim.mid), cy - rad * math.sin(prim.mid)
    axis = np.array(prim.axis)
    if axis[2] < 0:
        axis = axis - 2 * axis[2] * np.array([0.0, 0.0, 1.0])
    return _xy(cx, cy, radius, axis * math.cos(min(prim.polar, math.pi / 2)))


def render_svg(conf: Configuration, spec: RenderSpec = RenderSpec()) -> str:
    """SVG 1.1 drawing of a configuration on the circle or the 2-sphere."""
    proj = _projection_for(conf, spec)
    prims = primitives(conf, spec)
    colors = _colors(conf, spec)
    cx, cy, radius = _layout(spec)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        "<defs>",
    ]
    for color in sorted({colors[p.label.removeprefix("c_")] for p in prims if p.complemented}):
        lines.append(
            f'<pattern id="{_pattern_id(color)}" patternUnits="userSpaceOnUse" width="6" height="6" '
            f'patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="{color}" stroke-width="2"/></pattern>'
        )
    lines.append("</defs>")
    lines.append(f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="white"/>')
    lines.append(
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius)}" fill="none" stroke="#444444" stroke-width="1"/>'
    )
    for prim in prims:
        color = colors[prim.label.removeprefix("c_")]
        lines.append(f'<g id="{escape(prim.label)}">')
        if proj is Projection.ARC_ON_CIRCLE:
            lines.extend(_arc_svg(prim, cx, cy, color, spec))
        else:
            lines.extend(_cap_svg(prim, cx, cy, radius, color, spec))
        if spec.labels is LabelPlacement.CENTROID:
            x, y = _label_position(prim, cx, cy, radius)
            lines.append(
                f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" font-size="13" '
                f'text-anchor="middle" fill="{color}">{escape(prim.label)}</text>'
            )
        lines.append("</g>")
    if spec.labels is LabelPlacement.LEGEND:
        x0 = spec.width - 110
        for i, prim in enumerate(prims):
            color = colors[prim.label.removeprefix("c_")]
            y = 24 + 20 * i
            fill = f"url(#{_pattern_id(color)})" if prim.complemented else color
            lines.append(f'<rect x="{x0}" y="{y - 10}" width="14" height="12" fill="{fill}" stroke="{color}"/>')
            lines.append(
                f'<text x="{x0 + 20}" y="{y}" font-family="sans-serif" font-size="13">{escape(prim.label)}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
