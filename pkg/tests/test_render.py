import math
import re
import xml.dom.minidom

import numpy as np
import pytest

from sphnn.constructor import Configuration, construct
from sphnn.geometry import QualRelation as QR
from sphnn.geometry import Sphere, SurfaceCircle, classify, relation_of
from sphnn.logic import Rel, SpatialConstraint, Term, task_formula
from sphnn.constructor import decide_satisfiable
from sphnn.reasoner import decide_validity
from sphnn.render import (
    ArcPrimitive,
    CapPrimitive,
    LabelPlacement,
    Projection,
    RenderSpec,
    UnsupportedProjection,
    export_json,
    load_json,
    primitives,
    render_svg,
)
from sphnn.syntax import parse_statement

F, G, H = Term("F"), Term("G"), Term("H")


def K(rel, x, y):
    return SpatialConstraint(rel, x, y)


def nested_model(n):
    loop = [K(Rel.P, F, G), K(Rel.P, G, H), K(Rel.NOT_P, G, F), K(Rel.NOT_P, H, G)]
    out = construct(loop, n=n)
    assert out.satisfied
    return out.configuration


def primitive_relation(p, q, tol=1e-6):
    if isinstance(p, ArcPrimitive):
        d = abs((p.mid - q.mid + math.pi) % (2 * math.pi) - math.pi)
        return classify(d, p.half, q.half, tol)
    d = math.acos(max(-1.0, min(1.0, float(np.dot(p.axis, q.axis)))))
    return classify(d, p.polar, q.polar, tol)


def inside_polygon(pt, poly):
    """Even-odd ray casting."""
    x, y = pt
    inside = False
    for (x0, y0), (x1, y1) in zip(poly, np.roll(poly, -1, axis=0)):
        if (y0 > y) != (y1 > y) and x < x0 + (y - y0) * (x1 - x0) / (y1 - y0):
            inside = not inside
    return inside


def test_nested_ellipses_on_two_sphere():
    conf = nested_model(3)
    caps = {p.label: p for p in primitives(conf)}
    assert primitive_relation(caps["F"], caps["G"]) is QR.P
    assert primitive_relation(caps["G"], caps["H"]) is QR.P
    assert relation_of(conf.circles["F"], conf.circles["G"]) is QR.P
    # all three boundaries face the viewer, so the projected discs are the ellipse interiors
    outlines = {}
    for label, cap in caps.items():
        assert (cap.boundary[:, 2] > 0).all()
        outlines[label] = cap.boundary[:, :2]
    shrink = lambda pts, c: c + 0.999 * (pts - c)  # noqa: E731
    for inner, outer in (("F", "G"), ("G", "H")):
        centre = outlines[inner].mean(axis=0)
        assert all(inside_polygon(p, outlines[outer]) for p in shrink(outlines[inner], centre))
    svg = render_svg(conf)
    assert svg.count("<polyline") >= 3


def test_projected_boundary_is_an_ellipse():
    conf = nested_model(3)
    for cap in primitives(conf):
        xy = cap.boundary[:, :2]
        # fit a general conic a x^2 + b xy + c y^2 + d x + e y = 1; ellipse iff b^2 < 4ac
        x, y = xy[:, 0], xy[:, 1]
        design = np.column_stack([x * x, x * y, y * y, x, y])
        coef, *_ = np.linalg.lstsq(design, np.ones_like(x), rcond=None)
        assert np.abs(design @ coef - 1).max() < 1e-8
        a_, b_, c_ = coef[:3]
        assert b_ * b_ < 4 * a_ * c_


def test_disjunctive_syllogism_arcs_on_circle():
    premises = [parse_statement("all F are G_or_H"), parse_statement("all F are c_G")]
    d = decide_satisfiable(task_formula(premises), n=2)
    assert d.satisfiable
    arcs = {p.label: p for p in primitives(d.configuration)}
    assert all(isinstance(p, ArcPrimitive) for p in arcs.values())
    assert primitive_relation(arcs["F"], arcs["H"]) in (QR.P, QR.EQ)
    assert primitive_relation(arcs["F"], arcs["G"]) is QR.D


def test_byte_stable_and_well_formed():
    for n in (2, 3):
        conf = nested_model(n)
        for labels in LabelPlacement:
            spec = RenderSpec(labels=labels)
            one, two = render_svg(conf, spec), render_svg(conf, spec)
            assert one == two
            doc = xml.dom.minidom.parseString(one)
            assert doc.documentElement.getAttribute("version") == "1.1"


def test_arc_endpoints_in_svg():
    conf = nested_model(2)
    svg = render_svg(conf)
    cx, cy, _ = 200.0, 210.0, None
    for prim in primitives(conf):
        path = re.search(rf'<g id="{prim.label}">\s*<path d="M ([-\d.]+) ([-\d.]+) A', svg)
        x, y = float(path.group(1)), float(path.group(2))
        angle = math.atan2(-(y - cy), x - cx)
        expected = prim.mid - prim.half
        assert abs((angle - expected + math.pi) % (2 * math.pi) - math.pi) < 1e-3


def test_complements_are_hatched():
    s = Sphere(3)
    conf = Configuration(
        s,
        {
            "A": SurfaceCircle(s.point([0, 0, 1.0]), 0.5),
            "c_B": SurfaceCircle(s.point([1.0, 0, 0]), 1.2),
        },
    )
    svg = render_svg(conf)
    assert '<pattern id="hatch-' in svg
    assert re.search(r'<g id="c_B">\s*<path d="[^"]*" fill="url\(#hatch-', svg)
    assert not re.search(r'<g id="A">\s*<path d="[^"]*" fill="url', svg)


def test_large_cap_crossing_the_limb():
    s = Sphere(3)
    conf = Configuration(s, {"C": SurfaceCircle(s.point([0, 0.8, -0.6]), 2.6), "A": SurfaceCircle(s.point([0, 0, 1.0]), 0.4)})
    svg = render_svg(conf)
    xml.dom.minidom.parseString(svg)
    assert "stroke-dasharray" in svg


def test_fidelity_on_corpus_counter_models(extended16, classic256):
    for n in (2, 3):
        for t in extended16 + classic256[::4]:
            v = decide_validity(t, n=n)
            if v.valid:
                continue
            conf = v.counter_model
            prims = primitives(conf)
            for i, p in enumerate(prims):
                for q in prims[i + 1 :]:
                    expected = relation_of(conf.circles[p.label], conf.circles[q.label])
                    assert primitive_relation(p, q) is expected, (t.id, n, p.label, q.label)


def test_unsupported_dimension_points_to_json():
    s = Sphere(4)
    conf = Configuration(s, {"F": SurfaceCircle(s.random_point(np.random.default_rng(0)), 0.5)})
    with pytest.raises(UnsupportedProjection, match="export_json"):
        render_svg(conf)
    with pytest.raises(UnsupportedProjection):
        render_svg(nested_model(2), RenderSpec(projection=Projection.ORTHOGRAPHIC))


def test_render_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec(width=0)
    with pytest.raises(ValueError):
        RenderSpec(palette=())


def test_palette_cycles():
    s = Sphere(2)
    rng = np.random.default_rng(1)
    conf = Configuration(s, {f"T{i}": SurfaceCircle(s.random_point(rng), 0.3) for i in range(5)})
    svg = render_svg(conf, RenderSpec(palette=("#000000", "#ff0000")))
    assert svg.count('stroke="#ff0000"') >= 2


def test_json_roundtrip():
    conf = nested_model(3)
    text = export_json(conf)
    assert set(__import__("json").loads(text)) >= {"dim", "radius", "circles"}
    back = load_json(text)
    for name, c in conf.circles.items():
        assert np.array_equal(back.circles[name].center.coords, c.center.coords)
        assert back.circles[name].radius == c.radius


def test_json_roundtrip_high_dimension():
    s = Sphere(10_000)
    rng = np.random.default_rng(3)
    conf = Configuration(s, {n: SurfaceCircle(s.random_point(rng), rng.uniform(0.1, 3.0)) for n in "FGH"})
    back = load_json(export_json(conf))
    assert back.sphere.ambient_dim == 10_000
    for name, c in conf.circles.items():
        assert np.abs(back.circles[name].center.coords - c.center.coords).max() <= 1e-15
        assert back.circles[name].radius == c.radius
