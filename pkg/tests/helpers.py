"""Shared checks for the unit tests and the acceptance suite."""

import math

import numpy as np

from sphnn.constructor import Configuration, constraint_loss, loss_gradients
from sphnn.geometry import Sphere, SpherePoint, SurfaceCircle
from sphnn.logic import Rel, SpatialConstraint, Term

F, G = Term("F"), Term("G")
LITERAL_PAIRS = [(F, G), (F.negated(), G), (F, G.negated()), (F.negated(), G.negated())]


def random_configuration(rng, names="FG", dim=3, lo=0.2, hi=2.9):
    s = Sphere(dim)
    return Configuration(s, {n: SurfaceCircle(s.random_point(rng), rng.uniform(lo, hi)) for n in names})


def _tangent_basis(u, rng):
    m = rng.standard_normal((u.size, u.size))
    m -= np.outer(u, u @ m)
    q, _ = np.linalg.qr(m)
    return q[:, : u.size - 1]


def _loss_with(k, conf, label, center=None, radius=None):
    circles = dict(conf.circles)
    old = circles[label]
    circles[label] = SurfaceCircle(
        SpherePoint(center) if center is not None else old.center,
        old.radius if radius is None else radius,
    )
    return constraint_loss(k, Configuration(conf.sphere, circles))


def gradient_errors(rel: Rel, samples: int, seed: int, h: float = 1e-5):
    """Relative errors between analytic and central-difference gradients.

    Configurations are drawn until ``samples`` of them have the hinge
    active (loss at least 1e-3, well away from the kink); operands cycle
    through every plain/complemented combination.
    """
    rng = np.random.default_rng(seed)
    errors = []
    while len(errors) < samples:
        lhs, rhs = LITERAL_PAIRS[len(errors) % len(LITERAL_PAIRS)]
        k = SpatialConstraint(rel, lhs, rhs)
        conf = random_configuration(rng, dim=int(rng.integers(2, 6)))
        loss, grads = loss_gradients([k], conf)
        if loss < 1e-3:
            continue
        worst = 0.0
        for label, (gc, gr) in grads.items():
            c = conf.circles[label]
            u = c.center.coords
            fd, an = [], []
            for t in _tangent_basis(u, rng).T:
                plus = (u + h * t) / np.linalg.norm(u + h * t)
                minus = (u - h * t) / np.linalg.norm(u - h * t)
                fd.append((_loss_with(k, conf, label, center=plus) - _loss_with(k, conf, label, center=minus)) / (2 * h))
                an.append(float(gc @ t))
            up = _loss_with(k, conf, label, radius=c.radius + h)
            down = _loss_with(k, conf, label, radius=c.radius - h)
            fd.append((up - down) / (2 * h))
            an.append(gr)
            fd, an = np.array(fd), np.array(an)
            worst = max(worst, float(np.linalg.norm(fd - an) / max(np.linalg.norm(an), 1e-12)))
        errors.append(worst)
    return errors


def angle(u, v):
    return math.acos(max(-1.0, min(1.0, float(np.dot(u, v)))))
