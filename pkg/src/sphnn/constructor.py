"""Build a disc configuration satisfying a conjunction by gradient descent.

Every disc starts at one common random center.  Constraints are taken one
at a time in loop order; each is driven to zero hinge loss while the ones
already satisfied stay in the objective.  When the qualitative relation of
the current pair is more than one step away from what the constraint needs,
the intermediate relation on the neighbourhood map is pursued first.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernel
from .geometry import (
    QualRelation,
    Sphere,
    SpherePoint,
    SurfaceCircle,
    classify,
    complement,
    geodesic_distance,
    relation_of,
    unit_angle,
)
from .logic import ConstraintFormula, Rel, SpatialConstraint, Term, find_circle_loop, normalize

R = QualRelation


class MissingTermError(KeyError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    learning_rate: float = 1e-4
    max_epochs: int = 1
    steps_per_constraint: int = 50_000
    loss_tol: float = 1e-6
    strict_margin: float = 1e-3
    atomic_radius: float = 0.01
    init_radius: float = math.exp(-1)
    seed: int = 0
    # slack kept inside every hinge while descending, so that step-size
    # jitter on an active boundary does not leak into the reported loss
    descent_margin: float = 2e-3
    # stop a constraint early after this many steps without a new best loss (0 = never)
    patience: int = 3000

    def __post_init__(self):
        for name in ("learning_rate", "loss_tol", "strict_margin", "atomic_radius", "init_radius"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_epochs < 1 or self.steps_per_constraint < 1:
            raise ValueError("max_epochs and steps_per_constraint must be >= 1")
        if self.descent_margin < 0 or self.patience < 0:
            raise ValueError("descent_margin and patience must be nonnegative")
        if not self.atomic_radius < self.init_radius < math.pi / 2:
            raise ValueError("need atomic_radius < init_radius < pi/2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class TransitionMap:
    nodes: tuple = (R.P, R.PBAR, R.PO, R.EQ, R.D)  # also the tie-break priority
    edges: tuple = ((R.D, R.PO), (R.PO, R.P), (R.PO, R.PBAR), (R.P, R.EQ), (R.PBAR, R.EQ))

    def __post_init__(self):
        adj = {
            n: tuple(m for m in self.nodes if (n, m) in self.edges or (m, n) in self.edges)
            for n in self.nodes
        }
        dist = {}
        for a in self.nodes:
            seen = {a: 0}
            queue = deque([a])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen[y] = seen[x] + 1
                        queue.append(y)
            if len(seen) != len(self.nodes):
                raise ValueError("transition map must be connected")
            dist.update({(a, b): v for b, v in seen.items()})
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_dist", dist)

    def neighbors(self, rel: QualRelation) -> tuple:
        return self._adj[rel]

    def distance(self, a: QualRelation, b: QualRelation) -> int:
        return self._dist[a, b]


TRANSITION_MAP = TransitionMap()


def next_subgoal(current: QualRelation, target: QualRelation, tmap: TransitionMap = TRANSITION_MAP):
    if current is target:
        return target
    togo = tmap.distance(current, target)
    return next(n for n in tmap.neighbors(current) if tmap.distance(n, target) == togo - 1)


_ALLOWED = {
    Rel.P: (R.P, R.EQ),
    Rel.D: (R.D,),
    Rel.NOT_P: (R.PBAR, R.PO, R.D),
    Rel.NOT_D: (R.EQ, R.P, R.PBAR, R.PO),
}


def target_relation(rel: Rel, current: QualRelation, tmap: TransitionMap = TRANSITION_MAP):
    """Closest relation (on the map) that satisfies ``rel``."""
    allowed = _ALLOWED[rel]
    if current in allowed:
        return current
    return min(allowed, key=lambda a: (tmap.distance(current, a), tmap.nodes.index(a)))


@dataclass(frozen=True)
class Configuration:
    sphere: Sphere
    circles: dict
    atomic: frozenset = frozenset()

    def circle(self, term: Term) -> SurfaceCircle:
        """Disc for ``term``, complementing the stored opposite polarity if needed."""
        if term.label in self.circles:
            return self.circles[term.label]
        other = term.negated() if not term.atomic else None
        if other is not None and other.label in self.circles:
            return complement(self.circles[other.label])
        raise MissingTermError(term.label)

    def to_dict(self) -> dict:
        return {
            "dim": self.sphere.ambient_dim,
            "radius": self.sphere.radius,
            "circles": {
                name: {"center": [float(x) for x in c.center.coords], "r": float(c.radius)}
                for name, c in self.circles.items()
            },
            "atomic": sorted(self.atomic),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Configuration":
        sphere = Sphere(int(obj["dim"]), float(obj.get("radius", 1.0)))
        circles = {
            name: SurfaceCircle(SpherePoint(np.array(c["center"], dtype=float), sphere.radius), float(c["r"]))
            for name, c in obj["circles"].items()
        }
        return cls(sphere, circles, frozenset(obj.get("atomic", ())))


class Status(enum.Enum):
    SATISFIED = "Satisfied"
    FAILED = "Failed"


@dataclass(frozen=True)
class ConstructOutcome:
    status: Status
    final_loss: float
    configuration: Configuration
    steps_used: int

    @property
    def satisfied(self) -> bool:
        return self.status is Status.SATISFIED


def _literals(constraints) -> list:
    """One literal per base term, in first-seen polarity; the other polarity is its complement."""
    seen: dict = {}
    for k in constraints:
        for t in (k.lhs, k.rhs):
            seen.setdefault(t.name, t)
    return list(seen.values())


def init_configuration(terms, cfg: SolverConfig, sphere: Sphere, rng: np.random.Generator | None = None):
    """All discs on one seeded random center; atomic ones at the minimal radius."""
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one term")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    center = sphere.random_point(rng)
    circles = {}
    for t in terms:
        r = cfg.atomic_radius if t.atomic else cfg.init_radius
        circles[t.label] = SurfaceCircle(center, r * sphere.radius)
    return Configuration(sphere, circles, frozenset(t.label for t in terms if t.atomic))


# -- hinge losses -------------------------------------------------------------
#
# Every loss is a sum of hinges max(0, a*d + bi*r_i + bj*r_j + c) on the
# geodesic center distance d of discs i, j and their radii.


def _constraint_hinges(rel: Rel, margin: float, strict: float):
    if rel is Rel.P:
        return [(1.0, 1.0, -1.0, margin)]
    if rel is Rel.D:
        return [(-1.0, 1.0, 1.0, margin)]
    if rel is Rel.NOT_D:
        return [(1.0, -1.0, -1.0, strict + margin)]
    return [(-1.0, -1.0, 1.0, strict + margin)]


def _relation_hinges(rel: QualRelation, margin: float):
    if rel is R.P:
        return [(1.0, 1.0, -1.0, margin)]
    if rel is R.PBAR:
        return [(1.0, -1.0, 1.0, margin)]
    if rel is R.D:
        return [(-1.0, 1.0, 1.0, margin)]
    if rel is R.PO:
        return [(-1.0, -1.0, 1.0, margin), (-1.0, 1.0, -1.0, margin), (1.0, -1.0, -1.0, margin)]
    return [(1.0, 1.0, -1.0, 0.0), (1.0, -1.0, 1.0, 0.0)]


def _hinge_value(h, d, ri, rj):
    a, bi, bj, c = h
    return max(0.0, a * d + bi * ri + bj * rj + c)


def constraint_loss(k: SpatialConstraint, conf: Configuration, cfg: SolverConfig = SolverConfig()) -> float:
    a, b = conf.circle(k.lhs), conf.circle(k.rhs)
    R_ = conf.sphere.radius
    d = geodesic_distance(a.center, b.center)
    h = _constraint_hinges(k.relation, 0.0, cfg.strict_margin * R_)[0]
    return _hinge_value(h, d, a.radius, b.radius)


def total_loss(constraints, conf: Configuration, cfg: SolverConfig = SolverConfig()) -> float:
    return float(sum(constraint_loss(k, conf, cfg) for k in constraints))


def constraint_holds(k: SpatialConstraint, conf: Configuration, tol: float = 1e-6) -> bool:
    """Check k from the qualitative relation alone, no loss values involved."""
    rel = relation_of(conf.circle(k.lhs), conf.circle(k.rhs), tol)
    if k.relation is Rel.P:
        return rel in (R.P, R.EQ)
    if k.relation is Rel.NOT_P:
        return rel not in (R.P, R.EQ)
    if k.relation is Rel.D:
        return rel is R.D
    return rel is not R.D


# -- optimizer state ----------------------------------------------------------

_PERTURBATION = 1e-6


# relation codes used by the compiled kernel
_CODE_ORDER = (R.P, R.PBAR, R.PO, R.EQ, R.D)


class _State:
    """Mutable unit-sphere parameters for one construction run."""

    def __init__(self, conf: Configuration, cfg: SolverConfig, rng: np.random.Generator):
        self.sphere = conf.sphere
        self.cfg = cfg
        self.rng = rng
        self.names = list(conf.circles)
        self.index = {n: i for i, n in enumerate(self.names)}
        scale = conf.sphere.radius
        self.C = np.array([conf.circles[n].center.coords / scale for n in self.names])
        self.r = np.array([conf.circles[n].radius / scale for n in self.names])
        self.frozen = np.array([n in conf.atomic for n in self.names])
        self.atomic = conf.atomic

    def idx(self, t: Term) -> int:
        return self.operand(t)[0]

    def operand(self, t: Term) -> tuple:
        """(row, flipped): flipped when t is stored as its complement."""
        if t.label in self.index:
            return self.index[t.label], False
        if not t.atomic and t.negated().label in self.index:
            return self.index[t.negated().label], True
        raise MissingTermError(t.label)

    def configuration(self) -> Configuration:
        R_ = self.sphere.radius
        circles = {
            n: SurfaceCircle(SpherePoint(self.C[i] * R_, R_), float(self.r[i]) * R_)
            for i, n in enumerate(self.names)
        }
        return Configuration(self.sphere, circles, self.atomic)

    def distance(self, i: int, j: int) -> float:
        return unit_angle(self.C[i], self.C[j])

    def relation(self, i: int, j: int) -> QualRelation:
        return classify(self.distance(i, j), self.r[i], self.r[j], 1e-6)

    def _perturb(self, j: int) -> None:
        c = self.C[j]
        t = self.rng.standard_normal(c.size)
        t -= (t @ c) * c
        norm = np.linalg.norm(t)
        if norm == 0:
            return
        c = c + t * (_PERTURBATION / norm)
        self.C[j] = c / np.linalg.norm(c)

    def run(self, i: int, j: int, rows_by_code, goals, max_steps: int, patience: int):
        """Descend with per-relation hinge plans; returns (steps, satisfied)."""
        width = max(len(rows) for rows in rows_by_code)
        plans = np.zeros((len(_CODE_ORDER), width, 7))
        for code, rows in enumerate(rows_by_code):
            if rows:
                plans[code, : len(rows)] = rows
        nrows = np.array([len(rows) for rows in rows_by_code], dtype=np.int64)
        goals = np.array(goals, dtype=np.int64)
        cfg = self.cfg
        used, best, since, last = 0, math.inf, 0, -2
        while True:
            code, steps, pj, best, since, last = _kernel.descend(
                self.C, self.r, self.frozen, plans, nrows, goals, i, j,
                cfg.learning_rate, cfg.loss_tol, cfg.atomic_radius,
                max_steps - used, patience, best, since, last,
            )
            used += steps
            if code == _kernel.NEEDS_PERTURBATION and used < max_steps:
                self._perturb(pj)
                continue
            return used, code == _kernel.SATISFIED

    def hinges_for(self, k: SpatialConstraint, margin: float) -> list:
        """Rows (i, j, a, bi, bj, offset, exact offset) for constraint k."""
        (i, fi), (j, fj) = self.operand(k.lhs), self.operand(k.rhs)
        rows = []
        for a, bi, bj, c in _constraint_hinges(k.relation, margin, self.cfg.strict_margin):
            # a complemented operand has radius pi - r, and flipping one side maps d to pi - d
            shift = 0.0
            if fi != fj:
                shift += a * math.pi
                a = -a
            if fi:
                shift += bi * math.pi
                bi = -bi
            if fj:
                shift += bj * math.pi
                bj = -bj
            rows.append((i, j, a, bi, bj, c + shift, c + shift - margin))
        return rows

    def settle(self, k: SpatialConstraint, preserved: Sequence[SpatialConstraint], tmap: TransitionMap):
        """Descend until k and everything in ``preserved`` hold; (steps, success).

        While k's pair is more than one map step from a relation satisfying
        k, the next relation on the shortest path is the descent goal.
        """
        m = self.cfg.descent_margin
        i, j = self.idx(k.lhs), self.idx(k.rhs)
        kept = [h for p in preserved for h in self.hinges_for(p, m)]
        rows_by_code, goals = [], []
        # waypoints are planned on stored discs; a constraint on a complement descends directly
        direct = self.operand(k.lhs)[1] or self.operand(k.rhs)[1]
        for current in _CODE_ORDER:
            if direct:
                goals.append(_kernel.OWN_GOAL)
                rows_by_code.append(self.hinges_for(k, m) + kept)
                continue
            target = target_relation(k.relation, current, tmap)
            waypoint = next_subgoal(current, target, tmap)
            if waypoint is target:
                goals.append(_kernel.OWN_GOAL)
                own = self.hinges_for(k, m)
            else:
                goals.append(_CODE_ORDER.index(waypoint))
                own = [(i, j, *h, h[3]) for h in _relation_hinges(waypoint, m)]
            rows_by_code.append(own + kept)
        return self.run(i, j, rows_by_code, goals, self.cfg.steps_per_constraint, self.cfg.patience)


def loss_gradients(constraints, conf: Configuration, cfg: SolverConfig = SolverConfig()):
    """Joint hinge loss of ``constraints`` and its gradient, as used by the descent.

    Returns (loss, grads) where grads maps each stored disc label to
    (tangent gradient of the unit center, gradient of the unit radius).
    """
    state = _State(conf, cfg, np.random.default_rng(cfg.seed))
    rows = np.array([h for k in constraints for h in state.hinges_for(k, 0.0)], dtype=float).reshape(-1, 7)
    G = np.zeros_like(state.C)
    gr = np.zeros_like(state.r)
    loss, _, _ = _kernel.accumulate(state.C, state.r, rows, len(rows), G, gr)
    return loss, {n: (G[i].copy(), float(gr[i])) for i, n in enumerate(state.names)}


def gradient_step(
    k: SpatialConstraint,
    preserved: Sequence[SpatialConstraint],
    conf: Configuration,
    cfg: SolverConfig = SolverConfig(),
    rng: np.random.Generator | None = None,
) -> Configuration:
    """One descent step on loss(k) + sum of preserved losses (with descent margin)."""
    state = _State(conf, cfg, rng if rng is not None else np.random.default_rng(cfg.seed))
    hinges = [h for c in (k, *preserved) for h in state.hinges_for(c, cfg.descent_margin)]
    before = state.C.copy(), state.r.copy()
    i, j = state.idx(k.lhs), state.idx(k.rhs)
    state.run(i, j, [hinges] * len(_CODE_ORDER), [_kernel.OWN_GOAL] * len(_CODE_ORDER), 1, 0)
    if np.array_equal(before[0], state.C) and np.array_equal(before[1], state.r):
        return conf
    return state.configuration()


def construct(
    loop: Sequence[SpatialConstraint],
    cfg: SolverConfig = SolverConfig(),
    n: int = 3,
    sphere: Sphere | None = None,
    tmap: TransitionMap = TRANSITION_MAP,
) -> ConstructOutcome:
    loop = tuple(loop)
    if not loop:
        raise ValueError("cannot construct an empty loop")
    sphere = sphere or Sphere(n)
    rng = np.random.default_rng(cfg.seed)
    conf = init_configuration(_literals(loop), cfg, sphere, rng)
    state = _State(conf, cfg, rng)
    steps = 0
    for _ in range(cfg.max_epochs):
        for pos, k in enumerate(loop):
            used, ok = state.settle(k, loop[:pos], tmap)
            steps += used
            if not ok:
                break
        final = total_loss(loop, state.configuration(), cfg)
        if final <= cfg.loss_tol:
            break
    conf = state.configuration()
    final = total_loss(loop, conf, cfg)
    status = Status.SATISFIED if final <= cfg.loss_tol else Status.FAILED
    return ConstructOutcome(status, final, conf, steps)


@dataclass
class Decision:
    """Result of deciding a DNF formula."""

    satisfiable: bool
    configuration: Configuration | None = None
    disjunct: tuple | None = None
    loop: tuple | None = None
    disjuncts_tried: int = 0
    outcomes: list = field(default_factory=list)


def decide_satisfiable(
    f: ConstraintFormula, cfg: SolverConfig = SolverConfig(), n: int = 3, sphere: Sphere | None = None
) -> Decision:
    """Try each disjunct in turn; satisfiable as soon as one is built at zero loss."""
    loss = math.inf
    decision = Decision(False)
    for disjunct in f.disjuncts:
        loop = find_circle_loop(normalize(disjunct))
        if not loop:
            continue
        decision.disjuncts_tried += 1
        outcome = construct(loop, cfg, n, sphere)
        decision.outcomes.append(outcome)
        loss = outcome.final_loss
        if outcome.satisfied:
            decision.satisfiable = True
            decision.configuration = outcome.configuration
            decision.disjunct = disjunct
            decision.loop = loop
            break
    assert decision.satisfiable == (loss <= cfg.loss_tol)
    return decision
