"""Syllogistic statements and their translation into disc constraints.

Statements are turned into formulas in disjunctive normal form whose atoms
are part-of / disconnected relations (and their negations) between discs,
possibly complemented.  ``normalize`` then picks a single polarity per term
so that each term is drawn as exactly one disc.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


class UnsupportedForm(ValueError):
    """A statement shape outside the supported fragment."""


@dataclass(frozen=True)
class Term:
    name: str
    complemented: bool = False
    atomic: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValueError("term name must be nonempty")
        if self.atomic and self.complemented:
            raise ValueError(f"atomic term {self.name!r} cannot be complemented")

    def negated(self) -> "Term":
        if self.atomic:
            raise UnsupportedForm(f"cannot complement atomic term {self.name!r}")
        return Term(self.name, not self.complemented, self.atomic)

    @property
    def base(self) -> "Term":
        return Term(self.name, False, self.atomic)

    @property
    def label(self) -> str:
        return f"c_{self.name}" if self.complemented else self.name

    def __str__(self):
        return self.label


class Rel(enum.Enum):
    P = "P"
    NOT_P = "NotP"
    D = "D"
    NOT_D = "NotD"

    @property
    def negative(self) -> bool:
        return self in (Rel.NOT_P, Rel.NOT_D)


@dataclass(frozen=True)
class SpatialConstraint:
    relation: Rel
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.lhs.name == self.rhs.name:
            raise ValueError(f"self-constraint on {self.lhs.name!r}")

    def __str__(self):
        return f"{self.relation.value}({self.lhs}, {self.rhs})"


Conjunction = tuple  # tuple[SpatialConstraint, ...]


@dataclass(frozen=True)
class ConstraintFormula:
    disjuncts: tuple

    def __post_init__(self):
        ds = tuple(tuple(c) for c in self.disjuncts)
        if not ds:
            raise ValueError("formula needs at least one disjunct")
        if any(not c for c in ds):
            raise ValueError("empty conjunction in formula")
        object.__setattr__(self, "disjuncts", ds)

    def __str__(self):
        return " | ".join("[" + ", ".join(map(str, c)) + "]" for c in self.disjuncts)


def conjoin(formulas: Iterable[ConstraintFormula]) -> ConstraintFormula:
    """DNF of the conjunction: cartesian product of the disjunct lists."""
    parts = [f.disjuncts for f in formulas]
    return ConstraintFormula(
        tuple(tuple(itertools.chain.from_iterable(combo)) for combo in itertools.product(*parts))
    )


class Quantifier(enum.Enum):
    ALL = "all"
    SOME = "some"
    NO = "no"
    SOME_NOT = "some_not"


@dataclass(frozen=True)
class Statement:
    quantifier: Quantifier
    subject: Term
    predicate: tuple  # one Term, or two for "G_or_H"

    def __post_init__(self):
        pred = self.predicate
        if isinstance(pred, Term):
            pred = (pred,)
        pred = tuple(pred)
        object.__setattr__(self, "predicate", pred)
        if len(pred) not in (1, 2):
            raise ValueError("predicate must be one term or a disjunctive pair")
        if len(pred) == 2 and self.quantifier is not Quantifier.ALL:
            raise UnsupportedForm("disjunctive predicates only occur with 'all'")

    @property
    def disjunctive(self) -> bool:
        return len(self.predicate) == 2

    def terms(self) -> tuple:
        return (self.subject, *self.predicate)

    def __str__(self):
        pred = "_or_".join(t.label for t in self.predicate)
        if self.quantifier is Quantifier.SOME_NOT:
            return f"some {self.subject} are not {pred}"
        return f"{self.quantifier.value} {self.subject} are {pred}"


def translate_statement(s: Statement, witness: str | None = None) -> ConstraintFormula:
    """Translate one statement into a DNF formula.

    With an atomic subject, membership is two-valued: "some a are G" and
    "all a are G" both mean a lies inside G.  Passing ``witness`` spells out a
    non-atomic "some F are G" through a fresh atomic disc lying in both.
    """
    q, subj = s.quantifier, s.subject
    if s.disjunctive:
        return ConstraintFormula(tuple((SpatialConstraint(Rel.P, subj, t),) for t in s.predicate))
    (pred,) = s.predicate
    if q is Quantifier.ALL:
        k = SpatialConstraint(Rel.P, subj, pred)
    elif q is Quantifier.NO:
        k = SpatialConstraint(Rel.D, subj, pred)
    elif subj.atomic:
        target = pred if q is Quantifier.SOME else pred.negated()
        k = SpatialConstraint(Rel.P, subj, target)
    elif witness is not None:
        w = Term(witness, atomic=True)
        target = pred if q is Quantifier.SOME else pred.negated()
        return ConstraintFormula(((SpatialConstraint(Rel.P, w, subj), SpatialConstraint(Rel.P, w, target)),))
    elif q is Quantifier.SOME:
        k = SpatialConstraint(Rel.NOT_D, subj, pred)
    else:
        k = SpatialConstraint(Rel.NOT_P, subj, pred)
    return ConstraintFormula(((k,),))


_CONTRADICTORY = {
    Quantifier.ALL: Quantifier.SOME_NOT,
    Quantifier.SOME_NOT: Quantifier.ALL,
    Quantifier.NO: Quantifier.SOME,
    Quantifier.SOME: Quantifier.NO,
}


def negate_conclusion(s: Statement) -> Statement:
    if s.disjunctive:
        raise UnsupportedForm("cannot negate a disjunctive conclusion")
    (pred,) = s.predicate
    if s.subject.atomic:
        # an individual is either inside the predicate disc or inside its complement
        if s.quantifier in (Quantifier.ALL, Quantifier.SOME):
            return Statement(Quantifier.ALL, s.subject, pred.negated())
        return Statement(Quantifier.ALL, s.subject, pred)
    return Statement(_CONTRADICTORY[s.quantifier], s.subject, pred)


# -- polarity normalization ------------------------------------------------
#
# Every constraint says that one Venn cell of its two base terms is empty
# (P, D) or nonempty (NotP, NotD).  With node polarities chosen per term, the
# cell is expressible by P/D on the chosen nodes unless it is the
# complement-complement cell of the nodes.


def _cell(k: SpatialConstraint):
    """(x, x_complemented, y, y_complemented, nonempty) for the cell k talks about."""
    a, b = k.lhs, k.rhs
    if k.relation in (Rel.P, Rel.NOT_P):
        return a.base, a.complemented, b.base, not b.complemented, k.relation is Rel.NOT_P
    return a.base, a.complemented, b.base, b.complemented, k.relation is Rel.NOT_D


def _express(cell, px: bool, py: bool) -> SpatialConstraint | None:
    x, cx, y, cy, nonempty = cell
    fx, fy = cx != px, cy != py
    nx = Term(x.name, px, x.atomic)
    ny = Term(y.name, py, y.atomic)
    if fx and fy:
        return None
    if not fx and not fy:
        return SpatialConstraint(Rel.NOT_D if nonempty else Rel.D, nx, ny)
    rel = Rel.NOT_P if nonempty else Rel.P
    return SpatialConstraint(rel, nx, ny) if not fx else SpatialConstraint(rel, ny, nx)


def base_terms(conj: Sequence[SpatialConstraint]) -> list:
    seen: dict = {}
    for k in conj:
        for t in (k.lhs, k.rhs):
            seen.setdefault(t.name, t.base)
    return list(seen.values())


def _dedupe(conj) -> tuple:
    return tuple(dict.fromkeys(conj))


def normalize(conj: Sequence[SpatialConstraint]) -> tuple:
    """Rewrite so that every term appears with a single polarity.

    Chooses the polarity assignment with the fewest complemented terms,
    breaking ties in favour of the polarities already used in ``conj``.
    Atomic terms stay plain.  If no assignment works the conjunction is
    returned unchanged (deduplicated).
    """
    conj = tuple(conj)
    terms = base_terms(conj)
    free = [t for t in terms if not t.atomic]
    cells = [_cell(k) for k in conj]
    occurrences = [(t.name, t.complemented) for k in conj for t in (k.lhs, k.rhs)]

    best = None
    for flags in itertools.product((False, True), repeat=len(free)):
        pol = {t.name: False for t in terms}
        pol.update({t.name: f for t, f in zip(free, flags)})
        rewritten = [_express(c, pol[c[0].name], pol[c[2].name]) for c in cells]
        if any(k is None for k in rewritten):
            continue
        cost = (sum(flags), sum(pol[n] != c for n, c in occurrences))
        if best is None or cost < best[0]:
            best = (cost, rewritten)
    if best is None:
        return _dedupe(conj)
    return _dedupe(best[1])


def polarity_conflicts(conj: Sequence[SpatialConstraint]) -> set:
    """Names of terms that appear both plain and complemented."""
    seen: dict = {}
    for k in conj:
        for t in (k.lhs, k.rhs):
            seen.setdefault(t.name, set()).add(t.complemented)
    return {name for name, pols in seen.items() if len(pols) > 1}


def find_circle_loop(conj: Sequence[SpatialConstraint]) -> tuple:
    """Order a normalized conjunction along a chain of shared circles.

    Each next constraint shares the most recently reached circle when
    possible, so a cyclic constraint graph is walked as a closed loop.
    Disconnected components are chained one after another.  Returns ``()``
    when some term would need both a disc and its complement.
    """
    conj = _dedupe(conj)
    if not conj or polarity_conflicts(conj):
        return ()
    remaining = list(conj)
    order = []
    visited: set = set()
    tail = None
    while remaining:
        pick = next((k for k in remaining if tail in (k.lhs, k.rhs)), None)
        if pick is None:
            pick = next((k for k in remaining if k.lhs in visited or k.rhs in visited), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        if tail == pick.lhs:
            tail = pick.rhs
        elif tail == pick.rhs or (pick.rhs in visited and pick.lhs not in visited):
            tail = pick.lhs
        else:
            tail = pick.rhs
        visited.update((pick.lhs, pick.rhs))
    return tuple(order)


def task_formula(premises: Sequence[Statement], conclusion: Statement | None = None) -> ConstraintFormula:
    """Premises conjoined with the negated conclusion (if given), in DNF."""
    parts = [translate_statement(s) for s in premises]
    if conclusion is not None:
        parts.append(translate_statement(negate_conclusion(conclusion)))
    return conjoin(parts)
