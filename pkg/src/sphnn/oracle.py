"""Ground-truth validity by enumerating Venn-region models.

A model marks each of the 2**k regions over the k non-atomic terms as empty
or nonempty, and places every atomic term (an individual) in one nonempty
region.  Every term must be nonempty and, because a disc never covers the
whole sphere, must also leave something outside.  All 2**(2**k) markings
are evaluated at once as numpy bit masks.
"""

from __future__ import annotations

import itertools

import numpy as np

from .logic import Quantifier, Statement, Term

MAX_TERMS = 5
MAX_REGION_TERMS = 4


class TermLimitError(ValueError):
    pass


class _Universe:
    def __init__(self, names: list):
        self.names = names
        self.k = len(names)
        self.n_regions = 1 << self.k
        self.full = (1 << self.n_regions) - 1
        self.term_mask = {}
        for t, name in enumerate(names):
            m = 0
            for r in range(self.n_regions):
                if r >> t & 1:
                    m |= 1 << r
            self.term_mask[name] = m
        # every marking of the regions, as int64 bit masks
        self.N = np.arange(1 << self.n_regions, dtype=np.int64)

    def lit(self, t: Term) -> int:
        m = self.term_mask[t.name]
        return (self.full & ~m) if t.complemented else m


def _inside(u: _Universe, region: int, t: Term) -> bool:
    return bool(u.lit(t) >> region & 1)


def _holds(s: Statement, u: _Universe, place: dict, disjunction: str) -> np.ndarray:
    """Truth value of ``s`` for every marking in ``u.N``."""
    N = u.N
    for t in s.predicate:
        if t.atomic:
            raise TermLimitError(f"atomic term {t.name!r} used as a predicate")
    if s.subject.atomic:
        region = place[s.subject.name]
        inside = [_inside(u, region, t) for t in s.predicate]
        if s.quantifier in (Quantifier.ALL, Quantifier.SOME):
            value = any(inside)
        else:
            value = not inside[0]
        return np.full(N.shape, value)

    S = N & u.lit(s.subject)
    if s.disjunctive:
        g, h = (u.lit(t) for t in s.predicate)
        if disjunction == "per_disjunct":
            return ((S & ~g) == 0) | ((S & ~h) == 0)
        return (S & ~(g | h)) == 0
    X = u.lit(s.predicate[0])
    q = s.quantifier
    if q is Quantifier.ALL:
        return (S & ~X) == 0
    if q is Quantifier.NO:
        return (S & X) == 0
    if q is Quantifier.SOME:
        return (S & X) != 0
    return (S & ~X) != 0


def _collect_terms(statements) -> tuple:
    plain, atomic = {}, {}
    for s in statements:
        for t in s.terms():
            (atomic if t.atomic else plain).setdefault(t.name, None)
    return list(plain), list(atomic)


def find_models(
    premises, conclusion: Statement | None = None, *, disjunction: str = "per_disjunct", proper: bool = True
):
    """Yield (nonempty_region_mask, atomic_placement) models of premises and not-conclusion."""
    if disjunction not in ("per_disjunct", "classical"):
        raise ValueError("disjunction must be 'per_disjunct' or 'classical'")
    statements = list(premises) + ([conclusion] if conclusion is not None else [])
    names, atoms = _collect_terms(statements)
    if len(names) + len(atoms) > MAX_TERMS or len(names) > MAX_REGION_TERMS:
        raise TermLimitError(
            f"{len(names)} set terms and {len(atoms)} individuals exceed the enumeration limit"
        )
    u = _Universe(names)
    base = np.ones(u.N.shape, dtype=bool)
    for name in names:
        m = u.term_mask[name]
        base &= (u.N & m) != 0
        if proper:
            base &= (u.N & (u.full & ~m)) != 0
    for regions in itertools.product(range(u.n_regions), repeat=len(atoms)):
        place = dict(zip(atoms, regions))
        ok = base.copy()
        for r in regions:
            ok &= (u.N >> r & 1) == 1
        for s in premises:
            ok &= _holds(s, u, place, disjunction)
        if conclusion is not None:
            ok &= ~_holds(conclusion, u, place, disjunction)
        for idx in np.flatnonzero(ok):
            yield int(u.N[idx]), place


def brute_force_validity(task, *, disjunction: str = "per_disjunct", proper: bool = True) -> bool:
    """True iff no model satisfies the premises while falsifying the conclusion."""
    premises, conclusion = task.premises, task.conclusion
    return next(find_models(premises, conclusion, disjunction=disjunction, proper=proper), None) is None


def satisfiable(statements, *, disjunction: str = "per_disjunct", proper: bool = True) -> bool:
    return next(find_models(statements, None, disjunction=disjunction, proper=proper), None) is not None
