"""Validity by refutation: try to build a model of premises plus the negated conclusion."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .constructor import Configuration, SolverConfig, constraint_holds, decide_satisfiable
from .logic import task_formula
from .oracle import brute_force_validity  # noqa: F401  (re-exported)

CSV_HEADER = ("task_id", "family", "dim", "verdict", "gold", "agree", "wall_time_s", "disjuncts_tried")


@dataclass
class Verdict:
    valid: bool
    counter_model: Configuration | None = None
    wall_time: float = 0.0
    disjuncts_tried: int = 0
    # the disjunct (before normalization) the counter-model satisfies
    refuted_by: tuple | None = None

    def __post_init__(self):
        if not self.valid and self.counter_model is None:
            raise ValueError("an invalid verdict needs a counter-model")


def decide_validity(task, cfg: SolverConfig = SolverConfig(), n: int = 3) -> Verdict:
    start = time.perf_counter()
    formula = task_formula(task.premises, task.conclusion)
    decision = decide_satisfiable(formula, cfg, n)
    elapsed = time.perf_counter() - start
    if decision.satisfiable:
        return Verdict(False, decision.configuration, elapsed, decision.disjuncts_tried, decision.disjunct)
    return Verdict(True, None, elapsed, decision.disjuncts_tried)


def counter_model_holds(verdict: Verdict, tol: float = 1e-6) -> bool:
    """Re-check a counter-model against its disjunct using relations only."""
    if verdict.valid:
        return True
    return all(constraint_holds(k, verdict.counter_model, tol) for k in verdict.refuted_by)


@dataclass
class Run:
    task_id: str
    family: str
    dim: int
    verdict: Verdict
    gold: bool | None

    @property
    def agree(self) -> bool | None:
        return None if self.gold is None else self.verdict.valid == self.gold

    def row(self) -> tuple:
        return (
            self.task_id,
            self.family,
            self.dim,
            "VALID" if self.verdict.valid else "INVALID",
            "" if self.gold is None else ("VALID" if self.gold else "INVALID"),
            "" if self.agree is None else str(self.agree).lower(),
            f"{self.verdict.wall_time:.6f}",
            self.verdict.disjuncts_tried,
        )


@dataclass
class CorpusReport:
    runs: list = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        judged = [r for r in self.runs if r.agree is not None]
        return sum(r.agree for r in judged) / len(judged) if judged else float("nan")

    def summary(self) -> dict:
        valid = [r.verdict.wall_time for r in self.runs if r.gold]
        invalid = [r.verdict.wall_time for r in self.runs if r.gold is False]

        def mean(xs):
            return sum(xs) / len(xs) if xs else None

        return {
            "runs": len(self.runs),
            "accuracy": self.accuracy,
            "valid_verdicts": sum(r.verdict.valid for r in self.runs),
            "invalid_verdicts": sum(not r.verdict.valid for r in self.runs),
            "mean_time_valid_s": mean(valid),
            "mean_time_invalid_s": mean(invalid),
            "under_5s_invalid": sum(t < 5 for t in invalid),
            "under_120s_valid": sum(t < 120 for t in valid),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.runs:
            w.writerow(r.row())
        return buf.getvalue()

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def _run_one(args) -> Run:
    task, cfg, dim = args
    family = task.family.value if task.family else ""
    return Run(task.id, family, dim, decide_validity(task, cfg, dim), task.gold_valid)


def evaluate_corpus(tasks, cfg: SolverConfig = SolverConfig(), dims=(2, 3), jobs: int = 1) -> CorpusReport:
    """Decide every task at every dimension; rows ordered by task id, then dim."""
    tasks, dims = list(tasks), list(dims)
    if not tasks or not dims:
        raise ValueError("need at least one task and one dimension")
    work = [(t, cfg, d) for t in tasks for d in dims]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(_run_one, work, chunksize=8))
    else:
        runs = [_run_one(w) for w in work]
    runs.sort(key=lambda r: (r.task_id, r.dim))
    return CorpusReport(runs)
