"""The two benchmark corpora and their JSON-lines export."""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, replace

from .logic import Quantifier, Statement, Term
from .oracle import brute_force_validity
from .syntax import parse_line, parse_statement


class Family(enum.Enum):
    EXTENDED16 = "Extended16"
    CLASSIC256 = "Classic256"


@dataclass(frozen=True)
class ReasoningTask:
    id: str
    premises: tuple
    conclusion: Statement
    gold_valid: bool | None = None
    family: Family | None = None
    atomic: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        if not self.premises:
            raise ValueError("a task needs at least one premise")

    @property
    def line(self) -> str:
        return ", ".join(str(s) for s in (*self.premises, self.conclusion))

    def to_json(self) -> str:
        return json.dumps(
            {
                "id": self.id,
                "premises": [str(s) for s in self.premises],
                "conclusion": str(self.conclusion),
                "gold_valid": self.gold_valid,
                "family": self.family.value if self.family else None,
                "atomic": list(self.atomic),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ReasoningTask":
        obj = json.loads(text)
        atomic = tuple(obj.get("atomic", ()))
        return cls(
            id=obj["id"],
            premises=tuple(parse_statement(s, atomic) for s in obj["premises"]),
            conclusion=parse_statement(obj["conclusion"], atomic),
            gold_valid=obj.get("gold_valid"),
            family=Family(obj["family"]) if obj.get("family") else None,
            atomic=atomic,
        )


# Configuration lines of the 16 reasoning types, four conclusion variants each.
EXTENDED16_LINES = (
    # 1. generalised modus ponens
    "all F are G, all a are F, all a are G",
    "all F are G, all a are F, no a are G",
    "all F are G, all a are F, some a are G",
    "all F are G, all a are F, some a are not G",
    # 2. negation variant of generalised modus ponens
    "all F are c_G, all a are F, all a are c_G",
    "all F are c_G, all a are F, no a are c_G",
    "all F are c_G, all a are F, some a are c_G",
    "all F are c_G, all a are F, some a are not c_G",
    # 3. generalised contraposition
    "all F are c_G, all G are c_F",
    "all F are c_G, no G are c_F",
    "all F are c_G, some G are c_F",
    "all F are c_G, some G are not c_F",
    # 4. negation variant of generalised contraposition
    "all F are G, all c_G are c_F",
    "all F are G, no c_G are c_F",
    "all F are G, some c_G are c_F",
    "all F are G, some c_G are not c_F",
    # 5. hypothetical syllogism 1
    "all F are G, all G are H, all F are H",
    "all F are G, all G are H, no F are H",
    "all F are G, all G are H, some F are H",
    "all F are G, all G are H, some F are not H",
    # 6. negation variant of hypothetical syllogism 1
    "all F are c_G, all c_G are H, all F are H",
    "all F are c_G, all c_G are H, no F are H",
    "all F are c_G, all c_G are H, some F are H",
    "all F are c_G, all c_G are H, some F are not H",
    # 7. hypothetical syllogism 2
    "all F are G, all c_H are c_G, all F are H",
    "all F are G, all c_H are c_G, no F are H",
    "all F are G, all c_H are c_G, some F are H",
    "all F are G, all c_H are c_G, some F are not H",
    # 8. negation variant of hypothetical syllogism 2
    "all F are c_G, all c_H are G, all F are H",
    "all F are c_G, all c_H are G, no F are H",
    "all F are c_G, all c_H are G, some F are H",
    "all F are c_G, all c_H are G, some F are not H",
    # 9. hypothetical syllogism 3
    "all F are G, all a are H, all a are c_G, all a are c_F",
    "all F are G, all a are H, all a are c_G, no a are c_F",
    "all F are G, all a are H, all a are c_G, some a are c_F",
    "all F are G, all a are H, all a are c_G, some a are not c_F",
    # 10. negation variant of hypothetical syllogism 3
    "all c_F are G, all a are H, all a are c_G, all a are F",
    "all c_F are G, all a are H, all a are c_G, no a are F",
    "all c_F are G, all a are H, all a are c_G, some a are F",
    "all c_F are G, all a are H, all a are c_G, some a are not F",
    # 11. generalised modus tollens
    "all F are G, all a are c_G, all a are c_F",
    "all F are G, all a are c_G, no a are c_F",
    "all F are G, all a are c_G, some a are c_F",
    "all F are G, all a are c_G, some a are not c_F",
    # 12. negation variant of generalised modus tollens
    "all F are c_G, all a are G, all a are c_F",
    "all F are c_G, all a are G, no a are c_F",
    "all F are c_G, all a are G, some a are c_F",
    "all F are c_G, all a are G, some a are not c_F",
    # 13. disjunctive syllogism
    "all F are G_or_H, all F are c_G, all F are H",
    "all F are G_or_H, all F are c_G, no F are H",
    "all F are G_or_H, all F are c_G, some F are H",
    "all F are G_or_H, all F are c_G, some F are not H",
    # 14. negation variant of disjunctive syllogism
    "all F are G_or_H, all G are c_F, all F are H",
    "all F are G_or_H, all G are c_F, no F are H",
    "all F are G_or_H, all G are c_F, some F are H",
    "all F are G_or_H, all G are c_F, some F are not H",
    # 15. generalised dilemma
    "all F are G_or_H, all G are J, all H are J, all F are J",
    "all F are G_or_H, all G are J, all H are J, no F are J",
    "all F are G_or_H, all G are J, all H are J, some F are J",
    "all F are G_or_H, all G are J, all H are J, some F are not J",
    # 16. negation variant of generalised dilemma
    "all F are G_or_H, all J are c_G, all J are c_H, all F are c_J",
    "all F are G_or_H, all J are c_G, all J are c_H, no F are c_J",
    "all F are G_or_H, all J are c_G, all J are c_H, some F are c_J",
    "all F are G_or_H, all J are c_G, all J are c_H, some F are not c_J",
)

EXTENDED16_ATOMIC = ("a",)
_MOOD_SUFFIX = ("all", "no", "some", "somenot")


def with_gold(task: ReasoningTask) -> ReasoningTask:
    return replace(task, gold_valid=brute_force_validity(task))


def generate_extended16() -> list:
    tasks = []
    for i, line in enumerate(EXTENDED16_LINES):
        premises, conclusion = parse_line(line, EXTENDED16_ATOMIC)
        uses_atom = any(t.atomic for s in (*premises, conclusion) for t in s.terms())
        task = ReasoningTask(
            id=f"ext{i // 4 + 1:02d}-{_MOOD_SUFFIX[i % 4]}",
            premises=premises,
            conclusion=conclusion,
            family=Family.EXTENDED16,
            atomic=EXTENDED16_ATOMIC if uses_atom else (),
        )
        tasks.append(with_gold(task))
    return tasks


_MOODS = (
    ("A", Quantifier.ALL),
    ("E", Quantifier.NO),
    ("I", Quantifier.SOME),
    ("O", Quantifier.SOME_NOT),
)
# (major premise, minor premise) term order per figure; S=F, M=G, P=H
_FIGURES = {
    1: (("G", "H"), ("F", "G")),
    2: (("H", "G"), ("F", "G")),
    3: (("G", "H"), ("G", "F")),
    4: (("H", "G"), ("G", "F")),
}


def classic_task_id(major: str, minor: str, conclusion: str, figure: int) -> str:
    return f"cls-{major}{minor}{conclusion}-{figure}"


def generate_classic256() -> list:
    tasks = []
    for (m1, q1), (m2, q2), figure, (mc, qc) in itertools.product(_MOODS, _MOODS, _FIGURES, _MOODS):
        (a1, b1), (a2, b2) = _FIGURES[figure]
        premises = (
            Statement(q1, Term(a1), Term(b1)),
            Statement(q2, Term(a2), Term(b2)),
        )
        conclusion = Statement(qc, Term("F"), Term("H"))
        task = ReasoningTask(
            id=classic_task_id(m1, m2, mc, figure),
            premises=premises,
            conclusion=conclusion,
            family=Family.CLASSIC256,
        )
        tasks.append(with_gold(task))
    return tasks


def dump_jsonl(tasks) -> str:
    return "".join(t.to_json() + "\n" for t in tasks)


def load_jsonl(text: str) -> list:
    return [ReasoningTask.from_json(line) for line in text.splitlines() if line.strip()]
