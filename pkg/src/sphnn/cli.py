"""Command-line entry point.

Exit codes: 0 valid (or model built), 1 invalid (or no model), 2 any error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import corpus as corpus_mod
from .constructor import SolverConfig, decide_satisfiable
from .logic import UnsupportedForm, task_formula
from .reasoner import decide_validity, evaluate_corpus
from .render import LabelPlacement, RenderSpec, UnsupportedProjection, export_json, load_json, render_svg
from .syntax import ParseError, parse_statement

EXIT_VALID, EXIT_INVALID, EXIT_ERROR = 0, 1, 2
DESK_DIMS = (2, 3, 15, 30, 100)
FULL_DIMS = (2, 3, 15, 30, 100, 200, 1000, 2000, 3000, 10000)
FORMATS = frozenset({"csv", "json", "svg"})


class CliError(Exception):
    """Any user-facing failure; reported on stderr with exit code 2."""


@dataclass(frozen=True)
class RunManifest:
    corpus: str
    dims: tuple
    solver: SolverConfig
    out: Path
    formats: frozenset = frozenset({"csv", "json"})
    tasks_file: Path | None = None

    def __post_init__(self):
        if self.corpus not in ("extended16", "classic256", "file"):
            raise CliError(f"unknown corpus {self.corpus!r}")
        if self.corpus == "file" and self.tasks_file is None:
            raise CliError("--corpus file needs --tasks PATH")
        if not self.dims or any(d < 2 for d in self.dims):
            raise CliError("dims must be a nonempty list of integers >= 2")
        if not self.formats <= FORMATS:
            raise CliError(f"formats must be drawn from {sorted(FORMATS)}")


# -- shared option handling -------------------------------------------------


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _solver_config(args) -> SolverConfig:
    """Defaults, then the --config file, then SPHNN_SEED (if no seed yet), then flags."""
    overrides = {}
    if args.config:
        try:
            overrides = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise CliError(f"cannot read config {args.config}: {e}") from None
        if not isinstance(overrides, dict):
            raise CliError("config file must hold a JSON object")
        known = {f.name for f in dataclasses.fields(SolverConfig)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise CliError(f"unknown solver settings in config: {', '.join(unknown)}")
    if "seed" not in overrides and os.environ.get("SPHNN_SEED"):
        try:
            overrides["seed"] = int(os.environ["SPHNN_SEED"])
        except ValueError:
            raise CliError("SPHNN_SEED must be an integer") from None
    if args.seed is not None:
        overrides["seed"] = args.seed
    try:
        return SolverConfig(**overrides)
    except (TypeError, ValueError) as e:
        raise CliError(f"invalid solver settings: {e}") from None


def _atomic(args) -> tuple:
    names = []
    for item in args.atomic or ():
        names.extend(x for x in item.split(",") if x)
    return tuple(names)


def _parse_all(texts, atomic) -> list:
    return [parse_statement(t, atomic) for t in texts]


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise CliError(f"cannot write {path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        _write(Path(out), text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------


def cmd_decide(args) -> int:
    if len(args.statements) < 2:
        raise CliError("decide needs at least one premise and a conclusion")
    atomic = _atomic(args)
    *premises, conclusion = _parse_all(args.statements, atomic)
    task = corpus_mod.ReasoningTask("cli", tuple(premises), conclusion, atomic=atomic)
    verdict = decide_validity(task, _solver_config(args), args.dim)
    if verdict.valid:
        print("VALID")
        return EXIT_VALID
    path = Path(args.out or ".") / "counter_model.json"
    _write(path, export_json(verdict.counter_model))
    print(f"INVALID (counter-model: {path})")
    return EXIT_INVALID


def cmd_construct(args) -> int:
    statements = _parse_all(args.statements, _atomic(args))
    decision = decide_satisfiable(task_formula(statements), _solver_config(args), args.dim)
    if not decision.satisfiable:
        print("no model found", file=sys.stderr)
        return EXIT_INVALID
    conf = decision.configuration
    if args.format == "svg":
        text = render_svg(conf, RenderSpec(labels=LabelPlacement(args.labels)))
    else:
        text = export_json(conf) + "\n"
    _emit(text, args.out)
    return EXIT_VALID


def cmd_render(args) -> int:
    try:
        conf = load_json(Path(args.model).read_text())
    except (OSError, ValueError, KeyError) as e:
        raise CliError(f"cannot load configuration {args.model}: {e}") from None
    spec = RenderSpec(width=args.width, height=args.height, labels=LabelPlacement(args.labels))
    _emit(render_svg(conf, spec), args.out)
    return EXIT_VALID


def _corpus_tasks(name: str, tasks_file: Path | None = None) -> list:
    if name == "extended16":
        return corpus_mod.generate_extended16()
    if name == "classic256":
        return corpus_mod.generate_classic256()
    try:
        return corpus_mod.load_jsonl(tasks_file.read_text())
    except OSError as e:
        raise CliError(f"cannot read tasks {tasks_file}: {e}") from None


def cmd_gen_corpus(args) -> int:
    _emit(corpus_mod.dump_jsonl(_corpus_tasks(args.corpus)), args.out)
    return EXIT_VALID


def run_bench(manifest: RunManifest, jobs: int = 1, log=print):
    tasks = _corpus_tasks(manifest.corpus, manifest.tasks_file)
    try:
        manifest.out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise CliError(f"cannot create output directory {manifest.out}: {e}") from None
    if not os.access(manifest.out, os.W_OK):
        raise CliError(f"output directory {manifest.out} is not writable")
    report = evaluate_corpus(tasks, manifest.solver, manifest.dims, jobs)
    # every file is written here, after the runs are merged, so order never depends on workers
    if "csv" in manifest.formats:
        _write(manifest.out / "results.csv", report.to_csv())
    if "json" in manifest.formats:
        _write(manifest.out / "summary.json", report.summary_json() + "\n")
    if "svg" in manifest.formats:
        for run in report.runs:
            if not run.verdict.valid and run.dim in (2, 3):
                _write(manifest.out / "svg" / f"{run.task_id}-n{run.dim}.svg", render_svg(run.verdict.counter_model))
    s = report.summary()

    def secs(x):
        return "n/a" if x is None else f"{x:.3f}s"

    log(f"runs: {s['runs']}  accuracy: {s['accuracy']:.4f}")
    log(f"verdicts: {s['valid_verdicts']} valid, {s['invalid_verdicts']} invalid")
    log(f"mean time: valid {secs(s['mean_time_valid_s'])}, invalid {secs(s['mean_time_invalid_s'])}")
    log(f"invalid under 5s: {s['under_5s_invalid']}  valid under 120s: {s['under_120s_valid']}")
    return report


def cmd_bench(args) -> int:
    dims = FULL_DIMS if args.full_grid else (args.dims or DESK_DIMS)
    formats = frozenset(f for f in args.format.split(",") if f)
    manifest = RunManifest(
        corpus=args.corpus,
        dims=tuple(dims),
        solver=_solver_config(args),
        out=Path(args.out),
        formats=formats,
        tasks_file=Path(args.tasks) if args.tasks else None,
    )
    report = run_bench(manifest, args.jobs)
    # bench exits 1 when any verdict disagrees with a known gold label
    return EXIT_VALID if all(r.agree is not False for r in report.runs) else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sphnn", description="Syllogistic reasoning with discs on spheres.")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to $SPHNN_SEED, then 0)")
        sp.add_argument("--config", help="JSON file of SolverConfig overrides; flags take precedence")

    def statement_flags(sp):
        sp.add_argument("--atomic", action="append", metavar="NAMES", help="comma-separated individual names")
        sp.add_argument("--dim", type=int, default=3, help="ambient dimension of the sphere (default 3)")

    d = sub.add_parser("decide", help="decide whether premises entail a conclusion")
    d.add_argument("statements", nargs="+", help="premises followed by the conclusion")
    statement_flags(d)
    solver_flags(d)
    d.add_argument("--out", help="directory for counter_model.json (default: current directory)")
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("construct", help="build a diagram satisfying the statements")
    c.add_argument("statements", nargs="+")
    statement_flags(c)
    solver_flags(c)
    c.add_argument("--format", choices=("json", "svg"), default="json")
    c.add_argument("--labels", choices=[x.value for x in LabelPlacement], default="legend")
    c.add_argument("--out", help="output file (default: stdout)")
    c.set_defaults(func=cmd_construct)

    r = sub.add_parser("render", help="draw a configuration JSON file as SVG")
    r.add_argument("model", help="configuration JSON")
    r.add_argument("--width", type=int, default=520)
    r.add_argument("--height", type=int, default=420)
    r.add_argument("--labels", choices=[x.value for x in LabelPlacement], default="legend")
    r.add_argument("--out", help="output file (default: stdout)")
    r.set_defaults(func=cmd_render)

    g = sub.add_parser("gen-corpus", help="write a benchmark corpus as JSON lines")
    g.add_argument("corpus", choices=("extended16", "classic256"))
    g.add_argument("--out", help="output file (default: stdout)")
    g.set_defaults(func=cmd_gen_corpus)

    b = sub.add_parser("bench", help="evaluate a corpus over several dimensions")
    b.add_argument("--corpus", choices=("extended16", "classic256", "file"), default="extended16")
    b.add_argument("--tasks", help="JSON-lines task file when --corpus file")
    b.add_argument("--dims", type=_int_list, help="comma-separated dimensions (default 2,3,15,30,100)")
    b.add_argument("--full-grid", action="store_true", help="use all dimensions from 2 up to 10000")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="bench-out", help="output directory")
    b.add_argument("--format", default="csv,json", help="comma-separated subset of csv,json,svg")
    solver_flags(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_VALID
    if getattr(args, "dim", 3) < 2:
        print("error: --dim must be at least 2", file=sys.stderr)
        return EXIT_ERROR
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (CliError, UnsupportedForm, UnsupportedProjection, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
