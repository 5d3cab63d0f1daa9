"""Pipeline: run tests 1 -> 2 -> 3 over a census with budgets, resumable
JSONL persistence, and a schema-versioned JSON report."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import mpmath

from . import dilog, idealpoints, screening, tropical
from .census import ManifoldRecord
from .groebner import AlgebraBudget
from .outcome import TestOutcome

REPORT_SCHEMA_VERSION = 1
RESULTS_FILENAME = "results.jsonl"
REPORT_FILENAME = "report.json"


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 192
    max_pairs: int = 20000
    max_degree: int = 60
    timeout_s: float = 300.0
    nu_cap: int = 6  # tests 2 and 3 are skipped above this
    tropical_max_subsets: int = 100000
    pass_margin: str = "1e-3"  # test-3 margin, decimal string
    threads: int = 1
    seed: int = 0
    up_to_stage: int = 3

    def __post_init__(self):
        if min(self.precision_bits, self.max_pairs, self.max_degree) <= 0:
            raise ValueError("budgets must be positive")
        if self.timeout_s <= 0 or self.threads <= 0:
            raise ValueError("budgets must be positive")
        if self.up_to_stage not in (1, 2, 3):
            raise ValueError("up_to_stage must be 1, 2 or 3")

    def budget(self) -> AlgebraBudget:
        return AlgebraBudget(
            max_pairs=self.max_pairs,
            max_degree=self.max_degree,
            timeout_s=self.timeout_s,
        )

    @staticmethod
    def from_file(path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return RunConfig(**json.load(fh))


def run_manifold(rec: ManifoldRecord, config: RunConfig) -> TestOutcome:
    """Verdict of the first passing stage, or the last stage's failure."""
    t0 = time.monotonic()
    prec = config.precision_bits

    out = screening.test1(rec, prec)
    if out.verdict == "PASS" or config.up_to_stage == 1:
        return _timed(out, t0)
    k = out.payload["k"]

    if rec.nu > config.nu_cap:
        return _timed(
            TestOutcome(
                rec.name, 2, "INCONCLUSIVE",
                {"k": k, "reason": f"nu={rec.nu} above cap {config.nu_cap}"},
            ),
            t0,
        )

    try:
        out2 = tropical.test2(rec, k, max_subsets=config.tropical_max_subsets)
    except Exception as e:  # contained: any blowup is a per-manifold failure
        out2 = TestOutcome(rec.name, 2, "INCONCLUSIVE", {"k": k, "reason": repr(e)})
    if out2.verdict == "PASS" or config.up_to_stage == 2:
        return _timed(out2, t0)

    try:
        out3 = idealpoints.test3(
            rec,
            prec=prec,
            budget=config.budget(),
            seed=config.seed,
            margin=config.pass_margin,
        )
    except Exception as e:
        out3 = TestOutcome(rec.name, 3, "INCONCLUSIVE", {"reason": repr(e)})
    return _timed(out3, t0)


def _timed(out: TestOutcome, t0: float) -> TestOutcome:
    return TestOutcome(out.name, out.stage, out.verdict, out.payload,
                       duration_s=time.monotonic() - t0)


@dataclass
class CensusSummary:
    total: int = 0
    counts: dict = field(default_factory=dict)  # "stage:verdict" -> n
    undecided: list = field(default_factory=list)

    def add(self, out: TestOutcome):
        self.total += 1
        key = f"stage{out.stage}:{out.verdict}"
        self.counts[key] = self.counts.get(key, 0) + 1
        if out.verdict != "PASS":
            self.undecided.append(out.name)

    @property
    def passes_by_stage(self) -> dict:
        return {s: self.counts.get(f"stage{s}:PASS", 0) for s in (1, 2, 3)}


def run_pipeline(
    census: list[ManifoldRecord],
    config: RunConfig,
    out_dir,
    only: set[str] | None = None,
    resume: bool = False,
    progress=None,
) -> CensusSummary:
    """Run the threefold test; append outcomes to results.jsonl as they land.

    With resume=True, manifolds already present in the results file are
    skipped and their recorded outcomes reused.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results_path = out_dir / RESULTS_FILENAME

    done: dict[str, dict] = {}
    if resume and results_path.exists():
        with open(results_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    obj = json.loads(line)
                    done[obj["name"]] = obj
    elif results_path.exists() and not resume:
        results_path.unlink()

    todo = [r for r in census if only is None or r.name in only]
    summary = CensusSummary()
    outcomes: dict[str, dict] = {}
    with open(results_path, "a", encoding="utf-8") as fh:
        for rec in todo:
            if rec.name in done:
                obj = done[rec.name]
            else:
                out = run_manifold(rec, config)
                obj = out.to_obj()
                fh.write(json.dumps(obj, sort_keys=True) + "\n")
                fh.flush()
            outcomes[rec.name] = obj
            summary.add(TestOutcome(obj["name"], obj["stage"], obj["verdict"]))
            if progress:
                progress(obj)
    report_obj = report(list(outcomes.values()), config, summary)
    with open(out_dir / REPORT_FILENAME, "w", encoding="utf-8") as fh:
        json.dump(report_obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return summary


def report(outcome_objs: list[dict], config: RunConfig, summary: CensusSummary) -> dict:
    """Schema-versioned JSON report body; deterministic for fixed inputs."""
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "config": asdict(config),
        "outcomes": sorted(outcome_objs, key=lambda o: o["name"]),
        "summary": {
            "total": summary.total,
            "counts": dict(sorted(summary.counts.items())),
            "undecided": sorted(summary.undecided),
        },
        "paper_comparison": {
            "stage1_passes": summary.passes_by_stage[1],
            "stage2_additional_passes": summary.passes_by_stage[2],
            "stage3_additional_passes": summary.passes_by_stage[3],
        },
    }


def report_body_without_timings(report_obj: dict) -> dict:
    """Report with per-manifold durations stripped (determinism comparisons)."""
    out = json.loads(json.dumps(report_obj))
    for o in out["outcomes"]:
        o.pop("duration_s", None)
    return out
