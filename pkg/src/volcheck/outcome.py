"""Per-manifold test outcomes shared by the three stages and the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

VERDICTS = ("PASS", "FAIL", "FAIL-DIMENSION", "INCONCLUSIVE")


@dataclass(frozen=True)
class TestOutcome:
    name: str
    stage: int  # 1, 2 or 3
    verdict: str
    payload: dict = field(default_factory=dict)
    duration_s: float = 0.0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.stage not in (1, 2, 3):
            raise ValueError(f"bad stage {self.stage!r}")

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "stage": self.stage,
            "verdict": self.verdict,
            **self.payload,
            "duration_s": round(self.duration_s, 3),
        }
