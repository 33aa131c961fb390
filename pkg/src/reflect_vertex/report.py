from __future__ import annotations

from dataclasses import dataclass, field

from .scalarfield import Scalar, fmt


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one exact identity check at one sampled point."""

    check_id: str
    paper_ref: str
    seed: int
    point_summary: str
    lhs: Scalar
    rhs: Scalar
    passed: bool
    elapsed: float = field(default=0.0, compare=False)  # milliseconds

    def __post_init__(self):
        if self.passed != (self.lhs == self.rhs):
            raise ValueError(f"{self.check_id}: passed flag disagrees with lhs == rhs")

    def to_json(self, timing: bool = True) -> dict:
        return {
            "check_id": self.check_id,
            "paper_ref": self.paper_ref,
            "seed": self.seed,
            "point": self.point_summary,
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
            "passed": self.passed,
            "elapsed_ms": round(self.elapsed, 3) if timing else 0,
        }
