"""Outcome targets computed from parsed plays.

Three labels per play: a binary success flag, raw yards gained, and a
bounded progress measure in [0, 1] that credits partial gains on early
downs and only full conversions on downs 3 and 4.
"""

from __future__ import annotations

from dataclasses import dataclass

from .playparse import PlayFeatures, PlayOutcome


@dataclass(frozen=True)
class PlayLabels:
    success: int
    yards: float
    progress: float

    def __post_init__(self):
        if self.success not in (0, 1):
            raise ValueError("success must be 0 or 1")
        if not 0.0 <= self.progress <= 1.0:
            raise ValueError(f"progress out of range: {self.progress}")

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "yards": self.yards,
            "progress": self.progress,
        }


def success_label(outcome: PlayOutcome, togo: int) -> int:
    """1 when the play scored a touchdown or covered the distance to go."""
    if togo < 1:
        raise ValueError(f"togo must be >= 1, got {togo}")
    return 1 if outcome.touchdown == 1 or outcome.gained >= togo else 0


def progress(down: int, togo: int, gained: int) -> float:
    """Fraction of the needed distance covered, penalised by down.

    Full conversions score 1.  On downs 3 and 4 anything short scores 0.
    On downs 1 and 2 the score is (gained/togo)**down with the ratio
    clamped to [0, 1] first, so losses never score above 0.  Integer
    exponentiation before division keeps reference values such as
    (7/10)**2 = 0.49 exact in floating point.
    """
    if down not in (1, 2, 3, 4):
        raise ValueError(f"down must be 1..4, got {down}")
    if togo < 1:
        raise ValueError(f"togo must be >= 1, got {togo}")
    if gained >= togo:
        return 1.0
    if down >= 3:
        return 0.0
    if gained <= 0:
        return 0.0
    return (gained ** down) / (togo ** down)


def compute_labels(features: PlayFeatures, outcome: PlayOutcome) -> PlayLabels:
    """Bundle the three targets for one play.

    A touchdown forces progress to 1 so that success and full progress
    coincide even on odd records where togo exceeds the scoring distance.
    """
    success = success_label(outcome, features.togo)
    prog = 1.0 if success else progress(features.down, features.togo, outcome.gained)
    return PlayLabels(success=success, yards=float(outcome.gained), progress=prog)
