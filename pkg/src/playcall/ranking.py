"""Rank candidate plays for a game situation.

Each candidate play call is merged with the situation into a full feature
vector and scored by every loaded model. The output order is the advice:
best scoring play first. All numbers are model scores, not observed
outcomes.
"""

from dataclasses import dataclass

from .evaluate import TARGET_TASKS
from .persist import ModelBundle
from .playparse import PASS_LENGTHS, SIDES, PlayFeatures

# primary-score preference when the caller does not pick one
TARGET_PREFERENCE = ("progress", "success", "yards")


@dataclass(frozen=True)
class Situation:
    """Game context: who has the ball, where, when, and what they need."""

    team: str
    opponent: str
    half: int
    time: float
    position: int
    down: int
    togo: int

    def __post_init__(self):
        if not self.team or not self.opponent:
            raise ValueError("team and opponent are required")
        if self.team == self.opponent:
            raise ValueError("team and opponent must differ")
        if self.half not in (1, 2):
            raise ValueError(f"half must be 1 or 2, got {self.half}")
        if not 0 <= self.time <= 1800:
            raise ValueError(f"time out of range: {self.time}")
        if not 1 <= self.position <= 99:
            raise ValueError(f"position out of range: {self.position}")
        if not 1 <= self.down <= 4:
            raise ValueError(f"down out of range: {self.down}")
        if self.togo < 1:
            raise ValueError(f"togo out of range: {self.togo}")

    def to_dict(self) -> dict:
        return {
            "team": self.team,
            "opponent": self.opponent,
            "half": self.half,
            "time": self.time,
            "position": self.position,
            "down": self.down,
            "togo": self.togo,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Situation":
        return cls(
            team=d["team"],
            opponent=d["opponent"],
            half=d["half"],
            time=d["time"],
            position=d["position"],
            down=d["down"],
            togo=d["togo"],
        )


@dataclass(frozen=True)
class CandidatePlay:
    """One play call: what the offense would run, without the context."""

    is_pass: int
    side: str
    passlen: str
    shotgun: int
    qbrun: int

    def __post_init__(self):
        for name in ("is_pass", "shotgun", "qbrun"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        if self.side not in SIDES:
            raise ValueError(f"bad side: {self.side!r}")
        if self.passlen not in PASS_LENGTHS:
            raise ValueError(f"bad passlen: {self.passlen!r}")
        # same consistency rules as parsed plays
        if (self.passlen != "none") != (self.is_pass == 1):
            raise ValueError("passlen must be set iff the play is a pass")
        if self.qbrun == 1 and self.is_pass == 1:
            raise ValueError("a quarterback run cannot also be a pass")

    def label(self) -> str:
        """Short human-readable play name for tables and figures."""
        if self.is_pass:
            parts = ["pass", self.passlen]
            if self.side != "none":
                parts.append(self.side)
        else:
            parts = ["qb run" if self.qbrun else "run"]
            if self.side != "none":
                parts.append(self.side)
        if self.shotgun:
            parts.append("(shotgun)")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "pass": self.is_pass,
            "side": self.side,
            "passlen": self.passlen,
            "shotgun": self.shotgun,
            "qbrun": self.qbrun,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CandidatePlay":
        return cls(
            is_pass=d["pass"],
            side=d["side"],
            passlen=d["passlen"],
            shotgun=d["shotgun"],
            qbrun=d["qbrun"],
        )


@dataclass(frozen=True)
class RankedPlay:
    """A candidate with its model scores and final position (1 = best)."""

    candidate: CandidatePlay
    rank: int
    progress: float | None = None
    success_score: float | None = None
    yards: float | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if (
            self.progress is None
            and self.success_score is None
            and self.yards is None
        ):
            raise ValueError("a ranked play needs at least one score")

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "candidate": self.candidate.to_dict(),
            "progress": self.progress,
            "success_score": self.success_score,
            "yards": self.yards,
        }


def merge_play(situation: Situation, candidate: CandidatePlay) -> PlayFeatures:
    """Combine situation and play call into one feature record."""
    return PlayFeatures(
        team=situation.team,
        opponent=situation.opponent,
        half=situation.half,
        time=situation.time,
        position=situation.position,
        down=situation.down,
        togo=situation.togo,
        shotgun=candidate.shotgun,
        is_pass=candidate.is_pass,
        side=candidate.side,
        passlen=candidate.passlen,
        qbrun=candidate.qbrun,
    )


def enumerate_candidates(playbook=None) -> list[CandidatePlay]:
    """The candidate plays to rank.

    Without a playbook this is the full combinatorial set of valid play
    calls: 12 passes (3 sides x 2 lengths x 2 shotgun) and 12 runs
    (3 sides x 2 shotgun x 2 qbrun). A playbook restricts the set; its
    entries may be CandidatePlay objects or plain dicts.
    """
    if playbook is not None:
        entries = list(playbook)
        if not entries:
            raise ValueError("playbook is empty")
        out = []
        for entry in entries:
            if isinstance(entry, CandidatePlay):
                out.append(entry)
            elif isinstance(entry, dict):
                out.append(CandidatePlay.from_dict(entry))
            else:
                raise TypeError(
                    f"playbook entries must be plays, got {type(entry).__name__}"
                )
        return out
    out = []
    for side in ("left", "middle", "right"):
        for passlen in ("short", "deep"):
            for shotgun in (0, 1):
                out.append(
                    CandidatePlay(
                        is_pass=1,
                        side=side,
                        passlen=passlen,
                        shotgun=shotgun,
                        qbrun=0,
                    )
                )
    for side in ("left", "middle", "right"):
        for shotgun in (0, 1):
            for qbrun in (0, 1):
                out.append(
                    CandidatePlay(
                        is_pass=0,
                        side=side,
                        passlen="none",
                        shotgun=shotgun,
                        qbrun=qbrun,
                    )
                )
    return out


def _bundle_map(bundles) -> dict:
    if isinstance(bundles, ModelBundle):
        bundles = [bundles]
    if isinstance(bundles, dict):
        items = list(bundles.items())
    else:
        items = [(b.target, b) for b in bundles]
    out = {}
    for target, bundle in items:
        if not isinstance(bundle, ModelBundle):
            raise TypeError(
                f"expected ModelBundle, got {type(bundle).__name__}"
            )
        if target != bundle.target:
            raise ValueError(
                f"bundle keyed {target!r} predicts {bundle.target!r}"
            )
        if target in out:
            raise ValueError(f"duplicate bundle for target {target!r}")
        out[target] = bundle
    return out


def choose_primary(loaded_targets, primary: str | None = None) -> str:
    """Pick the score column that orders the ranking."""
    loaded = set(loaded_targets)
    if primary is not None:
        if primary not in TARGET_TASKS:
            raise ValueError(f"unknown primary target {primary!r}")
        if primary not in loaded:
            raise ValueError(f"no model loaded for primary target {primary!r}")
        return primary
    for target in TARGET_PREFERENCE:
        if target in loaded:
            return target
    raise ValueError("at least one model bundle is required")


def rank_plays(
    situation: Situation,
    candidates,
    bundles,
    primary: str | None = None,
) -> list[RankedPlay]:
    """Score every candidate play in the situation and sort best-first.

    ``bundles`` holds one trained model per target (any of success, yards,
    progress). The ranking is ordered by the primary target's score,
    descending; the default primary is progress when that model is loaded.
    Ties keep candidate list order.
    """
    by_target = _bundle_map(bundles)
    if not by_target:
        raise ValueError("at least one model bundle is required")
    plays = list(candidates)
    if not plays:
        raise ValueError("empty candidate list")
    primary = choose_primary(by_target, primary)
    features = [merge_play(situation, c) for c in plays]
    scores = {t: b.scores(features) for t, b in by_target.items()}

    def score_at(target, index):
        col = scores.get(target)
        return None if col is None else float(col[index])

    order = sorted(
        range(len(plays)), key=lambda i: (-scores[primary][i], i)
    )
    return [
        RankedPlay(
            candidate=plays[i],
            rank=pos + 1,
            progress=score_at("progress", i),
            success_score=score_at("success", i),
            yards=score_at("yards", i),
        )
        for pos, i in enumerate(order)
    ]
