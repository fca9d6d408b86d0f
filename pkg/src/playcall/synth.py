"""Synthetic play-by-play generator for desk-scale experiments.

Renders syntactically valid gamebook descriptions from drawn play
parameters and keeps the drawn intent alongside, so parsing can be
audited against ground truth that never went through the parser.

Planted structure: deep passes gain ~11.1 yards on average, everything
else ~5.3, and a zero-mean short-yardage boost shifts gains up when
togo <= 7 and down when togo >= 8.  That makes togo ~7.5 the single
strongest success split while leaving the per-play-type mean gains at
their nominal values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .dataset import NFL_TEAMS
from .labels import PlayLabels, compute_labels
from .playparse import PlayFeatures, PlayOutcome, RawPlayRecord, Rejection

_RUN_PHRASES = (
    ("left end", "left"),
    ("left tackle", "left"),
    ("left guard", "left"),
    ("up the middle", "middle"),
    ("right guard", "right"),
    ("right tackle", "right"),
    ("right end", "right"),
)

_FIRST = ("A", "B", "C", "D", "E", "J", "K", "M", "R", "T")
_LAST = (
    "Adams", "Baker", "Cole", "Davis", "Evans", "Foster", "Gray", "Hall",
    "Irwin", "Jones", "Keller", "Lane", "Mills", "Nolan", "Owens", "Price",
    "Quinn", "Reyes", "Smith", "Turner",
)


@dataclass(frozen=True)
class SynthSpec:
    """Generator parameters; defaults carry the planted signal."""

    n: int
    teams: tuple = NFL_TEAMS
    pass_rate: float = 0.55
    deep_rate: float = 0.30
    scramble_rate: float = 0.08
    shotgun_rate: float = 0.35
    intercept_rate: float = 0.0
    reject_rate: float = 0.0
    mean_deep: float = 11.1
    mean_other: float = 5.3
    sd_deep: float = 3.5
    sd_other: float = 4.0
    short_togo_boost: float = 1.5
    togo_max: int = 15

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if len(self.teams) < 2:
            raise ValueError("need at least two teams")
        for name in ("pass_rate", "deep_rate", "scramble_rate", "shotgun_rate",
                     "intercept_rate", "reject_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        if not 1 <= self.togo_max <= 30:
            raise ValueError(f"togo_max out of range: {self.togo_max}")
        if self.sd_deep <= 0 or self.sd_other <= 0:
            raise ValueError("standard deviations must be positive")


@dataclass
class SyntheticPlay:
    """One generated record plus its ground-truth intent."""

    record: RawPlayRecord
    features: PlayFeatures | None = None
    outcome: PlayOutcome | None = None
    labels: PlayLabels | None = None
    rejection: Rejection | None = None

    def expected_dict(self) -> dict:
        if self.rejection is not None:
            return {"rejection": self.rejection.reason}
        return {
            "features": self.features.to_dict(),
            "outcome": self.outcome.to_dict(),
            "labels": self.labels.to_dict(),
        }


def format_clock(clock_seconds: int) -> str:
    minutes, seconds = divmod(clock_seconds, 60)
    if minutes == 0:
        return f"(:{seconds:02d})"
    return f"({minutes}:{seconds:02d})"


def _spot_text(team: str, opponent: str, yards_to_goal: int) -> str:
    """Field position in gamebook terms for a ball yards_to_goal out."""
    if yards_to_goal <= 50:
        return f"{opponent} {yards_to_goal}"
    return f"{team} {100 - yards_to_goal}"


def _player(rng: np.random.Generator) -> str:
    return f"{_FIRST[rng.integers(len(_FIRST))]}.{_LAST[rng.integers(len(_LAST))]}"


def _gain_phrase(gained: int) -> str:
    if gained == 0:
        return "for no gain"
    if gained in (1, -1):
        return f"for {gained} yard"
    return f"for {gained} yards"


def _render_play(rng, team, opponent, yardline, clock, p) -> str:
    """Render the relevant-play description for drawn parameters p."""
    qb = _player(rng)
    prefix = format_clock(clock) + " "
    if p["shotgun"]:
        prefix += "(Shotgun) "
    new_spot = yardline - p["gained"]
    spot = _spot_text(team, opponent, new_spot) if new_spot >= 1 else None

    if p["qbrun"]:
        phrase = p["run_phrase"]
        body = f"{qb} scrambles {phrase}"
    elif p["is_pass"]:
        body = f"{qb} pass {p['passlen']} {p['side']}"
        if p["intercepted"]:
            picker = _player(rng)
            return (f"{prefix}{body} intended for {_player(rng)} "
                    f"INTERCEPTED by {picker} at "
                    f"{_spot_text(team, opponent, yardline)}.")
        if p["incomplete"]:
            return f"{prefix}{body} incomplete intended for {_player(rng)}."
        body += f" to {_player(rng)}"
    else:
        body = f"{qb} {p['run_phrase']}"

    if p["touchdown"]:
        return f"{prefix}{body} {_gain_phrase(p['gained'])}, TOUCHDOWN."
    tackler = _player(rng)
    return f"{prefix}{body} to {spot} {_gain_phrase(p['gained'])} ({tackler})."


def _render_reject(rng, reason, team, opponent, clock) -> tuple[str, int]:
    """Return (description, quarter_override) for a rejected record."""
    a, b = _player(rng), _player(rng)
    prefix = format_clock(clock) + " "
    texts = {
        "penalty": (f"{prefix}{a} pass short left to {b} to {opponent} 30 "
                    f"for 6 yards. PENALTY on {team}-{a}, Offensive Holding, "
                    f"10 yards, enforced at {team} 24."),
        "punt": (f"{prefix}{a} punts 48 yards to {opponent} 12, "
                 f"Center-{b}, fair catch."),
        "field_goal": (f"{prefix}{a} 32 yard field goal is GOOD, "
                       f"Center-{b}, Holder-{a}."),
        "kick": (f"{a} kicks 65 yards from {team} 35 to end zone, Touchback."),
        "sack": f"{prefix}{a} sacked at {team} 22 for -8 yards ({b}).",
        "fumble": (f"{prefix}{a} up the middle to {team} 33 for 4 yards. "
                   f"FUMBLES ({b}), recovered by {opponent}-{b} at {team} 31."),
        "timeout_or_admin": f"Timeout #2 by {team} at {format_clock(clock)[1:-1]}.",
        "no_play_sentence": f"{prefix}Direct snap to {b}, handed to {a}.",
        "unparseable": f"{prefix}{a} to {opponent} 27 for 3 yards ({b}).",
    }
    if reason == "overtime":
        return (f"{prefix}{a} up the middle to {team} 40 "
                f"for 2 yards ({b})."), 5
    return texts[reason], 0


_REJECT_CHOICES = (
    "penalty", "punt", "field_goal", "kick", "sack", "fumble",
    "timeout_or_admin", "no_play_sentence", "unparseable", "overtime",
)


def synthesize_plays(spec: SynthSpec, seed: int) -> list[SyntheticPlay]:
    """Generate spec.n plays with ground-truth intent attached."""
    rng = np.random.default_rng(seed)
    teams = tuple(spec.teams)
    plays = []
    for i in range(spec.n):
        game_id = f"SYN{seed:08d}-{i // 140:04d}"
        ti, oi = rng.choice(len(teams), size=2, replace=False)
        team, opponent = teams[ti], teams[oi]
        quarter = int(rng.integers(1, 5))
        clock = int(rng.integers(0, 901))
        down = int(rng.choice(4, p=(0.45, 0.30, 0.20, 0.05))) + 1
        togo = int(rng.integers(1, spec.togo_max + 1))
        yardline = int(rng.integers(togo, 100))

        if rng.random() < spec.reject_rate:
            reason = _REJECT_CHOICES[rng.integers(len(_REJECT_CHOICES))]
            description, q_override = _render_reject(rng, reason, team,
                                                     opponent, clock)
            record = RawPlayRecord(
                game_id=game_id, team=team, opponent=opponent,
                quarter=q_override or quarter, clock_seconds=clock,
                yardline=yardline, down=down, togo=togo,
                description=description,
            )
            plays.append(SyntheticPlay(record=record,
                                       rejection=Rejection(reason)))
            continue

        is_pass = rng.random() < spec.pass_rate
        qbrun = (not is_pass) and rng.random() < spec.scramble_rate
        shotgun = rng.random() < spec.shotgun_rate
        passlen = "none"
        if is_pass:
            passlen = "deep" if rng.random() < spec.deep_rate else "short"
            side = ("left", "middle", "right")[rng.integers(3)]
            run_phrase = None
        else:
            run_phrase, side = _RUN_PHRASES[rng.integers(len(_RUN_PHRASES))]

        deep = passlen == "deep"
        mean = spec.mean_deep if deep else spec.mean_other
        sd = spec.sd_deep if deep else spec.sd_other
        # zero-mean over togo ~ U{1..15}: +c on 7 short values, -7c/8 on 8
        boost = spec.short_togo_boost
        mean += boost if togo <= 7 else -boost * 7.0 / 8.0
        gained = int(round(rng.normal(mean, sd)))
        # losses bottom out at 10 yards and never cross the own goal line
        gained = max(gained, -10, yardline - 99)
        touchdown = gained >= yardline
        if touchdown:
            gained = yardline
        intercepted = bool(is_pass and rng.random() < spec.intercept_rate)
        if intercepted:
            gained, touchdown = 0, False
        incomplete = False
        if is_pass and not intercepted and gained <= 0:
            # most zero-yard passes fall incomplete, some are caught short
            incomplete = gained < 0 or rng.random() < 0.7
            gained = 0

        p = {
            "is_pass": is_pass, "qbrun": qbrun, "shotgun": shotgun,
            "passlen": passlen, "side": side, "run_phrase": run_phrase,
            "gained": gained, "touchdown": touchdown,
            "incomplete": incomplete, "intercepted": intercepted,
        }
        description = _render_play(rng, team, opponent, yardline, clock, p)
        record = RawPlayRecord(
            game_id=game_id, team=team, opponent=opponent, quarter=quarter,
            clock_seconds=clock, yardline=yardline, down=down, togo=togo,
            description=description,
        )
        half = 1 if quarter <= 2 else 2
        time = float(clock + 900 if quarter in (1, 3) else clock)
        features = PlayFeatures(
            team=team, opponent=opponent, half=half, time=time,
            position=yardline, down=down, togo=togo,
            shotgun=int(shotgun), is_pass=int(is_pass), side=side,
            passlen=passlen, qbrun=int(qbrun),
        )
        outcome = PlayOutcome(gained=gained, touchdown=int(touchdown))
        plays.append(SyntheticPlay(
            record=record, features=features, outcome=outcome,
            labels=compute_labels(features, outcome),
        ))
    return plays


def write_corpus(plays, path) -> None:
    """Write records as the line-delimited corpus format."""
    with open(path, "w", encoding="utf-8") as fh:
        for play in plays:
            r = play.record
            fh.write(json.dumps({
                "game_id": r.game_id, "team": r.team, "opponent": r.opponent,
                "quarter": r.quarter, "clock_seconds": r.clock_seconds,
                "yardline": r.yardline, "down": r.down, "togo": r.togo,
                "description": r.description,
            }) + "\n")


def write_expected(plays, path) -> None:
    """Write per-record ground truth (features/outcome/labels or rejection)."""
    with open(path, "w", encoding="utf-8") as fh:
        for play in plays:
            fh.write(json.dumps(play.expected_dict()) + "\n")


def synthesize(spec: SynthSpec, seed: int, path, expected_path=None) -> dict:
    """Generate a corpus file; returns a small summary dict."""
    plays = synthesize_plays(spec, seed)
    write_corpus(plays, path)
    if expected_path is not None:
        write_expected(plays, expected_path)
    kept = sum(1 for p in plays if p.rejection is None)
    return {"n": len(plays), "kept": kept, "rejected": len(plays) - kept}
