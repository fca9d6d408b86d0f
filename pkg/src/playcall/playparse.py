"""Parsing of gamebook play descriptions into structured features.

A raw play-by-play record carries game context (teams, clock, field
position, down and distance) plus a free-text description such as::

    (9:56) M.Ryan pass short left to M.Jenkins to CAR 17 for 7 yards (T.Davis).

Records are first classified as relevant or rejected (punts, penalties,
kicks, sacks, fumbles and other non-scrimmage events carry no usable
play-call signal).  Relevant records are then parsed into a
:class:`PlayFeatures` / :class:`PlayOutcome` pair.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

SIDES = ("left", "middle", "right", "none")
PASS_LENGTHS = ("short", "deep", "none")

# Every reason a record can be dropped during ingest.  classify_record
# produces all of these except "unparseable" (raised later by parse_play)
# and "malformed" (raised before a record object exists).
REJECTION_REASONS = (
    "penalty",
    "punt",
    "field_goal",
    "kick",
    "sack",
    "fumble",
    "interception",
    "timeout_or_admin",
    "overtime",
    "no_play_sentence",
    "unparseable",
    "malformed",
)


class ParseError(ValueError):
    """A relevant-looking description that the grammar cannot extract."""


@dataclass(frozen=True)
class Rejection:
    """Why a record was excluded, as one of REJECTION_REASONS."""

    reason: str

    def __post_init__(self):
        if self.reason not in REJECTION_REASONS:
            raise ValueError(f"unknown rejection reason: {self.reason!r}")


@dataclass(frozen=True)
class RawPlayRecord:
    """One line of a play-by-play corpus, unparsed."""

    game_id: str
    team: str
    opponent: str
    quarter: int
    clock_seconds: int
    yardline: int
    down: int
    togo: int
    description: str

    def __post_init__(self):
        if not self.team or not self.opponent:
            raise ValueError("team and opponent are required")
        if self.team == self.opponent:
            raise ValueError("team and opponent must differ")
        if not 1 <= self.quarter <= 5:
            raise ValueError(f"quarter out of range: {self.quarter}")
        if not 0 <= self.clock_seconds <= 900:
            raise ValueError(f"clock_seconds out of range: {self.clock_seconds}")
        if not 1 <= self.yardline <= 99:
            raise ValueError(f"yardline out of range: {self.yardline}")
        if not 1 <= self.down <= 4:
            raise ValueError(f"down out of range: {self.down}")
        if not 1 <= self.togo <= 99:
            raise ValueError(f"togo out of range: {self.togo}")
        if not self.description.strip():
            raise ValueError("description is empty")


@dataclass(frozen=True)
class PlayFeatures:
    """Situation and play-call features for one scrimmage play.

    ``time`` counts seconds remaining in the half (0..1800) and
    ``position`` is the distance to the opponent end zone (1..99).
    ``side`` and ``passlen`` use "none" when not applicable.
    """

    team: str
    opponent: str
    half: int
    time: float
    position: int
    down: int
    togo: int
    shotgun: int
    is_pass: int
    side: str
    passlen: str
    qbrun: int

    def __post_init__(self):
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
        if self.side not in SIDES:
            raise ValueError(f"bad side: {self.side!r}")
        if self.passlen not in PASS_LENGTHS:
            raise ValueError(f"bad passlen: {self.passlen!r}")
        for name in ("shotgun", "is_pass", "qbrun"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        # pass length exists exactly when the play is a pass
        if (self.passlen != "none") != (self.is_pass == 1):
            raise ValueError("passlen must be set iff the play is a pass")
        if self.qbrun == 1 and self.is_pass == 1:
            raise ValueError("a quarterback run cannot also be a pass")

    def to_dict(self) -> dict:
        return {
            "team": self.team,
            "opponent": self.opponent,
            "half": self.half,
            "time": self.time,
            "position": self.position,
            "down": self.down,
            "togo": self.togo,
            "shotgun": self.shotgun,
            "pass": self.is_pass,
            "side": self.side,
            "passlen": self.passlen,
            "qbrun": self.qbrun,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlayFeatures":
        d = dict(d)
        d["is_pass"] = d.pop("pass")
        return cls(**d)


@dataclass(frozen=True)
class PlayOutcome:
    """What the play produced: offensive yards gained and touchdown flag."""

    gained: int
    touchdown: int

    def __post_init__(self):
        if self.touchdown not in (0, 1):
            raise ValueError("touchdown must be 0 or 1")

    def to_dict(self) -> dict:
        return {"gained": self.gained, "touchdown": self.touchdown}


def clock_to_half_time(quarter: int, clock_seconds: int) -> tuple[int, float]:
    """Map (quarter, seconds left in quarter) to (half, seconds left in half)."""
    if quarter not in (1, 2, 3, 4):
        raise ValueError(f"quarter must be 1..4, got {quarter}")
    if not 0 <= clock_seconds <= 900:
        raise ValueError(f"clock_seconds out of range: {clock_seconds}")
    half = 1 if quarter <= 2 else 2
    time = clock_seconds + 900 if quarter in (1, 3) else clock_seconds
    return half, float(time)


# --- description grammar -------------------------------------------------

_YARDS_RE = re.compile(r"\bfor (-?\d+) yards?\b")
_NO_GAIN_RE = re.compile(r"\bfor no gain\b")
_INCOMPLETE_RE = re.compile(r"\bincomplete\b", re.IGNORECASE)
_INTERCEPT_RE = re.compile(r"\bintercept", re.IGNORECASE)
_PASS_RE = re.compile(r"\bpass\b")
_SCRAMBLE_RE = re.compile(r"\bscrambles\b")
_PASSLEN_RE = re.compile(r"\b(short|deep)\b")
_SIDE_WORD_RE = re.compile(r"\b(left|middle|right)\b")
_RUN_SIDE_RE = re.compile(
    r"\b(?:(left|right) (?:end|tackle|guard)|up the (middle))\b"
)
_LEADING_PARENS_RE = re.compile(r"^\s*(\([^)]*\)\s*)+")

# markers that identify the sentence describing the play itself
_PLAY_SENTENCE_MARKERS = (
    _YARDS_RE,
    _NO_GAIN_RE,
    _INCOMPLETE_RE,
    _INTERCEPT_RE,
    re.compile(r"TOUCHDOWN"),
)

# ordered (reason, pattern) scan for rejection; first hit wins
_REJECT_PATTERNS = (
    ("penalty", re.compile(r"\bpenalty\b", re.IGNORECASE)),
    ("punt", re.compile(r"\bpunts?\b", re.IGNORECASE)),
    ("field_goal", re.compile(r"\bfield goal\b", re.IGNORECASE)),
    ("kick", re.compile(r"\bkicks?\b|\bkickoff\b|\bextra point\b", re.IGNORECASE)),
    ("sack", re.compile(r"\bsacked\b", re.IGNORECASE)),
    ("fumble", re.compile(r"\bfumble", re.IGNORECASE)),
    (
        "timeout_or_admin",
        re.compile(
            r"\bkneels?\b|\bspiked?\b|\btimeout\b|\btwo-minute warning\b"
            r"|\bend (?:of )?(?:quarter|game|half)\b|\binjur",
            re.IGNORECASE,
        ),
    ),
)


def find_play_sentence(description: str) -> str | None:
    """Return the first sentence carrying an outcome marker, if any.

    Sentences are split on period-plus-whitespace so initials such as
    "M.Ryan" survive intact.
    """
    for sentence in re.split(r"(?<=\.)\s+", description):
        for marker in _PLAY_SENTENCE_MARKERS:
            if marker.search(sentence):
                return sentence
    return None


def classify_record(
    record: RawPlayRecord, keep_interceptions: bool = True
) -> Rejection | None:
    """Decide whether a record is a usable scrimmage play.

    Returns None when the record should be parsed, otherwise a
    Rejection naming the first matching exclusion reason.  Overtime is
    checked before the description because quarter 5 situations are out
    of scope regardless of what happened.
    """
    if record.quarter == 5:
        return Rejection("overtime")
    desc = record.description
    for reason, pattern in _REJECT_PATTERNS:
        if pattern.search(desc):
            return Rejection(reason)
    if not keep_interceptions and _INTERCEPT_RE.search(desc):
        return Rejection("interception")
    if find_play_sentence(desc) is None:
        return Rejection("no_play_sentence")
    return None


def _extract_side_for_run(sentence: str) -> str:
    m = _RUN_SIDE_RE.search(sentence)
    if m:
        return m.group(1) or m.group(2)
    m = _SIDE_WORD_RE.search(sentence)
    if m:
        return m.group(1)
    raise ParseError(f"no directional token in run sentence: {sentence!r}")


def _extract_outcome(sentence: str) -> PlayOutcome:
    # An interception turns the ball over: the offense gains nothing and
    # any yardage or TOUCHDOWN in the sentence belongs to the return.
    if _INTERCEPT_RE.search(sentence):
        return PlayOutcome(gained=0, touchdown=0)
    if _INCOMPLETE_RE.search(sentence):
        return PlayOutcome(gained=0, touchdown=0)
    touchdown = 1 if "TOUCHDOWN" in sentence else 0
    if _NO_GAIN_RE.search(sentence):
        return PlayOutcome(gained=0, touchdown=touchdown)
    m = _YARDS_RE.search(sentence)
    if m is None:
        raise ParseError(f"no yardage phrase in play sentence: {sentence!r}")
    return PlayOutcome(gained=int(m.group(1)), touchdown=touchdown)


def parse_play(record: RawPlayRecord) -> tuple[PlayFeatures, PlayOutcome]:
    """Parse a relevant record into features and outcome.

    Callers are expected to have run classify_record first; a record
    with no play sentence raises ParseError here.
    """
    sentence = find_play_sentence(record.description)
    if sentence is None:
        raise ParseError(f"no play sentence in: {record.description!r}")

    lead = _LEADING_PARENS_RE.match(record.description)
    shotgun = 1 if lead and "shotgun" in lead.group(0).lower() else 0

    if _SCRAMBLE_RE.search(sentence):
        is_pass, qbrun = 0, 1
        passlen = "none"
        side = _extract_side_for_run(sentence)
    elif _PASS_RE.search(sentence):
        is_pass, qbrun = 1, 0
        after_pass = sentence[_PASS_RE.search(sentence).end():]
        m = _PASSLEN_RE.search(after_pass)
        if m is None:
            raise ParseError(f"pass sentence without short/deep: {sentence!r}")
        passlen = m.group(1)
        m_side = _SIDE_WORD_RE.search(after_pass)
        side = m_side.group(1) if m_side else "none"
    else:
        is_pass, qbrun = 0, 0
        passlen = "none"
        side = _extract_side_for_run(sentence)

    outcome = _extract_outcome(sentence)
    if outcome.touchdown and outcome.gained != record.yardline:
        # a scoring play must cover exactly the remaining distance
        raise ParseError(
            f"touchdown gain {outcome.gained} != yardline {record.yardline}"
        )
    half, time = clock_to_half_time(record.quarter, record.clock_seconds)
    features = PlayFeatures(
        team=record.team,
        opponent=record.opponent,
        half=half,
        time=time,
        position=record.yardline,
        down=record.down,
        togo=record.togo,
        shotgun=shotgun,
        is_pass=is_pass,
        side=side,
        passlen=passlen,
        qbrun=qbrun,
    )
    return features, outcome
