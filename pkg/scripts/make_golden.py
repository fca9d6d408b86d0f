"""Regenerate the golden corpus fixture (tests/data/golden_*.jsonl).

The first three records are real gamebook descriptions with hand-checked
expectations; the rest come from the synthetic generator with rejects
and interceptions planted.  Expectations are written from generator
intent, never from the parser, so the fixture stays an independent
oracle.  Run from the repo root:  python3 scripts/make_golden.py
"""

import json
import pathlib

from playcall.synth import SynthSpec, SyntheticPlay, synthesize_plays
from playcall.playparse import PlayFeatures, PlayOutcome, RawPlayRecord
from playcall.labels import compute_labels

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
SEED = 20140901
N_SYNTHETIC = 297

# the three worked examples, hand-transcribed
REAL_ROWS = [
    {
        "record": RawPlayRecord(
            game_id="2009121311", team="ATL", opponent="CAR", quarter=3,
            clock_seconds=596, yardline=24, down=2, togo=10,
            description="(9:56) M.Ryan pass short left to M.Jenkins to "
                        "CAR 17 for 7 yards (T.Davis).",
        ),
        "features": PlayFeatures(
            team="ATL", opponent="CAR", half=2, time=1496.0, position=24,
            down=2, togo=10, shotgun=0, is_pass=1, side="left",
            passlen="short", qbrun=0,
        ),
        "outcome": PlayOutcome(gained=7, touchdown=0),
    },
    {
        "record": RawPlayRecord(
            game_id="2009122012", team="DEN", opponent="OAK", quarter=1,
            clock_seconds=632, yardline=28, down=2, togo=1,
            description="(10:32) K.Moreno right tackle to OAK 27 "
                        "for 1 yard (T.Kelly).",
        ),
        "features": PlayFeatures(
            team="DEN", opponent="OAK", half=1, time=1532.0, position=28,
            down=2, togo=1, shotgun=0, is_pass=0, side="right",
            passlen="none", qbrun=0,
        ),
        "outcome": PlayOutcome(gained=1, touchdown=0),
    },
    {
        "record": RawPlayRecord(
            game_id="2009100410", team="ARI", opponent="HOU", quarter=2,
            clock_seconds=27, yardline=26, down=1, togo=10,
            description="(:27) (No Huddle, Shotgun) K.Warner pass deep left "
                        "to L.Fitzgerald for 26 yards, TOUCHDOWN.",
        ),
        "features": PlayFeatures(
            team="ARI", opponent="HOU", half=1, time=27.0, position=26,
            down=1, togo=10, shotgun=1, is_pass=1, side="left",
            passlen="deep", qbrun=0,
        ),
        "outcome": PlayOutcome(gained=26, touchdown=1),
    },
]


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    plays = []
    for row in REAL_ROWS:
        plays.append(SyntheticPlay(
            record=row["record"],
            features=row["features"],
            outcome=row["outcome"],
            labels=compute_labels(row["features"], row["outcome"]),
        ))
    spec = SynthSpec(n=N_SYNTHETIC, reject_rate=0.12, intercept_rate=0.02)
    plays.extend(synthesize_plays(spec, seed=SEED))

    with open(OUT_DIR / "golden_corpus.jsonl", "w", encoding="utf-8") as fh:
        for p in plays:
            r = p.record
            fh.write(json.dumps({
                "game_id": r.game_id, "team": r.team, "opponent": r.opponent,
                "quarter": r.quarter, "clock_seconds": r.clock_seconds,
                "yardline": r.yardline, "down": r.down, "togo": r.togo,
                "description": r.description,
            }) + "\n")
    with open(OUT_DIR / "golden_expected.jsonl", "w", encoding="utf-8") as fh:
        for p in plays:
            fh.write(json.dumps(p.expected_dict()) + "\n")
    kept = sum(1 for p in plays if p.rejection is None)
    print(f"wrote {len(plays)} records ({kept} kept) to {OUT_DIR}")


if __name__ == "__main__":
    main()
