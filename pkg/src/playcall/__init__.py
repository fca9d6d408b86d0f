"""Play-outcome prediction workbench for American-football play-by-play data.

Parses gamebook play descriptions into features, computes outcome targets
(success, yards, progress), trains several model families, and ranks
candidate play calls for a given game situation.
"""

__version__ = "0.1.0"

from .playparse import (
    ParseError,
    PlayFeatures,
    PlayOutcome,
    RawPlayRecord,
    Rejection,
    classify_record,
    clock_to_half_time,
    parse_play,
)
from .labels import PlayLabels, compute_labels, progress, success_label

__all__ = [
    "ParseError",
    "PlayFeatures",
    "PlayOutcome",
    "PlayLabels",
    "RawPlayRecord",
    "Rejection",
    "classify_record",
    "clock_to_half_time",
    "compute_labels",
    "parse_play",
    "progress",
    "success_label",
]
