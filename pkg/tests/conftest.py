import json
import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden_corpus_path():
    return DATA_DIR / "golden_corpus.jsonl"


@pytest.fixture(scope="session")
def golden_expected(golden_corpus_path):
    path = DATA_DIR / "golden_expected.jsonl"
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh]
