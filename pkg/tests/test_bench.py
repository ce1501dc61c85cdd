import csv
import io

import pytest

from medimark import BitPlane, PatientRecord
from medimark.bench import CSV_COLUMNS, run_bench, to_csv, to_tables, trial_seeds

from conftest import random_image


@pytest.fixture
def small_corpus(rng):
    return [("a", random_image(rng, 24, 40)), ("b", random_image(rng, 17, 9))]


def test_grid_shape_and_columns(small_corpus):
    rows = run_bench(small_corpus, PatientRecord(b"x"), seed=1, block=(2, 2), trials=5)
    assert [(r.image, r.plane) for r in rows] == [(n, p) for n, _ in small_corpus for p in BitPlane]
    parsed = list(csv.DictReader(io.StringIO(to_csv(rows))))
    assert list(parsed[0]) == CSV_COLUMNS
    assert parsed[0]["tbsi_fraction"] == f"{4 / (24 * 40):.10f}"
    for r in rows:
        assert 0 <= r.detected <= r.trials == 5
        assert r.correlation_min <= r.correlation_mean <= 1


def test_deterministic(small_corpus):
    rec = PatientRecord(b"x")
    a = to_csv(run_bench(small_corpus, rec, seed=9, trials=4))
    b = to_csv(run_bench(small_corpus, rec, seed=9, trials=4))
    c = to_csv(run_bench(small_corpus, rec, seed=10, trials=4))
    assert a == b
    assert a != c


def test_trial_seeds_differ_by_plane():
    assert trial_seeds(0, 0, BitPlane.LSB, 3) != trial_seeds(0, 0, BitPlane.BIT2, 3)
    assert trial_seeds(0, 0, BitPlane.LSB, 3) == trial_seeds(0, 0, BitPlane.LSB, 3)


def test_tables_layout(small_corpus):
    text = to_tables(run_bench(small_corpus, PatientRecord(b"x"), trials=2))
    assert "a/40*24" in text and "b/9*17" in text
    assert text.count("Image") == 7


def test_zero_trials(small_corpus):
    rows = run_bench(small_corpus[:1], PatientRecord(b"x"), trials=0)
    assert "detection_rate" in to_csv(rows)
