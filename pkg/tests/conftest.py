from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from medimark import RgbImage, PatientRecord
from medimark.files import load_image

DATA = Path(__file__).parent / "data"
CORPUS_DIR = DATA / "corpus"


def read_vectors(name):
    rows = []
    for line in (DATA / "vectors" / name).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            rows.append(line.split())
    return rows


def random_image(rng, height, width):
    return RgbImage(rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8))


def random_record(rng, max_len=48):
    return PatientRecord(rng.integers(0, 256, size=int(rng.integers(0, max_len + 1)), dtype=np.uint8).tobytes())


def images(max_side=24):
    shapes = st.tuples(st.integers(1, max_side), st.integers(1, max_side), st.just(3))
    return hnp.arrays(np.uint8, shapes).map(RgbImage)


@pytest.fixture(scope="session")
def corpus():
    return {p.stem: load_image(p) for p in sorted(CORPUS_DIR.glob("*.png"))}


@pytest.fixture
def rng():
    return np.random.default_rng(20210322)


@pytest.fixture
def record():
    return PatientRecord(b"ID 0042|DOE^JANE|arrived 2020-10-14")


_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    def log(criterion, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
