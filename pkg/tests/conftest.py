import random

import pytest

from seedsolver import FrequencyIndex, PackedReference


def make_index(seq, mask="1101"):
    return FrequencyIndex.build(PackedReference.from_string(seq), mask=mask)


@pytest.fixture
def toy_index():
    """The hand-countable reference used throughout the examples."""
    return make_index("ACGTACGTTT")


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_dna(rng, n, alphabet="ACGT"):
    return "".join(rng.choice(alphabet) for _ in range(n))


ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one acceptance line: record(criterion, passed, detail)."""

    def _record(criterion, passed, detail=""):
        ACCEPTANCE.append((criterion, bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
