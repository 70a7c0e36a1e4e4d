from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from helpers import ACCEPTANCE_LINES  # noqa: E402
from kmob.poset import build_poset  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
DATA = Path(__file__).parent.parent / "src" / "kmob" / "data"

CUBIC_RELATIONS = [("0", "C"), ("0", "D"), ("C", "A"), ("C", "B"), ("D", "A"), ("D", "B")]

@pytest.fixture
def cubic_poset():
    return build_poset(["A", "B", "C", "D", "0"], CUBIC_RELATIONS)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def data_dir():
    return DATA


@st.composite
def posets(draw, max_size=10):
    """Random poset; generators only go up in a hidden index order, so no cycles."""
    n = draw(st.integers(1, max_size))
    density = draw(st.sampled_from([0.1, 0.25, 0.4, 0.7]))
    rng = draw(st.randoms(use_true_random=False))
    labels = draw(st.permutations([f"p{i}" for i in range(n)]))
    rels = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
            if rng.random() < density]
    return build_poset(labels, rels)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
