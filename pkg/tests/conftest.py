import numpy as np
import pytest

from msukit import Dataset

# Table 1 of the MSU bias study: f1, f2, class over 8 rows.
TABLE_A = [
    ("b", "s", "p"), ("b", "s", "q"), ("b", "t", "p"), ("b", "t", "q"),
    ("a", "s", "p"), ("a", "s", "q"), ("a", "t", "p"), ("a", "t", "q"),
]
TABLE_B = [("a", "s", "p")] + TABLE_A[1:]
TABLE_C = [("c", "s", "p")] + TABLE_A[1:]


def encode(rows, names=("f1", "f2", "class")):
    """Label-encode string rows by first occurrence, column-wise."""
    arrays = {}
    for j, name in enumerate(names):
        mapping = {}
        arrays[name] = [mapping.setdefault(r[j], len(mapping)) for r in rows]
    return Dataset.from_arrays(arrays, class_name=names[-1] if "class" in names else None)


def table_csv(rows):
    return "f1,f2,class\n" + "".join(",".join(r) + "\n" for r in rows)


@pytest.fixture
def table_a():
    return encode(TABLE_A)


@pytest.fixture
def table_b():
    return encode(TABLE_B)


@pytest.fixture
def table_c():
    return encode(TABLE_C)


def random_corpus(count, seed=0, max_rows=50, max_card=5, max_cols=4):
    """Small random datasets for property checks."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_rows + 1))
        m = int(rng.integers(2, max_cols + 1))
        cards = rng.integers(1, max_card + 1, size=m)
        arrays = {f"c{j}": rng.integers(0, cards[j], size=n) for j in range(m)}
        out.append(Dataset.from_arrays(arrays, {f"c{j}": int(cards[j]) for j in range(m)}))
    return out


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
