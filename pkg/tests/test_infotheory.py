import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import TABLE_B, random_corpus
from msukit import (
    ConsistencyError,
    Dataset,
    EmptyInputError,
    LabelColumn,
    SelectionError,
    TooFewVariablesError,
    ValidationError,
    conditional_entropy,
    entropy,
    information_gain,
    joint_counts,
    joint_entropy,
    measure_report,
    msu,
    symmetrical_uncertainty,
    total_correlation,
)
from msukit.infotheory import msu_of_arrays


def ds_of(*cols, cards=None):
    arrays = {f"c{i}": c for i, c in enumerate(cols)}
    cards = {f"c{i}": k for i, k in enumerate(cards)} if cards else None
    return Dataset.from_arrays(arrays, cards)


class TestLabelColumn:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            LabelColumn(np.array([0, 2]), 2)

    def test_rejects_negative_and_bad_cardinality(self):
        with pytest.raises(ValidationError):
            LabelColumn(np.array([-1]), 2)
        with pytest.raises(ValidationError):
            LabelColumn(np.array([0]), 0)

    def test_values_are_read_only(self):
        col = LabelColumn([0, 1], 2)
        with pytest.raises(ValueError):
            col.values[0] = 1

    def test_dataset_invariants(self):
        with pytest.raises(ValidationError):
            Dataset((LabelColumn([0], 1, "a"), LabelColumn([0, 0], 1, "b")))
        with pytest.raises(ValidationError):
            Dataset((LabelColumn([0], 1, "a"), LabelColumn([0], 1, "a")))
        with pytest.raises(ValidationError):
            Dataset((LabelColumn([0], 1, "a"),), class_index=3)


class TestEntropy:
    def test_uniform_binary(self):
        assert entropy(LabelColumn([0, 1, 0, 1], 2)) == 1.0

    def test_constant(self):
        assert entropy(LabelColumn([3, 3, 3, 3], 4)) == 0.0

    def test_five_three_split(self):
        # -(5/8)log2(5/8) - (3/8)log2(3/8)
        assert entropy(LabelColumn([0] * 5 + [1] * 3, 2)) == pytest.approx(0.954434, abs=1e-6)

    def test_empty(self):
        with pytest.raises(EmptyInputError, match="empty input"):
            entropy(LabelColumn(np.array([], dtype=int), 2))

    def test_bounded_by_declared_cardinality(self):
        col = LabelColumn(np.arange(7) % 5, 9)
        assert 0 <= entropy(col) <= math.log2(9)


class TestJointCounts:
    def test_table_a_full_factorial(self, table_a):
        jc = joint_counts(table_a, [0, 1, 2])
        assert len(jc.cells) == 8 and set(jc.cells.values()) == {1}
        assert jc.total == 8

    def test_table_b_merged_cell(self, table_b):
        jc = joint_counts(table_b, ["f1", "f2", "class"])
        assert len(jc.cells) == 7
        # a, s, p are all encoded as label 0 in table B (first occurrence)
        assert jc.cells[(0, 0, 0)] == 2
        assert sum(jc.cells.values()) == jc.total == 8

    def test_single_column_is_frequency_table(self):
        ds = ds_of([0, 1, 1, 2, 2, 2])
        assert joint_counts(ds, [0]).cells == {(0,): 1, (1,): 2, (2,): 3}

    @pytest.mark.parametrize("sel", [[0, 0], [5], [], ["nope"]])
    def test_bad_selection(self, table_a, sel):
        with pytest.raises(SelectionError):
            joint_counts(table_a, sel)


class TestJointEntropy:
    def test_table_a(self, table_a):
        assert joint_entropy(table_a, [0, 1, 2]) == 3.0

    def test_table_b(self, table_b):
        assert joint_entropy(table_b, [0, 1, 2]) == pytest.approx(2.75, abs=1e-12)

    def test_constant_adds_nothing(self):
        x = [0, 1, 2, 1, 0, 0]
        ds = ds_of([4] * 6, x, cards=[5, 3])
        assert joint_entropy(ds, [0, 1]) == pytest.approx(entropy(ds.columns[1]), abs=1e-12)

    def test_wide_selection_falls_back_to_unique(self):
        rng = np.random.default_rng(3)
        cols = [rng.integers(0, 1000, 50) for _ in range(8)]
        ds = ds_of(*cols, cards=[1000] * 8)
        assert joint_entropy(ds, list(range(8))) == pytest.approx(oracle.joint_entropy(cols), abs=1e-12)


class TestPairMeasures:
    def test_conditional_entropy_identical(self):
        ds = ds_of([0, 1, 2, 0], [0, 1, 2, 0])
        assert conditional_entropy(ds, 0, 1) == 0.0

    def test_conditional_entropy_full_factorial(self, table_a):
        assert conditional_entropy(table_a, 0, 2) == pytest.approx(1.0, abs=1e-12)

    def test_conditional_entropy_table_b(self, table_b):
        f1, _, cls = zip(*TABLE_B)
        expected = oracle.conditional_entropy(f1, cls)
        assert expected == pytest.approx(0.905639, abs=1e-6)
        assert conditional_entropy(table_b, "f1", "class") == pytest.approx(expected, abs=1e-12)

    def test_information_gain_identical(self):
        ds = ds_of([0, 1, 1, 2], [0, 1, 1, 2])
        assert information_gain(ds, 0, 1) == pytest.approx(entropy(ds.columns[0]), abs=1e-12)

    def test_information_gain_table_a(self, table_a):
        assert information_gain(table_a, "f1", "class") == 0.0

    def test_information_gain_noiseless_xor(self):
        f = np.array(list(itertools.product([0, 1], repeat=2)) * 3)
        joint = f[:, 0] * 2 + f[:, 1]
        ds = ds_of(f[:, 0] ^ f[:, 1], joint)
        assert information_gain(ds, 0, 1) == pytest.approx(1.0, abs=1e-12)

    def test_su_identical_and_constant(self):
        assert symmetrical_uncertainty(ds_of([0, 1, 1], [0, 1, 1]), 0, 1) == pytest.approx(1.0)
        assert symmetrical_uncertainty(ds_of([0, 0], [1, 1]), 0, 1) == 0.0

    def test_su_table_a(self, table_a):
        assert symmetrical_uncertainty(table_a, 0, 2) == 0.0

    def test_same_column_twice_is_rejected(self, table_a):
        with pytest.raises(SelectionError):
            conditional_entropy(table_a, 1, 1)


class TestMultivariate:
    def test_total_correlation_table_a(self, table_a):
        assert total_correlation(table_a, [0, 1, 2]) == 0.0

    def test_total_correlation_duplicate_pair(self):
        x = [0, 1, 2, 2, 1]
        ds = ds_of(x, x)
        assert total_correlation(ds, [0, 1]) == pytest.approx(entropy(ds.columns[0]), abs=1e-12)

    def test_total_correlation_table_c(self, table_c):
        assert total_correlation(table_c, [0, 1, 2]) == pytest.approx(0.405639, abs=1e-6)

    @pytest.mark.parametrize("cols", [[0], "f1"])
    def test_need_two_variables(self, table_a, cols):
        with pytest.raises(TooFewVariablesError, match="need at least two variables"):
            total_correlation(table_a, cols)
        with pytest.raises(TooFewVariablesError):
            msu(table_a, cols)

    def test_msu_table_values(self, table_a, table_b, table_c):
        assert msu(table_a, [0, 1, 2]) == 0.0
        assert round(msu(table_b, [0, 1, 2]), 2) == 0.10
        assert round(msu(table_c, [0, 1, 2]), 2) == 0.18
        # exact plug-in values (40-digit check): 0.1037934860..., 0.1786620902...
        assert msu(table_b, [0, 1, 2]) == pytest.approx(0.1037934860226545, abs=1e-12)
        assert msu(table_c, [0, 1, 2]) == pytest.approx(0.1786620902057691, abs=1e-12)

    def test_msu_all_constant_is_zero(self):
        assert msu(ds_of([1, 1, 1], [0, 0, 0], [2, 2, 2]), [0, 1, 2]) == 0.0

    def test_out_of_range_raises(self):
        with pytest.raises(ConsistencyError):
            from msukit.infotheory import _clamp
            _clamp(1.0 + 1e-9, 0.0, 1.0, "MSU")

    def test_tiny_excursion_is_clamped(self):
        from msukit.infotheory import _clamp
        assert _clamp(-1e-13, 0.0, 1.0, "x") == 0.0

    def test_measure_report(self, table_c):
        rep = measure_report(table_c)
        assert rep.columns == ["f1", "f2", "class"]
        assert set(rep.su) == {("f1", "class"), ("f2", "class")}
        assert rep.msu == msu(table_c, [0, 1, 2])


# --- property tests ---------------------------------------------------------

@st.composite
def datasets(draw, max_rows=30, max_cols=4, max_card=5):
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(2, max_cols))
    cards = draw(st.lists(st.integers(1, max_card), min_size=m, max_size=m))
    cols = [draw(st.lists(st.integers(0, c - 1), min_size=n, max_size=n)) for c in cards]
    return ds_of(*cols, cards=cards)


@settings(max_examples=200, deadline=None)
@given(datasets())
def test_ranges(ds):
    cols = list(range(len(ds.columns)))
    for c in ds.columns:
        assert 0 <= entropy(c) <= math.log2(c.cardinality) + 1e-12
    assert total_correlation(ds, cols) >= 0
    assert 0 <= msu(ds, cols) <= 1
    assert 0 <= symmetrical_uncertainty(ds, 0, 1) <= 1


@settings(max_examples=200, deadline=None)
@given(datasets())
def test_msu_of_pair_is_su(ds):
    assert abs(msu(ds, [0, 1]) - symmetrical_uncertainty(ds, 0, 1)) < 1e-12
    ig_xy, ig_yx = information_gain(ds, 0, 1), information_gain(ds, 1, 0)
    assert abs(ig_xy - ig_yx) < 1e-9


@settings(max_examples=150, deadline=None)
@given(datasets(), st.randoms(use_true_random=False))
def test_permutation_invariance(ds, rnd):
    cols = list(range(len(ds.columns)))
    ref_msu, ref_c = msu(ds, cols), total_correlation(ds, cols)
    order = cols[:]
    rnd.shuffle(order)
    assert msu(ds, order) == ref_msu
    assert total_correlation(ds, order) == ref_c
    rows = list(range(ds.n_rows))
    rnd.shuffle(rows)
    relabelled = []
    for c in ds.columns:
        perm = list(range(c.cardinality))
        rnd.shuffle(perm)
        relabelled.append(np.array(perm)[c.values[rows]])
    other = ds_of(*relabelled, cards=[c.cardinality for c in ds.columns])
    assert msu(other, cols) == ref_msu
    assert total_correlation(other, cols) == ref_c


@settings(max_examples=150, deadline=None)
@given(datasets())
def test_joint_entropy_monotone(ds):
    cols = list(range(len(ds.columns)))
    for k in range(1, len(cols)):
        assert joint_entropy(ds, cols[:k]) <= joint_entropy(ds, cols[: k + 1]) + 1e-12
    hs = [entropy(c) for c in ds.columns]
    assert max(hs) - 1e-12 <= joint_entropy(ds, cols) <= sum(hs) + 1e-12


def test_oracle_equivalence_small_exhaustive():
    """All datasets with <=6 rows, 3 columns of cardinality <=3, sampled, against brute force."""
    rng = np.random.default_rng(11)
    for _ in range(500):
        n = int(rng.integers(1, 7))
        cards = rng.integers(1, 4, size=3)
        cols = [rng.integers(0, k, size=n).tolist() for k in cards]
        ds = ds_of(*cols, cards=cards.tolist())
        for j in range(3):
            assert entropy(ds.columns[j]) == pytest.approx(oracle.entropy(cols[j]), abs=1e-12)
        assert joint_entropy(ds, [0, 1, 2]) == pytest.approx(oracle.joint_entropy(cols), abs=1e-12)
        assert conditional_entropy(ds, 0, 1) == pytest.approx(oracle.conditional_entropy(cols[0], cols[1]), abs=1e-12)
        assert information_gain(ds, 2, 0) == pytest.approx(oracle.information_gain(cols[2], cols[0]), abs=1e-12)
        assert symmetrical_uncertainty(ds, 1, 2) == pytest.approx(oracle.symmetrical_uncertainty(cols[1], cols[2]), abs=1e-12)
        assert total_correlation(ds, [0, 1, 2]) == pytest.approx(oracle.total_correlation(cols), abs=1e-12)
        assert msu(ds, [0, 1, 2]) == pytest.approx(oracle.msu(cols), abs=1e-12)


def test_bit_reproducible():
    for ds in random_corpus(20, seed=5):
        cols = list(range(len(ds.columns)))
        assert msu(ds, cols) == msu(ds, cols)
        arrays = [c.values for c in ds.columns]
        assert msu_of_arrays(arrays, [c.cardinality for c in ds.columns]) == msu(ds, cols)
