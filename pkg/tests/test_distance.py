import functools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towndex.distance import (ConfusionTable, default_confusion_path,
                              weighted_edit_distance)

TABLE = ConfusionTable.default()


def oracle_distance(a: str, b: str, table: ConfusionTable) -> float:
    """Plain recursive alignment search, independent of the DP implementation."""

    @functools.cache
    def go(i: int, j: int) -> float:
        if i == 0:
            return float(j)
        if j == 0:
            return float(i)
        best = min(
            go(i - 1, j) + 1.0,
            go(i, j - 1) + 1.0,
            go(i - 1, j - 1) + table.sub_cost(a[i - 1], b[j - 1]),
        )
        if i >= 2:
            cost = table.digrams.get((a[i - 2:i], b[j - 1]))
            if cost is not None:
                best = min(best, go(i - 2, j - 1) + cost)
        if j >= 2:
            cost = table.digrams.get((a[i - 1], b[j - 2:j]))
            if cost is not None:
                best = min(best, go(i - 1, j - 2) + cost)
        return best

    return go(len(a), len(b))


def test_identity():
    assert weighted_edit_distance("mcclary", "mcclary", TABLE) == 0.0


def test_listed_confusion_priced_half():
    assert weighted_edit_distance("mcclary", "mcc1ary", TABLE) == 0.5


def test_digram_confusion():
    assert weighted_edit_distance("asrnus", "asmus", TABLE) == 0.5
    assert weighted_edit_distance("asmus", "asrnus", TABLE) == 0.5


def test_secretary_never_near_mcclary():
    value = weighted_edit_distance("secretary", "mcclary", TABLE)
    assert value == oracle_distance("secretary", "mcclary", TABLE)
    assert value > 2.0


def test_unlisted_substitution_costs_one():
    assert weighted_edit_distance("goon", "good", TABLE) == 1.0


def test_empty_strings():
    assert weighted_edit_distance("", "", TABLE) == 0.0
    assert weighted_edit_distance("abc", "", TABLE) == 3.0


ALPHABET = "abcefhilmnorstu01"
strings = st.text(alphabet=ALPHABET, max_size=12)


@settings(max_examples=300)
@given(strings, strings)
def test_matches_oracle(a, b):
    assert weighted_edit_distance(a, b, TABLE) == pytest.approx(
        oracle_distance(a, b, TABLE), abs=1e-12)


@settings(max_examples=300)
@given(strings, strings)
def test_metric_properties(a, b):
    d = weighted_edit_distance(a, b, TABLE)
    assert d >= 0.0
    assert d == weighted_edit_distance(b, a, TABLE)
    assert (d == 0.0) == (a == b)


def test_default_table_file_matches_builtin():
    from_file = ConfusionTable.from_file(default_confusion_path())
    assert from_file.chars == TABLE.chars
    assert from_file.digrams == TABLE.digrams


def test_table_rejects_bad_cost():
    table = ConfusionTable()
    with pytest.raises(ValueError):
        table.add("a", "b", 1.5)
    with pytest.raises(ValueError):
        table.add("a", "b", 0.0)


def test_table_symmetric():
    table = ConfusionTable()
    table.add("rn", "m", 0.5)
    assert table.digrams[("rn", "m")] == table.digrams[("m", "rn")] == 0.5
