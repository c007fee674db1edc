from fractions import Fraction

import pytest
from hypothesis import given

from abmp.core import (
    BundleClass,
    Instance,
    PartitionScheme,
    argmax_rows,
    classify_bundle,
    is_full_cover,
    partition_value,
    smooth,
    taxonomy,
)
from abmp.errors import EmptyBundle, InvalidInstance, InvalidScheme
from abmp.generators import worked_3x6, worked_schemes

from helpers import literal_scheme_value
from strategies import instances, instance_with_scheme

F = Fraction


def test_smooth_rows_of_scheme_b():
    # worked by hand: every bundle of row 1 is half ones
    sm = smooth(worked_3x6(), worked_schemes()["B"])
    assert sm[0] == (F(1, 2),) * 6
    assert sm[1] == (F(1, 2), F(1, 2), F(1), F(0), F(1), F(0))
    assert sm[2] == (F(0), F(2, 3), F(2, 3), F(0), F(2, 3), F(0))


def test_value_of_scheme_b_by_hand():
    # column maxima 1/2, 2/3, 1, 1/2, 1, 1/2
    assert partition_value(worked_3x6(), worked_schemes()["B"]) == F(25, 6) / 6


def test_taxonomy_of_3x6():
    tax = taxonomy(worked_3x6())
    assert tax.onecols == {1, 2, 4}
    assert tax.zerocols == {0, 3, 5}
    assert tax.r == F(1, 2)


def test_singletons_value_is_r():
    inst = worked_3x6()
    assert partition_value(inst, PartitionScheme.singletons(3, 6)) == taxonomy(inst).r


@pytest.mark.parametrize(
    "bundle, expected",
    [
        ({0, 3}, BundleClass.ALL_ZERO),
        ({1, 2}, BundleClass.ALL_ONE),
        ({1}, BundleClass.COLUMN_COVERING),
        ({0, 1}, BundleClass.MIXED),
    ],
)
def test_classify_bundle(bundle, expected):
    assert classify_bundle(worked_3x6(), 0, bundle) is expected


def test_classify_rejects_bad_bundles():
    with pytest.raises(EmptyBundle):
        classify_bundle(worked_3x6(), 0, set())
    with pytest.raises(InvalidScheme):
        classify_bundle(worked_3x6(), 0, {9})


def test_full_cover_of_b3():
    check = is_full_cover(worked_3x6(), worked_schemes()["B3"])
    assert check.full
    assert check.pairs == [(1, 4), (2, 1), (2, 2)]
    assert not is_full_cover(worked_3x6(), worked_schemes()["B"]).full


def test_argmax_rows_ties_go_low():
    inst = Instance.from_rows(["10", "10"])
    assert argmax_rows(inst, PartitionScheme.singletons(2, 2)) == (0, 0)


def test_format_is_one_indexed_and_sorted():
    text = worked_schemes()["B3"].format()
    assert text.splitlines()[0] == "B1: {1} {2,3,4,5,6}"
    assert text.splitlines()[2] == "B3: {1,4,5,6} {2} {3}"


@pytest.mark.parametrize(
    "rows, p",
    [
        (["012"], None),
        (["01", "1"], None),
        (["01"], (F(1, 2), F(1, 3))),
        (["01"], (F(1), F(0))),
    ],
)
def test_instance_validation(rows, p):
    with pytest.raises(InvalidInstance):
        Instance.from_rows(rows, p)


def test_scheme_validation():
    inst = worked_3x6()
    overlap = PartitionScheme.from_one_based([[[1, 2], [2, 3, 4, 5, 6]]] * 3)
    missing = PartitionScheme.from_one_based([[[1, 2, 3, 4, 5]]] * 3)
    for bad in (overlap, missing, PartitionScheme.singletons(2, 6)):
        with pytest.raises(InvalidScheme):
            bad.validate(inst)
    with pytest.raises(EmptyBundle):
        PartitionScheme(((frozenset(),),))


def test_restrict_renormalises():
    inst = Instance.from_rows(["011"], (F(1, 2), F(1, 4), F(1, 4)))
    sub = inst.restrict([1, 2])
    assert sub.p == (F(1, 2), F(1, 2))
    assert sub.A == ((1, 1),)


@given(instance_with_scheme())
def test_smoothing_keeps_row_mass(pair):
    inst, scheme = pair
    sm = smooth(inst, scheme)
    for i in range(inst.n):
        assert sum(p * v for p, v in zip(inst.p, sm[i])) == sum(p * a for p, a in zip(inst.p, inst.A[i]))


@given(instance_with_scheme())
def test_value_matches_literal_definition(pair):
    inst, scheme = pair
    value = partition_value(inst, scheme)
    assert value == literal_scheme_value(inst, scheme.rows)
    assert 0 <= value <= 1


@given(instances())
def test_singleton_scheme_value_is_r_everywhere(inst):
    assert partition_value(inst, PartitionScheme.singletons(inst.n, inst.m)) == taxonomy(inst).r
