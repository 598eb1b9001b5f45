from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from navpredict.cluster import (
    APDistribution,
    associated_probabilities,
    cluster_ap,
    specific_cluster,
)
from navpredict.dissimilarity import dissimilarity
from navpredict.prefix_index import build_prefix_index

from conftest import make_dataset

traj = st.lists(st.integers(1, 5), min_size=1, max_size=9)


def test_worked_cluster_members(table1_dataset):
    index = build_prefix_index(table1_dataset)
    cluster = specific_cluster((1, 2, 3), index)
    assert cluster.member_indices == (0, 1)  # A and B
    assert cluster.contributing_count == 2


def test_no_match_gives_empty_cluster(table1_dataset):
    index = build_prefix_index(table1_dataset)
    cluster = specific_cluster((9, 9, 9), index)
    assert cluster.member_indices == ()
    assert associated_probabilities(cluster, table1_dataset).is_empty


def test_duplicate_members_counted():
    ds = make_dataset([(1, 2, 3, 4)] * 5)
    cluster = specific_cluster((1, 2), build_prefix_index(ds))
    assert len(cluster.member_indices) == 5


def test_empty_query_rejected(table1_dataset):
    with pytest.raises(ValueError):
        specific_cluster((), build_prefix_index(table1_dataset))


def test_ten_observation_probabilities(table2_dataset):
    index = build_prefix_index(table2_dataset)
    cluster = specific_cluster((1, 3), index)
    ap = associated_probabilities(cluster, table2_dataset)
    assert ap.support == 10
    assert ap.probabilities == {1: 0.2, 2: 0.3, 3: 0.1, 4: 0.1, 5: 0.1, 6: 0.1, 7: 0.1}
    # exact rational form, not float coincidence
    assert Fraction(ap.counts[2], ap.support) == Fraction(3, 10)
    assert Fraction(ap.counts[1], ap.support) == Fraction(1, 5)


def test_single_contributor():
    ds = make_dataset([(1, 2, 4)])
    cluster = specific_cluster((1, 2), build_prefix_index(ds))
    ap = associated_probabilities(cluster, ds)
    assert ap.probabilities == {4: 1.0}


def test_two_contributors_uniform():
    ds = make_dataset([(1, 2), (1, 7)], n_categories=7)
    cluster = specific_cluster((1,), build_prefix_index(ds))
    ap = associated_probabilities(cluster, ds)
    assert ap.probabilities == {2: 0.5, 7: 0.5}


def test_query_length_members_stay_in_cluster_but_not_in_support():
    ds = make_dataset([(1, 2), (1, 2), (1, 2, 3)])
    cluster = specific_cluster((1, 2), build_prefix_index(ds))
    assert len(cluster.member_indices) == 3
    assert cluster.contributing_count == 1
    ap = associated_probabilities(cluster, ds)
    assert ap.support == 1
    assert ap.probabilities == {3: 1.0}


def test_distribution_validates_support():
    with pytest.raises(ValueError):
        APDistribution({1: 2}, 3)
    with pytest.raises(ValueError):
        APDistribution({1: 0}, 0)


def test_argmax_breaks_ties_on_smallest_page():
    ap = APDistribution({4: 2, 2: 2, 3: 1}, 5)
    assert ap.argmax() == 2
    assert [p for p, _ in ap.entries()] == [2, 4, 3]


@given(trajs=st.lists(traj, max_size=50), prefix=traj)
def test_membership_equals_dissimilarity_filter(trajs, prefix):
    ds = make_dataset(trajs, n_categories=5)
    cluster = specific_cluster(tuple(prefix), build_prefix_index(ds))
    expected = tuple(
        i
        for i, t in enumerate(ds.trajectories)
        if len(t) >= len(prefix) and dissimilarity(prefix, t) == 0
    )
    assert cluster.member_indices == expected


@given(trajs=st.lists(traj, min_size=1, max_size=50), prefix=traj)
def test_fast_path_equals_literal_recomputation(trajs, prefix):
    ds = make_dataset(trajs, n_categories=5)
    index = build_prefix_index(ds)
    ap, size, contributing = cluster_ap(index, tuple(prefix))
    cluster = specific_cluster(tuple(prefix), index)
    literal = associated_probabilities(cluster, ds)
    assert ap == literal
    assert size == len(cluster.member_indices)
    assert contributing == cluster.contributing_count


@given(trajs=st.lists(traj, max_size=50), prefix=traj)
def test_normalization_and_support_conservation(trajs, prefix):
    ds = make_dataset(trajs, n_categories=5)
    index = build_prefix_index(ds)
    cluster = specific_cluster(tuple(prefix), index)
    ap = associated_probabilities(cluster, ds)
    assert ap.support == cluster.contributing_count
    assert ap.support == sum(
        1 for i in cluster.member_indices if len(ds.trajectories[i]) > len(prefix)
    )
    if not ap.is_empty:
        assert abs(sum(ap.probabilities.values()) - 1.0) < 1e-9
        assert all(p > 0 for p in ap.probabilities.values())


@given(trajs=st.lists(traj, max_size=50), prefix=traj, nxt=st.integers(1, 5))
def test_extending_query_refines_cluster(trajs, prefix, nxt):
    ds = make_dataset(trajs, n_categories=5)
    index = build_prefix_index(ds)
    wide = set(specific_cluster(tuple(prefix), index).member_indices)
    narrow = set(specific_cluster((*prefix, nxt), index).member_indices)
    assert narrow <= wide
