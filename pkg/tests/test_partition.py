import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import cndc_corpus, corpus, corpus_mesh, diagonalizable_corpus
from tmeshdim.conformality import build_matrix, cvs_dim, mesh_component
from tmeshdim.exact import rank, vandermonde
from tmeshdim.fixtures import load_gt, load_mesh
from tmeshdim.mesh import GeneralizedTComponent
from tmeshdim.partition import (
    PartitionError,
    complete_partition,
    is_diagonalizable,
    k_partition,
    phi_matrices,
    rank_identity_check,
    reduced_edge_blocks,
    reduced_edge_counts,
)


def test_complete_partition_examples():
    ex = load_gt("three-edge-gt")
    cp = complete_partition(ex, 2)
    assert cp.cndc == () and cp.s == 0
    gg = mesh_component(load_mesh("mesh-g"))
    assert complete_partition(gg, 2).cndc == tuple(range(6))
    gk = mesh_component(load_mesh("mesh-k"))
    cp = complete_partition(gk, 3)
    assert cp.cndc == (0, 1, 2, 3) and cp.s == 4 and cp.t == 4


def test_is_diagonalizable_examples():
    assert is_diagonalizable(GeneralizedTComponent([]), 2) == (True, ())
    ok, order = is_diagonalizable(load_gt("three-edge-gt"), 2)
    # v2v9, v4v7, v8v11
    assert ok and order == (0, 1, 2)
    assert is_diagonalizable(mesh_component(load_mesh("mesh-k")), 3) == (False, None)


def test_k_partition_examples():
    ex = load_gt("three-edge-gt")
    whole = k_partition(ex, [[0, 1, 2]])
    assert len(whole.reduced_vertices[0]) == len(ex.vertices)
    kp = k_partition(ex, [[0], [1, 2]])
    assert [len(v) for v in kp.reduced_vertices] == [3, 6]
    gk = mesh_component(load_mesh("mesh-k"))
    for order in ([0, 1, 2, 3], [3, 1, 0, 2], [2, 0, 3, 1]):
        assert sum(reduced_edge_counts(gk, order)) == 16
    with pytest.raises(PartitionError):
        k_partition(ex, [[0], [1]])
    with pytest.raises(PartitionError):
        k_partition(ex, [[0, 1], [1, 2]])


def test_phi_matrices_example():
    ex = load_gt("three-edge-gt")
    a, b = phi_matrices(ex, k_partition(ex, [[0], [1, 2]]), 2)
    assert a.shape == (3, 3) and b.shape == (6, 6)
    # columns ascend in y: t1, t2, t3
    assert a == vandermonde([1, 2, 3], 2)
    assert rank(a) == 3 and rank(b) == 6
    v = vandermonde([1, 3, 4], 2)
    zero = [0, 0, 0]
    # columns (1,1),(1,2),(3,1),(3,2),(4,1),(4,2): lower edge first in x-then-y order
    expect_rows = []
    for p in range(3):
        expect_rows.append([zero[0], v[p, 0], 0, v[p, 1], 0, v[p, 2]])
    for p in range(3):
        expect_rows.append([v[p, 0], 0, v[p, 1], 0, v[p, 2], 0])
    assert b.to_lists() == [[x for x in r] for r in expect_rows]
    (single,) = phi_matrices(ex, k_partition(ex, [[0, 1, 2]]), 2)
    assert single == build_matrix(ex, 2).matrix


def test_rank_identity_examples():
    assert rank_identity_check(load_gt("three-edge-gt"), 2) == {"lhs": 9, "rhs": 9, "holds": True}
    assert rank_identity_check(mesh_component(load_mesh("mesh-k")), 3) == {"lhs": 16, "rhs": 16,
                                                                             "holds": True}


@pytest.mark.parametrize("seed,mesh,d", corpus(60))
def test_partition_characterization(seed, mesh, d):
    gt = mesh_component(mesh)
    cp = complete_partition(gt, d)
    for i in cp.cndc:
        assert gt.mono_count(i, cp.cndc) < d + 1
        multi = [p for p in gt.edges[i].points() if p in gt.multi_vertices(cp.cndc)]
        assert len(multi) >= 2
    assert all(m >= d + 1 for m in cp.removal_mono)
    assert sorted(cp.removed) == sorted(cp.order)
    assert sorted(cp.removed + cp.cndc) == list(range(len(gt)))
    if not cp.cndc:
        assert all(n >= d + 1 for n in reduced_edge_counts(gt, cp.order))
    assert rank_identity_check(gt, d)["holds"]


@pytest.mark.parametrize("seed,mesh,d", cndc_corpus(15))
def test_partition_characterization_nonempty_cndc(seed, mesh, d):
    gt = mesh_component(mesh)
    cp = complete_partition(gt, d)
    assert cp.cndc
    for i in cp.cndc:
        assert gt.mono_count(i, cp.cndc) < d + 1
        assert sum(p in gt.multi_vertices(cp.cndc) for p in gt.edges[i].points()) >= 2
    assert rank_identity_check(gt, d)["holds"]


@pytest.mark.parametrize("seed,mesh,d", corpus(30) + list(cndc_corpus(5)))
def test_removal_order_independence(seed, mesh, d):
    gt = mesh_component(mesh)
    base = complete_partition(gt, d).cndc
    rng = random.Random(seed)
    for _ in range(5):
        order = list(range(len(gt)))
        rng.shuffle(order)
        assert complete_partition(gt, d, removal_order=order).cndc == base


@pytest.mark.parametrize("seed,mesh,d", diagonalizable_corpus(30))
def test_direct_sum_and_full_row_rank_blocks(seed, mesh, d):
    gt = mesh_component(mesh)
    ok, order = is_diagonalizable(gt, d)
    assert ok
    counts = reduced_edge_counts(gt, order)
    assert all(n >= d + 1 for n in counts)
    assert cvs_dim(gt, d) == sum(n - (d + 1) for n in counts)
    for blk in phi_matrices(gt, k_partition(gt, [[i] for i in order]), d):
        assert rank(blk) == d + 1
    for v in reduced_edge_blocks(gt, order, d):
        assert rank(v) == d + 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 400), st.randoms(use_true_random=False))
def test_mono_count_monotone_in_part(seed, rnd):
    mesh, d = corpus_mesh(seed)
    gt = mesh_component(mesh)
    if not len(gt):
        return
    idx = list(range(len(gt)))
    small = set(rnd.sample(idx, rnd.randint(1, len(idx))))
    big = small | set(rnd.sample(idx, rnd.randint(0, len(idx))))
    for i in small:
        assert gt.mono_count(i, big) <= gt.mono_count(i, small)


def test_layered_order_differs_from_greedy_when_needed():
    # the sequential peel order reversed is not always a valid t-partition order;
    # the reported order must be
    for seed, mesh, d in diagonalizable_corpus(60):
        gt = mesh_component(mesh)
        cp = complete_partition(gt, d)
        assert all(n >= d + 1 for n in reduced_edge_counts(gt, cp.order)), seed
