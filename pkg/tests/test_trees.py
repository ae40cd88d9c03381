import itertools

import networkx as nx
import numpy as np
import pytest

from skewmatch.errors import DomainError
from skewmatch.graph import Graph
from skewmatch.trees import (
    UNLABELED_TREE_COUNTS,
    _decode_batch,
    isomorphism_class_representatives,
    iter_labeled_trees,
    prufer_decode,
    random_tree,
)


def test_decode_known_sequence():
    # textbook example: (4, 4, 4, 5) on 6 vertices
    assert prufer_decode([4, 4, 4, 5]) == Graph.from_edges([(1, 4), (2, 4), (3, 4), (4, 5), (5, 6)])


def test_decode_small():
    assert prufer_decode([], 1) == Graph(1)
    assert prufer_decode([], 2) == Graph.from_edges([(1, 2)])


def test_decode_rejects_bad_sequences():
    with pytest.raises(DomainError):
        prufer_decode([7, 1], 4)
    with pytest.raises(DomainError):
        prufer_decode([1], 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_labeled_tree_count_and_distinctness(n):
    trees = list(iter_labeled_trees(n))
    assert len(trees) == n ** max(n - 2, 0)
    assert len(set(trees)) == len(trees)
    assert all(T.is_tree() for T in trees)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_batch_decode_matches_scalar(n):
    seqs = np.array(list(itertools.product(range(n), repeat=n - 2)), dtype=np.intp)
    U, V = _decode_batch(seqs, n)
    for row, seq in enumerate(seqs):
        edges = {(min(u, v) + 1, max(u, v) + 1) for u, v in zip(U[row], V[row])}
        assert Graph(n, frozenset(edges)) == prufer_decode((seq + 1).tolist(), n)


@pytest.mark.parametrize("n", range(1, 9))
def test_class_representatives_are_pairwise_non_isomorphic(n):
    reps = isomorphism_class_representatives(n)
    assert len(reps) == UNLABELED_TREE_COUNTS[n]
    nx_trees = []
    for T in reps:
        H = nx.Graph(list(T.edges))
        H.add_nodes_from(T.vertices)
        nx_trees.append(H)
    for a, b in itertools.combinations(nx_trees, 2):
        assert not nx.is_isomorphic(a, b)


def test_random_tree_is_tree():
    rng = np.random.default_rng(5)
    for n in range(1, 16):
        assert random_tree(n, rng).is_tree()
