import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from skewmatch.errors import DomainError
from skewmatch.graph import Graph, brute_force_matching_number, odd_components_after_deletion
from skewmatch.neb import minimal_non_neb_subtree, neb_at, neb_report, subtree_after_path
from skewmatch.trees import iter_labeled_trees, prufer_decode, random_tree

from oracles import cycle_graph, six_vertex_tree, legged_tree, path_graph, star_graph


@st.composite
def trees(draw, max_n=11):
    n = draw(st.integers(1, max_n))
    seq = draw(st.lists(st.integers(1, n), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    return prufer_decode(seq, n)


def naive_neb(edges: set, verts: set, w: int) -> bool:
    """Unmemoized NEB test straight from the recursive definition."""
    if len(verts) == 1:
        return True
    rest = verts - {w}
    comps = []
    while rest:
        comp = {rest.pop()}
        grow = True
        while grow:
            grow = False
            for u, v in edges:
                if (u in comp) != (v in comp) and {u, v} <= verts - {w}:
                    comp |= {u, v}
                    grow = True
        rest -= comp
        comps.append(comp)
    odd = sum(len(c) % 2 for c in comps)
    if odd != (1 if len(verts) % 2 == 0 else 0):
        return False
    for comp in comps:
        (v,) = [u for u in comp if ((min(u, w), max(u, w)) in edges)]
        if not naive_neb(edges, comp, v):
            return False
    return True


def test_single_vertex_is_neb():
    assert neb_at(Graph(1), 1)


def test_p3_center_not_neb():
    assert not neb_at(path_graph(3), 2)


def test_legged_tree_not_neb_at_1():
    assert not neb_at(legged_tree(), 1)


def test_neb_rejects_non_trees():
    with pytest.raises(DomainError):
        neb_at(cycle_graph(4), 1)
    with pytest.raises(DomainError):
        neb_report(Graph(3, frozenset({(1, 2)})))


def test_report_small_paths():
    r = neb_report(path_graph(3))
    assert r.neb_roots == (1, 3) and r.is_neb_somewhere and r.witness is None
    assert neb_report(path_graph(2)).neb_roots == (1, 2)


def test_report_star_has_witness():
    r = neb_report(star_graph(3))
    assert not r.is_neb_somewhere and r.neb_roots == ()
    assert r.witness == 1
    assert odd_components_after_deletion(star_graph(3), [r.witness]) >= 2


def test_report_json():
    assert json.loads(json.dumps(neb_report(path_graph(3)).to_json())) == {
        "neb_roots": [1, 3],
        "is_neb_somewhere": True,
        "witness": None,
    }


def test_subtree_six_vertex_tree():
    ref = subtree_after_path(six_vertex_tree(), (1, 2), 3)
    assert ref.vertices == {3, 5} and ref.root == 3


def test_subtree_empty_path_is_whole_tree():
    T = six_vertex_tree()
    assert subtree_after_path(T, (), 4).vertices == set(T.vertices)


def test_subtree_legged_tree():
    ref = subtree_after_path(legged_tree(), (1, 2), 3)
    assert ref.vertices == {3, 4, 5, 8, 9, 10, 11}
    tree, labels = ref.as_tree()
    assert tree.is_tree() and len(labels) == 7


def test_subtree_invalid_step():
    with pytest.raises(DomainError):
        subtree_after_path(six_vertex_tree(), (1, 2), 6)  # 6 left with 1
    with pytest.raises(DomainError):
        subtree_after_path(six_vertex_tree(), (1, 1), 2)


def test_minimal_non_neb_legged_tree():
    ref = minimal_non_neb_subtree(legged_tree(), 1)
    assert ref.deleted_path == (1, 2) and ref.root == 3
    assert ref.to_json() == {"path": [1, 2], "root": 3, "vertices": [3, 4, 5, 8, 9, 10, 11]}
    # the two legs are NEB at 4 and 5
    for w in (4, 5):
        sub = subtree_after_path(legged_tree(), (1, 2, 3), w)
        tree, labels = sub.as_tree()
        assert neb_at(tree, labels.index(w) + 1)


def test_minimal_non_neb_star_leaf():
    ref = minimal_non_neb_subtree(star_graph(3), 2)
    assert ref.root == 1 and ref.deleted_path == (2,)
    assert odd_components_after_deletion(star_graph(3), [1]) >= 2


def test_minimal_non_neb_p3_already_minimal():
    ref = minimal_non_neb_subtree(path_graph(3), 2)
    assert ref.deleted_path == () and ref.root == 2 and ref.vertices == {1, 2, 3}


def test_minimal_non_neb_refuses_neb_root():
    with pytest.raises(DomainError, match="no non-NEB witness"):
        minimal_non_neb_subtree(path_graph(3), 1)


def _subtree_neb(ref, root):
    tree, labels = ref.as_tree()
    return neb_at(tree, labels.index(root) + 1)


@given(trees())
def test_minimal_subtree_defining_property(T):
    for v1 in T.vertices:
        if neb_at(T, v1):
            continue
        ref = minimal_non_neb_subtree(T, v1)
        assert not _subtree_neb(ref, ref.root)
        path = ref.deleted_path + (ref.root,)
        back = ref.deleted_path[-1] if ref.deleted_path else None
        for w in T.neighbors(ref.root):
            if w == back or w not in ref.vertices:
                continue
            child = subtree_after_path(T, path, w)
            assert _subtree_neb(child, w)


@given(trees(max_n=9))
def test_matches_naive_definition(T):
    for w in T.vertices:
        assert neb_at(T, w) == naive_neb(set(T.edges), set(T.vertices), w)


@given(trees())
def test_condition_i_reasserted(T):
    for w in neb_report(T).neb_roots:
        odd = odd_components_after_deletion(T, [w])
        assert odd == (1 if T.n % 2 == 0 else 0)


@given(trees(max_n=12))
def test_neb_iff_full_matching(T):
    r = neb_report(T)
    assert r.is_neb_somewhere == (brute_force_matching_number(T) == T.n // 2)
    assert r.is_neb_somewhere == bool(r.neb_roots)
    if r.witness is not None:
        assert odd_components_after_deletion(T, [r.witness]) >= 2


def test_labeled_trees_up_to_7():
    for n in range(1, 8):
        for T in iter_labeled_trees(n):
            assert neb_report(T).is_neb_somewhere == (brute_force_matching_number(T) == n // 2)


def test_random_large_trees():
    rng = np.random.default_rng(11)
    for _ in range(40):
        T = random_tree(int(rng.integers(10, 15)), rng)
        assert neb_report(T).is_neb_somewhere == (brute_force_matching_number(T) == T.n // 2)
