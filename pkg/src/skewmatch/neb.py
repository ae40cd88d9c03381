"""Nearly-even-branching (NEB) trees.

A tree on one vertex is NEB at that vertex. A tree ``T`` on ``n >= 2``
vertices is NEB at ``w`` when deleting ``w`` leaves exactly one odd component
(``n`` even) or none (``n`` odd), and every branch at ``w`` is NEB at the
neighbor of ``w`` it contains.

Subtrees are handled as vertex sets of the original tree so that labels never
change; the recursion is memoized on ``(vertex set, root)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError
from .graph import Graph, odd_components_after_deletion

Memo = dict[tuple[frozenset[int], int], bool]


def _require_tree(T: Graph):
    if not T.is_tree():
        raise DomainError("input graph is not a tree")


def _branches(T: Graph, verts: frozenset[int], removed: int) -> list[frozenset[int]]:
    """Components of ``verts - {removed}``, ordered by least vertex."""
    adj = T.adjacency
    seen = {removed}
    out = []
    for s in sorted(verts):
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u in verts and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        out.append(frozenset(comp))
    return out


def _branch_containing(T: Graph, verts: frozenset[int], removed: int, anchor: int) -> frozenset[int]:
    for comp in _branches(T, verts, removed):
        if anchor in comp:
            return comp
    raise DomainError(f"vertex {anchor} is not in a component left by deleting {removed}")


def _attach(T: Graph, comp: frozenset[int], w: int) -> int:
    # the unique neighbor of w inside one of its branches
    return next(u for u in T.adjacency[w] if u in comp)


def _neb(T: Graph, verts: frozenset[int], w: int, memo: Memo) -> bool:
    key = (verts, w)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(verts) == 1:
        memo[key] = True
        return True
    comps = _branches(T, verts, w)
    odd = sum(len(c) % 2 for c in comps)
    ok = odd == (1 if len(verts) % 2 == 0 else 0)
    if ok:
        ok = all(_neb(T, c, _attach(T, c, w), memo) for c in comps)
    memo[key] = ok
    return ok


def neb_at(T: Graph, w: int) -> bool:
    _require_tree(T)
    if not 1 <= w <= T.n:
        raise DomainError(f"vertex {w} outside 1..{T.n}")
    return _neb(T, frozenset(T.vertices), w, {})


@dataclass(frozen=True)
class RootedSubtreeRef:
    """The subtree ``T_root(path)``: delete ``path`` step by step, keep the part holding ``root``."""

    tree: Graph
    deleted_path: tuple[int, ...]
    root: int
    vertices: frozenset[int] = field(default_factory=frozenset)

    def as_tree(self) -> tuple[Graph, tuple[int, ...]]:
        """Induced subtree relabeled to ``1..m`` plus the original label of each new vertex."""
        labels = tuple(sorted(self.vertices))
        index = {v: i for i, v in enumerate(labels, start=1)}
        edges = frozenset(
            (index[u], index[v]) for u, v in self.tree.edges if u in index and v in index
        )
        return Graph(len(labels), edges), labels

    def to_json(self) -> dict:
        return {"path": list(self.deleted_path), "root": self.root, "vertices": sorted(self.vertices)}


def subtree_after_path(T: Graph, path: Sequence[int], anchor: int) -> RootedSubtreeRef:
    _require_tree(T)
    verts = frozenset(T.vertices)
    steps = list(path) + [anchor]
    for v, nxt in zip(steps, steps[1:]):
        if v not in verts:
            raise DomainError(f"path vertex {v} is not in the current subtree")
        if nxt == v:
            raise DomainError(f"path repeats vertex {v}")
        verts = _branch_containing(T, verts, v, nxt)
    if anchor not in verts:
        raise DomainError(f"anchor {anchor} is not in the current subtree")
    return RootedSubtreeRef(T, tuple(path), anchor, verts)


def minimal_non_neb_subtree(T: Graph, v1: int) -> RootedSubtreeRef:
    """Descend from ``v1`` into the non-NEB branch with the smallest child label until every branch is NEB."""
    _require_tree(T)
    memo: Memo = {}
    verts = frozenset(T.vertices)
    if _neb(T, verts, v1, memo):
        raise DomainError(f"tree is NEB at {v1}; no non-NEB witness")
    path: list[int] = []
    root = v1
    while True:
        for comp in sorted(_branches(T, verts, root), key=lambda c: _attach(T, c, root)):
            child = _attach(T, comp, root)
            if not _neb(T, comp, child, memo):
                path.append(root)
                root, verts = child, comp
                break
        else:
            return RootedSubtreeRef(T, tuple(path), root, verts)


@dataclass(frozen=True)
class NebReport:
    is_neb_somewhere: bool
    neb_roots: tuple[int, ...]
    witness: int | None = None

    def to_json(self) -> dict:
        return {
            "neb_roots": list(self.neb_roots),
            "is_neb_somewhere": self.is_neb_somewhere,
            "witness": self.witness,
        }


def neb_report(T: Graph) -> NebReport:
    """All NEB roots of ``T``; when there are none, a vertex whose deletion leaves two or more odd components."""
    _require_tree(T)
    memo: Memo = {}
    full = frozenset(T.vertices)
    roots = tuple(w for w in T.vertices if _neb(T, full, w, memo))
    if roots:
        return NebReport(True, roots)
    # the root of a minimal non-NEB subtree already fails condition (i) there,
    # and the branch back toward v_1 only adds a component
    witness = minimal_non_neb_subtree(T, 1).root
    if odd_components_after_deletion(T, [witness]) < 2:
        raise AssertionError(f"witness {witness} leaves fewer than two odd components")
    return NebReport(False, (), witness)
