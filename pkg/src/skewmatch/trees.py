"""Prüfer-sequence tree generation.

``prufer_decode`` / ``iter_labeled_trees`` work one tree at a time.
``isomorphism_class_representatives`` decodes *every* sequence of a given
length in vectorized batches and keeps one labeled tree per isomorphism class,
which is what makes exhaustive sweeps over all 9-vertex labeled trees cheap.
"""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .graph import Graph

# number of unlabeled trees on n vertices (OEIS A000055), n = 0..14
UNLABELED_TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159)


def prufer_decode(seq: Sequence[int], n: int | None = None) -> Graph:
    """Tree on ``1..n`` encoded by ``seq`` (length ``n - 2``, entries in ``1..n``)."""
    if n is None:
        n = len(seq) + 2
    if n == 1:
        if seq:
            raise DomainError("a one-vertex tree has an empty Prüfer sequence")
        return Graph(1)
    if len(seq) != n - 2 or any(not 1 <= a <= n for a in seq):
        raise DomainError(f"invalid Prüfer sequence {list(seq)} for n={n}")
    degree = [1] * (n + 1)
    for a in seq:
        degree[a] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, a))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, frozenset(edges))


def iter_labeled_trees(n: int) -> Iterator[Graph]:
    """Every labeled tree on ``1..n`` (``n^(n-2)`` of them)."""
    if n <= 2:
        yield prufer_decode([], n)
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform random labeled tree via a uniform Prüfer sequence."""
    if n <= 2:
        return prufer_decode([], n)
    return prufer_decode((rng.integers(1, n + 1, size=n - 2)).tolist(), n)


def _decode_batch(seqs: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Prüfer decode of 0-based sequences; returns edge endpoint arrays (N, n-1)."""
    N = seqs.shape[0]
    rows = np.arange(N)
    deg = np.ones((N, n), dtype=np.int16)
    for i in range(n - 2):
        deg[rows, seqs[:, i]] += 1
    U = np.empty((N, n - 1), dtype=np.intp)
    V = np.empty((N, n - 1), dtype=np.intp)
    for i in range(n - 2):
        leaf = np.argmax(deg == 1, axis=1)
        U[:, i] = leaf
        V[:, i] = seqs[:, i]
        deg[rows, leaf] = 0
        deg[rows, seqs[:, i]] -= 1
    a = np.argmax(deg == 1, axis=1)
    deg[rows, a] = 0
    U[:, n - 2] = a
    V[:, n - 2] = np.argmax(deg == 1, axis=1)
    return U, V


def _mix(x: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 arithmetic wraps
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(0xBF58476D1CE4E5B9)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def _tree_signatures(U: np.ndarray, V: np.ndarray, n: int) -> np.ndarray:
    """Isomorphism-invariant 64-bit hash of each tree (hashed colour refinement)."""
    N = U.shape[0]
    offset = (np.arange(N, dtype=np.intp) * n)[None, :]
    # flat positions, one contiguous row per edge slot
    FU = np.ascontiguousarray(U.T) + offset
    FV = np.ascontiguousarray(V.T) + offset
    colors = np.zeros(N * n, dtype=np.uint64)
    # refinement stabilizes within the tree radius
    for _ in range(n // 2 + 1):
        h = _mix(colors + np.uint64(0x9E3779B97F4A7C15))
        nb = np.zeros_like(colors)
        for fu, fv in zip(FU, FV):
            nb[fu] += h[fv]
            nb[fv] += h[fu]
        colors = _mix(colors * np.uint64(0xD6E8FEB86659FD93) + nb)
    return _mix(colors).reshape(N, n).sum(axis=1) + np.uint64(n)


def isomorphism_class_representatives(n: int, chunk: int = 1 << 13) -> list[Graph]:
    """One labeled tree per isomorphism class, found by decoding all ``n^(n-2)`` Prüfer sequences.

    The hash is isomorphism-invariant, so every class maps to one signature; the
    class count is checked against the known number of unlabeled trees, which
    rules out two classes sharing a signature.
    """
    if n <= 2:
        return [prufer_decode([], n)]
    total = n ** (n - 2)
    first: dict[int, int] = {}
    powers = n ** np.arange(n - 3, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        seqs = ((codes[:, None] // powers[None, :]) % n).astype(np.intp)
        U, V = _decode_batch(seqs, n)
        sigs, idx = np.unique(_tree_signatures(U, V, n), return_index=True)
        for s, i in zip(sigs.tolist(), idx.tolist()):
            first.setdefault(s, start + i)
    expected = UNLABELED_TREE_COUNTS[n] if n < len(UNLABELED_TREE_COUNTS) else None
    if expected is not None and len(first) != expected:
        raise AssertionError(f"found {len(first)} tree classes for n={n}, expected {expected}")
    reps = []
    for code in sorted(first.values()):
        seq = [(code // n**p) % n + 1 for p in range(n - 3, -1, -1)]
        reps.append(prufer_decode(seq, n))
    return reps
