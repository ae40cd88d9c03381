"""Real skew-symmetric matrices over a graph: patterns, spectra, ranks and eigenvalue derivatives.

Eigenvalues of a real skew-symmetric ``A`` are ``±iμ`` (plus zeros). We work
with the nonnegative reals ``μ`` ("positive parts") throughout, computed from
the Hermitian matrix ``-iA`` whose eigenvalues are exactly the ``μ`` and ``-μ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, JacobianError
from .graph import Graph, Matching, VertexRelabeling, maximum_matching, relabel_for_matching

ZERO_REL_TOL = 1e-8
RANK_REL_TOL = 1e-10
GAP_REL_TOL = 1e-6


def zero_threshold(mu1: float) -> float:
    """Positive parts at or below this value count as zero."""
    return ZERO_REL_TOL * max(1.0, mu1)


@dataclass(frozen=True, eq=False)
class SkewMatrix:
    """Dense real skew-symmetric matrix; only the strict upper triangle is read."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"expected a nonempty square matrix, got shape {a.shape}")
        upper = np.triu(a, k=1)
        a = upper - upper.T
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_dense(cls, a, check: bool = True) -> SkewMatrix:
        a = np.asarray(a, dtype=float)
        if check and not np.array_equal(a, -a.T):
            raise DomainError("matrix is not exactly skew-symmetric")
        return cls(a)

    @classmethod
    def from_upper(cls, n: int, upper: Sequence[Sequence[float]]) -> SkewMatrix:
        a = np.zeros((n, n))
        for i, j, val in upper:
            i, j = int(i), int(j)
            if not 1 <= i < j <= n:
                raise DomainError(f"upper entry ({i},{j}) must satisfy 1 <= i < j <= {n}")
            a[i - 1, j - 1] = float(val)
        return cls(a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def graph(self) -> Graph:
        iu, ju = np.nonzero(np.triu(self.entries, k=1))
        return Graph(self.n, frozenset(zip((iu + 1).tolist(), (ju + 1).tolist())))

    def permuted(self, idx: np.ndarray) -> SkewMatrix:
        """``B[a, b] = A[idx[a], idx[b]]`` (a simultaneous row/column permutation)."""
        return SkewMatrix(self.entries[np.ix_(idx, idx)])

    def to_json(self) -> dict:
        iu, ju = np.nonzero(np.triu(self.entries, k=1))
        upper = [[int(i) + 1, int(j) + 1, float(self.entries[i, j])] for i, j in zip(iu, ju)]
        return {"n": self.n, "upper": upper}

    @classmethod
    def from_json(cls, data: dict) -> SkewMatrix:
        try:
            return cls.from_upper(int(data["n"]), data["upper"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad matrix JSON: {exc}") from None

    def __eq__(self, other):
        return isinstance(other, SkewMatrix) and np.array_equal(self.entries, other.entries)

    __hash__ = None


@dataclass(frozen=True)
class SkewPattern:
    """Positions of the matching variables ``x`` and the remaining edge variables ``y``.

    Coordinates are those of ``relabeling``: matching edge ``j`` sits at
    ``(2j-1, 2j)``, and no ``y`` position has both endpoints beyond ``2k``.
    """

    n: int
    k: int
    m: int
    x_positions: tuple[tuple[int, int], ...]
    y_positions: tuple[tuple[int, int], ...]
    source_graph: Graph
    relabeling: VertexRelabeling


def build_pattern(G: Graph, M: Matching | None = None) -> SkewPattern:
    canonical = maximum_matching(G)
    if M is None:
        M = canonical
    elif M.graph != G:
        M = Matching(G, M.edges)
    if len(M) != len(canonical):
        raise DomainError(f"matching has {len(M)} edges but the matching number is {len(canonical)}")
    rel = relabel_for_matching(G, M)
    H = rel.apply_graph(G)
    k = len(M)
    x_pos = tuple((2 * j - 1, 2 * j) for j in range(1, k + 1))
    xs = set(x_pos)
    y_pos = tuple(e for e in H.sorted_edges() if e not in xs)
    if any(i > 2 * k for i, _ in y_pos):
        raise DomainError("edge between unmatched vertices; matching is not maximum")
    return SkewPattern(G.n, k, len(y_pos), x_pos, y_pos, G, rel)


def evaluate_pattern(P: SkewPattern, x: Sequence[float], y: Sequence[float]) -> SkewMatrix:
    """Fill the pattern with values; the result is in relabeled coordinates."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.size != P.k or y.size != P.m:
        raise DomainError(f"expected {P.k} x-values and {P.m} y-values, got {x.size} and {y.size}")
    a = np.zeros((P.n, P.n))
    for (i, j), val in zip(P.x_positions, x):
        a[i - 1, j - 1] = val
    for (i, j), val in zip(P.y_positions, y):
        a[i - 1, j - 1] = val
    return SkewMatrix(a)


@dataclass(frozen=True)
class SkewSpectrum:
    """``positive_parts`` holds ``μ_1 >= ... >= μ_{n//2} >= 0``; the spectrum is ``{±iμ_j}`` plus a zero when ``n`` is odd."""

    n: int
    positive_parts: tuple[float, ...]
    zero_count_numeric: int

    @property
    def nonzero_count(self) -> int:
        return self.n - self.zero_count_numeric

    def eigenvalues(self) -> np.ndarray:
        mu = np.asarray(self.positive_parts)
        vals = np.concatenate([1j * mu, -1j * mu, np.zeros(self.n % 2)])
        return vals


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    p = int(np.argmax(np.abs(v)))
    return v * (abs(v[p]) / v[p])


def skew_eigen(A: SkewMatrix, k: int | None = None) -> tuple[SkewSpectrum, np.ndarray]:
    """Positive parts of ``A`` and unit eigenvectors for the ``k`` largest.

    Column ``j`` of the returned array satisfies ``A v = i μ_j v``; its largest
    entry is made real and positive. ``k`` defaults to the number of positive
    parts above the zero threshold.
    """
    n = A.n
    w, vecs = np.linalg.eigh(-1j * A.entries)
    half = n // 2
    # pair the j-th largest with the j-th smallest eigenvalue
    mu = np.array([(w[n - 1 - j] - w[j]) / 2 for j in range(half)])
    thr = zero_threshold(mu[0] if half else 0.0)
    nonzero = int(np.count_nonzero(mu > thr))
    spectrum = SkewSpectrum(n, tuple(mu.tolist()), n - 2 * nonzero)
    if k is None:
        k = nonzero
    if not 0 <= k <= half:
        raise DomainError(f"cannot request {k} eigenvectors from an order-{n} skew matrix")
    out = np.empty((n, k), dtype=complex)
    for j in range(k):
        out[:, j] = _phase_normalize(vecs[:, n - 1 - j])
    return spectrum, out


def rank_numeric(A: SkewMatrix, tol: float = RANK_REL_TOL) -> int:
    """Twice the number of positive parts above ``tol * n * μ_1`` and above the spectral zero threshold.

    A skew matrix is normal, so its singular values are its positive parts, each
    twice. Counting from the same eigen decomposition as ``skew_eigen`` keeps the
    rank equal to twice the nonzero count even for values at the threshold.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    spectrum, _ = skew_eigen(A, 0)
    mu = np.asarray(spectrum.positive_parts)
    if mu.size == 0 or mu[0] <= 0:
        return 0
    cut = max(tol * A.n * mu[0], zero_threshold(mu[0]))
    return 2 * int(np.count_nonzero(mu > cut))


def rank_exact_rational(A) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Accepts a ``SkewMatrix`` or any 2-D array of ints, floats or ``Fraction``;
    floats are converted exactly.
    """
    rows = A.entries.tolist() if isinstance(A, SkewMatrix) else [list(r) for r in A]
    frac_rows = [[Fraction(v) for v in r] for r in rows]
    mat = []
    for r in frac_rows:
        scale = lcm(*(v.denominator for v in r)) if r else 1
        mat.append([int(v * scale) for v in r])
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    rank = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(rank, n_rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][c]
        for i in range(rank + 1, n_rows):
            a = mat[i][c]
            row_i = mat[i]
            row_r = mat[rank]
            for j in range(c + 1, n_cols):
                row_i[j] = (row_i[j] * p - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def random_skew_evaluation(G: Graph, rng: np.random.Generator) -> SkewMatrix:
    """Matrix with graph exactly ``G``: magnitudes uniform in [1, 2], random signs."""
    edges = G.sorted_edges()
    vals = rng.uniform(1.0, 2.0, len(edges)) * rng.choice([-1.0, 1.0], len(edges))
    a = np.zeros((G.n, G.n))
    for (i, j), val in zip(edges, vals):
        a[i - 1, j - 1] = val
    return SkewMatrix(a)


class MaxSkewRank(NamedTuple):
    certified: int
    sampled: int


def max_skew_rank(G: Graph, samples: int = 20, seed: int = 0, tol: float = RANK_REL_TOL) -> MaxSkewRank:
    """Maximum rank over matrices with graph ``G``: twice the matching number, and the best of random samples."""
    certified = 2 * len(maximum_matching(G))
    sampled = 0
    for child in np.random.SeedSequence(seed).spawn(samples):
        rng = np.random.default_rng(child)
        sampled = max(sampled, rank_numeric(random_skew_evaluation(G, rng), tol))
    return MaxSkewRank(certified, sampled)


def knn_skew_adjacency(n: int) -> SkewMatrix:
    """``x yᵀ - y xᵀ`` with ``x`` all ones and ``y = (1,…,1,2,…,2)``: graph ``K_{n,n}``, rank 2."""
    x = np.ones(2 * n)
    y = np.concatenate([np.ones(n), 2 * np.ones(n)])
    return SkewMatrix(np.outer(x, y) - np.outer(y, x))


def eigenvalue_derivative(A: SkewMatrix, v: np.ndarray, r: int, s: int) -> float:
    """Rate of change of ``μ`` under ``A + t(E_rs - E_sr)``, where ``A v = iμ v`` (1-based ``r``, ``s``)."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != A.n:
        raise DomainError(f"eigenvector has length {v.size}, matrix has order {A.n}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise DomainError("eigenvector is not a unit vector")
    if r == s or not (1 <= r <= A.n and 1 <= s <= A.n):
        raise DomainError(f"invalid index pair ({r}, {s})")
    return float(2.0 * np.imag(np.conj(v[r - 1]) * v[s - 1]))


def check_simple(mu: Sequence[float], k: int, gap_tol: float = GAP_REL_TOL):
    """Raise ``JacobianError`` unless the top ``k`` positive parts are distinct and clear of zero."""
    if k == 0:
        return
    scale = max(mu[0], 1e-300)
    for j in range(k - 1):
        if mu[j] - mu[j + 1] < gap_tol * scale:
            raise JacobianError(f"positive parts {j + 1} and {j + 2} are clustered; Jacobian unreliable")
    if mu[k - 1] < gap_tol * scale:
        raise JacobianError(f"positive part {k} is too close to zero; Jacobian unreliable")


def spectrum_and_jacobian(
    P: SkewPattern, x: Sequence[float], y: Sequence[float], gap_tol: float = GAP_REL_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Top ``k`` positive parts of ``M(x, y)`` and their Jacobian in ``x``."""
    A = evaluate_pattern(P, x, y)
    spectrum, vecs = skew_eigen(A, P.k)
    mu = np.asarray(spectrum.positive_parts[: P.k])
    check_simple(spectrum.positive_parts, P.k, gap_tol)
    J = np.empty((P.k, P.k))
    for j in range(P.k):
        for l, (r, s) in enumerate(P.x_positions):
            J[j, l] = eigenvalue_derivative(A, vecs[:, j], r, s)
    return mu, J


def jacobian_x(P: SkewPattern, x: Sequence[float], y: Sequence[float], gap_tol: float = GAP_REL_TOL) -> np.ndarray:
    return spectrum_and_jacobian(P, x, y, gap_tol)[1]
