"""Prescribed-spectrum realization over a graph.

Given ``G`` with matching number ``k`` and targets ``μ_1 > … > μ_k > 0``,
build a real skew-symmetric ``A`` whose graph is exactly ``G`` and whose
eigenvalues are ``±iμ_j`` plus ``n - 2k`` zeros.

Start from the block-diagonal seed (``μ_j`` on the matching edges, zero
elsewhere), freeze every non-matching edge at ``±ε``, and Newton-correct the
matching entries; the Jacobian at the seed is the identity. If Newton stalls,
halve ``ε`` and start over.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, JacobianError
from .graph import Graph, maximum_matching
from .spectral import (
    GAP_REL_TOL,
    SkewMatrix,
    SkewPattern,
    build_pattern,
    evaluate_pattern,
    skew_eigen,
    spectrum_and_jacobian,
    zero_threshold,
)

log = logging.getLogger(__name__)

TARGET_GAP_REL = 1e-10
EPSILON0_REL = 0.05
EPSILON_MIN_REL = 1e-8
STEP_CLIP_REL = 0.5


@dataclass(frozen=True)
class SpectralTarget:
    """Distinct positive parts ``μ_1 > … > μ_k > 0`` for an order-``n`` matrix."""

    mu: tuple[float, ...]
    n: int

    def __post_init__(self):
        mu = tuple(float(v) for v in self.mu)
        object.__setattr__(self, "mu", mu)
        if 2 * len(mu) > self.n:
            raise DomainError(f"{len(mu)} targets need order at least {2 * len(mu)}, got n={self.n}")
        if any(not np.isfinite(v) or v <= 0 for v in mu):
            raise DomainError("targets must be finite and positive")
        for a, b in zip(mu, mu[1:]):
            if a - b < TARGET_GAP_REL * a:
                raise DomainError(f"targets must be strictly decreasing, got {a} then {b}")

    @property
    def k(self) -> int:
        return len(self.mu)

    @property
    def zero_multiplicity(self) -> int:
        return self.n - 2 * self.k


@dataclass(frozen=True)
class SolverConfig:
    """Newton/ε-schedule settings. ``None`` for the ε bounds means "scale by the smallest target"."""

    epsilon0: float | None = None
    epsilon_min: float | None = None
    newton_tol: float = 1e-9
    newton_max_iter: int = 50
    gap_tol: float = GAP_REL_TOL
    seed: int = 0

    def __post_init__(self):
        if self.newton_tol <= 0 or self.gap_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.newton_max_iter < 1:
            raise DomainError("newton_max_iter must be at least 1")
        for name in ("epsilon0", "epsilon_min"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise DomainError(f"{name} must be positive")

    def epsilon_bounds(self, mu_min: float) -> tuple[float, float]:
        eps0 = self.epsilon0 if self.epsilon0 is not None else EPSILON0_REL * mu_min
        eps_min = self.epsilon_min if self.epsilon_min is not None else EPSILON_MIN_REL * mu_min
        if not eps_min < eps0:
            raise DomainError(f"epsilon_min ({eps_min}) must be below epsilon0 ({eps0})")
        return eps0, eps_min


@dataclass(frozen=True)
class SolverResult:
    matrix: SkewMatrix
    residual: float
    epsilon_used: float
    iterations: int
    trace: tuple[float, ...]
    restarts: tuple[float, ...] = ()
    matching: tuple[tuple[int, int], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "residual": self.residual,
            "epsilon_used": self.epsilon_used,
            "iterations": self.iterations,
            "trace": list(self.trace),
            "restarts": list(self.restarts),
            "matching": [list(e) for e in self.matching],
        }


def seed_matrix(P: SkewPattern, target: SpectralTarget) -> SkewMatrix:
    """Block-diagonal starting point: ``μ_j`` at ``(2j-1, 2j)``, everything else zero (relabeled coordinates)."""
    if P.k != target.k:
        raise DomainError(f"pattern has {P.k} matching variables, target has {target.k} values")
    return evaluate_pattern(P, target.mu, np.zeros(P.m))


def _to_original(P: SkewPattern, A: SkewMatrix) -> SkewMatrix:
    return A.permuted(P.relabeling.index_array())


def _residual(mu: np.ndarray, target: np.ndarray) -> float:
    return float(np.max(np.abs(mu - target))) if target.size else 0.0


def _polish(P, x, y, f, J, mu_t, res, eps, gap_tol):
    # one extra Newton step inside tolerance; kept only if it helps
    try:
        x_new = x + np.linalg.solve(J, mu_t - f)
        f_new, _ = spectrum_and_jacobian(P, x_new, y, gap_tol)
    except (np.linalg.LinAlgError, JacobianError):
        return x, res, False
    res_new = _residual(f_new, mu_t)
    if res_new < res and np.all(np.abs(x_new) >= eps):
        return x_new, res_new, True
    return x, res, False


def solve(G: Graph, target: SpectralTarget, cfg: SolverConfig | None = None) -> SolverResult:
    cfg = cfg or SolverConfig()
    if target.n != G.n:
        raise DomainError(f"target is for order {target.n}, graph has {G.n} vertices")
    M = maximum_matching(G)
    if len(M) != target.k:
        raise DomainError(f"graph has matching number {len(M)} but {target.k} targets were given")
    P = build_pattern(G, M)
    log.debug("matching %s, %d free entries", M.sorted_edges(), P.m)
    mu_t = np.asarray(target.mu)
    if P.m == 0:
        A = seed_matrix(P, target)
        spectrum, _ = skew_eigen(A, 0)
        res = _residual(np.asarray(spectrum.positive_parts[: P.k]), mu_t)
        return SolverResult(_to_original(P, A), res, 0.0, 0, (res,), (), tuple(M.sorted_edges()))

    eps, eps_min = cfg.epsilon_bounds(target.mu[-1])
    signs = np.random.default_rng(cfg.seed).choice([-1.0, 1.0], P.m)
    clip = STEP_CLIP_REL * target.mu[-1]
    trace: list[float] = []
    restarts: list[float] = []
    total_iter = 0
    while True:
        restarts.append(eps)
        y = eps * signs
        x = mu_t.copy()
        reason = "iteration cap"
        for it in range(cfg.newton_max_iter + 1):
            try:
                f, J = spectrum_and_jacobian(P, x, y, cfg.gap_tol)
            except JacobianError as exc:
                reason = str(exc)
                break
            res = _residual(f, mu_t)
            trace.append(res)
            if res <= cfg.newton_tol:
                x, res, polished = _polish(P, x, y, f, J, mu_t, res, eps, cfg.gap_tol)
                if polished:
                    trace.append(res)
                    total_iter += 1
                A = _to_original(P, evaluate_pattern(P, x, y))
                if A.graph() == G:
                    return SolverResult(A, res, eps, total_iter, tuple(trace), tuple(restarts), tuple(M.sorted_edges()))
                reason = "realized graph differs from G"
                break
            if it == cfg.newton_max_iter:
                break
            try:
                step = np.linalg.solve(J, mu_t - f)
            except np.linalg.LinAlgError:
                reason = "singular Jacobian"
                break
            x = x + np.clip(step, -clip, clip)
            total_iter += 1
            if np.any(np.abs(x) < eps):
                reason = "matching entry collapsed below epsilon"
                break
        log.info("epsilon %.3g failed (%s)", eps, reason)
        eps /= 2
        if eps < eps_min:
            raise ConvergenceError(
                f"no convergence down to epsilon_min={eps_min:.3g}: {reason}", trace, restarts
            )


@dataclass(frozen=True)
class VerificationReport:
    checks: dict[str, bool]
    positive_parts: tuple[float, ...]
    nonzero_count: int
    matching_number: int

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": dict(self.checks),
            "positive_parts": list(self.positive_parts),
            "nonzero_count": self.nonzero_count,
            "matching_number": self.matching_number,
        }


def verify_solution(G: Graph, target: SpectralTarget, A: SkewMatrix, tol: float = 1e-9) -> VerificationReport:
    """Independent post-hoc checks on a claimed realization; failures are reported, not raised."""
    k = target.k
    match_number = len(maximum_matching(G))
    spectrum, _ = skew_eigen(A, 0)
    mu = np.asarray(spectrum.positive_parts)
    n_ok = A.n == G.n
    checks = {
        "graph": n_ok and A.graph() == G,
        "skew_symmetric": bool(np.array_equal(A.entries, -A.entries.T)),
        "spectrum": (
            n_ok
            and len(mu) >= k
            and bool(np.all(np.abs(mu[:k] - np.asarray(target.mu)) <= tol))
            and spectrum.zero_count_numeric == target.zero_multiplicity
        ),
        "rank_bound": spectrum.nonzero_count == 2 * k and spectrum.nonzero_count <= 2 * match_number,
    }
    return VerificationReport(checks, spectrum.positive_parts, spectrum.nonzero_count, match_number)


def certifies_full_matching(G: Graph, A: SkewMatrix) -> bool:
    """True when ``A`` has graph ``G`` and ``2⌊n/2⌋`` distinct nonzero eigenvalues.

    Such a matrix forces the matching number of ``G`` up to ``⌊n/2⌋``; the
    claim is cross-checked against ``maximum_matching`` and a violation raises.
    """
    if A.graph() != G:
        return False
    spectrum, _ = skew_eigen(A, 0)
    half = G.n // 2
    if spectrum.nonzero_count != 2 * half:
        return False
    mu = spectrum.positive_parts
    thr = zero_threshold(mu[0] if mu else 0.0)
    if any(a - b <= thr for a, b in zip(mu, mu[1:])):
        return False
    if len(maximum_matching(G)) != half:
        raise AssertionError("matrix with full distinct spectrum on a graph without a full matching")
    return True


def parse_targets(text: str | Sequence[float], n: int) -> SpectralTarget:
    if isinstance(text, str):
        try:
            vals = [float(t) for t in text.split(",") if t.strip()]
        except ValueError:
            raise DomainError(f"bad target list {text!r}") from None
    else:
        vals = list(text)
    return SpectralTarget(tuple(vals), n)
