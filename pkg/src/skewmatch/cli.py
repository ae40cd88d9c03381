"""Command-line front end. JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 domain/validation error, 2 convergence failure,
3 I/O, parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from .errors import ConvergenceError, DomainError, ParseError
from .graph import Graph, maximum_matching, parse_graph, spanning_tree_containing, tutte_has_perfect_matching
from .neb import minimal_non_neb_subtree, neb_report
from .solver import SolverConfig, parse_targets, solve, verify_solution
from .spectral import SkewMatrix, max_skew_rank, rank_numeric, skew_eigen

SEED_ENV = "SKEWMATCH_SEED"

EXIT_OK, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


def _read_matrix(path: str) -> SkewMatrix:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None
    if isinstance(data, dict) and "matrix" in data:
        data = data["matrix"]
    if not isinstance(data, dict):
        raise ParseError(f"{path} does not hold a matrix object")
    return SkewMatrix.from_json(data)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_match(args):
    M = maximum_matching(_read_graph(args.input))
    return {"matching_number": len(M), "matching": M.to_json()}


def cmd_tutte(args):
    ok, witness = tutte_has_perfect_matching(_read_graph(args.input))
    return {"has_perfect_matching": ok, "witness": witness}


def cmd_neb(args):
    return neb_report(_read_graph(args.input)).to_json()


def cmd_min_non_neb(args):
    return minimal_non_neb_subtree(_read_graph(args.input), args.root).to_json()


def cmd_maxrank(args):
    res = max_skew_rank(_read_graph(args.input), samples=args.samples, seed=_seed(args))
    return {"certified": res.certified, "sampled": res.sampled}


def cmd_eigen(args):
    A = _read_matrix(args.input)
    spectrum, _ = skew_eigen(A, 0)
    return {
        "n": A.n,
        "positive_parts": list(spectrum.positive_parts),
        "zero_count": spectrum.zero_count_numeric,
        "rank": rank_numeric(A),
    }


def cmd_solve(args):
    G = _read_graph(args.input)
    cfg = SolverConfig(
        epsilon0=args.epsilon0,
        newton_tol=args.tol,
        newton_max_iter=args.max_iter,
        seed=_seed(args),
    )
    return solve(G, parse_targets(args.targets, G.n), cfg).to_json()


def cmd_verify(args):
    G = _read_graph(args.input)
    report = verify_solution(G, parse_targets(args.targets, G.n), _read_matrix(args.matrix), args.tol).to_json()
    if not report["passed"]:
        failed = [name for name, ok in report["checks"].items() if not ok]
        report["error"] = f"verification failed: {', '.join(failed)}"
    return report


def cmd_spanning_tree(args):
    G = _read_graph(args.input)
    M = maximum_matching(G)
    T = spanning_tree_containing(G, M)
    return {"n": T.n, "edges": [list(e) for e in T.sorted_edges()], "matching": M.to_json()}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewmatch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, func, help_text, input_help="edge-list file ('-' for stdin)"):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", default="-", help=input_help)
        p.set_defaults(func=func)
        return p

    add("match", cmd_match, "maximum matching")
    add("tutte", cmd_tutte, "perfect-matching test by Tutte's condition (n <= 20)")
    add("neb", cmd_neb, "NEB roots of a tree")
    p = add("min-non-neb", cmd_min_non_neb, "minimal non-NEB subtree from a root")
    p.add_argument("--root", type=int, default=1)
    p = add("maxrank", cmd_maxrank, "maximum skew rank: certified and sampled")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    add("eigen", cmd_eigen, "positive parts of a skew matrix", "matrix JSON file ('-' for stdin)")
    p = add("solve", cmd_solve, "realize prescribed positive parts on the graph")
    p.add_argument("--targets", required=True, help="comma-separated, strictly decreasing")
    p.add_argument("--epsilon0", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p = add("verify", cmd_verify, "check a matrix against a graph and targets")
    p.add_argument("--matrix", required=True, help="matrix or solve-result JSON")
    p.add_argument("--targets", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    add("spanning-tree", cmd_spanning_tree, "spanning tree containing the canonical maximum matching")
    return parser


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one command; returns the exit code and the stdout text."""
    try:
        args = build_parser().parse_args(list(argv))
        if args.verbose:
            logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
        payload = args.func(args)
    except UsageError as exc:
        return EXIT_IO, _dump({"error": f"usage: {exc}"})
    except (ParseError, OSError) as exc:
        return EXIT_IO, _dump({"error": str(exc)})
    except ConvergenceError as exc:
        return EXIT_CONVERGENCE, _dump({"error": str(exc), "trace": exc.trace, "restarts": exc.restarts})
    except DomainError as exc:
        return EXIT_DOMAIN, _dump({"error": str(exc)})
    code = EXIT_DOMAIN if "error" in payload else EXIT_OK
    return code, _dump(payload)


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    if code != EXIT_OK:
        sys.stderr.write(json.loads(out)["error"] + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
