"""Command-line front end.  Every command writes JSON.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import full_corpus
from .errors import DomainError, GuardExceeded, InputError
from .ising import random_parameters, verify_bethe_ratio
from .matching import DEFAULT_MAX_VERTICES, matching_polynomial
from .multigraph import DEFAULT_MAX_EDGES, Multigraph, from_edge_list
from .omega import Route, omega, omega_zeros
from .polynomial import poly_to_json
from .theta import Algorithm, count_by_degree3_vertices, count_subcoregraphs, subcoregraph_bounds, theta, tutte
from .verify import Settings, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    graph_path: str | None = None
    algorithm: str = Algorithm.DELETION_CONTRACTION.value
    route: str = Route.DELETION_CONTRACTION.value
    max_edges: int = DEFAULT_MAX_EDGES
    max_vertices: int = DEFAULT_MAX_VERTICES
    seed: int = 0
    draws: int = 10
    tol: float = 1e-8
    beta_scale: float = 0.5
    random_count: int = 200
    self_test: bool = False
    timings: bool = False
    output: str | None = None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", dest="graph_path", help="edge-list file ('N M' header, then 'u v' lines)")
    common.add_argument("--max-edges", type=_positive, default=DEFAULT_MAX_EDGES)
    common.add_argument("--max-vertices", type=_positive, default=DEFAULT_MAX_VERTICES)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("--json", action="store_true", help="accepted for scripts; output is always JSON")

    p = argparse.ArgumentParser(prog="graphpoly", description="Exact graph polynomials and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute a polynomial")
    c.add_argument("target", choices=["theta", "omega", "tutte", "matching"])
    c.add_argument("--algorithm", choices=[a.value for a in Algorithm], default=Algorithm.DELETION_CONTRACTION.value)
    c.add_argument("--route", choices=[r.value for r in Route], default=Route.DELETION_CONTRACTION.value)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--random-count", type=int, default=200)
    v.add_argument("--self-test", action="store_true", help="add a check with a corrupted expectation")
    v.add_argument("--timings", action="store_true", help="include elapsed_ms (output no longer deterministic)")

    sub.add_parser("zeros", parents=[common], help="zeros of omega and the annulus check")

    n = sub.add_parser("count", parents=[common], help="sub-coregraph counts")
    n.add_argument("target", choices=["subcoregraphs", "by-degree3"])

    b = sub.add_parser("bethe", parents=[common], help="Bethe ratio over random parameter draws")
    b.add_argument("--draws", type=_positive, default=10)
    b.add_argument("--tol", type=float, default=1e-8)
    b.add_argument("--beta-scale", type=float, default=0.5, help="beta drawn uniformly from [-s, s]")

    r = sub.add_parser("corpus", parents=[common], help="dump the built-in corpus as edge lists")
    r.add_argument("--random-count", type=int, default=200)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def load_graph(path: str | None) -> Multigraph:
    if path is None:
        raise InputError("--graph is required")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return from_edge_list(text)


def _graph_info(g: Multigraph) -> dict:
    return {"vertices": g.n_vertices, "edges": g.n_edges, "components": g.k, "nullity": g.nullity}


def cmd_compute(cfg: RunConfig) -> tuple[dict, int]:
    g = load_graph(cfg.graph_path)
    out: dict = {"command": "compute", "target": cfg.target, "graph": _graph_info(g)}
    if cfg.target == "theta":
        res = theta(g, cfg.algorithm, max_edges=cfg.max_edges)
        out["algorithm"] = cfg.algorithm
        out["polynomial"] = poly_to_json(res.polynomial)
    elif cfg.target == "omega":
        route = Route(cfg.route)
        if route is Route.MONOMER_DIMER:
            res = omega(g, route, max_vertices=cfg.max_vertices)
        elif route is Route.DELETION_CONTRACTION:
            res = omega(g, route)
        else:
            res = omega(g, route, max_edges=cfg.max_edges)
        out["route"] = cfg.route
        out["polynomial"] = poly_to_json(res.polynomial)
    elif cfg.target == "tutte":
        out["polynomial"] = poly_to_json(tutte(g, cfg.max_edges))
    else:
        out["polynomial"] = poly_to_json(matching_polynomial(g, cfg.max_vertices), ("x",))
    return out, EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    graphs = full_corpus(cfg.seed, cfg.random_count)
    if cfg.graph_path is not None:
        graphs.append((f"user:{Path(cfg.graph_path).name}", load_graph(cfg.graph_path)))
    report = run_suite(graphs, Settings(cfg.max_edges, cfg.max_vertices), self_test=cfg.self_test)
    out = {"command": "verify", "seed": cfg.seed, **report.to_json(cfg.timings)}
    return out, EXIT_OK if report.ok else EXIT_FAIL


def cmd_zeros(cfg: RunConfig) -> tuple[dict, int]:
    g = load_graph(cfg.graph_path)
    rep = omega_zeros(g)
    out = {"command": "zeros", "graph": _graph_info(g), **rep.to_json()}
    return out, EXIT_OK if rep.in_annulus else EXIT_FAIL


def cmd_count(cfg: RunConfig) -> tuple[dict, int]:
    g = load_graph(cfg.graph_path)
    out: dict = {"command": "count", "target": cfg.target, "graph": _graph_info(g)}
    if cfg.target == "subcoregraphs":
        out["count"] = count_subcoregraphs(g, cfg.max_edges)
        if g.is_connected():
            lo, hi = subcoregraph_bounds(g.nullity)
            out["bounds"] = {"lower": lo, "upper": hi}
    else:
        out["by_degree3"] = {str(l): c for l, c in count_by_degree3_vertices(g, cfg.max_edges).items()}
    return out, EXIT_OK


def cmd_bethe(cfg: RunConfig) -> tuple[dict, int]:
    g = load_graph(cfg.graph_path)
    rng = np.random.default_rng(cfg.seed)
    max_rel = None  # stays None when every draw fails the domain check
    failures = []
    for draw in range(cfg.draws):
        try:
            beta, xi = random_parameters(g, rng, beta_scale=cfg.beta_scale, tries=10)
        except DomainError as exc:
            failures.append({"draw": draw, "reason": "domain", "message": str(exc)})
            continue
        rep = verify_bethe_ratio(g, beta, xi, cfg.max_edges)
        max_rel = rep.rel_error if max_rel is None else max(max_rel, rep.rel_error)
        if not rep.rel_error < cfg.tol:
            failures.append({"draw": draw, "reason": "tolerance", "rel_error": rep.rel_error,
                             "beta": [beta[e] for e in sorted(beta)], "xi": [xi[i] for i in sorted(xi)]})
    out = {"command": "bethe", "graph": _graph_info(g), "seed": cfg.seed, "draws": cfg.draws,
           "tol": cfg.tol, "max_rel_error": max_rel, "failures": failures}
    tolerance_failed = any(f["reason"] == "tolerance" for f in failures)
    return out, EXIT_FAIL if tolerance_failed else EXIT_OK


def cmd_corpus(cfg: RunConfig) -> tuple[dict, int]:
    graphs = full_corpus(cfg.seed, cfg.random_count)
    return {"command": "corpus", "seed": cfg.seed,
            "graphs": [{"name": n, "edge_list": g.to_edge_list()} for n, g in graphs]}, EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "zeros": cmd_zeros,
    "count": cmd_count,
    "bethe": cmd_bethe,
    "corpus": cmd_corpus,
}


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    try:
        payload, code = COMMANDS[cfg.command](cfg)
    except GuardExceeded as exc:
        print(f"graphpoly: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InputError as exc:
        print(f"graphpoly: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, cfg.output)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
