"""Invariant suite over a corpus of graphs, producing a canonical report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .corpus import full_corpus
from .errors import GuardExceeded
from .matching import DEFAULT_MAX_VERTICES
from .multigraph import DEFAULT_MAX_EDGES, Multigraph, check_guard, complete
from .omega import (
    Route,
    check_coefficient_symmetry,
    check_nonnegativity,
    check_regular_identity,
    check_subdivision_law,
    omega,
    omega_at_one_identities,
    omega_determinant_sum,
    omega_specialize,
    omega_zeros,
    subcoregraph_count_expansion_beta2,
)
from .polynomial import Poly, poly_to_json
from .theta import Algorithm, check_gamma0_specialization, count_subcoregraphs, subcoregraph_bounds, theta

PASS, FAIL, SKIPPED = "pass", "fail", "skipped(guard)"

DET_SAMPLES = (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
REGULAR_SAMPLES = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 2), Fraction(2))
# subdivision multiplies |E| by m and deletion-contraction cost grows fast
SUBDIVISION_MAX_EDGES = 10


@dataclass
class CheckRecord:
    check_name: str
    graph_descriptor: str
    status: str
    residual_or_diff: float | str | None = None
    elapsed_ms: float | None = None
    reproducer: dict | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "check_name": self.check_name,
            "graph_descriptor": self.graph_descriptor,
            "status": self.status,
            "residual_or_diff": self.residual_or_diff,
        }
        if timings:
            out["elapsed_ms"] = self.elapsed_ms
        if self.reproducer is not None:
            out["reproducer"] = self.reproducer
        return out


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    def summary(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == FAIL]

    def to_json(self, timings: bool = False) -> dict:
        return {
            "summary": self.summary(),
            "records": [r.to_json(timings) for r in self.records],
        }


@dataclass
class Settings:
    max_edges: int | None = DEFAULT_MAX_EDGES
    max_vertices: int | None = DEFAULT_MAX_VERTICES


# A check returns (passed, residual_or_diff, extra reproducer params).
CheckFn = Callable[[Multigraph, Settings], tuple[bool, object, dict]]


@dataclass(frozen=True)
class Check:
    name: str
    run: CheckFn
    applies: Callable[[Multigraph], bool] = lambda g: True
    edge_limit: int | None = None


def _theta_agreement(g, s):
    results = {a.value: theta(g, a, max_edges=s.max_edges).polynomial for a in Algorithm}
    ref = results[Algorithm.DELETION_CONTRACTION.value]
    bad = sorted(k for k, p in results.items() if p != ref)
    return not bad, (", ".join(bad) or None), {}


def _omega_kwargs(route: Route, s: Settings) -> dict:
    if route is Route.DELETION_CONTRACTION:
        return {}
    if route is Route.MONOMER_DIMER:
        return {"max_vertices": s.max_vertices}
    return {"max_edges": s.max_edges}


def _omega_agreement(g, s):
    results = {r.value: omega(g, r, **_omega_kwargs(r, s)).polynomial for r in Route}
    ref = results[Route.DELETION_CONTRACTION.value]
    bad = sorted(k for k, p in results.items() if p != ref)
    return not bad, (", ".join(bad) or None), {}


def _tutte(g, s):
    return check_gamma0_specialization(g, max_edges=s.max_edges), None, {}


def _divisibility(g, s):
    # omega_specialize raises DivisibilityError on a nonzero remainder
    w = omega_specialize(g, s.max_edges).polynomial
    return w == omega(g).polynomial, None, {}


def _nonnegativity(g, s):
    return check_nonnegativity(g), None, {}


def _bounds(g, s):
    count = count_subcoregraphs(g, s.max_edges)
    lo, hi = subcoregraph_bounds(g.nullity)
    return lo <= count <= hi, f"{lo} <= {count} <= {hi}", {}


def _determinant(g, s):
    w = omega(g).polynomial
    bad = [str(u) for u in DET_SAMPLES if omega_determinant_sum(g, u, s.max_edges) != w.evaluate(u * u)]
    return not bad, (", ".join(bad) or None), {"u": [str(u) for u in DET_SAMPLES]}


def _is_regular(g):
    d = g.regular_degree()
    return d is not None and d >= 2


def _symmetry(g, s):
    w = omega(g).polynomial
    ok = check_coefficient_symmetry(g, w) and check_regular_identity(g, REGULAR_SAMPLES, w)
    return ok, None, {"u": [str(u) for u in REGULAR_SAMPLES]}


def _subdivision(g, s):
    return all(check_subdivision_law(g, m) for m in (2, 3)), None, {"m": [2, 3]}


def _beta_one(g, s):
    a = omega_at_one_identities(g, s.max_edges, s.max_vertices)
    b = subcoregraph_count_expansion_beta2(g, s.max_edges, s.max_vertices)
    values = {**a.values, **b.values}
    ok = a.ok and b.ok
    return ok, f"omega(1)={a.omega_at_one} {sorted(values.items())}" if not ok else None, {}


def _annulus_applies(g):
    deg = g.core().degrees()
    return bool(deg) and min(deg) >= 2


def _annulus(g, s):
    rep = omega_zeros(g)
    return rep.in_annulus, rep.max_residual, {"slack": rep.slack}


CHECKS: tuple[Check, ...] = (
    Check("theta_route_agreement", _theta_agreement),
    Check("omega_route_agreement", _omega_agreement),
    Check("tutte_specialization", _tutte),
    Check("divisibility", _divisibility),
    Check("nonnegativity", _nonnegativity),
    Check("subcoregraph_bounds", _bounds, lambda g: g.is_connected()),
    Check("determinant_identity", _determinant),
    Check("regular_symmetry", _symmetry, _is_regular),
    Check("subdivision_law", _subdivision, edge_limit=SUBDIVISION_MAX_EDGES),
    Check("beta_one_identities", _beta_one),
    Check("annulus", _annulus, _annulus_applies),
)


def _reproducer(g: Multigraph, params: dict) -> dict:
    return {"edge_list": g.to_edge_list(), "params": params}


def run_check(check: Check, name: str, g: Multigraph, s: Settings) -> CheckRecord:
    start = time.perf_counter()
    params: dict = {}
    try:
        check_guard(g, s.max_edges)
        if check.edge_limit is not None:
            check_guard(g, check.edge_limit)
        ok, resid, params = check.run(g, s)
        status = PASS if ok else FAIL
    except GuardExceeded as exc:
        ok, resid, status = True, str(exc), SKIPPED
    except ArithmeticError as exc:
        ok, resid, status = False, f"{type(exc).__name__}: {exc}", FAIL
    elapsed = (time.perf_counter() - start) * 1000
    rec = CheckRecord(check.name, name, status, resid, round(elapsed, 3))
    if status == FAIL:
        rec.reproducer = _reproducer(g, params)
    return rec


def self_test_record(s: Settings) -> CheckRecord:
    """A deliberately corrupted expectation: must come out as a failure."""
    g = complete(4)
    expected = Poly([1, 2, 3, 8, 17])  # true top coefficient is 16
    got = omega(g).polynomial
    start = time.perf_counter()
    ok = got == expected
    rec = CheckRecord("self_test_corrupted_expectation", "K4", PASS if ok else FAIL,
                      f"expected {expected}, got {got}",
                      round((time.perf_counter() - start) * 1000, 3))
    if not ok:
        rec.reproducer = _reproducer(g, {"expected": poly_to_json(expected)})
    return rec


def run_suite(graphs: Iterable[tuple[str, Multigraph]] | None = None, settings: Settings | None = None,
              checks: Iterable[Check] = CHECKS, self_test: bool = False, seed: int = 0,
              random_count: int = 200) -> VerificationReport:
    s = settings or Settings()
    graphs = list(graphs) if graphs is not None else full_corpus(seed, random_count)
    records = []
    for check in checks:
        for name, g in graphs:
            if check.applies(g):
                records.append(run_check(check, name, g, s))
    if self_test:
        records.append(self_test_record(s))
    records.sort(key=lambda r: (r.check_name, r.graph_descriptor))
    return VerificationReport(records)
