"""Ising partition functions, Bethe beliefs and the Z / Z_B = Theta check.

Spin index 0 stands for x = +1 and index 1 for x = -1 in every table.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError, GuardExceeded, PreconditionError
from .multigraph import DEFAULT_MAX_EDGES, Multigraph, check_guard, iter_subsets
from .theta import WeightedInstance, theta_weighted

SPINS = (1, -1)
MAX_SPIN_VERTICES = 24


@dataclass(frozen=True)
class IsingModel:
    host: Multigraph
    J: Mapping[int, float]
    h: Mapping[int, float]

    def __post_init__(self):
        values = list(self.J.values()) + list(self.h.values())
        if not all(math.isfinite(v) for v in values):
            raise DomainError("couplings and fields must be finite")

    @classmethod
    def zero_field(cls, host: Multigraph, J: Mapping[int, float]) -> "IsingModel":
        return cls(host, dict(J), {i: 0.0 for i in range(host.n_vertices)})

    def edge_factor(self, eid: int, xi: int, xj: int) -> float:
        return math.exp(self.J[eid] * xi * xj)

    def vertex_factor(self, i: int, x: int) -> float:
        return math.exp(self.h[i] * x)


def _spin_block(n: int, start: int, stop: int) -> np.ndarray:
    """Rows of +-1 spins for state indices start..stop-1 (bit i set means x_i = -1)."""
    idx = np.arange(start, stop, dtype=np.int64)[:, None]
    bits = (idx >> np.arange(n, dtype=np.int64)) & 1
    return 1 - 2 * bits


def log_partition_bruteforce(m: IsingModel, max_vertices: int = MAX_SPIN_VERTICES,
                             block: int = 1 << 16) -> float:
    """log Z by summing all 2^|V| spin states, block by block in the log domain."""
    g = m.host
    n = g.n_vertices
    if n > max_vertices:
        raise GuardExceeded(f"{n} vertices exceeds the spin-sum guard of {max_vertices}")
    us = np.array([e.u for e in g.edges], dtype=np.int64)
    vs = np.array([e.v for e in g.edges], dtype=np.int64)
    J = np.array([m.J[e.id] for e in g.edges], dtype=float)
    h = np.array([m.h[i] for i in range(n)], dtype=float)
    parts = []
    for start in range(0, 1 << n, block):
        x = _spin_block(n, start, min(start + block, 1 << n))
        energy = x @ h
        if len(J):
            energy = energy + (x[:, us] * x[:, vs]) @ J
        parts.append(logsumexp(energy))
    return float(logsumexp(parts))


def ising_partition_bruteforce(m: IsingModel, max_vertices: int = MAX_SPIN_VERTICES) -> float:
    return math.exp(log_partition_bruteforce(m, max_vertices))


# -- beliefs and the (beta, xi) -> (J, h) transform -----------------------


@dataclass
class BeliefSet:
    edge: dict[int, np.ndarray]  # eid -> 2x2 table b_e[x_u, x_v] (u <= v as stored on the edge)
    vertex: dict[int, np.ndarray]  # i -> length-2 table b_i[x_i]

    def max_residual(self, g: Multigraph) -> float:
        """Worst violation of normalization and marginal consistency."""
        worst = 0.0
        for e in g.edges:
            b = self.edge[e.id]
            worst = max(worst, abs(b.sum() - 1.0))
            worst = max(worst, float(np.abs(b.sum(axis=1) - self.vertex[e.u]).max()))
            worst = max(worst, float(np.abs(b.sum(axis=0) - self.vertex[e.v]).max()))
        for i, b in self.vertex.items():
            worst = max(worst, abs(b.sum() - 1.0))
        return worst


def edge_amplitudes(beta: float, xi_u: float, xi_v: float) -> np.ndarray:
    """a(x_u, x_v) = 1 + x_u x_v beta xi_u^-x_u xi_v^-x_v as a 2x2 table."""
    a = np.empty((2, 2))
    for r, xu in enumerate(SPINS):
        for c, xv in enumerate(SPINS):
            a[r, c] = 1 + xu * xv * beta * xi_u ** (-xu) * xi_v ** (-xv)
    return a


def _check_xi(xi: Mapping[int, float]) -> None:
    for i, x in xi.items():
        if not x > 0:
            raise DomainError(f"xi[{i}] = {x} must be positive")


def beliefs_from_parameters(g: Multigraph, beta: Mapping[int, float], xi: Mapping[int, float]) -> BeliefSet:
    """b_i(x) = xi^x / (xi + 1/xi),  b_e = (xi_u^x_u xi_v^x_v + beta_e x_u x_v) / norms."""
    _check_xi(xi)
    vertex = {}
    for i in range(g.n_vertices):
        x = xi[i]
        vertex[i] = np.array([x, 1 / x]) / (x + 1 / x)
    edge = {}
    for e in g.edges:
        xu, xv = xi[e.u], xi[e.v]
        b = np.empty((2, 2))
        for r, su in enumerate(SPINS):
            for c, sv in enumerate(SPINS):
                b[r, c] = xu**su * xv**sv + beta[e.id] * su * sv
        b /= (xu + 1 / xu) * (xv + 1 / xv)
        if not (b > 0).all():
            raise DomainError(f"belief on edge {e.id} has a nonpositive entry")
        edge[e.id] = b
    out = BeliefSet(edge, vertex)
    assert out.max_residual(g) < 1e-10
    return out


@dataclass
class TransformOutput:
    A: dict[int, float]
    B: dict[int, float]
    h_prime: dict[int, float]
    h_edge: dict[tuple[int, int], float]
    model: IsingModel

    @property
    def log_bethe(self) -> float:
        """log Z_B = sum log A_i + sum log B_e."""
        return sum(math.log(a) for a in self.A.values()) + sum(math.log(b) for b in self.B.values())


def transform_to_ising(g: Multigraph, beta: Mapping[int, float], xi: Mapping[int, float],
                       tol: float = 1e-10) -> TransformOutput:
    """Solve for A_i, h'_i, B_e, J_e, h_{e,i} so that the spin-sum form of Theta is
    prod A_i^-1 prod B_e^-1 times Ising Boltzmann weights.

    A loop has x_u = x_v, so its coupling is irrelevant: it is given J = 0 and
    a single field term h_{e,u} = (1/2) log(a(+)/a(-)).
    """
    _check_xi(xi)
    A = {i: xi[i] + 1 / xi[i] for i in range(g.n_vertices)}
    h_prime = {i: math.log(xi[i]) for i in range(g.n_vertices)}
    B: dict[int, float] = {}
    J: dict[int, float] = {}
    h_edge: dict[tuple[int, int], float] = {}
    for e in g.edges:
        a = edge_amplitudes(beta[e.id], xi[e.u], xi[e.v])
        if e.is_loop:
            diag = np.array([a[0, 0], a[1, 1]])
            if not (diag > 0).all():
                raise DomainError(f"edge {e.id}: a(x, x) must be positive")
            la = np.log(diag)
            J[e.id] = 0.0
            h_edge[e.id, e.u] = 0.5 * (la[0] - la[1])
            B[e.id] = math.exp(-0.5 * (la[0] + la[1]))
            continue
        if not (a > 0).all():
            raise DomainError(f"edge {e.id}: a(x_u, x_v) must be positive")
        la = np.log(a)
        J[e.id] = 0.25 * (la[0, 0] + la[1, 1] - la[0, 1] - la[1, 0])
        h_edge[e.id, e.u] = 0.25 * (la[0, 0] + la[0, 1] - la[1, 0] - la[1, 1])
        h_edge[e.id, e.v] = 0.25 * (la[0, 0] + la[1, 0] - la[0, 1] - la[1, 1])
        B[e.id] = math.exp(-0.25 * la.sum())
    h = dict(h_prime)
    for (eid, i), val in h_edge.items():
        h[i] += val
    out = TransformOutput(A, B, h_prime, h_edge, IsingModel(g, J, h))
    resid = transform_residual(g, beta, xi, out)
    if resid > tol:
        raise DomainError(f"transform reconstruction residual {resid:.3g} exceeds {tol:g}")
    return out


def transform_residual(g: Multigraph, beta, xi, t: TransformOutput) -> float:
    """Max relative error of both reconstruction identities over all spin values."""
    worst = 0.0
    for i in range(g.n_vertices):
        for x in SPINS:
            lhs = xi[i] ** x / (xi[i] + 1 / xi[i])
            rhs = math.exp(t.h_prime[i] * x) / t.A[i]
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    for e in g.edges:
        a = edge_amplitudes(beta[e.id], xi[e.u], xi[e.v])
        for r, xu in enumerate(SPINS):
            for c, xv in enumerate(SPINS):
                if e.is_loop and r != c:
                    continue
                field_term = t.h_edge[e.id, e.u] * xu
                if not e.is_loop:
                    field_term += t.h_edge[e.id, e.v] * xv
                rhs = math.exp(t.model.J[e.id] * xu * xv + field_term) / t.B[e.id]
                worst = max(worst, abs(a[r, c] - rhs) / abs(a[r, c]))
    return worst


@dataclass
class BetheRatioReport:
    z: float
    z_bethe: float
    ratio: float
    theta: float
    rel_error: float

    @property
    def log_ratio(self) -> float:
        return math.log(self.ratio)


def verify_bethe_ratio(g: Multigraph, beta: Mapping[int, float], xi: Mapping[int, float],
                       max_edges: int | None = DEFAULT_MAX_EDGES) -> BetheRatioReport:
    """Z by brute force on the transformed model, Z_B = prod A prod B, Theta by subset sum."""
    t = transform_to_ising(g, beta, xi)
    log_z = log_partition_bruteforce(t.model)
    log_zb = t.log_bethe
    ratio = math.exp(log_z - log_zb)
    w = WeightedInstance.from_xi(g, beta, xi)
    th = theta_weighted(w, max_edges).real
    rel = abs(ratio - th) / abs(th)
    return BetheRatioReport(math.exp(log_z), math.exp(log_zb), ratio, th, rel)


def random_parameters(g: Multigraph, rng: np.random.Generator, beta_scale: float = 0.5,
                      xi_range: tuple[float, float] = (0.5, 2.0), tries: int = 10):
    """Draw (beta, xi) inside the positivity domain, resampling up to ``tries`` times."""
    for _ in range(tries):
        xi = {i: float(rng.uniform(*xi_range)) for i in range(g.n_vertices)}
        beta = {e.id: float(rng.uniform(-beta_scale, beta_scale)) for e in g.edges}
        try:
            beliefs_from_parameters(g, beta, xi)
            transform_to_ising(g, beta, xi)
        except DomainError:
            continue
        return beta, xi
    raise DomainError(f"no admissible draw in {tries} attempts")


# -- belief propagation ---------------------------------------------------


@dataclass
class BPResult:
    beliefs: BeliefSet
    log_z_bethe: float
    converged: bool
    iterations: int
    residual: float
    warnings: list[str] = field(default_factory=list)


def run_belief_propagation(m: IsingModel, max_iters: int = 1000, damping: float = 0.5,
                           tol: float = 1e-12) -> BPResult:
    """Synchronous sum-product on the edges of a loop-free multigraph.

    Messages start uniform.  ``iterations`` counts sweeps including the one
    that found the sup-norm change below ``tol``.  Non-convergence is
    reported in the result, not raised.
    """
    if max_iters < 1 or not 0 <= damping < 1 or tol <= 0:
        raise PreconditionError("need max_iters >= 1, 0 <= damping < 1, tol > 0")
    g = m.host
    if any(e.is_loop for e in g.edges):
        raise PreconditionError("belief propagation here assumes a loop-free graph")
    n = g.n_vertices
    psi_v = {i: np.array([math.exp(m.h[i]), math.exp(-m.h[i])]) for i in range(n)}
    psi_e = {}
    for e in g.edges:
        J = m.J[e.id]
        psi_e[e.id] = np.array([[math.exp(J), math.exp(-J)], [math.exp(-J), math.exp(J)]])
    directed = [(e.id, e.u, e.v) for e in g.edges] + [(e.id, e.v, e.u) for e in g.edges]
    incoming: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for eid, src, dst in directed:
        incoming[dst].append((eid, src))
    msg = {(eid, src): np.full(2, 0.5) for eid, src, _ in directed}  # message along eid out of src

    def cavity(i, skip_eid):
        out = psi_v[i].copy()
        for eid, src in incoming[i]:
            if eid != skip_eid:
                out *= msg[eid, src]
        return out

    converged, delta, it = False, float("inf"), 0
    for it in range(1, max_iters + 1):
        new = {}
        for eid, src, dst in directed:
            pre = cavity(src, eid)
            out = pre @ psi_e[eid]  # symmetric in (x_src, x_dst)
            out /= out.sum()
            new[eid, src] = damping * msg[eid, src] + (1 - damping) * out
        delta = max(float(np.abs(new[k] - msg[k]).max()) for k in msg) if msg else 0.0
        msg = new
        if delta < tol:
            converged = True
            break
    vertex = {}
    for i in range(n):
        b = cavity(i, None)
        vertex[i] = b / b.sum()
    edge = {}
    for e in g.edges:
        b = psi_e[e.id] * np.outer(cavity(e.u, e.id), cavity(e.v, e.id))
        edge[e.id] = b / b.sum()
    beliefs = BeliefSet(edge, vertex)
    log_zb = bethe_log_partition(m, beliefs)
    notes = [] if converged else [f"no convergence after {it} sweeps; residual {delta:.3g}"]
    if notes:
        warnings.warn(notes[0], RuntimeWarning, stacklevel=2)
    return BPResult(beliefs, log_zb, converged, it, delta, notes)


def bethe_log_partition(m: IsingModel, b: BeliefSet) -> float:
    """log Z_B = sum_e <log psi_e> + sum_i <log psi_i> - sum_e H-terms + sum_i (d_i - 1) H-terms."""
    g = m.host
    deg = g.degrees()
    total = 0.0
    for e in g.edges:
        J = m.J[e.id]
        log_psi = np.array([[J, -J], [-J, J]])
        be = b.edge[e.id]
        total += float((be * log_psi).sum()) - float((be * np.log(be)).sum())
    for i in range(g.n_vertices):
        bi = b.vertex[i]
        total += float((bi * np.array([m.h[i], -m.h[i]])).sum())
        total += (deg[i] - 1) * float((bi * np.log(bi)).sum())
    return total


def parameters_from_beliefs(g: Multigraph, b: BeliefSet) -> tuple[dict[int, float], dict[int, float]]:
    """Invert the belief parameterization: xi_i = sqrt(b_i(+)/b_i(-)),
    beta_e = b_e(+,+)(xi_u + 1/xi_u)(xi_v + 1/xi_v) - xi_u xi_v."""
    xi = {i: math.sqrt(v[0] / v[1]) for i, v in b.vertex.items()}
    beta = {}
    for e in g.edges:
        xu, xv = xi[e.u], xi[e.v]
        beta[e.id] = b.edge[e.id][0, 0] * (xu + 1 / xu) * (xv + 1 / xv) - xu * xv
    return beta, xi


# -- edge-subset expansions of Z ------------------------------------------


def van_der_waerden(m: IsingModel, max_edges: int | None = DEFAULT_MAX_EDGES) -> float:
    """2^|V| prod cosh J_e * sum over even subgraphs of prod tanh J_e (needs h = 0)."""
    g = m.host
    if any(v != 0 for v in m.h.values()):
        raise PreconditionError("van der Waerden expansion needs zero fields")
    check_guard(g, max_edges)
    t = [math.tanh(m.J[e.id]) for e in g.edges]
    total = 0.0
    for mask, _, _ in iter_subsets(g, lambda d: d % 2 == 0):
        term = 1.0
        for pos, val in enumerate(t):
            if mask >> pos & 1:
                term *= val
        total += term
    pref = 2.0**g.n_vertices * math.prod(math.cosh(m.J[e.id]) for e in g.edges)
    return pref * total


def field_expansion(m: IsingModel, max_edges: int | None = DEFAULT_MAX_EDGES) -> float:
    """2^|V| prod cosh J_e sum_s prod tanh J_e prod_{even} cosh h_i prod_{odd} sinh h_i."""
    g = m.host
    check_guard(g, max_edges)
    t = [math.tanh(m.J[e.id]) for e in g.edges]
    ch = [math.cosh(m.h[i]) for i in range(g.n_vertices)]
    sh = [math.sinh(m.h[i]) for i in range(g.n_vertices)]
    total = 0.0
    for mask in range(1 << g.n_edges):
        deg = g.mask_degrees(mask)
        term = 1.0
        for pos, val in enumerate(t):
            if mask >> pos & 1:
                term *= val
        for i, d in enumerate(deg):
            term *= sh[i] if d % 2 else ch[i]
        total += term
    pref = 2.0**g.n_vertices * math.prod(math.cosh(m.J[e.id]) for e in g.edges)
    return pref * total


def van_der_waerden_check(m: IsingModel, rtol: float = 1e-10) -> bool:
    z = ising_partition_bruteforce(m)
    return abs(van_der_waerden(m) - z) <= rtol * abs(z)


def field_expansion_check(m: IsingModel, rtol: float = 1e-10) -> bool:
    z = ising_partition_bruteforce(m)
    return abs(field_expansion(m) - z) <= rtol * abs(z)
