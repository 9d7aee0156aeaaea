"""The two-variable polynomial theta_G(beta, gamma) and its relatives.

Three independent exact algorithms compute theta:

* ``enum``  -- the sub-coregraph sum  sum_s beta^|s| prod_i f_{d_i(s)}(gamma),
* ``dc``    -- deletion-contraction down to disjoint bouquets,
* ``vexp``  -- the subset sum weighted by theta_{B_n}(1, gamma) per nullity-n
  component and beta^|s| (1-beta)^(|E|-|s|).

The weighted version Theta_G (per-edge beta_e, per-vertex gamma_i) is numeric.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import comb, prod
from typing import Mapping

from .errors import GuardExceeded, InputError, PreconditionError
from .multigraph import (
    DEFAULT_MAX_EDGES,
    Multigraph,
    check_guard,
    iter_subcoregraphs,
    mask_nullities,
)
from .polynomial import BiPoly, Poly, bouquet_theta_at_one, f_poly, f_values

BETA = BiPoly({(1, 0): 1})
ONE_MINUS_BETA = BiPoly({(0, 0): 1, (1, 0): -1})


class Algorithm(str, Enum):
    ENUMERATION = "enum"
    DELETION_CONTRACTION = "dc"
    VFUNCTION_EXPANSION = "vexp"


@dataclass(frozen=True)
class ThetaResult:
    polynomial: BiPoly
    algorithm: Algorithm
    graph_stats: tuple[int, int, int, int]  # |V|, |E|, k, nullity

    def only_even_gamma(self) -> bool:
        return all(j % 2 == 0 for _, j in self.polynomial.coeffs)


def _stats(g: Multigraph) -> tuple[int, int, int, int]:
    return (g.n_vertices, g.n_edges, g.k, g.nullity)


def _gamma_poly(p: Poly) -> BiPoly:
    return BiPoly({(0, k): v for k, v in p.coeffs.items()})


def bouquet_theta(n: int) -> BiPoly:
    """theta_{B_n} = sum_k C(n,k) f_{2k}(gamma) beta^k."""
    out = BiPoly()
    for k in range(n + 1):
        out = out + BiPoly({(k, j): comb(n, k) * c for j, c in f_poly(2 * k).coeffs.items()})
    return out


def theta_enumerate(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> ThetaResult:
    """Sum over sub-coregraphs; subsets with a closed degree-1 vertex are never visited."""
    tally: Counter = Counter()
    for _, size, deg in iter_subcoregraphs(g, max_edges):
        # f_0 = f_2 = 1, so only degrees >= 3 matter
        tally[size, tuple(sorted(d for d in deg if d > 2))] += 1
    coeffs: dict[tuple[int, int], int] = {}
    weights: dict[tuple, Poly] = {}
    for (size, big), count in tally.items():
        if big not in weights:
            weights[big] = prod((f_poly(d) for d in big), start=Poly(1))
        for j, c in weights[big].coeffs.items():
            coeffs[size, j] = coeffs.get((size, j), 0) + count * c
    return ThetaResult(BiPoly(coeffs), Algorithm.ENUMERATION, _stats(g))


def theta_deletion_contraction(g: Multigraph) -> ThetaResult:
    """theta_G = (1-beta) theta_{G\\e} + beta theta_{G/e} on the lowest-id non-loop edge."""
    memo: dict[tuple, BiPoly] = {}
    bouquets: dict[int, BiPoly] = {}

    def base(h: Multigraph) -> BiPoly:
        out = BiPoly(1)
        for loops in h.loops_at():
            if loops:
                if loops not in bouquets:
                    bouquets[loops] = bouquet_theta(loops)
                out = out * bouquets[loops]
        return out

    def rec(h: Multigraph) -> BiPoly:
        key = h.encode()
        if key in memo:
            return memo[key]
        pivots = [e.id for e in h.edges if not e.is_loop]
        if not pivots:
            val = base(h)
        else:
            e = min(pivots)
            val = ONE_MINUS_BETA * rec(h.delete_edge(e)) + BETA * rec(h.contract_edge(e))
        memo[key] = val
        return val

    return ThetaResult(rec(g), Algorithm.DELETION_CONTRACTION, _stats(g))


def nullity_tally(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> Counter:
    """Counter over all subsets s of (|s|, sorted ((nullity, i_n(s)), ...))."""
    check_guard(g, max_edges)
    tally: Counter = Counter()
    for mask in range(1 << g.n_edges):
        profile = tuple(sorted(Counter(mask_nullities(g, mask)).items()))
        tally[mask.bit_count(), profile] += 1
    return tally


def theta_vfunction_expansion(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> ThetaResult:
    m = g.n_edges
    bouquet_vals: dict[int, Poly] = {}
    out = BiPoly()
    for (size, profile), count in nullity_tally(g, max_edges).items():
        weight = Poly(count)
        for n, i_n in profile:
            if n not in bouquet_vals:
                bouquet_vals[n] = bouquet_theta_at_one(n)
            weight = weight * bouquet_vals[n] ** i_n
        out = out + _gamma_poly(weight) * BETA**size * ONE_MINUS_BETA ** (m - size)
    return ThetaResult(out, Algorithm.VFUNCTION_EXPANSION, _stats(g))


_ALGORITHMS = {
    Algorithm.ENUMERATION: theta_enumerate,
    Algorithm.DELETION_CONTRACTION: lambda g, max_edges=None: theta_deletion_contraction(g),
    Algorithm.VFUNCTION_EXPANSION: theta_vfunction_expansion,
}


def theta(g: Multigraph, algorithm: str | Algorithm = Algorithm.ENUMERATION,
          max_edges: int | None = DEFAULT_MAX_EDGES) -> ThetaResult:
    return _ALGORITHMS[Algorithm(algorithm)](g, max_edges=max_edges)


# -- weighted Theta -------------------------------------------------------


@dataclass(frozen=True)
class WeightedInstance:
    """Per-edge beta_e and per-vertex gamma_i; optionally xi_i with gamma_i = xi_i - 1/xi_i."""

    host: Multigraph
    beta: Mapping[int, complex]
    gamma: Mapping[int, complex]
    xi: Mapping[int, complex] | None = field(default=None)

    def __post_init__(self):
        if set(self.beta) != set(self.host.edge_ids):
            raise InputError("beta must give a weight for every edge id")
        if set(self.gamma) != set(range(self.host.n_vertices)):
            raise InputError("gamma must give a weight for every vertex")
        if self.xi is not None:
            for i, x in self.xi.items():
                if abs(self.gamma[i] - (x - 1 / x)) > 1e-12:
                    raise InputError(f"gamma[{i}] disagrees with xi[{i}]")

    @classmethod
    def from_xi(cls, host: Multigraph, beta: Mapping[int, complex], xi: Mapping[int, complex]):
        if any(x == 0 for x in xi.values()):
            raise InputError("xi must be nonzero")
        return cls(host, dict(beta), {i: x - 1 / x for i, x in xi.items()}, dict(xi))

    @classmethod
    def uniform(cls, host: Multigraph, beta: complex, gamma: complex):
        return cls(host, {e: beta for e in host.edge_ids},
                   {i: gamma for i in range(host.n_vertices)})


def theta_weighted(w: WeightedInstance, max_edges: int | None = DEFAULT_MAX_EDGES) -> complex:
    g = w.host
    fvals = [f_values(w.gamma[i], max(d, 1)) for i, d in enumerate(g.degrees())]
    betas = [w.beta[e.id] for e in g.edges]
    total = 0
    for mask, _, deg in iter_subcoregraphs(g, max_edges):
        term = 1
        pos = 0
        while mask:
            if mask & 1:
                term *= betas[pos]
            mask >>= 1
            pos += 1
        for i, d in enumerate(deg):
            if d > 2:
                term *= fvals[i][d]
        total += term
    return complex(total)


def theta_weighted_vertex_sum(w: WeightedInstance, max_vertices: int = 22) -> complex:
    """Spin-sum form: sum over x in {+1,-1}^V of prod_e (1 + x_i x_j beta_e xi_i^-x_i xi_j^-x_j)
    times prod_i xi_i^x_i / (xi_i + 1/xi_i)."""
    if w.xi is None:
        raise InputError("the vertex-sum form needs xi")
    g = w.host
    n = g.n_vertices
    if n > max_vertices:
        raise GuardExceeded(f"{n} vertices exceeds the spin-sum guard of {max_vertices}")
    xi = [complex(w.xi[i]) for i in range(n)]
    for i, x in enumerate(xi):
        if x == 0 or x + 1 / x == 0:
            raise InputError(f"degenerate xi at vertex {i}")
    norm = prod(x + 1 / x for x in xi)
    total = 0
    for spins in itertools.product((1, -1), repeat=n):
        term = 1
        for e in g.edges:
            si, sj = spins[e.u], spins[e.v]
            term *= 1 + si * sj * w.beta[e.id] * xi[e.u] ** -si * xi[e.v] ** -sj
        for i, s in enumerate(spins):
            term *= xi[i] ** s
        total += term
    return complex(total / norm)


def theta_weighted_expansion(w: WeightedInstance, max_edges: int | None = DEFAULT_MAX_EDGES) -> complex:
    """Subset expansion with prod_n theta_{B_n}(1,gamma)^{i_n(s)} prod_s beta_e prod_rest (1-beta_e).

    Valid for a common vertex weight gamma only.
    """
    g = w.host
    gammas = set(w.gamma.values())
    if len(gammas) > 1:
        raise PreconditionError("the expansion needs equal vertex weights")
    gamma = gammas.pop() if gammas else 0
    check_guard(g, max_edges)
    betas = [w.beta[e.id] for e in g.edges]
    bvals: dict[int, complex] = {}
    total = 0
    for mask in range(1 << g.n_edges):
        term = 1
        for n in mask_nullities(g, mask):
            if n not in bvals:
                bvals[n] = bouquet_theta_at_one(n).evaluate(gamma)
            term *= bvals[n]
        for pos, b in enumerate(betas):
            term *= b if mask >> pos & 1 else 1 - b
        total += term
    return complex(total)


def contract_weights(w: WeightedInstance, eid: int) -> WeightedInstance:
    """Weights induced on G/e; the merged vertex keeps gamma of the endpoints (which must agree)."""
    g = w.host
    e = g.edge(eid)
    if not e.is_loop and w.gamma[e.u] != w.gamma[e.v]:
        raise PreconditionError("contraction needs equal gamma at both endpoints")
    relabel = g.contraction_map(eid)
    h = g.contract_edge(eid)
    gamma = {relabel[i]: w.gamma[i] for i in range(g.n_vertices)}
    beta = {k: v for k, v in w.beta.items() if k != eid}
    return WeightedInstance(h, beta, gamma)


def delete_weights(w: WeightedInstance, eid: int) -> WeightedInstance:
    beta = {k: v for k, v in w.beta.items() if k != eid}
    return WeightedInstance(w.host.delete_edge(eid), beta, dict(w.gamma))


# -- Tutte, random cluster, gamma = 0 ------------------------------------


def tutte(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> BiPoly:
    """T_G(x, y) = sum_s (x-1)^{r(G)-r(s)} (y-1)^{n(s)}."""
    check_guard(g, max_edges)
    n_v, k_g = g.n_vertices, g.k
    tally: Counter = Counter()
    for mask in range(1 << g.n_edges):
        k_s = len(mask_nullities(g, mask))
        tally[k_s, mask.bit_count()] += 1
    names = ("x", "y")
    xm1 = BiPoly({(1, 0): 1, (0, 0): -1}, names)
    ym1 = BiPoly({(0, 1): 1, (0, 0): -1}, names)
    out = BiPoly((), names)
    for (k_s, size), count in tally.items():
        out = out + count * xm1 ** (k_s - k_g) * ym1 ** (size - n_v + k_s)
    return out


def check_gamma0_specialization(g: Multigraph, theta_poly: BiPoly | None = None,
                                max_edges: int | None = DEFAULT_MAX_EDGES) -> bool:
    """theta_G(beta, 0) == (1-beta)^n beta^r T_G(1/beta, (1+beta)/(1-beta)), denominators cleared.

    x^a y^b turns into beta^(r-a) (1+beta)^b (1-beta)^(n-b); the Tutte
    degrees never exceed r and n, so every exponent is non-negative.
    """
    if theta_poly is None:
        theta_poly = theta_enumerate(g, max_edges).polynomial
    lhs = theta_poly.substitute_second(0)
    r, n = g.rank, g.nullity
    beta, one_plus, one_minus = Poly.x(), Poly([1, 1]), Poly([1, -1])
    rhs = Poly()
    for (a, b), c in tutte(g, max_edges).coeffs.items():
        rhs = rhs + c * beta ** (r - a) * one_plus**b * one_minus ** (n - b)
    return lhs == rhs


def random_cluster(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> BiPoly:
    """R_G(beta, kappa) = sum_s kappa^{k(s)} beta^|s| (1-beta)^{|E|-|s|}."""
    check_guard(g, max_edges)
    names = ("beta", "kappa")
    tally: Counter = Counter()
    for mask in range(1 << g.n_edges):
        tally[len(mask_nullities(g, mask)), mask.bit_count()] += 1
    beta = BiPoly({(1, 0): 1}, names)
    one_minus = BiPoly({(0, 0): 1, (1, 0): -1}, names)
    out = BiPoly((), names)
    for (k_s, size), count in tally.items():
        out = out + BiPoly({(0, k_s): count}, names) * beta**size * one_minus ** (g.n_edges - size)
    return out


# -- beta = 1 and sub-coregraph counts -----------------------------------


def theta_special_beta1(g: Multigraph, xi):
    """theta_G(1, xi - 1/xi) = xi^(1-n) (xi + 1/xi)^(n-1) + xi^(n-1) (xi + 1/xi)^(n-1), n = n(G).

    ``xi`` may be any number type closed under division (Fraction, float, sympy).
    """
    if not g.is_connected():
        raise InputError("closed form needs a connected graph; split into components first")
    n = g.nullity
    s = xi + 1 / xi
    return xi ** (1 - n) * s ** (n - 1) + xi ** (n - 1) * s ** (n - 1)


def theta_beta1_coefficients(n: int) -> list[int]:
    """C_{n,l}, l = 0..n-1: coefficients of gamma^(2l) in theta_G(1, gamma) for nullity n."""
    if n < 1:
        raise InputError("nullity must be >= 1")
    out = [2**n]
    for l in range(1, n):
        out.append(sum(comb(n, k) * comb(k + l - 1, 2 * l) for k in range(l + 1, n + 1)))
    return out


def subcoregraphs(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> list[frozenset[int]]:
    return [g.mask_to_ids(mask) for mask, _, _ in iter_subcoregraphs(g, max_edges)]


def count_subcoregraphs(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> int:
    return sum(1 for _ in iter_subcoregraphs(g, max_edges))


def subcoregraph_bounds(n: int) -> tuple[int, int]:
    """Exact (2^n, ((5-sqrt5)/2)^(n-1) + ((5+sqrt5)/2)^(n-1)).

    The upper value a_m, m = n-1, obeys a_m = 5 a_{m-1} - 5 a_{m-2} with
    a_{-1} = 1, a_0 = 2 (the two bases are the roots of t^2 - 5t + 5).
    """
    if n < 0:
        raise InputError("nullity must be >= 0")
    prev, cur = 1, 2  # a_{-1}, a_0
    if n == 0:
        return 1, 1
    for _ in range(n - 1):
        prev, cur = cur, 5 * cur - 5 * prev
    return 2**n, cur


def count_by_degree3_vertices(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> dict[int, int]:
    """l -> number of sub-coregraphs with exactly 2l vertices of degree 3."""
    if not g.is_connected() or g.is_forest():
        raise PreconditionError("needs a connected graph that is not a tree")
    if any(d > 3 for d in g.core().degrees()):
        raise PreconditionError("every core vertex must have degree <= 3")
    out: Counter = Counter()
    for _, _, deg in iter_subcoregraphs(g, max_edges):
        out[deg.count(3) // 2] += 1
    return dict(sorted(out.items()))
