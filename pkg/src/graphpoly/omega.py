"""The one-variable polynomial omega_G(beta) = theta_G(beta, 2i) / (1-beta)^(|E|-|V|).

Five independent routes produce it:

``spec``  real form of theta at gamma = 2i, then exact division,
``vexp``  subset sum with h_0 = 1-beta, h_1 = 2, h_n = 0 (n >= 2),
``dc``    omega_G = omega_{G\\e} + beta omega_{G/e}, bouquets 1 + (2n-1) beta,
``md``    monomer-dimer sum with mu = -beta, lambda_i = 1 + (d_i - 1) beta,
``det``   sum over cycle unions of determinants of I - uA + u^2 (D - I).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import InputError, NumericError, PreconditionError
from .linalg import bareiss_det, fraction_det
from .matching import (
    DEFAULT_MAX_VERTICES,
    count_matchings_covering,
    iter_matchings,
    matching_polynomial,
    monomer_dimer,
)
from .multigraph import (
    DEFAULT_MAX_EDGES,
    Multigraph,
    check_guard,
    iter_cycle_unions,
    iter_subsets,
    mask_nullities,
)
from .polynomial import ONE_MINUS_X, Poly, divide_exact

BETA = Poly.x()


class Route(str, Enum):
    SPECIALIZATION = "spec"
    VEXPANSION = "vexp"
    DELETION_CONTRACTION = "dc"
    MONOMER_DIMER = "md"
    DETERMINANT_SUM = "det"


@dataclass(frozen=True)
class OmegaResult:
    polynomial: Poly
    route: Route


def theta_at_2i(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> Poly:
    """theta_G(beta, 2i) = sum_s (-beta)^|s| prod_i (1 - d_i(s)), an integer polynomial."""
    check_guard(g, max_edges)
    coeffs: dict[int, int] = {}
    for _, size, deg in iter_subsets(g, lambda d: d != 1):
        term = 1
        for d in deg:
            term *= 1 - d
        coeffs[size] = coeffs.get(size, 0) + (-1) ** size * term
    return Poly(coeffs)


def omega_specialize(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> OmegaResult:
    """Divide theta(beta, 2i) by (1-beta)^(|E|-|V|); DivisibilityError if that fails."""
    p = theta_at_2i(g, max_edges)
    excess = g.n_edges - g.n_vertices
    if excess >= 0:
        p = divide_exact(p, ONE_MINUS_X**excess)
    else:
        p = p * ONE_MINUS_X ** (-excess)
    return OmegaResult(p, Route.SPECIALIZATION)


def omega_vexpansion(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> OmegaResult:
    check_guard(g, max_edges)
    tally: Counter = Counter()
    for mask in range(1 << g.n_edges):
        nul = mask_nullities(g, mask)
        if max(nul, default=0) > 1:
            continue
        ones = sum(nul)
        tally[mask.bit_count(), len(nul) - ones, ones] += 1
    out = Poly()
    for (size, trees, unicyclic), count in tally.items():
        out = out + count * 2**unicyclic * BETA**size * ONE_MINUS_X**trees
    return OmegaResult(out, Route.VEXPANSION)


def bouquet_omega(n: int) -> Poly:
    return Poly({0: 1, 1: 2 * n - 1})


def omega_deletion_contraction(g: Multigraph) -> OmegaResult:
    memo: dict[tuple, Poly] = {}

    def rec(h: Multigraph) -> Poly:
        key = h.encode()
        if key in memo:
            return memo[key]
        pivots = [e.id for e in h.edges if not e.is_loop]
        if not pivots:
            val = Poly(1)
            for loops in h.loops_at():
                val = val * bouquet_omega(loops)
        else:
            e = min(pivots)
            val = rec(h.delete_edge(e)) + BETA * rec(h.contract_edge(e))
        memo[key] = val
        return val

    return OmegaResult(rec(g), Route.DELETION_CONTRACTION)


def omega_weights(g: Multigraph) -> tuple[dict[int, Poly], dict[int, Poly]]:
    """mu_e = -beta and lambda_i = 1 + (d_i - 1) beta."""
    mu = {eid: -BETA for eid in g.edge_ids}
    lam = {i: Poly({0: 1, 1: d - 1}) for i, d in enumerate(g.degrees())}
    return mu, lam


def omega_via_monomer_dimer(g: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> OmegaResult:
    mu, lam = omega_weights(g)
    return OmegaResult(Poly._coerce(monomer_dimer(g, mu, lam, max_vertices)), Route.MONOMER_DIMER)


# -- determinant sum ------------------------------------------------------


def cycle_union_terms(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES):
    """Yield (|C|, k(C), vertices outside V_C) for every union of vertex-disjoint cycles C.

    The empty union is included.
    """
    for mask, size, deg in iter_cycle_unions(g, max_edges):
        on_cycle = [i for i, d in enumerate(deg) if d]
        # (V_C, C) is 2-regular: each component is one cycle, of nullity 1
        k = sum(1 for n in mask_nullities(g, mask) if n == 1)
        rest = [i for i in range(g.n_vertices) if not deg[i]]
        yield size, k, rest, on_cycle


def ihara_matrix(g: Multigraph, u):
    """I - u A + u^2 (D - I) with A, D counting parallel edges and loops (a loop adds 2)."""
    a = g.adjacency_matrix()
    deg = g.degrees()
    n = g.n_vertices
    one = u**0
    return [
        [(one if i == j else 0 * one) - u * a[i][j] + (u * u * (deg[i] - 1) if i == j else 0 * one)
         for j in range(n)]
        for i in range(n)
    ]


def _minor(matrix, keep):
    return [[matrix[i][j] for j in keep] for i in keep]


def omega_determinant_sum(g: Multigraph, u, max_edges: int | None = DEFAULT_MAX_EDGES) -> Fraction:
    """sum_C 2^k(C) det([I - uA + u^2(D-I)] restricted to G minus C) u^|C|, exactly at rational u.

    The value equals omega_G(u^2).
    """
    u = Fraction(u)
    m = ihara_matrix(g, u)
    total = Fraction(0)
    for size, k, rest, _ in cycle_union_terms(g, max_edges):
        total += 2**k * fraction_det(_minor(m, rest)) * u**size
    return total


def omega_via_determinants(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> OmegaResult:
    """The determinant sum with symbolic u (Bareiss over Z[u]), read back as omega(beta = u^2)."""
    u = Poly.x()
    m = ihara_matrix(g, u)
    total = Poly()
    for size, k, rest, _ in cycle_union_terms(g, max_edges):
        total = total + 2**k * Poly._coerce(bareiss_det(_minor(m, rest), Poly(1))) * u**size
    coeffs = total.coeffs
    if any(e % 2 for e in coeffs):
        raise NumericError(f"determinant sum has odd powers of u: {total}")
    return OmegaResult(Poly({e // 2: c for e, c in coeffs.items()}), Route.DETERMINANT_SUM)


_ROUTES = {
    Route.SPECIALIZATION: lambda g, **kw: omega_specialize(g, kw.get("max_edges", DEFAULT_MAX_EDGES)),
    Route.VEXPANSION: lambda g, **kw: omega_vexpansion(g, kw.get("max_edges", DEFAULT_MAX_EDGES)),
    Route.DELETION_CONTRACTION: lambda g, **kw: omega_deletion_contraction(g),
    Route.MONOMER_DIMER: lambda g, **kw: omega_via_monomer_dimer(g, kw.get("max_vertices", DEFAULT_MAX_VERTICES)),
    Route.DETERMINANT_SUM: lambda g, **kw: omega_via_determinants(g, kw.get("max_edges", DEFAULT_MAX_EDGES)),
}


def omega(g: Multigraph, route: str | Route = Route.DELETION_CONTRACTION, **guards) -> OmegaResult:
    return _ROUTES[Route(route)](g, **guards)


# -- laws and checks ------------------------------------------------------


def _regular_q(g: Multigraph) -> int:
    d = g.regular_degree()
    if d is None or d < 2:
        raise PreconditionError("needs a (q+1)-regular graph with q >= 1")
    return d - 1


def check_regular_identity(g: Multigraph, samples, omega_poly: Poly | None = None) -> bool:
    """omega_G(u^2) == alpha_G(1/u + q u) u^|V| at every exact sample u != 0."""
    q = _regular_q(g)
    w = omega_poly if omega_poly is not None else omega(g).polynomial
    alpha = matching_polynomial(g)
    for u in samples:
        u = Fraction(u)
        if u == 0:
            raise InputError("sample u must be nonzero")
        if w.evaluate(u * u) != alpha.evaluate(1 / u + q * u) * u**g.n_vertices:
            return False
    return True


def check_coefficient_symmetry(g: Multigraph, omega_poly: Poly | None = None) -> bool:
    """w_{N-k} == w_k q^(N-2k) for a (q+1)-regular graph on N vertices."""
    q = _regular_q(g)
    w = omega_poly if omega_poly is not None else omega(g).polynomial
    n = g.n_vertices
    return all(w[n - k] == w[k] * q ** (n - 2 * k) for k in range(n // 2 + 1))


def check_degree_law(g: Multigraph, omega_poly: Poly | None = None) -> bool:
    """Constant term 1, degree |V_core| and leading coefficient prod (d_i - 1) over the core."""
    w = omega_poly if omega_poly is not None else omega(g).polynomial
    core = g.core()
    lead = 1
    for d in core.degrees():
        lead *= d - 1
    return w[0] == 1 and w.degree == core.n_vertices and w.leading() == lead


def check_nonnegativity(g: Multigraph, omega_poly: Poly | None = None) -> bool:
    """True unless some component has positive nullity everywhere and a coefficient is negative.

    Graphs with a nullity-0 component are exempt and return True.
    """
    if any(c.nullity == 0 for c in g.components()):
        return True
    w = omega_poly if omega_poly is not None else omega(g).polynomial
    return all(c >= 0 for c in w.coeffs.values())


def check_subdivision_law(g: Multigraph, m: int) -> bool:
    """omega_{G^(m)}(beta) == (1 + ... + beta^(m-1))^(|E|-|V|) omega_G(beta^m)."""
    lhs = omega(g.subdivide(m)).polynomial
    rhs = omega(g).polynomial.compose_power(m)
    geo = Poly([1] * m)
    excess = g.n_edges - g.n_vertices
    if excess >= 0:
        return lhs == geo**excess * rhs
    return lhs * geo ** (-excess) == rhs


@dataclass
class ZerosReport:
    roots: list[complex]
    d_min: int
    d_max: int
    inner_radius: float
    outer_radius: float
    max_residual: float
    in_annulus: bool
    slack: float = field(default=1e-8)

    def to_json(self) -> dict:
        return {
            "roots": [{"re": z.real, "im": z.imag} for z in self.roots],
            "d_min": self.d_min,
            "d_max": self.d_max,
            "annulus": [self.inner_radius, self.outer_radius],
            "in_annulus": self.in_annulus,
            "max_residual": self.max_residual,
        }


def polynomial_roots(p: Poly, tol: float = 1e-9, polish_steps: int = 3) -> tuple[list[complex], float]:
    """Companion-matrix eigenvalues (LAPACK balances the matrix), then Newton polishing.

    Returns the roots sorted by modulus then argument, and the worst scaled
    residual |p(z)| / sum |c_k| |z|^k.
    """
    coeffs = p.coefficient_list()
    if len(coeffs) < 2:
        return [], 0.0
    desc = np.array(coeffs[::-1], dtype=float)
    roots = np.roots(desc).astype(complex)
    dp = np.polyder(desc)
    for _ in range(polish_steps):
        val = np.polyval(desc, roots)
        der = np.polyval(dp, roots)
        step = np.where(der != 0, val / np.where(der != 0, der, 1), 0)
        candidate = roots - step
        # keep a step only if it does not increase the residual
        better = np.abs(np.polyval(desc, candidate)) <= np.abs(val)
        roots = np.where(better, candidate, roots)
    scale = np.polyval(np.abs(desc), np.abs(roots))
    resid = np.abs(np.polyval(desc, roots)) / scale
    worst = float(resid.max()) if len(resid) else 0.0
    if worst > tol:
        raise NumericError(f"root refinement did not converge: residual {worst:.3g} > {tol:g}")
    ordered = sorted((complex(z) for z in roots), key=lambda z: (round(abs(z), 12), np.angle(z)))
    return ordered, worst


def omega_zeros(g: Multigraph, slack: float = 1e-8, omega_poly: Poly | None = None) -> ZerosReport:
    """All complex zeros of omega_G and the annulus 1/(d_max-1) <= |beta| <= 1/(d_min-1)."""
    core = g.core()
    deg = core.degrees()
    if not deg or min(deg) < 2:
        raise PreconditionError("core must be nonempty with minimum degree >= 2")
    w = omega_poly if omega_poly is not None else omega(g).polynomial
    roots, resid = polynomial_roots(w)
    d_min, d_max = min(deg), max(deg)
    inner, outer = 1 / (d_max - 1), 1 / (d_min - 1)
    ok = all(inner - slack <= abs(z) <= outer + slack for z in roots)
    return ZerosReport(roots, d_min, d_max, inner, outer, resid, ok, slack)


# -- beta = 1 -------------------------------------------------------------


@dataclass
class BetaOneRecord:
    omega_at_one: int
    values: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(v == self.omega_at_one for v in self.values.values())


def unicyclic_spanning_count(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> int:
    """sum of 2^k(s) over subsets s whose every component (isolated vertices too) has nullity 1."""
    check_guard(g, max_edges)
    total = 0
    for mask in range(1 << g.n_edges):
        nul = mask_nullities(g, mask)
        if all(n == 1 for n in nul):
            total += 2 ** len(nul)
    return total


def subcoregraph_count_expansion_beta2(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES,
                                       max_vertices: int | None = DEFAULT_MAX_VERTICES) -> BetaOneRecord:
    """omega_G(1) as matchings of the 2-subdivision covering every original vertex."""
    w1 = omega(g).polynomial.evaluate(1)
    sub = g.subdivide(2)  # original vertices keep indices 0..|V|-1
    return BetaOneRecord(w1, {
        "subdivision_matchings": count_matchings_covering(sub, range(g.n_vertices), max_vertices),
        "unicyclic_subsets": unicyclic_spanning_count(g, max_edges),
    })


def omega_at_one_identities(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES,
                            max_vertices: int | None = DEFAULT_MAX_VERTICES) -> BetaOneRecord:
    w1 = omega(g).polynomial.evaluate(1)
    deg = g.degrees()
    signed = 0
    for matching in iter_matchings(g, max_vertices):
        hit = set()
        for eid in matching:
            hit.update(g.edge(eid).endpoints)
        term = (-1) ** len(matching)
        for i in range(g.n_vertices):
            if i not in hit:
                term *= deg[i]
        signed += term
    lap = ihara_matrix(g, 1)  # at u = 1 this is D - A
    det_sum = 0
    for _, k, rest, _ in cycle_union_terms(g, max_edges):
        det_sum += 2**k * bareiss_det(_minor(lap, rest))
    dc_ok = all(
        omega(g.delete_edge(e.id)).polynomial.evaluate(1) + omega(g.contract_edge(e.id)).polynomial.evaluate(1) == w1
        for e in g.non_loop_edges()
    )
    return BetaOneRecord(w1, {
        "signed_matchings": signed,
        "laplacian_determinants": det_sum,
        "deletion_contraction": w1 if dc_ok else None,
    })
