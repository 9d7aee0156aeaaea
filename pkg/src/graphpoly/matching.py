"""Matchings (dimer arrangements), the monomer-dimer sum and the matching polynomial.

Loops are never matchable.  Parallel edges give distinct matchings.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import GuardExceeded
from .multigraph import Multigraph
from .polynomial import Poly

DEFAULT_MAX_VERTICES = 32


def check_vertex_guard(g: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> None:
    if max_vertices is not None and g.n_vertices > max_vertices:
        raise GuardExceeded(
            f"{g.n_vertices} vertices exceeds the matching guard of {max_vertices}"
        )


def _incidence(g: Multigraph) -> list[list[tuple[int, int]]]:
    """For each vertex v, the non-loop edges (id, other end) with other end > v."""
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for e in g.edges:
        if not e.is_loop:
            out[e.u].append((e.id, e.v))
    return out


def iter_matchings(g: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> Iterator[frozenset[int]]:
    """Every matching, as a frozenset of edge ids (the empty matching included)."""
    check_vertex_guard(g, max_vertices)
    n = g.n_vertices
    up = _incidence(g)
    used = [False] * n
    chosen: list[int] = []

    def walk(v):
        while v < n and used[v]:
            v += 1
        if v == n:
            yield frozenset(chosen)
            return
        used[v] = True
        yield from walk(v + 1)  # v stays uncovered
        for eid, w in up[v]:
            if not used[w]:
                used[w] = True
                chosen.append(eid)
                yield from walk(v + 1)
                chosen.pop()
                used[w] = False
        used[v] = False

    yield from walk(0)


def covered(g: Multigraph, matching: Iterable[int]) -> set[int]:
    out = set()
    for eid in matching:
        e = g.edge(eid)
        out.update(e.endpoints)
    return out


def _matching_dp(g: Multigraph, required: frozenset[int]) -> Poly:
    """Generating Poly in t of matchings covering ``required``; t^k counts k-matchings."""
    n = g.n_vertices
    up = _incidence(g)
    t = Poly.x()

    @lru_cache(maxsize=None)
    def rec(v: int, used: int) -> Poly:
        while v < n and used >> v & 1:
            v += 1
        if v == n:
            return Poly(1)
        total = Poly() if v in required else rec(v + 1, used | 1 << v)
        for _, w in up[v]:
            if not used >> w & 1:
                total = total + t * rec(v + 1, used | 1 << v | 1 << w)
        return total

    result = rec(0, 0)
    rec.cache_clear()
    return result


def matching_counts(g: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> list[int]:
    """p_G(k) for k = 0 .. floor(|V|/2)."""
    check_vertex_guard(g, max_vertices)
    gen = _matching_dp(g, frozenset())
    return [gen[k] for k in range(g.n_vertices // 2 + 1)]


def count_matchings_covering(g: Multigraph, required: Iterable[int],
                             max_vertices: int | None = DEFAULT_MAX_VERTICES) -> int:
    """Number of matchings whose covered set contains ``required``."""
    check_vertex_guard(g, max_vertices)
    gen = _matching_dp(g, frozenset(required))
    return sum(gen.coeffs.values())


def matching_polynomial(g: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> Poly:
    """alpha_G(x) = sum_k (-1)^k p_G(k) x^(|V|-2k)."""
    n = g.n_vertices
    return Poly({n - 2 * k: (-1) ** k * p for k, p in enumerate(matching_counts(g, max_vertices))})


def monomer_dimer(g: Multigraph, mu: Mapping[int, object], lam: Mapping[int, object],
                  max_vertices: int | None = DEFAULT_MAX_VERTICES):
    """Xi_G(mu, lambda) = sum_D prod_{e in D} mu_e prod_{i not covered} lambda_i.

    Weights may be numbers, Fractions or Polys; the result has the same type.
    """
    total = 0
    ends = {e.id: e.endpoints for e in g.edges}
    for matching in iter_matchings(g, max_vertices):
        term = 1
        hit = set()
        for eid in matching:
            term = term * mu[eid]
            hit.update(ends[eid])
        for i in range(g.n_vertices):
            if i not in hit:
                term = term * lam[i]
        total = total + term
    return total
