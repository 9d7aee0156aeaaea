"""Finite multigraphs with loops and parallel edges.

Edges carry stable integer ids.  Deleting or contracting an edge never
renumbers the surviving edges, so per-edge data (weights) can follow an
edge through a deletion-contraction recursion.  Vertices are the integers
``0 .. vertex_count - 1``; contraction merges into the smaller index and
shifts the higher indices down by one.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import GuardExceeded, InputError, ParseError

DEFAULT_MAX_EDGES = 26


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    u: int
    v: int

    def __post_init__(self):
        if self.u > self.v:
            a, b = self.v, self.u
            object.__setattr__(self, "u", a)
            object.__setattr__(self, "v", b)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def nullity(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


@dataclass(frozen=True)
class ComponentProfile:
    components: tuple[Component, ...]

    def __len__(self):
        return len(self.components)

    def nullity_counts(self) -> Counter:
        """Map nullity -> number of components with that nullity."""
        return Counter(c.nullity for c in self.components)


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InputError("vertex_count must be non-negative")
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise InputError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if not (0 <= e.u < self.vertex_count and 0 <= e.v < self.vertex_count):
                raise InputError(f"edge {e.id} has an endpoint outside 0..{self.vertex_count - 1}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs: Iterable[Sequence[int]]) -> "Multigraph":
        return cls(vertex_count, tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs)))

    # -- basic queries ----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self.vertex_count

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def _by_id(self) -> dict[int, int]:
        return {e.id: pos for pos, e in enumerate(self.edges)}

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: int) -> Edge:
        try:
            return self.edges[self._by_id[eid]]
        except KeyError:
            raise InputError(f"unknown edge id {eid}") from None

    def position(self, eid: int) -> int:
        """Index of edge ``eid`` in ``self.edges`` (its bit in subset masks)."""
        try:
            return self._by_id[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid}") from None

    def pairs(self) -> list[tuple[int, int]]:
        return [e.endpoints for e in self.edges]

    def degrees(self, subset: Iterable[int] | None = None) -> list[int]:
        """Vertex degrees in the spanning subgraph on ``subset`` (edge ids); a loop counts 2."""
        deg = [0] * self.vertex_count
        edges = self.edges if subset is None else (self.edge(eid) for eid in subset)
        for e in edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def mask_degrees(self, mask: int) -> list[int]:
        deg = [0] * self.vertex_count
        for pos, e in enumerate(self.edges):
            if mask >> pos & 1:
                deg[e.u] += 1
                deg[e.v] += 1
        return deg

    def mask_to_ids(self, mask: int) -> frozenset[int]:
        return frozenset(e.id for pos, e in enumerate(self.edges) if mask >> pos & 1)

    def ids_to_mask(self, ids: Iterable[int]) -> int:
        mask = 0
        for eid in ids:
            mask |= 1 << self.position(eid)
        return mask

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def loops_at(self) -> list[int]:
        loops = [0] * self.vertex_count
        for e in self.edges:
            if e.is_loop:
                loops[e.u] += 1
        return loops

    def non_loop_edges(self) -> list[Edge]:
        return [e for e in self.edges if not e.is_loop]

    def is_bouquet_union(self) -> bool:
        return all(e.is_loop for e in self.edges)

    # -- structure --------------------------------------------------------

    def components(self) -> list[Component]:
        return list(component_profile(self).components)

    @property
    def k(self) -> int:
        return len(component_profile(self))

    @property
    def nullity(self) -> int:
        return self.n_edges - self.vertex_count + self.k

    @property
    def rank(self) -> int:
        return self.vertex_count - self.k

    def is_connected(self) -> bool:
        return self.k == 1

    def is_forest(self) -> bool:
        return self.nullity == 0

    def regular_degree(self) -> int | None:
        """The common degree if the graph is regular, else None."""
        deg = set(self.degrees())
        if len(deg) == 1:
            return deg.pop()
        return None

    def adjacency_matrix(self) -> list[list[int]]:
        """Integer adjacency matrix; parallel edges add up and a loop adds 2 on the diagonal."""
        n = self.vertex_count
        a = [[0] * n for _ in range(n)]
        for e in self.edges:
            if e.is_loop:
                a[e.u][e.u] += 2
            else:
                a[e.u][e.v] += 1
                a[e.v][e.u] += 1
        return a

    def encode(self) -> tuple:
        """Hashable labeled encoding that ignores edge ids."""
        return (self.vertex_count, tuple(sorted(self.pairs())))

    # -- operations -------------------------------------------------------

    def delete_edge(self, eid: int) -> "Multigraph":
        pos = self.position(eid)
        return Multigraph(self.vertex_count, self.edges[:pos] + self.edges[pos + 1:])

    def contraction_map(self, eid: int) -> list[int]:
        """Old vertex index -> new vertex index under ``contract_edge(eid)``."""
        e = self.edge(eid)
        if e.is_loop:
            return list(range(self.vertex_count))
        keep, gone = e.u, e.v
        out = []
        for x in range(self.vertex_count):
            if x == gone:
                out.append(keep)
            elif x > gone:
                out.append(x - 1)
            else:
                out.append(x)
        return out

    def contract_edge(self, eid: int) -> "Multigraph":
        e = self.edge(eid)
        if e.is_loop:
            return self.delete_edge(eid)
        relabel = self.contraction_map(eid)
        edges = tuple(
            Edge(f.id, relabel[f.u], relabel[f.v]) for f in self.edges if f.id != eid
        )
        return Multigraph(self.vertex_count - 1, edges)

    def remove_vertices(self, vertices: Iterable[int]) -> "Multigraph":
        """Delete vertices and every edge touching them; survivors are relabeled in order."""
        drop = set(vertices)
        keep = [x for x in range(self.vertex_count) if x not in drop]
        index = {x: i for i, x in enumerate(keep)}
        edges = tuple(
            Edge(e.id, index[e.u], index[e.v])
            for e in self.edges
            if e.u not in drop and e.v not in drop
        )
        return Multigraph(len(keep), edges)

    def core(self) -> "Multigraph":
        """Repeatedly clip degree-1 vertices and their edges.

        Clipped vertices are dropped from the vertex set; the remaining ones
        keep their relative order.
        """
        deg = self.degrees()
        alive_edges = {e.id: e for e in self.edges}
        incident: dict[int, list[int]] = {x: [] for x in range(self.vertex_count)}
        for e in self.edges:
            incident[e.u].append(e.id)
            if not e.is_loop:
                incident[e.v].append(e.id)
        removed = set()
        stack = [x for x in range(self.vertex_count) if deg[x] == 1]
        while stack:
            x = stack.pop()
            if x in removed or deg[x] != 1:
                continue
            removed.add(x)
            (eid,) = [f for f in incident[x] if f in alive_edges]
            e = alive_edges.pop(eid)
            y = e.v if e.u == x else e.u
            deg[x] -= 1
            deg[y] -= 1
            if deg[y] == 1:
                stack.append(y)
        kept = Multigraph(self.vertex_count, tuple(e for e in self.edges if e.id in alive_edges))
        return kept.remove_vertices(removed)

    def subdivide(self, m: int) -> "Multigraph":
        """Replace every edge by a path of ``m`` edges (loops become ``m``-cycles)."""
        if m < 1:
            raise InputError("subdivision factor must be >= 1")
        if m == 1:
            return self
        n = self.vertex_count
        pairs = []
        for e in self.edges:
            path = [e.u] + list(range(n, n + m - 1)) + [e.v]
            n += m - 1
            pairs.extend(zip(path, path[1:]))
        return Multigraph.from_pairs(n, pairs)

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        shift = self.vertex_count
        base = max(self.edge_ids, default=-1) + 1
        edges = self.edges + tuple(
            Edge(base + i, e.u + shift, e.v + shift) for i, e in enumerate(other.edges)
        )
        return Multigraph(self.vertex_count + other.vertex_count, edges)

    def to_edge_list(self) -> str:
        lines = [f"{self.vertex_count} {self.n_edges}"]
        lines += [f"{e.u} {e.v}" for e in self.edges]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"Multigraph({self.vertex_count}, {self.pairs()})"


# -- subsets --------------------------------------------------------------


def check_guard(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES) -> None:
    if max_edges is not None and g.n_edges > max_edges:
        raise GuardExceeded(
            f"{g.n_edges} edges exceeds the enumeration guard of {max_edges} "
            f"(2^{g.n_edges} subsets)"
        )


def component_profile(g: Multigraph, subset: Iterable[int] | None = None) -> ComponentProfile:
    """Connected components of the spanning subgraph ``(V, subset)``.

    ``subset`` is an iterable of edge ids; None means every edge.  Isolated
    vertices are components of nullity 0.
    """
    edges = g.edges if subset is None else [g.edge(eid) for eid in subset]
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    verts: dict[int, list[int]] = {}
    for x in range(g.vertex_count):
        verts.setdefault(find(x), []).append(x)
    eds: dict[int, list[int]] = {r: [] for r in verts}
    for e in edges:
        eds[find(e.u)].append(e.id)
    return ComponentProfile(
        tuple(Component(tuple(verts[r]), tuple(sorted(eds[r]))) for r in sorted(verts))
    )


def mask_nullities(g: Multigraph, mask: int) -> list[int]:
    """Nullity of each component of the spanning subgraph selected by ``mask``.

    Fast path for subset sums; bit ``p`` of ``mask`` selects ``g.edges[p]``.
    """
    n = g.vertex_count
    parent = list(range(n))
    extra = [0] * n  # edges beyond a spanning tree, per root

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pos = 0
    while mask:
        if mask & 1:
            e = g.edges[pos]
            a, b = find(e.u), find(e.v)
            if a == b:
                extra[a] += 1
            else:
                parent[b] = a
                extra[a] += extra[b]
        mask >>= 1
        pos += 1
    return [extra[x] for x in range(n) if parent[x] == x]


def iter_subsets(g: Multigraph, final_ok, partial_ok=None) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """Depth-first walk over edge subsets with degree-based pruning.

    Edges are decided in order.  Once a vertex has no undecided incident
    edges its degree is final and ``final_ok(d)`` must hold, otherwise the
    whole branch is cut.  ``partial_ok(d)``, if given, is tested on running
    degrees after each inclusion.  Yields ``(mask, size, degrees)``.
    """
    n, m = g.vertex_count, g.n_edges
    last = [-1] * n
    for pos, e in enumerate(g.edges):
        last[e.u] = pos
        last[e.v] = pos
    closing: list[list[int]] = [[] for _ in range(m)]
    for x in range(n):
        if last[x] >= 0:
            closing[last[x]].append(x)
    if not all(final_ok(0) for x in range(n) if last[x] < 0):
        return
    ends = [(e.u, e.v) for e in g.edges]
    deg = [0] * n

    def walk(pos, mask, size):
        if pos == m:
            yield mask, size, tuple(deg)
            return
        u, v = ends[pos]
        shut = closing[pos]
        # exclude edge pos
        if all(final_ok(deg[x]) for x in shut):
            yield from walk(pos + 1, mask, size)
        # include edge pos
        deg[u] += 1
        deg[v] += 1
        if (partial_ok is None or (partial_ok(deg[u]) and partial_ok(deg[v]))) and all(
            final_ok(deg[x]) for x in shut
        ):
            yield from walk(pos + 1, mask | (1 << pos), size + 1)
        deg[u] -= 1
        deg[v] -= 1

    yield from walk(0, 0, 0)


def _not_one(d):
    return d != 1


def iter_subcoregraphs(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES):
    """Edge subsets whose spanning subgraph has no vertex of degree 1."""
    check_guard(g, max_edges)
    return iter_subsets(g, _not_one)


def iter_cycle_unions(g: Multigraph, max_edges: int | None = DEFAULT_MAX_EDGES):
    """Edge subsets in which every vertex has degree 0 or 2 (vertex-disjoint cycles)."""
    check_guard(g, max_edges)
    return iter_subsets(g, lambda d: d == 0 or d == 2, lambda d: d <= 2)


# -- constructors ---------------------------------------------------------


def bouquet(n: int) -> Multigraph:
    if n < 0:
        raise InputError("bouquet size must be >= 0")
    return Multigraph.from_pairs(1, [(0, 0)] * n)


def cycle(n: int) -> Multigraph:
    if n < 1:
        raise InputError("cycle length must be >= 1")
    return Multigraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Multigraph:
    """Path on ``n`` vertices."""
    return Multigraph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Multigraph:
    if n < 0:
        raise InputError("complete graph size must be >= 0")
    return Multigraph.from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def theta_graph(k: int = 3) -> Multigraph:
    """Two vertices joined by ``k`` parallel edges."""
    return Multigraph.from_pairs(2, [(0, 1)] * k)


def dumbbell() -> Multigraph:
    """Two looped vertices joined by a bridge."""
    return Multigraph.from_pairs(2, [(0, 0), (1, 1), (0, 1)])


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_pairs(10, outer + spokes + inner)


def empty_graph(n: int) -> Multigraph:
    return Multigraph(n)


_COMMENT = re.compile(r"^\s*(#.*)?$")


def from_edge_list(text: str) -> Multigraph:
    """Parse the edge-list format: ``N M`` then ``M`` lines ``u v`` (0-based)."""
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if _COMMENT.match(raw):
            continue
        fields = raw.split("#", 1)[0].split()
        if len(fields) != 2:
            raise ParseError(f"expected two integers, got {raw.strip()!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer field in {raw.strip()!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("vertex and edge counts must be non-negative", lineno)
            header = (a, b)
            continue
        if len(pairs) == header[1]:
            raise ParseError(f"more than the declared {header[1]} edges", lineno)
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise ParseError(f"vertex index out of range 0..{header[0] - 1}", lineno)
        pairs.append((a, b))
    if header is None:
        raise ParseError("missing 'N M' header line")
    if len(pairs) != header[1]:
        raise ParseError(f"declared {header[1]} edges but found {len(pairs)}")
    return Multigraph.from_pairs(header[0], pairs)
