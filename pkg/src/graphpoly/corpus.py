"""Built-in test corpus: named graphs plus seeded random multigraphs."""

from __future__ import annotations

import random

from .multigraph import (
    Multigraph,
    bouquet,
    complete,
    cycle,
    dumbbell,
    path,
    petersen,
    theta_graph,
)


def random_multigraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> Multigraph:
    """Uniform endpoints, so loops and parallel edges show up regularly."""
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return Multigraph.from_pairs(n, pairs)


def random_tree(rng: random.Random, n: int) -> Multigraph:
    return Multigraph.from_pairs(n, [(rng.randrange(i), i) for i in range(1, n)])


def star(n: int) -> Multigraph:
    return Multigraph.from_pairs(n + 1, [(0, i) for i in range(1, n + 1)])


def named_corpus() -> list[tuple[str, Multigraph]]:
    out = [(f"B{n}", bouquet(n)) for n in range(5)]
    out += [(f"C{n}", cycle(n)) for n in range(1, 9)]
    out += [
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("theta", theta_graph(3)),
        ("dumbbell", dumbbell()),
        ("petersen", petersen()),
        ("P4", path(4)),
        ("star3", star(3)),
    ]
    for m in (2, 3):
        for n in (1, 2, 3):
            out.append((f"B{n}^({m})", bouquet(n).subdivide(m)))
    out += [
        ("K4^(2)", complete(4).subdivide(2)),
        ("theta^(2)", theta_graph(3).subdivide(2)),
        ("theta^(3)", theta_graph(3).subdivide(3)),
        ("dumbbell^(2)", dumbbell().subdivide(2)),
        ("C3^(2)", cycle(3).subdivide(2)),
        # triangle with a pendant path of length 2
        ("C3+tail", Multigraph.from_pairs(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)])),
    ]
    return out


def random_corpus(seed: int = 0, count: int = 200, max_vertices: int = 5,
                  max_edges: int = 8) -> list[tuple[str, Multigraph]]:
    rng = random.Random(seed)
    return [(f"rand{seed}-{i:03d}", random_multigraph(rng, max_vertices, max_edges)) for i in range(count)]


def random_trees(seed: int = 0, count: int = 5, max_vertices: int = 9) -> list[tuple[str, Multigraph]]:
    rng = random.Random(seed)
    return [(f"tree{seed}-{i}", random_tree(rng, rng.randint(2, max_vertices))) for i in range(count)]


def full_corpus(seed: int = 0, random_count: int = 200) -> list[tuple[str, Multigraph]]:
    return named_corpus() + random_trees(seed) + random_corpus(seed, random_count)
