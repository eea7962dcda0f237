"""Seeded random instance generators for fuzz testing and the CLI fuzz command."""

from __future__ import annotations

import random
from typing import Tuple

from .bee import BipartiteMultigraph
from .multigraph import AmalgamationSpec, ColoredMultigraph, Multigraph


def random_detach_instance(
    rng: random.Random,
    max_vertices: int = 6,
    max_eta: int = 4,
    max_k: int = 4,
    max_mult: int = 6,
    max_loops: int = 8,
) -> Tuple[ColoredMultigraph, AmalgamationSpec]:
    """A random colored multigraph plus a valid split-count map.

    Vertices with split count 1 never receive loops, matching the
    detachment precondition.
    """
    nv = rng.randint(1, max_vertices)
    k = rng.randint(1, max_k)
    cg = ColoredMultigraph(k, range(nv))
    eta = {v: rng.randint(1, max_eta) for v in range(nv)}
    for u in range(nv):
        for v in range(u + 1, nv):
            for j in range(1, k + 1):
                if rng.random() < 0.4:
                    cg.layer(j).add_edges(u, v, rng.randint(1, max_mult))
    for v in range(nv):
        if eta[v] == 1:
            continue
        for j in range(1, k + 1):
            if rng.random() < 0.4:
                cg.layer(j).add_loops(v, rng.randint(1, max_loops))
    return cg, AmalgamationSpec(eta)


def random_bipartite(
    rng: random.Random,
    max_side: int = 8,
    max_mult: int = 6,
) -> BipartiteMultigraph:
    nl = rng.randint(1, max_side)
    nr = rng.randint(1, max_side)
    bg = BipartiteMultigraph(range(nl), range(100, 100 + nr))
    for l in range(nl):
        for r in range(100, 100 + nr):
            if rng.random() < 0.4:
                bg.add_edges(l, r, rng.randint(1, max_mult))
    return bg


def random_even_multigraph(
    rng: random.Random,
    max_vertices: int = 9,
    max_walks: int = 4,
    max_walk_len: int = 8,
    max_extra_loops: int = 3,
) -> Multigraph:
    """Union of random closed walks plus random loops: even by construction.

    A closed walk may step in place, which adds a loop; every visit
    contributes two to the degree, so all degrees stay even.
    """
    nv = rng.randint(2, max_vertices)
    g = Multigraph(range(nv))
    for _ in range(rng.randint(0, max_walks)):
        length = rng.randint(2, max_walk_len)
        walk = [rng.randrange(nv) for _ in range(length)]
        for a, b in zip(walk, walk[1:] + walk[:1]):
            if a == b:
                g.add_loops(a, 1)
            else:
                g.add_edges(a, b, 1)
    for _ in range(rng.randint(0, max_extra_loops)):
        g.add_loops(rng.randrange(nv), 1)
    return g
