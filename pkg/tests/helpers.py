"""Shared independent oracles for the test suite.

Everything here is deliberately brute force and separate from the library's
own algorithms, so tests compare two routes to the same answer.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, List, Sequence, Tuple

from fairdetach.bee import BipartiteColoring
from fairdetach.multigraph import Multigraph


def all_pairings(items: Sequence) -> Iterator[List[Tuple]]:
    """Every way to split an even-length sequence into unordered pairs."""
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = list(items[1:i]) + list(items[i + 1 :])
        for sub in all_pairings(rest):
            yield [(first, items[i])] + sub


def coloring_from_assignment(
    units: Sequence[Tuple], colors: Sequence[int], k: int, left, right
) -> BipartiteColoring:
    """Build a coloring from per-unit-edge color choices."""
    c = BipartiteColoring(k, left, right)
    for (l, r), col in zip(units, colors):
        c.add(l, r, col, 1)
    return c


def enumerate_unit_edges(pairs: Sequence[Tuple]) -> List[Tuple]:
    """Expand (l, r, mult) records into unit edges."""
    out = []
    for l, r, n in pairs:
        out.extend([(l, r)] * n)
    return out


def spanning_cycles(g: Multigraph) -> Iterator[Tuple[int, ...]]:
    """All spanning cycles of g as canonical vertex sequences.

    Canonical form: starts at the smallest vertex, second vertex smaller
    than the last (fixes direction).  For two vertices the double edge is
    the only possible cycle.
    """
    verts = g.vertices
    n = len(verts)
    if n < 2:
        return
    if n == 2:
        u, v = verts
        if g.multiplicity(u, v) >= 2:
            yield (u, v)
        return
    first = verts[0]
    for perm in permutations(verts[1:]):
        if perm[0] > perm[-1]:
            continue
        cyc = (first,) + perm
        ok = all(
            g.multiplicity(a, b) >= 1 for a, b in zip(cyc, cyc[1:] + cyc[:1])
        )
        if ok:
            yield cyc


def brute_force_ham_decomposable(g: Multigraph) -> bool:
    """Exhaustively search for any partition of g's edges into spanning cycles."""
    verts = g.vertices
    n = len(verts)
    if any(g.loops(v) for v in verts):
        return False
    total = g.edge_count()
    if total == 0:
        return True
    if n < 2 or total % n:
        return False

    def search(rem: Multigraph) -> bool:
        if rem.edge_count() == 0:
            return True
        for cyc in spanning_cycles(rem):
            nxt = rem.copy()
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                nxt.remove_edges(a, b, 1)
            if search(nxt):
                return True
        return False

    return search(g.copy())
