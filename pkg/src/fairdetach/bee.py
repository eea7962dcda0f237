"""Balanced, equitable and equalized k-edge-colorings of bipartite multigraphs.

A coloring is balanced when parallel edges of each vertex pair are shared
out among the colors within one, equitable when each vertex sees every
color within one of every other, and equalized when global class sizes are
within one.  All three hold simultaneously for every finite bipartite
multigraph and every k; `bee_coloring` constructs such a coloring by
peeling one class at a time.  Each peeled class is a feasible integral
circulation whose arc windows are the floor/ceiling quotas of the pair
multiplicities, vertex degrees and edge total, so every quota is met by
construction and the guarantees compose across the recursion.

`konig_proper_coloring` is the classical alternating-path proper coloring;
it is not used by `bee_coloring` but serves the 2-factorization and is
exposed in its own right.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Tuple

from .errors import GraphError, PreconditionError
from .flows import feasible_circulation

Label = Hashable


class BipartiteMultigraph:
    """Bipartite multigraph with multiplicity counts keyed (left, right).

    Side labels may be any sortable hashable values (ints, tuples of ints);
    the two sides must be disjoint and loops cannot exist.
    """

    __slots__ = ("_left", "_right", "_mult")

    def __init__(self, left: Iterable[Label] = (), right: Iterable[Label] = ()) -> None:
        self._left = set(left)
        self._right = set(right)
        if self._left & self._right:
            raise GraphError("bipartition sides must be disjoint")
        self._mult: Dict[Tuple[Label, Label], int] = {}

    @property
    def left(self) -> List[Label]:
        return sorted(self._left)

    @property
    def right(self) -> List[Label]:
        return sorted(self._right)

    def add_left(self, v: Label) -> None:
        if v in self._right:
            raise GraphError(f"{v!r} is already a right vertex")
        self._left.add(v)

    def add_right(self, v: Label) -> None:
        if v in self._left:
            raise GraphError(f"{v!r} is already a left vertex")
        self._right.add(v)

    def add_edges(self, l: Label, r: Label, n: int = 1) -> None:
        if l not in self._left or r not in self._right:
            raise GraphError(f"unknown endpoint in ({l!r}, {r!r})")
        if n < 0:
            raise GraphError("negative edge count")
        if n:
            self._mult[(l, r)] = self._mult.get((l, r), 0) + n

    def remove_edges(self, l: Label, r: Label, n: int = 1) -> None:
        have = self._mult.get((l, r), 0)
        if n > have:
            raise GraphError(f"cannot remove {n} edges from m={have}")
        if n == 0:
            return
        if have == n:
            del self._mult[(l, r)]
        else:
            self._mult[(l, r)] = have - n

    def multiplicity(self, l: Label, r: Label) -> int:
        return self._mult.get((l, r), 0)

    def pairs(self) -> List[Tuple[Label, Label, int]]:
        return sorted((l, r, n) for (l, r), n in self._mult.items())

    def degree(self, v: Label) -> int:
        if v in self._left:
            return sum(n for (l, _), n in self._mult.items() if l == v)
        if v in self._right:
            return sum(n for (_, r), n in self._mult.items() if r == v)
        raise GraphError(f"unknown vertex {v!r}")

    def max_degree(self) -> int:
        deg: Dict[Label, int] = {}
        for (l, r), n in self._mult.items():
            deg[l] = deg.get(l, 0) + n
            deg[r] = deg.get(r, 0) + n
        return max(deg.values(), default=0)

    def edge_count(self) -> int:
        return sum(self._mult.values())

    def copy(self) -> "BipartiteMultigraph":
        g = BipartiteMultigraph()
        g._left = set(self._left)
        g._right = set(self._right)
        g._mult = dict(self._mult)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteMultigraph):
            return NotImplemented
        return (
            self._left == other._left
            and self._right == other._right
            and self._mult == other._mult
        )


class BipartiteColoring:
    """A k-edge-coloring of a bipartite multigraph, stored as per-color counts."""

    __slots__ = ("k", "_left", "_right", "_mult")

    def __init__(self, k: int, left: Iterable[Label], right: Iterable[Label]) -> None:
        if k < 1:
            raise GraphError("color count must be positive")
        self.k = k
        self._left = set(left)
        self._right = set(right)
        self._mult: Dict[Tuple[Label, Label, int], int] = {}

    def add(self, l: Label, r: Label, color: int, n: int = 1) -> None:
        if not 1 <= color <= self.k:
            raise GraphError(f"color {color} out of range 1..{self.k}")
        if n < 0:
            raise GraphError("negative count")
        if n:
            key = (l, r, color)
            self._mult[key] = self._mult.get(key, 0) + n

    def count(self, l: Label, r: Label, color: int) -> int:
        return self._mult.get((l, r, color), 0)

    def items(self) -> List[Tuple[Label, Label, int, int]]:
        return sorted((l, r, c, n) for (l, r, c), n in self._mult.items())

    def pair_counts(self, l: Label, r: Label) -> List[int]:
        return [self.count(l, r, c) for c in range(1, self.k + 1)]

    def vertex_counts(self, v: Label) -> List[int]:
        out = [0] * self.k
        for (l, r, c), n in self._mult.items():
            if l == v or r == v:
                out[c - 1] += n
        return out

    def class_sizes(self) -> List[int]:
        out = [0] * self.k
        for (_, _, c), n in self._mult.items():
            out[c - 1] += n
        return out

    def parent(self) -> BipartiteMultigraph:
        """The colored graph with colors forgotten."""
        g = BipartiteMultigraph(self._left, self._right)
        for (l, r, _), n in self._mult.items():
            g.add_edges(l, r, n)
        return g

    def restrict(self, colors: Iterable[int]) -> BipartiteMultigraph:
        """Subgraph induced by the given color classes."""
        wanted = set(colors)
        g = BipartiteMultigraph(self._left, self._right)
        for (l, r, c), n in self._mult.items():
            if c in wanted:
                g.add_edges(l, r, n)
        return g

    def class_pair_row(self, color: int) -> Dict[Tuple[Label, Label], int]:
        return {
            (l, r): n for (l, r, c), n in sorted(self._mult.items()) if c == color
        }


# ---------------------------------------------------------------------------
# predicates


def is_balanced(c: BipartiteColoring) -> bool:
    """Per vertex pair, color counts among parallel edges differ by at most one."""
    per_pair: Dict[Tuple[Label, Label], List[int]] = {}
    for (l, r, col), n in c._mult.items():
        per_pair.setdefault((l, r), [0] * c.k)[col - 1] += n
    return all(max(v) - min(v) <= 1 for v in per_pair.values())


def is_equitable(c: BipartiteColoring) -> bool:
    """Per vertex, incident color counts differ by at most one."""
    per_vertex: Dict[Label, List[int]] = {}
    for (l, r, col), n in c._mult.items():
        per_vertex.setdefault(l, [0] * c.k)[col - 1] += n
        per_vertex.setdefault(r, [0] * c.k)[col - 1] += n
    return all(max(v) - min(v) <= 1 for v in per_vertex.values())


def is_equalized(c: BipartiteColoring) -> bool:
    """Global color class sizes differ by at most one."""
    sizes = c.class_sizes()
    return max(sizes) - min(sizes) <= 1


def is_proper(c: BipartiteColoring) -> bool:
    """At every vertex, each color is used at most once."""
    per_vertex: Dict[Tuple[Label, int], int] = {}
    for (l, r, col), n in c._mult.items():
        per_vertex[(l, col)] = per_vertex.get((l, col), 0) + n
        per_vertex[(r, col)] = per_vertex.get((r, col), 0) + n
    return all(n <= 1 for n in per_vertex.values())


# ---------------------------------------------------------------------------
# constructions


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _peel_class(g: BipartiteMultigraph, c: int) -> Dict[Tuple[Label, Label], int]:
    """One color class with floor/ceil quotas of 1/c on pairs, vertices, total."""
    if c == 1:
        return {(l, r): n for l, r, n in g.pairs()}
    lefts = g.left
    rights = g.right
    index = {v: i + 2 for i, v in enumerate(lefts)}
    index.update({v: len(lefts) + 2 + i for i, v in enumerate(rights)})
    s, t = 0, 1
    n_nodes = 2 + len(lefts) + len(rights)

    deg: Dict[Label, int] = {v: 0 for v in lefts + rights}
    pairs = g.pairs()
    for l, r, n in pairs:
        deg[l] += n
        deg[r] += n

    arcs = []
    for v in lefts:
        arcs.append((s, index[v], deg[v] // c, _ceil_div(deg[v], c)))
    pair_arc_start = len(arcs)
    for l, r, n in pairs:
        arcs.append((index[l], index[r], n // c, _ceil_div(n, c)))
    for v in rights:
        arcs.append((index[v], t, deg[v] // c, _ceil_div(deg[v], c)))
    total = g.edge_count()
    arcs.append((t, s, total // c, _ceil_div(total, c)))

    flows = feasible_circulation(n_nodes, arcs)
    if flows is None:  # impossible: the fractional 1/c point meets every window
        raise AssertionError("class peeling was infeasible")
    out: Dict[Tuple[Label, Label], int] = {}
    for i, (l, r, _) in enumerate(pairs):
        f = flows[pair_arc_start + i]
        if f:
            out[(l, r)] = f
    return out


def bee_coloring(bg: BipartiteMultigraph, k: int) -> BipartiteColoring:
    """Balanced, equitable and equalized k-edge-coloring of a bipartite multigraph.

    Exists for every finite bipartite multigraph and every k >= 1; classes
    are labeled 1..k in peel order and the output is deterministic.
    """
    if k < 1:
        raise PreconditionError(f"need at least one color, got {k}")
    remaining = bg.copy()
    out = BipartiteColoring(k, bg.left, bg.right)
    for j in range(1, k + 1):
        cls = _peel_class(remaining, k - j + 1)
        for (l, r), n in sorted(cls.items()):
            out.add(l, r, j, n)
            remaining.remove_edges(l, r, n)
    if remaining.edge_count() != 0:
        raise AssertionError("peeling left edges uncolored")
    return out


def konig_proper_coloring(bg: BipartiteMultigraph, k: int) -> BipartiteColoring:
    """Proper k-edge-coloring of a bipartite multigraph with max degree <= k.

    Classical alternating-path construction: edges are colored one unit at a
    time; when no color is free at both endpoints, the two-colored chain from
    one endpoint is flipped to free one up.  Deterministic: lowest free color
    first, edge bundles in sorted order.
    """
    if bg.max_degree() > k:
        raise PreconditionError(
            f"max degree {bg.max_degree()} exceeds color count {k}"
        )
    # at[(v, c)] = partner joined to v by the unit edge colored c; properness
    # means each slot holds at most one unit, so the map stays well defined
    at: Dict[Tuple[Label, int], Label] = {}
    used: Dict[Label, set] = {v: set() for v in bg.left + bg.right}
    left_set = set(bg.left)

    def flip_chain(start: Label, alpha: int, beta: int) -> None:
        # `start` carries alpha but misses beta, so its alpha/beta chain is a
        # path; flipping it frees alpha at `start` and stays proper throughout
        x, col = start, alpha
        chain = []
        while (x, col) in at:
            w = at[(x, col)]
            chain.append((x, w, col))
            x, col = w, (beta if col == alpha else alpha)
        for p, q, col in chain:
            del at[(p, col)]
            del at[(q, col)]
        for p, q, col in chain:
            nc = beta if col == alpha else alpha
            at[(p, nc)] = q
            at[(q, nc)] = p
        used[start].discard(alpha)
        used[start].add(beta)
        far, far_col = chain[-1][1], chain[-1][2]
        nc = beta if far_col == alpha else alpha
        used[far].discard(far_col)
        used[far].add(nc)

    for l, r, n in bg.pairs():
        for _ in range(n):
            free_l = [c for c in range(1, k + 1) if c not in used[l]]
            free_r = set(range(1, k + 1)) - used[r]
            common = [c for c in free_l if c in free_r]
            if common:
                c = common[0]
            else:
                # flipping the chain at r cannot reach l: the chain enters
                # left-side vertices only via alpha, which is free at l
                alpha = free_l[0]
                beta = min(free_r)
                flip_chain(r, alpha, beta)
                c = alpha
            at[(l, c)] = r
            at[(r, c)] = l
            used[l].add(c)
            used[r].add(c)

    out = BipartiteColoring(k, bg.left, bg.right)
    units = sorted((v, c) for (v, c) in at if v in left_set)
    for v, c in units:
        out.add(v, at[(v, c)], c, 1)
    return out
