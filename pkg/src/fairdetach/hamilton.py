"""Hamiltonian decomposition generators.

Two families are produced: lambda-fold complete graphs, and uniform
group-divisible multigraphs (p parts of size a, multiplicity lambda1
inside parts and lambda2 across).  Both are generated by amalgamating the
target down to a handful of vertices, coloring the amalgamated edges so
that every color class is connected with even fair shares, and letting the
detachment engine disentangle the colors into spanning cycles.

`walecki_odd` is an independent direct construction for odd complete
graphs, kept as a small-case oracle for the engine-based route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .engine import detach_all
from .errors import GraphError, InfeasibleError, PreconditionError
from .evencolor import evenly_equitable_coloring
from .multigraph import AmalgamationSpec, ColoredMultigraph, Multigraph, VertexId


@dataclass(frozen=True)
class GddParams:
    """Uniform-or-not group divisible parameters: part sizes and the two
    multiplicities (lambda1 inside a part, lambda2 across parts).

    Sizes are stored ascending as the canonical form.
    """

    sizes: Tuple[int, ...]
    lambda1: int
    lambda2: int

    def __post_init__(self) -> None:
        if not self.sizes:
            raise GraphError("need at least one part")
        if any(a < 1 for a in self.sizes):
            raise GraphError("part sizes must be positive")
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise GraphError("multiplicities must be nonnegative")
        object.__setattr__(self, "sizes", tuple(sorted(self.sizes)))

    @property
    def p(self) -> int:
        return len(self.sizes)

    def total_vertices(self) -> int:
        return sum(self.sizes)

    def part_blocks(self) -> List[List[VertexId]]:
        """Canonical partition: consecutive id blocks in size order."""
        blocks = []
        base = 0
        for a in self.sizes:
            blocks.append(list(range(base, base + a)))
            base += a
        return blocks

    def build_graph(self) -> Multigraph:
        """The group divisible multigraph itself."""
        g = Multigraph(range(self.total_vertices()))
        part_of = {}
        for i, block in enumerate(self.part_blocks()):
            for v in block:
                part_of[v] = i
        n = self.total_vertices()
        for u in range(n):
            for v in range(u + 1, n):
                lam = self.lambda1 if part_of[u] == part_of[v] else self.lambda2
                if lam:
                    g.add_edges(u, v, lam)
        return g


@dataclass(frozen=True)
class Feasibility:
    """Outcome of the decomposability test: either a cycle count, or the
    label and description of the violated condition."""

    feasible: bool
    k: Optional[int] = None
    condition: Optional[str] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class HamDecomposition:
    """Edge-disjoint spanning cycles whose multiset union is the host graph.

    Each cycle is a closed vertex sequence; a sequence of length two stands
    for a pair of parallel edges, which is the only spanning cycle shape a
    2-vertex multigraph admits.
    """

    host: Multigraph
    cycles: Tuple[Tuple[VertexId, ...], ...]

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)


# ---------------------------------------------------------------------------
# direct construction for odd complete graphs


def walecki_odd(n: int) -> HamDecomposition:
    """Hamiltonian decomposition of the complete graph on odd n >= 3.

    The classic zigzag: a hub vertex plus rotations of a zigzag path on the
    remaining n-1 vertices give (n-1)/2 edge-disjoint spanning cycles.
    """
    if n < 3 or n % 2 == 0:
        raise PreconditionError(f"need odd n >= 3, got {n}")
    m = n - 1
    hub = m
    cycles = []
    for i in range(m // 2):
        path = [i]
        for step in range(1, m):
            offset = (step + 1) // 2 if step % 2 else -(step // 2)
            path.append((i + offset) % m)
        cycles.append(tuple([hub] + path))
    host = Multigraph(range(n))
    for u in range(n):
        for v in range(u + 1, n):
            host.add_edges(u, v, 1)
    return HamDecomposition(host=host, cycles=tuple(cycles))


# ---------------------------------------------------------------------------
# engine-based constructions


def _extract_cycle(layer: Multigraph) -> Tuple[VertexId, ...]:
    """Read the spanning cycle off a connected 2-regular loopless layer.

    Walk from the smallest vertex, always taking the smallest neighbor with
    an unused edge; 2-regularity leaves no choices after the first step.
    """
    verts = layer.vertices
    rem: Dict[VertexId, Dict[VertexId, int]] = {
        v: {u: layer.multiplicity(v, u) for u in layer.neighbors(v)} for v in verts
    }
    start = verts[0]
    cycle = [start]
    cur = start
    while True:
        nxt = None
        for u in sorted(rem[cur]):
            if rem[cur][u] > 0:
                nxt = u
                break
        if nxt is None:
            break
        rem[cur][nxt] -= 1
        rem[nxt][cur] -= 1
        if nxt == start:
            break
        cycle.append(nxt)
        cur = nxt
    if len(cycle) != len(verts) or any(
        n for d in rem.values() for n in d.values()
    ):
        raise AssertionError("color class is not a single spanning cycle")
    return tuple(cycle)


def _relabel(cg: ColoredMultigraph, order: List[VertexId]) -> ColoredMultigraph:
    """Rename vertices so order[i] becomes i."""
    rename = {v: i for i, v in enumerate(order)}
    out = ColoredMultigraph(cg.k, range(len(order)))
    for j in range(1, cg.k + 1):
        layer = cg.layer(j)
        for u, v, n in layer.pairs():
            out.layer(j).add_edges(rename[u], rename[v], n)
        for v, n in layer.loop_items():
            out.layer(j).add_loops(rename[v], n)
    return out


def ham_decompose_lambda_kn(n: int, lam: int) -> HamDecomposition:
    """Hamiltonian decomposition of the lambda-fold complete graph on n vertices.

    Exists iff lam*(n-1) is even; yields lam*(n-1)/2 cycles.  Construction:
    amalgamate everything into one vertex carrying lam*C(n,2) loops, give
    each of the lam*(n-1)/2 colors exactly n loops (so each color's degree
    ratio is the even integer 2, which keeps every class connected through
    the detachment), then detach with split count n.
    """
    if n < 2:
        raise PreconditionError(f"need n >= 2, got {n}")
    if lam < 1:
        raise PreconditionError(f"need lambda >= 1, got {lam}")
    if (lam * (n - 1)) % 2:
        raise InfeasibleError(
            "parity",
            f"lambda*(n-1) = {lam}*{n - 1} is odd, so no decomposition exists",
        )
    k = lam * (n - 1) // 2
    cg = ColoredMultigraph(k, [0])
    for j in range(1, k + 1):
        cg.layer(j).add_loops(0, n)
    g, psi, _ = detach_all(cg, AmalgamationSpec({0: n}))
    g = _relabel(g, psi.fiber(0))
    cycles = tuple(_extract_cycle(g.layer(j)) for j in range(1, k + 1))
    return HamDecomposition(host=g.underlying(), cycles=cycles)


def gdd_feasible(params: GddParams) -> Feasibility:
    """Decide Hamiltonian decomposability of the group divisible multigraph.

    Total function.  Dispatches the four degenerate shapes (one part, no
    cross edges, all singleton parts, equal multiplicities) and otherwise
    tests the three conditions: equal part sizes, even vertex degree, and
    enough cross edges to host the intra-part load.
    """
    p = params.p
    sizes = params.sizes
    l1, l2 = params.lambda1, params.lambda2

    def parity_case(lam: int, n: int, label: str) -> Feasibility:
        if (lam * (n - 1)) % 2 == 0:
            return Feasibility(feasible=True, k=lam * (n - 1) // 2)
        return Feasibility(
            feasible=False,
            condition=label,
            reason=f"vertex degree {lam}*({n}-1) is odd",
        )

    if p == 1:
        return parity_case(l1, sizes[0], "trivial (i)")
    if l2 == 0:
        return Feasibility(
            feasible=False,
            condition="trivial (ii)",
            reason="no edges between parts, the graph is disconnected",
        )
    if all(a == 1 for a in sizes):
        return parity_case(l2, p, "trivial (iii)")
    if l1 == l2:
        return parity_case(l1, params.total_vertices(), "trivial (iv)")

    if len(set(sizes)) != 1:
        return Feasibility(
            feasible=False,
            condition="(i)",
            reason=f"part sizes {list(sizes)} are not all equal",
        )
    a = sizes[0]
    degree = l1 * (a - 1) + l2 * a * (p - 1)
    if degree % 2:
        return Feasibility(
            feasible=False,
            condition="(ii)",
            reason=f"vertex degree {degree} is odd",
        )
    if l1 > l2 * a * (p - 1):
        return Feasibility(
            feasible=False,
            condition="(iii)",
            reason=(
                f"intra-part multiplicity {l1} exceeds the cross budget "
                f"{l2}*{a}*({p}-1) = {l2 * a * (p - 1)}"
            ),
        )
    return Feasibility(feasible=True, k=degree // 2)


def ham_decompose_gdd(params: GddParams) -> HamDecomposition:
    """Hamiltonian decomposition of the group divisible multigraph.

    Construction for the main shape: amalgamate each part to one vertex
    (loops carry the intra-part edges), decompose the loopless part of the
    amalgam into Hamiltonian cycles, color k of them distinctly so each
    color class is connected, spread the remaining edges evenly-equitably
    over the same k colors, and detach with split count a.  Output vertices
    are relabeled so part i occupies the i-th consecutive id block.
    """
    feas = gdd_feasible(params)
    if not feas.feasible:
        raise InfeasibleError(feas.condition or "?", feas.reason or "infeasible")
    k = feas.k or 0
    p = params.p
    sizes = params.sizes
    l1, l2 = params.lambda1, params.lambda2

    if k == 0:
        return HamDecomposition(
            host=Multigraph(range(params.total_vertices())), cycles=()
        )
    if p == 1:
        return ham_decompose_lambda_kn(sizes[0], l1)
    if all(a == 1 for a in sizes):
        return ham_decompose_lambda_kn(p, l2)
    if l1 == l2:
        return ham_decompose_lambda_kn(params.total_vertices(), l1)

    a = sizes[0]
    cross = ham_decompose_lambda_kn(p, l2 * a * a)
    if cross.cycle_count < k:
        raise AssertionError(
            f"only {cross.cycle_count} cross cycles available for {k} colors"
        )

    cg = ColoredMultigraph(k, range(p))
    for j in range(1, k + 1):
        cyc = cross.cycles[j - 1]
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            cg.layer(j).add_edges(u, v, 1)
    rest = Multigraph(range(p))
    for cyc in cross.cycles[k:]:
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            rest.add_edges(u, v, 1)
    loops_per_vertex = l1 * a * (a - 1) // 2
    for y in range(p):
        rest.add_loops(y, loops_per_vertex)
    spread = evenly_equitable_coloring(rest, k)
    for j in range(1, k + 1):
        cg.layer(j).merge(spread.layer(j))

    eta = AmalgamationSpec({y: a for y in range(p)})
    g, psi, _ = detach_all(cg, eta)
    order = [u for y in range(p) for u in psi.fiber(y)]
    g = _relabel(g, order)
    cycles = tuple(_extract_cycle(g.layer(j)) for j in range(1, k + 1))
    return HamDecomposition(host=g.underlying(), cycles=cycles)


# ---------------------------------------------------------------------------
# cycle composition counts used by the counting-bound checks


def pure_edge_counts(
    cycle: Tuple[VertexId, ...], partition: List[List[VertexId]]
) -> List[int]:
    """Edges of the cycle inside each part, in part order."""
    part_of = {v: i for i, part in enumerate(partition) for v in part}
    counts = [0] * len(partition)
    for u, v in zip(cycle, cycle[1:] + cycle[:1]):
        if part_of[u] == part_of[v]:
            counts[part_of[u]] += 1
    return counts


def mixed_edge_count(
    cycle: Tuple[VertexId, ...], partition: List[List[VertexId]]
) -> int:
    """Edges of the cycle joining two different parts."""
    part_of = {v: i for i, part in enumerate(partition) for v in part}
    return sum(
        1
        for u, v in zip(cycle, cycle[1:] + cycle[:1])
        if part_of[u] != part_of[v]
    )
