"""Versioned JSON interchange documents.

Two document kinds, both under the "v1" version tag:

  graph          a colored multigraph with optional split counts (eta) and
                 optional vertex map (psi),
  decomposition  a host multigraph plus spanning cycles as vertex sequences.

Multiplicities are stored as counts, never as repeated records, and every
list is emitted in sorted order so serialization is byte-stable; parsing a
serialized document reproduces it exactly.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Tuple

from .errors import DocumentError
from .hamilton import HamDecomposition
from .multigraph import (
    AmalgamationSpec,
    ColoredMultigraph,
    DetachmentMap,
    Multigraph,
)

VERSION = "v1"


def dumps(doc: Dict[str, Any]) -> str:
    """Canonical serialization: sorted keys, tight separators, one newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("version") != VERSION:
        raise DocumentError(f"unsupported document version {doc.get('version')!r}")
    if doc.get("kind") not in ("graph", "decomposition"):
        raise DocumentError(f"unknown document kind {doc.get('kind')!r}")
    return doc


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


def _vertex_list(doc: Dict[str, Any]) -> List[int]:
    verts = doc.get("vertices")
    _require(isinstance(verts, list), "missing vertex list")
    _require(
        all(isinstance(v, int) and v >= 0 for v in verts),
        "vertices must be nonnegative integers",
    )
    _require(len(set(verts)) == len(verts), "duplicate vertex ids")
    return list(verts)


def graph_to_doc(
    cg: ColoredMultigraph,
    eta: Optional[AmalgamationSpec] = None,
    psi: Optional[DetachmentMap] = None,
) -> Dict[str, Any]:
    edges = []
    loops = []
    for j in range(1, cg.k + 1):
        layer = cg.layer(j)
        for u, v, n in layer.pairs():
            edges.append([u, v, j, n])
        for v, n in layer.loop_items():
            loops.append([v, j, n])
    doc: Dict[str, Any] = {
        "version": VERSION,
        "kind": "graph",
        "k": cg.k,
        "vertices": cg.vertices,
        "edges": sorted(edges),
        "loops": sorted(loops),
    }
    if eta is not None:
        doc["eta"] = [[v, n] for v, n in sorted(eta.eta.items())]
    if psi is not None:
        doc["psi"] = [[w, list(f)] for w, f in sorted(psi.fibers.items())]
    return doc


def doc_to_graph(
    doc: Dict[str, Any],
) -> Tuple[ColoredMultigraph, Optional[AmalgamationSpec], Optional[DetachmentMap]]:
    _require(doc.get("kind") == "graph", "expected a graph document")
    k = doc.get("k")
    _require(isinstance(k, int) and k >= 1, "k must be a positive integer")
    verts = _vertex_list(doc)
    vset = set(verts)
    cg = ColoredMultigraph(k, verts)
    for rec in doc.get("edges", []):
        _require(
            isinstance(rec, list) and len(rec) == 4,
            f"edge record {rec!r} must be [u, v, color, mult]",
        )
        u, v, j, n = rec
        _require(u in vset and v in vset and u != v, f"bad edge endpoints {rec!r}")
        _require(1 <= j <= k, f"edge color {j} out of range")
        _require(isinstance(n, int) and n >= 1, f"bad multiplicity in {rec!r}")
        cg.layer(j).add_edges(u, v, n)
    for rec in doc.get("loops", []):
        _require(
            isinstance(rec, list) and len(rec) == 3,
            f"loop record {rec!r} must be [v, color, mult]",
        )
        v, j, n = rec
        _require(v in vset, f"bad loop vertex {rec!r}")
        _require(1 <= j <= k, f"loop color {j} out of range")
        _require(isinstance(n, int) and n >= 1, f"bad multiplicity in {rec!r}")
        cg.layer(j).add_loops(v, n)

    eta = None
    if "eta" in doc:
        recs = doc["eta"]
        _require(isinstance(recs, list), "eta must be a list of [vertex, count]")
        mapping = {}
        for rec in recs:
            _require(
                isinstance(rec, list) and len(rec) == 2,
                f"eta record {rec!r} must be [vertex, count]",
            )
            v, n = rec
            _require(v in vset, f"eta names unknown vertex {v}")
            _require(isinstance(n, int) and n >= 1, f"eta({v}) must be positive")
            _require(v not in mapping, f"duplicate eta record for vertex {v}")
            mapping[v] = n
        _require(set(mapping) == vset, "eta must cover every vertex")
        eta = AmalgamationSpec(mapping)

    psi = None
    if "psi" in doc:
        recs = doc["psi"]
        _require(isinstance(recs, list), "psi must be a list of [host, fiber]")
        fibers = {}
        for rec in recs:
            _require(
                isinstance(rec, list) and len(rec) == 2 and isinstance(rec[1], list),
                f"psi record {rec!r} must be [host, [members...]]",
            )
            w, members = rec
            _require(w not in fibers, f"duplicate fiber for host vertex {w}")
            _require(
                all(m in vset for m in members),
                f"fiber of {w} names unknown vertices",
            )
            fibers[w] = members
        psi = DetachmentMap.from_fibers(fibers)
    return cg, eta, psi


def _host_to_obj(host: Multigraph) -> Dict[str, Any]:
    return {
        "vertices": host.vertices,
        "edges": [[u, v, n] for u, v, n in host.pairs()],
        "loops": [[v, n] for v, n in host.loop_items()],
    }


def _obj_to_host(obj: Any) -> Multigraph:
    _require(isinstance(obj, dict), "host must be an object")
    verts = _vertex_list(obj)
    g = Multigraph(verts)
    vset = set(verts)
    for rec in obj.get("edges", []):
        _require(
            isinstance(rec, list) and len(rec) == 3,
            f"host edge record {rec!r} must be [u, v, mult]",
        )
        u, v, n = rec
        _require(u in vset and v in vset and u != v, f"bad host edge {rec!r}")
        _require(isinstance(n, int) and n >= 1, f"bad multiplicity in {rec!r}")
        g.add_edges(u, v, n)
    for rec in obj.get("loops", []):
        _require(
            isinstance(rec, list) and len(rec) == 2,
            f"host loop record {rec!r} must be [v, mult]",
        )
        v, n = rec
        _require(v in vset, f"bad host loop {rec!r}")
        _require(isinstance(n, int) and n >= 1, f"bad multiplicity in {rec!r}")
        g.add_loops(v, n)
    return g


def decomposition_to_doc(dec: HamDecomposition) -> Dict[str, Any]:
    return {
        "version": VERSION,
        "kind": "decomposition",
        "host": _host_to_obj(dec.host),
        "cycles": [list(c) for c in dec.cycles],
    }


def doc_to_decomposition(doc: Dict[str, Any]) -> HamDecomposition:
    _require(doc.get("kind") == "decomposition", "expected a decomposition document")
    host = _obj_to_host(doc.get("host"))
    cycles = doc.get("cycles")
    _require(isinstance(cycles, list), "missing cycle list")
    vset = set(host.vertices)
    for cyc in cycles:
        _require(
            isinstance(cyc, list) and all(isinstance(v, int) for v in cyc),
            f"cycle {cyc!r} must be a list of vertex ids",
        )
        _require(all(v in vset for v in cyc), f"cycle {cyc!r} names unknown vertices")
    return HamDecomposition(
        host=host, cycles=tuple(tuple(c) for c in cycles)
    )


def to_dot(doc: Dict[str, Any]) -> str:
    """Graphviz rendering of a document; display only, not a contract."""
    lines = ["graph G {"]
    if doc.get("kind") == "graph":
        for v in doc["vertices"]:
            lines.append(f"  {v};")
        for u, v, j, n in doc.get("edges", []):
            for _ in range(n):
                lines.append(f'  {u} -- {v} [label="c{j}", colorindex={j}];')
        for v, j, n in doc.get("loops", []):
            for _ in range(n):
                lines.append(f'  {v} -- {v} [label="c{j}", colorindex={j}];')
    else:
        host = doc["host"]
        for v in host["vertices"]:
            lines.append(f"  {v};")
        for idx, cyc in enumerate(doc.get("cycles", []), start=1):
            closed = list(cyc) + [cyc[0]] if cyc else []
            for a, b in zip(closed, closed[1:]):
                lines.append(f'  {a} -- {b} [label="c{idx}", colorindex={idx}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
