from __future__ import annotations

import random

import pytest

from fairdetach.engine import detach_all, detach_step
from fairdetach.errors import GraphError
from fairdetach.fuzzgen import random_detach_instance
from fairdetach.hamilton import GddParams, walecki_odd
from fairdetach.multigraph import (
    AmalgamationSpec,
    ColoredMultigraph,
    DetachmentMap,
    Multigraph,
)
from fairdetach.verify import (
    assert_step_relations,
    is_gdd,
    verify_detachment,
    verify_ham_decomposition,
    verify_trace,
)


def triangle_pair():
    h = ColoredMultigraph(2, [0])
    h.layer(1).add_loops(0, 3)
    eta = AmalgamationSpec({0: 3})
    g, psi, trace = detach_all(h, eta)
    return h, eta, psi, g, trace


def test_triangle_detachment_passes_everything() -> None:
    h, eta, psi, g, _ = triangle_pair()
    report = verify_detachment(h, eta, psi, g)
    assert report.ok
    assert report.first_failure() is None
    assert all(line.endswith("ok") for line in report.lines())


def test_recolored_edge_breaks_per_color_degrees() -> None:
    h, eta, psi, g, _ = triangle_pair()
    bad = g.copy()
    u, v, _ = bad.layer(1).pairs()[0]
    bad.layer(1).remove_edges(u, v, 1)
    bad.layer(2).add_edges(u, v, 1)
    report = verify_detachment(h, eta, psi, bad)
    assert not report.ok
    assert not report.verdicts["A2"][0]
    assert report.verdicts["A2"][1] is not None
    assert not report.verdicts["conservation"][0]


def test_loopy_output_is_reported() -> None:
    h, eta, psi, g, _ = triangle_pair()
    bad = g.copy()
    bad.layer(1).remove_edges(0, 1, 1)
    bad.layer(1).add_loops(0, 1)
    report = verify_detachment(h, eta, psi, bad)
    assert not report.verdicts["loopless"][0]


def test_structural_mismatch_raises_rather_than_reports() -> None:
    h, eta, psi, g, _ = triangle_pair()
    with pytest.raises(GraphError):
        verify_detachment(h, AmalgamationSpec({0: 2}), psi, g)
    bad_map = DetachmentMap.from_fibers({0: [0, 1]})
    with pytest.raises(GraphError):
        verify_detachment(h, eta, bad_map, g)


def test_fuzz_detachments_all_verify() -> None:
    rng = random.Random(61)
    for _ in range(120):
        cg, eta = random_detach_instance(rng)
        g, psi, _ = detach_all(cg, eta)
        report = verify_detachment(cg, eta, psi, g)
        assert report.ok, report.first_failure()


def test_ham_checker_accepts_c4_as_itself() -> None:
    host = Multigraph(range(4))
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        host.add_edges(a, b)
    ok, witness = verify_ham_decomposition(host, [[0, 1, 2, 3]])
    assert ok, witness


def test_ham_checker_accepts_walecki() -> None:
    d = walecki_odd(5)
    ok, witness = verify_ham_decomposition(d.host, list(d.cycles))
    assert ok, witness


def test_ham_checker_rejects_swapped_edges() -> None:
    d = walecki_odd(5)
    cycles = [list(c) for c in d.cycles]
    cycles[0][1], cycles[0][2] = cycles[0][2], cycles[0][1]
    ok, witness = verify_ham_decomposition(d.host, cycles)
    assert not ok
    assert witness is not None


def test_ham_checker_rejects_non_spanning() -> None:
    host = Multigraph(range(3))
    for a, b in [(0, 1), (1, 2), (0, 2)]:
        host.add_edges(a, b)
    ok, _ = verify_ham_decomposition(host, [[0, 1]])
    assert not ok


def test_ham_checker_rejects_leftover_edges() -> None:
    host = Multigraph(range(3))
    for a, b in [(0, 1), (1, 2), (0, 2)]:
        host.add_edges(a, b, 2)
    ok, witness = verify_ham_decomposition(host, [[0, 1, 2]])
    assert not ok


def test_ham_checker_two_vertex_double_edge() -> None:
    host = Multigraph(range(2))
    host.add_edges(0, 1, 2)
    ok, witness = verify_ham_decomposition(host, [[0, 1]])
    assert ok, witness


def test_is_gdd_bipartite() -> None:
    g = Multigraph(range(4))
    for u in (0, 1):
        for v in (2, 3):
            g.add_edges(u, v)
    assert is_gdd(g, GddParams((2, 2), 0, 1), [[0, 1], [2, 3]])
    assert not is_gdd(g, GddParams((2, 2), 1, 1), [[0, 1], [2, 3]])


def test_is_gdd_single_part() -> None:
    g = Multigraph(range(4))
    for u in range(4):
        for v in range(u + 1, 4):
            g.add_edges(u, v, 2)
    assert is_gdd(g, GddParams((4,), 2, 0), [[0, 1, 2, 3]])


def test_is_gdd_rejects_loops_and_bad_cover() -> None:
    g = Multigraph(range(2))
    g.add_edges(0, 1, 1)
    g.add_loops(0, 1)
    assert not is_gdd(g, GddParams((1, 1), 0, 1), [[0], [1]])
    clean = Multigraph(range(2))
    clean.add_edges(0, 1, 1)
    with pytest.raises(GraphError):
        is_gdd(clean, GddParams((1, 1), 0, 1), [[0], [0, 1]])


def test_step_relations_three_loop_step() -> None:
    h = ColoredMultigraph(1, [0])
    h.layer(1).add_loops(0, 3)
    eta = AmalgamationSpec({0: 3})
    out, _, v_new = detach_step(h, eta, 0)
    ok, witness = assert_step_relations(h, out, 0, v_new, eta)
    assert ok, witness
    # the loop share is exact here: 3*(2-1)/3 = 1 loop must remain
    assert out.loops(0) == 1


def test_step_relations_four_parallel_edges() -> None:
    h = ColoredMultigraph(1, [0, 1])
    h.layer(1).add_edges(0, 1, 4)
    eta = AmalgamationSpec({0: 2, 1: 2})
    out, _, v_new = detach_step(h, eta, 0)
    ok, witness = assert_step_relations(h, out, 0, v_new, eta)
    assert ok, witness
    # m(v_new, 1) is within 4/2 = 2 exactly
    assert out.multiplicity(v_new, 1) == 2


def test_step_relations_catch_tampering() -> None:
    h = ColoredMultigraph(1, [0, 1])
    h.layer(1).add_edges(0, 1, 4)
    eta = AmalgamationSpec({0: 2, 1: 2})
    out, _, v_new = detach_step(h, eta, 0)
    bad = out.copy()
    bad.layer(1).remove_edges(v_new, 1, 1)
    bad.layer(1).add_edges(0, 1, 1)
    ok, witness = assert_step_relations(h, bad, 0, v_new, eta)
    assert not ok
    assert witness is not None


def test_step_relations_fuzz() -> None:
    rng = random.Random(67)
    checked = 0
    while checked < 80:
        cg, eta = random_detach_instance(rng)
        ys = [v for v in cg.vertices if eta.value(v) >= 2]
        if not ys:
            continue
        out, _, v_new = detach_step(cg, eta, ys[0])
        ok, witness = assert_step_relations(cg, out, ys[0], v_new, eta)
        assert ok, witness
        checked += 1


def test_trace_replay_relations() -> None:
    rng = random.Random(71)
    for _ in range(40):
        cg, eta = random_detach_instance(rng, max_vertices=4)
        g, psi, trace = detach_all(cg, eta)
        ok, witness = verify_trace(cg, eta, trace)
        assert ok, witness
