from __future__ import annotations

import pytest

from fairdetach.errors import GraphError, InfeasibleError, PreconditionError
from fairdetach.hamilton import (
    GddParams,
    gdd_feasible,
    ham_decompose_gdd,
    ham_decompose_lambda_kn,
    mixed_edge_count,
    pure_edge_counts,
    walecki_odd,
)
from fairdetach.verify import is_gdd, verify_ham_decomposition
from helpers import brute_force_ham_decomposable


def test_walecki_triangle() -> None:
    d = walecki_odd(3)
    assert d.cycle_count == 1
    ok, witness = verify_ham_decomposition(d.host, list(d.cycles))
    assert ok, witness


def test_walecki_k5_union_is_complete() -> None:
    d = walecki_odd(5)
    assert d.cycle_count == 2
    ok, witness = verify_ham_decomposition(d.host, list(d.cycles))
    assert ok, witness
    assert all(n == 1 for _, _, n in d.host.pairs())
    assert len(d.host.pairs()) == 10


def test_walecki_k7() -> None:
    d = walecki_odd(7)
    assert d.cycle_count == 3
    ok, witness = verify_ham_decomposition(d.host, list(d.cycles))
    assert ok, witness


def test_walecki_rejects_even_n() -> None:
    with pytest.raises(PreconditionError):
        walecki_odd(4)


def test_lambda_kn_triangle() -> None:
    d = ham_decompose_lambda_kn(3, 1)
    assert d.cycle_count == 1
    assert verify_ham_decomposition(d.host, list(d.cycles))[0]


def test_lambda_kn_k5_matches_walecki_shape() -> None:
    d = ham_decompose_lambda_kn(5, 1)
    assert d.cycle_count == 2
    assert verify_ham_decomposition(d.host, list(d.cycles))[0]
    assert d.host == walecki_odd(5).host


def test_lambda_kn_doubled_k4() -> None:
    d = ham_decompose_lambda_kn(4, 2)
    assert d.cycle_count == 3
    assert verify_ham_decomposition(d.host, list(d.cycles))[0]
    assert all(n == 2 for _, _, n in d.host.pairs())


def test_lambda_kn_two_vertices() -> None:
    d = ham_decompose_lambda_kn(2, 4)
    assert d.cycle_count == 2
    assert verify_ham_decomposition(d.host, list(d.cycles))[0]


def test_lambda_kn_odd_parity_infeasible() -> None:
    with pytest.raises(InfeasibleError):
        ham_decompose_lambda_kn(4, 1)
    with pytest.raises(InfeasibleError):
        ham_decompose_lambda_kn(6, 3)


def test_lambda_kn_rejects_bad_arguments() -> None:
    with pytest.raises(PreconditionError):
        ham_decompose_lambda_kn(1, 1)
    with pytest.raises(PreconditionError):
        ham_decompose_lambda_kn(3, 0)


def test_gdd_feasible_unequal_sizes() -> None:
    f = gdd_feasible(GddParams((2, 3), 1, 2))
    assert not f.feasible
    assert f.condition == "(i)"


def test_gdd_feasible_positive_case_k7() -> None:
    f = gdd_feasible(GddParams((3, 3, 3), 1, 2))
    assert f.feasible
    assert f.k == 7  # (1*2 + 2*3*2) / 2


def test_gdd_feasible_parity_failure_reported_first() -> None:
    f = gdd_feasible(GddParams((2, 2), 3, 1))
    assert not f.feasible
    assert f.condition == "(ii)"  # degree 3+2 = 5 is odd (and (iii) also fails)


def test_gdd_feasible_cross_budget() -> None:
    f = gdd_feasible(GddParams((2, 2), 4, 1))
    assert not f.feasible
    assert f.condition == "(iii)"  # degree 6 is even but 4 > 2


def test_gdd_feasible_bipartite_case() -> None:
    f = gdd_feasible(GddParams((2, 2), 0, 1))
    assert f.feasible
    assert f.k == 1


def test_gdd_feasible_trivial_cases() -> None:
    assert gdd_feasible(GddParams((5,), 2, 0)).feasible  # one part: 2*K_5
    f = gdd_feasible(GddParams((4,), 1, 0))
    assert not f.feasible and f.condition == "trivial (i)"
    f = gdd_feasible(GddParams((3, 3), 1, 0))
    assert not f.feasible and f.condition == "trivial (ii)"
    f = gdd_feasible(GddParams((1, 1, 1), 0, 2))
    assert f.feasible and f.k == 2
    f = gdd_feasible(GddParams((1, 1, 1, 1), 0, 1))
    assert not f.feasible and f.condition == "trivial (iii)"
    f = gdd_feasible(GddParams((2, 3), 2, 2))
    assert f.feasible and f.k == 4  # equal multiplicities: 2*K_5
    f = gdd_feasible(GddParams((2, 2), 1, 1))
    assert not f.feasible and f.condition == "trivial (iv)"


def run_gdd(sizes, l1, l2):
    params = GddParams(tuple(sizes), l1, l2)
    dec = ham_decompose_gdd(params)
    ok, witness = verify_ham_decomposition(dec.host, list(dec.cycles))
    assert ok, witness
    assert is_gdd(dec.host, params, params.part_blocks())
    return params, dec


def test_gdd_bipartite_four_cycle() -> None:
    params, dec = run_gdd((2, 2), 0, 1)
    assert dec.cycle_count == 1
    assert len(dec.cycles[0]) == 4


def test_gdd_three_parts_of_three() -> None:
    params, dec = run_gdd((3, 3, 3), 1, 2)
    assert dec.cycle_count == 7
    assert len(dec.host.vertices) == 9


def test_gdd_three_parts_of_two() -> None:
    params, dec = run_gdd((2, 2, 2), 2, 1)
    assert dec.cycle_count == 3


def test_gdd_two_parts_of_three() -> None:
    params, dec = run_gdd((3, 3), 1, 2)
    assert dec.cycle_count == 4  # (1*2 + 2*3*1) / 2


def test_gdd_trivial_routes() -> None:
    params, dec = run_gdd((4,), 2, 0)  # one part: 2*K_4
    assert dec.cycle_count == 3
    params, dec = run_gdd((1, 1, 1), 0, 2)  # singletons: 2*K_3
    assert dec.cycle_count == 2


def test_gdd_equal_multiplicities_route() -> None:
    params, dec = run_gdd((1, 2), 1, 1)  # K_3
    assert dec.cycle_count == 1


def test_gdd_infeasible_raises_with_condition() -> None:
    with pytest.raises(InfeasibleError) as err:
        ham_decompose_gdd(GddParams((2, 3), 1, 2))
    assert err.value.condition == "(i)"


def test_gdd_empty_graph_decomposes_trivially() -> None:
    params = GddParams((3,), 0, 0)
    dec = ham_decompose_gdd(params)
    assert dec.cycle_count == 0
    assert dec.host.edge_count() == 0


def test_remark_bounds_on_positive_instances() -> None:
    for sizes, l1, l2 in [((2, 2), 0, 1), ((3, 3, 3), 1, 2), ((2, 2, 2), 2, 1), ((3, 3), 1, 2)]:
        params, dec = run_gdd(sizes, l1, l2)
        a = params.sizes[0]
        p = params.p
        blocks = params.part_blocks()
        for cyc in dec.cycles:
            pure = pure_edge_counts(cyc, blocks)
            assert all(c <= a - 1 for c in pure)
            assert mixed_edge_count(cyc, blocks) >= p


def test_remark_equality_case_exact_counts() -> None:
    # l1 == l2*a*(p-1): every cycle has exactly a-1 pure edges per part and
    # exactly p mixed edges
    params, dec = run_gdd((2, 2), 2, 1)
    assert dec.cycle_count == 2
    blocks = params.part_blocks()
    for cyc in dec.cycles:
        assert pure_edge_counts(cyc, blocks) == [1, 1]
        assert mixed_edge_count(cyc, blocks) == 2


def test_brute_force_confirms_disconnected_infeasible() -> None:
    # two disjoint triangles: even degrees, 6 edges, predicate says trivial (ii)
    params = GddParams((3, 3), 1, 0)
    f = gdd_feasible(params)
    assert not f.feasible and f.condition == "trivial (ii)"
    assert not brute_force_ham_decomposable(params.build_graph())


def test_brute_force_agrees_on_small_feasible_instance() -> None:
    params = GddParams((2, 2), 0, 1)
    assert gdd_feasible(params).feasible
    assert brute_force_ham_decomposable(params.build_graph())


def test_gdd_params_validation() -> None:
    with pytest.raises(GraphError):
        GddParams((), 1, 1)
    with pytest.raises(GraphError):
        GddParams((0, 2), 1, 1)
    with pytest.raises(GraphError):
        GddParams((2, 2), -1, 1)
    assert GddParams((3, 1, 2), 0, 1).sizes == (1, 2, 3)
