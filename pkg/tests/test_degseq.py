"""Feasibility, realization, and swap-space connectivity of degree sequences."""

import itertools

import pytest

from loopygraphs.degseq import (
    CONNECTED,
    DISCONNECTED,
    NotLoopyGraphical,
    check_connectivity,
    detect_disconnected,
    is_graphical_with_loops,
    is_loopy_graphical,
    is_simple_graphical,
    max_degree_guarantees_connected,
    max_loop_count,
    parse_degree_sequences,
    realize_loopy_graph,
)
from loopygraphs.graph import is_in_clique_trap, is_in_cycle_trap


def naive_simple_graphical(degrees):
    """Direct inequality scan, kept as the reference for the fast version."""
    ds = sorted((int(d) for d in degrees), reverse=True)
    if any(d < 0 for d in ds):
        return False
    n = len(ds)
    if ds and ds[0] > n - 1:
        return False
    if sum(ds) % 2:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += ds[k - 1]
        tail = sum(min(d, k) for d in ds[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def test_simple_graphical_examples():
    assert is_simple_graphical((2, 2, 2))
    assert is_simple_graphical((3, 3, 2, 2))
    assert is_simple_graphical(())
    assert is_simple_graphical((0, 0))
    assert not is_simple_graphical((2, 2, 0))
    assert not is_simple_graphical((4, 4, 3, 1, 1, 1, 0))
    assert not is_simple_graphical((1,))  # odd sum
    assert not is_simple_graphical((3, 1))  # degree above n-1
    assert not is_simple_graphical((-1, 1))


def test_simple_graphical_matches_reference():
    for n in range(0, 6):
        for ds in itertools.product(range(6), repeat=n):
            assert is_simple_graphical(ds) == naive_simple_graphical(ds), ds


def test_graphical_with_loops():
    assert is_graphical_with_loops((4, 4, 2), 2)
    assert not is_graphical_with_loops((4, 4, 2), 3)
    assert is_graphical_with_loops((2, 2, 2), 3)
    assert is_graphical_with_loops((2, 2, 2), 0)
    assert not is_graphical_with_loops((1, 1), 1)  # reduced entry goes negative
    with pytest.raises(ValueError):
        is_graphical_with_loops((2, 2), 3)


def test_max_loop_count_examples():
    assert max_loop_count((4, 4, 2)) == 2
    assert max_loop_count((6, 6, 5, 3, 3, 3, 2)) == 6
    assert max_loop_count((2, 2, 2)) == 3
    assert max_loop_count((5, 3, 3, 3)) == 4
    assert max_loop_count((3, 3, 3, 3)) == 4
    assert max_loop_count((3, 3, 2, 2)) == 4
    assert max_loop_count((1, 1)) == 0
    assert max_loop_count(()) == 0


def test_max_loop_count_rejects_infeasible():
    with pytest.raises(NotLoopyGraphical):
        max_loop_count((3, 2))
    with pytest.raises(NotLoopyGraphical):
        max_loop_count((4, 2))
    with pytest.raises(NotLoopyGraphical):
        max_loop_count((1,))


def test_is_loopy_graphical():
    assert is_loopy_graphical((3, 1))
    assert is_loopy_graphical((2,))
    assert not is_loopy_graphical((3, 2))
    assert not is_loopy_graphical((5, 1))


def test_realize_matches_degrees():
    for ds in [(4, 4, 2), (2, 2, 2), (2, 2, 2, 2), (5, 3, 3, 3),
               (6, 3, 3, 3, 3), (3, 3, 2, 2), (6, 6, 5, 3, 3, 3, 2),
               (1, 1), (2,), (4, 4, 3, 3, 2, 2, 2)]:
        g = realize_loopy_graph(ds)
        g.validate()
        assert g.degree_sequence() == tuple(ds)
        assert g.loop_count() == max_loop_count(ds)


def test_realize_puts_loops_on_largest_degrees():
    g = realize_loopy_graph((6, 3, 3, 3, 1, 0))
    looped = set(g.loop_vertices())
    unlooped = set(range(g.n)) - looped
    if looped and unlooped:
        assert min(g.degree(v) for v in looped) >= max(g.degree(v) for v in unlooped)


def test_realize_rejects_infeasible():
    with pytest.raises(NotLoopyGraphical):
        realize_loopy_graph((3, 2))


def test_max_degree_bound():
    assert max_degree_guarantees_connected((4, 4, 3, 3, 2, 2, 2))
    assert max_degree_guarantees_connected((3,) + (2,) * 9)
    assert not max_degree_guarantees_connected((2, 2, 2, 2))  # all twos excluded
    assert not max_degree_guarantees_connected((6, 3, 3, 3, 3))
    assert not max_degree_guarantees_connected((1, 1))
    assert not max_degree_guarantees_connected((0, 0))
    # zeros are ignored when counting vertices
    assert max_degree_guarantees_connected((4, 4, 3, 3, 2, 2, 2, 0, 0))


def test_detect_cycle_family():
    report = detect_disconnected((2, 2, 2, 2))
    assert report.status == DISCONNECTED
    assert report.detail == "cycle"
    assert report.witness.degree_sequence() == (2, 2, 2, 2)
    assert is_in_cycle_trap(report.witness)


def test_detect_clique_family():
    report = detect_disconnected((3, 3, 3, 3))
    assert report.status == DISCONNECTED
    assert report.detail == "clique"
    assert report.witness.degree_sequence() == (3, 3, 3, 3)
    assert is_in_clique_trap(report.witness)


def test_detect_looped_clique():
    report = detect_disconnected((5, 3, 3, 3))
    assert report.status == DISCONNECTED
    assert report.detail == "looped_clique"
    assert report.witness.degree_sequence() == (5, 3, 3, 3)
    assert is_in_cycle_trap(report.witness)


def test_detect_hub_triangle():
    report = detect_disconnected((6, 3, 3, 3, 3))
    assert report.status == DISCONNECTED
    assert report.detail == "hub_triangle"
    assert report.witness.degree_sequence() == (6, 3, 3, 3, 3)
    assert is_in_cycle_trap(report.witness)


def test_detect_witness_respects_input_order():
    # same multiset as the hub case but permuted: witness degrees must follow
    # the caller's vertex order
    report = detect_disconnected((3, 3, 6, 3, 3))
    assert report.status == DISCONNECTED
    assert report.witness.degree_sequence() == (3, 3, 6, 3, 3)


def test_detect_connected_cases():
    assert detect_disconnected((4, 4, 2)).status == CONNECTED
    assert detect_disconnected((3, 3, 2, 2)).status == CONNECTED
    assert detect_disconnected((4, 4, 3, 3, 2, 2, 2)).status == CONNECTED


def test_detect_degenerate_cases():
    report = detect_disconnected((1, 1))
    assert report.status == CONNECTED
    assert report.method == "degenerate"
    assert detect_disconnected((2,)).status == CONNECTED
    assert detect_disconnected((2, 0)).status == CONNECTED


def test_detect_rejects_infeasible():
    with pytest.raises(NotLoopyGraphical):
        detect_disconnected((3, 2))


def test_check_connectivity_uses_bound_first():
    report = check_connectivity((4, 4, 3, 3, 2, 2, 2))
    assert report.status == CONNECTED
    assert report.method == "max_degree_bound"
    report = check_connectivity((2, 2, 2))
    assert report.status == DISCONNECTED
    assert report.method == "peeling"


def test_check_connectivity_guards_graphicality():
    # small max degree over many vertices satisfies the bound, but the odd
    # sum means nothing realizes it
    with pytest.raises(NotLoopyGraphical):
        check_connectivity((3,) + (2,) * 8)


def test_parse_degree_sequences():
    text = "# header\n5,3,3,3\n2 2 2  # trailing note\n\n"
    assert parse_degree_sequences(text) == [(5, 3, 3, 3), (2, 2, 2)]
    with pytest.raises(ValueError, match="line 2"):
        parse_degree_sequences("1 1\n2 x\n")
