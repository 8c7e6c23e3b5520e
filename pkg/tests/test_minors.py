import pytest
from hypothesis import given, settings, strategies as st

from gencol.errors import CapacityError, InputError
from gencol.generators import complete_graph, cycle_graph, grid, random_graph, random_tree
from gencol.graph import Graph
from gencol.minors import MinorModel, find_minor, is_valid_model, model_from_lists

from oracles import is_minor_by_partitions
from strategies import graphs

PETERSEN = Graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                 + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])


def test_find_minor_examples():
    K4 = complete_graph(4)
    model = find_minor(K4, K4)
    assert model is not None and all(len(b) == 1 for b in model.branch_sets.values())
    assert find_minor(random_tree(9, 5), complete_graph(3)) is None
    model = find_minor(PETERSEN, complete_graph(5))
    assert model is not None and is_valid_model(PETERSEN, complete_graph(5), model)
    assert find_minor(grid(3, 3).graph, complete_graph(5)) is None


def test_find_minor_guard():
    with pytest.raises(CapacityError):
        find_minor(cycle_graph(70), complete_graph(3))


def test_validator_rejects_bad_models():
    C6 = cycle_graph(6)
    K3 = complete_graph(3)
    assert is_valid_model(C6, K3, {0: {0, 1}, 1: {2, 3}, 2: {4, 5}})
    assert not is_valid_model(C6, K3, {0: {0, 2}, 1: {1}, 2: {3, 4, 5}})  # disconnected set
    assert not is_valid_model(C6, K3, {0: {0, 1}, 1: {1, 2}, 2: {3, 4, 5}})  # overlap
    assert not is_valid_model(C6, K3, {0: {0}, 1: {1}, 2: {3}})  # missing edges
    assert not is_valid_model(C6, K3, {0: {0}, 1: {1}})
    # edge realised by a path with a clean interior
    paths = MinorModel({0: frozenset({0}), 1: frozenset({1}), 2: frozenset({2})},
                       {frozenset((0, 2)): (0, 5, 4, 3, 2)})
    assert is_valid_model(C6, K3, paths)
    dirty = MinorModel(paths.branch_sets, {frozenset((0, 2)): (0, 1, 2)})
    assert not is_valid_model(C6, K3, dirty)


def test_model_from_lists():
    assert model_from_lists([[0], [1, 2]]).as_lists() == [[0], [1, 2]]
    with pytest.raises(InputError):
        model_from_lists([[0], []])


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.sampled_from([complete_graph(3), complete_graph(4), cycle_graph(4),
                                         Graph(4, [(0, 1), (0, 2), (0, 3)])]))
def test_find_minor_matches_exhaustive_search(G, H):
    model = find_minor(G, H)
    assert (model is not None) == is_minor_by_partitions(G, H)
    if model is not None:
        assert is_valid_model(G, H, model)


def test_find_minor_on_seven_vertices_matches_exhaustive_search():
    for seed in range(6):
        G = random_graph(7, 0.35, seed)
        for H in (complete_graph(4), cycle_graph(5)):
            assert (find_minor(G, H) is not None) == is_minor_by_partitions(G, H)
