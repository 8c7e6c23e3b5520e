import pytest

from gencol.errors import InputError
from gencol.generators import (FAMILIES, complete_graph, cycle_graph, generate, grid, k_tree, path_graph,
                               random_forest, random_graph, random_maximal_planar, random_tree, series_parallel,
                               triangulated_grid)
from gencol.graph import components
from gencol.minors import find_minor
from gencol.planar import validate_embedding
from gencol.reach import treewidth_exact


def test_deterministic_families():
    g = grid(3, 3)
    assert (g.graph.n, g.graph.m) == (9, 12)
    assert g.graph.has_edge(4, 7) and not g.graph.has_edge(0, 4)
    assert sorted(g.embedding.faces[g.embedding.outer_face]) == [0, 1, 2, 3, 5, 6, 7, 8]
    assert grid(3, 3, diagonals=True).graph.m == 16
    assert path_graph(4).m == 3 and cycle_graph(5).m == 5 and complete_graph(6).m == 15


def test_triangulated_grid_is_maximal_and_keeps_the_grid():
    g = triangulated_grid(5, 7)
    validate_embedding(g.graph, g.embedding, maximal=True)
    assert set(grid(5, 7, diagonals=True).graph.edges()) <= set(g.graph.edges())


def test_random_families_are_seeded():
    assert random_graph(12, 0.4, 3) == random_graph(12, 0.4, 3)
    assert random_graph(12, 0.4, 3) != random_graph(12, 0.4, 4)
    a, b = random_maximal_planar(30, 9), random_maximal_planar(30, 9)
    assert a.graph == b.graph and a.embedding.rotation == b.embedding.rotation


def test_forests_and_trees():
    for seed in range(10):
        F = random_forest(20, seed)
        assert F.m == 20 - len(components(F))
        T = random_tree(20, seed)
        assert T.m == 19 and len(components(T)) == 1


def test_k_trees_have_treewidth_k():
    for k in (1, 2, 3, 4):
        for seed in range(3):
            G = k_tree(k, 10, seed)
            assert G.m == k * (k + 1) // 2 + (10 - k - 1) * k
            assert treewidth_exact(G) == k


def test_random_maximal_planar_counts():
    for n in (3, 4, 10, 57, 200):
        g = random_maximal_planar(n, n)
        assert g.graph.m == 3 * n - 6
        validate_embedding(g.graph, g.embedding, maximal=True)


def test_random_maximal_planar_is_not_always_a_three_tree():
    # flips take the family beyond stacked triangulations
    assert any(treewidth_exact(random_maximal_planar(14, s).graph) > 3 for s in range(20))


def test_series_parallel_has_no_k4_minor():
    for seed in range(12):
        g = series_parallel(8, seed)
        assert len(components(g.graph)) == 1
        assert find_minor(g.graph, complete_graph(4)) is None
    for seed in range(5):
        assert treewidth_exact(series_parallel(16, seed).graph) <= 2


@pytest.mark.parametrize("call", [
    lambda: path_graph(0), lambda: cycle_graph(2), lambda: grid(1, 1), lambda: grid(2, -1),
    lambda: k_tree(2, 2, 0), lambda: random_graph(5, 1.5, 0), lambda: random_maximal_planar(2, 0),
    lambda: series_parallel(5, 0, drop=1.0), lambda: triangulated_grid(1, 5), lambda: path_graph(2.5),
    lambda: generate("grid", {"m": 3}), lambda: generate("moebius", {"n": 3}),
])
def test_bad_parameters(call):
    with pytest.raises(InputError):
        call()


def test_generate_dispatch():
    for family in FAMILIES:
        params = {"n": 6, "m": 3, "k": 2}
        g = generate(family, params, seed=1)
        assert g.graph.n >= 6
    assert generate("gnp", {"n": 9, "p": 0.3}, 4).graph == random_graph(9, 0.3, 4)
