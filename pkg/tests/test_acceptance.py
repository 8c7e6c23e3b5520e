"""Acceptance suite.  Every criterion logs exactly one PASS/FAIL line; all comparisons are exact
(integer counts, zero tolerance)."""

import math
import random

import pytest

from gencol.builders import h_ipd, kt_flat_decomposition
from gencol.cli import main
from gencol.errors import InputError
from gencol.decomposition import SpreadFunction, check_f_flat, order_from_decomposition, width
from gencol.generators import (complete_graph, k_tree, path_graph, random_forest, random_graph,
                               random_maximal_planar, series_parallel, triangulated_grid)
from gencol.graph import Graph, closed_neighborhood, contract_parts, degeneracy_order, is_isometric_path, shortest_path
from gencol.minors import is_valid_model
from gencol.order import LinearOrder
from gencol.planar import check_carord, ipd_maximal_planar, lexbfs_planar_construction, path_invariant_violations
from gencol.reach import cost_of_order, elimination_width, exact_gcn, treedepth_exact, treewidth_exact, weak_reach_sets

STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])


def record(log, number, title, failures, detail):
    line = f"[{'PASS' if not failures else 'FAIL'}] AC{number} {title}: {detail}"
    if failures:
        line += f"; first failure: {failures[0]}"
    log.append(line)
    print(line)
    assert not failures, line


@pytest.fixture(scope="module")
def corpus(small_corpus):
    """Connected graphs on up to seven vertices plus 200 seeded random graphs on eight."""
    rng = random.Random(20240601)
    extra = [random_graph(8, rng.uniform(0.15, 0.85), rng.randrange(2 ** 32)) for _ in range(200)]
    return list(small_corpus) + extra


@pytest.fixture(scope="module")
def triangulations():
    rng = random.Random(515)
    return [random_maximal_planar(rng.randint(50, 500), rng.randrange(2 ** 32)) for _ in range(50)]


def test_ac1_endpoint_identities(corpus, acceptance_log):
    failures = []
    for idx, G in enumerate(corpus):
        col, _ = exact_gcn(G, math.inf, "strong")
        wcol, _ = exact_gcn(G, math.inf, "weak")
        tw, td = treewidth_exact(G), treedepth_exact(G)
        if col != tw + 1 or wcol != td:
            failures.append(f"graph {idx}: col_inf={col}, tw+1={tw + 1}, wcol_inf={wcol}, td={td}")
    record(acceptance_log, 1, "col_inf = tw+1 and wcol_inf = td", failures,
           f"{len(corpus)} graphs, {len(failures)} mismatches")


def test_ac2_sandwich(corpus, acceptance_log):
    failures = []
    for idx, G in enumerate(corpus):
        for r in (1, 2, 3):
            col, _ = exact_gcn(G, r, "strong")
            wcol, _ = exact_gcn(G, r, "weak")
            if not col <= wcol <= col ** r:
                failures.append(f"graph {idx}, r={r}: col={col}, wcol={wcol}")
    record(acceptance_log, 2, "col_r <= wcol_r <= col_r^r", failures,
           f"{len(corpus)} graphs x r in 1..3, {len(failures)} violations")


def test_ac3_forests_and_degeneracy(acceptance_log):
    rng = random.Random(33)
    failures = []
    for i in range(100):
        n = rng.randint(1, 12)
        F = random_forest(n, rng.randrange(2 ** 32), root_probability=rng.choice([0.0, 0.1, 0.3]))
        for r in (1, 2, 3, 4):
            col, _ = exact_gcn(F, r, "strong", cap=12)
            wcol, _ = exact_gcn(F, r, "weak", cap=12)
            if col > 2 or wcol > r + 1:
                failures.append(f"forest {i} (n={n}), r={r}: col={col}, wcol={wcol}")
    for i in range(200):
        G = random_graph(rng.randint(1, 10), rng.random(), rng.randrange(2 ** 32))
        _, k = degeneracy_order(G)
        col1, _ = exact_gcn(G, 1, "strong")
        if col1 != k + 1:
            failures.append(f"graph {i}: col_1={col1}, degeneracy+1={k + 1}")
    record(acceptance_log, 3, "forests col_r <= 2, wcol_r <= r+1; col_1 = degeneracy+1", failures,
           f"100 forests x r in 1..4, 200 graphs, {len(failures)} violations")


def test_ac4_isometric_path_neighbourhoods(acceptance_log):
    rng = random.Random(44)
    failures = []
    samples = 0
    while samples < 500:
        n = rng.randint(2, 40)
        G = random_graph(n, rng.uniform(1.0 / n, 0.4), rng.randrange(2 ** 32))
        s, t = rng.randrange(n), rng.randrange(n)
        try:
            P = shortest_path(G, s, t)
        except InputError:
            continue  # endpoints in different components
        assert is_isometric_path(G, P)
        v, r = rng.randrange(n), rng.randint(0, 6)
        hit = len(closed_neighborhood(G, v, r) & set(P))
        if hit > min(len(P), 2 * r + 1):
            failures.append(f"sample {samples}: |N_r[v] & P| = {hit}, r={r}, |P|={len(P)}")
        samples += 1
    record(acceptance_log, 4, "|N_r[v] & V(P)| <= min(|P|, 2r+1)", failures,
           f"{samples} samples, {len(failures)} violations")


def test_ac5_binomial_bound(acceptance_log):
    rng = random.Random(55)
    failures = []
    for i in range(300):
        n = rng.randint(1, 20)
        G = random_graph(n, rng.uniform(0.05, 0.6), rng.randrange(2 ** 32))
        seq = list(range(n))
        rng.shuffle(seq)
        L = LinearOrder(seq)
        k = elimination_width(G, L)
        for r in (1, 2, 3, 4):
            worst = max(len(s) for s in weak_reach_sets(G, L, r))
            if worst > math.comb(r + k, k):
                failures.append(f"pair {i}, r={r}: max |WReach_r| = {worst} > C({r + k},{k})")
    record(acceptance_log, 5, "max |WReach_r| <= C(r+k, k)", failures,
           f"300 (G, L) pairs x r in 1..4, {len(failures)} violations")


def test_ac6_planar_ipd(triangulations, acceptance_log):
    failures = []
    for idx, g in enumerate(triangulations):
        G = g.graph
        D = ipd_maximal_planar(G, g.embedding)
        k = width(G, D).width
        if k > 2:
            failures.append(f"triangulation {idx}: width {k}")
        alive = set(range(G.n))
        for part in D.parts:
            if not is_isometric_path(G, part, alive):
                failures.append(f"triangulation {idx}: part {part[:4]}... not isometric in its residual")
            alive -= set(part)
        L = order_from_decomposition(D)
        for r in range(1, 6):
            cost = cost_of_order(G, L, r, "weak")
            if cost > math.comb(r + 2, 2) * (2 * r + 1):
                failures.append(f"triangulation {idx}, r={r}: weak cost {cost}")
    sizes = [g.graph.n for g in triangulations]
    record(acceptance_log, 6, "planar ipd width <= 2, isometric parts, wcol_r <= C(r+2,2)(2r+1)", failures,
           f"{len(triangulations)} triangulations (n {min(sizes)}..{max(sizes)}) x r in 1..5, "
           f"{len(failures)} violations")


def test_ac7_planar_lexbfs_order(triangulations, acceptance_log):
    cases = [(f"triangulation {i}", g) for i, g in enumerate(triangulations)]
    cases += [(f"triangulated grid {m}x{m}", triangulated_grid(m, m)) for m in (5, 10, 20, 30)]
    failures = []
    for name, g in cases:
        G = g.graph
        con = lexbfs_planar_construction(G, g.embedding)
        for r in range(1, 6):
            cost = cost_of_order(G, con.order, r, "strong")
            if cost > 5 * r + 1:
                failures.append(f"{name}, r={r}: strong cost {cost}")
            bad = path_invariant_violations(G, con, r)
            if bad:
                failures.append(f"{name}, r={r}: path counts {bad[0]}")
        if not check_carord(G, g.embedding, con.tree, con.order):
            failures.append(f"{name}: bag-before-interior property fails")
    record(acceptance_log, 7, "lexbfs order col_r <= 5r+1, per-path counts, bag ordering", failures,
           f"{len(cases)} triangulations x r in 1..5, {len(failures)} violations")


def test_ac8_kt_flat(triangulations, acceptance_log):
    cases = [(f"triangulation {i}", g.graph, 5) for i, g in enumerate(triangulations[:20])]
    rng = random.Random(88)
    for k in (2, 3):
        for i in range(10):
            cases.append((f"{k}-tree {i}", k_tree(k, rng.randint(k + 1, 60), rng.randrange(2 ** 32)), k + 2))
    failures = []
    for name, G, t in cases:
        res = kt_flat_decomposition(G, t)
        if not res.ok:
            failures.append(f"{name}: unexpected K_{t} certificate")
            continue
        D = res.decomposition
        k = width(G, D).width
        if k > t - 2:
            failures.append(f"{name}: width {k} > {t - 2}")
        if max(D.path_counts()) > t - 3:
            failures.append(f"{name}: a part uses {max(D.path_counts())} paths")
        if not check_f_flat(G, D, SpreadFunction.affine(t - 3)):
            failures.append(f"{name}: not ({t - 3})(2r+1)-flat")
        L = order_from_decomposition(D)
        for r in range(1, 5):
            cost = cost_of_order(G, L, r, "weak")
            if cost > math.comb(r + t - 2, t - 2) * (t - 3) * (2 * r + 1):
                failures.append(f"{name}, r={r}: weak cost {cost}")
    for t in (4, 5, 6, 7):
        res = kt_flat_decomposition(complete_graph(t), t)
        if res.ok or not is_valid_model(complete_graph(t), complete_graph(t), res.certificate):
            failures.append(f"K_{t}: no valid certificate")
    record(acceptance_log, 8, "K_t-free flat decompositions and K_t certificates", failures,
           f"{len(cases)} instances x r in 1..4 plus K_4..K_7, {len(failures)} violations")


def test_ac9_h_ipd(acceptance_log):
    rng = random.Random(99)
    failures = []
    states = 0
    for i in range(50):
        n = rng.randint(2, 300)
        G = series_parallel(n, rng.randrange(2 ** 32)).graph
        res = h_ipd(G, complete_graph(4), rng.randrange(4), validate=True)
        if not res.ok:
            failures.append(f"series-parallel {i}: unexpected K_4 certificate")
            continue
        children = [c for step in res.trace for c in step["children"]]
        states += len(children)
        if not all(c["valid"] for c in children):
            failures.append(f"series-parallel {i}: invalid intermediate state")
        k = width(G, res.decomposition).width
        if k > 9:
            failures.append(f"series-parallel {i}: width {k}")
        L = order_from_decomposition(res.decomposition)
        for r in range(1, 5):
            cost = cost_of_order(G, L, r, "strong")
            if cost > 3 * (2 * r + 1):
                failures.append(f"series-parallel {i}, r={r}: strong cost {cost}")
    for n in (1, 2, 3, 10, 50, 200):
        res = h_ipd(path_graph(n), STAR, 0)
        L = order_from_decomposition(res.decomposition)
        for r in range(1, 5):
            if cost_of_order(path_graph(n), L, r, "strong") > 3:
                failures.append(f"path {n}, r={r}: strong cost above 3")
    record(acceptance_log, 9, "h_ipd states valid, width <= 9, col_r <= 3(2r+1); claw on paths <= 3", failures,
           f"50 series-parallel graphs ({states} states) and 6 paths, {len(failures)} violations")


def test_ac10_contraction_treewidth(acceptance_log):
    rng = random.Random(1010)
    failures = []
    done = 0
    patterns = [(complete_graph(4), 0), (complete_graph(5), 1), (STAR, 0), (Graph(5, [(0, 1), (1, 2), (2, 3),
                                                                                     (3, 4), (4, 0)]), 0)]
    while done < 100:
        n = rng.randint(2, 12)
        G = random_graph(n, rng.uniform(0.15, 0.6), rng.randrange(2 ** 32))
        if done % 2 == 0:
            res = kt_flat_decomposition(G, rng.randint(4, 6))
        else:
            res = h_ipd(G, *rng.choice(patterns))
        if not res.ok:
            continue
        D = res.decomposition
        k = width(G, D).width
        tw = treewidth_exact(contract_parts(G, D.parts))
        if tw > k:
            failures.append(f"instance {done}: contracted tree-width {tw} > width {k}")
        done += 1
    record(acceptance_log, 10, "contracted connected decomposition has tw <= width", failures,
           f"{done} instances, {len(failures)} violations")


def test_ac11_verify_is_deterministic(capsys, acceptance_log):
    args = ["verify", "--seed", "11", "--count", "3", "--n", "20..60", "--r", "1..5"]
    outputs = []
    for _ in range(2):
        code = main(args)
        outputs.append((code, capsys.readouterr().out))
    failures = [] if outputs[0] == outputs[1] else ["reports differ"]
    if outputs[0][0] != 0:
        failures.append(f"verify exited with {outputs[0][0]}")
    record(acceptance_log, 11, "verify output is byte-identical across runs", failures,
           f"{len(outputs[0][1])} bytes compared")
