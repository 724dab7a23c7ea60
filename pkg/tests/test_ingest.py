import os
import random
import tempfile

import numpy as np
import pytest
from hypothesis import given

from supraclust import (
    DegenerateInputError,
    DuplicateEdgeError,
    EdgeRecord,
    FormatError,
    MultilayerNetwork,
    build_network,
    coefficients,
    load_network,
    parse_edges,
    prune_isolated_layers,
    triangle_census,
    write_edges,
)
from supraclust.clustering import FAMILIES
from supraclust.degrees import DIRECTIONS, degree_vector, strength_vector
from supraclust.ingest import HEADER
from supraclust.synthetic import WIOD_COUNTRIES, WIOD_SECTORS, wiod_like

from conftest import networks


def write_csv(path, rows, header=",".join(HEADER)):
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")
    return path


def test_parse_row(tmp_path):
    f = write_csv(tmp_path / "e.csv", ["USA,C26,CHN,C26,1520.3"])
    edges, rejects = parse_edges(f)
    assert edges == [EdgeRecord("USA", "C26", "CHN", "C26", 1520.3)]
    assert rejects == []


def test_parse_rejects(tmp_path):
    f = write_csv(tmp_path / "e.csv", [
        "USA,C26,CHN,C26,0",
        "USA,C26,CHN,C26,-3",
        "USA,C26,CHN,C26,abc",
        "USA,C26,CHN,C26",
        ",C26,CHN,C26,1",
        "USA,C26,CHN,C26,nan",
        "DEU,C26,CHN,C26,2.5",
    ])
    edges, rejects = parse_edges(f)
    assert len(edges) == 1
    assert [(r.line, r.reason) for r in rejects] == [
        (2, "nonpositive weight"),
        (3, "nonpositive weight"),
        (4, "non-numeric weight"),
        (5, "expected 5 fields, got 4"),
        (6, "empty label"),
        (7, "non-finite weight"),
    ]


def test_parse_empty_with_header(tmp_path):
    assert parse_edges(write_csv(tmp_path / "e.csv", [])) == ([], [])


def test_parse_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        parse_edges(tmp_path / "missing.csv")
    with pytest.raises(FormatError):
        parse_edges(write_csv(tmp_path / "e.csv", ["a,b,c,d,1"], header="from,to,weight"))
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(FormatError):
        parse_edges(empty)


def test_build_merges_duplicates():
    edges = [EdgeRecord("USA", "C26", "CHN", "C26", 2.0), EdgeRecord("USA", "C26", "CHN", "C26", 3.0)]
    net, rep = build_network(edges)
    assert net.node_labels == ("CHN", "USA") and net.layer_labels == ("C26",)
    assert net.weights[1, 0] == 5.0
    assert np.count_nonzero(net.weights) == 1
    assert rep.duplicates_merged == 1
    with pytest.raises(DuplicateEdgeError) as exc:
        build_network(edges, merge="error")
    assert exc.value.keys == [("USA", "C26", "CHN", "C26")]


def test_build_self_loops():
    edges = [
        EdgeRecord("USA", "C26", "USA", "C26", 4.0),
        EdgeRecord("USA", "C26", "USA", "C27", 7.0),
        EdgeRecord("USA", "C26", "CHN", "C26", 1.0),
    ]
    net, rep = build_network(edges)
    assert rep.self_loops_dropped == 1
    usa, c26, c27 = net.node_position("USA"), net.layer_position("C26"), net.layer_position("C27")
    assert net.block(c26, c26)[usa, usa] == 0
    assert net.block(c26, c27)[usa, usa] == 7.0


def test_build_is_node_aligned():
    net, rep = build_network([EdgeRecord("a", "x", "b", "y", 1.0), EdgeRecord("c", "y", "a", "y", 1.0)])
    assert (net.n_nodes, net.n_layers, net.order) == (3, 2, 6)
    assert (rep.final_N, rep.final_L) == (3, 2)


def test_build_requires_edges():
    with pytest.raises(DegenerateInputError):
        build_network([])


def test_build_is_order_insensitive():
    rng = random.Random(7)
    edges = [
        EdgeRecord(rng.choice("abcde"), rng.choice("xyz"), rng.choice("abcde"), rng.choice("xyz"), rng.random() + 0.01)
        for _ in range(300)
    ]
    net, _ = build_network(edges)
    for _ in range(5):
        shuffled = edges[:]
        rng.shuffle(shuffled)
        assert build_network(shuffled)[0] == net


def test_prune_isolated_layer():
    w = np.zeros((6, 6))
    w[0, 1] = w[1, 4] = 1.0  # layers 0 and 2 touched; layer 1 isolated
    net = MultilayerNetwork(w, 2, layer_labels=["A", "B", "C"])
    pruned, dropped = prune_isolated_layers(net)
    assert dropped == ["B"]
    assert pruned.layer_labels == ("A", "C") and pruned.n_layers == 2
    assert pruned.block(0, 1)[1, 0] == 1.0


def test_prune_identity_and_total():
    net = MultilayerNetwork([[0, 1], [1, 0]])
    assert prune_isolated_layers(net) == (net, [])
    with pytest.raises(DegenerateInputError):
        prune_isolated_layers(MultilayerNetwork(np.zeros((4, 4)), 2))


def test_prune_wiod_shape():
    net = wiod_like(seed=3, density=0.05)
    assert (net.n_nodes, net.n_layers, net.order) == (44, 56, 2464)
    pruned, dropped = prune_isolated_layers(net)
    assert dropped == ["U"]
    assert (pruned.n_layers, pruned.order) == (55, 2420)
    assert pruned.node_labels == WIOD_COUNTRIES
    assert pruned.layer_labels == WIOD_SECTORS[:-1]


@given(networks())
def test_pruning_preserves_surviving_values(net):
    try:
        pruned, dropped = prune_isolated_layers(net)
    except DegenerateInputError:
        return
    keep = [a for a, lab in enumerate(net.layer_labels) if lab not in dropped]
    n = net.n_nodes
    idx = np.concatenate([np.arange(a * n, (a + 1) * n) for a in keep])
    for v in DIRECTIONS:
        assert np.array_equal(degree_vector(pruned, v), degree_vector(net, v)[idx])
        assert np.array_equal(strength_vector(pruned, v), strength_vector(net, v)[idx])
    assert np.array_equal(triangle_census(pruned).per_node_layer, triangle_census(net).per_node_layer[:, keep])
    for fam in FAMILIES:
        a, b = coefficients(net, fam), coefficients(pruned, fam)
        np.testing.assert_allclose(b.values, a.values[idx], rtol=0, atol=1e-12)


@given(networks())
def test_roundtrip(net):
    if not net.weights.any():
        return
    with tempfile.TemporaryDirectory() as d:
        p1, p2 = os.path.join(d, "a.csv"), os.path.join(d, "b.csv")
        labelled = MultilayerNetwork(net.weights, net.n_nodes,
                                     [f"n{i}" for i in range(net.n_nodes)], [f"L{a}" for a in range(net.n_layers)])
        write_edges(labelled, p1)
        back, _, _ = load_network(p1, prune=False)
        # labels with no arc at all cannot survive an edge list
        if back.n_nodes == net.n_nodes and back.n_layers == net.n_layers:
            assert back == labelled
        write_edges(back, p2)
        assert open(p1).read() == open(p2).read()
        again, _, _ = load_network(p2, prune=False)
        assert again == back


def test_roundtrip_exact_values(tmp_path):
    w = np.zeros((4, 4))
    w[0, 1], w[1, 2], w[3, 0] = 0.1 + 0.2, 1 / 3, 1e-300
    net = MultilayerNetwork(w, 2, ["a", "b"], ["x", "y"])
    write_edges(net, tmp_path / "n.csv")
    back, _, _ = load_network(tmp_path / "n.csv")
    assert back == net


def test_serialization_order(tmp_path):
    edges = [
        EdgeRecord("b", "y", "a", "x", 1.0),
        EdgeRecord("a", "y", "b", "y", 2.0),
        EdgeRecord("b", "x", "a", "y", 3.0),
        EdgeRecord("a", "x", "b", "x", 4.0),
    ]
    net, _ = build_network(edges)
    write_edges(net, tmp_path / "o.csv")
    lines = (tmp_path / "o.csv").read_text().splitlines()
    assert lines == [
        ",".join(HEADER),
        "a,x,b,x,4",
        "b,x,a,y,3",
        "a,y,b,y,2",
        "b,y,a,x,1",
    ]
