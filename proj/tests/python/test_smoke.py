"""Smoke tests for the Python bindings. Runs under pytest or as a plain script."""

import math
import os
import pathlib

import rtergm

DATA = pathlib.Path(os.environ.get("RTERGM_DATA", pathlib.Path(__file__).resolve().parents[2] / "data" / "tutorial"))


def test_graph_roundtrip():
    g = rtergm.DirectedGraph.from_edges([(0, 1), (1, 2), (2, 0)], 4)
    assert g.edge_count == 3
    assert g.has_edge(0, 1) and not g.has_edge(1, 0)
    assert g.in_degree(0) == 1
    assert rtergm.max_in_degree(g) == 1
    assert rtergm.shared_partners_otp(g, 0, 2) == 1


def test_statistics_and_mple_on_tutorial():
    nodes = rtergm.parse_node_csv((DATA / "nodes.csv").read_text())
    edges = rtergm.parse_edge_list((DATA / "edges.tsv").read_text())
    g = rtergm.DirectedGraph.from_edges(edges, len(nodes))
    spec = rtergm.load_model_spec(str(DATA / "model.toml"))
    stats = rtergm.statistics(g, nodes, spec)
    assert len(stats) == len(spec)
    assert stats[0] == g.edge_count
    fit = rtergm.mple(g, nodes, spec)
    assert fit.method == "MPLE"
    assert fit.term_names == spec.names()
    assert all(math.isfinite(b) for b in fit.theta)
    assert math.isclose(fit.odds_ratios[1], math.exp(fit.theta[1]), rel_tol=1e-12)
    assert "Triadic closure" in rtergm.report_table(fit, spec)


def test_simulate_is_reproducible():
    nodes = rtergm.NodeTable.uniform(20)
    spec = rtergm.ModelSpec([rtergm.TermSpec.edges()])
    config = rtergm.SamplerConfig()
    config.burn_in = 1000
    config.interval = 50
    config.sample_size = 10
    config.seed = 11
    a = rtergm.simulate(spec, [-2.0], nodes, config)
    b = rtergm.simulate(spec, [-2.0], nodes, config)
    assert [s.stats for s in a] == [s.stats for s in b]
    assert len(a) == 10


def test_ingest_and_describe():
    records = rtergm.load_tweets(str(DATA / "tweets.csv"))
    roles = rtergm.parse_role_csv((DATA / "roles.csv").read_text())
    net = rtergm.build_network(records, limit=20, roles=roles)
    assert len(net.log) == 20
    summary = rtergm.describe(net)
    assert summary["edges"] == 20
    assert "Organization" in summary["roles"]


def test_krippendorff_alpha():
    a = ["x", "x", "y", "y", None]
    assert math.isclose(rtergm.krippendorff_alpha(a, a), 1.0)


def test_errors_carry_context():
    try:
        rtergm.parse_model_spec('[[term]]\nkind = "gwesp_otp"\ndecay = -1\n')
    except rtergm.RtergmError as err:
        assert err.module
        assert err.operation
        assert err.code
        assert "line 3" in str(err)
    else:
        raise AssertionError("invalid decay was accepted")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
