"""Smoke tests for the compiled extension, run with PYTHONPATH at the build dir."""

import json

import _core


def test_graph_basics():
    g = _core.ExclusivityGraph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    assert g.n == 5
    assert len(g.edges) == 5
    assert g.has_edge(1, 2)
    assert not g.has_edge(1, 3)
    back = _core.ExclusivityGraph.from_json(g.to_json())
    assert back.edges == g.edges


def test_bounds_on_c5():
    g = _core.ExclusivityGraph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    alpha, witness = _core.independence_number(g)
    assert alpha == 2
    assert len(witness) == 2
    theta = _core.lovasz_theta(g)
    assert abs(theta["value"] - 5 ** 0.5) < 1e-4
    packing = _core.fractional_packing(g)
    assert packing["value"] == "5/2"
    assert packing["weights"] == ["1/2"] * 5


def test_canonical_task():
    g = _core.canonical_graph()
    assert g.n == 10
    assert len(g.edges) == 21
    alpha, _ = _core.independence_number(g)
    assert alpha == 3

    report = json.loads(_core.bounds_report(g))
    assert report["alpha"] == 3
    assert report["alpha_star"] == "7/2"
    assert report["no_postquantum_advantage"] is True
    assert abs(report["theta"] - 3.5) < 1e-4

    realization = _core.canonical_realization()
    assert _core.quantum_sum(realization) == "7/2"
    verification = json.loads(_core.verify_realization(realization, g.to_json(), "0"))
    assert verification["violation_count"] == 0


def test_orthogonality_graph_accepts_mixed_entries():
    g = _core.orthogonality_graph([[1, 0], [0, "1/2"], [(0, 1), 0]], "0")
    # e1 and (i, 0) are parallel: the only edges pair them with e2.
    assert g.n == 3
    assert sorted(g.edges) == [(1, 2), (2, 3)]


def test_simulation_is_deterministic():
    g = _core.canonical_graph()
    realization = _core.canonical_realization()
    a = _core.run_experiment(realization, g.to_json(), shots=2000, seed=11)
    b = _core.run_experiment(realization, g.to_json(), shots=2000, seed=11)
    assert a == b
    report = json.loads(a)
    assert report["seed"] == 11
    assert report["epsilon"]["certified"] is True
    c = _core.run_experiment(realization, g.to_json(), shots=2000, seed=12)
    assert c != a


def test_photonics_roundtrip():
    target = [0.5, 0.5, -0.5j, 0.5j]
    setup = _core.design_preparation(target)
    amplitudes, success = _core.prepare_state(setup)
    assert 0 < success <= 1
    ip = sum(a.conjugate() * t for a, t in zip(amplitudes, target))
    norm_a = sum(abs(a) ** 2 for a in amplitudes)
    norm_t = sum(abs(t) ** 2 for t in target)
    assert abs(ip) ** 2 / (norm_a * norm_t) > 1 - 1e-9
    assert abs(_core.analyze_projection(target, target) - 1) < 1e-12


def test_epsilon_certify():
    report = json.loads(_core.epsilon_certify(3.49, 3, 10, []))
    assert abs(report["epsilon_threshold"] - 0.07) < 1e-12
    assert report["advantage"] is True
    negative = json.loads(_core.epsilon_certify(3.0, 3, 10, []))
    assert negative["advantage"] is False
    assert negative["certified"] is False
