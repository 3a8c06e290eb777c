import json
import math

import numpy as np
import pytest

import qsl2r


def test_principal_module_relations_and_unitarity():
    m = qsl2r.build_principal_q(2.0, 1.0, 1, complex(0.5, math.sqrt(3) / 2), 40)
    assert len(m) == len(m.window) == 41
    assert isinstance(m.X, np.ndarray) and m.X.shape == (41, 41)
    reports = qsl2r.check_relations(m)
    assert len(reports) == 6
    assert all(r["pass"] and r["residual"] < 1e-10 for r in reports)
    assert qsl2r.check_unitarity(m)["pass"]
    bad = qsl2r.build_principal_q(2.0, 1.0, 1, 2.0, 40)
    assert qsl2r.check_unitarity(bad)["residual"] > 0.1


def test_module_json_field_order():
    m = qsl2r.build_discrete_q(0.5, 1.0, 1, 1, 1, 12)
    doc = json.loads(m.to_json())
    assert list(doc)[:9] == ["family", "q", "t", "epsilon", "lambda", "order", "window", "weights", "matrices"]
    assert doc["order"] == {"sigma": 1, "n": 1, "sign": 1}


def test_limit_families():
    for m in (qsl2r.build_motion(1j, 1, 40), qsl2r.build_groupoid(1j, -1, 40, 2.0),
              qsl2r.build_classical_principal(2.5j, -1, 60)):
        assert all(r["pass"] for r in qsl2r.check_relations(m))


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        qsl2r.build_principal_q(2.0, 0.0, 1, 1j, 10)
    with pytest.raises(ValueError):
        qsl2r.build_groupoid(2.0, 1, 10, 2.0)


def test_weights_and_convergence():
    assert qsl2r.discrete_weight_discrepancy(2.0, 3, -1, 60) < 1e-12
    row = qsl2r.convergence("t", 2.0, 1, 1.0)
    assert 0.9 <= row["slope"] <= 1.1


def test_mackey_and_ktheory():
    table = qsl2r.mu_table(2.0, 37, 4)
    assert ["DiscreteQ(1,2,+)", "GroupoidChar(1,3)"] in table
    assert len(table) == len(qsl2r.enumerate_spectrum("qreduced", 2.0, 37, 4))
    r = qsl2r.verify_mu(2.0, 6, 37)
    assert r["pass"]
    assert r["witness"] == ("GroupoidChar(1,3)", "DiscreteQ(1,2,+)")
    k = qsl2r.k_summary(2.0, 0)
    assert k["K0"] == "ℤ ⊕ ℤ³ ⊕ ℤ⁴" and k["K1"] == "0"
    assert qsl2r.wm(2) == [-1, 1]
    g = qsl2r.closure_graph("qreduced", 2.0, 2, 9)
    assert set(g) == {"nodes", "edges"}
