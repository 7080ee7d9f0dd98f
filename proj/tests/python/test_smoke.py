import math

import numpy as np
import pytest

import katolab


def test_helium_count():
    s = katolab.helium_shells()
    assert (s["k_max"], s["count"]) == (42, 25585)
    assert katolab.helium_shells(math.inf)["unbounded"]


def test_errors_are_value_errors():
    with pytest.raises(ValueError, match="not Hermitian"):
        katolab.eigh(np.array([[0, 1], [0, 0]], dtype=complex))


def test_eigh_and_series():
    h0 = np.diag([0.0, 1.0, 2.0]).astype(complex)
    vals, _, clusters = katolab.eigh(h0)
    assert np.allclose(vals, [0, 1, 2])
    assert len(clusters) == 3
    b = np.zeros((3, 3), dtype=complex)
    b[0, 1] = b[1, 0] = 1
    e = katolab.rs_series(h0, b, 0, 4)
    assert e[:3] == pytest.approx([0.0, 0.0, -1.0])


def test_projection_pair():
    c = s = 1 / math.sqrt(2)
    p = np.diag([1.0, 0.0]).astype(complex)
    q = np.array([[c * c, c * s], [c * s, s * s]], dtype=complex)
    u = katolab.kato_unitary(p, q)
    assert np.allclose(u @ p @ u.conj().T, q)
    assert katolab.trace_index(p, q) == 0


def test_resummation():
    euler = [(-1) ** n * math.factorial(n) for n in range(21)]
    assert katolab.borel_sum(euler, 1.0) == pytest.approx(0.5963473623231940, abs=1e-8)
    a = katolab.quartic_coefficients(4)
    assert a[:3] == pytest.approx([1.0, 0.75, -1.3125])


def test_models():
    assert katolab.wvn_potential(0.0) == 0.0
    assert katolab.hardy_constant(3) >= 0.25
    e = katolab.rank_one_eigenvalue(1e-4, "inv_sqrt")
    assert -1 < e < -0.9


def test_run_record():
    rec = katolab.run("models", name="helium", seed=3)
    assert rec["pass"] and rec["seed"] == 3
    assert list(rec)[:4] == ["experiment_id", "subcommand", "version", "seed"]
    with pytest.raises(ValueError, match="unknown config key"):
        katolab.run("models", bogus=1)


def test_records_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import json
    import pathlib

    schema = json.loads((pathlib.Path(__file__).parents[2] / "docs" / "result_schema.json").read_text())
    jsonschema.validate(katolab.run("resum", mode="trotter"), schema)
    jsonschema.validate(katolab.run("models", name="helium", mass_ratio="list(1;99)"), schema)
