from __future__ import annotations

import io
import json

import pytest

from cftbench.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, run
from cftbench.config import ConfigError, RunConfig
from cftbench.serialize import load_artifact

SU2 = ["--algebra", "su", "--n", "2"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def js(*argv):
    code, out, err = call(*argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_enumerate_level10():
    res = js("invariants", "enumerate", *SU2, "--level", "10")
    assert res["count"] == 3
    assert sorted(x["name"] for x in res["invariants"]) == ["A11", "D7", "E6"]
    assert all(x["verified"] for x in res["invariants"])


def test_charges_e7():
    res = js("charges", *SU2, "--level", "16", "--nimrep", "e7")
    assert res["invariant_factors"] == [2]


def test_torus_classify():
    res = js("torus", "classify", "--gram", "[[2]]")
    assert res["count"] == 1
    assert res["q"] == {"(0,)": "0", "(1,)": "1/2"}


def test_exit_codes(tmp_path):
    assert call("nimrep", "d", "--level", "4")[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE
    assert call()[0] == EXIT_USAGE
    assert call("torus", "classify", "--gram", "[[3]]")[0] == EXIT_USAGE
    assert call("torus", "classify", "--gram", "[[160]]", "--cap-search", "10")[0] == EXIT_CAP
    assert call("invariants", "enumerate", *SU2, "--level", "4", "--cap-conductor", "4")[0] == EXIT_CAP
    # a matrix that is not modular invariant
    res = js("invariants", "enumerate", *SU2, "--level", "4")
    art = res["invariants"][0]
    art["Z"][0][1] = 1
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(art))
    assert call("invariants", "verify", "--file", str(f))[0] == EXIT_VERIFY


def test_round_trips(tmp_path):
    res = js("invariants", "enumerate", *SU2, "--level", "16")
    for art in res["invariants"]:
        Z, d = load_artifact(art)
        assert Z.Z.shape == (d.size, d.size)
        f = tmp_path / "inv.json"
        f.write_text(json.dumps(art))
        assert call("invariants", "verify", "--file", str(f))[0] == EXIT_OK
    out = tmp_path / "e6.json"
    assert call("nimrep", "e6", *SU2, "--level", "10", "--out", str(out))[0] == EXIT_OK
    assert call("nimrep", "verify", "--file", str(out))[0] == EXIT_OK


def test_determinism():
    argv = ("double", "zp", "--p", "3")
    assert call(*argv)[1] == call(*argv)[1]
    argv = ("torus", "pipeline", "--gram", "[[2,1],[1,4]]")
    assert call(*argv)[1] == call(*argv)[1]


def test_formats():
    code, out, _ = call("invariants", "enumerate", *SU2, "--level", "4", "--format", "csv")
    assert code == EXIT_OK and out.startswith("# invariant 0,")
    code, out, _ = call("nimrep", "d", *SU2, "--level", "4", "--format", "dot")
    assert code == EXIT_OK and out.lstrip().startswith("graph")


def test_config(tmp_path, monkeypatch):
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"bogus": 1})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"search_caps": {"nope": 3}})
    with pytest.raises(ConfigError):
        RunConfig(format="xml")
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"search_caps": {"torus": 5}}))
    monkeypatch.setenv("WORKBENCH_CONFIG", str(cfg))
    assert RunConfig.load().cap("torus") == 5
    assert call("torus", "classify", "--gram", "[[24]]")[0] == EXIT_CAP
    cfg.write_text(json.dumps({"colour": "red"}))
    assert call("torus", "classify", "--gram", "[[2]]")[0] == EXIT_USAGE


def test_reproduce_fixtures():
    res = js("reproduce", "all")
    assert set(res["fixtures"]) == {"ade", "dihedral", "table1", "torus"}
    assert all(v == "same" for v in res["fixtures"].values()), res
