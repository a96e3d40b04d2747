import io
import json
import sys

import pytest

from tensorcat.catalog import make_algebra, make_category
from tensorcat.cli import main
from tensorcat.fileio import (algebra_from_json, algebra_to_json,
                              category_from_json, category_to_json,
                              dumps_canonical, module_from_json,
                              module_to_json, report_schema)
from tensorcat.fincat import validate_category
from tensorcat.algebra import validate_algebra


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_category_roundtrip(tmp_path):
    for name in ("z2", "fibonacci", "mmf2"):
        cat = make_category(*{
            "z2": ("pointed", {"n": 2}),
            "fibonacci": ("fibonacci", {}),
            "mmf2": ("matrix_multifusion", {"n": 2}),
        }[name])
        blob = category_to_json(cat)
        again = category_from_json(json.loads(dumps_canonical(blob)))
        assert validate_category(again).ok
        assert category_to_json(again) == blob


def test_algebra_roundtrip():
    cat = make_category("pointed", {"n": 3})
    A = make_algebra(cat, "regular_pointed", {})
    blob = algebra_to_json(A)
    again = algebra_from_json(cat, json.loads(dumps_canonical(blob)))
    assert validate_algebra(again).ok
    assert algebra_to_json(again) == blob


def test_module_roundtrip():
    from tensorcat.modcat import free_module, validate_module
    cat = make_category("pointed", {"n": 2})
    A = make_algebra(cat, "regular_pointed", {})
    m = free_module(cat.simple("g1"), A)
    blob = module_to_json(m)
    again = module_from_json(A, blob)
    assert validate_module(again).ok
    assert module_to_json(again) == blob


def test_cross_label_triple_rejected():
    from tensorcat.fileio import FormatError
    cat = make_category("pointed", {"n": 2})
    A = make_algebra(cat, "regular_pointed", {})
    blob = algebra_to_json(A)
    bad = json.loads(dumps_canonical(blob))
    # mult entry [in, out, scalar]: force a label-crossing out index
    entry = list(bad["mult"][0])
    entry[1] = (entry[1] + 1) % 2
    bad["mult"][0] = entry
    with pytest.raises(FormatError):
        algebra_from_json(cat, bad)


def test_cli_catalog_validate_analyze(tmp_path, capsys):
    cat_p = str(tmp_path / "c.json")
    alg_p = str(tmp_path / "a.json")
    rc, _, _ = run_cli(capsys, "catalog", "emit", "z2_f2", "--out", cat_p)
    assert rc == 0
    rc, _, _ = run_cli(capsys, "catalog", "emit", "z2_f2/regular",
                       "--out", alg_p)
    assert rc == 0
    rc, out, _ = run_cli(capsys, "validate", cat_p, alg_p)
    assert rc == 0
    assert "pass" in out
    rc, out, _ = run_cli(capsys, "analyze", cat_p, alg_p, "--report", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["flags"] == {"semisimple": True, "simple": True,
                            "division": True, "separable": False}
    assert rep["dim_A"] == ["0"]


def test_cli_analyze_deterministic_bytes(tmp_path, capsys):
    cat_p = str(tmp_path / "c.json")
    alg_p = str(tmp_path / "a.json")
    run_cli(capsys, "catalog", "emit", "z2", "--out", cat_p)
    run_cli(capsys, "catalog", "emit", "z2/regular", "--out", alg_p)
    rc1, out1, _ = run_cli(capsys, "analyze", cat_p, alg_p,
                           "--report", "json")
    rc2, out2, _ = run_cli(capsys, "analyze", cat_p, alg_p,
                           "--report", "json")
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_cli_global_dim(tmp_path, capsys):
    cat_p = str(tmp_path / "fib.json")
    run_cli(capsys, "catalog", "emit", "fibonacci", "--out", cat_p)
    rc, out, _ = run_cli(capsys, "global-dim", cat_p, "--report", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["global_dimension"] == ["2", "1"]      # 2 + phi
    assert rep["center_semisimple"] is True
    rc, out, _ = run_cli(capsys, "global-dim", cat_p)
    assert "approximate" in out


def test_cli_decompose(tmp_path, capsys):
    cat_p = str(tmp_path / "c.json")
    alg_p = str(tmp_path / "a.json")
    run_cli(capsys, "catalog", "emit", "vec_q", "--out", cat_p)
    run_cli(capsys, "catalog", "emit", "vec_q/end_1", "--out", alg_p)
    rc, out, _ = run_cli(capsys, "decompose", cat_p, alg_p, "--report", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["matrix_decomposition"]["object_identity_holds"] is True


def test_cli_base_extend(tmp_path, capsys):
    cat_p = str(tmp_path / "c.json")
    alg_p = str(tmp_path / "a.json")
    out_c = str(tmp_path / "c4.json")
    out_a = str(tmp_path / "a4.json")
    run_cli(capsys, "catalog", "emit", "vec_f2", "--out", cat_p)
    run_cli(capsys, "catalog", "emit", "vec_f2/group2", "--out", alg_p)
    rc, out, _ = run_cli(capsys, "base-extend", cat_p, alg_p,
                         "--minpoly", "1,1,1",
                         "--out-category", out_c, "--out-algebra", out_a)
    assert rc == 0
    rc, out, _ = run_cli(capsys, "analyze", out_c, out_a, "--report", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["flags"]["separable"] is False
    assert rep["field"] == {"char": 2, "minpoly": ["1", "1", "1"], "gen": "a"}


def test_cli_validate_broken_file(tmp_path, capsys):
    cat_p = str(tmp_path / "broken.json")
    run_cli(capsys, "catalog", "emit", "fibonacci", "--out", cat_p)
    blob = json.load(open(cat_p))
    for fblk in blob["F"]:
        if fblk["abcd"] == ["t", "t", "t", "t"]:
            fblk["entries"][0][0] = ["-1", "-1"]
    json.dump(blob, open(cat_p, "w"))
    rc, out, _ = run_cli(capsys, "validate", cat_p)
    assert rc == 1
    assert "pentagon" in out


def test_cli_unknown_flag_is_error(capsys):
    rc, _, err = run_cli(capsys, "analyze", "x.json", "y.json", "--bogus")
    assert rc == 1


def test_cli_unknown_catalog_entry(capsys):
    rc, _, err = run_cli(capsys, "catalog", "emit", "nope", "--out", "/tmp/x")
    assert rc == 1
    assert "unknown" in err


def test_cli_missing_file(capsys):
    rc, _, err = run_cli(capsys, "validate", "/nonexistent/file.json")
    assert rc == 1


def test_cli_schema_roundtrip(capsys, tmp_path):
    rc, out, _ = run_cli(capsys, "schema")
    assert rc == 0
    schema = json.loads(out)
    assert schema["schema_version"] == "1"
    assert schema == report_schema()
    # every golden report satisfies the schema's required-key contract
    cat_p = str(tmp_path / "c.json")
    alg_p = str(tmp_path / "a.json")
    run_cli(capsys, "catalog", "emit", "z2", "--out", cat_p)
    run_cli(capsys, "catalog", "emit", "z2/trivial", "--out", alg_p)
    rc, out, _ = run_cli(capsys, "analyze", cat_p, alg_p, "--report", "json")
    rep = json.loads(out)
    for key in schema["required"]:
        assert key in rep
    assert json.loads(dumps_canonical(rep)) == rep


def test_cli_jobs_parallel(tmp_path, capsys):
    cat_p = str(tmp_path / "c.json")
    a1 = str(tmp_path / "a1.json")
    a2 = str(tmp_path / "a2.json")
    run_cli(capsys, "catalog", "emit", "z2", "--out", cat_p)
    run_cli(capsys, "catalog", "emit", "z2/trivial", "--out", a1)
    run_cli(capsys, "catalog", "emit", "z2/regular", "--out", a2)
    rc_seq, out_seq, _ = run_cli(capsys, "analyze", cat_p, a1, a2,
                                 "--report", "json")
    rc_par, out_par, _ = run_cli(capsys, "analyze", cat_p, a1, a2,
                                 "--report", "json", "--jobs", "2")
    assert rc_seq == rc_par == 0
    assert out_seq == out_par


def test_cli_twisted_regular_obstruction(tmp_path, capsys):
    rc, _, err = run_cli(capsys, "catalog", "emit", "z2_twisted/regular",
                         "--out", str(tmp_path / "x.json"))
    assert rc == 1
    assert "cocycle" in err.lower()


def test_cli_exit_2_on_undetermined(tmp_path, capsys, monkeypatch):
    # with a starved search budget the adjoint-isomorphism criterion on a
    # two-block algebra cannot certify either way: every hom-basis element
    # is a one-block projection with singular beta
    from tensorcat.algebra import direct_sum_algebra, trivial_algebra
    from tensorcat.fileio import save_json
    cat = make_category("vec", {})
    two = direct_sum_algebra(trivial_algebra(cat), trivial_algebra(cat))
    cat_p = str(tmp_path / "c.json")
    alg_p = str(tmp_path / "a.json")
    save_json(cat_p, category_to_json(cat))
    save_json(alg_p, algebra_to_json(two))
    monkeypatch.setenv("TENSORCAT_BUDGET", "1")
    rc, out, _ = run_cli(capsys, "analyze", cat_p, alg_p, "--report", "json")
    monkeypatch.delenv("TENSORCAT_BUDGET")
    assert rc == 2
    rep = json.loads(out)
    assert rep["oracle_agreement"]["separable_adjoint_iso"] == "undetermined"
    rc, out, _ = run_cli(capsys, "analyze", cat_p, alg_p, "--report", "json")
    assert rc == 0
    assert json.loads(out)["oracle_agreement"]["separable_adjoint_iso"] is True
