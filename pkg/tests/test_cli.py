import json

from essmod import cli, properties, runner, serialize
from essmod.generate import gen_field, gen_right_ideal


def run_cli(args, tmp_path, stdin_doc=None, monkeypatch=None, capsys=None):
    return cli.main(args)


def gen_to_file(tmp_path, name, args):
    path = tmp_path / name
    code = cli.main(["gen", *args, "--out", str(path)])
    assert code == 0
    return path


def test_gen_is_byte_identical_across_runs(tmp_path):
    p1 = gen_to_file(tmp_path, "a.json", ["--kind", "right_ideal", "--blocks", "2,3", "--seed", "7"])
    p2 = gen_to_file(tmp_path, "b.json", ["--kind", "right_ideal", "--blocks", "2,3", "--seed", "7"])
    assert p1.read_bytes() == p2.read_bytes()


def test_gen_check_flow_full_module(tmp_path):
    inst = gen_to_file(tmp_path, "m.json", ["--kind", "module_submodule", "--blocks", "2", "--k", "2", "--seed", "4"])
    out = tmp_path / "report.json"
    code = cli.main(["check", "--in", str(inst), "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["kind"] == "check_report"
    assert report["checks_ok"] is True
    assert "decision" in report


def test_check_planted_field_matches_ground_truth(tmp_path):
    for defect, expected in (("interval", False), ("points", True), ("none", True)):
        inst = gen_to_file(
            tmp_path,
            f"f_{defect}.json",
            ["--kind", "field", "--d", "2", "--pieces", "4", "--generators", "2",
             "--defect", defect, "--seed", "3"],
        )
        doc = json.loads(inst.read_text())
        out = tmp_path / f"r_{defect}.json"
        assert cli.main(["check", "--in", str(inst), "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["decision"] == expected == doc["expected"]["essential"]


def test_witness_flow_ideal(tmp_path):
    inst = gen_to_file(tmp_path, "i.json", ["--kind", "right_ideal", "--blocks", "2,2", "--seed", "12"])
    out = tmp_path / "w.json"
    assert cli.main(["witness", "--in", str(inst), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    w = report["witness"]
    assert w["fa_p_error"] <= 1e-9
    assert w["max_probe_error"] <= 1e-8
    assert w["max_membership_error"] <= 1e-8
    assert report["checks_ok"]


def test_witness_flow_fields(tmp_path):
    ess = gen_to_file(tmp_path, "fe.json", ["--kind", "field", "--d", "2", "--defect", "points", "--seed", "5"])
    out = tmp_path / "we.json"
    assert cli.main(["witness", "--in", str(ess), "--out", str(out)]) == 0
    w = json.loads(out.read_text())["witness"]
    assert w["kind"] == "essential" and w["residual_empty"] and w["ma_nonzero"]

    non = gen_to_file(tmp_path, "fn.json", ["--kind", "field", "--d", "2", "--defect", "interval", "--seed", "5"])
    out2 = tmp_path / "wn.json"
    assert cli.main(["witness", "--in", str(non), "--samples", "8", "--out", str(out2)]) == 0
    w2 = json.loads(out2.read_text())["witness"]
    assert w2["kind"] == "non_essential"
    assert len(w2["samples"]) == 8
    assert w2["inductive"]["sample_defects_verified"]
    assert w2["all_verified"]


def test_check_zero_ideal_is_not_essential(tmp_path):
    from essmod.algebra import AlgebraElement, AlgebraShape
    from essmod.serialize import element_to_json, shape_to_json

    shape = AlgebraShape((2, 3))
    doc = serialize.instance_to_json(
        "right_ideal",
        {
            "shape": shape_to_json(shape),
            "support_projection": element_to_json(AlgebraElement.zeros(shape)),
        },
        None,
    )
    inst = tmp_path / "zero.json"
    inst.write_text(serialize.dumps(doc))
    out = tmp_path / "zr.json"
    assert cli.main(["check", "--in", str(inst), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["decision"] is False
    assert report["certificate"]["intersection_dim"] == 0


def test_witness_flow_module(tmp_path):
    inst = gen_to_file(tmp_path, "ms.json", ["--kind", "module_submodule", "--blocks", "2", "--k", "2", "--seed", "9"])
    out = tmp_path / "wm.json"
    assert cli.main(["witness", "--in", str(inst), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    if not report["decision"]:
        assert report["witness"]["probe_found"] is False


def test_stdin_stdout_roundtrip(tmp_path, capsys, monkeypatch):
    import io

    doc = gen_right_ideal((2,), 3)
    monkeypatch.setattr("sys.stdin", io.StringIO(serialize.dumps(doc)))
    assert cli.main(["check"]) == 0
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["instance_digest"] == serialize.digest(doc)


def test_schema_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "essmod/1", "kind": "nope", "payload": {}}')
    assert cli.main(["check", "--in", str(bad)]) == 2
    assert "input error" in capsys.readouterr().err
    missing = tmp_path / "missing.json"
    assert cli.main(["check", "--in", str(missing)]) == 2
    notjson = tmp_path / "nj.json"
    notjson.write_text("{{{")
    assert cli.main(["check", "--in", str(notjson)]) == 2


def test_gen_size_cap_exits_2(capsys):
    assert cli.main(["gen", "--kind", "field", "--d", "9", "--seed", "0"]) == 2


def test_json_pretty_flag(tmp_path):
    plain = gen_to_file(tmp_path, "p1.json", ["--kind", "right_ideal", "--blocks", "2", "--seed", "1"])
    pretty = tmp_path / "p2.json"
    cli.main(["gen", "--kind", "right_ideal", "--blocks", "2", "--seed", "1", "--out", str(pretty), "--json-pretty"])
    assert json.loads(plain.read_text()) == json.loads(pretty.read_text())
    assert plain.read_text().count("\n") < pretty.read_text().count("\n")


def test_suite_cli_runs_and_exits_zero(tmp_path):
    out = tmp_path / "suite.json"
    assert cli.main(["suite", "--seed", "42", "--trials", "2", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True
    names = [p["name"] for p in report["properties"]]
    assert names == sorted(names)


def test_suite_digest_reproducible(tmp_path):
    a = properties.run_suite(7, 2)
    b = properties.run_suite(7, 2)
    assert a["digest"] == b["digest"]
    assert a["digest"] != properties.run_suite(8, 2)["digest"]


def test_suite_exit_code_on_injected_fault(tmp_path, monkeypatch):
    """Negating one property check makes the suite fail exactly that one."""

    def negated_theta_norm(rng, trials):
        res = properties.prop_theta_norm_bound(rng, trials)
        return properties.PropertyResult(
            res.name, not res.passed, res.trials, res.trials - res.failures
        )

    patched = [
        negated_theta_norm if p is properties.prop_theta_norm_bound else p
        for p in properties.PROPERTIES
    ]
    monkeypatch.setattr(properties, "PROPERTIES", patched)
    out = tmp_path / "fault.json"
    assert cli.main(["suite", "--seed", "42", "--trials", "2", "--out", str(out)]) == 1
    report = json.loads(out.read_text())
    failing = [p["name"] for p in report["properties"] if not p["passed"]]
    assert failing == ["module.theta_norm_bound"]


def test_run_check_reports_have_stable_digest():
    doc = gen_field(2, 4, 2, "interval", 21)
    r1 = runner.run_check(doc)
    r2 = runner.run_check(doc)
    assert r1["digest"] == r2["digest"]
    body1 = {k: v for k, v in r1.items() if k not in ("digest", "timing_ms")}
    assert serialize.digest(body1) == r1["digest"]
