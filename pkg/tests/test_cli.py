import json

import pytest

from godeaux.cli import build_parser, derive_seed, main, resolve_config


def run(*argv):
    return main([str(a) for a in argv])


def load(path):
    return json.loads(path.read_text())


def test_sample_line_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("sample-line", "--seed", 4, "--out", a) == 0
    assert run("sample-line", "--seed", 4, "--out", b) == 0
    for name in ("line.json", "manifest.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert run("sample-line", "--seed", 5, "--out", b) == 0
    assert (a / "line.json").read_bytes() != (b / "line.json").read_bytes()


def test_seed_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 5, "trials": 3}))
    ap = build_parser()
    args = ap.parse_args(["sweep", "--config", str(cfg)])
    assert resolve_config(args, {}).seed == 5
    assert resolve_config(args, {"GODEAUX_SEED": "7"}).seed == 7
    args = ap.parse_args(["sweep", "--config", str(cfg), "--seed", "9"])
    c = resolve_config(args, {"GODEAUX_SEED": "7"})
    assert c.seed == 9 and c.trials == 3


def test_config_errors_exit_2(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"sed": 1}))
    assert run("sample-line", "--config", cfg) == 2
    assert "'sed'" in capsys.readouterr().err
    assert run("sample-line", "--field", 32234) == 2
    assert run("sample-line", "--through", "nowhere") == 2
    assert run("build", "--line", tmp_path / "missing.json") == 2
    (tmp_path / "bad.json").write_text("{not json")
    assert run("build", "--line", tmp_path / "bad.json") == 2


def test_field_mismatch(tmp_path, capsys):
    assert run("sample-line", "--out", tmp_path) == 0
    assert run("build", "--line", tmp_path / "line.json", "--field", 101,
               "--out", tmp_path) == 2
    assert "field" in capsys.readouterr().err


def test_derive_idempotent_and_repairs_cache(tmp_path):
    assert run("derive", "--out", tmp_path) == 0
    good = (tmp_path / "relations.json").read_bytes()
    mtime = (tmp_path / "relations.json").stat().st_mtime_ns
    assert run("derive", "--out", tmp_path) == 0
    assert (tmp_path / "relations.json").stat().st_mtime_ns == mtime
    (tmp_path / "relations.json").write_text("garbage")
    assert run("derive", "--out", tmp_path) == 0
    assert (tmp_path / "relations.json").read_bytes() == good


def test_family_build_verify_classify(tmp_path):
    out = tmp_path
    assert run("family", "z5", "--p", "1,3", "--q", "2,5", "--out", out) == 0
    assert run("build", "--line", out / "line.json", "--out", out) == 0
    assert load(out / "solution_space.json")["projective_dim"] == 9
    rep = load(out / "report.json")
    assert rep["ok"] and "timings" not in rep
    assert (out / "timings.json").exists()
    assert run("verify", out / "resolution.json", "--out", out) == 0
    assert run("classify", "--resolution", out / "resolution.json", "--max-bidegree", "1,3",
               "--out", out) == 0
    cls = load(out / "classification.json")
    assert cls["b"] == 2 and cls["torsion_group"] == "Z5"
    assert cls["bidegree_table"] == [{"p": 1, "q": 2, "count": 1}]
    man = load(out / "manifest.json")
    assert man["command"] == "classify" and man["outputs"] == ["classification.json"]


def test_build_with_explicit_coefficients(tmp_path):
    assert run("sample-line", "--seed", 2, "--out", tmp_path) == 0
    assert run("build", "--line", tmp_path / "line.json", "--coeffs", "1,0,0,0",
               "--out", tmp_path) == 0
    assert load(tmp_path / "report.json")["ok"]
    assert run("build", "--line", tmp_path / "line.json", "--coeffs", "1,2",
               "--out", tmp_path) == 2


def test_hyp_family_and_avoid(tmp_path):
    assert run("family", "hyp", "--seed", 1, "--out", tmp_path) == 0
    assert run("classify", "--line", tmp_path / "line.json", "--no-normal-bundle",
               "--out", tmp_path) == 0
    assert load(tmp_path / "classification.json")["hyperelliptic_count"] == 1
    assert run("sample-line", "--avoid", "hyp,i3e", "--out", tmp_path) == 0


def test_sweep_worker_count_does_not_change_output(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("sweep", "--trials", 2, "--seed", 3, "--out", a) == 0
    assert run("sweep", "--trials", 2, "--seed", 3, "--workers", 2, "--out", b) == 0
    assert (a / "sweep.json").read_bytes() == (b / "sweep.json").read_bytes()
    sw = load(a / "sweep.json")
    assert [t["trial"] for t in sw["trials"]] == [0, 1]
    assert sw["s_histogram"] == {"3": 2}


def test_derive_seed_is_stable():
    assert derive_seed(0, 1, 2) == derive_seed(0, 1, 2)
    assert derive_seed(0, 1, 2) != derive_seed(0, 2, 1)
    assert 0 <= derive_seed(2**70, 1) < 2**63


def test_every_artifact_round_trips(tmp_path):
    from godeaux.classify.report import ClassificationReport
    from godeaux.construct import ResolutionCandidate, SolutionSpace, VerifyReport
    from godeaux.godeaux_data import RelationSystem
    from godeaux.qgeom import Line
    out = tmp_path
    assert run("family", "z5", "--p", "1,1", "--q", "1,2", "--out", out) == 0
    assert run("build", "--line", out / "line.json", "--out", out) == 0
    assert run("classify", "--resolution", out / "resolution.json", "--max-bidegree", "1,2",
               "--out", out) == 0
    assert run("derive", "--out", out) == 0
    loaders = {"line.json": Line, "solution_space.json": SolutionSpace,
               "resolution.json": ResolutionCandidate, "report.json": VerifyReport,
               "classification.json": ClassificationReport}
    for name, cls in loaders.items():
        data = load(out / name)
        assert cls.from_json(data).to_json() == data, name
    data = load(out / "relations.json")
    assert RelationSystem.from_json(data).to_json() == data
    cls = load(out / "classification.json")
    assert cls["torsion_group"] == "Z5"


def test_verify_rejects_mismatched_field(tmp_path, capsys):
    out = tmp_path
    assert run("family", "z5", "--out", out) == 0
    assert run("build", "--line", out / "line.json", "--out", out) == 0
    assert run("verify", out / "resolution.json", "--field", 32237, "--out", out) == 2
    assert "field" in capsys.readouterr().err


def test_sweep_through_rank_two_p3_matches_stratification(tmp_path):
    # lines from a point of a P^3 in V(I_3(e)) give s in {6, 12, 31}; only s = 6
    # satisfies the ring condition
    assert run("sweep", "--through", "e3_linear_0", "--trials", 5, "--level", "full",
               "--workers", 2, "--out", tmp_path) == 0
    trials = load(tmp_path / "sweep.json")["trials"]
    for t in trials:
        assert t["s"] in (6, 12, 31)
        assert t["rc"] == (t["s"] == 6)
