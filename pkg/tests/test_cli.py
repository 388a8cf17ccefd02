import json
from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner

from afmpi import __version__
from afmpi.cli import cli
from afmpi.config import config
from afmpi.schemes import builtin_scheme, scheme_to_document
from afmpi.synthgen import write_fixture

CLI_GOLDEN = Path(__file__).parent / "golden" / "cli"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def run(runner, mini_files):
    households, persons = mini_files

    def invoke(*args):
        return runner.invoke(cli, [*args, "--households", households, "--persons", persons])

    return invoke


def _json(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def _error(result) -> dict:
    return json.loads(result.stderr.strip().splitlines()[-1])


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_compute_household(run, tmp_path):
    out = tmp_path / "run"
    result = run("compute", "--level", "household", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "n=6 q=3 H=50.0% A=43.3% M0=0.217" in result.stdout

    summary = _json(out / "summary.json")
    assert summary["table"] == "summary"
    assert summary["scheme_id"] == "khas_household"
    overall, female, male = summary["rows"]
    assert (overall["group"], overall["M0_num"], overall["M0_den"]) == ("all", 13, 60)
    assert (female["group_by"], female["group"], female["q"]) == ("head_sex", "female", 1)
    assert male["M0_num"] == 27

    attributed = _json(out / "attributed.json")["rows"]
    assert attributed[0] == {"head_sex": "all", "sex": "all", "n": 11, "poor": 5, "H_pct": "45.5", "H_num": 5, "H_den": 11}
    for name in ("summary.csv", "attributed.csv", "provenance.json", "manifest.json"):
        assert (out / name).exists(), name


def test_csv_and_json_carry_the_same_rows(run, tmp_path):
    out = tmp_path / "run"
    assert run("compute", "--level", "individual", "--out", str(out)).exit_code == 0
    rows = _json(out / "summary.json")["rows"]
    frame = pd.read_csv(out / "summary.csv", dtype=str, keep_default_na=False)
    assert len(frame) == len(rows)
    for record, row in zip(frame.to_dict("records"), rows):
        assert record == {key: "" if value is None else str(value) for key, value in row.items()}


def test_compute_individual_detail(run, tmp_path):
    out = tmp_path / "run"
    result = run("compute", "--level", "individual", "--detail", "--format", "json", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert not (out / "summary.csv").exists()

    subgroups = {row["group"]: row for row in _json(out / "subgroups.json")["rows"]}
    assert (subgroups["female"]["population_share_num"], subgroups["female"]["population_share_den"]) == (6, 11)

    units = {row["unit_id"]: row for row in _json(out / "units.json")["rows"]}
    assert units["H05-1"]["score"] == "0.3750"
    assert units["H05-1"]["poor"] is True
    assert units["H04-2"]["censored_score_num"] == 0


def test_manifest(run, tmp_path, mini_files):
    out = tmp_path / "run"
    assert run("compute", "--out", str(out), "--k", "1/3").exit_code == 0
    manifest = _json(out / "manifest.json")

    assert manifest["command"].endswith(" compute")
    assert manifest["tool_version"] == __version__
    assert manifest["timestamp"] == "2023-11-14T22:13:20+00:00"
    assert manifest["k"] == [1, 3]
    assert manifest["policy"] == "listwise"
    assert [entry["id"] for entry in manifest["schemes"]] == ["khas_household"]
    assert [entry["name"] for entry in manifest["inputs"]] == list(mini_files)
    names = {entry["name"] for entry in manifest["outputs"]}
    assert names == {"summary.csv", "summary.json", "attributed.csv", "attributed.json", "provenance.json"}
    assert all(len(entry["sha256"]) == 64 for entry in manifest["outputs"])


def test_default_k_follows_the_environment(run, tmp_path, monkeypatch):
    monkeypatch.setattr(config, "DEFAULT_K", "1/2")
    out = tmp_path / "run"
    assert run("compute", "--out", str(out)).exit_code == 0
    assert _json(out / "summary.json")["rows"][0]["q"] == 1


def test_custom_scheme_document_keeps_its_own_k(run, tmp_path):
    document = scheme_to_document(builtin_scheme("khas_household"))
    document.update(id="household_half", k=[1, 2], custom=True)
    path = tmp_path / "scheme.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    out = tmp_path / "run"
    result = run("compute", "--scheme", str(path), "--out", str(out))
    assert result.exit_code == 0, result.output
    row = _json(out / "summary.json")["rows"][0]
    assert (row["scheme_id"], row["k"], row["q"]) == ("household_half", "1/2", 1)


def test_exclusions(run, tmp_path):
    out = tmp_path / "run"
    result = run("compute", "--level", "individual", "--exclude-dimension", "empowerment", "--out", str(out))
    assert result.exit_code == 0, result.output
    row = _json(out / "summary.json")["rows"][0]
    assert row["scheme_id"] == "khas_individual-without-empowerment"


def test_decompose_by_sex(run, tmp_path):
    out = tmp_path / "run"
    result = run("decompose", "--group-by", "sex", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "all: n=11 q=7 M0=0.342 [ok]" in result.stdout

    groups = {row["group"]: row for row in _json(out / "decomposition_groups.json")["rows"]}
    assert set(groups) == {"all", "female", "male"}
    rows = _json(out / "decomposition.json")["rows"]
    education = next(r for r in rows if r["group"] == "all" and r["level"] == "dimension" and r["id"] == "education")
    assert (education["contribution_num"], education["contribution_den"]) == (105, 226)


def test_decompose_reports_groups_without_poor(run, tmp_path):
    out = tmp_path / "run"
    result = run("decompose", "--group-by", "marital_status", "--out", str(out))
    assert result.exit_code == 0, result.output
    groups = {row["group"]: row for row in _json(out / "decomposition_groups.json")["rows"]}
    assert groups["never_married"]["status"] == "empty_poor_set"
    never_married = [r for r in _json(out / "decomposition.json")["rows"] if r["group"] == "never_married"]
    assert never_married and all(r["contribution_pct"] is None for r in never_married)
    assert groups["widowed"]["status"] == "ok"
    assert groups["widowed"]["q"] == 2


def test_decompose_by_household_status(run, tmp_path):
    out = tmp_path / "run"
    result = run("decompose", "--group-by", "household_poor", "--out", str(out))
    assert result.exit_code == 0, result.output
    groups = {row["group"]: row for row in _json(out / "decomposition_groups.json")["rows"]}
    assert groups["poor"]["n"] == 5
    assert groups["non_poor"]["n"] == 6


def test_decompose_household_by_sex_is_a_usage_error(run):
    result = run("decompose", "--level", "household", "--group-by", "sex")
    assert result.exit_code == 2
    assert _error(result)["code"] == "usage_error"


def test_decompose_with_nobody_poor_leaves_contributions_empty(run, tmp_path):
    out = tmp_path / "run"
    result = run("decompose", "--level", "household", "--group-by", "head_sex", "--k", "7/10", "--out", str(out))
    assert result.exit_code == 0, result.output
    groups = _json(out / "decomposition_groups.json")["rows"]
    assert [row["group"] for row in groups] == ["all", "female", "male"]
    assert {row["status"] for row in groups} == {"empty_poor_set"}
    assert all(row["q"] == 0 and row["M0_num"] == 0 for row in groups)

    rows = _json(out / "decomposition.json")["rows"]
    assert len(rows) == 3 * (14 + 4)
    assert all(row["contribution_pct"] is None for row in rows)
    schooling = next(r for r in rows if r["group"] == "all" and r["id"] == "schooling")
    assert (schooling["weight_num"], schooling["weight_den"], schooling["deprived_poor"]) == (1, 8, 0)


def test_crosstab(run, tmp_path):
    out = tmp_path / "run"
    result = run("crosstab", "--by", "sex", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "Poor individuals in non-poor households: 3 of 7" in result.stdout
    cells = _json(out / "crosstab.json")["rows"]
    women = [c for c in cells if c["column_group"] == "female" and c["individual_status"] == "poor"]
    assert sum(c["count"] for c in women) == 4


def test_sweep(run, tmp_path):
    out = tmp_path / "run"
    result = run("sweep", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "H: female dominates male" in result.stdout
    rows = _json(out / "sweep.json")["rows"]
    assert [r["q"] for r in rows if r["group"] == "all"] == [9, 9, 7, 5, 4, 1, 1, 1, 0, 0]


def test_sweep_rejects_k_and_bad_cutoffs(run):
    result = run("sweep", "--k", "1/3")
    assert result.exit_code == 2
    assert _error(result)["code"] == "usage_error"

    result = run("sweep", "--cutoffs", "1/2,1/3")
    assert result.exit_code == 2
    assert _error(result)["code"] == "bad_cutoffs"

    result = run("sweep", "--cutoffs", "1/10,half")
    assert _error(result)["code"] == "bad_cutoffs"


def test_rates(run, tmp_path):
    out = tmp_path / "run"
    result = run("rates", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "all_households: n=6" in result.stdout
    assert "poor_women: n=4" in result.stdout

    rows = _json(out / "rates.json")["rows"]
    sanitation = next(r for r in rows if r["column"] == "all_households" and r["indicator_id"] == "sanitation")
    assert (sanitation["rate_num"], sanitation["rate_den"]) == (1, 2)
    women = next(r for r in rows if r["column"] == "all_women")
    assert women["average_age"] is not None


def test_unknown_exclusion_in_paired_commands(run, tmp_path):
    result = run("rates", "--exclude-indicator", "caste", "--out", str(tmp_path / "run"))
    assert result.exit_code == 2
    assert _error(result)["code"] == "not_found"


def test_missing_input_file(runner, tmp_path):
    result = runner.invoke(
        cli, ["compute", "--households", str(tmp_path / "nope.csv"), "--persons", str(tmp_path / "nope.csv")]
    )
    assert result.exit_code == 2
    error = _error(result)
    assert error["code"] == "file_not_found"
    assert error["context"]["path"].endswith("nope.csv")


def test_scheme_for_the_wrong_level(run):
    result = run("compute", "--level", "individual", "--scheme", "khas_household")
    assert result.exit_code == 2
    assert _error(result)["code"] == "scheme_mismatch"


def test_bad_input_reports_row_and_column(runner, tmp_path, mini_files):
    households, persons = mini_files
    broken = tmp_path / "households.csv"
    with open(households, encoding="utf-8") as f:
        broken.write_text(f.read().replace("H02,male,1,finished,", "H02,male,1,marble,"), encoding="utf-8")
    result = runner.invoke(cli, ["validate", "--households", str(broken), "--persons", persons])
    assert result.exit_code == 2
    error = _error(result)
    assert error["code"] == "ingest_error"
    assert (error["context"]["row"], error["context"]["column"]) == (3, "floor_material")


def test_check_paper(runner, tmp_path):
    out = tmp_path / "run"
    result = runner.invoke(cli, ["check-paper", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "fail (known)" in result.stdout
    assert result.stdout.strip().splitlines()[-1].startswith("OK:")
    rows = _json(out / "check_paper.json")["rows"]
    assert any(r["status"] == "info" for r in rows)
    assert (out / "manifest.json").exists()


def test_generate(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 3, "n_households": 25}), encoding="utf-8")
    out = tmp_path / "data"
    result = runner.invoke(cli, ["generate", "--config", str(cfg), "--out-dir", str(out)])
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(out / "households.csv")) == 25

    result = runner.invoke(cli, ["generate", "--demo", "--khas-like", "--out-dir", str(out)])
    assert result.exit_code == 2
    assert _error(result)["code"] == "usage_error"


def test_generate_with_an_invalid_config(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 3, "n_households": 0}), encoding="utf-8")
    result = runner.invoke(cli, ["generate", "--config", str(cfg), "--out-dir", str(tmp_path / "data")])
    assert result.exit_code == 2
    assert _error(result)["code"] == "config_error"


def test_validate(run, tmp_path):
    provenance = tmp_path / "provenance.json"
    result = run("validate", "--provenance-out", str(provenance))
    assert result.exit_code == 0, result.output
    assert "(6 read, 6 retained, 0 dropped)" in result.stdout
    assert _json(provenance)["persons_retained"] == 14


def test_fixture(runner, tmp_path):
    out = tmp_path / "fixture"
    result = runner.invoke(cli, ["fixture", "--out-dir", str(out)])
    assert result.exit_code == 0
    assert (out / "households.csv").read_text(encoding="utf-8").startswith("hh_id,")
    assert (out / "persons.csv").exists()


@pytest.fixture
def relative_run(runner, tmp_path, monkeypatch):
    """Runs from tmp_path on relative input paths, so manifests do not embed tmp_path."""
    write_fixture(tmp_path / "data")
    monkeypatch.chdir(tmp_path)

    def invoke(*args):
        return runner.invoke(cli, [*args, "--households", "data/households.csv", "--persons", "data/persons.csv"])

    return invoke


@pytest.mark.parametrize(
    "args, golden, files",
    [
        (
            ["compute", "--level", "household", "--format", "csv"],
            "compute_household",
            ["summary.csv", "attributed.csv", "provenance.json", "manifest.json"],
        ),
        (["compute", "--level", "household", "--format", "json"], "compute_household", ["summary.json"]),
        (["crosstab", "--format", "csv"], "crosstab", ["crosstab.csv"]),
        (["decompose", "--format", "csv"], "decompose", ["decomposition.csv", "decomposition_groups.csv"]),
    ],
)
def test_outputs_match_golden_bytes(relative_run, tmp_path, args, golden, files):
    result = relative_run(*args, "--out", "run")
    assert result.exit_code == 0, result.output
    for name in files:
        assert (tmp_path / "run" / name).read_bytes() == (CLI_GOLDEN / golden / name).read_bytes(), name


def test_long_decimal_cutoff_on_the_command_line(run, tmp_path):
    out = tmp_path / "run"
    result = run("compute", "--level", "individual", "--k", "0.29999999999999999", "--out", str(out))
    assert result.exit_code == 0, result.output
    row = _json(out / "summary.json")["rows"][0]
    assert (row["k"], row["q"]) == ("29999999999999999/100000000000000000", 7)
