"""End-to-end runs of the command-line interface and the verification
driver, in process via cli.main()."""

import json
import os

import pytest

from localmodels import cli
from localmodels.charts import parahoric_datum, parahoric_profile
from localmodels.errors import DomainError
from localmodels.ioformats import REPORT_FIELDS, parse_ideal_text
from localmodels.polynomials import Poly, QQ, int_polys_from
from localmodels.verify import run_verification, select_charts, timeout_budget

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def canon(spec):
    polys = [Poly.from_frozen(g, QQ, spec.nvars) for g in spec.generators]
    return int_polys_from(polys)


def test_alcoves_command(capsys):
    assert cli.main(["alcoves", "--n", "2", "--r", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 3
    assert [a["length"] for a in doc["alcoves"]] == [1, 0, 1]


def test_alcoves_rejects_degenerate_rank(capsys):
    assert cli.main(["alcoves", "--n", "1", "--r", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_alcoves_out_file(tmp_path, capsys):
    out = tmp_path / "alcoves.json"
    assert cli.main(["alcoves", "--n", "3", "--r", "1", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["count"] == 7


def test_equations_default_chart(capsys):
    assert cli.main(["equations", "--n", "4", "--r", "2"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("vars: π, a0_1")
    assert captured.err.strip() == "tau: raw 16 deduplicated 16"


def test_equations_json_format(capsys):
    assert cli.main(["equations", "--n", "2", "--r", "1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["vars"][0] == "π"
    assert len(doc["gens"]) == 1


def test_equations_rejects_all_selector(capsys):
    assert cli.main(["equations", "--n", "3", "--r", "1", "--chart", "all"]) == 2
    assert "single ideal" in capsys.readouterr().err


def test_equations_generic_tuple(capsys):
    assert cli.main(["equations", "--n", "2", "--r", "1", "--generic", "2,2,0"]) == 0
    err = capsys.readouterr().err
    assert err.startswith("generic:2,2,0: raw")


def test_equations_parahoric_pair(capsys):
    assert cli.main(["equations", "--n", "3", "--r", "1", "--parahoric", "0,1"]) == 0
    assert capsys.readouterr().err.strip() == "parahoric:0,1: raw 2 deduplicated 1"


def test_equations_parahoric_chain(capsys):
    rc = cli.main(["equations", "--n", "4", "--r", "2", "--parahoric", "0,1,2"])
    assert rc == 0
    assert capsys.readouterr().err.startswith("parahoric:0,1,2: raw")


def test_poset_dot_and_figure(tmp_path, capsys):
    fig = tmp_path / "hasse.png"
    rc = cli.main(
        ["poset", "--n", "3", "--r", "1", "--format", "dot", "--figure", str(fig)]
    )
    assert rc == 0
    assert capsys.readouterr().out.startswith("digraph strata {")
    assert fig.read_bytes()[:8] == PNG_MAGIC


def test_poset_out_file(tmp_path, capsys):
    out = tmp_path / "poset.json"
    assert cli.main(["poset", "--n", "3", "--r", "2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["nodes"]) == 7


def test_export_round_trip(tmp_path, capsys):
    out = tmp_path / "ideal"
    assert cli.main(["export", "--n", "3", "--r", "1", "--out", str(out)]) == 0
    from localmodels.charts import equations_U_tau
    from localmodels.ioformats import ideal_from_json

    spec = equations_U_tau(3, 1)
    text_back = parse_ideal_text((out / "ideal.txt").read_text())
    json_back = ideal_from_json((out / "ideal.json").read_text())
    for back in (text_back, json_back):
        assert back.variables == spec.variables
        assert list(back.generators) == canon(spec)


def test_verify_small_instance(capsys):
    assert cli.main(["verify", "--n", "2", "--r", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["all_passed"] is True
    assert report["timeouts"] == 0
    assert {c["ideal"] for c in report["charts"]} == {"tau", "extreme:0", "extreme:1"}
    for chart in report["charts"]:
        assert chart["status"] == "ok"
        assert chart["dim_chart_special"] == 1
        assert chart["dim_chart_generic"] == 1


def test_verify_out_directory(tmp_path, capsys):
    out = tmp_path / "run"
    rc = cli.main(
        ["verify", "--n", "2", "--r", "1", "--jobs", "1", "--out", str(out)]
    )
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["all_passed"] is True
    csv_lines = (out / "report.csv").read_text().splitlines()
    assert csv_lines[0] == ",".join(REPORT_FIELDS)
    assert len(csv_lines) == 1 + len(report["charts"])
    assert (out / "summary.png").read_bytes()[:8] == PNG_MAGIC
    assert json.loads(capsys.readouterr().out) == report


def test_verify_deterministic_modulo_wall_time():
    def strip(report):
        charts = [{k: v for k, v in c.items() if k != "wall_ms"} for c in report["charts"]]
        return {**{k: v for k, v in report.items() if k != "charts"}, "charts": charts}

    a = run_verification(2, 1, jobs=1)
    b = run_verification(2, 1, jobs=1)
    assert strip(a) == strip(b)


def test_verify_timeout_path(capsys):
    rc = cli.main(
        ["verify", "--n", "5", "--r", "2", "--chart", "tau", "--timeout", "1", "--jobs", "1"]
    )
    assert rc == 3
    report = json.loads(capsys.readouterr().out)
    assert report["timeouts"] == 1
    chart = report["charts"][0]
    assert chart["status"] == "timeout"
    assert chart["flat"] is None
    assert chart["dim_chart_special"] is None
    assert chart["wall_ms"] == 1000


def test_verify_parahoric_pair(capsys):
    rc = cli.main(["verify", "--n", "2", "--r", "1", "--parahoric", "0,1", "--jobs", "1"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    chart = report["charts"][0]
    assert chart["ideal"] == "parahoric:0,1"
    assert chart["status"] == "ok"
    assert chart["dim_chart_special"] == 1


def test_verify_prime_field(capsys):
    rc = cli.main(
        ["verify", "--n", "4", "--r", "2", "--chart", "tau", "--field", "Fp:32003", "--jobs", "1"]
    )
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["field"] == "Fp:32003"
    assert report["charts"][0]["status"] == "ok"


def test_verify_strict_mode(capsys):
    rc = cli.main(["verify", "--n", "2", "--r", "1", "--strict", "--jobs", "1"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["all_passed"] is True


def test_verify_rejects_unknown_field(capsys):
    assert cli.main(["verify", "--n", "2", "--r", "1", "--field", "R"]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_rejects_unknown_selector(capsys):
    assert cli.main(["verify", "--n", "2", "--r", "1", "--chart", "worst"]) == 2


def test_profile_file_square(tmp_path, capsys):
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"rows": [[0, 1], [1, 0]]}))
    rc = cli.main(
        ["verify", "--n", "2", "--r", "1", "--chart", f"profile:{path}", "--jobs", "1"]
    )
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["charts"][0]["ideal"] == "profile:profile.json"
    assert report["charts"][0]["status"] == "ok"


def test_profile_file_rank_mismatch(tmp_path, capsys):
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"rows": [[0, 1], [1, 0]]}))
    rc = cli.main(["verify", "--n", "3", "--r", "1", "--chart", f"profile:{path}"])
    assert rc == 2
    assert "profile file is for" in capsys.readouterr().err


def test_profile_file_needs_eps_when_chain_is_shorter(tmp_path, capsys):
    profile = parahoric_profile(4, 2, (0, 2))
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"rows": [list(row) for row in profile.rows]}))
    rc = cli.main(["verify", "--n", "4", "--r", "2", "--chart", f"profile:{path}"])
    assert rc == 2
    assert "eps" in capsys.readouterr().err


def test_profile_file_with_eps(tmp_path, capsys):
    profile = parahoric_profile(4, 2, (0, 2))
    datum = parahoric_datum(4, 2, (0, 2))
    path = tmp_path / "pair.json"
    path.write_text(
        json.dumps(
            {
                "rows": [list(row) for row in profile.rows],
                "eps": [list(row) for row in datum.eps],
            }
        )
    )
    rc = cli.main(
        ["verify", "--n", "4", "--r", "2", "--chart", f"profile:{path}", "--jobs", "1"]
    )
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["charts"][0]["status"] == "ok"
    assert report["charts"][0]["dim_chart_special"] == 4


def test_missing_profile_file_is_usage_error(capsys):
    rc = cli.main(["verify", "--n", "2", "--r", "1", "--chart", "profile:/no/such.json"])
    assert rc == 2


def test_timeout_budget_resolution(monkeypatch):
    monkeypatch.delenv("LOCALMODEL_TIMEOUT_SECS", raising=False)
    assert timeout_budget() == 600
    monkeypatch.setenv("LOCALMODEL_TIMEOUT_SECS", "7")
    assert timeout_budget() == 7
    assert timeout_budget(3) == 3
    monkeypatch.setenv("LOCALMODEL_TIMEOUT_SECS", "soon")
    with pytest.raises(DomainError):
        timeout_budget()


def test_report_reflects_env_budget(monkeypatch):
    monkeypatch.setenv("LOCALMODEL_TIMEOUT_SECS", "55")
    report = run_verification(2, 1, selector="tau", jobs=1)
    assert report["timeout_secs"] == 55


def test_select_charts_selectors():
    default = select_charts(2, 1, None)
    assert [job.name for job in default] == ["tau", "extreme:0", "extreme:1"]
    assert [job.name for job in select_charts(3, 1, "all")] == [
        f"alcove:{i}" for i in range(7)
    ]
    with pytest.raises(DomainError):
        select_charts(2, 1, "extreme:9")
    with pytest.raises(DomainError):
        select_charts(4, 2, "tau:0")
    with pytest.raises(DomainError):
        select_charts(4, 2, "extreme:0", parahoric=(0, 2))
