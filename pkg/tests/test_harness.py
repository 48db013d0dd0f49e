import json
from fractions import Fraction

import pytest

from repzoo.cli import main as cli_main
from repzoo.groups import GroupScheme
from repzoo.harness import (
    AlignmentError,
    ExperimentConfig,
    FitReport,
    compare_rings,
    compute_clifford_report,
    compute_degrees,
    fit_polynomials,
    render_fit_markdown,
    run_dimirr,
    write_report,
)
from repzoo.localring import RingSpec
from repzoo.polynomials import RationalPoly

GL2 = GroupScheme("GL", 2)
x = RationalPoly.x()
half = Fraction(1, 2)


def field_samples(qs):
    return {
        q: compute_degrees(GL2, RingSpec("unramified", q, 1, 1), "chardeg")
        for q in qs
    }


def test_run_dimirr_fields_match_known_rows(tmp_path):
    config = ExperimentConfig(
        GL2,
        tuple(RingSpec("unramified", p, 1, 1) for p in (2, 3, 5)),
        engine="chardeg",
        cache_dir=str(tmp_path),
    )
    results = run_dimirr(config)
    assert results["unram:2,1,1"]["degrees"] == [[1, 2], [2, 1]]
    assert results["unram:3,1,1"]["degrees"] == [[1, 2], [2, 3], [3, 2], [4, 1]]
    assert results["unram:5,1,1"]["degrees"] == [[1, 4], [4, 10], [5, 4], [6, 6]]


def test_cache_determinism(tmp_path):
    config = ExperimentConfig(
        GL2,
        (RingSpec("unramified", 2, 1, 2),),
        engine="both",
        cache_dir=str(tmp_path),
    )
    run_dimirr(config)
    blobs1 = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
    run_dimirr(config)
    blobs2 = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
    assert blobs1 == blobs2 and blobs1


def test_run_dimirr_budget_error_entry(tmp_path):
    config = ExperimentConfig(
        GroupScheme("GL", 3),
        (RingSpec("unramified", 5, 1, 2),),
        engine="chardeg",
        budget=10**4,
        cache_dir=str(tmp_path),
    )
    results = run_dimirr(config)
    payload = results["unram:5,1,2"]
    assert "error" in payload and payload["predicted"] > 10**4


def test_compare_rings_equal_and_self():
    rep = compare_rings(GL2, RingSpec("unramified", 3, 1, 2), RingSpec("eqchar", 3, 1, 2))
    assert rep.equal and rep.diff == ()
    same = compare_rings(GL2, RingSpec("unramified", 2, 1, 2), RingSpec("unramified", 2, 1, 2))
    assert same.equal


def test_compare_rings_eisenstein_equals_eqchar():
    rep = compare_rings(GL2, RingSpec("eisenstein", 3, 1, 2, 2), RingSpec("eqchar", 3, 1, 2))
    assert rep.equal


def test_fields_fit_reproduces_known_table():
    rep = fit_polynomials(GL2, 1, field_samples((2, 3, 5)))
    rows = sorted(((r.dim.coeffs, r.mult.coeffs) for r in rep.rows))
    expected = sorted(
        (
            (RationalPoly.one().coeffs, (x - 1).coeffs),
            ((x - 1).coeffs, (half * x * (x - 1)).coeffs),
            (x.coeffs, (x - 1).coeffs),
            ((x + 1).coeffs, (half * (x - 1) * (x - 2)).coeffs),
        )
    )
    assert rows == expected


def test_gl1_constant_family():
    gl1 = GroupScheme("GL", 1)
    samples = {
        q: compute_degrees(gl1, RingSpec("unramified", q, 1, 1), "chardeg")
        for q in (2, 3, 5)
    }
    rep = fit_polynomials(gl1, 1, samples)
    assert rep.k == 1
    assert rep.rows[0].dim == RationalPoly.one()
    assert rep.rows[0].mult == x - 1


def test_fit_needs_three_samples():
    with pytest.raises(AlignmentError):
        fit_polynomials(GL2, 1, field_samples((2, 3)))


def test_fit_report_round_trip(tmp_path):
    rep = fit_polynomials(GL2, 1, field_samples((2, 3, 5)))
    path = write_report(rep, "json", tmp_path / "fit.json")
    back = FitReport.from_json(json.loads(path.read_text()))
    assert [ (r.dim.coeffs, r.mult.coeffs) for r in back.rows ] == [
        (r.dim.coeffs, r.mult.coeffs) for r in rep.rows
    ]
    md = render_fit_markdown(rep)
    assert "| i | d_i(x) | m_i(x) |" in md
    write_report(rep, "markdown", tmp_path / "fit.md")
    write_report(rep, "csv", tmp_path / "fit.csv")
    assert (tmp_path / "fit.md").exists() and (tmp_path / "fit.csv").exists()


def test_fit_markdown_renders_example_table():
    rep = fit_polynomials(GL2, 1, field_samples((2, 3, 5)))
    md = render_fit_markdown(rep)
    assert md.count("\n| ") >= 5  # header separator plus four rows


def test_markdown_empty_rows_renders_header_only():
    empty = FitReport("GL2", 1, 0, (), (2, 3, 5), 0)
    md = render_fit_markdown(empty)
    assert "| i | d_i(x) | m_i(x) |" in md
    assert md.rstrip().endswith("|---|--------|--------|")  # no data rows


def test_stratified_fit_level2_small():
    reports = {
        q: compute_clifford_report(GL2, RingSpec("unramified", q, 1, 2))
        for q in (2, 3)
    }
    reports[4] = compute_clifford_report(GL2, RingSpec("unramified", 2, 2, 2))
    rep = fit_polynomials(GL2, 2, reports)
    assert rep.k == 7
    dim_set = {r.dim.coeffs for r in rep.rows}
    for target in (RationalPoly.one(), x - 1, x, x + 1, x * x - 1, x * x - x, x * x + x):
        assert target.coeffs in dim_set


def test_cli_compare_exit_codes(capsys):
    assert cli_main(["compare", "--scheme", "GL2", "--a", "unram:2,1,2", "--b", "eqchar:2,1,2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["equal"] is True


def test_cli_dimirr(capsys, tmp_path):
    code = cli_main(
        [
            "--cache-dir", str(tmp_path),
            "dimirr", "--scheme", "GL2", "--ring", "unram:3,1,1", "--engine", "chardeg",
        ]
    )
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["unram:3,1,1"]["degrees"] == [[1, 2], [2, 3], [3, 2], [4, 1]]


def test_cli_lietype_verify(capsys):
    assert cli_main(["lietype", "--family", "GL2", "--twist", "split", "--verify", "2,3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert all(r["contained"] for r in out["containment"]["results"])


def test_cli_config_error_exit_2(capsys):
    assert cli_main(["dimirr", "--scheme", "GL2", "--ring", "bogus:1"]) == 2


def test_cli_porc_demo(capsys):
    assert cli_main(["porc", "demo"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["quotient"]["f_over_g"] == [["1/1", "1/1"]]


def test_cli_fit_level1_with_holdout(capsys):
    code = cli_main(
        ["fit", "--scheme", "GL2", "--level", "1",
         "--samples", "2,3,5", "--holdout", "7", "--format", "json"]
    )
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["holdout"]["match"] is True
    assert out["holdout"]["oracle"] == [[1, 6], [6, 21], [7, 6], [8, 15]]
