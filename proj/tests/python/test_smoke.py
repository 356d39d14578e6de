"""End-to-end smoke tests for the Python bindings."""

import json
import math

import pytest

import sizedist


def test_distribution_round_numbers():
    assert sizedist.normal_cdf(0.0) == pytest.approx(0.5)
    p = sizedist.LognormalParams(3.8277, 1.3472)
    assert sizedist.lognormal_cdf(math.exp(p.mu), p) == pytest.approx(0.5)
    assert sizedist.expected_program_size(p) == pytest.approx(113.8832635731)
    assert sizedist.corpus_rule_constant() == pytest.approx(113.88, abs=1e-12)


def test_counting_and_fit_pipeline():
    text = 'int a;\n// comment\nint b; /* trailing */\n/* gone\nstill gone */\n'
    assert sizedist.count_loc(text) == 2

    sample = [math.exp(1.0), math.exp(1.0), math.exp(3.0)]
    fit = sizedist.fit_lognormal_mle(sample)
    assert fit.mu == pytest.approx(5.0 / 3.0)
    assert fit.sigma == pytest.approx(math.sqrt(8.0 / 9.0))

    with pytest.raises(sizedist.DegenerateSampleError):
        sizedist.fit_lognormal_mle([4.0, 4.0, 4.0])
    # specific errors are also catchable via the common base
    with pytest.raises(sizedist.Error):
        sizedist.fit_lognormal_mle([])


def test_estimates_match_the_reference_totals():
    assert sizedist.estimate_total_size(6729).rounded == 766299
    assert sizedist.estimate_total_size(7888).rounded == 898285
    assert sizedist.estimate_total_size(10593).rounded == 1206331
    r = sizedist.estimate_count_in_range(10593, 1024.0, 2048.0)
    assert r.rounded == 87
    assert sizedist.mre(100.0, 75.0) == pytest.approx(0.25)


def test_dataset_and_defects_round_trip():
    csv_text = (
        "id,loc,pre_defects,post_defects\n"
        "a.java,100,4,1\n"
        "b.java,40,1,0\n"
        "c.java,10,0,0\n"
    )
    ds = sizedist.parse_canonical_csv(csv_text)
    assert len(ds) == 3
    assert ds.records[0].loc == 100
    assert sizedist.to_canonical_csv(ds) == csv_text

    stats = sizedist.describe([r.loc for r in ds.records])
    assert stats.n == 3
    assert stats.median == pytest.approx(40.0)

    curve = sizedist.alberg_curve(ds, "pre")
    assert curve.kind == "pre"
    assert curve.points[-1].y == pytest.approx(1.0)

    table = sizedist.concentration_table(ds, "pre", [50.0, 100.0])
    assert table.rows[0].programs == 2
    assert table.rows[0].defect_share == pytest.approx(1.0)


def test_report_json_is_valid_and_stable():
    records = []
    state = 12345
    for i in range(150):
        state = (state * 6364136223846793005 + 1442695040888963407) % 2**64
        loc = 3 + state % 500
        records.append(sizedist.ProgramRecord(f"p{i}.java", loc, loc // 60, None))
    ds = sizedist.Dataset("smoke", "1.0", records)

    text = sizedist.report_json(ds, timestamp="2024-01-01T00:00:00Z")
    again = sizedist.report_json(ds, timestamp="2024-01-01T00:00:00Z")
    assert text == again

    doc = json.loads(text)
    assert doc["dataset"]["name"] == "smoke"
    assert doc["dataset"]["programs"] == 150
    assert doc["lognormal_fit"]["mu"] > 0
    assert "pre" in doc["defects"]
    assert "post" not in doc["defects"]


def test_scan_tree_counts_sources(tmp_path):
    (tmp_path / "A.java").write_text("int a;\nint b;\n")
    (tmp_path / "B.java").write_text("// only a comment\n")
    sub = tmp_path / "sub"
    sub.mkdir()
    (sub / "C.java").write_text("int c;\n")

    result = sizedist.scan_tree(str(tmp_path))
    ids = [r.id for r in result.dataset.records]
    assert ids == ["A.java", "sub/C.java"]
    assert result.dataset.records[0].loc == 2
    assert len(result.issues) == 1  # the comment-only file

    assert sizedist.glob_match("**/C.java", "sub/C.java")
