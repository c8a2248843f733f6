import json
import math

import numpy as np
import pytest

import csf


def test_circle_area_and_length():
    c = csf.circle(256, 2.0)
    assert csf.enclosed_area(c) == pytest.approx(4 * math.pi, rel=1e-3)
    assert csf.arc_length(c) == pytest.approx(4 * math.pi, rel=1e-3)
    k = csf.curvature(c)
    assert np.allclose(k, 0.5, rtol=1e-3)


def test_circle_extinction():
    tr = csf.run_until(csf.circle(128), 1.0, [0.1, 0.2, 0.3])
    assert tr["termination"] == "extinct"
    assert tr["extinction_time"] == pytest.approx(0.5, abs=5e-3)
    r = np.linalg.norm(tr["samples"][2]["points"], axis=1)
    assert np.allclose(r, csf.circle_radius(1.0, 0.2), rtol=2e-3)


def test_ellipse_area_law():
    p = csf.FlowParams()
    p.target_vertices = 256
    tr = csf.run_until(csf.ellipse(256, 2.0, 1.0), 0.5, [0.1, 0.25, 0.5], p)
    for s in tr["samples"]:
        assert abs(s["area"] - (2 * math.pi - 2 * math.pi * s["t"])) < 0.01


def test_semi_implicit_params():
    p = csf.slingshot_flow_params()
    assert p.scheme == csf.Scheme.semi_implicit
    assert p.remesh == csf.RemeshMode.adaptive
    p.cfl = -1.0
    with pytest.raises(csf.InvalidInput):
        p.validate()


def test_bad_input_raises():
    with pytest.raises(csf.InvalidInput):
        csf.enclosed_area(np.zeros((4, 3)))
    with pytest.raises(csf.Error):
        csf.enclosed_area(np.zeros((3, 2)))


def test_figure_eight_not_embedded():
    t = 2 * np.pi * np.arange(64) / 64
    eight = np.column_stack([np.sin(t), np.sin(t) * np.cos(t)])
    assert not csf.is_embedded(eight)
    assert csf.is_embedded(csf.circle(64))


def test_intersections():
    a = csf.circle(128, 1.0)
    b = csf.ellipse(128, 1.5, 0.5)
    assert csf.count_intersections(a, b) == 4


def test_slingshot_family():
    assert csf.preset_reference_area("tanh-hairpin") == pytest.approx(csf.reference_area("tanh-hairpin"), abs=1e-6)
    hyp = csf.hypotheses("tanh-hairpin")
    assert all(c["pass"] for c in hyp["clauses"])
    curves = csf.approximants("tanh-hairpin", [4, 5], 128)
    areas = [csf.enclosed_area(c) for c in curves]
    assert areas[0] < areas[1] < csf.preset_reference_area("tanh-hairpin")
    g = csf.gamma0("tanh-hairpin", 8.0)
    assert csf.is_embedded(g, closed=False)
    assert g[:, 0].max() <= 8.0
    assert csf.default_t_grid()[0] == pytest.approx(1e-4)


def test_cover():
    rep = csf.build_cover(csf.circle(512, 1.0), 0.1, 32)
    assert rep["coverage_fraction"] == 1.0
    r = rep["rectangles"][0]
    ok, why = csf.is_basic_rectangle(csf.circle(512, 1.0), r["angle"], tuple(r["translation"]), r["R"], r["D"], r["r"])
    assert ok, why


def test_run_criterion():
    lines, report = csf.run_criteria([1])
    assert lines[0].startswith("criterion 1 [PASS]")
    assert report["all_pass"]
    assert report["criteria"][0]["name"] == csf.criterion_name(1)


def test_cli_modes(tmp_path):
    code, log, err = csf.run("simulate", {"preset": "unit-circle", "t_grid": [0.1, 0.2]}, out=str(tmp_path), seed=5)
    assert code == 0, err
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["seed"] == 5
    assert (tmp_path / "diagnostics.csv").read_text().startswith("t,area,")
    code, _, err = csf.run("render", {"snapshots": []}, out=str(tmp_path / "r"))
    assert code == 2 and "empty" in err


def test_render_deterministic():
    c = csf.circle(32)
    svg = csf.render_svg([c])
    assert svg.count("<path") == 1
    assert svg == csf.render_svg([c])
    assert "stroke-dasharray" in csf.render_svg([c, c * 2], dashed=[False, True])
