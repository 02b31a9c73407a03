"""Standalone SVG emitter sanity checks."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from dfcycle.svg import Series, line_plot


def test_output_is_well_formed_xml():
    s = Series([0.0, 1.0, 2.0], [0.0, 1.0, 0.5], label="demo")
    doc = line_plot([s], title="t", xlabel="x", ylabel="y")
    root = ET.fromstring(doc)
    assert root.tag.endswith("svg")


def test_contains_polyline_and_labels():
    s = Series([0.0, 1.0], [2.0, 3.0], label="curve-label")
    doc = line_plot([s], title="my-title", xlabel="xx", ylabel="yy")
    for needle in ("polyline", "my-title", "xx", "yy", "curve-label"):
        assert needle in doc


def test_dash_and_markers():
    s = Series([0.0, 1.0], [0.0, 1.0], label="d", dash="4,2", points=[(0.5, 0.5)])
    doc = line_plot([s], title="t", xlabel="x", ylabel="y")
    assert "stroke-dasharray" in doc
    assert "circle" in doc


def test_deterministic():
    s = Series([0.0, 1.0, 2.0], [0.1, 0.2, 0.3], label="d")
    a = line_plot([s], title="t", xlabel="x", ylabel="y")
    b = line_plot([s], title="t", xlabel="x", ylabel="y")
    assert a == b
