"""Serialization determinism: float formatting, canonical JSON, manifests."""

import numpy as np

from gbit_lab.reporting import RunManifest, canonical_json, format_float


def test_format_float_roundtrip_exact():
    rng = np.random.default_rng(7)
    for x in rng.standard_normal(500) * 10.0 ** rng.integers(-12, 12, 500):
        assert float(format_float(x)) == x


def test_format_float_short_values():
    assert format_float(0.5) == "0.5"
    assert format_float(1.0) == "1"
    assert format_float(0.1) == "0.10000000000000001"


def test_canonical_json_sorted_and_stable():
    obj = {"b": 1, "a": [1.0, 2.5], "c": {"y": True, "x": None}}
    text = canonical_json(obj)
    assert text == canonical_json(obj)
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert "true" in text and "null" in text


def test_canonical_json_compact_single_line():
    text = canonical_json({"k": [1, 2], "m": "s"}, pretty=False)
    assert "\n" not in text


def test_canonical_json_handles_numpy_types():
    text = canonical_json({"v": np.array([1.0, 0.5]), "n": np.int64(3), "x": np.float64(0.25)})
    assert "0.5" in text and "3" in text and "0.25" in text


def test_manifest_csv_header_is_one_comment_line():
    manifest = RunManifest(command="fringe", parameters={"model": "complex-d3"}, seed=1, version="0.1.0")
    header = manifest.csv_header()
    assert header.startswith("# manifest: {")
    assert "\n" not in header
