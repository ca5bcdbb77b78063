#!/usr/bin/env python3
"""
Tests de la estructura de salida y de los CSV de resultados
"""

import math

import pytest

from src.exceptions import DatasetError
from src.metrics.report import aggregate_reports
from src.results_store import (
    OutputLayout,
    load_runs,
    load_series,
    load_summary,
    read_rows,
    write_rows,
    write_runs,
    write_series,
    write_summary,
)


def _run(method, scr, run, amot=0.5, vel=None):
    return {
        "method": method,
        "scr_db": scr,
        "run": run,
        "amot": amot,
        "ids": 1,
        "frag": 0,
        "rmse_position_m": 12.25,
        "rmse_velocity_cms": vel,
        "mospa": 3.1,
    }


def test_output_layout(tmp_path):
    layout = OutputLayout(tmp_path / "out")
    assert layout.runs_csv == tmp_path / "out" / "results" / "runs.csv"
    assert layout.weights_stem.parent == layout.weights_dir
    assert layout.labels_csv.parent == layout.dataset_dir


def test_runs_round_trip_keeps_missing_values(tmp_path):
    print("🧪 Probando escritura y lectura de runs.csv...")
    rows = [
        _run("NEMP", 0.0, 1, vel=2.5),
        _run("MP", 4.0, 0, amot=float("nan")),
        _run("MP", -4.0, 0),
    ]
    path = write_runs(tmp_path / "results" / "runs.csv", rows)
    loaded = load_runs(path)

    assert [(r["method"], r["scr_db"], r["run"]) for r in loaded] == [
        ("MP", -4.0, 0),
        ("MP", 4.0, 0),
        ("NEMP", 0.0, 1),
    ]
    assert math.isnan(loaded[1]["amot"])
    assert loaded[0]["rmse_velocity_cms"] is None
    assert loaded[2]["rmse_velocity_cms"] == 2.5
    assert loaded[2]["rmse_position_m"] == 12.25
    assert isinstance(loaded[2]["ids"], int)
    print("✅ runs.csv recuperado")


def test_series_are_ordered_by_scan(tmp_path):
    rows = [
        {"method": "MP", "scr_db": 0.0, "run": 0, "scan": s, "ospa": float(s),
         "rmse_position_m": None, "rmse_velocity_cms": None}
        for s in (2, 0, 1)
    ]
    loaded = load_series(write_series(tmp_path / "series.csv", rows))
    assert [r["scan"] for r in loaded] == [0, 1, 2]
    assert [r["ospa"] for r in loaded] == [0.0, 1.0, 2.0]


def test_read_errors(tmp_path):
    with pytest.raises(DatasetError):
        read_rows(tmp_path / "missing.csv")

    path = write_rows(tmp_path / "partial.csv", ["method", "run"], [{"method": "MP", "run": 0}])
    with pytest.raises(DatasetError):
        load_runs(path)

    bad = tmp_path / "bad.csv"
    bad.write_text("method,run\nMP,uno\n", encoding="utf-8")
    with pytest.raises(DatasetError):
        read_rows(bad)


def test_summary_round_trip_with_mean_counts(tmp_path):
    print("🧪 Probando summary.csv con medias de IDS y Frag...")
    rows = [
        {**_run("MP", 0.0, 0), "ids": 0, "frag": 1},
        {**_run("MP", 0.0, 1), "ids": 0, "frag": 2},
        {**_run("NEMP", 0.0, 0), "ids": None, "frag": 0},
    ]
    path = write_summary(tmp_path / "summary.csv", aggregate_reports(rows))
    loaded = load_summary(path)

    assert [(r["method"], r["n_runs"]) for r in loaded] == [("MP", 2), ("NEMP", 1)]
    assert isinstance(loaded[0]["n_runs"], int)
    assert loaded[0]["ids"] == 0.0
    assert loaded[0]["frag"] == 1.5
    assert loaded[1]["ids"] is None
    assert loaded[1]["frag"] == 0.0
    print("✅ summary.csv recuperado con medias reales")
