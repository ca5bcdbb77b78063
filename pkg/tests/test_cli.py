#!/usr/bin/env python3
"""
Tests de la interfaz de línea de comandos con una configuración mínima
"""

import copy
import math

import numpy as np
import pytest
import yaml
from click.testing import CliRunner

from main import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, cli
from src.detect import Measurement
from src.detect.io import read_measurements, write_measurements
from src.metrics.report import RUN_COLUMNS, SERIES_COLUMNS
from src.results_store import (
    OutputLayout,
    load_labels,
    load_runs,
    load_series,
    load_summary,
    write_runs,
)

TINY_CONFIG = {
    "scenario": {
        "n_scans": 4,
        "n_targets": 1,
        "n_range_bins": 48,
        "pulses_per_scan": 64,
        "cpi_length": 64,
        "initial_range_bounds": [150.0, 500.0],
    },
    "detector": {"pfa": 0.01, "guard_cells": 2, "training_cells": 8, "d_th": 16.0, "min_cluster_size": 2},
    "tracker": {"measurement_noise_std": [15.0, 8.0]},
    "nn": {
        "cnn": {"input_shape": [5, 64], "channels": [2, 2], "hidden": [8]},
        "train": {"epochs": 2, "batch_size": 8},
    },
    "dataset": {"runs": 1, "scr_db": [10.0], "t_dist": 1.5, "label_scales": [15.0, 8.0]},
    "sweep": {"scr_db": [0.0], "runs": 1, "methods": ["MP"]},
    "metrics": {"scales": [15.0, 8.0]},
    "processing": {"max_workers": 1},
}


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "tiny.yaml"
    path.write_text(yaml.safe_dump(TINY_CONFIG), encoding="utf-8")
    return str(path)


def _invoke(*args):
    return CliRunner().invoke(cli, list(args), catch_exceptions=False)


def _write_config(path, **sections):
    """TINY_CONFIG con secciones sustituidas parcialmente"""
    config = copy.deepcopy(TINY_CONFIG)
    for name, values in sections.items():
        config[name].update(values)
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return str(path)


def _same_value(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, float) and math.isnan(a):
        return isinstance(b, float) and math.isnan(b)
    return abs(a - b) <= 1e-9


def test_track_mp_writes_results(tiny_config, tmp_path):
    print("🧪 Probando 'track' con el seguidor MP...")
    out = tmp_path / "out"
    result = _invoke("--config", tiny_config, "--out", str(out), "track", "--seed", "3")
    assert result.exit_code == EXIT_OK, result.output

    layout = OutputLayout(out)
    runs = load_runs(layout.runs_csv)
    assert [(r["method"], r["scr_db"], r["run"]) for r in runs] == [("MP", 0.0, 0)]
    assert layout.series_csv.exists()
    assert len(load_summary(layout.summary_csv)) == 1
    assert list((out / "logs").glob("track_*.log"))
    print("✅ runs.csv, series.csv y summary.csv escritos")


def test_track_with_constant_classifier_then_report(tiny_config, tmp_path):
    out = tmp_path / "out"
    result = _invoke(
        "--config", tiny_config, "--out", str(out),
        "track", "--methods", "MP,NEMP", "--constant-classifier", "0.5",
    )
    assert result.exit_code == EXIT_OK, result.output
    layout = OutputLayout(out)
    assert sorted(r["method"] for r in load_runs(layout.runs_csv)) == ["MP", "NEMP"]

    layout.summary_csv.unlink()
    result = _invoke("--config", tiny_config, "--out", str(out), "report")
    assert result.exit_code == EXIT_OK, result.output
    assert {r["method"] for r in load_summary(layout.summary_csv)} == {"MP", "NEMP"}


def test_gen_dataset_writes_labeled_measurements(tiny_config, tmp_path):
    print("🧪 Probando 'gen-dataset'...")
    out = tmp_path / "out"
    result = _invoke("--config", tiny_config, "--out", str(out), "gen-dataset", "--seed", "5")
    assert result.exit_code == EXIT_OK, result.output

    layout = OutputLayout(out)
    measurements, records = read_measurements(layout.dataset_stem)
    labels = load_labels(layout.labels_csv)
    assert len(labels) == len(measurements) == len(records)
    assert all(r["label"] in (0, 1) for r in records)
    assert all(0.0 <= r["belief"] <= 1.0 for r in records)
    assert all(m.rd_patch.shape == (5, 64) for m in measurements)
    print(f"✅ {len(measurements)} medidas etiquetadas")


def test_train_from_written_dataset(tiny_config, tmp_path):
    print("🧪 Probando 'train' sobre un dataset sintético...")
    out = tmp_path / "out"
    layout = OutputLayout(out)
    rng = np.random.default_rng(0)
    measurements, extra = [], []
    for i in range(16):
        label = i % 2
        patch = rng.uniform(0.0, 60.0, size=(5, 64))
        if label:
            patch[2, 30:34] = 255.0
        measurements.append(
            Measurement(range=300.0 + i, doppler=0.0, rd_patch=patch, n_primitives=3, scan_index=i % 4)
        )
        extra.append({"label": label, "belief": 0.8 if label else 0.2})
    write_measurements(layout.dataset_stem, measurements, extra)

    result = _invoke("--config", tiny_config, "--out", str(out), "train", "--seed", "1")
    assert result.exit_code == EXIT_OK, result.output
    assert layout.weights_stem.with_suffix(".json").exists()
    assert layout.weights_stem.with_suffix(".bin").exists()
    assert layout.loss_curve_csv.exists()

    result = _invoke(
        "--config", tiny_config, "--out", str(out),
        "track", "--methods", "NEMP", "--weights", str(layout.weights_stem),
    )
    assert result.exit_code == EXIT_OK, result.output
    assert [r["method"] for r in load_runs(layout.runs_csv)] == ["NEMP"]
    print("✅ Pesos entrenados y usados por NEMP")


def test_track_is_deterministic(tiny_config, tmp_path):
    """Misma configuración y semilla: CSV idénticos byte a byte"""
    outputs = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = _invoke("--config", tiny_config, "--out", str(out), "track", "--seed", "11")
        assert result.exit_code == EXIT_OK, result.output
        outputs.append(OutputLayout(out))
    for attr in ("runs_csv", "series_csv", "summary_csv"):
        first, second = (getattr(layout, attr).read_bytes() for layout in outputs)
        assert first == second


def test_exit_codes(tiny_config, tmp_path):
    print("🧪 Probando códigos de salida...")
    out = str(tmp_path / "out")

    # NEMP sin pesos entrenados
    result = _invoke("--config", tiny_config, "--out", out, "track", "--methods", "NEMP")
    assert result.exit_code == EXIT_CONFIG

    bad = tmp_path / "bad.yaml"
    bad.write_text(yaml.safe_dump({"scenario": {"n_scans": 0}}), encoding="utf-8")
    result = _invoke("--config", str(bad), "--out", out, "track")
    assert result.exit_code == EXIT_CONFIG

    # sección ajena al comando, detectada antes de ejecutar
    bad_train = tmp_path / "bad_train.yaml"
    bad_train.write_text(
        yaml.safe_dump({**TINY_CONFIG, "nn": {"train": {"lr": -1.0}}}), encoding="utf-8"
    )
    result = _invoke("--config", str(bad_train), "--out", out, "gen-dataset")
    assert result.exit_code == EXIT_CONFIG
    assert not (tmp_path / "out" / "dataset").exists()

    # report sin runs.csv
    result = _invoke("--config", tiny_config, "--out", out, "report")
    assert result.exit_code == EXIT_RUNTIME

    # train sin dataset
    result = _invoke("--config", tiny_config, "--out", out, "train")
    assert result.exit_code == EXIT_RUNTIME
    print("✅ 0 / 1 / 2 según el tipo de fallo")


def test_report_with_matched_tracks(tiny_config, tmp_path):
    print("🧪 Probando 'report' con IDS y Frag medidos...")
    out = tmp_path / "out"
    layout = OutputLayout(out)
    rows = [
        {"method": "MP", "scr_db": 0.0, "run": run, "amot": 0.75, "ids": 0, "frag": run,
         "rmse_position_m": 11.0, "rmse_velocity_cms": 40.0, "mospa": 4.5}
        for run in range(2)
    ]
    write_runs(layout.runs_csv, rows)

    result = _invoke("--config", tiny_config, "--out", str(out), "report")
    assert result.exit_code == EXIT_OK, result.output
    summary = load_summary(layout.summary_csv)
    assert summary[0]["ids"] == 0.0
    assert summary[0]["frag"] == 0.5
    print("✅ Resumen mostrado sin errores")


def test_neutral_classifier_reproduces_mp(tmp_path):
    """Con ω = 0.5 en todas las medidas NEMP da exactamente las métricas de MP"""
    print("🧪 Probando NEMP con clasificador neutro frente a MP en 15 scans...")
    config = _write_config(
        tmp_path / "neutral.yaml", scenario={"n_scans": 15, "n_targets": 2}, sweep={"runs": 2}
    )
    out = tmp_path / "out"
    result = _invoke(
        "--config", config, "--out", str(out),
        "track", "--seed", "4", "--methods", "MP,NEMP", "--constant-classifier", "0.5",
    )
    assert result.exit_code == EXIT_OK, result.output

    layout = OutputLayout(out)
    for rows, columns, key_columns in (
        (load_runs(layout.runs_csv), RUN_COLUMNS, ("scr_db", "run")),
        (load_series(layout.series_csv), SERIES_COLUMNS, ("scr_db", "run", "scan")),
    ):
        by_method = {"MP": {}, "NEMP": {}}
        for row in rows:
            by_method[row["method"]][tuple(row[k] for k in key_columns)] = row
        assert by_method["MP"].keys() == by_method["NEMP"].keys()
        assert by_method["MP"]
        for key, mp_row in by_method["MP"].items():
            nemp_row = by_method["NEMP"][key]
            for column in columns:
                if column in ("method",) + key_columns:
                    continue
                assert _same_value(mp_row[column], nemp_row[column]), (key, column)
    print("✅ Métricas idénticas fila a fila")


def test_gen_dataset_is_deterministic(tiny_config, tmp_path):
    layouts = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = _invoke("--config", tiny_config, "--out", str(out), "gen-dataset", "--seed", "5")
        assert result.exit_code == EXIT_OK, result.output
        layouts.append(OutputLayout(out))
    first, second = layouts
    assert first.labels_csv.read_bytes() == second.labels_csv.read_bytes()
    for suffix in (".jsonl", ".bin", ".json"):
        assert (
            first.dataset_stem.with_suffix(suffix).read_bytes()
            == second.dataset_stem.with_suffix(suffix).read_bytes()
        )


def test_gen_dataset_without_targets_labels_everything_clutter(tmp_path):
    config = _write_config(
        tmp_path / "empty.yaml", scenario={"n_scans": 1, "n_targets": 0}, dataset={"runs": 1}
    )
    out = tmp_path / "out"
    result = _invoke("--config", config, "--out", str(out), "gen-dataset", "--seed", "2")
    assert result.exit_code == EXIT_OK, result.output
    labels = load_labels(OutputLayout(out).labels_csv)
    assert all(row["label"] == 0 for row in labels)
