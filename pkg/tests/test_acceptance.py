#!/usr/bin/env python3
"""
Orden de los métodos sobre la receta reducida
=============================================

Flujo completo gen-dataset → train → track con 4 blancos, SCR 0 dB y 20
ejecuciones Monte Carlo. El dataset usa la semilla de `dataset.seed` (1000),
distinta de la del barrido, así que el clasificador se evalúa sobre escenas
no vistas. Se ejecuta con `pytest -m slow`.
"""

from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from main import EXIT_OK, cli
from src.results_store import OutputLayout, load_summary

QUICK_CONFIG = Path(__file__).resolve().parents[1] / "config_quick_example.yaml"


def _invoke(*args):
    return CliRunner().invoke(cli, list(args), catch_exceptions=False)


@pytest.mark.slow
def test_nemp_beats_mp_nn_and_mp(tmp_path):
    print("🧪 Probando el orden MOSPA / AMOT de los tres métodos...")
    config = yaml.safe_load(QUICK_CONFIG.read_text(encoding="utf-8"))
    config["scenario"]["n_targets"] = 4
    config["sweep"].update(scr_db=[0.0], runs=20, methods=["MP", "MP-NN", "NEMP"], seed=7)
    path = tmp_path / "acceptance.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    out = str(tmp_path / "out")

    for command in (["gen-dataset"], ["train"], ["track"]):
        result = _invoke("--config", str(path), "--out", out, *command)
        assert result.exit_code == EXIT_OK, result.output

    summary = {row["method"]: row for row in load_summary(OutputLayout(out).summary_csv)}
    mospa = {method: summary[method]["mospa"] for method in ("MP", "MP-NN", "NEMP")}
    amot = {method: summary[method]["amot"] for method in ("MP", "NEMP")}
    print(f"   MOSPA {mospa}, AMOT {amot}")

    assert mospa["NEMP"] <= mospa["MP-NN"] <= mospa["MP"]
    assert amot["NEMP"] >= amot["MP"] + 0.1
    print("✅ NEMP ≤ MP-NN ≤ MP en MOSPA y NEMP supera a MP en AMOT")
