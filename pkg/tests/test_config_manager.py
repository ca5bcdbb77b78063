#!/usr/bin/env python3
"""
Tests del gestor de configuración YAML
"""

from pathlib import Path

import pytest
import yaml

from src.config_manager import ConfigManager, SweepConfig
from src.exceptions import ConfigurationError
from src.nemp import TrackingMode

ROOT = Path(__file__).resolve().parent.parent


def _write(tmp_path: Path, content: dict) -> str:
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(content), encoding="utf-8")
    return str(path)


def test_missing_file_creates_defaults(tmp_path):
    print("🧪 Probando creación de la configuración por defecto...")
    path = tmp_path / "nueva.yaml"
    manager = ConfigManager(str(path))
    assert path.exists()
    assert manager.validate_all() == list(ConfigManager.SECTIONS)

    reloaded = ConfigManager(str(path))
    assert reloaded.config == manager.config
    print("✅ Configuración por defecto válida")


@pytest.mark.parametrize("name", ["config.yaml", "config_quick_example.yaml"])
def test_shipped_configs_are_valid(name):
    manager = ConfigManager(str(ROOT / name))
    manager.validate_all()


def test_partial_file_is_merged_with_defaults(tmp_path):
    manager = ConfigManager(_write(tmp_path, {"scenario": {"n_scans": 7}, "nn": {"train": {"epochs": 3}}}))
    scenario = manager.scenario_config()
    assert scenario.n_scans == 7
    assert scenario.carrier_frequency == 9e9
    assert manager.train_config().epochs == 3
    assert manager.cnn_config().input_shape == (5, 512)


def test_tracker_params_derive_from_scenario(tmp_path):
    manager = ConfigManager(_write(tmp_path, {"scenario": {"scan_interval": 2.0}}))
    params = manager.tracker_params()
    assert params.scan_interval == 2.0
    assert params.wavelength == pytest.approx(manager.scenario_config().wavelength)
    assert params.wavelength == pytest.approx(0.0333, abs=1e-4)


def test_derived_tracker_keys_are_rejected(tmp_path):
    manager = ConfigManager(_write(tmp_path, {"tracker": {"wavelength": 0.03}}))
    with pytest.raises(ConfigurationError):
        manager.tracker_params()


def test_invalid_configurations(tmp_path):
    with pytest.raises(ConfigurationError):
        ConfigManager(_write(tmp_path, {"renderer": {}}))

    bad_yaml = tmp_path / "roto.yaml"
    bad_yaml.write_text("scenario: [1, 2\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        ConfigManager(str(bad_yaml))

    manager = ConfigManager(_write(tmp_path, {"scenario": {"unknown_field": 1}}))
    with pytest.raises(ConfigurationError):
        manager.scenario_config()

    manager = ConfigManager(_write(tmp_path, {"processing": {"max_workers": 0}}))
    with pytest.raises(ConfigurationError):
        manager.validate_all()


def test_override_ignores_none(tmp_path):
    manager = ConfigManager(_write(tmp_path, {}))
    manager.override("sweep", runs=3, seed=None)
    sweep = manager.sweep_config()
    assert sweep.runs == 3
    assert sweep.seed == 0
    with pytest.raises(ConfigurationError):
        manager.override("plots", dpi=100)


def test_sweep_config_normalizes_methods():
    sweep = SweepConfig(scr_db=[0, 5], methods=["mp", "nemp"], runs=1)
    assert sweep.scr_db == (0.0, 5.0)
    assert sweep.methods == ("MP", "NEMP")
    with pytest.raises(ConfigurationError):
        SweepConfig(methods=[])
    with pytest.raises(ConfigurationError):
        SweepConfig(runs=0)


def test_nemp_config_mode(tmp_path):
    manager = ConfigManager(_write(tmp_path, {"nemp": {"iterations": 2}}))
    config = manager.nemp_config(TrackingMode.MP_NN)
    assert config.mode == TrackingMode.MP_NN
    assert config.iterations == 2
