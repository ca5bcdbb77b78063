import sys
from pathlib import Path

import numpy as np
import pytest

# Asegura que la raíz del proyecto esté en sys.path para importar src.*
PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.scenario.config import ClutterParams, ScenarioConfig  # noqa: E402
from src.tracking.models import TrackerParams  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_scenario() -> ScenarioConfig:
    """Escenario reducido: 32 bins de rango, 64 pulsos, 4 scans"""
    return ScenarioConfig(
        n_scans=4,
        n_targets=1,
        n_range_bins=32,
        pulses_per_scan=64,
        cpi_length=64,
        initial_range_bounds=(200.0, 280.0),
        initial_velocity_bounds=(-2.0, 2.0),
        target_length_bounds=(10.0, 15.0),
    )


@pytest.fixture
def clutter_params() -> ClutterParams:
    return ClutterParams()


@pytest.fixture
def tracker_params() -> TrackerParams:
    return TrackerParams()
