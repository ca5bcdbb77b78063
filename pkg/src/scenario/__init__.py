"""
Simulador de escenarios: trayectorias de verdad, clutter marino, retornos de
blancos y mapas rango-Doppler
"""

from .clutter import (
    ClutterModel,
    ClutterModelFactory,
    GaussianClutter,
    KDistributedClutter,
    ar1_gaussian,
)
from .config import ClutterParams, ScenarioConfig
from .io import load_pulse_matrix, load_rd_map, save_pulse_matrix, save_rd_map
from .rd_map import DB_FLOOR, RDMap, doppler_axis, form_rd_map
from .returns import (
    PulseMatrix,
    fluctuation_sequence,
    range_occupancy,
    synthesize_returns,
    target_component,
    target_power,
)
from .truth import TruthTarget, generate_truth, propagate_states

__all__ = [
    "ClutterModel",
    "ClutterModelFactory",
    "GaussianClutter",
    "KDistributedClutter",
    "ar1_gaussian",
    "ClutterParams",
    "ScenarioConfig",
    "load_pulse_matrix",
    "load_rd_map",
    "save_pulse_matrix",
    "save_rd_map",
    "DB_FLOOR",
    "RDMap",
    "doppler_axis",
    "form_rd_map",
    "PulseMatrix",
    "fluctuation_sequence",
    "range_occupancy",
    "synthesize_returns",
    "target_component",
    "target_power",
    "TruthTarget",
    "generate_truth",
    "propagate_states",
]
