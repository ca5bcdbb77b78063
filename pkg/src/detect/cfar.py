"""
CFAR de promediado de celdas con ventana de entrenamiento en cruz
"""

from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import ndimage

from ..exceptions import ConfigurationError
from ..scenario.rd_map import RDMap
from .config import DetectorConfig


@dataclass(frozen=True)
class PrimitiveDetection:
    """Celda del mapa que supera el umbral CFAR"""

    range_bin: int
    doppler_bin: int
    amplitude: float
    range: float
    doppler: float


def threshold_multiplier(pfa: float, n_training: int) -> float:
    """α = N(P_FA^{−1/N} − 1)"""
    return n_training * (pfa ** (-1.0 / n_training) - 1.0)


def _training_kernel(cfg: DetectorConfig) -> np.ndarray:
    kernel = np.zeros(cfg.window_size)
    center = cfg.guard_cells + cfg.training_cells
    offset = cfg.guard_cells + 1
    kernel[center + offset :] = 1.0
    kernel[: center - offset + 1] = 1.0
    return kernel


def cfar_mask(power: np.ndarray, cfg: DetectorConfig) -> np.ndarray:
    """
    Máscara booleana de detecciones sobre un mapa de potencia lineal

    El brazo de rango se satura en el borde y el Doppler es circular.

    Args:
        power: Potencia lineal, rango x Doppler
        cfg: Configuración del detector

    Returns:
        Máscara del mismo tamaño que power
    """
    rows, cols = power.shape
    if rows < cfg.window_size or cols < cfg.window_size:
        raise ConfigurationError(
            f"Mapa de {rows}x{cols} menor que la ventana CFAR "
            f"({cfg.window_size} celdas por dimensión)"
        )
    kernel = _training_kernel(cfg)
    range_sum = ndimage.correlate1d(power, kernel, axis=0, mode="nearest")
    doppler_sum = ndimage.correlate1d(power, kernel, axis=1, mode="wrap")
    noise = (range_sum + doppler_sum) / cfg.n_training
    alpha = threshold_multiplier(cfg.pfa, cfg.n_training)
    return power > alpha * noise


def cfar_detect(rd_map: RDMap, cfg: DetectorConfig) -> List[PrimitiveDetection]:
    """
    Detecciones primitivas de un mapa RD

    Args:
        rd_map: Mapa rango-Doppler en dB
        cfg: Configuración del detector

    Returns:
        Detecciones ordenadas por (bin de rango, bin Doppler)
    """
    mask = cfar_mask(rd_map.linear_power, cfg)
    rows, cols = np.nonzero(mask)
    return [
        PrimitiveDetection(
            range_bin=int(m),
            doppler_bin=int(k),
            amplitude=float(rd_map.amplitude[m, k]),
            range=float(rd_map.range_axis[m]),
            doppler=float(rd_map.doppler_axis[k]),
        )
        for m, k in zip(rows, cols)
    ]
