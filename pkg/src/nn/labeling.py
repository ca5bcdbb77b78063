"""
Etiquetado de medidas por distancia a la verdad
"""

from typing import Sequence, Tuple

import numpy as np

from ..detect.extraction import Measurement
from ..scenario.truth import TruthTarget
from ..tracking.models import doppler_from_range_rate


def truth_positions(
    truth: Sequence[TruthTarget], scan: int, wavelength: float
) -> np.ndarray:
    """Posiciones (rango, Doppler) de los blancos vivos en un scan"""
    rows = [
        (t.state_at(scan)[0], float(doppler_from_range_rate(t.state_at(scan)[1], wavelength)))
        for t in truth
        if t.alive(scan)
    ]
    return np.asarray(rows, dtype=float).reshape(-1, 2)


def label_measurements(
    measurements: Sequence[Measurement],
    truth: Sequence[TruthTarget],
    wavelength: float,
    t_dist: float = 1.0,
    scales: Tuple[float, float] = (15.0, 0.1),
) -> np.ndarray:
    """
    Etiqueta 1 si la distancia normalizada a algún blanco es ≤ t_dist

    La distancia es sqrt((Δr/σ_r)² + (Δf/σ_f)²) con σ = scales.

    Args:
        measurements: Medidas (cada una con su scan_index)
        truth: Blancos reales
        wavelength: Longitud de onda para convertir velocidad en Doppler
        t_dist: Umbral de distancia (inclusivo)
        scales: Escalas de rango (m) y Doppler (Hz)

    Returns:
        Vector de etiquetas 0/1
    """
    labels = np.zeros(len(measurements), dtype=int)
    scale = np.asarray(scales, dtype=float)
    for idx, m in enumerate(measurements):
        positions = truth_positions(truth, m.scan_index, wavelength)
        if positions.size == 0:
            continue
        d = np.sqrt((((positions - m.position) / scale) ** 2).sum(axis=1))
        labels[idx] = int(d.min() <= t_dist)
    return labels
