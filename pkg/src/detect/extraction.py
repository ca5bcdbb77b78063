"""
Extracción de medidas: centroide ponderado por amplitud y parche RD
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..scenario.rd_map import RDMap
from .cfar import PrimitiveDetection

PATCH_MAX = 255.0


@dataclass(frozen=True)
class Measurement:
    """Medida espacial (rango, Doppler) con su parche RD estirado a [0, 255]"""

    range: float
    doppler: float
    rd_patch: np.ndarray
    n_primitives: int
    scan_index: int = 0
    range_bin: int = 0
    edge_padded: bool = False

    @property
    def position(self) -> np.ndarray:
        return np.array([self.range, self.doppler])


def stretch_patch(patch: np.ndarray) -> np.ndarray:
    """Escala lineal min→0, max→255; un parche plano queda a cero"""
    low = float(np.min(patch))
    high = float(np.max(patch))
    if high - low <= 0.0:
        return np.zeros_like(patch, dtype=float)
    return (patch - low) * (PATCH_MAX / (high - low))


def extract_patch(rd_map: RDMap, center_bin: int, n_rows: int) -> Tuple[np.ndarray, bool]:
    """
    Ventana de n_rows bins de rango centrada en center_bin y extensión Doppler completa

    Returns:
        (parche estirado, True si hubo que rellenar filas fuera del mapa)
    """
    half = n_rows // 2
    n_range, n_doppler = rd_map.shape
    rows = np.arange(center_bin - half, center_bin + half + 1)
    valid = (rows >= 0) & (rows < n_range)

    patch = np.zeros((n_rows, n_doppler))
    if valid.any():
        patch[valid] = stretch_patch(rd_map.amplitude[rows[valid]])
    return patch, not bool(valid.all())


def extract_measurement(
    cluster: Sequence[PrimitiveDetection], rd_map: RDMap, patch_rows: int = 5
) -> Measurement:
    """
    Centroide z = Σ A_τ z_τ / Σ A_τ (amplitud lineal) y parche RD

    Args:
        cluster: Detecciones de un cluster (no vacío)
        rd_map: Mapa del que proceden las detecciones
        patch_rows: Filas de rango del parche

    Returns:
        Measurement
    """
    if not cluster:
        raise ValueError("No se puede extraer una medida de un cluster vacío")

    weights = np.array([10.0 ** (d.amplitude / 20.0) for d in cluster])
    ranges = np.array([d.range for d in cluster])
    dopplers = np.array([d.doppler for d in cluster])
    total = weights.sum()
    if total <= 0.0:
        weights = np.ones_like(weights)
        total = weights.sum()
    range_c = float(weights @ ranges / total)
    doppler_c = float(weights @ dopplers / total)

    center_bin = int(np.clip(rd_map.range_bin(range_c), 0, rd_map.shape[0] - 1))
    patch, padded = extract_patch(rd_map, center_bin, patch_rows)

    return Measurement(
        range=range_c,
        doppler=doppler_c,
        rd_patch=patch,
        n_primitives=len(cluster),
        scan_index=rd_map.scan_index,
        range_bin=center_bin,
        edge_padded=padded,
    )
