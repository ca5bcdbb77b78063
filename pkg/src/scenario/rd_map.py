"""
Formación de mapas rango-Doppler por FFT sobre un intervalo coherente
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ShapeError
from .returns import PulseMatrix

DB_FLOOR = -300.0


@dataclass(frozen=True)
class RDMap:
    """Mapa rango-Doppler en dB (potencia), M bins de rango x N_d bins Doppler"""

    amplitude: np.ndarray
    doppler_axis: np.ndarray
    range_axis: np.ndarray
    scan_index: int = 0

    @property
    def shape(self):
        return self.amplitude.shape

    @property
    def linear_power(self) -> np.ndarray:
        return 10.0 ** (self.amplitude / 10.0)

    @property
    def doppler_resolution(self) -> float:
        return float(self.doppler_axis[1] - self.doppler_axis[0]) if len(self.doppler_axis) > 1 else 0.0

    @property
    def range_resolution(self) -> float:
        return float(self.range_axis[1] - self.range_axis[0]) if len(self.range_axis) > 1 else 0.0

    def doppler_bin(self, doppler: float) -> int:
        """Bin Doppler más cercano a una frecuencia (con aliasing)"""
        n = len(self.doppler_axis)
        prf = n * self.doppler_resolution
        wrapped = (doppler - self.doppler_axis[0]) % prf
        return int(np.round(wrapped / self.doppler_resolution)) % n

    def range_bin(self, range_m: float) -> int:
        """Bin de rango más cercano (puede quedar fuera del mapa)"""
        return int(np.round((range_m - self.range_axis[0]) / self.range_resolution))


def doppler_axis(cpi_length: int, prf: float) -> np.ndarray:
    """Eje Doppler (k − N_d/2 + 1)·PRF/N_d, que cubre (−prf/2, prf/2]"""
    k = np.arange(cpi_length)
    return (k - cpi_length // 2 + 1) * prf / cpi_length


def form_rd_map(pulses: PulseMatrix, cpi_length: int) -> RDMap:
    """
    DFT unitaria de N_d puntos por bin de rango sobre el primer CPI

    Args:
        pulses: Matriz de pulsos del scan
        cpi_length: Longitud del CPI N_d (potencia de dos)

    Returns:
        RDMap con la potencia en dB, acotada inferiormente a -300 dB
    """
    n = int(cpi_length)
    if n < 1 or n & (n - 1):
        raise ShapeError(f"La longitud del CPI debe ser potencia de dos: {cpi_length}")
    if n > pulses.n_pulses:
        raise ShapeError(
            f"El CPI ({n}) supera el número de pulsos disponibles ({pulses.n_pulses})"
        )

    # Núcleo inverso: una fase 4πR(p)/λ con R creciente queda en Doppler −2ṙ/λ
    spectrum = np.fft.ifft(pulses.samples[:, :n], axis=1, norm="ortho")
    order = (np.arange(n) - n // 2 + 1) % n
    spectrum = spectrum[:, order]

    power = np.abs(spectrum) ** 2
    with np.errstate(divide="ignore"):
        amplitude = np.maximum(10.0 * np.log10(power), DB_FLOOR)

    range_axis = pulses.range_start + (np.arange(pulses.n_range_bins) + 0.5) * pulses.range_bin_size
    return RDMap(
        amplitude=amplitude,
        doppler_axis=doppler_axis(n, pulses.prf),
        range_axis=range_axis,
        scan_index=pulses.scan_index,
    )
