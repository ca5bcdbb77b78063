"""
Configuración del escenario simulado y del modelo de clutter
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..exceptions import ConfigurationError
from ..tracking.models import SPEED_OF_LIGHT, MotionModel


def _bounds(name: str, value) -> Tuple[float, float]:
    try:
        low, high = (float(v) for v in value)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"{name} debe ser un par [min, max]: {value}") from e
    if low > high:
        raise ConfigurationError(f"{name}: min > max ({low} > {high})")
    return low, high


@dataclass(frozen=True)
class ScenarioConfig:
    """Geometría del radar, parámetros de la forma de onda y de los blancos"""

    n_scans: int = 15
    scan_interval: float = 10.0
    sigma_a: float = 1e-4
    n_targets: int = 4
    prf: float = 1000.0
    carrier_frequency: float = 9e9
    n_range_bins: int = 96
    range_bin_size: float = 15.0
    range_start: float = 0.0
    pulses_per_scan: int = 512
    cpi_length: int = 512
    initial_range_bounds: Tuple[float, float] = (150.0, 1290.0)
    initial_velocity_bounds: Tuple[float, float] = (-3.0, 3.0)
    initial_acceleration_bounds: Tuple[float, float] = (-1e-3, 1e-3)
    target_length_bounds: Tuple[float, float] = (5.0, 30.0)
    rcs_ar_coefficient: float = 0.99
    rcs_log_std: float = 0.3
    max_sampling_attempts: int = 1000

    def __post_init__(self):
        for name in (
            "initial_range_bounds",
            "initial_velocity_bounds",
            "initial_acceleration_bounds",
            "target_length_bounds",
        ):
            object.__setattr__(self, name, _bounds(name, getattr(self, name)))

        if self.n_scans < 1:
            raise ConfigurationError(f"n_scans debe ser >= 1: {self.n_scans}")
        if self.n_targets < 0:
            raise ConfigurationError(f"n_targets no puede ser negativo: {self.n_targets}")
        if self.n_range_bins < 1 or self.pulses_per_scan < 1:
            raise ConfigurationError("Se requiere al menos un bin de rango y un pulso")
        if self.prf <= 0 or self.carrier_frequency <= 0 or self.range_bin_size <= 0:
            raise ConfigurationError("prf, carrier_frequency y range_bin_size deben ser positivos")
        if self.target_length_bounds[0] <= 0:
            raise ConfigurationError("La longitud radial de los blancos debe ser positiva")
        if not 0.0 <= self.rcs_ar_coefficient < 1.0:
            raise ConfigurationError(
                f"rcs_ar_coefficient fuera de [0,1): {self.rcs_ar_coefficient}"
            )
        if self.rcs_log_std < 0:
            raise ConfigurationError("rcs_log_std no puede ser negativo")
        # Valida intervalo y sigma_a
        MotionModel(self.scan_interval, self.sigma_a)

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency

    @property
    def range_extent(self) -> Tuple[float, float]:
        return (
            self.range_start,
            self.range_start + self.n_range_bins * self.range_bin_size,
        )

    @property
    def range_axis(self) -> np.ndarray:
        """Centro de cada bin de rango en metros"""
        return self.range_start + (np.arange(self.n_range_bins) + 0.5) * self.range_bin_size

    @property
    def surveillance_area(self) -> float:
        """Área rango x Doppler vigilada (m·Hz)"""
        return self.n_range_bins * self.range_bin_size * self.prf

    @property
    def motion(self) -> MotionModel:
        return MotionModel(self.scan_interval, self.sigma_a)


@dataclass(frozen=True)
class ClutterParams:
    """Parámetros del clutter marino compuesto-gaussiano"""

    model: str = "k-distributed"
    shape: float = 1.0
    mean_doppler: float = 20.0
    spectral_width: float = 30.0
    texture_correlation: float = 0.99
    mean_power: float = 1.0
    noise_power: float = 0.01

    def __post_init__(self):
        if self.shape <= 0:
            raise ConfigurationError(f"El parámetro de forma debe ser positivo: {self.shape}")
        if self.spectral_width <= 0:
            raise ConfigurationError(
                f"spectral_width debe ser positivo: {self.spectral_width}"
            )
        if not 0.0 <= self.texture_correlation < 1.0:
            raise ConfigurationError(
                f"texture_correlation fuera de [0,1): {self.texture_correlation}"
            )
        if self.mean_power < 0 or self.noise_power < 0:
            raise ConfigurationError("Las potencias de clutter y ruido no pueden ser negativas")
