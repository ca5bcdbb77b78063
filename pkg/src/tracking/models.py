"""
Modelos compartidos por el simulador y el seguidor: movimiento de aceleración
constante, matriz de medida rango-Doppler y creencias gaussianas/Bernoulli
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..exceptions import ConfigurationError

SPEED_OF_LIGHT = 299_792_458.0


def transition_matrix(interval: float) -> np.ndarray:
    """
    Matriz F del modelo de aceleración constante

    Args:
        interval: Intervalo de propagación T en segundos

    Returns:
        Matriz 3x3 sobre el estado (rango, velocidad radial, aceleración radial)
    """
    T = float(interval)
    return np.array(
        [
            [1.0, T, 0.5 * T**2],
            [0.0, 1.0, T],
            [0.0, 0.0, 1.0],
        ]
    )


def process_noise(interval: float, sigma_a: float) -> np.ndarray:
    """
    Covarianza Q del ruido de proceso (jerk blanco de varianza sigma_a²)

    Args:
        interval: Intervalo de propagación T en segundos
        sigma_a: Intensidad del proceso de excitación (m/s³)

    Returns:
        Matriz 3x3 simétrica semidefinida positiva
    """
    T = float(interval)
    return sigma_a**2 * np.array(
        [
            [T**5 / 20.0, T**4 / 8.0, T**3 / 6.0],
            [T**4 / 8.0, T**3 / 3.0, T**2 / 2.0],
            [T**3 / 6.0, T**2 / 2.0, T],
        ]
    )


def measurement_matrix(wavelength: float) -> np.ndarray:
    """Matriz H que proyecta el estado sobre (rango, Doppler)"""
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, -2.0 / wavelength, 0.0],
        ]
    )


def doppler_from_range_rate(range_rate, wavelength: float):
    """Doppler (Hz) de una velocidad radial; positivo para blancos que se acercan"""
    return -2.0 * np.asarray(range_rate, dtype=float) / wavelength


def range_rate_from_doppler(doppler, wavelength: float):
    """Velocidad radial (m/s) a partir del Doppler (Hz)"""
    return -0.5 * wavelength * np.asarray(doppler, dtype=float)


@dataclass(frozen=True)
class MotionModel:
    """Modelo de aceleración constante con intervalo e intensidad fijos"""

    interval: float
    sigma_a: float

    def __post_init__(self):
        if self.interval <= 0:
            raise ConfigurationError(f"El intervalo debe ser positivo: {self.interval}")
        if self.sigma_a < 0:
            raise ConfigurationError(f"sigma_a no puede ser negativo: {self.sigma_a}")

    @property
    def F(self) -> np.ndarray:
        return transition_matrix(self.interval)

    @property
    def Q(self) -> np.ndarray:
        return process_noise(self.interval, self.sigma_a)


@dataclass(frozen=True)
class KinematicBelief:
    """Creencia gaussiana del estado cinemático de un blanco"""

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(3)
        covariance = np.asarray(self.covariance, dtype=float).reshape(3, 3)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", covariance)

    def is_valid(self, tolerance: float = 1e-9) -> bool:
        """True si la covarianza es simétrica y definida positiva"""
        if np.max(np.abs(self.covariance - self.covariance.T)) >= tolerance:
            return False
        try:
            np.linalg.cholesky(self.covariance)
        except np.linalg.LinAlgError:
            return False
        return True


@dataclass(frozen=True)
class VisibilityBelief:
    """Creencia Bernoulli del estado de visibilidad"""

    p_visible: float

    def __post_init__(self):
        if not 0.0 <= self.p_visible <= 1.0 or np.isnan(self.p_visible):
            raise ValueError(f"Probabilidad de visibilidad fuera de [0,1]: {self.p_visible}")


@dataclass(frozen=True)
class DetectionModelParams:
    """Probabilidades de detección por estado de visibilidad y prior de clutter"""

    pd_visible: float = 0.9
    pd_invisible: float = 0.01
    pfa_prior: float = 1e-7

    def __post_init__(self):
        if not 0.0 < self.pd_invisible < self.pd_visible <= 1.0:
            raise ConfigurationError(
                "Se requiere 0 < pd_invisible < pd_visible <= 1 "
                f"(recibido {self.pd_invisible}, {self.pd_visible})"
            )
        if self.pfa_prior <= 0:
            raise ConfigurationError(f"pfa_prior debe ser positivo: {self.pfa_prior}")


@dataclass(frozen=True)
class TrackerParams:
    """Parámetros del seguidor por paso de mensajes"""

    scan_interval: float = 10.0
    sigma_a: float = 1e-4
    wavelength: float = SPEED_OF_LIGHT / 9e9
    measurement_noise_std: Tuple[float, float] = (15.0, 0.1)
    gate_threshold: float = 13.8
    pd_visible: float = 0.9
    pd_invisible: float = 0.01
    pfa: float = 0.28
    # Densidad de clutter explícita; si es None se deriva de pfa y del área vigilada
    clutter_density: Optional[float] = None
    surveillance_area: float = 96 * 15.0 * 1000.0
    visibility_stay: float = 0.85
    bp_tolerance: float = 1e-6
    bp_max_iterations: int = 1000
    confirm_m: int = 3
    confirm_n: int = 5
    visibility_threshold: float = 0.5
    terminate_scans: int = 3
    max_missed_scans: int = 3
    initial_visibility: float = 0.5
    max_tracks: int = 64
    velocity_inflation_std: float = 0.0
    initial_acceleration_std: float = 1e-4
    motion: MotionModel = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "measurement_noise_std",
            tuple(float(v) for v in self.measurement_noise_std),
        )
        if len(self.measurement_noise_std) != 2 or min(self.measurement_noise_std) <= 0:
            raise ConfigurationError(
                f"measurement_noise_std inválido: {self.measurement_noise_std}"
            )
        if not 0.0 < self.pfa < 1.0:
            raise ConfigurationError(f"pfa debe estar en (0,1): {self.pfa}")
        if not 0.0 <= self.visibility_stay <= 1.0:
            raise ConfigurationError(f"visibility_stay fuera de [0,1]: {self.visibility_stay}")
        if self.confirm_m > self.confirm_n or self.confirm_m < 1:
            raise ConfigurationError("Se requiere 1 <= confirm_m <= confirm_n")
        if self.max_tracks < 1:
            raise ConfigurationError("max_tracks debe ser al menos 1")
        if self.bp_max_iterations < 1 or self.bp_tolerance <= 0:
            raise ConfigurationError("Parámetros de convergencia de BP inválidos")
        object.__setattr__(self, "motion", MotionModel(self.scan_interval, self.sigma_a))
        # Valida pd_* y el prior de clutter
        self.detection_model()

    @property
    def R(self) -> np.ndarray:
        return np.diag(np.square(self.measurement_noise_std))

    @property
    def H(self) -> np.ndarray:
        return measurement_matrix(self.wavelength)

    @property
    def visibility_transition(self) -> np.ndarray:
        """Matriz 2x2 estocástica por filas, orden de estados (invisible, visible)"""
        stay = self.visibility_stay
        return np.array([[stay, 1.0 - stay], [1.0 - stay, stay]])

    @property
    def pfa_prior(self) -> float:
        if self.clutter_density is not None:
            return float(self.clutter_density)
        return self.pfa / self.surveillance_area

    def detection_model(self) -> DetectionModelParams:
        return DetectionModelParams(
            pd_visible=self.pd_visible,
            pd_invisible=self.pd_invisible,
            pfa_prior=self.pfa_prior,
        )
