"""
Strategy + Factory para modelos de clutter marino
================================================

Cada modelo genera una matriz compleja (bins de rango x pulsos) con
potencia media P_c más ruido térmico blanco.
"""

from abc import ABC, abstractmethod
from typing import Dict, List, Type

import numpy as np
from scipy import signal, stats

from ..exceptions import ConfigurationError
from .config import ClutterParams


def ar1_gaussian(
    n_rows: int, n_steps: int, coefficient: float, rng: np.random.Generator
) -> np.ndarray:
    """
    Procesos AR(1) gaussianos estacionarios de varianza unitaria, uno por fila

    Args:
        n_rows: Número de procesos independientes
        n_steps: Longitud de cada proceso
        coefficient: Coeficiente de correlación a un paso en [0, 1)
        rng: Generador aleatorio

    Returns:
        Matriz n_rows x n_steps
    """
    start = rng.standard_normal((n_rows, 1))
    innovations = rng.standard_normal((n_rows, n_steps))
    if n_steps == 0:
        return innovations
    if coefficient == 0.0:
        innovations[:, :1] = start
        return innovations
    gain = np.sqrt(1.0 - coefficient**2)
    innovations[:, 0] = 0.0
    out, _ = signal.lfilter(
        [gain], [1.0, -coefficient], innovations, axis=1, zi=start
    )
    return out


def gaussian_doppler_psd(
    n_pulses: int, prf: float, mean_doppler: float, spectral_width: float
) -> np.ndarray:
    """
    PSD gaussiana (con aliasing periódico) normalizada a media unitaria,
    evaluada en el orden de salida de la FFT
    """
    freqs = np.fft.fftfreq(n_pulses, d=1.0 / prf)
    psd = np.zeros(n_pulses)
    for shift in (-prf, 0.0, prf):
        psd += np.exp(-0.5 * ((freqs - mean_doppler + shift) / spectral_width) ** 2)
    return psd / psd.mean()


class ClutterModel(ABC):
    """Interfaz abstracta para modelos de clutter"""

    def __init__(self, params: ClutterParams):
        self.params = params

    @abstractmethod
    def texture(self, n_range_bins: int, n_pulses: int, rng: np.random.Generator) -> np.ndarray:
        """Textura (potencia local) de media unitaria, bins x pulsos"""

    @abstractmethod
    def get_name(self) -> str:
        """Nombre registrado del modelo"""

    def speckle(
        self, n_range_bins: int, n_pulses: int, prf: float, rng: np.random.Generator
    ) -> np.ndarray:
        """Speckle complejo de potencia unitaria con espectro Doppler gaussiano"""
        white = (
            rng.standard_normal((n_range_bins, n_pulses))
            + 1j * rng.standard_normal((n_range_bins, n_pulses))
        ) / np.sqrt(2.0)
        psd = gaussian_doppler_psd(
            n_pulses, prf, self.params.mean_doppler, self.params.spectral_width
        )
        # El mapa RD aplica la DFT de núcleo inverso: el espectro se modela en ese dominio
        return np.fft.fft(white * np.sqrt(psd)[None, :], axis=1, norm="ortho")

    def generate(
        self, n_range_bins: int, n_pulses: int, prf: float, rng: np.random.Generator
    ) -> np.ndarray:
        """
        Genera clutter más ruido térmico

        Args:
            n_range_bins: Bins de rango M
            n_pulses: Pulsos P
            prf: Frecuencia de repetición de pulsos
            rng: Generador aleatorio

        Returns:
            Matriz compleja M x P
        """
        tau = self.texture(n_range_bins, n_pulses, rng)
        clutter = np.sqrt(self.params.mean_power * tau) * self.speckle(
            n_range_bins, n_pulses, prf, rng
        )
        if self.params.noise_power > 0:
            noise = (
                rng.standard_normal((n_range_bins, n_pulses))
                + 1j * rng.standard_normal((n_range_bins, n_pulses))
            ) * np.sqrt(self.params.noise_power / 2.0)
            clutter = clutter + noise
        return clutter


class KDistributedClutter(ClutterModel):
    """
    Clutter compuesto-gaussiano con textura gamma(ν, 1/ν) correlada AR(1)

    La textura se obtiene transformando un AR(1) gaussiano con la CDF normal
    y la función cuantil gamma.
    """

    def texture(self, n_range_bins, n_pulses, rng):
        g = ar1_gaussian(n_range_bins, n_pulses, self.params.texture_correlation, rng)
        u = np.clip(stats.norm.cdf(g), 1e-12, 1.0 - 1e-12)
        nu = self.params.shape
        return stats.gamma.ppf(u, a=nu, scale=1.0 / nu)

    def get_name(self) -> str:
        return "k-distributed"


class GaussianClutter(ClutterModel):
    """Clutter gaussiano (textura constante)"""

    def texture(self, n_range_bins, n_pulses, rng):
        return np.ones((n_range_bins, n_pulses))

    def get_name(self) -> str:
        return "gaussian"


class ClutterModelFactory:
    """Registro de modelos de clutter disponibles"""

    _models: Dict[str, Type[ClutterModel]] = {
        "k-distributed": KDistributedClutter,
        "gaussian": GaussianClutter,
    }

    @classmethod
    def register_model(cls, name: str, model_class: Type[ClutterModel]) -> None:
        """
        Registra un nuevo modelo de clutter

        Args:
            name: Nombre del modelo
            model_class: Clase que hereda de ClutterModel
        """
        if not issubclass(model_class, ClutterModel):
            raise ValueError(f"El modelo {name} debe heredar de ClutterModel")
        cls._models[name] = model_class

    @classmethod
    def create(cls, params: ClutterParams) -> ClutterModel:
        if params.model not in cls._models:
            raise ConfigurationError(f"Modelo de clutter '{params.model}' no registrado")
        return cls._models[params.model](params)

    @classmethod
    def get_available_models(cls) -> List[str]:
        return list(cls._models.keys())
