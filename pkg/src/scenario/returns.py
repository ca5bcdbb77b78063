"""
Síntesis de los retornos de los blancos embebidos en clutter
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .clutter import ClutterModelFactory, ar1_gaussian
from .config import ClutterParams, ScenarioConfig
from .truth import TruthTarget


@dataclass(frozen=True)
class PulseMatrix:
    """Muestras complejas de un scan, M bins de rango x P pulsos"""

    samples: np.ndarray
    prf: float
    wavelength: float
    range_bin_size: float
    range_start: float = 0.0
    scan_index: int = 0

    @property
    def n_range_bins(self) -> int:
        return self.samples.shape[0]

    @property
    def n_pulses(self) -> int:
        return self.samples.shape[1]


def target_power(scr_db: float, clutter_power: float) -> float:
    """P_t = 10^{SCR/10} · P_c"""
    return 10.0 ** (scr_db / 10.0) * clutter_power


def range_occupancy(
    center: float, radial_length: float, config: ScenarioConfig
) -> np.ndarray:
    """
    Fracción ω(m) de la extensión radial del blanco que cae en cada bin

    Args:
        center: Rango del centro del blanco (m)
        radial_length: Longitud radial (m)
        config: Configuración del escenario

    Returns:
        Vector de M fracciones que suma 1 si el blanco está dentro de la ventana
    """
    edges = config.range_start + np.arange(config.n_range_bins + 1) * config.range_bin_size
    low = center - 0.5 * radial_length
    high = center + 0.5 * radial_length
    overlap = np.clip(np.minimum(edges[1:], high) - np.maximum(edges[:-1], low), 0.0, None)
    return overlap / radial_length


def fluctuation_sequence(
    n_pulses: int, config: ScenarioConfig, rng: np.random.Generator
) -> np.ndarray:
    """Secuencia positiva a(p): AR(1) sobre la log-amplitud con potencia media unitaria"""
    g = ar1_gaussian(1, n_pulses, config.rcs_ar_coefficient, rng)[0]
    a = np.exp(config.rcs_log_std * g)
    return a / np.sqrt(np.mean(a**2))


def target_component(
    state: np.ndarray,
    radial_length: float,
    power: float,
    amplitude: np.ndarray,
    phase: float,
    config: ScenarioConfig,
) -> np.ndarray:
    """
    Retorno de un blanco: sqrt(P_t ω(m)) a(p) exp(j(4πR(p)/λ + φ))

    Args:
        state: (rango, velocidad radial, aceleración radial) al inicio del scan
        radial_length: Longitud radial del blanco
        power: Potencia total P_t
        amplitude: Secuencia a(p) de longitud P
        phase: Fase inicial φ
        config: Configuración del escenario

    Returns:
        Matriz compleja M x P
    """
    r, rr, acc = (float(v) for v in state)
    t = np.arange(len(amplitude)) / config.prf
    ranges = r + rr * t + 0.5 * acc * t**2
    omega = range_occupancy(r, radial_length, config)
    carrier = np.exp(1j * (4.0 * np.pi * ranges / config.wavelength + phase))
    return np.sqrt(power * omega)[:, None] * (amplitude * carrier)[None, :]


def synthesize_returns(
    truth: Sequence[TruthTarget],
    clutter: ClutterParams,
    scr_db: float,
    rng_seed,
    config: ScenarioConfig,
    include_clutter: bool = True,
) -> List[PulseMatrix]:
    """
    Genera una matriz de pulsos por scan

    Args:
        truth: Blancos reales
        clutter: Parámetros del clutter
        scr_db: Relación señal-clutter nominal en dB
        rng_seed: Semilla, SeedSequence o Generator
        config: Configuración del escenario
        include_clutter: False genera solo los blancos (escenas limpias)

    Returns:
        Lista de PulseMatrix, una por scan
    """
    rng = np.random.default_rng(rng_seed)
    model = ClutterModelFactory.create(clutter)
    power = target_power(scr_db, clutter.mean_power)
    M, P = config.n_range_bins, config.pulses_per_scan

    matrices = []
    for scan in range(config.n_scans):
        if include_clutter:
            samples = model.generate(M, P, config.prf, rng)
        else:
            samples = np.zeros((M, P), dtype=complex)
        for target in truth:
            if not target.alive(scan):
                continue
            phase = rng.uniform(-np.pi, np.pi)
            amplitude = fluctuation_sequence(P, config, rng)
            samples = samples + target_component(
                target.state_at(scan), target.radial_length, power, amplitude, phase, config
            )
        matrices.append(
            PulseMatrix(
                samples=samples,
                prf=config.prf,
                wavelength=config.wavelength,
                range_bin_size=config.range_bin_size,
                range_start=config.range_start,
                scan_index=scan,
            )
        )
    return matrices
