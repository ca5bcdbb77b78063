"""
Generación de trayectorias de verdad con el modelo de aceleración constante
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..exceptions import ConfigurationError
from ..tracking.models import MotionModel
from .config import ScenarioConfig


@dataclass(frozen=True)
class TruthTarget:
    """Trayectoria real de un blanco"""

    id: int
    states: np.ndarray
    radial_length: float
    birth_scan: int
    death_scan: int

    def alive(self, scan: int) -> bool:
        return self.birth_scan <= scan <= self.death_scan

    def state_at(self, scan: int) -> np.ndarray:
        return self.states[scan - self.birth_scan]


def noise_factor(covariance: np.ndarray) -> np.ndarray:
    """Factor G con G·Gᵀ = covariance, válido también para matrices singulares"""
    eigvals, eigvecs = np.linalg.eigh(0.5 * (covariance + covariance.T))
    return eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))


def propagate_states(
    x0: np.ndarray,
    motion: MotionModel,
    n_scans: int,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """
    Propaga un estado inicial durante n_scans

    Args:
        x0: Estado inicial (rango, velocidad radial, aceleración radial)
        motion: Modelo de movimiento
        n_scans: Número total de estados a devolver (incluye x0)
        rng: Generador para el ruido de proceso; None propaga sin ruido

    Returns:
        Matriz n_scans x 3
    """
    F = motion.F
    G = noise_factor(motion.Q) if (rng is not None and motion.sigma_a > 0) else None
    states = np.empty((n_scans, 3))
    states[0] = np.asarray(x0, dtype=float)
    for k in range(1, n_scans):
        states[k] = F @ states[k - 1]
        if G is not None:
            states[k] = states[k] + G @ rng.standard_normal(3)
    return states


def generate_truth(config: ScenarioConfig, rng_seed) -> List[TruthTarget]:
    """
    Muestrea n_targets trayectorias que permanecen dentro de la ventana de rango

    Por cada intento se extraen, en este orden, rango, velocidad, aceleración
    y longitud radial uniformes, seguidos del ruido de proceso de cada scan.

    Args:
        config: Configuración del escenario
        rng_seed: Semilla, SeedSequence o Generator

    Returns:
        Lista de blancos vivos durante todo el escenario
    """
    rng = np.random.default_rng(rng_seed)
    motion = config.motion
    low, high = config.range_extent
    max_length = config.target_length_bounds[1]

    targets = []
    for target_id in range(config.n_targets):
        for _ in range(config.max_sampling_attempts):
            x0 = np.array(
                [
                    rng.uniform(*config.initial_range_bounds),
                    rng.uniform(*config.initial_velocity_bounds),
                    rng.uniform(*config.initial_acceleration_bounds),
                ]
            )
            length = float(rng.uniform(*config.target_length_bounds))
            states = propagate_states(x0, motion, config.n_scans, rng)
            ranges = states[:, 0]
            if ranges.min() >= low + max_length and ranges.max() <= high - max_length:
                break
        else:
            raise ConfigurationError(
                f"No se pudo muestrear una trayectoria dentro de [{low}, {high}] m "
                f"tras {config.max_sampling_attempts} intentos"
            )
        targets.append(
            TruthTarget(
                id=target_id,
                states=states,
                radial_length=length,
                birth_scan=0,
                death_scan=config.n_scans - 1,
            )
        )
    return targets
