"""
OSPA con distancia de Mahalanobis en el espacio rango-Doppler
"""

from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..tracking.models import doppler_from_range_rate

DEFAULT_CUTOFF = 9.4
DEFAULT_ORDER = 2
DEFAULT_SCALES = (15.0, 0.1)


def default_covariance(scales: Sequence[float] = DEFAULT_SCALES) -> np.ndarray:
    return np.diag(np.asarray(scales, dtype=float) ** 2)


def state_to_rd(states: np.ndarray, wavelength: float) -> np.ndarray:
    """Convierte estados (r, ṙ, a) en posiciones (rango, Doppler)"""
    states = np.asarray(states, dtype=float).reshape(-1, 3)
    return np.column_stack([states[:, 0], doppler_from_range_rate(states[:, 1], wavelength)])


def mahalanobis_matrix(a: np.ndarray, b: np.ndarray, covariance: np.ndarray) -> np.ndarray:
    """Distancias de Mahalanobis entre todas las filas de a y de b"""
    a = np.asarray(a, dtype=float).reshape(-1, 2)
    b = np.asarray(b, dtype=float).reshape(-1, 2)
    diff = a[:, None, :] - b[None, :, :]
    inv = np.linalg.inv(covariance)
    d2 = np.einsum("mni,ij,mnj->mn", diff, inv, diff)
    return np.sqrt(np.maximum(d2, 0.0))


def ospa(
    truth_set: np.ndarray,
    estimate_set: np.ndarray,
    c: float = DEFAULT_CUTOFF,
    p: float = DEFAULT_ORDER,
    covariance: np.ndarray = None,
) -> float:
    """
    Distancia OSPA entre dos conjuntos de posiciones (rango, Doppler)

    Args:
        truth_set: Posiciones reales (n, 2)
        estimate_set: Posiciones estimadas (m, 2)
        c: Distancia de corte
        p: Orden de la norma
        covariance: Covarianza de la distancia base (por defecto diag(15², 0.1²))

    Returns:
        Valor en [0, c]
    """
    if c <= 0 or p < 1:
        raise ValueError(f"OSPA requiere c > 0 y p >= 1 (c={c}, p={p})")
    X = np.asarray(truth_set, dtype=float).reshape(-1, 2)
    Y = np.asarray(estimate_set, dtype=float).reshape(-1, 2)
    m, n = len(X), len(Y)
    if m == 0 and n == 0:
        return 0.0
    if m == 0 or n == 0:
        return float(c)

    cov = default_covariance() if covariance is None else np.asarray(covariance, dtype=float)
    cost = np.minimum(mahalanobis_matrix(X, Y, cov), c) ** p
    rows, cols = linear_sum_assignment(cost)
    total = cost[rows, cols].sum() + (c**p) * abs(m - n)
    return float(min((total / max(m, n)) ** (1.0 / p), c))
