"""
Evaluación de medidas: verosimilitud de campo medio con gating elíptico
"""

from typing import Sequence

import numpy as np

from ..exceptions import ConfigurationError
from .models import KinematicBelief, TrackerParams


def evaluate_measurements(
    predictions: Sequence[KinematicBelief],
    measurements: Sequence[np.ndarray],
    params: TrackerParams,
) -> np.ndarray:
    """
    Construye la rejilla de verosimilitudes L[i][j]

    Para i ≥ 1, j ≥ 1: N(z_j; H m_i, R) · exp(−½ tr(R⁻¹ H P_i Hᵀ)), anulada
    fuera de la puerta Mahalanobis sobre S = H P Hᵀ + R. La fila 0 contiene
    el prior de clutter y la columna 0 no se usa (la cubren los pesos de
    visibilidad).

    Args:
        predictions: Creencias predichas de los N_T tracks
        measurements: Posiciones (rango, Doppler) de las N_M medidas
        params: Parámetros del seguidor

    Returns:
        Matriz (N_T+1) x (N_M+1)
    """
    R = params.R
    H = params.H
    try:
        np.linalg.cholesky(R)
    except np.linalg.LinAlgError as e:
        raise ConfigurationError("La covarianza de medida R es singular") from e

    R_inv = np.linalg.inv(R)
    norm = 1.0 / (2.0 * np.pi * np.sqrt(np.linalg.det(R)))

    n_targets = len(predictions)
    n_meas = len(measurements)
    L = np.zeros((n_targets + 1, n_meas + 1))
    L[0, 1:] = params.pfa_prior
    if n_meas == 0 or n_targets == 0:
        return L

    Z = np.asarray(measurements, dtype=float).reshape(n_meas, 2)
    for i, pred in enumerate(predictions, start=1):
        HP = H @ pred.covariance @ H.T
        S_inv = np.linalg.inv(HP + R)
        correction = np.exp(-0.5 * np.trace(R_inv @ HP))

        nu = Z - H @ pred.mean
        gate_d2 = np.einsum("ni,ij,nj->n", nu, S_inv, nu)
        r_d2 = np.einsum("ni,ij,nj->n", nu, R_inv, nu)
        values = norm * np.exp(-0.5 * r_d2) * correction
        L[i, 1:] = np.where(gate_d2 <= params.gate_threshold, values, 0.0)
    return L
