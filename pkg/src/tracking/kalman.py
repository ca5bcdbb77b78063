"""
Predicción y actualización gaussiana del estado cinemático
"""

from typing import Sequence

import numpy as np

from ..exceptions import ShapeError
from .models import KinematicBelief, MotionModel, TrackerParams, range_rate_from_doppler

COVARIANCE_JITTER = 1e-9


def regularize_covariance(covariance: np.ndarray) -> np.ndarray:
    """
    Simetriza una covarianza y añade jitter diagonal si no admite Cholesky

    Args:
        covariance: Matriz cuadrada

    Returns:
        Matriz simétrica definida positiva
    """
    sym = 0.5 * (covariance + covariance.T)
    jitter = COVARIANCE_JITTER
    for _ in range(10):
        try:
            np.linalg.cholesky(sym)
            return sym
        except np.linalg.LinAlgError:
            sym = sym + jitter * np.eye(sym.shape[0])
            jitter *= 10.0
    return sym


def predict_kinematic(prev: KinematicBelief, motion: MotionModel) -> KinematicBelief:
    """
    Predicción de Kalman: mean ← F·mean, P ← F·P·Fᵀ + Q

    Args:
        prev: Creencia del scan anterior
        motion: Modelo de aceleración constante

    Returns:
        Creencia predicha
    """
    F = motion.F
    mean = F @ prev.mean
    covariance = F @ prev.covariance @ F.T + motion.Q
    return KinematicBelief(mean, regularize_covariance(covariance))


def kalman_update(
    pred: KinematicBelief, z: np.ndarray, H: np.ndarray, R: np.ndarray
) -> KinematicBelief:
    """Actualización de Kalman estándar en forma de Joseph"""
    z = np.asarray(z, dtype=float)
    P = pred.covariance
    S = H @ P @ H.T + R
    K = np.linalg.solve(S, H @ P).T
    mean = pred.mean + K @ (z - H @ pred.mean)
    I_KH = np.eye(P.shape[0]) - K @ H
    covariance = I_KH @ P @ I_KH.T + K @ R @ K.T
    return KinematicBelief(mean, regularize_covariance(covariance))


def update_kinematic(
    pred: KinematicBelief,
    measurements: Sequence[np.ndarray],
    weights: Sequence[float],
    params: TrackerParams,
) -> KinematicBelief:
    """
    Actualización log-lineal con exponentes â_{i,j}

    La información añadida Σ_j â_j HᵀR⁻¹H equivale a una única medida
    sintética z̄ = Σ â_j z_j / Σ â_j con covarianza R / Σ â_j, que se procesa
    con el filtro de Kalman en forma de Joseph.

    Args:
        pred: Creencia predicha
        measurements: Posiciones (rango, Doppler) de las medidas del scan
        weights: Marginales â_{i,j} para j ≥ 1 (misma longitud que measurements)
        params: Parámetros del seguidor

    Returns:
        Creencia posterior
    """
    if len(measurements) != len(weights):
        raise ShapeError(
            f"{len(measurements)} medidas frente a {len(weights)} pesos de asociación"
        )
    w = np.clip(np.asarray(weights, dtype=float), 0.0, None)
    total = float(w.sum())
    if total <= 0.0:
        return pred

    Z = np.asarray(measurements, dtype=float).reshape(-1, 2)
    z_bar = (w[:, None] * Z).sum(axis=0) / total
    return kalman_update(pred, z_bar, params.H, params.R / total)


def two_point_initialization(
    z: np.ndarray, params: TrackerParams
) -> KinematicBelief:
    """
    Inicialización de un track a partir de una única medida (rango, Doppler)

    Args:
        z: Medida (rango m, Doppler Hz)
        params: Parámetros del seguidor

    Returns:
        Creencia inicial con aceleración nula
    """
    r, f = float(z[0]), float(z[1])
    sigma_r, sigma_f = params.measurement_noise_std
    lam = params.wavelength
    mean = np.array([r, float(range_rate_from_doppler(f, lam)), 0.0])
    velocity_var = (0.5 * lam * sigma_f) ** 2 + params.velocity_inflation_std**2
    covariance = np.diag(
        [sigma_r**2, velocity_var, params.initial_acceleration_std**2]
    )
    return KinematicBelief(mean, covariance)
