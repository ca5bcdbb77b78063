"""
Modelo oculto de Markov de la visibilidad de cada blanco
"""

from typing import Tuple

import numpy as np

from ..exceptions import ConfigurationError
from .models import DetectionModelParams, VisibilityBelief


def _check_transition(transition: np.ndarray) -> np.ndarray:
    T = np.asarray(transition, dtype=float)
    if T.shape != (2, 2):
        raise ConfigurationError(f"La matriz de transición debe ser 2x2: {T.shape}")
    if np.any(T < 0) or not np.allclose(T.sum(axis=1), 1.0, atol=1e-12):
        raise ConfigurationError("La matriz de transición no es estocástica por filas")
    return T


def predict_visibility(prev: VisibilityBelief, transition: np.ndarray) -> VisibilityBelief:
    """
    Propaga la probabilidad de visibilidad con la cadena de Markov

    Args:
        prev: Creencia anterior
        transition: Matriz 2x2, filas = estado anterior (invisible, visible)

    Returns:
        Creencia predicha
    """
    T = _check_transition(transition)
    p = prev.p_visible
    p_new = (1.0 - p) * T[0, 1] + p * T[1, 1]
    return VisibilityBelief(float(np.clip(p_new, 0.0, 1.0)))


def evaluate_visibility(
    vis: VisibilityBelief, params: DetectionModelParams
) -> Tuple[float, float]:
    """
    Pesos de detección y de detección perdida de un blanco

    Returns:
        (peso_perdida, peso_detectado)
    """
    p = vis.p_visible
    detected = params.pd_visible * p + params.pd_invisible * (1.0 - p)
    missed = (1.0 - params.pd_visible) * p + (1.0 - params.pd_invisible) * (1.0 - p)
    return missed, detected


def update_visibility(
    vis: VisibilityBelief,
    missed_belief: float,
    params: DetectionModelParams,
) -> VisibilityBelief:
    """
    Actualiza la visibilidad con la marginal de detección perdida b(a_{i,0}=1)

    Args:
        vis: Creencia predicha
        missed_belief: Probabilidad de que el blanco no haya generado medida
        params: Modelo de detección

    Returns:
        Creencia posterior
    """
    b_missed = float(np.clip(missed_belief, 0.0, 1.0))
    b_detected = 1.0 - b_missed
    p = vis.p_visible

    visible = p * (params.pd_visible * b_detected + (1.0 - params.pd_visible) * b_missed)
    invisible = (1.0 - p) * (
        params.pd_invisible * b_detected + (1.0 - params.pd_invisible) * b_missed
    )
    total = visible + invisible
    if total <= 0.0 or not np.isfinite(total):
        return vis
    return VisibilityBelief(float(np.clip(visible / total, 0.0, 1.0)))
