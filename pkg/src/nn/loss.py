"""
Entropía cruzada binaria ponderada
"""

from typing import Tuple

import numpy as np

PROB_CLAMP = 1e-7


def bce_loss(
    predictions: np.ndarray, labels: np.ndarray, pos_weight: float = 1.0
) -> Tuple[float, np.ndarray]:
    """
    −(1/N) Σ [w·y ln ω + (1−y) ln(1−ω)] con ω acotada a [1e-7, 1−1e-7]

    El gradiente es nulo donde la predicción cae fuera de la cota, igual que
    la derivada de la pérdida acotada.

    Args:
        predictions: Probabilidades predichas
        labels: Etiquetas 0/1
        pos_weight: Peso de la clase positiva

    Returns:
        (pérdida, gradiente respecto de las predicciones)
    """
    p = np.asarray(predictions, dtype=float).reshape(-1)
    y = np.asarray(labels, dtype=float).reshape(-1)
    n = p.size
    if n == 0:
        return 0.0, np.zeros(0)
    inside = (p >= PROB_CLAMP) & (p <= 1.0 - PROB_CLAMP)
    p = np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)
    loss = -np.mean(pos_weight * y * np.log(p) + (1.0 - y) * np.log(1.0 - p))
    grad = np.where(inside, -(pos_weight * y / p - (1.0 - y) / (1.0 - p)) / n, 0.0)
    return float(loss), grad


def accuracy(predictions: np.ndarray, labels: np.ndarray) -> float:
    p = np.asarray(predictions).reshape(-1)
    y = np.asarray(labels).reshape(-1)
    if p.size == 0:
        return float("nan")
    return float(np.mean((p >= 0.5) == (y >= 0.5)))
