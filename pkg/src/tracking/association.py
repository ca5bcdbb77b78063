"""
Asociación de datos por propagación de creencias sobre el grafo bipartito
blancos-medidas
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..exceptions import ShapeError
from ..output_manager import output_manager

_TINY = 1e-300


@dataclass(frozen=True)
class AssociationBeliefs:
    """
    Marginales b(a_{i,j}=1) de un scan

    La fila 0 es la hipótesis de clutter de cada medida y la columna 0 la
    detección perdida de cada blanco; la celda [0, 0] no tiene significado.
    measurement_clutter es la marginal de clutter calculada del lado de las
    medidas, c_j / (c_j + Σ_i μ_{i→j}).
    """

    marginals: np.ndarray
    converged: bool = True
    iterations: int = 0
    measurement_clutter: Optional[np.ndarray] = None

    @property
    def n_targets(self) -> int:
        return self.marginals.shape[0] - 1

    @property
    def n_measurements(self) -> int:
        return self.marginals.shape[1] - 1

    def missed(self, i: int) -> float:
        """b(a_{i,0}=1) del blanco i (1-indexado)"""
        return float(self.marginals[i, 0])

    def target_row(self, i: int) -> np.ndarray:
        """Marginales de asociación del blanco i con las medidas j ≥ 1"""
        return self.marginals[i, 1:]

    def clutter(self) -> np.ndarray:
        """b(a_{0,j}=1) de cada medida"""
        return self.marginals[0, 1:]

    def target_belief(self) -> np.ndarray:
        """Probabilidad de que cada medida provenga de algún blanco"""
        return 1.0 - self.clutter()

    def check_normalization(self, tolerance: float = 1e-6) -> bool:
        """
        Comprueba que cada fila de blanco sume 1 y que la marginal de clutter
        del lado de las medidas coincida con el complemento de su columna
        """
        rows = self.marginals[1:, :].sum(axis=1)
        if not np.all(np.abs(rows - 1.0) <= tolerance):
            return False
        column_clutter = 1.0 - self.marginals[1:, 1:].sum(axis=0)
        side = column_clutter if self.measurement_clutter is None else self.measurement_clutter
        return bool(np.all(np.abs(side - column_clutter) <= tolerance))


def bp_data_association(
    likelihoods: np.ndarray,
    missed_weights: Sequence[float],
    detected_weights: Sequence[float],
    clutter_weights: Sequence[float],
    tolerance: float = 1e-6,
    max_iterations: int = 1000,
) -> AssociationBeliefs:
    """
    Iteración simplificada de mensajes blanco→medida (μ) y medida→blanco (ν)

    Pesos del lado blanco: β_i0 = peso de detección perdida,
    β_ij = peso de detección · L[i][j]. Lado medida: c_j = peso de clutter.

        μ_{i→j} = β_ij / (β_i0 + Σ_{j'≠j} β_ij' ν_{j'→i})
        ν_{j→i} = 1 / (c_j + Σ_{i'≠i} μ_{i'→j})

    Args:
        likelihoods: Rejilla (N_T+1) x (N_M+1) de evaluate_measurements
        missed_weights: β_i0 de cada blanco
        detected_weights: Peso de detección de cada blanco
        clutter_weights: c_j de cada medida, estrictamente positivos
        tolerance: Umbral sobre el cambio relativo máximo de ν
        max_iterations: Máximo de iteraciones

    Returns:
        AssociationBeliefs con las marginales normalizadas
    """
    L = np.asarray(likelihoods, dtype=float)
    n_targets, n_meas = L.shape[0] - 1, L.shape[1] - 1
    beta0 = np.asarray(missed_weights, dtype=float).reshape(-1)
    detected = np.asarray(detected_weights, dtype=float).reshape(-1)
    c = np.asarray(clutter_weights, dtype=float).reshape(-1)

    if beta0.size != n_targets or detected.size != n_targets:
        raise ShapeError(
            f"Se esperaban {n_targets} pesos de visibilidad, recibidos {beta0.size}"
        )
    if c.size != n_meas:
        raise ShapeError(f"Se esperaban {n_meas} pesos de clutter, recibidos {c.size}")
    if np.any(c <= 0) or not np.all(np.isfinite(c)):
        raise ValueError("Los pesos de clutter deben ser positivos y finitos")

    marginals = np.zeros((n_targets + 1, n_meas + 1))
    if n_targets == 0:
        marginals[0, 1:] = 1.0
        return AssociationBeliefs(marginals, measurement_clutter=np.ones(n_meas))
    if n_meas == 0:
        marginals[1:, 0] = 1.0
        return AssociationBeliefs(marginals, measurement_clutter=np.ones(0))

    beta = detected[:, None] * L[1:, 1:]

    nu = np.broadcast_to(1.0 / c, (n_targets, n_meas)).copy()
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        weighted = beta * nu
        denom_mu = beta0[:, None] + weighted.sum(axis=1, keepdims=True) - weighted
        mu = beta / np.maximum(denom_mu, _TINY)

        denom_nu = c[None, :] + mu.sum(axis=0, keepdims=True) - mu
        nu_new = 1.0 / denom_nu

        change = np.max(np.abs(nu_new - nu) / nu_new)
        nu = nu_new
        if change < tolerance:
            converged = True
            break

    if not converged:
        output_manager.warning(
            f"BP sin converger tras {iterations} iteraciones"
        )

    weighted = beta * nu
    row_total = np.maximum(beta0 + weighted.sum(axis=1), _TINY)
    marginals[1:, 0] = beta0 / row_total
    marginals[1:, 1:] = weighted / row_total[:, None]
    marginals[0, 1:] = np.clip(1.0 - marginals[1:, 1:].sum(axis=0), 0.0, 1.0)

    denom_mu = beta0[:, None] + weighted.sum(axis=1, keepdims=True) - weighted
    mu = beta / np.maximum(denom_mu, _TINY)
    measurement_clutter = c / (c + mu.sum(axis=0))
    return AssociationBeliefs(
        marginals,
        converged=converged,
        iterations=iterations,
        measurement_clutter=measurement_clutter,
    )
