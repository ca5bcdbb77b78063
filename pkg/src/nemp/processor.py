"""
Procesado de un scan completo y bucle iterativo MP → NN → DS → DA
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..detect.extraction import Measurement
from ..ds.evidence import (
    bba_from_probability,
    combine_with_conflict,
    pignistic,
    pignistic_clutter,
)
from ..exceptions import ConfigurationError
from ..nn.classifier import BaseClassifier
from ..output_manager import output_manager
from ..tracking.association import AssociationBeliefs, bp_data_association
from ..tracking.evaluation import evaluate_measurements
from ..tracking.kalman import predict_kinematic, update_kinematic
from ..tracking.models import TrackerParams
from ..tracking.tracks import Track, manage_tracks, unassociated_measurements
from ..tracking.visibility import evaluate_visibility, predict_visibility, update_visibility

ODDS_EPS = 1e-9


class TrackingMode(Enum):
    """Variantes del seguidor"""

    MP = "MP"
    MP_NN = "MP-NN"
    NEMP = "NEMP"

    @classmethod
    def parse(cls, value) -> "TrackingMode":
        if isinstance(value, cls):
            return value
        for mode in cls:
            if mode.value.lower() == str(value).strip().lower():
                return mode
        raise ConfigurationError(
            f"Método desconocido '{value}' (disponibles: {[m.value for m in cls]})"
        )


@dataclass(frozen=True)
class NempConfig:
    """Configuración del bucle de refinamiento"""

    iterations: int = 3
    mode: TrackingMode = TrackingMode.NEMP
    suppression_threshold: float = 0.5
    birth_threshold: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "mode", TrackingMode.parse(self.mode))
        if self.iterations < 1:
            raise ConfigurationError(f"iterations debe ser >= 1: {self.iterations}")
        for name in ("suppression_threshold", "birth_threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigurationError(f"{name} debe estar en [0,1]")


@dataclass(frozen=True)
class ScanState:
    """Estado del seguidor entre scans"""

    tracks: Tuple[Track, ...] = ()
    scan_index: int = -1
    next_track_id: int = 0
    config: NempConfig = field(default_factory=NempConfig)


@dataclass(frozen=True)
class DaLoopResult:
    """Salida de nemp_da_loop"""

    assoc: AssociationBeliefs
    fused: np.ndarray
    classifier_outputs: np.ndarray
    clutter_weights: np.ndarray
    conflicts_clamped: int = 0


@dataclass(frozen=True)
class ScanResult:
    state: ScanState
    assoc: AssociationBeliefs
    measurements: List[Measurement]
    fused: Optional[np.ndarray]
    classifier_outputs: Optional[np.ndarray]
    terminated: List[Track]
    diagnostics: Dict[str, Any]


def prior_target_belief(
    L: np.ndarray, detected: np.ndarray, clutter_weights: np.ndarray
) -> np.ndarray:
    """Creencia inicial de origen-blanco: 1 − c_j / (c_j + Σ_i d_i L_ij)"""
    if L.shape[1] <= 1:
        return np.zeros(0)
    target_mass = (np.asarray(detected).reshape(-1, 1) * L[1:, 1:]).sum(axis=0)
    clutter = np.asarray(clutter_weights, dtype=float)
    return np.clip(1.0 - clutter / (clutter + target_mass), 0.0, 1.0)


def _fuse(fg_target: np.ndarray, omegas: np.ndarray) -> Tuple[np.ndarray, np.ndarray, int]:
    target = np.empty(len(fg_target))
    clutter = np.empty(len(fg_target))
    clamped = 0
    for j, (f, w) in enumerate(zip(fg_target, omegas)):
        result = combine_with_conflict(
            bba_from_probability(float(np.clip(f, 0.0, 1.0)), "fg"),
            bba_from_probability(float(np.clip(w, 0.0, 1.0)), "nn"),
        )
        clamped += int(result.clamped)
        target[j] = pignistic(result.bba)
        clutter[j] = pignistic_clutter(result.bba)
    return target, clutter, clamped


def fuse_beliefs(fg_target: np.ndarray, omegas: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    pignistic(ds_combine(bba(fg), bba(ω))) por medida

    Returns:
        (probabilidad fusionada de origen-blanco, número de conflictos acotados)
    """
    target, _, clamped = _fuse(fg_target, omegas)
    return target, clamped


def clutter_odds_ratio(
    fused_target: np.ndarray, fused_clutter: np.ndarray, fg_target: np.ndarray
) -> np.ndarray:
    """
    odds_ħ(fusión) / odds_ħ(FG), acotado a [1e-9, 1e9]

    Las odds de la fusión se toman de las masas pignísticas de cada hipótesis
    para no perder precisión cerca de 0 y 1. Un cociente indeterminado (0/0)
    vale 1.
    """
    fg_target = np.clip(np.asarray(fg_target, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (fused_clutter * fg_target) / (fused_target * (1.0 - fg_target))
    ratio = np.where(np.isnan(ratio), 1.0, ratio)
    return np.clip(ratio, ODDS_EPS, 1.0 / ODDS_EPS)


def nemp_da_loop(
    L: np.ndarray,
    missed_weights: np.ndarray,
    detected_weights: np.ndarray,
    features: np.ndarray,
    classifier: BaseClassifier,
    iterations: int,
    params: TrackerParams,
) -> DaLoopResult:
    """
    Itera T veces: clasificación → fusión DS → pesos de clutter → BP

    El peso de clutter efectivo es pfa_prior · odds_ħ(fusión) / odds_ħ(FG), de
    modo que un clasificador que devuelve 0.5 deja intacto el prior.

    Args:
        L: Rejilla de verosimilitudes
        missed_weights: Pesos de detección perdida por blanco
        detected_weights: Pesos de detección por blanco
        features: Características CNN de cada medida
        classifier: Clasificador de medidas
        iterations: Número de iteraciones T
        params: Parámetros del seguidor

    Returns:
        DaLoopResult con las marginales y creencias finales
    """
    if iterations < 1:
        raise ConfigurationError("Se requiere al menos una iteración")
    n_meas = L.shape[1] - 1
    prior = np.full(n_meas, params.pfa_prior)
    fg_target = prior_target_belief(L, detected_weights, prior)

    fused = np.zeros(n_meas)
    omegas = np.zeros(n_meas)
    weights = prior
    clamped_total = 0
    assoc = None
    for _ in range(iterations):
        if n_meas:
            omegas = np.asarray(classifier.classify(features, fg_target), dtype=float)
            fused, fused_clutter, clamped = _fuse(fg_target, omegas)
            clamped_total += clamped
            weights = params.pfa_prior * clutter_odds_ratio(fused, fused_clutter, fg_target)
        assoc = bp_data_association(
            L,
            missed_weights,
            detected_weights,
            weights,
            tolerance=params.bp_tolerance,
            max_iterations=params.bp_max_iterations,
        )
        fg_target = assoc.target_belief()

    if clamped_total:
        output_manager.warning(
            f"{clamped_total} combinaciones DS con conflicto total resueltas por acotado"
        )
    return DaLoopResult(assoc, fused, omegas, np.asarray(weights, dtype=float), clamped_total)


def process_scan(
    state: ScanState,
    measurements: Sequence[Measurement],
    classifier: Optional[BaseClassifier],
    params: TrackerParams,
) -> ScanResult:
    """
    Predicción → evaluación → (NN + DS) → asociación → actualización → gestión

    Args:
        state: Estado tras el scan anterior
        measurements: Medidas del scan actual
        classifier: Clasificador (obligatorio salvo en modo MP)
        params: Parámetros del seguidor

    Returns:
        ScanResult con el nuevo estado y los diagnósticos del scan
    """
    cfg = state.config
    scan = state.scan_index + 1
    if cfg.mode != TrackingMode.MP and classifier is None:
        raise ConfigurationError(f"El modo {cfg.mode.value} requiere un clasificador")

    detection = params.detection_model()
    tracks = list(state.tracks)
    predicted_kin = [predict_kinematic(t.kinematic, params.motion) for t in tracks]
    predicted_vis = [
        predict_visibility(t.visibility, params.visibility_transition) for t in tracks
    ]
    weights = [evaluate_visibility(v, detection) for v in predicted_vis]
    missed = np.array([w[0] for w in weights])
    detected = np.array([w[1] for w in weights])

    measurements = list(measurements)
    positions = [m.position for m in measurements]
    L = evaluate_measurements(predicted_kin, positions, params)
    prior = np.full(len(measurements), params.pfa_prior)

    fused = None
    omegas = None
    diagnostics: Dict[str, Any] = {"scan": scan, "mode": cfg.mode.value}

    if cfg.mode == TrackingMode.MP_NN and measurements:
        patches = np.stack([m.rd_patch for m in measurements])
        fg_prior = prior_target_belief(L, detected, prior)
        omegas_all = classifier.predict(patches, fg_prior)
        keep = np.flatnonzero(omegas_all >= cfg.suppression_threshold)
        diagnostics["suppressed"] = int(len(measurements) - keep.size)
        diagnostics["classifier_outputs_all"] = omegas_all.tolist()
        measurements = [measurements[j] for j in keep]
        positions = [positions[j] for j in keep]
        L = np.concatenate([L[:, :1], L[:, 1:][:, keep]], axis=1)
        prior = prior[keep]
        omegas = omegas_all[keep]

    if cfg.mode == TrackingMode.NEMP:
        features = (
            classifier.features(np.stack([m.rd_patch for m in measurements]))
            if measurements
            else np.zeros((0, 0))
        )
        loop = nemp_da_loop(L, missed, detected, features, classifier, cfg.iterations, params)
        assoc, fused, omegas = loop.assoc, loop.fused, loop.classifier_outputs
        diagnostics["clutter_weights"] = loop.clutter_weights.tolist()
        diagnostics["conflicts_clamped"] = loop.conflicts_clamped
    else:
        assoc = bp_data_association(
            L,
            missed,
            detected,
            prior,
            tolerance=params.bp_tolerance,
            max_iterations=params.bp_max_iterations,
        )

    updated = []
    for i, track in enumerate(tracks, start=1):
        kin = update_kinematic(predicted_kin[i - 1], positions, assoc.target_row(i), params)
        vis = update_visibility(predicted_vis[i - 1], assoc.missed(i), detection)
        updated.append(replace(track, kinematic=kin, visibility=vis))

    births = unassociated_measurements(assoc)
    if cfg.mode == TrackingMode.NEMP and omegas is not None:
        births = [j for j in births if omegas[j] >= cfg.birth_threshold]
    management = manage_tracks(
        updated,
        assoc,
        [positions[j] for j in births],
        scan,
        params,
        state.next_track_id,
    )

    diagnostics.update(
        {
            "n_measurements": len(measurements),
            "n_tracks": len(management.tracks),
            "bp_converged": assoc.converged,
            "bp_iterations": assoc.iterations,
            "marginals": assoc.marginals.tolist(),
            "fused": None if fused is None else np.asarray(fused).tolist(),
            "classifier_outputs": None if omegas is None else np.asarray(omegas).tolist(),
        }
    )
    new_state = ScanState(
        tracks=tuple(management.tracks),
        scan_index=scan,
        next_track_id=management.next_track_id,
        config=cfg,
    )
    return ScanResult(
        state=new_state,
        assoc=assoc,
        measurements=measurements,
        fused=fused,
        classifier_outputs=omegas,
        terminated=management.terminated,
        diagnostics=diagnostics,
    )
