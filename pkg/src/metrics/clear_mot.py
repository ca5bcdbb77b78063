"""
Métricas CLEAR-MOT (AMOT, cambios de identidad, fragmentación) y RMSE
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..nemp.tracker import TrackEstimate
from ..scenario.truth import TruthTarget
from .ospa import DEFAULT_CUTOFF, default_covariance, mahalanobis_matrix, state_to_rd

_UNREACHABLE = 1e12


@dataclass(frozen=True)
class MatchedPair:
    scan: int
    truth_id: int
    track_id: int
    truth_state: np.ndarray
    estimate_state: np.ndarray


@dataclass
class TrackScore:
    """Recuentos acumulados de un escenario"""

    amot: float = float("nan")
    ids: int = 0
    frag: int = 0
    false_negatives: int = 0
    false_positives: int = 0
    truth_presences: int = 0
    matches: List[MatchedPair] = field(default_factory=list)


def match_scan(
    truth_positions: np.ndarray,
    truth_ids: Sequence[int],
    estimate_positions: np.ndarray,
    track_ids: Sequence[int],
    previous: Dict[int, int],
    gate: float,
    covariance: np.ndarray,
) -> List[Tuple[int, int]]:
    """
    Emparejamiento de un scan: conserva las parejas previas dentro de la
    puerta y resuelve el resto con el algoritmo húngaro

    Returns:
        Lista de pares (índice de verdad, índice de estimación)
    """
    if len(truth_ids) == 0 or len(track_ids) == 0:
        return []
    dist = mahalanobis_matrix(truth_positions, estimate_positions, covariance)
    pairs = []
    used_t, used_e = set(), set()
    track_index = {tid: e for e, tid in enumerate(track_ids)}
    for t, gid in enumerate(truth_ids):
        e = track_index.get(previous.get(gid))
        if e is not None and dist[t, e] <= gate:
            pairs.append((t, e))
            used_t.add(t)
            used_e.add(e)

    free_t = [t for t in range(len(truth_ids)) if t not in used_t]
    free_e = [e for e in range(len(track_ids)) if e not in used_e]
    if free_t and free_e:
        sub = dist[np.ix_(free_t, free_e)]
        cost = np.where(sub <= gate, sub, _UNREACHABLE)
        rows, cols = linear_sum_assignment(cost)
        pairs += [(free_t[r], free_e[c]) for r, c in zip(rows, cols) if sub[r, c] <= gate]
    return sorted(pairs)


def track_metrics(
    truth: Sequence[TruthTarget],
    estimates: Sequence[Sequence[TrackEstimate]],
    wavelength: float,
    gate: float = DEFAULT_CUTOFF,
    covariance: np.ndarray = None,
) -> TrackScore:
    """
    AMOT, IDS y Frag de un escenario

    AMOT = 1 − (FN + FP + IDS) / presencias de verdad; NaN sin presencias.

    Args:
        truth: Blancos reales
        estimates: Tracks confirmados por scan
        wavelength: Longitud de onda
        gate: Distancia de Mahalanobis máxima de emparejamiento
        covariance: Covarianza de la distancia base

    Returns:
        TrackScore con los recuentos y las parejas emparejadas
    """
    cov = default_covariance() if covariance is None else covariance
    score = TrackScore()
    previous: Dict[int, int] = {}
    last_track: Dict[int, int] = {}
    tracked_before: Set[int] = set()

    for scan, scan_estimates in enumerate(estimates):
        alive = [t for t in truth if t.alive(scan)]
        truth_ids = [t.id for t in alive]
        truth_states = np.array([t.state_at(scan) for t in alive]).reshape(-1, 3)
        track_ids = [e.track_id for e in scan_estimates]
        est_states = np.array([e.state for e in scan_estimates]).reshape(-1, 3)

        pairs = match_scan(
            state_to_rd(truth_states, wavelength),
            truth_ids,
            state_to_rd(est_states, wavelength),
            track_ids,
            previous,
            gate,
            cov,
        )
        current = {truth_ids[t]: track_ids[e] for t, e in pairs}
        for t, e in pairs:
            gid, tid = truth_ids[t], track_ids[e]
            if gid in last_track and last_track[gid] != tid:
                score.ids += 1
            last_track[gid] = tid
            score.matches.append(MatchedPair(scan, gid, tid, truth_states[t], est_states[e]))

        for gid in current:
            # reanudación tras al menos un scan sin emparejar
            if gid in tracked_before and gid not in previous:
                score.frag += 1
            tracked_before.add(gid)

        score.truth_presences += len(truth_ids)
        score.false_negatives += len(truth_ids) - len(pairs)
        score.false_positives += len(track_ids) - len(pairs)
        previous = current

    if score.truth_presences:
        errors = score.false_negatives + score.false_positives + score.ids
        score.amot = 1.0 - errors / score.truth_presences
    return score


def rmse(pairs: Sequence[MatchedPair]) -> Tuple[Optional[float], Optional[float]]:
    """
    RMSE de rango (m) y velocidad radial (m/s) sobre parejas emparejadas

    Returns:
        (rmse_posición, rmse_velocidad), ambos None si no hay parejas
    """
    if not pairs:
        return None, None
    diff = np.array([p.estimate_state[:2] - p.truth_state[:2] for p in pairs])
    values = np.sqrt(np.mean(diff**2, axis=0))
    return float(values[0]), float(values[1])
