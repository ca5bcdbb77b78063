"""
Gestión de tracks: confirmación M-de-N, terminación y nacimiento
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from ..output_manager import output_manager
from .association import AssociationBeliefs
from .kalman import two_point_initialization
from .models import KinematicBelief, TrackerParams, VisibilityBelief


class TrackStatus(Enum):
    """Estados del ciclo de vida de un track"""

    TENTATIVE = "tentative"
    CONFIRMED = "confirmed"
    TERMINATED = "terminated"


@dataclass(frozen=True)
class Track:
    """Track con creencias cinemática y de visibilidad"""

    id: int
    kinematic: KinematicBelief
    visibility: VisibilityBelief
    status: TrackStatus = TrackStatus.TENTATIVE
    miss_streak: int = 0
    low_streak: int = 0
    confirm_window: Tuple[bool, ...] = field(default_factory=tuple)
    birth_scan: int = 0

    @property
    def is_confirmed(self) -> bool:
        return self.status == TrackStatus.CONFIRMED


@dataclass(frozen=True)
class TrackUpdate:
    """Resultado de manage_tracks"""

    tracks: List[Track]
    terminated: List[Track]
    next_track_id: int


def unassociated_measurements(
    assoc: AssociationBeliefs, threshold: float = 0.5
) -> List[int]:
    """
    Índices (0-indexados) de medidas cuya masa de asociación a blancos es menor
    que el umbral
    """
    if assoc.n_measurements == 0:
        return []
    target_mass = assoc.marginals[1:, 1:].sum(axis=0)
    return [int(j) for j in np.flatnonzero(target_mass < threshold)]


def _advance(track: Track, missed_belief: float, params: TrackerParams) -> Track:
    p = track.visibility.p_visible
    decision = p > params.visibility_threshold
    window = (track.confirm_window + (decision,))[-params.confirm_n :]
    low_streak = track.low_streak + 1 if p < params.visibility_threshold else 0
    miss_streak = track.miss_streak + 1 if missed_belief > 0.5 else 0

    status = track.status
    if status == TrackStatus.TENTATIVE and sum(window) >= params.confirm_m:
        status = TrackStatus.CONFIRMED
    if low_streak >= params.terminate_scans or miss_streak > params.max_missed_scans:
        status = TrackStatus.TERMINATED

    return replace(
        track,
        status=status,
        confirm_window=window,
        low_streak=low_streak,
        miss_streak=miss_streak,
    )


def manage_tracks(
    tracks: Sequence[Track],
    assoc: AssociationBeliefs,
    births: Sequence[np.ndarray],
    scan: int,
    params: TrackerParams,
    next_track_id: int,
) -> TrackUpdate:
    """
    Aplica las reglas de confirmación/terminación y crea tracks nuevos

    Args:
        tracks: Tracks ya actualizados, en el orden de las filas de assoc
        assoc: Marginales de asociación del scan
        births: Posiciones (rango, Doppler) de las medidas que inician tracks
        scan: Índice del scan actual
        params: Parámetros del seguidor
        next_track_id: Siguiente identificador libre

    Returns:
        TrackUpdate con tracks activos, terminados y el nuevo contador de ids
    """
    active: List[Track] = []
    terminated: List[Track] = []

    for i, track in enumerate(tracks, start=1):
        missed = assoc.missed(i) if i <= assoc.n_targets else 1.0
        advanced = _advance(track, missed, params)
        if advanced.status == TrackStatus.TERMINATED:
            terminated.append(advanced)
        else:
            active.append(advanced)

    for z in births:
        active.append(
            Track(
                id=next_track_id,
                kinematic=two_point_initialization(z, params),
                visibility=VisibilityBelief(params.initial_visibility),
                birth_scan=scan,
            )
        )
        next_track_id += 1

    excess = len(active) - params.max_tracks
    if excess > 0:
        tentative = sorted(
            (t for t in active if t.status == TrackStatus.TENTATIVE),
            key=lambda t: (t.visibility.p_visible, -t.id),
        )
        dropped = {t.id for t in tentative[:excess]}
        if dropped:
            output_manager.warning(
                f"Capacidad de {params.max_tracks} tracks superada en el scan {scan}: "
                f"se descartan {len(dropped)} tracks tentativos"
            )
        for t in active:
            if t.id in dropped:
                terminated.append(replace(t, status=TrackStatus.TERMINATED))
        active = [t for t in active if t.id not in dropped]

    return TrackUpdate(active, terminated, next_track_id)
