"""
Núcleo del seguidor por paso de mensajes: filtrado cinemático, visibilidad,
evaluación de medidas, asociación de datos y gestión de tracks
"""

from .association import AssociationBeliefs, bp_data_association
from .evaluation import evaluate_measurements
from .history import TrackHistory, load_track_history
from .kalman import (
    kalman_update,
    predict_kinematic,
    regularize_covariance,
    two_point_initialization,
    update_kinematic,
)
from .models import (
    SPEED_OF_LIGHT,
    DetectionModelParams,
    KinematicBelief,
    MotionModel,
    TrackerParams,
    VisibilityBelief,
    doppler_from_range_rate,
    measurement_matrix,
    process_noise,
    range_rate_from_doppler,
    transition_matrix,
)
from .tracks import Track, TrackStatus, TrackUpdate, manage_tracks, unassociated_measurements
from .visibility import evaluate_visibility, predict_visibility, update_visibility

__all__ = [
    "AssociationBeliefs",
    "bp_data_association",
    "evaluate_measurements",
    "TrackHistory",
    "load_track_history",
    "kalman_update",
    "predict_kinematic",
    "regularize_covariance",
    "two_point_initialization",
    "update_kinematic",
    "SPEED_OF_LIGHT",
    "DetectionModelParams",
    "KinematicBelief",
    "MotionModel",
    "TrackerParams",
    "VisibilityBelief",
    "doppler_from_range_rate",
    "measurement_matrix",
    "process_noise",
    "range_rate_from_doppler",
    "transition_matrix",
    "Track",
    "TrackStatus",
    "TrackUpdate",
    "manage_tracks",
    "unassociated_measurements",
    "evaluate_visibility",
    "predict_visibility",
    "update_visibility",
]
