"""
Bucle NEMP: paso de mensajes, clasificación neuronal y fusión DS por scan
"""

from .processor import (
    DaLoopResult,
    NempConfig,
    ScanResult,
    ScanState,
    TrackingMode,
    clutter_odds_ratio,
    fuse_beliefs,
    nemp_da_loop,
    prior_target_belief,
    process_scan,
)
from .tracker import MultiTargetTracker, TrackEstimate, TrackingRun, run_tracker

__all__ = [
    "DaLoopResult",
    "NempConfig",
    "ScanResult",
    "ScanState",
    "TrackingMode",
    "clutter_odds_ratio",
    "fuse_beliefs",
    "nemp_da_loop",
    "prior_target_belief",
    "process_scan",
    "MultiTargetTracker",
    "TrackEstimate",
    "TrackingRun",
    "run_tracker",
]
