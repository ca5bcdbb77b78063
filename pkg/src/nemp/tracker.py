"""
Seguidor multi-blanco: encadena process_scan sobre una secuencia de scans
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..detect.extraction import Measurement
from ..nn.classifier import BaseClassifier
from ..tracking.history import TrackHistory
from ..tracking.models import TrackerParams
from .processor import NempConfig, ScanResult, ScanState, TrackingMode, process_scan


@dataclass(frozen=True)
class TrackEstimate:
    """Estado de un track confirmado en un scan"""

    track_id: int
    state: np.ndarray


@dataclass
class TrackingRun:
    """Salida de un seguimiento completo"""

    estimates: List[List[TrackEstimate]] = field(default_factory=list)
    marginals: List[np.ndarray] = field(default_factory=list)
    history: TrackHistory = field(default_factory=TrackHistory)
    final_state: Optional[ScanState] = None


class MultiTargetTracker:
    """
    Mantiene el ScanState entre scans y registra historial y estimaciones

    Args:
        params: Parámetros del seguidor
        config: Configuración del modo (MP, MP-NN, NEMP)
        classifier: Clasificador de medidas (no necesario en modo MP)
        on_scan: Callback opcional invocado con cada ScanResult
    """

    def __init__(
        self,
        params: TrackerParams,
        config: NempConfig = None,
        classifier: BaseClassifier = None,
        on_scan: Callable[[ScanResult], None] = None,
    ):
        self.params = params
        self.config = config or NempConfig(mode=TrackingMode.MP)
        self.classifier = classifier
        self.on_scan = on_scan
        self.state = ScanState(config=self.config)
        self.run = TrackingRun()

    def step(self, measurements: Sequence[Measurement]) -> ScanResult:
        result = process_scan(self.state, measurements, self.classifier, self.params)
        self.state = result.state
        scan = result.state.scan_index
        self.run.history.record(scan, list(result.state.tracks) + list(result.terminated))
        self.run.estimates.append(
            [
                TrackEstimate(t.id, t.kinematic.mean.copy())
                for t in result.state.tracks
                if t.is_confirmed
            ]
        )
        self.run.marginals.append(result.assoc.marginals)
        self.run.final_state = result.state
        if self.on_scan is not None:
            self.on_scan(result)
        return result


def run_tracker(
    scans: Sequence[Sequence[Measurement]],
    params: TrackerParams,
    config: NempConfig = None,
    classifier: BaseClassifier = None,
    on_scan: Callable[[ScanResult], None] = None,
) -> TrackingRun:
    """Procesa todos los scans en orden y devuelve el TrackingRun"""
    tracker = MultiTargetTracker(params, config, classifier, on_scan)
    for measurements in scans:
        tracker.step(measurements)
    return tracker.run
