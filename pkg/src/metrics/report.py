"""
Informe de métricas por (método, SCR, ejecución) y agregados
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..nemp.tracker import TrackEstimate
from ..scenario.truth import TruthTarget
from .clear_mot import rmse, track_metrics
from .ospa import DEFAULT_CUTOFF, DEFAULT_ORDER, default_covariance, ospa, state_to_rd

RUN_COLUMNS = [
    "method",
    "scr_db",
    "run",
    "amot",
    "ids",
    "frag",
    "rmse_position_m",
    "rmse_velocity_cms",
    "mospa",
]
SUMMARY_COLUMNS = ["method", "scr_db", "n_runs"] + RUN_COLUMNS[3:]
SERIES_COLUMNS = ["method", "scr_db", "run", "scan", "ospa", "rmse_position_m", "rmse_velocity_cms"]


@dataclass(frozen=True)
class MetricConfig:
    """Parámetros de evaluación"""

    cutoff: float = DEFAULT_CUTOFF
    order: float = DEFAULT_ORDER
    scales: tuple = (15.0, 0.1)
    match_gate: float = DEFAULT_CUTOFF

    @property
    def covariance(self) -> np.ndarray:
        return default_covariance(self.scales)


@dataclass
class MetricReport:
    """Métricas de una ejecución Monte Carlo"""

    method: str
    scr_db: float
    run: int
    amot: float
    ids: int
    frag: int
    rmse_position: Optional[float]
    rmse_velocity: Optional[float]
    mospa: float
    ospa_per_scan: List[float] = field(default_factory=list)
    rmse_position_per_scan: List[Optional[float]] = field(default_factory=list)
    rmse_velocity_per_scan: List[Optional[float]] = field(default_factory=list)

    def as_row(self) -> Dict[str, object]:
        """Fila de runs.csv (velocidad en cm/s)"""
        return {
            "method": self.method,
            "scr_db": self.scr_db,
            "run": self.run,
            "amot": self.amot,
            "ids": self.ids,
            "frag": self.frag,
            "rmse_position_m": self.rmse_position,
            "rmse_velocity_cms": None if self.rmse_velocity is None else 100.0 * self.rmse_velocity,
            "mospa": self.mospa,
        }

    def series_rows(self) -> List[Dict[str, object]]:
        rows = []
        for scan, value in enumerate(self.ospa_per_scan):
            vel = self.rmse_velocity_per_scan[scan]
            rows.append(
                {
                    "method": self.method,
                    "scr_db": self.scr_db,
                    "run": self.run,
                    "scan": scan,
                    "ospa": value,
                    "rmse_position_m": self.rmse_position_per_scan[scan],
                    "rmse_velocity_cms": None if vel is None else 100.0 * vel,
                }
            )
        return rows


def evaluate_run(
    truth: Sequence[TruthTarget],
    estimates: Sequence[Sequence[TrackEstimate]],
    wavelength: float,
    method: str,
    scr_db: float,
    run: int,
    config: MetricConfig = None,
) -> MetricReport:
    """
    Calcula todas las métricas de una ejecución

    Args:
        truth: Blancos reales
        estimates: Tracks confirmados por scan
        wavelength: Longitud de onda
        method: Nombre del método (MP, MP-NN, NEMP)
        scr_db: SCR de la ejecución
        run: Índice Monte Carlo
        config: Parámetros de evaluación

    Returns:
        MetricReport
    """
    config = config or MetricConfig()
    cov = config.covariance
    score = track_metrics(truth, estimates, wavelength, config.match_gate, cov)

    ospa_series = []
    for scan, scan_estimates in enumerate(estimates):
        truth_states = np.array([t.state_at(scan) for t in truth if t.alive(scan)]).reshape(-1, 3)
        est_states = np.array([e.state for e in scan_estimates]).reshape(-1, 3)
        ospa_series.append(
            ospa(
                state_to_rd(truth_states, wavelength),
                state_to_rd(est_states, wavelength),
                config.cutoff,
                config.order,
                cov,
            )
        )

    pos_series, vel_series = [], []
    for scan in range(len(estimates)):
        pos, vel = rmse([m for m in score.matches if m.scan == scan])
        pos_series.append(pos)
        vel_series.append(vel)

    rmse_pos, rmse_vel = rmse(score.matches)
    return MetricReport(
        method=method,
        scr_db=scr_db,
        run=run,
        amot=score.amot,
        ids=score.ids,
        frag=score.frag,
        rmse_position=rmse_pos,
        rmse_velocity=rmse_vel,
        mospa=float(np.mean(ospa_series)) if ospa_series else float("nan"),
        ospa_per_scan=ospa_series,
        rmse_position_per_scan=pos_series,
        rmse_velocity_per_scan=vel_series,
    )


def _present(value) -> bool:
    return value is not None and not (isinstance(value, float) and math.isnan(value))


def aggregate_reports(rows: Iterable[Dict[str, object]]) -> List[Dict[str, object]]:
    """
    Media por (método, SCR) de las filas de runs.csv, ignorando valores ausentes

    Returns:
        Filas de summary.csv ordenadas por método y SCR
    """
    groups = defaultdict(list)
    for row in rows:
        groups[(str(row["method"]), float(row["scr_db"]))].append(row)

    summary = []
    for (method, scr_db), members in sorted(groups.items()):
        entry = {"method": method, "scr_db": scr_db, "n_runs": len(members)}
        for column in RUN_COLUMNS[3:]:
            values = [float(r[column]) for r in members if _present(r.get(column))]
            entry[column] = float(np.mean(values)) if values else None
        summary.append(entry)
    return summary
