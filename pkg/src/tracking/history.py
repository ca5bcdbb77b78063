"""
Historial de tracks por scan y exportación a CSV
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List

from .tracks import Track

HISTORY_COLUMNS = [
    "scan",
    "track_id",
    "status",
    "range_m",
    "range_rate_mps",
    "range_accel_mps2",
    "p_visible",
]


@dataclass(frozen=True)
class TrackHistoryRow:
    scan: int
    track_id: int
    status: str
    range_m: float
    range_rate_mps: float
    range_accel_mps2: float
    p_visible: float

    def as_list(self) -> list:
        return [
            self.scan,
            self.track_id,
            self.status,
            repr(self.range_m),
            repr(self.range_rate_mps),
            repr(self.range_accel_mps2),
            repr(self.p_visible),
        ]


class TrackHistory:
    """Acumula el estado de los tracks scan a scan"""

    def __init__(self):
        self.rows: List[TrackHistoryRow] = []

    def record(self, scan: int, tracks: Iterable[Track]):
        """
        Registra una fila por track (activos y terminados en el scan)

        Args:
            scan: Índice del scan
            tracks: Tracks a registrar
        """
        for track in tracks:
            mean = track.kinematic.mean
            self.rows.append(
                TrackHistoryRow(
                    scan=scan,
                    track_id=track.id,
                    status=track.status.value,
                    range_m=float(mean[0]),
                    range_rate_mps=float(mean[1]),
                    range_accel_mps2=float(mean[2]),
                    p_visible=float(track.visibility.p_visible),
                )
            )

    def export(self, path: Path) -> Path:
        """Escribe el historial a CSV"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(HISTORY_COLUMNS)
            for row in self.rows:
                writer.writerow(row.as_list())
        return path


def load_track_history(path: Path) -> List[TrackHistoryRow]:
    """Lee un historial exportado con export()"""
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as f:
        for record in csv.DictReader(f):
            rows.append(
                TrackHistoryRow(
                    scan=int(record["scan"]),
                    track_id=int(record["track_id"]),
                    status=record["status"],
                    range_m=float(record["range_m"]),
                    range_rate_mps=float(record["range_rate_mps"]),
                    range_accel_mps2=float(record["range_accel_mps2"]),
                    p_visible=float(record["p_visible"]),
                )
            )
    return rows
