"""
Estructura del directorio de salida y lectura/escritura de los CSV de resultados
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import AbstractSet, Dict, Iterable, List, Sequence

from .exceptions import DatasetError
from .metrics.report import RUN_COLUMNS, SERIES_COLUMNS, SUMMARY_COLUMNS

LABEL_COLUMNS = ["index", "scr_db", "run", "scan", "range_m", "doppler_hz", "belief", "label"]
LOSS_COLUMNS = ["step", "epoch", "train_loss", "val_loss", "val_accuracy"]

_INT_COLUMNS = frozenset({"run", "ids", "frag", "scan", "n_runs", "index", "label", "step", "epoch"})
# ids y frag son medias en summary.csv
_SUMMARY_INT_COLUMNS = frozenset({"n_runs"})
_TEXT_COLUMNS = {"method"}


@dataclass(frozen=True)
class OutputLayout:
    """Rutas del directorio de salida de un experimento"""

    root: Path

    def __post_init__(self):
        object.__setattr__(self, "root", Path(self.root))

    @property
    def dataset_dir(self) -> Path:
        return self.root / "dataset"

    @property
    def dataset_stem(self) -> Path:
        return self.dataset_dir / "measurements"

    @property
    def labels_csv(self) -> Path:
        return self.dataset_dir / "labels.csv"

    @property
    def weights_dir(self) -> Path:
        return self.root / "weights"

    @property
    def weights_stem(self) -> Path:
        return self.weights_dir / "classifier"

    @property
    def loss_curve_csv(self) -> Path:
        return self.weights_dir / "loss_curve.csv"

    @property
    def results_dir(self) -> Path:
        return self.root / "results"

    @property
    def runs_csv(self) -> Path:
        return self.results_dir / "runs.csv"

    @property
    def summary_csv(self) -> Path:
        return self.results_dir / "summary.csv"

    @property
    def series_csv(self) -> Path:
        return self.results_dir / "series.csv"

    @property
    def tracks_dir(self) -> Path:
        return self.root / "tracks"

    @property
    def diagnostics_dir(self) -> Path:
        return self.root / "diagnostics"


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)


def _parse(column: str, text: str, int_columns: AbstractSet[str] = _INT_COLUMNS):
    if column in _TEXT_COLUMNS:
        return text
    if text == "":
        return None
    if column in int_columns:
        return int(text)
    return float(text)


def write_rows(path: Path, columns: Sequence[str], rows: Iterable[Dict[str, object]]) -> Path:
    """
    Escribe filas en CSV con las columnas dadas

    Los valores ausentes se escriben como celda vacía y los reales con repr
    para que la lectura recupere el mismo valor.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format(row.get(c)) for c in columns])
    return path


def read_rows(
    path: Path,
    columns: Sequence[str] = None,
    int_columns: AbstractSet[str] = _INT_COLUMNS,
) -> List[Dict[str, object]]:
    """
    Lee un CSV escrito con write_rows

    Args:
        path: Fichero CSV
        columns: Columnas obligatorias
        int_columns: Columnas que se leen como enteros

    Raises:
        DatasetError: Si el fichero no existe o le faltan columnas
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"No existe el fichero de resultados: {path}")
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        missing = set(columns or ()) - set(reader.fieldnames or ())
        if missing:
            raise DatasetError(f"{path}: faltan columnas {sorted(missing)}")
        try:
            return [{k: _parse(k, v, int_columns) for k, v in record.items()} for record in reader]
        except ValueError as e:
            raise DatasetError(f"{path}: valor ilegible ({e})") from e


def _run_key(row: Dict[str, object]):
    return (str(row["method"]), float(row["scr_db"]), int(row["run"]))


def write_runs(path: Path, rows: Iterable[Dict[str, object]]) -> Path:
    """runs.csv: una fila por (método, SCR, ejecución), en orden estable"""
    return write_rows(path, RUN_COLUMNS, sorted(rows, key=_run_key))


def load_runs(path: Path) -> List[Dict[str, object]]:
    return read_rows(path, RUN_COLUMNS)


def write_summary(path: Path, rows: Iterable[Dict[str, object]]) -> Path:
    return write_rows(path, SUMMARY_COLUMNS, rows)


def load_summary(path: Path) -> List[Dict[str, object]]:
    return read_rows(path, SUMMARY_COLUMNS, _SUMMARY_INT_COLUMNS)


def write_series(path: Path, rows: Iterable[Dict[str, object]]) -> Path:
    """series.csv en formato largo: (método, SCR, ejecución, scan)"""
    ordered = sorted(rows, key=lambda r: _run_key(r) + (int(r["scan"]),))
    return write_rows(path, SERIES_COLUMNS, ordered)


def load_series(path: Path) -> List[Dict[str, object]]:
    return read_rows(path, SERIES_COLUMNS)


def write_labels(path: Path, rows: Iterable[Dict[str, object]]) -> Path:
    return write_rows(path, LABEL_COLUMNS, rows)


def load_labels(path: Path) -> List[Dict[str, object]]:
    return read_rows(path, LABEL_COLUMNS)


def write_loss_curve(path: Path, rows: Iterable[Dict[str, object]]) -> Path:
    return write_rows(path, LOSS_COLUMNS, rows)
