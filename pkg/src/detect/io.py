"""
Serialización de medidas: JSON-lines con los campos espaciales y un blob
binario con los parches
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import DatasetError
from .extraction import Measurement


def write_measurements(
    stem: Path,
    measurements: Sequence[Measurement],
    extra: Optional[Sequence[Dict[str, Any]]] = None,
) -> Path:
    """
    Escribe <stem>.jsonl, <stem>.bin (float64 LE) y <stem>.json

    Args:
        stem: Ruta sin extensión
        measurements: Medidas a guardar
        extra: Campos adicionales por medida (etiqueta, creencia, semilla...)

    Returns:
        El stem escrito
    """
    stem = Path(stem)
    if extra is not None and len(extra) != len(measurements):
        raise DatasetError("extra debe tener un registro por medida")
    stem.parent.mkdir(parents=True, exist_ok=True)

    if measurements:
        patch_shape = list(measurements[0].rd_patch.shape)
        patches = np.stack([m.rd_patch for m in measurements]).astype("<f8")
    else:
        patch_shape = [0, 0]
        patches = np.zeros((0,), dtype="<f8")

    try:
        with open(stem.with_suffix(".jsonl"), "w", encoding="utf-8") as f:
            for idx, m in enumerate(measurements):
                record = {
                    "index": idx,
                    "range": m.range,
                    "doppler": m.doppler,
                    "n_primitives": m.n_primitives,
                    "scan_index": m.scan_index,
                    "range_bin": m.range_bin,
                    "edge_padded": m.edge_padded,
                }
                if extra is not None:
                    record.update(extra[idx])
                f.write(json.dumps(record, sort_keys=True) + "\n")
        np.ascontiguousarray(patches).tofile(stem.with_suffix(".bin"))
        with open(stem.with_suffix(".json"), "w", encoding="utf-8") as f:
            json.dump(
                {
                    "kind": "measurements",
                    "count": len(measurements),
                    "patch_shape": patch_shape,
                    "dtype": "<f8",
                },
                f,
                indent=2,
            )
    except OSError as e:
        raise DatasetError(f"Error escribiendo medidas en {stem}: {e}") from e
    return stem


def read_measurements(stem: Path) -> Tuple[List[Measurement], List[Dict[str, Any]]]:
    """
    Lee medidas escritas con write_measurements

    Returns:
        (medidas, registros JSON completos con los campos adicionales)
    """
    stem = Path(stem)
    try:
        with open(stem.with_suffix(".json"), "r", encoding="utf-8") as f:
            header = json.load(f)
        with open(stem.with_suffix(".jsonl"), "r", encoding="utf-8") as f:
            records = [json.loads(line) for line in f if line.strip()]
        blob = np.fromfile(stem.with_suffix(".bin"), dtype=header["dtype"])
    except (OSError, KeyError, ValueError) as e:
        raise DatasetError(f"No se pudo leer el conjunto de medidas {stem}: {e}") from e

    count = int(header["count"])
    if len(records) != count:
        raise DatasetError(f"{stem}.jsonl tiene {len(records)} registros, se esperaban {count}")
    shape = tuple(header["patch_shape"])
    if blob.size != count * int(np.prod(shape)):
        raise DatasetError(f"{stem}.bin no coincide con la forma {shape} x {count}")
    patches = blob.reshape((count,) + shape) if count else np.zeros((0,) + shape)

    measurements = [
        Measurement(
            range=float(r["range"]),
            doppler=float(r["doppler"]),
            rd_patch=patches[i],
            n_primitives=int(r["n_primitives"]),
            scan_index=int(r["scan_index"]),
            range_bin=int(r["range_bin"]),
            edge_padded=bool(r["edge_padded"]),
        )
        for i, r in enumerate(records)
    ]
    return measurements, records
