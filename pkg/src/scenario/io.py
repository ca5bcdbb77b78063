"""
Persistencia de mapas RD y matrices de pulsos: binario little-endian plano
más un sidecar JSON con forma, tipo y ejes
"""

import json
from pathlib import Path
from typing import Any, Dict, Tuple

import numpy as np

from ..exceptions import DatasetError
from .rd_map import RDMap
from .returns import PulseMatrix


def _write_blob(stem: Path, array: np.ndarray, dtype: str, header: Dict[str, Any]) -> Path:
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    data = np.ascontiguousarray(array, dtype=dtype)
    data.tofile(stem.with_suffix(".bin"))
    header = dict(header, shape=list(data.shape), dtype=dtype)
    with open(stem.with_suffix(".json"), "w", encoding="utf-8") as f:
        json.dump(header, f, indent=2)
    return stem


def _read_blob(stem: Path) -> Tuple[np.ndarray, Dict[str, Any]]:
    stem = Path(stem)
    try:
        with open(stem.with_suffix(".json"), "r", encoding="utf-8") as f:
            header = json.load(f)
        data = np.fromfile(stem.with_suffix(".bin"), dtype=header["dtype"])
    except (OSError, KeyError, ValueError) as e:
        raise DatasetError(f"No se pudo leer {stem}.bin/.json: {e}") from e
    shape = tuple(header["shape"])
    if data.size != int(np.prod(shape)):
        raise DatasetError(
            f"{stem}.bin contiene {data.size} valores, se esperaban {int(np.prod(shape))}"
        )
    return data.reshape(shape), header


def save_rd_map(stem: Path, rd_map: RDMap) -> Path:
    return _write_blob(
        stem,
        rd_map.amplitude,
        "<f8",
        {
            "kind": "rd_map",
            "units": "dB",
            "scan_index": rd_map.scan_index,
            "doppler_axis": rd_map.doppler_axis.tolist(),
            "range_axis": rd_map.range_axis.tolist(),
        },
    )


def load_rd_map(stem: Path) -> RDMap:
    data, header = _read_blob(stem)
    return RDMap(
        amplitude=data,
        doppler_axis=np.asarray(header["doppler_axis"], dtype=float),
        range_axis=np.asarray(header["range_axis"], dtype=float),
        scan_index=int(header["scan_index"]),
    )


def save_pulse_matrix(stem: Path, pulses: PulseMatrix) -> Path:
    return _write_blob(
        stem,
        pulses.samples,
        "<c16",
        {
            "kind": "pulse_matrix",
            "scan_index": pulses.scan_index,
            "prf": pulses.prf,
            "wavelength": pulses.wavelength,
            "range_bin_size": pulses.range_bin_size,
            "range_start": pulses.range_start,
        },
    )


def load_pulse_matrix(stem: Path) -> PulseMatrix:
    data, header = _read_blob(stem)
    return PulseMatrix(
        samples=data,
        prf=float(header["prf"]),
        wavelength=float(header["wavelength"]),
        range_bin_size=float(header["range_bin_size"]),
        range_start=float(header["range_start"]),
        scan_index=int(header["scan_index"]),
    )
