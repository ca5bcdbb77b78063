"""
Persistencia de pesos: cabecera JSON + blob float64 little-endian
"""

import json
from pathlib import Path

import numpy as np

from ..exceptions import ConfigurationError
from .classifier import MeasurementClassifier
from .networks import CnnConfig, MlpConfig

FORMAT_VERSION = 1


def _tensors(classifier: MeasurementClassifier):
    for prefix, net in (("cnn", classifier.cnn), ("mlp", classifier.mlp)):
        for name, p in net.named_parameters():
            yield f"{prefix}.{name}", p.data, "parameter"
        for name, value in net.buffers().items():
            yield f"{prefix}.{name}", value, "buffer"


def save_classifier(stem: Path, classifier: MeasurementClassifier, extra: dict = None) -> Path:
    """
    Escribe <stem>.json y <stem>.bin

    Args:
        stem: Ruta sin extensión
        classifier: Clasificador entrenado
        extra: Metadatos adicionales (métricas de validación, semilla...)
    """
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    entries, blobs, offset = [], [], 0
    for name, value, kind in _tensors(classifier):
        data = np.asarray(value, dtype="<f8")
        entries.append(
            {"name": name, "kind": kind, "shape": list(data.shape), "offset": offset, "count": int(data.size)}
        )
        blobs.append(data.reshape(-1))
        offset += data.size

    header = {
        "format_version": FORMAT_VERSION,
        "dtype": "<f8",
        "cnn_config": classifier.cnn_config.to_dict(),
        "mlp_config": classifier.mlp_config.to_dict(),
        "tensors": entries,
        "metadata": extra or {},
    }
    np.concatenate(blobs).astype("<f8").tofile(stem.with_suffix(".bin"))
    with open(stem.with_suffix(".json"), "w", encoding="utf-8") as f:
        json.dump(header, f, indent=2)
    return stem


def load_classifier(stem: Path) -> MeasurementClassifier:
    """
    Reconstruye un clasificador guardado con save_classifier

    Raises:
        ConfigurationError: Si los pesos no existen o no son coherentes
    """
    stem = Path(stem)
    if stem.suffix in (".json", ".bin"):
        stem = stem.with_suffix("")
    header_path, blob_path = stem.with_suffix(".json"), stem.with_suffix(".bin")
    if not header_path.exists() or not blob_path.exists():
        raise ConfigurationError(f"No se encontraron pesos en {header_path} / {blob_path}")

    try:
        with open(header_path, "r", encoding="utf-8") as f:
            header = json.load(f)
        blob = np.fromfile(blob_path, dtype=header.get("dtype", "<f8"))
        cnn_config = CnnConfig(**header["cnn_config"])
        mlp_config = MlpConfig(**header["mlp_config"])
    except (OSError, KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"Pesos ilegibles en {stem}: {e}") from e

    classifier = MeasurementClassifier(cnn_config, mlp_config)
    params = {}
    for prefix, net in (("cnn", classifier.cnn), ("mlp", classifier.mlp)):
        for name, p in net.named_parameters():
            params[f"{prefix}.{name}"] = p

    buffers = {"cnn": {}, "mlp": {}}
    for entry in header["tensors"]:
        start, count = entry["offset"], entry["count"]
        if start + count > blob.size:
            raise ConfigurationError(f"{blob_path} está truncado")
        value = blob[start : start + count].reshape(entry["shape"])
        if entry["kind"] == "parameter":
            if entry["name"] not in params or params[entry["name"]].shape != value.shape:
                raise ConfigurationError(f"Tensor incompatible en los pesos: {entry['name']}")
            params[entry["name"]].data = value.astype(float).copy()
        else:
            prefix, name = entry["name"].split(".", 1)
            buffers[prefix][name] = value.astype(float)

    classifier.cnn.load_buffers(buffers["cnn"])
    classifier.mlp.load_buffers(buffers["mlp"])
    return classifier
