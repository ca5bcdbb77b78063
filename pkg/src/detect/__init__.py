"""
Front-end de detección: CFAR, DBSCAN y extracción de medidas
"""

from .cfar import PrimitiveDetection, cfar_detect, cfar_mask, threshold_multiplier
from .clustering import cluster, dbscan_labels
from .config import DetectorConfig
from .detector import Detector
from .extraction import Measurement, extract_measurement, extract_patch, stretch_patch
from .io import read_measurements, write_measurements

__all__ = [
    "PrimitiveDetection",
    "cfar_detect",
    "cfar_mask",
    "threshold_multiplier",
    "cluster",
    "dbscan_labels",
    "DetectorConfig",
    "Detector",
    "Measurement",
    "extract_measurement",
    "extract_patch",
    "stretch_patch",
    "read_measurements",
    "write_measurements",
]
