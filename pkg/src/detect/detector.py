"""
Cadena de detección completa: CFAR → DBSCAN → extracción
"""

from typing import List

from ..output_manager import output_manager
from ..scenario.rd_map import RDMap
from .cfar import cfar_detect
from .clustering import cluster
from .config import DetectorConfig
from .extraction import Measurement, extract_measurement


class Detector:
    """Convierte mapas RD en listas de medidas"""

    def __init__(self, config: DetectorConfig):
        """
        Args:
            config: Configuración del detector
        """
        self.config = config

    def detect(self, rd_map: RDMap) -> List[Measurement]:
        """
        Procesa un mapa RD

        Args:
            rd_map: Mapa del scan

        Returns:
            Medidas ordenadas por su primera detección en (rango, Doppler)
        """
        primitives = cfar_detect(rd_map, self.config)
        clusters = cluster(primitives, self.config)
        measurements = [
            extract_measurement(c, rd_map, self.config.patch_rows) for c in clusters
        ]
        if output_manager.verbose_mode:
            output_manager.info(
                f"Scan {rd_map.scan_index}: {len(primitives)} detecciones primitivas, "
                f"{len(measurements)} medidas"
            )
        return measurements
