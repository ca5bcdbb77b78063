"""
Configuración del front-end de detección
"""

from dataclasses import dataclass

from ..exceptions import ConfigurationError


@dataclass(frozen=True)
class DetectorConfig:
    """Parámetros de CFAR, DBSCAN y extracción de parches"""

    pfa: float = 0.28
    guard_cells: int = 4
    training_cells: int = 16
    r_th: float = 45.0
    d_th: float = 0.3
    min_cluster_size: int = 5
    patch_rows: int = 5

    def __post_init__(self):
        if not 0.0 < self.pfa < 1.0:
            raise ConfigurationError(f"pfa debe estar en (0,1): {self.pfa}")
        if self.guard_cells < 0 or self.training_cells < 1:
            raise ConfigurationError(
                "Se requieren guard_cells >= 0 y training_cells >= 1 "
                f"(recibido {self.guard_cells}, {self.training_cells})"
            )
        if self.r_th <= 0 or self.d_th <= 0:
            raise ConfigurationError("r_th y d_th deben ser positivos")
        if self.min_cluster_size < 1:
            raise ConfigurationError(
                f"min_cluster_size debe ser >= 1: {self.min_cluster_size}"
            )
        if self.patch_rows < 1 or self.patch_rows % 2 == 0:
            raise ConfigurationError(f"patch_rows debe ser impar y positivo: {self.patch_rows}")

    @property
    def window_size(self) -> int:
        """Lado mínimo del mapa para alojar la ventana CFAR"""
        return 2 * (self.guard_cells + self.training_cells) + 1

    @property
    def n_training(self) -> int:
        """Celdas de entrenamiento de la ventana en cruz"""
        return 4 * self.training_cells
