"""
Jerarquía de excepciones del toolkit de seguimiento radar
"""

from typing import Optional


class RadarTrackingError(Exception):
    """Error base de todo el toolkit"""


class ConfigurationError(RadarTrackingError):
    """Configuración inválida: límites, ventanas, matrices singulares o pesos ausentes"""


class ShapeError(RadarTrackingError):
    """Dimensiones incompatibles entre matrices, mapas o tensores"""


class DatasetError(RadarTrackingError):
    """Dataset inexistente, incompleto o con una sola clase"""


class TrainingDivergedError(RadarTrackingError):
    """La función de pérdida dejó de ser finita durante el entrenamiento"""

    def __init__(
        self,
        message: str,
        epoch: int,
        step: int,
        last_finite_loss: Optional[float] = None,
    ):
        """
        Args:
            message: Descripción del fallo
            epoch: Época en la que se detectó la divergencia
            step: Paso (mini-lote) dentro de la época
            last_finite_loss: Última pérdida finita observada
        """
        super().__init__(
            f"{message} (época {epoch}, paso {step}, "
            f"última pérdida finita {last_finite_loss})"
        )
        self.epoch = epoch
        self.step = step
        self.last_finite_loss = last_finite_loss
