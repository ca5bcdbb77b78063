"""
Clasificadores de medidas usados por el seguidor
"""

from abc import ABC, abstractmethod
from typing import List, Tuple

import numpy as np

from .layers import Layer, Parameter, Sequential
from .networks import CnnConfig, MlpConfig, build_cnn, build_mlp, cnn_forward, mlp_forward


class BaseClassifier(ABC):
    """Interfaz: características por parche y probabilidad de origen-blanco"""

    @abstractmethod
    def features(self, patches: np.ndarray) -> np.ndarray:
        """Características (N, F) de N parches"""

    @abstractmethod
    def classify(self, features: np.ndarray, beliefs: np.ndarray) -> np.ndarray:
        """Probabilidad ω_j de cada medida"""

    def predict(self, patches: np.ndarray, beliefs: np.ndarray) -> np.ndarray:
        return self.classify(self.features(patches), beliefs)


class ConstantClassifier(BaseClassifier):
    """Clasificador que devuelve siempre el mismo valor"""

    def __init__(self, value: float = 0.5, n_features: int = 8):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"El valor constante debe estar en [0,1]: {value}")
        self.value = float(value)
        self.n_features = n_features

    def features(self, patches):
        return np.zeros((len(patches), self.n_features))

    def classify(self, features, beliefs):
        return np.full(len(np.atleast_1d(beliefs)), self.value)


class JointModel(Layer):
    """CNN + MLP entrenables conjuntamente sobre (parches, creencias)"""

    def __init__(self, cnn: Sequential, mlp: Sequential):
        self.cnn = cnn
        self.mlp = mlp
        self._n_features = None

    def forward(self, inputs: Tuple[np.ndarray, np.ndarray], training=False):
        patches, beliefs = inputs
        feats = self.cnn.forward(patches, training)
        self._n_features = feats.shape[1]
        joined = np.hstack([feats, np.asarray(beliefs, dtype=float).reshape(-1, 1)])
        return self.mlp.forward(joined, training)

    def backward(self, grad):
        g_joined = self.mlp.backward(grad)
        self.cnn.backward(g_joined[:, : self._n_features])
        return None

    def named_parameters(self) -> List[Tuple[str, Parameter]]:
        return [(f"cnn.{n}", p) for n, p in self.cnn.named_parameters()] + [
            (f"mlp.{n}", p) for n, p in self.mlp.named_parameters()
        ]

    def signature(self):
        return self.cnn.signature() + self.mlp.signature()


class MeasurementClassifier(BaseClassifier):
    """CNN de características + MLP de clasificación con pesos entrenados"""

    def __init__(
        self,
        cnn_config: CnnConfig,
        mlp_config: MlpConfig,
        cnn: Sequential = None,
        mlp: Sequential = None,
        seed: int = 0,
    ):
        rng = np.random.default_rng(seed)
        self.cnn_config = cnn_config
        self.mlp_config = mlp_config
        self.cnn = cnn if cnn is not None else build_cnn(cnn_config, rng)
        self.mlp = mlp if mlp is not None else build_mlp(mlp_config, rng)

    def features(self, patches):
        if len(patches) == 0:
            return np.zeros((0, self.cnn_config.features))
        return cnn_forward(patches, self.cnn, training=False)

    def classify(self, features, beliefs):
        if len(features) == 0:
            return np.zeros(0)
        return mlp_forward(features, beliefs, self.mlp, training=False)

    def joint_model(self) -> JointModel:
        return JointModel(self.cnn, self.mlp)
