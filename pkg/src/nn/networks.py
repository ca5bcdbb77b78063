"""
Arquitecturas del extractor de características (CNN) y del clasificador (MLP)
"""

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import numpy as np

from ..exceptions import ConfigurationError
from .layers import BatchNorm2d, Conv2d, Flatten, Linear, MaxPool2d, ReLU, Sequential, Sigmoid


@dataclass(frozen=True)
class CnnConfig:
    """Hiperparámetros de la CNN sobre parches rango x Doppler"""

    input_shape: Tuple[int, int] = (5, 512)
    channels: Tuple[int, ...] = (8, 16, 16)
    kernel: Tuple[int, int] = (3, 5)
    pool: Tuple[int, int] = (1, 4)
    hidden: Tuple[int, ...] = (64, 32)
    features: int = 8
    bn_momentum: float = 0.1

    def __post_init__(self):
        for name in ("input_shape", "channels", "kernel", "pool", "hidden"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        if len(self.input_shape) != 2 or len(self.kernel) != 2 or len(self.pool) != 2:
            raise ConfigurationError("input_shape, kernel y pool deben ser pares")
        if not self.channels:
            raise ConfigurationError("La CNN necesita al menos una capa convolucional")
        h, w = self.input_shape
        ph, pw = self.pool
        n = len(self.channels)
        if h % (ph**n) or w % (pw**n):
            raise ConfigurationError(
                f"input_shape {self.input_shape} no es divisible por pool^{n} {self.pool}"
            )
        if self.kernel[0] % 2 == 0 or self.kernel[1] % 2 == 0:
            raise ConfigurationError(f"El kernel debe ser impar: {self.kernel}")

    @property
    def flat_size(self) -> int:
        n = len(self.channels)
        h = self.input_shape[0] // self.pool[0] ** n
        w = self.input_shape[1] // self.pool[1] ** n
        return self.channels[-1] * h * w

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}


@dataclass(frozen=True)
class MlpConfig:
    """Hiperparámetros del clasificador (características + creencia de asociación)"""

    features: int = 8
    hidden: Tuple[int, ...] = (32, 16)

    def __post_init__(self):
        object.__setattr__(self, "hidden", tuple(int(v) for v in self.hidden))
        if self.features < 1 or not self.hidden:
            raise ConfigurationError("El MLP necesita características y capas ocultas")

    @property
    def input_size(self) -> int:
        return self.features + 1

    def to_dict(self) -> dict:
        return {"features": self.features, "hidden": list(self.hidden)}


def build_cnn(cfg: CnnConfig, rng: Optional[np.random.Generator] = None) -> Sequential:
    """
    conv(+BN+ReLU+maxpool) por cada canal → flatten → lineal+ReLU por capa oculta
    → lineal+sigmoide con cfg.features salidas

    Las convoluciones no llevan sesgo: el desplazamiento de la BN lo sustituye.
    """
    rng = rng or np.random.default_rng(0)
    layers = []
    in_ch = 1
    for out_ch in cfg.channels:
        layers += [
            Conv2d(in_ch, out_ch, cfg.kernel, rng=rng, bias=False),
            BatchNorm2d(out_ch, momentum=cfg.bn_momentum),
            ReLU(),
            MaxPool2d(cfg.pool),
        ]
        in_ch = out_ch
    layers.append(Flatten())
    width = cfg.flat_size
    for hidden in cfg.hidden:
        layers += [Linear(width, hidden, rng=rng), ReLU()]
        width = hidden
    layers += [Linear(width, cfg.features, rng=rng), Sigmoid()]
    return Sequential(layers)


def build_mlp(cfg: MlpConfig, rng: Optional[np.random.Generator] = None) -> Sequential:
    """(características, creencia) → lineal+ReLU por capa oculta → lineal+sigmoide"""
    rng = rng or np.random.default_rng(0)
    layers = []
    width = cfg.input_size
    for hidden in cfg.hidden:
        layers += [Linear(width, hidden, rng=rng), ReLU()]
        width = hidden
    layers += [Linear(width, 1, rng=rng), Sigmoid()]
    return Sequential(layers)


def build_step1_head(cfg: MlpConfig, rng: Optional[np.random.Generator] = None) -> Sequential:
    """Cabeza temporal del primer paso de entrenamiento (últimas dos capas del MLP)"""
    rng = rng or np.random.default_rng(0)
    width = cfg.hidden[-1]
    return Sequential(
        [
            Linear(cfg.features, width, rng=rng),
            ReLU(),
            Linear(width, 1, rng=rng),
            Sigmoid(),
        ]
    )


def prepare_patches(patches: np.ndarray) -> np.ndarray:
    """Normaliza parches [0,255] a [0,1] y añade el eje de canal"""
    x = np.asarray(patches, dtype=float) / 255.0
    if x.ndim == 2:
        x = x[None]
    return x[:, None, :, :]


def cnn_forward(patches: np.ndarray, cnn: Sequential, training: bool = False) -> np.ndarray:
    """Vector de características (N, 8) de uno o varios parches"""
    return cnn.forward(prepare_patches(patches), training)


def mlp_forward(
    features: np.ndarray, assoc_belief, mlp: Sequential, training: bool = False
) -> np.ndarray:
    """Probabilidad de origen-blanco de cada medida"""
    feats = np.atleast_2d(np.asarray(features, dtype=float))
    beliefs = np.asarray(assoc_belief, dtype=float).reshape(-1, 1)
    return mlp.forward(np.hstack([feats, beliefs]), training)[:, 0]
