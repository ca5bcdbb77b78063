"""
Capas diferenciables en numpy con forward/backward explícitos
"""

from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..exceptions import ShapeError


class Parameter:
    """Tensor entrenable: datos más gradiente acumulado"""

    def __init__(self, data: np.ndarray, name: str = ""):
        self.data = np.asarray(data, dtype=float)
        self.grad = np.zeros_like(self.data)
        self.name = name

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    def zero_grad(self):
        self.grad = np.zeros_like(self.data)


class Layer(ABC):
    """Interfaz común de todas las capas"""

    @abstractmethod
    def forward(self, x: np.ndarray, training: bool = False) -> np.ndarray:
        """Propagación hacia delante; guarda la caché solo en modo entrenamiento"""

    @abstractmethod
    def backward(self, grad: np.ndarray) -> np.ndarray:
        """Acumula gradientes de parámetros y devuelve el gradiente de la entrada"""

    def named_parameters(self) -> List[Tuple[str, Parameter]]:
        return []

    def buffers(self) -> Dict[str, np.ndarray]:
        """Estado no entrenable que debe persistirse"""
        return {}

    def load_buffers(self, values: Dict[str, np.ndarray]):
        pass

    def signature(self) -> List[np.ndarray]:
        """Patrón de activación de la última pasada (máscaras ReLU, argmax del pooling)"""
        return []

    def zero_grad(self):
        for _, p in self.named_parameters():
            p.zero_grad()

    def parameters(self) -> List[Parameter]:
        return [p for _, p in self.named_parameters()]


class Conv2d(Layer):
    """Convolución 2-D, paso 1 y padding 'same'"""

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        kernel: Tuple[int, int] = (3, 5),
        rng: Optional[np.random.Generator] = None,
        bias: bool = True,
    ):
        rng = rng or np.random.default_rng(0)
        kh, kw = kernel
        if kh % 2 == 0 or kw % 2 == 0:
            raise ShapeError(f"El kernel debe tener tamaño impar: {kernel}")
        fan_in = in_channels * kh * kw
        self.kernel = (kh, kw)
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.weight = Parameter(
            rng.standard_normal((out_channels, in_channels, kh, kw)) * np.sqrt(2.0 / fan_in),
            "weight",
        )
        self.bias = Parameter(np.zeros(out_channels), "bias") if bias else None
        self._cache = None

    def _windows(self, x: np.ndarray) -> np.ndarray:
        kh, kw = self.kernel
        padded = np.pad(x, ((0, 0), (0, 0), (kh // 2, kh // 2), (kw // 2, kw // 2)))
        return sliding_window_view(padded, (kh, kw), axis=(2, 3))

    def forward(self, x, training=False):
        if x.ndim != 4 or x.shape[1] != self.in_channels:
            raise ShapeError(
                f"Conv2d espera (B, {self.in_channels}, H, W), recibido {x.shape}"
            )
        windows = self._windows(x)
        out = np.tensordot(windows, self.weight.data, axes=([1, 4, 5], [1, 2, 3]))
        out = out.transpose(0, 3, 1, 2)
        if self.bias is not None:
            out = out + self.bias.data[None, :, None, None]
        if training:
            self._cache = (x.shape, windows)
        return out

    def backward(self, grad):
        x_shape, windows = self._cache
        kh, kw = self.kernel
        _, _, H, W = x_shape

        self.weight.grad += np.tensordot(grad, windows, axes=([0, 2, 3], [0, 2, 3]))
        if self.bias is not None:
            self.bias.grad += grad.sum(axis=(0, 2, 3))

        padded = np.zeros(
            (x_shape[0], x_shape[1], H + 2 * (kh // 2), W + 2 * (kw // 2))
        )
        for i in range(kh):
            for j in range(kw):
                padded[:, :, i : i + H, j : j + W] += np.einsum(
                    "bohw,oc->bchw", grad, self.weight.data[:, :, i, j]
                )
        return padded[:, :, kh // 2 : kh // 2 + H, kw // 2 : kw // 2 + W]

    def named_parameters(self):
        params = [("weight", self.weight)]
        if self.bias is not None:
            params.append(("bias", self.bias))
        return params


class BatchNorm2d(Layer):
    """Normalización por lotes sobre (B, H, W) por canal"""

    def __init__(self, channels: int, momentum: float = 0.1, eps: float = 1e-5):
        self.channels = channels
        self.momentum = momentum
        self.eps = eps
        self.gamma = Parameter(np.ones(channels), "gamma")
        self.beta = Parameter(np.zeros(channels), "beta")
        self.running_mean = np.zeros(channels)
        self.running_var = np.ones(channels)
        self._cache = None

    def forward(self, x, training=False):
        if training:
            mean = x.mean(axis=(0, 2, 3))
            var = x.var(axis=(0, 2, 3))
            n = x.shape[0] * x.shape[2] * x.shape[3]
            unbiased = var * n / max(n - 1, 1)
            self.running_mean = (1 - self.momentum) * self.running_mean + self.momentum * mean
            self.running_var = (1 - self.momentum) * self.running_var + self.momentum * unbiased
        else:
            mean, var = self.running_mean, self.running_var

        inv_std = 1.0 / np.sqrt(var + self.eps)
        x_hat = (x - mean[None, :, None, None]) * inv_std[None, :, None, None]
        if training:
            self._cache = (x_hat, inv_std)
        return self.gamma.data[None, :, None, None] * x_hat + self.beta.data[None, :, None, None]

    def backward(self, grad):
        x_hat, inv_std = self._cache
        axes = (0, 2, 3)

        self.gamma.grad += (grad * x_hat).sum(axis=axes)
        self.beta.grad += grad.sum(axis=axes)

        g_hat = grad * self.gamma.data[None, :, None, None]
        mean_g = g_hat.mean(axis=axes, keepdims=True)
        mean_gx = (g_hat * x_hat).mean(axis=axes, keepdims=True)
        return (g_hat - mean_g - x_hat * mean_gx) * inv_std[None, :, None, None]

    def named_parameters(self):
        return [("gamma", self.gamma), ("beta", self.beta)]

    def buffers(self):
        return {"running_mean": self.running_mean, "running_var": self.running_var}

    def load_buffers(self, values):
        self.running_mean = np.asarray(values["running_mean"], dtype=float).copy()
        self.running_var = np.asarray(values["running_var"], dtype=float).copy()


class ReLU(Layer):
    def __init__(self):
        self._mask = None

    def forward(self, x, training=False):
        mask = x > 0
        if training:
            self._mask = mask
        return np.where(mask, x, 0.0)

    def backward(self, grad):
        return grad * self._mask

    def signature(self):
        return [self._mask] if self._mask is not None else []


class MaxPool2d(Layer):
    """Max-pooling sin solape con ventana (ph, pw)"""

    def __init__(self, pool: Tuple[int, int] = (1, 4)):
        self.pool = tuple(pool)
        self._cache = None

    def forward(self, x, training=False):
        ph, pw = self.pool
        B, C, H, W = x.shape
        if H % ph or W % pw:
            raise ShapeError(f"Entrada {x.shape} no divisible por el pooling {self.pool}")
        blocks = x.reshape(B, C, H // ph, ph, W // pw, pw).transpose(0, 1, 2, 4, 3, 5)
        blocks = blocks.reshape(B, C, H // ph, W // pw, ph * pw)
        arg = blocks.argmax(axis=-1)
        out = np.take_along_axis(blocks, arg[..., None], axis=-1)[..., 0]
        if training:
            self._cache = (x.shape, arg)
        return out

    def backward(self, grad):
        x_shape, arg = self._cache
        ph, pw = self.pool
        B, C, H, W = x_shape
        blocks = np.zeros((B, C, H // ph, W // pw, ph * pw))
        np.put_along_axis(blocks, arg[..., None], grad[..., None], axis=-1)
        blocks = blocks.reshape(B, C, H // ph, W // pw, ph, pw).transpose(0, 1, 2, 4, 3, 5)
        return blocks.reshape(x_shape)

    def signature(self):
        return [self._cache[1]] if self._cache is not None else []


class Flatten(Layer):
    def __init__(self):
        self._shape = None

    def forward(self, x, training=False):
        if training:
            self._shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, grad):
        return grad.reshape(self._shape)


class Linear(Layer):
    """Capa afín y = x W + b"""

    def __init__(
        self,
        in_features: int,
        out_features: int,
        rng: Optional[np.random.Generator] = None,
        bias: bool = True,
    ):
        rng = rng or np.random.default_rng(0)
        self.in_features = in_features
        self.out_features = out_features
        self.weight = Parameter(
            rng.standard_normal((in_features, out_features)) * np.sqrt(2.0 / in_features),
            "weight",
        )
        self.bias = Parameter(np.zeros(out_features), "bias") if bias else None
        self._x = None

    def forward(self, x, training=False):
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise ShapeError(
                f"Linear espera (B, {self.in_features}), recibido {x.shape}"
            )
        if training:
            self._x = x
        out = x @ self.weight.data
        if self.bias is not None:
            out = out + self.bias.data
        return out

    def backward(self, grad):
        self.weight.grad += self._x.T @ grad
        if self.bias is not None:
            self.bias.grad += grad.sum(axis=0)
        return grad @ self.weight.data.T

    def named_parameters(self):
        params = [("weight", self.weight)]
        if self.bias is not None:
            params.append(("bias", self.bias))
        return params


class Sigmoid(Layer):
    def __init__(self):
        self._out = None

    def forward(self, x, training=False):
        out = np.empty_like(x, dtype=float)
        pos = x >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
        ex = np.exp(x[~pos])
        out[~pos] = ex / (1.0 + ex)
        if training:
            self._out = out
        return out

    def backward(self, grad):
        return grad * self._out * (1.0 - self._out)


class Sequential(Layer):
    """Composición secuencial de capas"""

    def __init__(self, layers: Sequence[Layer]):
        self.layers = list(layers)

    def forward(self, x, training=False):
        for layer in self.layers:
            x = layer.forward(x, training)
        return x

    def backward(self, grad):
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad

    def named_parameters(self):
        return [
            (f"{idx}.{name}", p)
            for idx, layer in enumerate(self.layers)
            for name, p in layer.named_parameters()
        ]

    def buffers(self):
        return {
            f"{idx}.{name}": value
            for idx, layer in enumerate(self.layers)
            for name, value in layer.buffers().items()
        }

    def load_buffers(self, values):
        for idx, layer in enumerate(self.layers):
            prefix = f"{idx}."
            own = {k[len(prefix):]: v for k, v in values.items() if k.startswith(prefix)}
            if own:
                layer.load_buffers(own)

    def signature(self):
        return [s for layer in self.layers for s in layer.signature()]
