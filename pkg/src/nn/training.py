"""
Entrenamiento por mini-lotes y procedimiento en dos pasos del clasificador
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..exceptions import ConfigurationError, DatasetError, TrainingDivergedError
from ..output_manager import output_manager
from .classifier import MeasurementClassifier
from .layers import Layer, Sequential
from .loss import accuracy, bce_loss
from .networks import CnnConfig, MlpConfig, build_step1_head, prepare_patches
from .optim import SGD

Inputs = Union[np.ndarray, Tuple[np.ndarray, ...]]


@dataclass(frozen=True)
class TrainConfig:
    """Optimizador y calendario de entrenamiento"""

    lr: float = 1e-3
    momentum: float = 0.9
    batch_size: Optional[int] = 32
    epochs: int = 100
    step1_epochs: Optional[int] = None
    validation_fraction: float = 0.2
    patience: int = 10
    seed: int = 0
    balance_classes: bool = True

    def __post_init__(self):
        if self.lr <= 0 or not 0.0 <= self.momentum < 1.0:
            raise ConfigurationError("lr debe ser positivo y momentum estar en [0,1)")
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigurationError(f"batch_size inválido: {self.batch_size}")
        if self.epochs < 1:
            raise ConfigurationError(f"epochs debe ser >= 1: {self.epochs}")
        if not 0.0 <= self.validation_fraction < 1.0:
            raise ConfigurationError("validation_fraction debe estar en [0,1)")
        if self.patience < 1:
            raise ConfigurationError("patience debe ser >= 1")


@dataclass
class FitResult:
    """Curvas de pérdida por época"""

    train_loss: List[float] = field(default_factory=list)
    val_loss: List[float] = field(default_factory=list)
    val_accuracy: List[float] = field(default_factory=list)
    best_epoch: int = 0
    stopped_early: bool = False


@dataclass
class TrainingResult:
    classifier: MeasurementClassifier
    step1: FitResult
    step2: FitResult
    pos_weight: float


def _take(inputs: Inputs, idx: np.ndarray) -> Inputs:
    if isinstance(inputs, tuple):
        return tuple(x[idx] for x in inputs)
    return inputs[idx]


def _length(inputs: Inputs) -> int:
    return len(inputs[0]) if isinstance(inputs, tuple) else len(inputs)


def class_weight(labels: np.ndarray) -> float:
    """n_neg / n_pos; 1 si falta alguna clase"""
    labels = np.asarray(labels).reshape(-1)
    n_pos = int(np.sum(labels >= 0.5))
    n_neg = labels.size - n_pos
    return n_neg / n_pos if n_pos and n_neg else 1.0


def fit(
    model: Layer,
    inputs: Inputs,
    labels: np.ndarray,
    cfg: TrainConfig,
    pos_weight: float = 1.0,
    epochs: Optional[int] = None,
    description: str = "Entrenando",
) -> FitResult:
    """
    Entrena un modelo con salida sigmoide minimizando la BCE ponderada

    Args:
        model: Modelo con forward/backward/named_parameters
        inputs: Array de entradas o tupla de arrays con la misma primera dimensión
        labels: Etiquetas 0/1
        cfg: Configuración de entrenamiento
        pos_weight: Peso de la clase positiva
        epochs: Épocas (por defecto cfg.epochs)
        description: Texto de la barra de progreso

    Returns:
        FitResult con las curvas de pérdida
    """
    labels = np.asarray(labels, dtype=float).reshape(-1)
    n = _length(inputs)
    if n == 0:
        raise DatasetError("No hay muestras para entrenar")
    rng = np.random.default_rng(cfg.seed)
    epochs = epochs or cfg.epochs

    order = rng.permutation(n)
    n_val = int(round(cfg.validation_fraction * n)) if n > 1 else 0
    val_idx, train_idx = order[:n_val], order[n_val:]
    if train_idx.size == 0:
        raise DatasetError("La partición de validación deja el entrenamiento vacío")
    train_idx = np.sort(train_idx)

    optimizer = SGD(model.parameters(), lr=cfg.lr, momentum=cfg.momentum)
    batch_size = cfg.batch_size or train_idx.size
    result = FitResult()
    best_val = np.inf
    best_state = None
    stale = 0
    last_finite = None

    pbar = tqdm(range(epochs), desc=description, unit="época", leave=False)
    output_manager.set_main_progress_bar(pbar)
    try:
        for epoch in pbar:
            perm = train_idx[rng.permutation(train_idx.size)] if cfg.batch_size else train_idx
            total, count = 0.0, 0
            for step, start in enumerate(range(0, perm.size, batch_size)):
                batch = perm[start : start + batch_size]
                optimizer.zero_grad()
                pred = model.forward(_take(inputs, batch), training=True).reshape(-1)
                loss, grad = bce_loss(pred, labels[batch], pos_weight)
                if not np.isfinite(loss):
                    raise TrainingDivergedError(
                        "La pérdida de entrenamiento no es finita", epoch, step, last_finite
                    )
                last_finite = loss
                model.backward(grad.reshape(-1, 1))
                optimizer.step()
                total += loss * batch.size
                count += batch.size
            result.train_loss.append(total / count)

            if val_idx.size:
                val_pred = model.forward(_take(inputs, val_idx), training=False).reshape(-1)
                val_loss, _ = bce_loss(val_pred, labels[val_idx], pos_weight)
                result.val_loss.append(val_loss)
                result.val_accuracy.append(accuracy(val_pred, labels[val_idx]))
                if val_loss < best_val:
                    best_val = val_loss
                    best_state = _snapshot(model)
                    result.best_epoch = epoch
                    stale = 0
                else:
                    stale += 1
                    if stale >= cfg.patience:
                        result.stopped_early = True
                        break
            else:
                result.best_epoch = epoch
            pbar.set_postfix(loss=f"{result.train_loss[-1]:.4f}")
    finally:
        pbar.close()
        output_manager.set_main_progress_bar(None)

    if best_state is not None:
        _restore(model, best_state)
    return result


def _snapshot(model: Layer):
    params = [p.data.copy() for p in model.parameters()]
    buffers = {k: v.copy() for k, v in _buffers(model).items()}
    return params, buffers


def _restore(model: Layer, state):
    params, buffers = state
    for p, data in zip(model.parameters(), params):
        p.data = data
    _load_buffers(model, buffers)


def _buffers(model: Layer):
    if hasattr(model, "cnn"):
        return {f"cnn.{k}": v for k, v in model.cnn.buffers().items()}
    return model.buffers()


def _load_buffers(model: Layer, buffers):
    if hasattr(model, "cnn"):
        model.cnn.load_buffers({k[4:]: v for k, v in buffers.items() if k.startswith("cnn.")})
    else:
        model.load_buffers(buffers)


def train(
    patches: np.ndarray,
    beliefs: np.ndarray,
    labels: np.ndarray,
    cnn_config: CnnConfig,
    mlp_config: MlpConfig,
    cfg: TrainConfig,
) -> TrainingResult:
    """
    Entrenamiento en dos pasos

    Paso 1: CNN con una cabeza temporal sobre sus características.
    Paso 2: CNN + MLP conjuntamente sobre (parche, creencia de asociación).

    Args:
        patches: Parches (N, 5, 512) en [0, 255]
        beliefs: Creencia de asociación a blanco de cada medida
        labels: Etiquetas 0/1
        cnn_config: Arquitectura de la CNN
        mlp_config: Arquitectura del MLP
        cfg: Configuración de entrenamiento

    Returns:
        TrainingResult con el clasificador y ambas curvas de pérdida
    """
    labels = np.asarray(labels, dtype=float).reshape(-1)
    beliefs = np.asarray(beliefs, dtype=float).reshape(-1)
    if labels.size == 0:
        raise DatasetError("El dataset está vacío")
    if np.all(labels >= 0.5) or np.all(labels < 0.5):
        raise DatasetError("El dataset contiene una sola clase; se necesitan blancos y clutter")
    if len(patches) != labels.size or beliefs.size != labels.size:
        raise DatasetError("Parches, creencias y etiquetas tienen longitudes distintas")

    pos_weight = class_weight(labels) if cfg.balance_classes else 1.0
    classifier = MeasurementClassifier(cnn_config, mlp_config, seed=cfg.seed)
    x = prepare_patches(patches)

    head = build_step1_head(mlp_config, np.random.default_rng(cfg.seed + 1))
    step1_model = Sequential([classifier.cnn, head])
    output_manager.info("🚀 Paso 1: CNN con cabeza temporal")
    step1 = fit(
        step1_model,
        x,
        labels,
        cfg,
        pos_weight,
        epochs=cfg.step1_epochs or cfg.epochs,
        description="Paso 1",
    )

    output_manager.info("🚀 Paso 2: CNN + MLP sobre (parche, creencia)")
    step2 = fit(
        classifier.joint_model(), (x, beliefs), labels, cfg, pos_weight, description="Paso 2"
    )
    return TrainingResult(classifier, step1, step2, pos_weight)
