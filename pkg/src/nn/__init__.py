"""
Mini-framework diferenciable en numpy y clasificador de medidas
"""

from .classifier import BaseClassifier, ConstantClassifier, JointModel, MeasurementClassifier
from .gradcheck import GradCheckReport, gradient_check
from .labeling import label_measurements, truth_positions
from .layers import (
    BatchNorm2d,
    Conv2d,
    Flatten,
    Layer,
    Linear,
    MaxPool2d,
    Parameter,
    ReLU,
    Sequential,
    Sigmoid,
)
from .loss import accuracy, bce_loss
from .networks import (
    CnnConfig,
    MlpConfig,
    build_cnn,
    build_mlp,
    build_step1_head,
    cnn_forward,
    mlp_forward,
    prepare_patches,
)
from .optim import SGD
from .serialization import load_classifier, save_classifier
from .training import FitResult, TrainConfig, TrainingResult, class_weight, fit, train

__all__ = [
    "BaseClassifier",
    "ConstantClassifier",
    "JointModel",
    "MeasurementClassifier",
    "GradCheckReport",
    "gradient_check",
    "label_measurements",
    "truth_positions",
    "BatchNorm2d",
    "Conv2d",
    "Flatten",
    "Layer",
    "Linear",
    "MaxPool2d",
    "Parameter",
    "ReLU",
    "Sequential",
    "Sigmoid",
    "accuracy",
    "bce_loss",
    "CnnConfig",
    "MlpConfig",
    "build_cnn",
    "build_mlp",
    "build_step1_head",
    "cnn_forward",
    "mlp_forward",
    "prepare_patches",
    "SGD",
    "load_classifier",
    "save_classifier",
    "FitResult",
    "TrainConfig",
    "TrainingResult",
    "class_weight",
    "fit",
    "train",
]
