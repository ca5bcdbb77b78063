"""
Descenso de gradiente estocástico con momento
"""

from typing import Sequence

import numpy as np

from .layers import Parameter


class SGD:
    """v ← μ·v − lr·g ; θ ← θ + v"""

    def __init__(self, parameters: Sequence[Parameter], lr: float = 1e-3, momentum: float = 0.9):
        self.parameters = list(parameters)
        self.lr = lr
        self.momentum = momentum
        self.velocity = [np.zeros_like(p.data) for p in self.parameters]

    def zero_grad(self):
        for p in self.parameters:
            p.zero_grad()

    def step(self):
        for p, v in zip(self.parameters, self.velocity):
            v *= self.momentum
            v -= self.lr * p.grad
            p.data += v
