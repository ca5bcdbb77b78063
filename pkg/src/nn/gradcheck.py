"""
Comprobación de gradientes por diferencias centrales
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .layers import Layer

Objective = Callable[[np.ndarray], Tuple[float, np.ndarray]]


@dataclass
class GradCheckReport:
    """Error relativo por tensor y entradas omitidas por puntos no diferenciables"""

    relative_errors: Dict[str, float] = field(default_factory=dict)
    checked: Dict[str, int] = field(default_factory=dict)
    skipped: Dict[str, int] = field(default_factory=dict)

    def max_error(self) -> float:
        return max(self.relative_errors.values()) if self.relative_errors else 0.0

    def unchecked(self) -> List[str]:
        """Tensores sin ninguna entrada comparada"""
        return [name for name, count in self.checked.items() if count == 0]

    def passed(self, tolerance: float = 1e-4) -> bool:
        if self.unchecked():
            return False
        return all(err < tolerance for err in self.relative_errors.values())


def _same_signature(a, b) -> bool:
    return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))


def gradient_check(
    model: Layer,
    inputs,
    objective: Objective,
    h: float = 1e-4,
    max_entries: Optional[int] = None,
    seed: int = 0,
) -> GradCheckReport:
    """
    Compara gradientes de backprop con diferencias centrales en modo entrenamiento

    Se omiten las entradas cuya perturbación cambia una máscara ReLU o el argmax
    de un max-pooling. Error por tensor: ‖a − n‖ / (‖a‖ + ‖n‖).

    Args:
        model: Modelo a comprobar
        inputs: Entradas del modelo
        objective: Función salida → (pérdida, dpérdida/dsalida)
        h: Paso de las diferencias
        max_entries: Máximo de entradas comprobadas por tensor (muestreo aleatorio;
            las omitidas se sustituyen por otras del mismo tensor)
        seed: Semilla del muestreo

    Returns:
        GradCheckReport
    """
    rng = np.random.default_rng(seed)
    model.zero_grad()
    out = model.forward(inputs, training=True)
    _, grad = objective(out)
    model.backward(grad.reshape(out.shape))
    base_signature = [s.copy() for s in model.signature()]

    def loss_at() -> Tuple[float, list]:
        value, _ = objective(model.forward(inputs, training=True))
        return value, model.signature()

    report = GradCheckReport()
    for name, param in model.named_parameters():
        analytic_all = param.grad.copy()
        flat = param.data.reshape(-1)
        indices = np.arange(flat.size)
        limit = flat.size
        if max_entries is not None and flat.size > max_entries:
            indices = rng.permutation(flat.size)
            limit = max_entries

        analytic, numeric = [], []
        skipped = 0
        for idx in indices:
            if len(analytic) >= limit:
                break
            original = flat[idx]
            flat[idx] = original + h
            plus, sig_plus = loss_at()
            flat[idx] = original - h
            minus, sig_minus = loss_at()
            flat[idx] = original
            if not (_same_signature(sig_plus, base_signature) and _same_signature(sig_minus, base_signature)):
                skipped += 1
                continue
            numeric.append((plus - minus) / (2.0 * h))
            analytic.append(analytic_all.reshape(-1)[idx])

        a = np.asarray(analytic)
        n = np.asarray(numeric)
        denom = np.linalg.norm(a) + np.linalg.norm(n)
        report.relative_errors[name] = float(np.linalg.norm(a - n) / denom) if denom > 0 else 0.0
        report.checked[name] = len(analytic)
        report.skipped[name] = skipped

    # Deja la caché del modelo en el punto original
    model.forward(inputs, training=True)
    return report
