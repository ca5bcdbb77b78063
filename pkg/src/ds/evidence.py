"""
Álgebra de Dempster-Shafer sobre Ω = {clutter (ħ), blanco (h)}
============================================================

Elementos focales: ∅, {ħ}, {h} y Ω. Las BBA de origen probabilístico son
bayesianas (m(Ω) = 0), pero la combinación y la transformación pignística
se implementan en su forma general.
"""

from dataclasses import dataclass

from ..output_manager import output_manager

SOURCES = ("fg", "nn")
CONFLICT_LIMIT = 1.0 - 1e-12
CLAMP_EPS = 1e-9
_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BBA:
    """Asignación básica de creencia sobre 2^Ω"""

    clutter: float = 0.0
    target: float = 0.0
    omega: float = 1.0
    empty: float = 0.0

    def __post_init__(self):
        if self.empty != 0.0:
            raise ValueError(f"m(∅) debe ser 0, recibido {self.empty}")
        if min(self.clutter, self.target, self.omega) < 0.0:
            raise ValueError(f"Masas negativas en {self}")
        total = self.clutter + self.target + self.omega
        if abs(total - 1.0) > _SUM_TOLERANCE:
            raise ValueError(f"Las masas deben sumar 1 (suma = {total})")

    @property
    def is_bayesian(self) -> bool:
        return self.omega == 0.0

    @classmethod
    def vacuous(cls) -> "BBA":
        return cls(clutter=0.0, target=0.0, omega=1.0)


@dataclass(frozen=True)
class CombinationResult:
    """Resultado de la regla de Dempster con el conflicto K"""

    bba: BBA
    conflict: float
    clamped: bool = False


def bba_from_probability(p_target: float, source: str = "fg") -> BBA:
    """
    BBA bayesiana m(h) = p, m(ħ) = 1 − p

    Args:
        p_target: Probabilidad de que la medida provenga de un blanco
        source: "fg" (grafo de factores) o "nn" (clasificador)

    Returns:
        BBA
    """
    if source not in SOURCES:
        raise ValueError(f"Fuente desconocida '{source}' (disponibles: {SOURCES})")
    if not 0.0 <= p_target <= 1.0:
        raise ValueError(f"Probabilidad fuera de [0,1]: {p_target}")
    return BBA(clutter=1.0 - p_target, target=p_target, omega=0.0)


def _conflict(m1: BBA, m2: BBA) -> float:
    return m1.target * m2.clutter + m1.clutter * m2.target


def _clamp(m: BBA) -> BBA:
    clutter = min(max(m.clutter, CLAMP_EPS), 1.0 - CLAMP_EPS)
    target = min(max(m.target, CLAMP_EPS), 1.0 - CLAMP_EPS)
    total = clutter + target + m.omega
    return BBA(clutter=clutter / total, target=target / total, omega=m.omega / total)


def combine_with_conflict(m1: BBA, m2: BBA) -> CombinationResult:
    """
    Regla de combinación de Dempster

    m(A) = Σ_{B∩C=A} m1(B)m2(C) / (1 − K), K = Σ_{B∩C=∅} m1(B)m2(C).
    Ante conflicto total se acotan las masas simples de ambas entradas a
    [1e-9, 1 − 1e-9] antes de combinar.

    Returns:
        CombinationResult con la BBA combinada, K y el indicador de acotado
    """
    clamped = False
    K = _conflict(m1, m2)
    if K >= CONFLICT_LIMIT:
        m1, m2 = _clamp(m1), _clamp(m2)
        K = _conflict(m1, m2)
        clamped = True

    target = m1.target * m2.target + (m1.target * m2.omega + m1.omega * m2.target)
    clutter = m1.clutter * m2.clutter + (m1.clutter * m2.omega + m1.omega * m2.clutter)
    omega = m1.omega * m2.omega
    total = target + clutter + omega
    return CombinationResult(
        bba=BBA(clutter=clutter / total, target=target / total, omega=omega / total),
        conflict=K,
        clamped=clamped,
    )


def ds_combine(m1: BBA, m2: BBA) -> BBA:
    """Combina dos BBA; avisa si hubo que resolver un conflicto total"""
    result = combine_with_conflict(m1, m2)
    if result.clamped:
        output_manager.warning(
            f"Conflicto total en la combinación DS: masas acotadas a [{CLAMP_EPS}, 1-{CLAMP_EPS}]"
        )
    return result.bba


def pignistic(m: BBA) -> float:
    """BetP(h) = m(h) + m(Ω)/2"""
    return m.target + 0.5 * m.omega


def pignistic_clutter(m: BBA) -> float:
    """BetP(ħ) = m(ħ) + m(Ω)/2"""
    return m.clutter + 0.5 * m.omega
