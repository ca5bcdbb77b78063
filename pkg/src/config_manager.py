"""
Gestor de configuración de los experimentos de seguimiento
"""

import copy
import os
from dataclasses import MISSING, dataclass, fields
from typing import Any, Dict, List, Tuple

import yaml

from .detect.config import DetectorConfig
from .exceptions import ConfigurationError
from .metrics.report import MetricConfig
from .nemp.processor import NempConfig, TrackingMode
from .nn.networks import CnnConfig, MlpConfig
from .nn.training import TrainConfig
from .output_manager import output_manager
from .scenario.config import ClutterParams, ScenarioConfig
from .tracking.models import TrackerParams

# Derivados del escenario, no configurables en la sección tracker
_TRACKER_DERIVED = ("scan_interval", "sigma_a", "wavelength", "surveillance_area")


@dataclass(frozen=True)
class SweepConfig:
    """Barrido Monte Carlo de métodos y SCR"""

    scr_db: Tuple[float, ...] = tuple(float(s) for s in range(-20, 21, 4))
    runs: int = 40
    methods: Tuple[str, ...] = ("MP", "MP-NN", "NEMP")
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scr_db", tuple(float(s) for s in self.scr_db))
        object.__setattr__(
            self, "methods", tuple(TrackingMode.parse(m).value for m in self.methods)
        )
        if not self.scr_db:
            raise ConfigurationError("La lista de SCR está vacía")
        if not self.methods:
            raise ConfigurationError("La lista de métodos está vacía")
        if self.runs < 1:
            raise ConfigurationError(f"runs debe ser >= 1: {self.runs}")


@dataclass(frozen=True)
class DatasetConfig:
    """Generación del conjunto de entrenamiento del clasificador"""

    runs: int = 10
    scr_db: Tuple[float, ...] = (-10.0, 0.0, 10.0)
    t_dist: float = 1.0
    label_scales: Tuple[float, float] = (15.0, 0.1)
    seed: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "scr_db", tuple(float(s) for s in self.scr_db))
        object.__setattr__(self, "label_scales", tuple(float(s) for s in self.label_scales))
        if self.runs < 1 or not self.scr_db:
            raise ConfigurationError("El dataset necesita al menos una ejecución y un SCR")
        if self.t_dist <= 0 or len(self.label_scales) != 2 or min(self.label_scales) <= 0:
            raise ConfigurationError("t_dist y label_scales deben ser positivos")


def _plain(value):
    return list(value) if isinstance(value, tuple) else value


def _defaults(cls, exclude=()) -> Dict[str, Any]:
    """Valores por defecto de un dataclass como diccionario serializable a YAML"""
    result = {}
    for f in fields(cls):
        if not f.init or f.name in exclude:
            continue
        if f.default is not MISSING:
            value = f.default
        elif f.default_factory is not MISSING:
            value = f.default_factory()
        else:
            continue
        result[f.name] = value.value if isinstance(value, TrackingMode) else _plain(value)
    return result


def _build(cls, section: str, values: Dict[str, Any]):
    try:
        return cls(**values)
    except TypeError as e:
        raise ConfigurationError(f"Sección '{section}' inválida: {e}") from e


class ConfigManager:
    """Gestor de configuración del experimento"""

    SECTIONS = (
        "scenario",
        "clutter",
        "detector",
        "tracker",
        "nemp",
        "nn",
        "dataset",
        "sweep",
        "metrics",
        "processing",
        "output",
    )

    def __init__(self, config_path: str = None):
        """
        Inicializa el gestor de configuración

        Args:
            config_path: Ruta al archivo de configuración (opcional)
        """
        self.config_path = config_path or "config.yaml"
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Carga la configuración desde el archivo YAML"""
        if not os.path.exists(self.config_path):
            config = self._get_default_config()
            self._save_config(config)
            output_manager.info(f"Archivo de configuración creado en: {self.config_path}")
            return config

        try:
            with open(self.config_path, "r", encoding="utf-8") as file:
                config = yaml.safe_load(file) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(
                f"Error cargando configuración {self.config_path}: {e}"
            ) from e
        if not isinstance(config, dict):
            raise ConfigurationError(f"{self.config_path} no contiene un diccionario YAML")
        output_manager.info(f"Configuración cargada desde: {self.config_path}")
        return self._validate_config(config)

    def _get_default_config(self) -> Dict[str, Any]:
        """Retorna la configuración por defecto"""
        return {
            "scenario": _defaults(ScenarioConfig),
            "clutter": _defaults(ClutterParams),
            "detector": _defaults(DetectorConfig),
            "tracker": _defaults(TrackerParams, exclude=_TRACKER_DERIVED),
            "nemp": _defaults(NempConfig, exclude=("mode",)),
            "nn": {
                "cnn": _defaults(CnnConfig),
                "mlp": _defaults(MlpConfig),
                "train": _defaults(TrainConfig),
            },
            "dataset": _defaults(DatasetConfig),
            "sweep": _defaults(SweepConfig),
            "metrics": _defaults(MetricConfig),
            "processing": {"max_workers": 4},
            "output": {
                "directory": "output",
                "save_tracks": False,
                "diagnostics": False,
            },
        }

    def _validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Completa cada sección con los valores por defecto que falten"""
        defaults = self._get_default_config()
        unknown = set(config) - set(self.SECTIONS)
        if unknown:
            raise ConfigurationError(f"Secciones desconocidas en la configuración: {sorted(unknown)}")
        return self._merge(defaults, config)

    def _merge(self, defaults: Dict[str, Any], user: Dict[str, Any]) -> Dict[str, Any]:
        merged = copy.deepcopy(defaults)
        for key, value in (user or {}).items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key] = self._merge(merged[key], value)
            else:
                merged[key] = value
        return merged

    def _save_config(self, config: Dict[str, Any]) -> bool:
        """Guarda la configuración en el archivo YAML"""
        try:
            with open(self.config_path, "w", encoding="utf-8") as file:
                yaml.safe_dump(config, file, default_flow_style=False, allow_unicode=True, sort_keys=False)
            return True
        except OSError as e:
            output_manager.error(f"Error guardando configuración: {str(e)}")
            return False

    def override(self, section: str, **values) -> None:
        """
        Sobrescribe valores de una sección (opciones de línea de comandos)

        Los valores None se ignoran.
        """
        if section not in self.SECTIONS:
            raise ConfigurationError(f"Sección desconocida: {section}")
        for key, value in values.items():
            if value is not None:
                self.config[section][key] = value

    def get_section(self, section: str) -> Dict[str, Any]:
        return copy.deepcopy(self.config.get(section, {}))

    def scenario_config(self) -> ScenarioConfig:
        return _build(ScenarioConfig, "scenario", self.get_section("scenario"))

    def clutter_params(self) -> ClutterParams:
        return _build(ClutterParams, "clutter", self.get_section("clutter"))

    def detector_config(self) -> DetectorConfig:
        return _build(DetectorConfig, "detector", self.get_section("detector"))

    def tracker_params(self, scenario: ScenarioConfig = None) -> TrackerParams:
        """TrackerParams con intervalo, ruido de proceso y geometría del escenario"""
        scenario = scenario or self.scenario_config()
        values = self.get_section("tracker")
        for name in _TRACKER_DERIVED:
            if name in values:
                raise ConfigurationError(
                    f"tracker.{name} se deriva de la sección scenario y no es configurable"
                )
        values.update(
            scan_interval=scenario.scan_interval,
            sigma_a=scenario.sigma_a,
            wavelength=scenario.wavelength,
            surveillance_area=scenario.surveillance_area,
        )
        return _build(TrackerParams, "tracker", values)

    def nemp_config(self, mode=TrackingMode.NEMP) -> NempConfig:
        return _build(NempConfig, "nemp", dict(self.get_section("nemp"), mode=mode))

    def cnn_config(self) -> CnnConfig:
        return _build(CnnConfig, "nn.cnn", self.get_section("nn").get("cnn", {}))

    def mlp_config(self) -> MlpConfig:
        return _build(MlpConfig, "nn.mlp", self.get_section("nn").get("mlp", {}))

    def train_config(self) -> TrainConfig:
        return _build(TrainConfig, "nn.train", self.get_section("nn").get("train", {}))

    def dataset_config(self) -> DatasetConfig:
        return _build(DatasetConfig, "dataset", self.get_section("dataset"))

    def sweep_config(self) -> SweepConfig:
        return _build(SweepConfig, "sweep", self.get_section("sweep"))

    def metric_config(self) -> MetricConfig:
        values = self.get_section("metrics")
        if "scales" in values:
            values["scales"] = tuple(float(v) for v in values["scales"])
        return _build(MetricConfig, "metrics", values)

    def get_processing_config(self) -> Dict[str, Any]:
        """Obtiene la configuración de procesamiento"""
        return self.get_section("processing")

    def get_output_config(self) -> Dict[str, Any]:
        """Obtiene la configuración de salida"""
        return self.get_section("output")

    def validate_all(self) -> List[str]:
        """
        Construye todas las secciones para detectar errores antes de ejecutar

        Returns:
            Nombres de las secciones validadas
        """
        scenario = self.scenario_config()
        self.clutter_params()
        self.detector_config()
        self.tracker_params(scenario)
        self.nemp_config()
        self.cnn_config()
        self.mlp_config()
        self.train_config()
        self.dataset_config()
        self.sweep_config()
        self.metric_config()
        workers = self.get_processing_config().get("max_workers", 1)
        if not isinstance(workers, int) or workers < 1:
            raise ConfigurationError(f"processing.max_workers debe ser un entero >= 1: {workers}")
        return list(self.SECTIONS)
