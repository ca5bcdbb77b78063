"""
Seguimiento multi-blanco en clutter marino - Módulo principal
"""

from .config_manager import ConfigManager
from .experiment_runner import ExperimentRunner
from .output_manager import OutputManager, output_manager

__all__ = [
    "ConfigManager",
    "ExperimentRunner",
    "OutputManager",
    "output_manager",
]
