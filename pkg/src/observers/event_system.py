"""
Observer Pattern para Sistema de Eventos
=======================================

Notifica el avance de los experimentos (scans procesados, ejecuciones
terminadas, errores) a múltiples observadores.
"""

import json
import threading
from abc import ABC, abstractmethod
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List

from ..output_manager import output_manager


class EventType(Enum):
    """Tipos de eventos del sistema."""

    EXPERIMENT_STARTED = "experiment_started"
    SCAN_PROCESSED = "scan_processed"
    RUN_COMPLETED = "run_completed"
    RUN_FAILED = "run_failed"
    EXPERIMENT_COMPLETED = "experiment_completed"


class Event:
    """
    Representa un evento del sistema.
    """

    def __init__(self, event_type: EventType, data: Dict[str, Any], timestamp: datetime = None):
        """
        Inicializa un evento.

        Args:
            event_type: Tipo del evento
            data: Datos del evento
            timestamp: Timestamp del evento (por defecto: ahora)
        """
        self.event_type = event_type
        self.data = data
        self.timestamp = timestamp or datetime.now()

    def __str__(self) -> str:
        return f"[{self.timestamp}] {self.event_type.value}: {self.data}"


class Observer(ABC):
    """
    Interfaz abstracta para observadores de eventos.
    """

    @abstractmethod
    def update(self, event: Event) -> None:
        """
        Actualiza el observador con un nuevo evento.

        Args:
            event: Evento a procesar
        """


class DiagnosticsObserver(Observer):
    """
    Vuelca los diagnósticos de cada scan como JSON-lines, un fichero por
    (método, SCR, ejecución)
    """

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.lines_written = 0
        self._opened = set()
        self._lock = threading.Lock()

    def path_for(self, method: str, scr_db: float, run: int) -> Path:
        return self.output_dir / f"{method}_scr{scr_db:+g}_run{run:03d}.jsonl"

    def update(self, event: Event) -> None:
        if event.event_type != EventType.SCAN_PROCESSED:
            return
        data = event.data
        path = self.path_for(data["method"], data["scr_db"], data["run"])
        with self._lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            mode = "a" if path in self._opened else "w"
            self._opened.add(path)
            with open(path, mode, encoding="utf-8") as f:
                f.write(json.dumps(data["diagnostics"]) + "\n")
            self.lines_written += 1


class MetricsObserver(Observer):
    """
    Observador que recopila recuentos del experimento.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.metrics = {
            "runs_completed": 0,
            "runs_failed": 0,
            "scans_processed": 0,
            "start_time": None,
            "end_time": None,
        }

    def update(self, event: Event) -> None:
        with self._lock:
            if event.event_type == EventType.EXPERIMENT_STARTED:
                self.metrics["start_time"] = event.timestamp
            elif event.event_type == EventType.SCAN_PROCESSED:
                self.metrics["scans_processed"] += 1
            elif event.event_type == EventType.RUN_COMPLETED:
                self.metrics["runs_completed"] += 1
            elif event.event_type == EventType.RUN_FAILED:
                self.metrics["runs_failed"] += 1
            elif event.event_type == EventType.EXPERIMENT_COMPLETED:
                self.metrics["end_time"] = event.timestamp

    def get_metrics(self) -> Dict[str, Any]:
        """Retorna las métricas recopiladas."""
        return self.metrics.copy()

    def get_success_rate(self) -> float:
        """Porcentaje de ejecuciones terminadas sin error."""
        total = self.metrics["runs_completed"] + self.metrics["runs_failed"]
        if total == 0:
            return 0.0
        return (self.metrics["runs_completed"] / total) * 100


class EventManager:
    """
    Gestor de eventos que implementa el patrón Observer.
    """

    def __init__(self):
        """Inicializa el gestor de eventos."""
        self.observers: List[Observer] = []

    def attach(self, observer: Observer) -> None:
        """
        Adjunta un observador.

        Args:
            observer: Observador a adjuntar
        """
        if observer not in self.observers:
            self.observers.append(observer)
            if output_manager.verbose_mode:
                output_manager.info(f"Observador adjuntado: {observer.__class__.__name__}")

    def detach(self, observer: Observer) -> None:
        if observer in self.observers:
            self.observers.remove(observer)

    def notify(self, event: Event) -> None:
        """
        Notifica un evento a todos los observadores.

        Args:
            event: Evento a notificar
        """
        for observer in self.observers:
            try:
                observer.update(event)
            except (OSError, TypeError, ValueError, KeyError) as e:
                output_manager.error(
                    f"❌ Error notificando a {observer.__class__.__name__}: {str(e)}"
                )

    def emit(self, event_type: EventType, data: Dict[str, Any]) -> None:
        """
        Emite un evento.

        Args:
            event_type: Tipo del evento
            data: Datos del evento
        """
        self.notify(Event(event_type, data))
