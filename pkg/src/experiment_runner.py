"""
Motor de experimentos: generación del dataset, entrenamiento y barridos
Monte Carlo de seguimiento
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .config_manager import ConfigManager
from .detect.config import DetectorConfig
from .detect.detector import Detector
from .detect.extraction import Measurement
from .detect.io import read_measurements, write_measurements
from .exceptions import ConfigurationError, DatasetError, RadarTrackingError
from .metrics.report import MetricReport, aggregate_reports, evaluate_run
from .nemp.processor import ScanResult, TrackingMode
from .nemp.tracker import MultiTargetTracker
from .nn.classifier import BaseClassifier
from .nn.labeling import label_measurements
from .nn.serialization import load_classifier, save_classifier
from .nn.training import TrainingResult, train
from .observers.event_system import DiagnosticsObserver, EventManager, EventType, MetricsObserver
from .output_manager import output_manager
from .results_store import (
    OutputLayout,
    load_runs,
    write_labels,
    write_loss_curve,
    write_runs,
    write_series,
    write_summary,
)
from .scenario.config import ClutterParams, ScenarioConfig
from .scenario.rd_map import form_rd_map
from .scenario.returns import synthesize_returns
from .scenario.truth import TruthTarget, generate_truth


def truth_seed(seed: int, run: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, run])


def returns_seed(seed: int, run: int, scr_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, run, scr_index])


def simulate_measurements(
    truth: Sequence[TruthTarget],
    scenario: ScenarioConfig,
    clutter: ClutterParams,
    detector: DetectorConfig,
    scr_db: float,
    seed,
) -> List[List[Measurement]]:
    """
    Retornos → mapas RD → medidas de cada scan

    Args:
        truth: Blancos reales
        scenario: Configuración del escenario
        clutter: Parámetros del clutter
        detector: Configuración del detector
        scr_db: SCR nominal
        seed: Semilla de los retornos

    Returns:
        Lista de medidas por scan
    """
    front_end = Detector(detector)
    pulses = synthesize_returns(truth, clutter, scr_db, seed, scenario)
    return [front_end.detect(form_rd_map(p, scenario.cpi_length)) for p in pulses]


@dataclass
class DatasetSummary:
    stem: Path
    n_target: int
    n_clutter: int

    @property
    def total(self) -> int:
        return self.n_target + self.n_clutter


@dataclass
class SweepOutcome:
    reports: List[MetricReport]
    failures: List[Tuple[float, int, str]]


class ExperimentRunner:
    """
    Orquesta los subcomandos sobre una ConfigManager y un directorio de salida

    Args:
        config: Gestor de configuración ya cargado
        output_dir: Directorio raíz de resultados (por defecto output.directory)
    """

    def __init__(self, config: ConfigManager, output_dir: Optional[str] = None):
        self.config = config
        self.layout = OutputLayout(output_dir or config.get_output_config()["directory"])
        self.scenario = config.scenario_config()
        self.clutter = config.clutter_params()
        self.detector = config.detector_config()
        self.params = config.tracker_params(self.scenario)
        self.max_workers = int(config.get_processing_config().get("max_workers", 1))
        self.events = EventManager()
        self.metrics_observer = MetricsObserver()
        self.events.attach(self.metrics_observer)
        self._check_patch_shape()

    def _check_patch_shape(self):
        expected = (self.detector.patch_rows, self.scenario.cpi_length)
        actual = tuple(self.config.cnn_config().input_shape)
        if actual != expected:
            raise ConfigurationError(
                f"nn.cnn.input_shape {actual} no coincide con el parche extraído {expected}"
            )

    def _map(self, func, tasks: Sequence, description: str):
        """Ejecuta func sobre tasks en el pool con barra de progreso; resultados en orden de tasks"""
        results: Dict[int, object] = {}
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {executor.submit(func, *task): idx for idx, task in enumerate(tasks)}
            with tqdm(total=len(tasks), desc=description, unit="ejecución") as pbar:
                output_manager.set_main_progress_bar(pbar)
                try:
                    for future in as_completed(futures):
                        results[futures[future]] = future.result()
                        pbar.update(1)
                finally:
                    output_manager.set_main_progress_bar(None)
        return [results[i] for i in range(len(tasks))]

    # ------------------------------------------------------------------ dataset

    def _dataset_task(self, seed: int, run: int, scr_index: int, scr_db: float, t_dist, scales):
        truth = generate_truth(self.scenario, truth_seed(seed, run))
        scans = simulate_measurements(
            truth, self.scenario, self.clutter, self.detector, scr_db, returns_seed(seed, run, scr_index)
        )
        beliefs: List[np.ndarray] = []

        def keep_belief(result: ScanResult):
            beliefs.append(result.assoc.target_belief())

        tracker = MultiTargetTracker(
            self.params, self.config.nemp_config(TrackingMode.MP), on_scan=keep_belief
        )
        for measurements in scans:
            tracker.step(measurements)

        measurements = [m for scan in scans for m in scan]
        labels = label_measurements(measurements, truth, self.scenario.wavelength, t_dist, scales)
        flat_beliefs = np.concatenate(beliefs) if beliefs else np.zeros(0)
        return measurements, labels, flat_beliefs

    def generate_dataset(self, seed: Optional[int] = None) -> DatasetSummary:
        """
        Simula, detecta y etiqueta medidas para entrenar el clasificador

        Cada medida guarda su etiqueta y la creencia de origen-blanco del
        seguidor MP, que es la entrada de creencia del MLP.

        Returns:
            DatasetSummary con los recuentos por clase
        """
        ds = self.config.dataset_config()
        seed = ds.seed if seed is None else seed
        tasks = [
            (seed, run, k, scr, ds.t_dist, ds.label_scales)
            for run in range(ds.runs)
            for k, scr in enumerate(ds.scr_db)
        ]
        outputs = self._map(self._dataset_task, tasks, "Generando dataset")

        measurements, extra, label_rows = [], [], []
        for (_, run, _, scr, _, _), (scan_measurements, labels, beliefs) in zip(tasks, outputs):
            for m, label, belief in zip(scan_measurements, labels, beliefs):
                index = len(measurements)
                measurements.append(m)
                extra.append({"label": int(label), "belief": float(belief), "scr_db": scr, "run": run})
                label_rows.append(
                    {
                        "index": index,
                        "scr_db": scr,
                        "run": run,
                        "scan": m.scan_index,
                        "range_m": m.range,
                        "doppler_hz": m.doppler,
                        "belief": float(belief),
                        "label": int(label),
                    }
                )

        write_measurements(self.layout.dataset_stem, measurements, extra)
        write_labels(self.layout.labels_csv, label_rows)
        n_target = sum(r["label"] for r in label_rows)
        summary = DatasetSummary(self.layout.dataset_stem, n_target, len(label_rows) - n_target)
        output_manager.success(
            f"✅ Dataset escrito en {self.layout.dataset_dir}: "
            f"{summary.n_target} blancos, {summary.n_clutter} clutter"
        )
        return summary

    # ---------------------------------------------------------------- training

    def train_classifier(self, dataset_stem: Optional[Path] = None) -> TrainingResult:
        """
        Entrena el clasificador en dos pasos y guarda pesos y curva de pérdida

        Raises:
            DatasetError: Si el dataset no existe o tiene una sola clase
        """
        stem = Path(dataset_stem) if dataset_stem else self.layout.dataset_stem
        measurements, records = read_measurements(stem)
        if not measurements:
            raise DatasetError(f"El dataset {stem} no contiene medidas")
        try:
            labels = np.array([r["label"] for r in records], dtype=float)
            beliefs = np.array([r["belief"] for r in records], dtype=float)
        except KeyError as e:
            raise DatasetError(f"{stem}.jsonl no contiene el campo {e}") from e
        patches = np.stack([m.rd_patch for m in measurements])

        result = train(
            patches,
            beliefs,
            labels,
            self.config.cnn_config(),
            self.config.mlp_config(),
            self.config.train_config(),
        )
        val_loss = result.step2.val_loss[result.step2.best_epoch] if result.step2.val_loss else None
        val_acc = (
            result.step2.val_accuracy[result.step2.best_epoch] if result.step2.val_accuracy else None
        )
        save_classifier(
            self.layout.weights_stem,
            result.classifier,
            extra={
                "pos_weight": result.pos_weight,
                "val_loss": val_loss,
                "val_accuracy": val_acc,
                "n_samples": len(measurements),
            },
        )
        rows = []
        for step, fit_result in ((1, result.step1), (2, result.step2)):
            for epoch, loss in enumerate(fit_result.train_loss):
                rows.append(
                    {
                        "step": step,
                        "epoch": epoch,
                        "train_loss": loss,
                        "val_loss": fit_result.val_loss[epoch] if epoch < len(fit_result.val_loss) else None,
                        "val_accuracy": (
                            fit_result.val_accuracy[epoch]
                            if epoch < len(fit_result.val_accuracy)
                            else None
                        ),
                    }
                )
        write_loss_curve(self.layout.loss_curve_csv, rows)
        if val_loss is not None:
            output_manager.format_info("BCE de validación", f"{val_loss:.4f}")
            output_manager.format_info("Precisión de validación", f"{val_acc:.3f}")
        output_manager.success(f"✅ Pesos guardados en {self.layout.weights_stem}")
        return result

    # ---------------------------------------------------------------- tracking

    def load_weights(self, weights: Optional[Path]) -> BaseClassifier:
        return load_classifier(Path(weights) if weights else self.layout.weights_stem)

    def _track_task(
        self,
        seed: int,
        run: int,
        scr_index: int,
        scr_db: float,
        methods: Sequence[str],
        classifier: Optional[BaseClassifier],
        save_tracks: bool,
    ) -> List[MetricReport]:
        truth = generate_truth(self.scenario, truth_seed(seed, run))
        scans = simulate_measurements(
            truth, self.scenario, self.clutter, self.detector, scr_db, returns_seed(seed, run, scr_index)
        )
        metric_config = self.config.metric_config()
        reports = []
        for method in methods:
            mode = TrackingMode.parse(method)

            def publish(result: ScanResult, method=mode.value):
                self.events.emit(
                    EventType.SCAN_PROCESSED,
                    {"method": method, "scr_db": scr_db, "run": run, "diagnostics": result.diagnostics},
                )

            tracker = MultiTargetTracker(
                self.params,
                self.config.nemp_config(mode),
                classifier if mode != TrackingMode.MP else None,
                on_scan=publish,
            )
            for measurements in scans:
                tracker.step(measurements)
            if save_tracks:
                tracker.run.history.export(
                    self.layout.tracks_dir / f"{mode.value}_scr{scr_db:+g}_run{run:03d}.csv"
                )
            reports.append(
                evaluate_run(
                    truth,
                    tracker.run.estimates,
                    self.scenario.wavelength,
                    mode.value,
                    scr_db,
                    run,
                    metric_config,
                )
            )
        return reports

    def _safe_track_task(self, *task) -> Tuple[List[MetricReport], Optional[str]]:
        try:
            reports = self._track_task(*task)
        except ConfigurationError:
            raise
        except (RadarTrackingError, ValueError, np.linalg.LinAlgError) as e:
            _, run, _, scr_db = task[:4]
            output_manager.error(f"❌ Ejecución {run} con SCR {scr_db:+g} dB fallida: {e}")
            self.events.emit(EventType.RUN_FAILED, {"run": run, "scr_db": scr_db, "error": str(e)})
            return [], str(e)
        self.events.emit(EventType.RUN_COMPLETED, {"run": task[1], "scr_db": task[3]})
        for report in reports:
            output_manager.log_run_summary(
                f"{report.method} SCR {report.scr_db:+g} dB ejecución {report.run}", report.as_row()
            )
        return reports, None

    def run_sweep(
        self,
        classifier: Optional[BaseClassifier] = None,
        methods: Optional[Sequence[str]] = None,
        scr_db: Optional[Sequence[float]] = None,
        runs: Optional[int] = None,
        seed: Optional[int] = None,
        diagnostics: Optional[bool] = None,
    ) -> SweepOutcome:
        """
        Barrido Monte Carlo sobre (SCR, ejecución); todos los métodos de una
        pareja (SCR, ejecución) ven la misma realización

        Returns:
            SweepOutcome con los informes y las ejecuciones fallidas
        """
        sweep = self.config.sweep_config()
        methods = [TrackingMode.parse(m).value for m in (methods or sweep.methods)]
        scr_values = [float(s) for s in (scr_db if scr_db is not None else sweep.scr_db)]
        runs = sweep.runs if runs is None else runs
        seed = sweep.seed if seed is None else seed
        output_cfg = self.config.get_output_config()
        if diagnostics is None:
            diagnostics = bool(output_cfg.get("diagnostics", False))

        if any(m != TrackingMode.MP.value for m in methods) and classifier is None:
            raise ConfigurationError("Los métodos MP-NN y NEMP requieren pesos entrenados (--weights)")

        observer = None
        if diagnostics:
            observer = DiagnosticsObserver(self.layout.diagnostics_dir)
            self.events.attach(observer)

        self.events.emit(
            EventType.EXPERIMENT_STARTED, {"methods": methods, "scr_db": scr_values, "runs": runs}
        )
        tasks = [
            (seed, run, k, scr, methods, classifier, bool(output_cfg.get("save_tracks", False)))
            for k, scr in enumerate(scr_values)
            for run in range(runs)
        ]
        try:
            outputs = self._map(self._safe_track_task, tasks, "Seguimiento Monte Carlo")
        finally:
            if observer is not None:
                self.events.detach(observer)

        reports = [r for batch, _ in outputs for r in batch]
        failures = [
            (task[3], task[1], error) for task, (_, error) in zip(tasks, outputs) if error is not None
        ]
        if failures:
            output_manager.log_error_report(
                {f"SCR {scr:+g} dB ejecución {run}": [error] for scr, run, error in failures}
            )
        self.write_results(reports)
        self.events.emit(EventType.EXPERIMENT_COMPLETED, {"reports": len(reports)})
        return SweepOutcome(reports, failures)

    def write_results(self, reports: Sequence[MetricReport]) -> List[Dict[str, object]]:
        """Escribe runs.csv, series.csv y summary.csv"""
        run_rows = [r.as_row() for r in reports]
        write_runs(self.layout.runs_csv, run_rows)
        write_series(self.layout.series_csv, [row for r in reports for row in r.series_rows()])
        summary = aggregate_reports(run_rows)
        write_summary(self.layout.summary_csv, summary)
        return summary

    def report(self, runs_csv: Optional[Path] = None) -> List[Dict[str, object]]:
        """Relee runs.csv y reescribe summary.csv con las medias por (método, SCR)"""
        rows = load_runs(Path(runs_csv) if runs_csv else self.layout.runs_csv)
        summary = aggregate_reports(rows)
        write_summary(self.layout.summary_csv, summary)
        return summary
