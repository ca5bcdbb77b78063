#!/usr/bin/env python3
"""
Seguimiento multi-blanco en clutter marino - Punto de entrada principal
"""

import sys
import traceback
from typing import Callable, List, Optional

import click

from src.config_manager import ConfigManager
from src.exceptions import ConfigurationError
from src.experiment_runner import ExperimentRunner
from src.nn.classifier import ConstantClassifier
from src.output_manager import output_manager
from src.results_store import load_summary

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _parse_floats(text: Optional[str]) -> Optional[List[float]]:
    if not text:
        return None
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigurationError(f"Lista de números inválida: {text}") from e


def _parse_methods(text: Optional[str]) -> Optional[List[str]]:
    if not text:
        return None
    return [m.strip() for m in text.split(",") if m.strip()]


def _execute(ctx: click.Context, command: str, action: Callable[[ExperimentRunner], None]) -> None:
    """Crea el runner, ejecuta la acción y traduce errores a códigos de salida"""
    opts = ctx.obj
    output_manager.set_verbose_mode(opts["verbose"])
    code = EXIT_OK
    try:
        config = ConfigManager(opts["config_path"])
        config.validate_all()
        runner = ExperimentRunner(config, opts["output_dir"])
        output_manager.enable_file_logging(str(runner.layout.root), command)
        action(runner)
    except ConfigurationError as e:
        output_manager.error(f"❌ Error de configuración: {str(e)}")
        code = EXIT_CONFIG
    except KeyboardInterrupt:
        output_manager.warning("\n\nEjecución interrumpida por el usuario")
        code = EXIT_RUNTIME
    except Exception as e:
        output_manager.error(f"\nError inesperado: {str(e)}")
        if opts["verbose"]:
            traceback.print_exc()
        code = EXIT_RUNTIME
    finally:
        output_manager.close()
    sys.exit(code)


@click.group()
@click.option("--config", "-c", "config_path", default="config.yaml", help="Archivo de configuración YAML")
@click.option("--out", "-o", "output_dir", help="Directorio de salida (por defecto output.directory)")
@click.option("--verbose", "-v", is_flag=True, help="Modo verbose con diagnósticos por scan")
@click.pass_context
def cli(ctx: click.Context, config_path: str, output_dir: str, verbose: bool):
    """
    Seguimiento multi-blanco con paso de mensajes, clasificación neuronal
    y fusión Dempster-Shafer sobre mapas rango-Doppler

    Ejemplos:
        python main.py --config config_quick_example.yaml gen-dataset
        python main.py --config config_quick_example.yaml train
        python main.py track --methods MP,NEMP --scr -10,0,10 --runs 5
        python main.py report
    """
    ctx.ensure_object(dict)
    ctx.obj.update(config_path=config_path, output_dir=output_dir, verbose=verbose)


@cli.command("gen-dataset")
@click.option("--seed", type=int, help="Semilla del dataset")
@click.option("--runs", type=int, help="Ejecuciones por SCR")
@click.option("--scr", help="Lista de SCR en dB separada por comas")
@click.pass_context
def gen_dataset(ctx: click.Context, seed: Optional[int], runs: Optional[int], scr: Optional[str]):
    """Genera medidas etiquetadas para entrenar el clasificador"""

    def action(runner: ExperimentRunner):
        runner.config.override("dataset", runs=runs, scr_db=_parse_floats(scr))
        output_manager.section("GENERACIÓN DEL DATASET")
        summary = runner.generate_dataset(seed)
        output_manager.format_info("🎯 Medidas de blanco", summary.n_target)
        output_manager.format_info("🌊 Medidas de clutter", summary.n_clutter)

    _execute(ctx, "gen-dataset", action)


@cli.command("train")
@click.option("--dataset", "dataset_stem", help="Ruta del dataset (sin extensión)")
@click.option("--seed", type=int, help="Semilla de inicialización y particionado")
@click.pass_context
def train_cmd(ctx: click.Context, dataset_stem: Optional[str], seed: Optional[int]):
    """Entrena el clasificador CNN + MLP en dos pasos"""

    def action(runner: ExperimentRunner):
        if seed is not None:
            runner.config.config["nn"]["train"]["seed"] = seed
        output_manager.section("ENTRENAMIENTO DEL CLASIFICADOR")
        runner.train_classifier(dataset_stem)

    _execute(ctx, "train", action)


@cli.command("track")
@click.option("--seed", type=int, help="Semilla del barrido")
@click.option("--scr", help="Lista de SCR en dB separada por comas")
@click.option("--runs", type=int, help="Ejecuciones Monte Carlo por SCR")
@click.option("--methods", help="Métodos separados por comas (MP,MP-NN,NEMP)")
@click.option("--weights", help="Pesos del clasificador (sin extensión)")
@click.option(
    "--constant-classifier",
    type=click.FloatRange(0.0, 1.0),
    help="Usa un clasificador constante en lugar de pesos entrenados",
)
@click.pass_context
def track(
    ctx: click.Context,
    seed: Optional[int],
    scr: Optional[str],
    runs: Optional[int],
    methods: Optional[str],
    weights: Optional[str],
    constant_classifier: Optional[float],
):
    """Barrido Monte Carlo de seguimiento y métricas por (método, SCR)"""

    def action(runner: ExperimentRunner):
        method_list = _parse_methods(methods) or list(runner.config.sweep_config().methods)
        classifier = None
        if constant_classifier is not None:
            classifier = ConstantClassifier(constant_classifier)
        elif any(m.upper() != "MP" for m in method_list):
            classifier = runner.load_weights(weights)

        output_manager.section("SEGUIMIENTO MONTE CARLO")
        output_manager.format_list("📊 Métodos", method_list)
        outcome = runner.run_sweep(
            classifier,
            methods=method_list,
            scr_db=_parse_floats(scr),
            runs=runs,
            seed=seed,
            diagnostics=True if ctx.obj["verbose"] else None,
        )
        _show_summary(runner)
        counts = runner.metrics_observer.get_metrics()
        output_manager.format_info(
            "🎯 Ejecuciones completadas",
            f"{counts['runs_completed']} ({runner.metrics_observer.get_success_rate():.1f}%), "
            f"{counts['scans_processed']} scans procesados",
        )
        if outcome.failures:
            output_manager.warning(f"⚠️ {len(outcome.failures)} ejecuciones fallidas")
            raise RuntimeError("Barrido incompleto")

    _execute(ctx, "track", action)


@cli.command("report")
@click.option("--runs-csv", help="runs.csv a agregar (por defecto el del directorio de salida)")
@click.pass_context
def report(ctx: click.Context, runs_csv: Optional[str]):
    """Relee runs.csv y reescribe summary.csv"""

    def action(runner: ExperimentRunner):
        runner.report(runs_csv)
        _show_summary(runner)

    _execute(ctx, "report", action)


def _show_summary(runner: ExperimentRunner) -> None:
    """Muestra la tabla agregada por método y SCR"""
    output_manager.section("RESUMEN POR MÉTODO Y SCR")
    output_manager.separator()
    for row in load_summary(runner.layout.summary_csv):
        values = ", ".join(
            f"{k}={_fmt(row[k])}"
            for k in ("amot", "ids", "frag", "rmse_position_m", "rmse_velocity_cms", "mospa")
        )
        output_manager.info(f"{row['method']:>6} | SCR {row['scr_db']:+6.1f} dB | {values}")
    output_manager.format_info("📁 Resultados", str(runner.layout.results_dir))


def _fmt(value) -> str:
    return "-" if value is None else f"{value:.3f}"


if __name__ == "__main__":
    cli()
