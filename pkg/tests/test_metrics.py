#!/usr/bin/env python3
"""
Tests de las métricas de evaluación: OSPA, CLEAR-MOT, RMSE y agregados
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.metrics import (
    MatchedPair,
    MetricConfig,
    aggregate_reports,
    evaluate_run,
    ospa,
    rmse,
    state_to_rd,
    track_metrics,
)
from src.nemp import TrackEstimate
from src.scenario.truth import TruthTarget

WAVELENGTH = 0.0333

_points = st.lists(
    st.tuples(
        st.floats(min_value=0.0, max_value=300.0, allow_nan=False),
        st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
    ),
    max_size=4,
)


def _as_array(points) -> np.ndarray:
    return np.asarray(points, dtype=float).reshape(-1, 2)


@settings(max_examples=150, deadline=None)
@given(_points, _points)
def test_ospa_symmetric_and_bounded(a, b):
    A, B = _as_array(a), _as_array(b)
    d = ospa(A, B)
    assert d == pytest.approx(ospa(B, A), abs=1e-9)
    assert 0.0 <= d <= 9.4
    assert ospa(A, A) == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(_points, _points, _points)
def test_ospa_triangle_inequality(a, b, c):
    A, B, C = _as_array(a), _as_array(b), _as_array(c)
    assert ospa(A, C) <= ospa(A, B) + ospa(B, C) + 1e-9


def test_ospa_examples():
    print("🧪 Probando valores de referencia de OSPA...")
    empty = np.zeros((0, 2))
    one = np.array([[100.0, 0.0]])
    assert ospa(empty, empty) == 0.0
    assert ospa(one, empty) == 9.4
    assert ospa(empty, one) == 9.4
    assert ospa(one, np.array([[130.0, 0.0]])) == pytest.approx(2.0)
    assert ospa(one, np.array([[400.0, 0.0]])) == pytest.approx(9.4)
    two = np.array([[100.0, 0.0], [900.0, 0.0]])
    assert ospa(one, two) == pytest.approx(9.4 / math.sqrt(2.0))
    with pytest.raises(ValueError):
        ospa(one, one, c=0.0)
    with pytest.raises(ValueError):
        ospa(one, one, p=0.5)
    print("✅ OSPA correcto")


def test_state_to_rd():
    rd = state_to_rd(np.array([[100.0, 1.0, 0.0]]), WAVELENGTH)
    np.testing.assert_allclose(rd, [[100.0, -2.0 / WAVELENGTH]])


def _target(target_id: int, ranges, velocity: float = 0.0) -> TruthTarget:
    states = np.array([[r, velocity, 0.0] for r in ranges])
    return TruthTarget(
        id=target_id, states=states, radial_length=10.0, birth_scan=0, death_scan=len(ranges) - 1
    )


def _estimates(assignments):
    """assignments: por scan, lista de (track_id, rango)"""
    return [
        [TrackEstimate(tid, np.array([r, 0.0, 0.0])) for tid, r in scan] for scan in assignments
    ]


def test_perfect_tracking():
    truth = [_target(0, [100.0, 101.0, 102.0, 103.0])]
    estimates = _estimates([[(7, 100.0)], [(7, 101.0)], [(7, 102.0)], [(7, 103.0)]])
    score = track_metrics(truth, estimates, WAVELENGTH)
    assert score.amot == 1.0
    assert score.ids == 0 and score.frag == 0
    assert score.truth_presences == 4
    assert rmse(score.matches) == (0.0, 0.0)


def test_missed_scan_counts_false_negative_and_fragment():
    print("🧪 Probando AMOT con un scan perdido...")
    truth = [_target(0, [100.0] * 4)]
    estimates = _estimates([[(1, 100.0)], [(1, 100.0)], [], [(1, 100.0)]])
    score = track_metrics(truth, estimates, WAVELENGTH)
    assert score.false_negatives == 1
    assert score.false_positives == 0
    assert score.amot == pytest.approx(0.75)
    assert score.frag == 1
    assert score.ids == 0
    print("✅ FN = 1, Frag = 1")


def test_identity_swap_counts_two_switches():
    truth = [_target(0, [100.0] * 4), _target(1, [500.0] * 4)]
    estimates = _estimates(
        [
            [(1, 100.0), (2, 500.0)],
            [(1, 100.0), (2, 500.0)],
            [(2, 100.0), (1, 500.0)],
            [(2, 100.0), (1, 500.0)],
        ]
    )
    score = track_metrics(truth, estimates, WAVELENGTH)
    assert score.ids == 2
    assert score.amot == pytest.approx(1.0 - 2.0 / 8.0)


def test_false_positive_outside_gate():
    truth = [_target(0, [100.0, 100.0])]
    estimates = _estimates([[(1, 100.0), (2, 800.0)], [(1, 100.0)]])
    score = track_metrics(truth, estimates, WAVELENGTH)
    assert score.false_positives == 1
    assert score.amot == pytest.approx(0.5)


def test_amot_without_truth_is_nan():
    score = track_metrics([], _estimates([[], [(3, 50.0)]]), WAVELENGTH)
    assert math.isnan(score.amot)
    assert score.false_positives == 1


def test_rmse_values():
    pairs = [
        MatchedPair(0, 0, 1, np.array([100.0, 0.0, 0.0]), np.array([105.0, 0.01, 0.0])),
        MatchedPair(1, 0, 1, np.array([100.0, 0.0, 0.0]), np.array([100.0, 0.0, 0.0])),
    ]
    pos, vel = rmse(pairs)
    assert pos == pytest.approx(3.5355339, rel=1e-6)
    assert vel == pytest.approx(0.01 / math.sqrt(2.0))
    assert rmse([]) == (None, None)


def test_evaluate_run_perfect_estimates():
    truth = [_target(0, [100.0, 110.0, 120.0], velocity=1.0)]
    estimates = [
        [TrackEstimate(4, truth[0].state_at(scan).copy())] for scan in range(3)
    ]
    report = evaluate_run(truth, estimates, WAVELENGTH, "NEMP", -4.0, 2, MetricConfig())
    assert report.mospa == 0.0
    assert report.amot == 1.0
    row = report.as_row()
    assert row["method"] == "NEMP" and row["run"] == 2
    assert row["rmse_velocity_cms"] == 0.0
    series = report.series_rows()
    assert [r["scan"] for r in series] == [0, 1, 2]
    assert all(r["ospa"] == 0.0 for r in series)


def test_evaluate_run_without_matches_reports_missing_rmse():
    truth = [_target(0, [100.0, 100.0])]
    report = evaluate_run(truth, [[], []], WAVELENGTH, "MP", 0.0, 0)
    assert report.rmse_position is None
    assert report.as_row()["rmse_velocity_cms"] is None
    assert report.mospa == pytest.approx(9.4)
    assert report.amot == 0.0


def test_aggregate_reports_ignores_missing_values():
    rows = [
        {"method": "NEMP", "scr_db": 0.0, "run": 0, "amot": 0.5, "ids": 1, "frag": 0,
         "rmse_position_m": 10.0, "rmse_velocity_cms": None, "mospa": 4.0},
        {"method": "NEMP", "scr_db": 0.0, "run": 1, "amot": float("nan"), "ids": 3, "frag": 2,
         "rmse_position_m": 20.0, "rmse_velocity_cms": None, "mospa": 6.0},
        {"method": "MP", "scr_db": 4.0, "run": 0, "amot": 0.9, "ids": 0, "frag": 0,
         "rmse_position_m": 5.0, "rmse_velocity_cms": 2.0, "mospa": 1.0},
        {"method": "MP", "scr_db": -4.0, "run": 0, "amot": 0.1, "ids": 0, "frag": 0,
         "rmse_position_m": 5.0, "rmse_velocity_cms": 2.0, "mospa": 1.0},
    ]
    summary = aggregate_reports(rows)
    assert [(s["method"], s["scr_db"]) for s in summary] == [("MP", -4.0), ("MP", 4.0), ("NEMP", 0.0)]
    nemp = summary[2]
    assert nemp["n_runs"] == 2
    assert nemp["amot"] == pytest.approx(0.5)
    assert nemp["ids"] == pytest.approx(2.0)
    assert nemp["rmse_position_m"] == pytest.approx(15.0)
    assert nemp["rmse_velocity_cms"] is None
    assert nemp["mospa"] == pytest.approx(5.0)
