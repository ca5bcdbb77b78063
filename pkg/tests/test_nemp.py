#!/usr/bin/env python3
"""
Tests del procesado por scan y del bucle de refinamiento NN + DS
================================================================

El clasificador constante 0.5 hace de testigo: no aporta evidencia, así que
NEMP debe reproducir exactamente al seguidor MP.
"""

import numpy as np
import pytest

from src.detect import Measurement
from src.exceptions import ConfigurationError
from src.nemp import (
    MultiTargetTracker,
    NempConfig,
    ScanState,
    TrackingMode,
    clutter_odds_ratio,
    fuse_beliefs,
    nemp_da_loop,
    prior_target_belief,
    process_scan,
    run_tracker,
)
from src.nn import ConstantClassifier
from src.tracking import TrackerParams, bp_data_association


class CountingClassifier(ConstantClassifier):
    """Clasificador constante que cuenta las llamadas a classify"""

    def __init__(self, value: float):
        super().__init__(value)
        self.calls = 0

    def classify(self, features, beliefs):
        self.calls += 1
        return super().classify(features, beliefs)


def _measurement(r: float, f: float, scan: int) -> Measurement:
    return Measurement(range=r, doppler=f, rd_patch=np.zeros((5, 8)), n_primitives=4, scan_index=scan)


def _scans(n_scans: int = 6):
    """Un blanco estacionario en 500 m más un punto de clutter distinto en cada scan"""
    offsets = [(3.0, 0.02), (-4.0, -0.03), (5.0, 0.01), (-2.0, 0.04), (1.0, -0.02), (-3.0, 0.0)]
    scans = []
    for k in range(n_scans):
        dr, df = offsets[k % len(offsets)]
        scans.append(
            [
                _measurement(500.0 + dr, df, k),
                _measurement(1000.0 + 40.0 * k, 200.0 - 60.0 * k, k),
            ]
        )
    return scans


@pytest.fixture
def params() -> TrackerParams:
    return TrackerParams()


def test_tracking_mode_parsing():
    assert TrackingMode.parse("mp-nn") == TrackingMode.MP_NN
    assert TrackingMode.parse(" NEMP ") == TrackingMode.NEMP
    with pytest.raises(ConfigurationError):
        TrackingMode.parse("JPDA")
    with pytest.raises(ConfigurationError):
        NempConfig(iterations=0)
    assert NempConfig(mode="MP").mode == TrackingMode.MP


def test_empty_scan_without_tracks(params):
    """Ni medidas ni tracks: asociación vacía y ningún track nuevo"""
    state = ScanState(config=NempConfig())
    result = process_scan(state, [], ConstantClassifier(0.5), params)
    assert result.state.scan_index == 0
    assert result.state.tracks == ()
    assert result.diagnostics["n_measurements"] == 0
    assert result.assoc.marginals.shape == (1, 1)


def test_non_mp_modes_require_classifier(params):
    with pytest.raises(ConfigurationError):
        process_scan(ScanState(config=NempConfig()), [], None, params)
    with pytest.raises(ConfigurationError):
        process_scan(ScanState(config=NempConfig(mode="MP-NN")), [], None, params)


def test_mp_tracker_confirms_target(params):
    print("🧪 Probando seguidor MP sobre un blanco estacionario...")
    run = run_tracker(_scans(), params)
    assert len(run.estimates) == 6
    assert run.estimates[0] == []
    final = run.estimates[-1]
    assert len(final) == 1
    assert final[0].state[0] == pytest.approx(500.0, abs=10.0)
    assert abs(final[0].state[1]) < 0.5
    assert len(run.marginals) == 6
    assert run.history.rows
    print("✅ Track confirmado cerca de 500 m")


def test_nemp_with_neutral_classifier_matches_mp(params):
    """Con ω = 0.5 la fusión DS no altera las marginales"""
    print("🧪 Probando neutralidad del clasificador 0.5...")
    scans = _scans()
    mp = run_tracker(scans, params, NempConfig(mode=TrackingMode.MP))
    nemp = run_tracker(scans, params, NempConfig(mode=TrackingMode.NEMP), ConstantClassifier(0.5))

    for a, b in zip(mp.marginals, nemp.marginals):
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)
    assert [[e.track_id for e in s] for s in mp.estimates] == [
        [e.track_id for e in s] for s in nemp.estimates
    ]
    for sa, sb in zip(mp.estimates, nemp.estimates):
        for ea, eb in zip(sa, sb):
            np.testing.assert_allclose(ea.state, eb.state, rtol=0, atol=1e-6)
    print("✅ NEMP(0.5) ≡ MP")


def _single_pair(params: TrackerParams):
    """Un blanco y una medida con prior de asociación 50/50"""
    p = params.pfa_prior
    L = np.array([[0.0, p], [0.0, p]])
    return L, np.array([0.5]), np.array([0.5])


def test_clutter_classifier_raises_clutter_marginal(params):
    L, missed, detected = _single_pair(params)
    baseline = bp_data_association(L, missed, detected, [params.pfa_prior])
    assert baseline.clutter()[0] == pytest.approx(0.5)

    loop = nemp_da_loop(L, missed, detected, np.zeros((1, 8)), ConstantClassifier(0.0), 3, params)
    assert loop.assoc.clutter()[0] > baseline.clutter()[0]
    assert loop.assoc.clutter()[0] > 0.99
    assert loop.clutter_weights[0] > params.pfa_prior


def test_target_classifier_drives_fused_belief_to_one(params):
    L, missed, detected = _single_pair(params)
    loop = nemp_da_loop(L, missed, detected, np.zeros((1, 8)), ConstantClassifier(1.0), 3, params)
    np.testing.assert_allclose(loop.fused, [1.0])
    assert loop.assoc.clutter()[0] < 0.01
    assert loop.clutter_weights[0] == pytest.approx(1e-9 * params.pfa_prior)
    assert loop.conflicts_clamped == 0


def test_loop_runs_classifier_once_per_iteration(params):
    L, missed, detected = _single_pair(params)
    for iterations in (1, 3):
        clf = CountingClassifier(0.7)
        nemp_da_loop(L, missed, detected, np.zeros((1, 8)), clf, iterations, params)
        assert clf.calls == iterations
    with pytest.raises(ConfigurationError):
        nemp_da_loop(L, missed, detected, np.zeros((1, 8)), ConstantClassifier(0.5), 0, params)


def test_fuse_beliefs():
    fused, clamped = fuse_beliefs(np.array([0.6, 0.3]), np.array([0.8, 0.5]))
    np.testing.assert_allclose(fused, [6.0 / 7.0, 0.3])
    assert clamped == 0
    fused, clamped = fuse_beliefs(np.array([1.0]), np.array([0.0]))
    assert clamped == 1
    assert np.isfinite(fused[0])


def test_prior_target_belief():
    L = np.array([[0.0, 1.0, 1.0], [0.0, 3.0, 0.0]])
    belief = prior_target_belief(L, np.array([1.0]), np.array([1.0, 1.0]))
    np.testing.assert_allclose(belief, [0.75, 0.0])
    assert prior_target_belief(np.zeros((1, 3)), np.zeros(0), np.ones(2)).tolist() == [0.0, 0.0]
    assert prior_target_belief(np.zeros((2, 1)), np.ones(1), np.zeros(0)).size == 0


def test_mp_nn_suppresses_measurements(params):
    print("🧪 Probando supresión MP-NN...")
    scan = _scans(1)[0]
    state = ScanState(config=NempConfig(mode="MP-NN"))
    suppressed = process_scan(state, scan, ConstantClassifier(0.2), params)
    assert suppressed.diagnostics["suppressed"] == 2
    assert suppressed.diagnostics["n_measurements"] == 0
    assert suppressed.state.tracks == ()

    kept = process_scan(state, scan, ConstantClassifier(0.8), params)
    assert kept.diagnostics["suppressed"] == 0
    assert len(kept.state.tracks) == 2
    print("✅ Medidas con ω < 0.5 eliminadas")


def test_nemp_gates_births_on_classifier(params):
    scan = _scans(1)[0]
    state = ScanState(config=NempConfig())
    blocked = process_scan(state, scan, ConstantClassifier(0.3), params)
    assert blocked.state.tracks == ()
    allowed = process_scan(state, scan, ConstantClassifier(0.5), params)
    assert [t.id for t in allowed.state.tracks] == [0, 1]
    assert allowed.state.next_track_id == 2
    assert "clutter_weights" in allowed.diagnostics


def test_tracker_callback_and_history(params):
    seen = []
    tracker = MultiTargetTracker(params, on_scan=seen.append)
    for measurements in _scans(3):
        tracker.step(measurements)
    assert [r.state.scan_index for r in seen] == [0, 1, 2]
    assert tracker.run.final_state.scan_index == 2
    assert {row.scan for row in tracker.run.history.rows} == {0, 1, 2}


def test_clutter_odds_ratio_limits():
    ratio = clutter_odds_ratio(np.array([0.25, 0.0, 1.0, 0.0]), np.array([0.75, 1.0, 0.0, 1.0]), np.array([0.5, 0.5, 0.5, 0.0]))
    assert ratio[0] == pytest.approx(3.0)
    assert ratio[1] == pytest.approx(1e9)
    assert ratio[2] == pytest.approx(1e-9)
    assert ratio[3] == 1.0
