#!/usr/bin/env python3
"""
Tests de la fusión Dempster-Shafer
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.ds import (
    BBA,
    bba_from_probability,
    combine_with_conflict,
    ds_combine,
    pignistic,
    pignistic_clutter,
)

_mass = st.floats(min_value=0.01, max_value=1.0, allow_nan=False)


@st.composite
def bbas(draw) -> BBA:
    clutter, target, omega = draw(_mass), draw(_mass), draw(_mass)
    total = clutter + target + omega
    return BBA(clutter=clutter / total, target=target / total, omega=1.0 - (clutter + target) / total)


def _close(a: BBA, b: BBA, tol: float = 1e-9) -> bool:
    return (
        abs(a.clutter - b.clutter) <= tol
        and abs(a.target - b.target) <= tol
        and abs(a.omega - b.omega) <= tol
    )


@settings(max_examples=200, deadline=None)
@given(bbas(), bbas())
def test_combination_is_commutative(m1, m2):
    assert _close(ds_combine(m1, m2), ds_combine(m2, m1))


@settings(max_examples=200, deadline=None)
@given(bbas(), bbas(), bbas())
def test_combination_is_associative(m1, m2, m3):
    left = ds_combine(ds_combine(m1, m2), m3)
    right = ds_combine(m1, ds_combine(m2, m3))
    assert _close(left, right, tol=1e-7)


@settings(max_examples=200, deadline=None)
@given(bbas(), bbas())
def test_pignistic_sums_to_one(m1, m2):
    fused = ds_combine(m1, m2)
    assert pignistic(fused) + pignistic_clutter(fused) == pytest.approx(1.0)
    assert 0.0 <= pignistic(fused) <= 1.0


def test_bayesian_fusion_example():
    """0.6 y 0.8 se fusionan en 6/7 con conflicto 0.44"""
    print("🧪 Probando fusión de dos fuentes bayesianas...")
    result = combine_with_conflict(bba_from_probability(0.6, "fg"), bba_from_probability(0.8, "nn"))
    assert result.conflict == pytest.approx(0.44)
    assert pignistic(result.bba) == pytest.approx(6.0 / 7.0)
    assert result.bba.is_bayesian
    assert not result.clamped
    print("✅ BetP = 6/7")


def test_vacuous_bba_is_neutral():
    m = bba_from_probability(0.3, "nn")
    assert _close(ds_combine(m, BBA.vacuous()), m)


def test_total_conflict_is_clamped():
    """Fuentes en contradicción total: masas acotadas y resultado finito"""
    print("🧪 Probando conflicto total...")
    result = combine_with_conflict(bba_from_probability(1.0, "fg"), bba_from_probability(0.0, "nn"))
    assert result.clamped
    assert pignistic(result.bba) == pytest.approx(0.5)
    assert ds_combine(bba_from_probability(1.0), bba_from_probability(0.0, "nn")).target == pytest.approx(0.5)
    print("✅ Conflicto resuelto")


def test_invalid_bbas():
    with pytest.raises(ValueError):
        BBA(clutter=0.5, target=0.6, omega=0.0)
    with pytest.raises(ValueError):
        BBA(clutter=0.5, target=0.5, omega=0.0, empty=0.1)
    with pytest.raises(ValueError):
        bba_from_probability(1.2)
    with pytest.raises(ValueError):
        bba_from_probability(0.5, "radar")
