"""
Tests para la batería de reproducción.
"""
import random
import pytest
from unittest.mock import patch
from operadkit.cli.suite import (
    composition_associativity, membership_brute_force, oracle_agreement, order_compatibility, run_suite,
)
from operadkit.errors import SeriesError

pytestmark = pytest.mark.cli


def _passing(ctx):
    return True, "ok"


def _failing(ctx):
    return False, "mismatch"


def _raising(ctx):
    raise SeriesError("boom")


def test_run_suite_counts_and_errors():
    """Prueba que los errores dentro de un criterio cuentan como fallos."""
    checks = [("a", _passing), ("b", _failing), ("c", _raising)]
    with patch("operadkit.cli.suite.CHECKS", checks):
        report = run_suite(quick=True)
    assert [c.name for c in report.checks] == ["a", "b", "c"]
    assert report.passed == 1
    assert report.failed == 2
    assert report.checks[2].detail == "error: boom"
    assert all(c.seconds is None for c in report.checks)
    assert all(c.bounded for c in report.checks)


def test_run_suite_timings():
    with patch("operadkit.cli.suite.CHECKS", [("a", _passing)]):
        report = run_suite(timings=True)
    assert report.checks[0].seconds is not None
    assert report.checks[0].seconds >= 0


def test_property_samples():
    """Prueba muestras pequeñas de compatibilidad del orden y asociatividad de la composición."""
    assert order_compatibility(random.Random(0), 50) == 0
    assert composition_associativity(random.Random(1), 50) == 0


@pytest.mark.slow
def test_oracles_agree():
    assert oracle_agreement(4) == []


def test_free_membership_brute_force():
    assert membership_brute_force(3) == 0


@pytest.mark.slow
def test_quick_suite_passes():
    report = run_suite(quick=True, seed=0)
    failures = [f"{c.name}: {c.detail}" for c in report.checks if not c.passed]
    assert report.failed == 0, failures
