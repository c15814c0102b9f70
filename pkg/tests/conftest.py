"""Shared fixtures for the fusion toolkit tests."""

import os
import sys

import pytest

# Modules are imported by top-level name, as run_fusion.py does
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fusion_rules import DegeneratePolicy, RuleVariant, RuleVariantConfig  # noqa: E402
from table_completion import build_partial_table, complete_table  # noqa: E402

PRINTED = RuleVariantConfig(RuleVariant.PRINTED, DegeneratePolicy.SPLIT)
CORRECTED = RuleVariantConfig(RuleVariant.CORRECTED, DegeneratePolicy.SPLIT)

_completed = {}


def completed_report(k, cfg=CORRECTED, enabled=None):
    """Completion report for k, cached across the session."""
    key = (k, cfg, tuple(enabled) if enabled is not None else None)
    if key not in _completed:
        _completed[key] = complete_table(build_partial_table(k, cfg), enabled=enabled)
    return _completed[key]


@pytest.fixture
def printed_cfg():
    return PRINTED


@pytest.fixture
def corrected_cfg():
    return CORRECTED


@pytest.fixture
def completed_table():
    """Factory: the completed corrected table for a given k."""

    def factory(k):
        report = completed_report(k)
        assert report.is_unique, report.summary()
        return report.table

    return factory


@pytest.fixture
def cli_env(tmp_path, monkeypatch):
    """Run the CLI in an empty directory with only the example configuration."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CONFIG_DIR", raising=False)
    monkeypatch.delenv("APP_SOURCE_DIR", raising=False)
    for key in list(os.environ):
        if key.startswith("ORBIFOLD_FUSION_"):
            monkeypatch.delenv(key)
    monkeypatch.setenv("ORBIFOLD_FUSION_REPORT_DIR", str(tmp_path / "reports"))
    return tmp_path


@pytest.fixture
def completion():
    """Factory: the cached completion report for (k, cfg, enabled)."""
    return completed_report
