"""
Base axiom check system for fusion tables.

Checks run against an AxiomContext, which wraps a (possibly partial) table
together with the derived dual map. Every check only quantifies over
instances whose cells are all known and counts the rest as skipped.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from fusion_table import FusionTable
from qdim import QDim, qdim

# Dual status codes
DUAL_UNKNOWN = -1
DUAL_MISSING = -2
DUAL_MULTIPLE = -3


@dataclass
class AxiomResult:
    name: str
    passed: bool
    checked: int = 0
    skipped: int = 0
    counterexamples: List[str] = field(default_factory=list)
    total_failures: int = 0

    @property
    def first_counterexample(self) -> Optional[str]:
        return self.counterexamples[0] if self.counterexamples else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.total_failures,
            "counterexamples": list(self.counterexamples),
        }

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status} (checked {self.checked}, skipped {self.skipped})"
        if not self.passed and self.counterexamples:
            line += f" first counterexample: {self.counterexamples[0]}"
        return line


class AxiomContext:
    """Shared view of a table for one verification run."""

    def __init__(self, table: FusionTable, max_counterexamples: int = 20, workers: int = 1):
        self.table = table
        self.k = table.k
        self.N = table.N
        self.known = table.known
        self.size = table.size
        self.labels = table.labels
        self.unit = table.unit_index
        self.max_counterexamples = max_counterexamples
        self.workers = max(1, int(workers))
        self.qdims: List[QDim] = [qdim(self.k, x) for x in self.labels]
        self.duals = self._derive_duals()

    def _derive_duals(self) -> np.ndarray:
        duals = np.full(self.size, DUAL_UNKNOWN, dtype=np.int64)
        for a in range(self.size):
            if not self.known[a].all():
                continue
            partners = np.nonzero(self.N[a, :, self.unit])[0]
            if len(partners) == 0:
                duals[a] = DUAL_MISSING
            elif len(partners) > 1:
                duals[a] = DUAL_MULTIPLE
            else:
                duals[a] = partners[0]
        return duals

    def label(self, index: int) -> str:
        return str(self.labels[index])

    def result(self, name: str, checked: int, skipped: int, failures: List[tuple], render) -> AxiomResult:
        """Sort raw failure tuples, cap them and render the counterexample strings."""
        failures = sorted(failures)
        shown = [render(*item) for item in failures[: self.max_counterexamples]]
        return AxiomResult(
            name=name,
            passed=not failures,
            checked=checked,
            skipped=skipped,
            counterexamples=shown,
            total_failures=len(failures),
        )


class AxiomCheck(ABC):
    """
    Abstract base class for all axiom checks.

    Subclasses implement check(); dependencies only order execution.
    """

    def __init__(self, name: str, config: Optional[Dict[str, Any]] = None):
        self.name = name
        self.config = config or {}
        self.logger = logging.getLogger(f"axioms.{self.name}")

    def get_dependencies(self) -> List[str]:
        return []

    def get_description(self) -> str:
        return "A fusion table axiom"

    def validate_config(self) -> bool:
        return True

    @abstractmethod
    def check(self, context: AxiomContext) -> AxiomResult:
        """Evaluate the axiom; failures are reported, never raised."""
