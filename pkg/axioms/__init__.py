"""
Axiom check loading and management system.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Set, Type

from constants import MAX_COUNTEREXAMPLES
from fusion_table import FusionTable

from .associativity_check import AssociativityCheck
from .base import AxiomCheck, AxiomContext, AxiomResult
from .duality_check import DualInvolutionCheck, DualSymmetryCheck, UnitDeltaCheck
from .qdim_check import QdimHomomorphismCheck, QdimLowerBoundCheck, SimpleCurrentsCheck
from .ring_check import CommutativityCheck, IntegralityCheck, UnitCheck

logger = logging.getLogger(__name__)

DEFAULT_CHECKS: Dict[str, Type[AxiomCheck]] = {
    "integrality": IntegralityCheck,
    "unit": UnitCheck,
    "commutativity": CommutativityCheck,
    "associativity": AssociativityCheck,
    "dual-involution": DualInvolutionCheck,
    "unit-delta": UnitDeltaCheck,
    "dual-symmetry": DualSymmetryCheck,
    "qdim-homomorphism": QdimHomomorphismCheck,
    "qdim-lower-bound": QdimLowerBoundCheck,
    "simple-currents": SimpleCurrentsCheck,
}


@dataclass
class AxiomLog:
    """Per-axiom results in execution order."""

    results: List[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def first_failure(self) -> Optional[AxiomResult]:
        return next((r for r in self.results if not r.passed), None)

    def failed_names(self) -> List[str]:
        return [r.name for r in self.results if not r.passed]

    def get(self, name: str) -> Optional[AxiomResult]:
        return next((r for r in self.results if r.name == name), None)

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def to_list(self) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in self.results]

    def summary(self) -> str:
        return "\n".join(str(r) for r in self.results)


class AxiomManager:
    """
    Manages loading and ordering of axiom checks.
    """

    def __init__(self):
        self.checks: Dict[str, AxiomCheck] = {}
        self.enabled_checks: List[str] = []

    def load_check(self, name: str, check_class: Type[AxiomCheck], config: Optional[Dict[str, Any]] = None) -> None:
        if name in self.checks:
            raise ValueError(f"Axiom check {name} already loaded")
        self.checks[name] = check_class(name, config)
        logger.debug(f"Loaded axiom check: {name}")

    def enable_check(self, name: str) -> None:
        if name not in self.checks:
            raise ValueError(f"Axiom check {name} not loaded")
        if name not in self.enabled_checks:
            self.enabled_checks.append(name)

    def disable_check(self, name: str) -> None:
        if name in self.enabled_checks:
            self.enabled_checks.remove(name)

    def resolve_dependencies(self, names: Iterable[str]) -> List[str]:
        """
        Resolve check dependencies and return the execution order.
        """
        resolved: List[str] = []
        visited: Set[str] = set()

        def visit(name):
            if name in visited:
                if name not in resolved:
                    raise ValueError(f"Circular dependency detected involving {name}")
                return
            visited.add(name)

            if name not in self.checks:
                raise ValueError(f"Axiom check {name} not found")

            for dep in self.checks[name].get_dependencies():
                visit(dep)

            resolved.append(name)

        for name in names:
            visit(name)

        return resolved

    def run(
        self,
        table: FusionTable,
        names: Optional[Iterable[str]] = None,
        max_counterexamples: int = MAX_COUNTEREXAMPLES,
        workers: int = 1,
    ) -> AxiomLog:
        ordered = self.resolve_dependencies(list(names) if names is not None else self.enabled_checks)
        context = AxiomContext(table, max_counterexamples=max_counterexamples, workers=workers)
        log = AxiomLog()
        for name in ordered:
            check = self.checks[name]
            if not check.validate_config():
                logger.error(f"Axiom check {name} configuration validation failed")
                continue
            result = check.check(context)
            log.results.append(result)
            if not result.passed:
                logger.debug(f"k={table.k}: {result}")
        logger.info(f"k={table.k} [{table.cfg}]: {len(log) - len(log.failed_names())}/{len(log)} axioms passed")
        return log

    def get_check_info(self, name: str) -> Optional[Dict[str, Any]]:
        if name not in self.checks:
            return None
        check = self.checks[name]
        return {
            "name": name,
            "description": check.get_description(),
            "enabled": name in self.enabled_checks,
            "dependencies": check.get_dependencies(),
        }

    def list_checks(self) -> Dict[str, Optional[Dict[str, Any]]]:
        return {name: self.get_check_info(name) for name in self.checks}


def create_axiom_manager(enabled: Optional[Iterable[str]] = None) -> AxiomManager:
    """A manager with every default check loaded and the given ones enabled (all by default)."""
    manager = AxiomManager()
    for name, check_class in DEFAULT_CHECKS.items():
        manager.load_check(name, check_class)
    for name in enabled if enabled is not None else DEFAULT_CHECKS:
        manager.enable_check(name)
    return manager


def verify_axioms(
    table: FusionTable,
    enabled: Optional[Iterable[str]] = None,
    max_counterexamples: int = MAX_COUNTEREXAMPLES,
    workers: int = 1,
) -> AxiomLog:
    """Run the axiom suite on a table; failures are log entries, never exceptions."""
    return axiom_manager.run(
        table,
        names=list(enabled) if enabled is not None else None,
        max_counterexamples=max_counterexamples,
        workers=workers,
    )


# Global axiom manager instance
axiom_manager = create_axiom_manager()

__all__ = [
    "AxiomCheck",
    "AxiomContext",
    "AxiomLog",
    "AxiomManager",
    "AxiomResult",
    "DEFAULT_CHECKS",
    "axiom_manager",
    "create_axiom_manager",
    "verify_axioms",
]
