"""
Quantum-dimension checks and the simple-current group.
"""

import numpy as np

from fusion_table import SimpleCurrentError, UncoveredCellError
from labels import Diag
from qdim import QDim

from .base import AxiomCheck, AxiomContext, AxiomResult


class QdimHomomorphismCheck(AxiomCheck):
    def get_dependencies(self):
        return ["qdim-lower-bound"]

    def get_description(self) -> str:
        return "qdim(a x b) = qdim(a) qdim(b), exactly"

    def check(self, context: AxiomContext) -> AxiomResult:
        failures = []
        checked = skipped = 0
        zero = QDim.zero(context.k)
        for a in range(context.size):
            for b in range(a, context.size):
                if not context.known[a, b]:
                    skipped += 1
                    continue
                checked += 1
                row = context.N[a, b]
                total = zero
                for c in np.nonzero(row)[0]:
                    total = total + context.qdims[c] * int(row[c])
                if total != context.qdims[a] * context.qdims[b]:
                    failures.append((a, b))

        def render(a, b):
            product = context.qdims[a] * context.qdims[b]
            return f"qdim({context.label(a)} x {context.label(b)}) != {product}: {context.table.product_at(a, b)}"

        return context.result(self.name, checked, skipped, failures, render)


class QdimLowerBoundCheck(AxiomCheck):
    def get_description(self) -> str:
        return "qdim(x) >= 1 for every simple"

    def check(self, context: AxiomContext) -> AxiomResult:
        failures = [(x,) for x, value in enumerate(context.qdims) if value < 1]
        return context.result(
            self.name,
            context.size,
            0,
            failures,
            lambda x: f"qdim({context.label(x)}) = {context.qdims[x]} < 1",
        )


class SimpleCurrentsCheck(AxiomCheck):
    def get_dependencies(self):
        return ["qdim-homomorphism"]

    def get_description(self) -> str:
        return "qdim-1 simples are the Diag labels and form Z_2k x Z_2"

    def check(self, context: AxiomContext) -> AxiomResult:
        diag_rows = [i for i, x in enumerate(context.labels) if isinstance(x, Diag)]
        if not context.known[diag_rows].all():
            return AxiomResult(self.name, passed=True, checked=0, skipped=len(diag_rows))
        try:
            group = context.table.simple_currents()
        except (SimpleCurrentError, UncoveredCellError) as e:
            return AxiomResult(self.name, passed=False, checked=len(diag_rows), counterexamples=[str(e)], total_failures=1)
        self.logger.debug(f"Simple currents: {group.describe(context.k)}")
        return AxiomResult(self.name, passed=True, checked=len(diag_rows))
