"""
Integrality, unit and commutativity checks.
"""

import numpy as np

from .base import AxiomCheck, AxiomContext, AxiomResult


class IntegralityCheck(AxiomCheck):
    def get_description(self) -> str:
        return "All structure constants are nonnegative integers"

    def check(self, context: AxiomContext) -> AxiomResult:
        failures = []
        rows, cols = np.nonzero(context.known)
        for a, b in zip(rows, cols):
            for c in np.nonzero(context.N[a, b] < 0)[0]:
                failures.append((int(a), int(b), int(c), int(context.N[a, b, c])))
        checked = int(context.known.sum()) * context.size
        skipped = int((~context.known).sum()) * context.size
        return context.result(
            self.name,
            checked,
            skipped,
            failures,
            lambda a, b, c, m: f"N^{context.label(c)}_{{{context.label(a)},{context.label(b)}}} = {m}",
        )


class UnitCheck(AxiomCheck):
    def get_dependencies(self):
        return ["integrality"]

    def get_description(self) -> str:
        return "D(0,0) x X = X for every simple X"

    def check(self, context: AxiomContext) -> AxiomResult:
        unit = context.unit
        failures = []
        checked = skipped = 0
        for x in range(context.size):
            if not context.known[unit, x]:
                skipped += 1
                continue
            checked += 1
            expected = np.zeros(context.size, dtype=np.int64)
            expected[x] = 1
            if not np.array_equal(context.N[unit, x], expected):
                failures.append((x,))
        return context.result(
            self.name,
            checked,
            skipped,
            failures,
            lambda x: f"D(0,0) x {context.label(x)} = {context.table.product_at(unit, x)}",
        )


class CommutativityCheck(AxiomCheck):
    def get_dependencies(self):
        return ["integrality"]

    def get_description(self) -> str:
        return "a x b = b x a"

    def check(self, context: AxiomContext) -> AxiomResult:
        failures = []
        asymmetric_mask = context.known != context.known.T
        both = context.known & context.known.T
        differs = np.any(context.N != context.N.transpose(1, 0, 2), axis=2) & both
        for a, b in zip(*np.nonzero(np.triu(differs | asymmetric_mask, k=1))):
            failures.append((int(a), int(b)))
        size = context.size
        pairs = size * (size - 1) // 2
        skipped = int(np.triu(~both, k=1).sum())
        return context.result(
            self.name,
            pairs - skipped,
            skipped,
            failures,
            lambda a, b: f"{context.label(a)} x {context.label(b)} differs from {context.label(b)} x {context.label(a)}",
        )
