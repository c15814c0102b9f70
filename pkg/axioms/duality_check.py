"""
Duality checks: the unit delta property, the dual involution and the
symmetry N^c_{a,b} = N^{b'}_{a,c'}.
"""

import numpy as np

from .base import DUAL_MISSING, DUAL_MULTIPLE, DUAL_UNKNOWN, AxiomCheck, AxiomContext, AxiomResult


class UnitDeltaCheck(AxiomCheck):
    def get_dependencies(self):
        return ["unit"]

    def get_description(self) -> str:
        return "N^{unit}_{x,y} is 1 for exactly one y and 0 otherwise"

    def check(self, context: AxiomContext) -> AxiomResult:
        failures = []
        checked = skipped = 0
        for a in range(context.size):
            dual = int(context.duals[a])
            if dual == DUAL_UNKNOWN:
                skipped += 1
                continue
            checked += 1
            if dual == DUAL_MISSING:
                failures.append((a, 0, 0))
            elif dual == DUAL_MULTIPLE:
                count = int(np.count_nonzero(context.N[a, :, context.unit]))
                failures.append((a, 1, count))
            elif context.N[a, dual, context.unit] != 1:
                failures.append((a, 2, int(context.N[a, dual, context.unit])))

        def render(a, kind, value):
            if kind == 0:
                return f"D(0,0) occurs in no product {context.label(a)} x y"
            if kind == 1:
                return f"D(0,0) occurs in {value} products {context.label(a)} x y"
            dual = int(context.duals[a])
            return f"N^D(0,0)_{{{context.label(a)},{context.label(dual)}}} = {value}"

        return context.result(self.name, checked, skipped, failures, render)


class DualInvolutionCheck(AxiomCheck):
    def get_dependencies(self):
        return ["unit-delta"]

    def get_description(self) -> str:
        return "x'' = x and qdim(x') = qdim(x)"

    def check(self, context: AxiomContext) -> AxiomResult:
        failures = []
        checked = skipped = 0
        for a in range(context.size):
            b = int(context.duals[a])
            if b < 0 or context.duals[b] < 0:
                skipped += 1
                continue
            checked += 1
            if context.duals[b] != a:
                failures.append((a, b, 0))
            elif context.qdims[a] != context.qdims[b]:
                failures.append((a, b, 1))

        def render(a, b, kind):
            if kind == 0:
                return f"dual of {context.label(a)} is {context.label(b)}, whose dual is {context.label(int(context.duals[b]))}"
            return f"qdim({context.label(a)}) = {context.qdims[a]} but its dual {context.label(b)} has qdim {context.qdims[b]}"

        return context.result(self.name, checked, skipped, failures, render)


class DualSymmetryCheck(AxiomCheck):
    def get_dependencies(self):
        return ["dual-involution"]

    def get_description(self) -> str:
        return "N^c_{a,b} = N^{b'}_{a,c'}"

    def check(self, context: AxiomContext) -> AxiomResult:
        N = context.N
        has_dual = context.duals >= 0
        duals = np.where(has_dual, context.duals, 0)

        # rhs[a, b, c] = N[a, c', b']
        rhs = N[:, duals][:, :, duals].transpose(0, 2, 1)
        valid = (
            context.known[:, :, None]
            & context.known[:, duals][:, None, :]
            & has_dual[None, :, None]
            & has_dual[None, None, :]
        )
        bad = valid & (N != rhs)
        failures = [tuple(int(v) for v in item) for item in np.argwhere(bad)]
        checked = int(valid.sum())

        def render(a, b, c):
            b_dual, c_dual = int(duals[b]), int(duals[c])
            return (
                f"N^{context.label(c)}_{{{context.label(a)},{context.label(b)}}} = {int(N[a, b, c])} but "
                f"N^{context.label(b_dual)}_{{{context.label(a)},{context.label(c_dual)}}} = {int(N[a, c_dual, b_dual])}"
            )

        return context.result(self.name, checked, valid.size - checked, failures, render)
