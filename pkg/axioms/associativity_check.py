"""
Associativity over all triples, (a x b) x c = a x (b x c).

For a fixed first argument a both sides are integer matrix products:
    left[b, c, d]  = sum_e N[a, b, e] N[e, c, d]
    right[b, c, d] = sum_f N[b, c, f] N[a, f, d]
A triple is checked only when every cell that feeds either sum is known.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import List, Sequence, Tuple

import numpy as np

from .base import AxiomCheck, AxiomContext, AxiomResult

Failure = Tuple[int, int, int, int, int, int]


def associativity_rows(
    N: np.ndarray, known: np.ndarray, rows: Sequence[int], limit: int
) -> Tuple[int, int, int, List[Failure]]:
    """Check the triples (a, b, c) for a in rows; returns (checked, skipped, failures, sample)."""
    n = N.shape[0]
    flat_right = N.reshape(n, n * n)
    flat_left = N.reshape(n * n, n)
    unknown = (~known).astype(np.int64)
    support = (N > 0).astype(np.int64)

    checked = skipped = failed = 0
    sample: List[Failure] = []
    for a in rows:
        left = (N[a] @ flat_right).reshape(n, n, n)
        right = (flat_left @ N[a]).reshape(n, n, n)

        # left needs (a,b) and every (e,c) with N[a,b,e] > 0
        valid = known[a][:, None] & ((support[a] @ unknown) == 0)
        # right needs (b,c) and every (a,f) with N[b,c,f] > 0
        valid &= known & ((support.reshape(n * n, n) @ unknown[a]).reshape(n, n) == 0)

        bad = valid & np.any(left != right, axis=2)
        checked += int(valid.sum())
        skipped += int((~valid).sum())
        for b, c in zip(*np.nonzero(bad)):
            failed += 1
            if len(sample) < limit:
                d = int(np.nonzero(left[b, c] != right[b, c])[0][0])
                sample.append((int(a), int(b), int(c), d, int(left[b, c, d]), int(right[b, c, d])))
    return checked, skipped, failed, sample


def _chunks(size: int, parts: int) -> List[List[int]]:
    return [list(range(start, size, parts)) for start in range(parts) if start < size]


class AssociativityCheck(AxiomCheck):
    def get_dependencies(self):
        return ["commutativity"]

    def get_description(self) -> str:
        return "(a x b) x c = a x (b x c) for all triples"

    def check(self, context: AxiomContext) -> AxiomResult:
        # Each worker keeps its lowest failures up to the cap; the sorted merge equals the serial result
        limit = context.max_counterexamples
        if context.workers > 1 and context.size > 1:
            chunks = _chunks(context.size, context.workers)
            with ProcessPoolExecutor(max_workers=context.workers) as pool:
                parts = list(
                    pool.map(
                        associativity_rows,
                        [context.N] * len(chunks),
                        [context.known] * len(chunks),
                        chunks,
                        [limit] * len(chunks),
                    )
                )
        else:
            parts = [associativity_rows(context.N, context.known, range(context.size), limit)]

        checked = sum(p[0] for p in parts)
        skipped = sum(p[1] for p in parts)
        total_failed = sum(p[2] for p in parts)
        failures = [item for p in parts for item in p[3]]

        result = context.result(
            self.name,
            checked,
            skipped,
            failures,
            lambda a, b, c, d, left, right: (
                f"({context.label(a)} x {context.label(b)}) x {context.label(c)} has {left}*{context.label(d)}, "
                f"{context.label(a)} x ({context.label(b)} x {context.label(c)}) has {right}"
            ),
        )
        result.total_failures = total_failed
        self.logger.debug(f"Associativity: {checked} triples checked, {skipped} skipped, {total_failed} failing")
        return result
