"""
Completion of the structure-constant table.

build_partial_table evaluates every rule; cells with no rule (Uncovered) or
with degenerate formal pairs become unknowns. complete_table resolves them:

    1. transport through a simple current: a x b = (a x g) x b x g^-1
    2. screen the determined cells with the axiom suite
    3. generate candidates per unknown cell (degenerate splits, qdim compositions)
    4. prune candidates with local dual-symmetry constraints
    5. verify every remaining assignment with the full suite

Ambiguity is reported, never resolved by preference.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from axioms import AxiomContext, AxiomLog, verify_axioms
from constants import DEFAULT_MAX_ASSIGNMENTS, MAX_COUNTEREXAMPLES
from fusion_rules import (
    DEFAULT_CONFIG,
    DegeneratePolicy,
    FusionVector,
    RuleVariant,
    RuleVariantConfig,
    evaluate_rule,
    ordered_cell,
)
from fusion_table import FusionTable, UncoveredCellError
from labels import Diag, Label, check_rank, enumerate_simples, validate_label
from qdim import QDim, qdim, qdim_vector

logger = logging.getLogger(__name__)

Cell = Tuple[Label, Label]


class CompletionError(RuntimeError):
    """The table cannot be completed consistently."""

    def __init__(self, message: str, report: Optional["CompletionReport"] = None):
        super().__init__(message)
        self.report = report


class SearchLimitExceeded(CompletionError):
    """The residual candidate product is larger than the configured bound."""


class CompletionStatus(str, Enum):
    UNIQUE = "unique"
    AMBIGUOUS = "ambiguous"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class UnknownCell:
    """An undetermined cell: a fixed part plus degenerate slots, or fully Uncovered."""

    a: Label
    b: Label
    fixed: FusionVector = field(default_factory=FusionVector)
    degenerate: Tuple[Tuple[int, int], ...] = ()
    uncovered: bool = False
    rule: str = ""

    def budget(self, k: int) -> QDim:
        """qdim still to be distributed over the unknown part."""
        return qdim(k, self.a) * qdim(k, self.b) - qdim_vector(k, self.fixed.items())


@dataclass
class PartialTable:
    k: int
    cfg: RuleVariantConfig
    cells: Dict[Cell, FusionVector] = field(default_factory=dict)
    unknowns: Dict[Cell, UnknownCell] = field(default_factory=dict)
    provenance: Dict[Cell, str] = field(default_factory=dict)

    @property
    def cell_count(self) -> int:
        return len(self.cells) + len(self.unknowns)

    def lookup(self, a: Label, b: Label) -> Optional[FusionVector]:
        return self.cells.get(ordered_cell(a, b))

    def structure_constant(self, a: Label, b: Label, c: Label) -> int:
        vector = self.lookup(a, b)
        if vector is None:
            raise UncoveredCellError(f"Cell {a} x {b} is not determined for k={self.k}")
        return vector[c]

    def with_unknown(self, a: Label, b: Label) -> "PartialTable":
        """Copy with a covered cell re-opened as an Uncovered unknown."""
        validate_label(self.k, a)
        validate_label(self.k, b)
        key = ordered_cell(a, b)
        cells = dict(self.cells)
        cells.pop(key, None)
        unknowns = dict(self.unknowns)
        unknowns[key] = UnknownCell(key[0], key[1], uncovered=True, rule="reopened")
        provenance = dict(self.provenance)
        provenance[key] = "reopened"
        return PartialTable(self.k, self.cfg, cells, unknowns, provenance)

    def known_table(self, cells: Optional[Dict[Cell, FusionVector]] = None) -> FusionTable:
        cells = self.cells if cells is None else cells
        provenance = {key: self.provenance.get(key, "") for key in cells}
        return FusionTable.from_cells(self.k, cells, provenance, self.cfg)


@dataclass
class CompletionReport:
    k: int
    cfg: RuleVariantConfig
    status: CompletionStatus
    solutions: int
    resolved: Dict[Cell, FusionVector] = field(default_factory=dict)
    axiom_log: AxiomLog = field(default_factory=AxiomLog)
    table: Optional[FusionTable] = None
    alternatives: List[Dict[Cell, FusionVector]] = field(default_factory=list)
    failure: Optional[str] = None
    variant_verdict: Optional[str] = None

    @property
    def is_unique(self) -> bool:
        return self.status == CompletionStatus.UNIQUE

    def summary(self) -> str:
        line = f"k={self.k} [{self.cfg}]: {self.status.value}, {self.solutions} solution(s), {len(self.resolved)} resolved cell(s)"
        if self.failure:
            line += f"; first failure: {self.failure}"
        if self.variant_verdict:
            line += f"; passing variant: {self.variant_verdict}"
        return line


def build_partial_table(k: int, cfg: RuleVariantConfig = DEFAULT_CONFIG) -> PartialTable:
    """Evaluate the rules on every unordered pair of simples."""
    check_rank(k)
    labels = enumerate_simples(k)
    table = PartialTable(k, cfg)
    for ia, a in enumerate(labels):
        for b in labels[ia:]:
            key = ordered_cell(a, b)
            evaluation = evaluate_rule(k, a, b, cfg)
            if evaluation.is_determined:
                table.cells[key] = evaluation.fixed
                table.provenance[key] = evaluation.rule
            elif evaluation.degenerate and not evaluation.uncovered and cfg.degenerate_policy == DegeneratePolicy.FIXED_SPLIT:
                table.cells[key] = evaluation.default_expansion()
                table.provenance[key] = f"{evaluation.rule}:fixed-split"
            else:
                table.unknowns[key] = UnknownCell(
                    key[0],
                    key[1],
                    fixed=evaluation.fixed,
                    degenerate=evaluation.degenerate,
                    uncovered=evaluation.uncovered,
                    rule=evaluation.rule,
                )
                table.provenance[key] = evaluation.rule
    logger.info(f"Built partial table k={k} [{cfg}]: {table.cell_count} cells, {len(table.unknowns)} unknown")
    return table


# Stage 1: simple-current transport

Lookup = Callable[[Label, Label], Optional[FusionVector]]


def transport_candidates(k: int, a: Label, b: Label, lookup: Lookup) -> List[Tuple[FusionVector, str]]:
    """
    Every transport of a x b through a current g = D(l,0), l = 1..2k-1:
    (a x g) x b x g^-1 for each g whose source cell is determined.
    """
    n = 2 * k
    found: List[Tuple[FusionVector, str]] = []
    for x, y in ((a, b), (b, a)):
        for l in range(1, n):
            g, g_inverse = Diag(l, 0), Diag((-l) % n, 0)
            shifted = lookup(x, g)
            if shifted is None or not shifted.is_simple():
                continue
            (x_shifted,) = shifted.labels()
            source = lookup(x_shifted, y)
            if source is None:
                continue
            counts = FusionVector()
            for c, mult in source.items():
                back = lookup(c, g_inverse)
                if back is None:
                    break
                counts = counts + back.scaled(mult)
            else:
                found.append((counts, f"transport:{x_shifted}x{y}*{g_inverse}"))
    return found


def transport_cell(k: int, a: Label, b: Label, lookup: Lookup) -> Optional[Tuple[FusionVector, str]]:
    """
    Resolve a x b by simple-current transport.

    Returns the vector with the tag of the first source, or None when no
    current gives a determined source or when two currents disagree.
    """
    found = transport_candidates(k, a, b, lookup)
    if not found:
        return None
    vector, tag = found[0]
    conflicts = [other_tag for other, other_tag in found[1:] if other != vector]
    if conflicts:
        logger.warning(f"Transports of {a} x {b} disagree ({tag} gives {vector}, {conflicts[0]} differs); cell left unresolved")
        return None
    logger.debug(f"Transported {a} x {b} via {tag} ({len(found)} agreeing source(s)): {vector}")
    return vector, tag


def _transport_unknowns(pt: PartialTable, cells: Dict[Cell, FusionVector], provenance: Dict[Cell, str]) -> Dict[Cell, FusionVector]:
    """Repeatedly transport Uncovered cells until no more resolve."""
    resolved: Dict[Cell, FusionVector] = {}
    pending = sorted((key for key, u in pt.unknowns.items() if u.uncovered), key=_cell_key)

    def lookup(x: Label, y: Label) -> Optional[FusionVector]:
        return cells.get(ordered_cell(x, y))

    progress = True
    while pending and progress:
        progress = False
        for key in list(pending):
            outcome = transport_cell(pt.k, key[0], key[1], lookup)
            if outcome is None:
                continue
            vector, tag = outcome
            cells[key] = vector
            provenance[key] = tag
            resolved[key] = vector
            pending.remove(key)
            progress = True
    return resolved


def _cell_key(cell: Cell):
    return (cell[0].sort_key(), cell[1].sort_key())


# Stage 3: candidates

def degenerate_candidates(cell: UnknownCell) -> List[FusionVector]:
    """Every split m0*D(a,0) + (2m-m0)*D(a,1) per slot, default split m0 = m first."""
    per_slot = []
    for residue, m in cell.degenerate:
        order = [m] + [m0 for m0 in range(2 * m + 1) if m0 != m]
        per_slot.append([(residue, m0, 2 * m - m0) for m0 in order])

    candidates = []
    for choice in itertools.product(*per_slot):
        counts = cell.fixed.as_counter()
        for residue, m0, m1 in choice:
            counts[Diag(residue, 0)] += m0
            counts[Diag(residue, 1)] += m1
        candidates.append(FusionVector.from_counts(counts))
    return candidates


def qdim_compositions(k: int, budget: QDim) -> Iterator[FusionVector]:
    """All nonnegative vectors over the simples whose exact qdim equals the budget."""
    weights = [(x, qdim(k, x)) for x in enumerate_simples(k)]

    def fits(value: QDim) -> bool:
        return value.a >= 0 and value.b >= 0

    def extend(start: int, remaining: QDim, chosen: Dict[Label, int]):
        if remaining.a == 0 and remaining.b == 0:
            yield FusionVector.from_counts(chosen)
            return
        for pos in range(start, len(weights)):
            label, weight = weights[pos]
            after = remaining - weight
            if fits(after):
                chosen[label] = chosen.get(label, 0) + 1
                yield from extend(pos, after, chosen)
                chosen[label] -= 1
                if not chosen[label]:
                    del chosen[label]

    if not fits(budget):
        return
    yield from extend(0, budget, {})


def _dual_symmetry_filter(table: FusionTable, context: AxiomContext, key: Cell, candidates: List[FusionVector]) -> List[FusionVector]:
    """Keep candidates agreeing with N^c_{x,y} = N^{y'}_{x,c'} wherever the right side is known."""
    duals = context.duals
    ia, ib = table.index[key[0]], table.index[key[1]]
    constraints: Dict[int, int] = {}
    for x, y in ((ia, ib), (ib, ia)):
        if duals[y] < 0:
            continue
        for c in range(table.size):
            c_dual = duals[c]
            if c_dual < 0 or not table.known[x, c_dual]:
                continue
            value = int(table.N[x, c_dual, duals[y]])
            if constraints.setdefault(c, value) != value:
                return []

    if not constraints:
        return candidates
    kept = []
    for vector in candidates:
        if all(vector[table.labels[c]] == value for c, value in constraints.items()):
            kept.append(vector)
    return kept


# Driver

def _fill(table: FusionTable, assignment: Dict[Cell, FusionVector]) -> FusionTable:
    filled = table.copy()
    for (a, b), vector in assignment.items():
        ia, ib = filled.index[a], filled.index[b]
        filled.N[ia, ib, :] = 0
        filled.N[ib, ia, :] = 0
        for c, mult in vector.items():
            filled.N[ia, ib, filled.index[c]] = mult
            filled.N[ib, ia, filled.index[c]] = mult
        filled.known[ia, ib] = filled.known[ib, ia] = True
        filled.provenance[(min(ia, ib), max(ia, ib))] = "search"
    return filled


def complete_table(
    pt: PartialTable,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    enabled: Optional[List[str]] = None,
    max_counterexamples: int = MAX_COUNTEREXAMPLES,
    workers: int = 1,
    transport: bool = True,
) -> CompletionReport:
    """Resolve every unknown of pt and verify the result."""
    k, cfg = pt.k, pt.cfg
    cells = dict(pt.cells)
    provenance = dict(pt.provenance)

    resolved = _transport_unknowns(pt, cells, provenance) if transport else {}
    remaining = {key: u for key, u in pt.unknowns.items() if key not in resolved}
    logger.info(f"k={k} [{cfg}]: transport resolved {len(resolved)} cell(s), {len(remaining)} left")

    screen_table = FusionTable.from_cells(k, cells, provenance, cfg)
    screen_log = verify_axioms(screen_table, enabled, max_counterexamples, workers)

    def report(status, solutions, log, **kwargs) -> CompletionReport:
        return CompletionReport(k, cfg, status, solutions, axiom_log=log, **kwargs)

    if not screen_log.passed:
        failure = screen_log.first_failure()
        message = f"{failure.name}: {failure.first_counterexample}"
        logger.warning(f"k={k} [{cfg}] infeasible on determined cells: {message}")
        return report(CompletionStatus.INFEASIBLE, 0, screen_log, resolved=resolved, failure=message)

    if not remaining:
        return report(CompletionStatus.UNIQUE, 1, screen_log, resolved=resolved, table=screen_table)

    context = AxiomContext(screen_table, max_counterexamples=max_counterexamples)
    keys = sorted(remaining, key=_cell_key)
    options: List[List[FusionVector]] = []
    for key in keys:
        unknown = remaining[key]
        if unknown.uncovered:
            candidates = list(qdim_compositions(k, unknown.budget(k)))
        else:
            candidates = degenerate_candidates(unknown)
        kept = _dual_symmetry_filter(screen_table, context, key, candidates)
        logger.debug(f"{key[0]} x {key[1]}: {len(candidates)} candidate(s), {len(kept)} after dual-symmetry pruning")
        if not kept:
            message = f"dual-symmetry: no candidate for {key[0]} x {key[1]}"
            logger.warning(f"k={k} [{cfg}] infeasible: {message}")
            return report(CompletionStatus.INFEASIBLE, 0, screen_log, resolved=resolved, failure=message)
        options.append(kept)

    total = math.prod(len(o) for o in options)
    if total > max_assignments:
        raise SearchLimitExceeded(
            f"k={k} [{cfg}]: {total} candidate assignments for {len(keys)} unknown cell(s) exceed the limit of {max_assignments}"
        )
    logger.info(f"k={k} [{cfg}]: searching {total} assignment(s) over {len(keys)} cell(s)")

    solutions: List[Tuple[Dict[Cell, FusionVector], FusionTable, AxiomLog]] = []
    first_log: Optional[AxiomLog] = None
    for choice in itertools.product(*options):
        assignment = dict(zip(keys, choice))
        table = _fill(screen_table, assignment)
        log = verify_axioms(table, enabled, max_counterexamples, workers)
        first_log = first_log or log
        if log.passed:
            solutions.append((assignment, table, log))

    if not solutions:
        failure = first_log.first_failure()
        message = f"{failure.name}: {failure.first_counterexample}" if failure else "no assignment passes"
        logger.warning(f"k={k} [{cfg}] infeasible after search: {message}")
        return report(CompletionStatus.INFEASIBLE, 0, first_log, resolved=resolved, failure=message)

    if len(solutions) > 1:
        logger.warning(f"k={k} [{cfg}] ambiguous: {len(solutions)} completions pass every axiom")
        return report(
            CompletionStatus.AMBIGUOUS,
            len(solutions),
            solutions[0][2],
            resolved=resolved,
            alternatives=[assignment for assignment, _, _ in solutions],
        )

    assignment, table, log = solutions[0]
    resolved.update(assignment)
    return report(CompletionStatus.UNIQUE, 1, log, resolved=resolved, table=table)


def complete_cell(
    k: int, a: Label, b: Label, cfg: RuleVariantConfig = DEFAULT_CONFIG, **kwargs
) -> Tuple[FusionVector, str]:
    """
    One cell of the completed table.

    Determined cells come straight from the rules. Uncovered cells are
    transported through a simple current using rule-level lookups only; any
    other unknown falls back to completing the whole table.
    """
    validate_label(k, a)
    validate_label(k, b)
    evaluation = evaluate_rule(k, a, b, cfg)
    if evaluation.is_determined:
        return evaluation.fixed, evaluation.rule
    if evaluation.degenerate and not evaluation.uncovered and cfg.degenerate_policy == DegeneratePolicy.FIXED_SPLIT:
        return evaluation.default_expansion(), f"{evaluation.rule}:fixed-split"

    if evaluation.uncovered:

        def lookup(x: Label, y: Label) -> Optional[FusionVector]:
            ev = evaluate_rule(k, x, y, cfg)
            return ev.fixed if ev.is_determined else None

        outcome = transport_cell(k, a, b, lookup)
        if outcome is not None:
            vector, _ = outcome
            if qdim_vector(k, vector.items()) != qdim(k, a) * qdim(k, b):
                raise CompletionError(f"Transported {a} x {b} = {vector} breaks the qdim identity")
            return outcome

    result = complete_table(build_partial_table(k, cfg), **kwargs)
    if not result.is_unique:
        raise CompletionError(f"Cannot complete {a} x {b}: {result.summary()}", report=result)
    return result.table.product(a, b), result.table.cell_provenance(a, b)


@dataclass
class VariantComparison:
    k: int
    reports: Dict[str, CompletionReport] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def passing(self) -> List[str]:
        return [
            name
            for name, r in self.reports.items()
            if r.status in (CompletionStatus.UNIQUE, CompletionStatus.AMBIGUOUS)
        ]

    @property
    def verdict(self) -> str:
        passing = self.passing
        if len(passing) == 2:
            return "both"
        return passing[0] if passing else "none"


def compare_variants(
    k: int,
    degenerate_policy: DegeneratePolicy = DegeneratePolicy.SPLIT,
    **kwargs,
) -> VariantComparison:
    """Complete and verify the table under both rule variants and name the passing one."""
    comparison = VariantComparison(k)
    for variant in (RuleVariant.PRINTED, RuleVariant.CORRECTED):
        cfg = RuleVariantConfig(variant, degenerate_policy)
        try:
            comparison.reports[variant.value] = complete_table(build_partial_table(k, cfg), **kwargs)
        except SearchLimitExceeded as e:
            logger.warning(str(e))
            comparison.errors[variant.value] = str(e)
    verdict = comparison.verdict
    for r in comparison.reports.values():
        r.variant_verdict = verdict
    logger.info(f"k={k}: passing variant {verdict}")
    return comparison
