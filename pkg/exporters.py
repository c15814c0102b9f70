"""
Machine-readable exports: pydantic schemas, JSON / CSV / text rendering and
re-reading of table exports.

Quantum dimensions are always serialized as exact (a, b, radicand) triples;
decimals only appear in text output, marked approximate.
"""

import csv
import io
import logging
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from branching import branch, qdim_sub
from constants import TOOL_VERSION
from fusion_rules import FusionVector, RuleVariantConfig
from fusion_table import FusionTable
from labels import Label, enumerate_simples, parse_label_for
from qdim import QDim, qdim, qdim_vector

logger = logging.getLogger(__name__)

SIMPLES_CSV_COLUMNS = ["label", "family", "qdim_a", "qdim_b", "radicand"]
CELLS_CSV_COLUMNS = ["a", "b", "c", "mult", "provenance"]
AXIOMS_CSV_COLUMNS = ["name", "passed", "checked", "skipped", "failures"]
BRANCH_CSV_COLUMNS = ["label", "lattice", "plus", "mult", "qdim_a", "qdim_b", "radicand"]
COMPLETION_CSV_COLUMNS = ["variant", "status", "solutions", "resolved_cells", "failure"]


class QDimModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: str
    b: str
    radicand: int

    @classmethod
    def from_qdim(cls, value: QDim) -> "QDimModel":
        a, b, radicand = value.as_triple()
        return cls(a=a, b=b, radicand=radicand)


class SimpleEntry(BaseModel):
    label: str
    family: str
    qdim: QDimModel


class ProductEntry(BaseModel):
    c: str
    mult: int = Field(ge=0)


class CellEntry(BaseModel):
    a: str
    b: str
    products: List[ProductEntry]
    provenance: str = ""


class CompletionSummary(BaseModel):
    status: str
    solutions: int
    variant_verdict: Optional[str] = None
    resolved_cells: List[str] = Field(default_factory=list)
    failure: Optional[str] = None


class SimplesExport(BaseModel):
    k: int = Field(ge=1)
    tool_version: str = TOOL_VERSION
    simples: List[SimpleEntry]


class TableExport(BaseModel):
    k: int = Field(ge=1)
    variant: str
    degenerate_policy: str
    tool_version: str = TOOL_VERSION
    simples: List[SimpleEntry]
    cells: List[CellEntry]
    completion: Optional[CompletionSummary] = None


class AxiomEntry(BaseModel):
    name: str
    passed: bool
    checked: int
    skipped: int
    failures: int
    counterexamples: List[str]


class VerificationExport(BaseModel):
    k: int
    variant: str
    degenerate_policy: str
    tool_version: str = TOOL_VERSION
    passed: bool
    axioms: List[AxiomEntry]


class CompletionExport(BaseModel):
    """A completion report without the table itself."""

    k: int
    variant: str
    degenerate_policy: str
    tool_version: str = TOOL_VERSION
    completion: CompletionSummary
    axioms: List[AxiomEntry]


class ComparisonExport(BaseModel):
    k: int
    degenerate_policy: str
    tool_version: str = TOOL_VERSION
    verdict: str
    reports: Dict[str, CompletionSummary]
    errors: Dict[str, str] = Field(default_factory=dict)


class ProductExport(BaseModel):
    k: int
    variant: str
    degenerate_policy: str
    factors: List[str]
    products: List[ProductEntry]
    provenance: List[str]
    qdim: QDimModel
    qdim_check: bool


class BranchSummand(BaseModel):
    lattice: int
    plus: str
    mult: int
    qdim: QDimModel


class BranchExport(BaseModel):
    k: int
    label: str
    qdim: QDimModel
    summands: List[BranchSummand]


def simple_entries(k: int) -> List[SimpleEntry]:
    return [SimpleEntry(label=str(x), family=x.family, qdim=QDimModel.from_qdim(qdim(k, x))) for x in enumerate_simples(k)]


def build_simples_export(k: int) -> SimplesExport:
    return SimplesExport(k=k, simples=simple_entries(k))


def cell_key(a: Label, b: Label) -> str:
    return f"{a} x {b}"


def completion_summary(report) -> CompletionSummary:
    """Summary block of a CompletionReport."""
    resolved = sorted(report.resolved, key=lambda cell: (cell[0].sort_key(), cell[1].sort_key()))
    return CompletionSummary(
        status=report.status.value,
        solutions=report.solutions,
        variant_verdict=report.variant_verdict,
        resolved_cells=[cell_key(a, b) for a, b in resolved],
        failure=report.failure,
    )


def build_table_export(table: FusionTable, report=None) -> TableExport:
    cells = [
        CellEntry(
            a=str(a),
            b=str(b),
            products=[ProductEntry(c=str(c), mult=m) for c, m in vector.items()],
            provenance=provenance,
        )
        for a, b, vector, provenance in table.cells()
    ]
    return TableExport(
        k=table.k,
        variant=table.cfg.variant.value,
        degenerate_policy=table.cfg.degenerate_policy.value,
        simples=simple_entries(table.k),
        cells=cells,
        completion=completion_summary(report) if report is not None else None,
    )


def axiom_entries(log) -> List[AxiomEntry]:
    return [AxiomEntry(**entry) for entry in log.to_list()]


def build_verification_export(k: int, cfg: RuleVariantConfig, log, passed: Optional[bool] = None) -> VerificationExport:
    return VerificationExport(
        k=k,
        variant=cfg.variant.value,
        degenerate_policy=cfg.degenerate_policy.value,
        passed=log.passed if passed is None else passed,
        axioms=axiom_entries(log),
    )


def build_completion_export(report) -> CompletionExport:
    return CompletionExport(
        k=report.k,
        variant=report.cfg.variant.value,
        degenerate_policy=report.cfg.degenerate_policy.value,
        completion=completion_summary(report),
        axioms=axiom_entries(report.axiom_log),
    )


def build_comparison_export(comparison, degenerate_policy: str) -> ComparisonExport:
    return ComparisonExport(
        k=comparison.k,
        degenerate_policy=degenerate_policy,
        verdict=comparison.verdict,
        reports={name: completion_summary(r) for name, r in comparison.reports.items()},
        errors=dict(comparison.errors),
    )


def _product_qdims(k: int, factors: Sequence[Label], vector: FusionVector):
    lhs = reduce(lambda acc, x: acc * qdim(k, x), factors, QDim.one(k))
    return lhs, qdim_vector(k, vector.items())


def build_product_export(
    k: int, cfg: RuleVariantConfig, factors: Sequence[Label], vector: FusionVector, provenance: Sequence[str]
) -> ProductExport:
    lhs, rhs = _product_qdims(k, factors, vector)
    return ProductExport(
        k=k,
        variant=cfg.variant.value,
        degenerate_policy=cfg.degenerate_policy.value,
        factors=[str(x) for x in factors],
        products=[ProductEntry(c=str(c), mult=m) for c, m in vector.items()],
        provenance=list(provenance),
        qdim=QDimModel.from_qdim(rhs),
        qdim_check=lhs == rhs,
    )


def build_branch_export(k: int, x: Label) -> BranchExport:
    summands = [
        BranchSummand(lattice=s.lattice, plus=s.plus_tag(), mult=m, qdim=QDimModel.from_qdim(qdim_sub(k, s)))
        for s, m in branch(k, x)
    ]
    return BranchExport(k=k, label=str(x), qdim=QDimModel.from_qdim(qdim(k, x)), summands=summands)


def render_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def load_table_export(text: str) -> TableExport:
    return TableExport.model_validate_json(text)


def table_from_export(export: TableExport) -> FusionTable:
    """Rebuild a FusionTable from an export; cells missing from the export stay unknown."""
    if export.tool_version != TOOL_VERSION:
        logger.warning(f"Export written by tool version {export.tool_version}, reading with {TOOL_VERSION}")
    k = export.k
    cells = {}
    provenance = {}
    for entry in export.cells:
        a, b = parse_label_for(k, entry.a), parse_label_for(k, entry.b)
        cells[(a, b)] = FusionVector.from_counts({parse_label_for(k, p.c): p.mult for p in entry.products})
        provenance[(a, b)] = entry.provenance
    cfg = RuleVariantConfig.from_names(export.variant, export.degenerate_policy)
    return FusionTable.from_cells(k, cells, provenance, cfg)


# CSV

def _csv_text(columns: List[str], rows: Iterable[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def render_simples_csv(k: int) -> str:
    rows = [[s.label, s.family, s.qdim.a, s.qdim.b, s.qdim.radicand] for s in simple_entries(k)]
    return _csv_text(SIMPLES_CSV_COLUMNS, rows)


def render_cells_csv(table: FusionTable) -> str:
    rows = [
        [str(a), str(b), str(c), m, provenance]
        for a, b, vector, provenance in table.cells()
        for c, m in vector.items()
    ]
    return _csv_text(CELLS_CSV_COLUMNS, rows)


def render_product_csv(factors: Sequence[Label], vector: FusionVector, provenance: Sequence[str]) -> str:
    left = " x ".join(str(x) for x in factors[:-1])
    via = "; ".join(provenance)
    return _csv_text(CELLS_CSV_COLUMNS, [[left, str(factors[-1]), str(c), m, via] for c, m in vector.items()])


def render_qdim_csv(k: int, x: Label) -> str:
    a, b, radicand = qdim(k, x).as_triple()
    return _csv_text(SIMPLES_CSV_COLUMNS, [[str(x), x.family, a, b, radicand]])


def render_axiom_log_csv(log) -> str:
    rows = [[r.name, str(r.passed).lower(), r.checked, r.skipped, r.total_failures] for r in log]
    return _csv_text(AXIOMS_CSV_COLUMNS, rows)


def render_branch_csv(k: int, x: Label) -> str:
    export = build_branch_export(k, x)
    rows = [[export.label, s.lattice, s.plus, s.mult, s.qdim.a, s.qdim.b, s.qdim.radicand] for s in export.summands]
    return _csv_text(BRANCH_CSV_COLUMNS, rows)


def render_completion_csv(summaries: Dict[str, CompletionSummary]) -> str:
    rows = [
        [variant, s.status, s.solutions, "; ".join(s.resolved_cells), s.failure or ""]
        for variant, s in summaries.items()
    ]
    return _csv_text(COMPLETION_CSV_COLUMNS, rows)


# Text

def render_qdim_text(value: QDim) -> str:
    exact = f"{value} = ({value.a}, {value.b}) with radicand {value.radicand}"
    return exact if not value.b else f"{exact} ~ {value.approx():.6f}"


def render_simples_text(k: int) -> str:
    lines = [f"{len(enumerate_simples(k))} simples for k={k}"]
    for x in enumerate_simples(k):
        lines.append(f"  {str(x):<10} {x.family:<8} qdim {render_qdim_text(qdim(k, x))}")
    return "\n".join(lines) + "\n"


def render_product_text(k: int, factors: Sequence[Label], vector: FusionVector, provenance: Sequence[str] = ()) -> str:
    lhs, rhs = _product_qdims(k, factors, vector)
    check = "ok" if lhs == rhs else "MISMATCH"
    lines = [f"{' x '.join(str(x) for x in factors)} = {vector}"]
    lines.extend(f"  via {p}" for p in provenance)
    dims = " * ".join(str(qdim(k, x)) for x in factors)
    lines.append(f"  qdim: {dims} = {lhs}; sum = {rhs} [{check}]")
    return "\n".join(lines) + "\n"


def render_table_text(table: FusionTable, completion: Optional[CompletionSummary] = None) -> str:
    lines = [f"Fusion table k={table.k} [{table.cfg}], {table.size} simples"]
    for a, b, vector, provenance in table.cells():
        lines.append(f"  {a} x {b} = {vector}    [{provenance}]")
    if completion is not None:
        lines.append(
            f"completion: {completion.status}, {completion.solutions} solution(s), "
            f"{len(completion.resolved_cells)} resolved cell(s)"
        )
    return "\n".join(lines) + "\n"


def render_axiom_log_text(log) -> str:
    lines = [str(result) for result in log]
    lines.append("ALL AXIOMS PASS" if log.passed else f"FAILED: {', '.join(log.failed_names())}")
    return "\n".join(lines) + "\n"


def render_completion_text(report) -> str:
    lines = [report.summary()]
    for a, b in sorted(report.resolved, key=lambda cell: (cell[0].sort_key(), cell[1].sort_key())):
        lines.append(f"  resolved {a} x {b} = {report.resolved[(a, b)]}")
    for n, alternative in enumerate(report.alternatives, 1):
        cells = ", ".join(f"{a} x {b} = {v}" for (a, b), v in sorted(alternative.items(), key=lambda item: (item[0][0].sort_key(), item[0][1].sort_key())))
        lines.append(f"  solution {n}: {cells}")
    return "\n".join(lines) + "\n"


def render_comparison_text(comparison) -> str:
    lines = [render_completion_text(r).rstrip("\n") for r in comparison.reports.values()]
    lines.extend(f"{name}: {error}" for name, error in comparison.errors.items())
    lines.append(f"passing variant: {comparison.verdict}")
    return "\n".join(lines) + "\n"


def render_branch_text(k: int, x: Label) -> str:
    summands = " + ".join(str(s) for s, _ in branch(k, x))
    return f"{x} -> {summands}\n"
