import pytest

from fusion_rules import DegeneratePolicy, FusionVector, RuleVariant, RuleVariantConfig
from fusion_table import UncoveredCellError
from labels import Diag, NonDiag, Twist
from qdim import QDim, qdim
from table_completion import (
    CompletionError,
    CompletionStatus,
    SearchLimitExceeded,
    UnknownCell,
    build_partial_table,
    compare_variants,
    complete_cell,
    complete_table,
    degenerate_candidates,
    qdim_compositions,
    transport_candidates,
    transport_cell,
)

FIXED_SPLIT_PRINTED = RuleVariantConfig(RuleVariant.PRINTED, DegeneratePolicy.FIXED_SPLIT)


class TestPartialTable:
    def test_rank_one_is_fully_determined(self):
        pt = build_partial_table(1)
        assert pt.cell_count == 45
        assert len(pt.cells) == 45
        assert not pt.unknowns

    def test_rank_two_unknowns_are_uncovered(self):
        pt = build_partial_table(2)
        assert pt.cell_count == 22 * 23 // 2
        assert pt.unknowns
        assert all(u.uncovered for u in pt.unknowns.values())
        assert (NonDiag(1, 0), NonDiag(3, 0)) in pt.unknowns
        assert pt.provenance[(NonDiag(1, 0), NonDiag(3, 0))] == "nondiag*nondiag:uncovered"

    def test_lookup_and_constants(self):
        pt = build_partial_table(2)
        assert pt.lookup(Twist(0, 0), Diag(0, 0)) == FusionVector.single(Twist(0, 0))
        assert pt.structure_constant(Diag(1, 0), Diag(3, 1), Diag(0, 1)) == 1
        with pytest.raises(UncoveredCellError):
            pt.structure_constant(NonDiag(3, 0), NonDiag(1, 0), Diag(0, 0))

    def test_printed_degenerate_slots(self, printed_cfg):
        pt = build_partial_table(2, printed_cfg)
        unknown = pt.unknowns[(Twist(0, 0), Twist(0, 0))]
        assert not unknown.uncovered
        assert unknown.degenerate == ((2, 1),)
        assert unknown.budget(2) == QDim(2, 0, 4)

    def test_fixed_split_policy_determines_degenerate_cells(self):
        pt = build_partial_table(2, FIXED_SPLIT_PRINTED)
        assert all(u.uncovered for u in pt.unknowns.values())
        key = (Twist(0, 0), Twist(0, 0))
        assert pt.cells[key] == FusionVector.from_counts({Diag(0, 0): 1, Diag(2, 0): 2, Diag(2, 1): 1})
        assert pt.provenance[key] == "twist*twist:even:fixed-split"

    def test_with_unknown(self):
        pt = build_partial_table(1).with_unknown(Diag(1, 0), Diag(1, 1))
        key = (Diag(1, 0), Diag(1, 1))
        assert key not in pt.cells
        assert pt.unknowns[key].uncovered
        assert pt.provenance[key] == "reopened"
        # The original table is untouched
        assert key in build_partial_table(1).cells


class TestTransport:
    def test_transport_rank_two(self):
        pt = build_partial_table(2)
        vector, tag = transport_cell(2, NonDiag(1, 0), NonDiag(3, 0), pt.lookup)
        assert vector == FusionVector.from_counts({NonDiag(3, 1): 1, Diag(0, 0): 1, Diag(0, 1): 1})
        assert tag == "transport:N(3,0)xN(3,0)*D(1,0)"

    def test_transport_gives_up_without_sources(self):
        assert transport_cell(2, NonDiag(1, 0), NonDiag(3, 0), lambda x, y: None) is None

    @pytest.mark.parametrize("k", [2, 3])
    def test_corrected_transports_agree(self, k):
        pt = build_partial_table(k)
        for a, b in pt.unknowns:
            found = transport_candidates(k, a, b, pt.lookup)
            assert found, (a, b)
            assert len({vector for vector, _ in found}) == 1, (a, b)

    def test_printed_transports_disagree(self, printed_cfg):
        pt = build_partial_table(2, printed_cfg)
        vectors = {vector for vector, _ in transport_candidates(2, NonDiag(1, 0), NonDiag(3, 0), pt.lookup)}
        assert FusionVector.from_counts({Diag(0, 0): 1, Diag(0, 1): 1, Diag(1, 0): 1, Diag(1, 1): 1}) in vectors
        assert FusionVector.from_counts({Diag(0, 0): 1, Diag(0, 1): 1, Diag(3, 0): 1, Diag(3, 1): 1}) in vectors
        assert transport_cell(2, NonDiag(1, 0), NonDiag(3, 0), pt.lookup) is None


class TestCandidates:
    def test_degenerate_candidates_default_first(self):
        cell = UnknownCell(Twist(0, 0), Twist(0, 0), fixed=FusionVector.single(Diag(0, 0)), degenerate=((2, 1),))
        candidates = degenerate_candidates(cell)
        assert len(candidates) == 3
        assert candidates[0] == FusionVector.from_counts({Diag(0, 0): 1, Diag(2, 0): 1, Diag(2, 1): 1})
        assert FusionVector.from_counts({Diag(0, 0): 1, Diag(2, 1): 2}) in candidates

    def test_qdim_compositions_rank_one(self):
        # qdim 2 at k = 1: one NonDiag or two Diag (with repetition); twists carry sqrt(2)
        vectors = list(qdim_compositions(1, QDim(2, 0, 2)))
        assert FusionVector.single(NonDiag(1, 0)) in vectors
        assert not any(isinstance(x, Twist) for v in vectors for x in v.labels())
        assert FusionVector.from_counts({Diag(0, 1): 2}) in vectors
        assert len(vectors) == 1 + 10
        assert len(set(vectors)) == len(vectors)
        assert all(sum((qdim(1, c) * m for c, m in v.items()), QDim.zero(1)) == QDim(2, 0, 2) for v in vectors)

    def test_qdim_compositions_negative_budget(self):
        assert list(qdim_compositions(1, QDim(-1, 0, 2))) == []


class TestCompleteTable:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_corrected_completion_is_unique(self, completion, k):
        report = completion(k)
        assert report.status == CompletionStatus.UNIQUE
        assert report.solutions == 1
        assert report.table.is_complete()
        assert report.axiom_log.passed
        pt = build_partial_table(k)
        assert set(report.resolved) == set(pt.unknowns)

    def test_rank_one_needs_no_resolution(self, completion):
        report = completion(1)
        assert report.resolved == {}
        assert "unique" in report.summary()

    def test_completion_is_deterministic(self):
        first = complete_table(build_partial_table(2))
        second = complete_table(build_partial_table(2))
        assert (first.table.N == second.table.N).all()
        assert first.table.provenance == second.table.provenance

    def test_printed_variant_is_infeasible(self, printed_cfg):
        report = complete_table(build_partial_table(2, printed_cfg))
        assert report.status == CompletionStatus.INFEASIBLE
        assert report.table is None
        assert report.failure.startswith("associativity")

    def test_reopened_cell_is_recovered_by_transport(self, completion):
        pt = build_partial_table(2).with_unknown(NonDiag(2, 0), NonDiag(3, 1))
        report = complete_table(pt)
        assert report.is_unique
        expected = completion(2).table.product(NonDiag(2, 0), NonDiag(3, 1))
        assert report.table.product(NonDiag(2, 0), NonDiag(3, 1)) == expected
        assert report.table.cell_provenance(NonDiag(2, 0), NonDiag(3, 1)).startswith("transport:")

    def test_reopened_cell_is_recovered_by_search(self):
        pt = build_partial_table(1).with_unknown(Diag(1, 0), Diag(1, 1))
        report = complete_table(pt, transport=False)
        assert report.is_unique, report.summary()
        assert report.table.product(Diag(1, 0), Diag(1, 1)) == FusionVector.single(Diag(0, 1))
        assert report.table.cell_provenance(Diag(1, 0), Diag(1, 1)) == "search"

    def test_search_limit(self):
        pt = build_partial_table(1).with_unknown(NonDiag(1, 0), NonDiag(1, 0))
        with pytest.raises(SearchLimitExceeded):
            complete_table(pt, max_assignments=1, transport=False)

    def test_search_limit_is_a_completion_error(self):
        assert issubclass(SearchLimitExceeded, CompletionError)
        assert issubclass(CompletionError, RuntimeError)


class TestCompleteCell:
    def test_determined_cell(self):
        vector, provenance = complete_cell(1, NonDiag(1, 0), NonDiag(1, 0))
        assert vector.total() == 4
        assert provenance == "nondiag*nondiag:equal"

    def test_uncovered_cell(self):
        vector, provenance = complete_cell(2, NonDiag(3, 0), NonDiag(1, 0))
        assert vector == FusionVector.from_counts({NonDiag(3, 1): 1, Diag(0, 0): 1, Diag(0, 1): 1})
        assert provenance.startswith("transport:")

    def test_fixed_split_cell(self):
        vector, provenance = complete_cell(2, Twist(0, 0), Twist(0, 0), FIXED_SPLIT_PRINTED)
        assert vector[Diag(2, 0)] == 2
        assert provenance.endswith(":fixed-split")

    def test_printed_degenerate_cell_fails(self, printed_cfg):
        with pytest.raises(CompletionError) as info:
            complete_cell(2, Twist(0, 0), Twist(0, 0), printed_cfg)
        assert info.value.report.status == CompletionStatus.INFEASIBLE

    def test_printed_uncovered_cell_is_not_guessed(self, printed_cfg):
        with pytest.raises(CompletionError) as info:
            complete_cell(2, NonDiag(2, 1), NonDiag(3, 0), printed_cfg)
        assert info.value.report.status == CompletionStatus.INFEASIBLE

    @pytest.mark.parametrize("k", [3, 4])
    def test_uncovered_cells_match_closed_form(self, k):
        # N(i,j) x N(p,q) = D(i+p,0) + D(i+p,1) + N(i+q, j+p)
        pt = build_partial_table(k)
        n = 2 * k
        for a, b in pt.unknowns:
            vector, _ = complete_cell(k, a, b)
            c = (a.i + b.i) % n
            second = (a.i + b.j) % n, (a.j + b.i) % n
            expected = FusionVector.from_counts(
                {Diag(c, 0): 1, Diag(c, 1): 1, NonDiag(max(second), min(second)): 1}
            )
            assert vector == expected, (a, b)


class TestCompareVariants:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_only_corrected_passes(self, k):
        comparison = compare_variants(k)
        assert comparison.verdict == "corrected"
        assert comparison.passing == ["corrected"]
        assert comparison.errors == {}
        assert comparison.reports["printed"].status == CompletionStatus.INFEASIBLE
        assert all(r.variant_verdict == "corrected" for r in comparison.reports.values())
