import numpy as np
import pytest

from fusion_rules import FusionVector, dual_label
from fusion_table import DualityError, FusionTable, SimpleCurrentError, UncoveredCellError
from labels import Diag, InvalidLabelError, NonDiag, Twist, enumerate_simples
from qdim import QDim, global_dimension
from table_completion import build_partial_table


class TestCompletedTable:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_global_dimension(self, completed_table, k):
        table = completed_table(k)
        assert table.global_dimension() == global_dimension(k) == QDim(16 * k * k, 0, 2 * k)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_duals_match_closed_form(self, completed_table, k):
        table = completed_table(k)
        for x in table.labels:
            assert table.dual(x) == dual_label(k, x)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_simple_currents(self, completion, k):
        report = completion(k, enabled=["simple-currents"])
        assert report.is_unique, report.summary()
        group = report.table.simple_currents()
        assert group.order == 4 * k
        assert group.identity == Diag(0, 0)
        assert group.multiply(Diag(1, 1), Diag(2 * k - 1, 1)) == Diag(0, 0)
        assert group.describe(k) == f"Z_{2 * k} x Z_2 (order {4 * k}, identity D(0,0))"

    def test_structure_constants_rank_one(self, completed_table):
        table = completed_table(1)
        assert table.structure_constant(NonDiag(1, 0), NonDiag(1, 0), Diag(1, 1)) == 1
        assert table.structure_constant(Twist(0, 0), Twist(0, 0), Diag(1, 1)) == 1
        assert table.structure_constant(Twist(0, 0), Twist(0, 0), Diag(1, 0)) == 0
        assert table.structure_constant(Diag(1, 0), Twist(0, 0), Twist(0, 1)) == 1

    def test_product_and_provenance(self, completed_table):
        table = completed_table(2)
        product = table.product(NonDiag(3, 0), NonDiag(1, 0))
        assert product == FusionVector.from_counts({NonDiag(3, 1): 1, Diag(0, 0): 1, Diag(0, 1): 1})
        assert table.cell_provenance(NonDiag(1, 0), NonDiag(3, 0)).startswith("transport:")
        assert table.cell_provenance(Diag(0, 0), Diag(1, 0)) == "diag*diag"

    def test_cells_cover_unordered_pairs(self, completed_table):
        table = completed_table(1)
        cells = list(table.cells())
        assert len(cells) == 45
        assert cells[0][:2] == (NonDiag(1, 0), NonDiag(1, 0))

    def test_multiply_and_fusion_power(self, completed_table):
        table = completed_table(1)
        t = Twist(0, 0)
        square = table.fusion_power(t, 2)
        assert square == FusionVector.from_counts({Diag(0, 0): 1, Diag(1, 1): 1})
        assert table.multiply(square, FusionVector.single(t)) == table.fusion_power(t, 3)
        assert table.fusion_power(t, 0) == FusionVector.single(Diag(0, 0))
        with pytest.raises(ValueError):
            table.fusion_power(t, -1)

    @pytest.mark.parametrize("k", [1, 2])
    def test_qdim_of_product(self, completed_table, k):
        table = completed_table(k)
        for x in table.labels:
            for y in table.labels:
                assert table.qdim_of_product(x, y) == table.qdim_of_product(y, x)

    def test_invalid_label(self, completed_table):
        with pytest.raises(InvalidLabelError):
            completed_table(1).structure_constant(Twist(2, 0), Diag(0, 0), Diag(0, 0))


class TestPrintedTable:
    def test_printed_diag_twist_constant(self, printed_cfg):
        # k = 1 has no unknown cells under either variant
        table = build_partial_table(1, printed_cfg).known_table()
        assert table.is_complete()
        assert table.structure_constant(Diag(1, 0), Twist(0, 0), Twist(0, 0)) == 1

    def test_printed_currents_still_act_simply(self, printed_cfg):
        table = build_partial_table(1, printed_cfg).known_table()
        group = table.simple_currents()
        assert group.order == 4


class TestPartialTable:
    def test_uncovered_cells_raise(self):
        table = build_partial_table(2).known_table()
        assert not table.is_complete()
        assert (NonDiag(1, 0), NonDiag(3, 0)) in table.unknown_cells()
        with pytest.raises(UncoveredCellError):
            table.structure_constant(NonDiag(1, 0), NonDiag(3, 0), Diag(0, 0))
        with pytest.raises(LookupError):
            table.product(NonDiag(3, 0), NonDiag(1, 0))

    def test_dual_needs_full_row(self):
        table = build_partial_table(2).known_table()
        with pytest.raises(DualityError):
            table.dual(Diag(1, 0))

    def test_simple_currents_need_known_rows(self):
        table = build_partial_table(2).known_table()
        assert table.simple_currents().order == 8


class TestMutation:
    def test_perturbed_copy(self, completed_table):
        table = completed_table(1)
        bumped = table.perturbed(Twist(0, 0), Twist(0, 0), Diag(0, 0))
        assert bumped.structure_constant(Twist(0, 0), Twist(0, 0), Diag(0, 0)) == 2
        assert table.structure_constant(Twist(0, 0), Twist(0, 0), Diag(0, 0)) == 1

    def test_perturbed_asymmetric(self, completed_table):
        table = completed_table(1)
        bumped = table.perturbed(NonDiag(1, 0), Twist(0, 0), Diag(0, 0))
        assert bumped.structure_constant(NonDiag(1, 0), Twist(0, 0), Diag(0, 0)) == 1
        assert bumped.structure_constant(Twist(0, 0), NonDiag(1, 0), Diag(0, 0)) == 0
        both = table.perturbed(NonDiag(1, 0), Twist(0, 0), Diag(0, 0), symmetric=True)
        assert both.structure_constant(Twist(0, 0), NonDiag(1, 0), Diag(0, 0)) == 1

    def test_duality_error_on_double_unit(self, completed_table):
        table = completed_table(1).perturbed(NonDiag(1, 0), NonDiag(1, 0), Diag(0, 0))
        with pytest.raises(DualityError):
            table.dual_map()

    def test_simple_current_error(self, completed_table):
        table = completed_table(1).perturbed(Diag(1, 0), Twist(0, 0), Twist(1, 0), symmetric=True)
        with pytest.raises(SimpleCurrentError):
            table.simple_currents()


def test_constants_shape_checked():
    with pytest.raises(ValueError):
        FusionTable(1, np.zeros((3, 3, 3), dtype=np.int64))


def test_labels_follow_enumeration():
    table = build_partial_table(1).known_table()
    assert table.labels == enumerate_simples(1)
    assert table.unit_index == table.index[Diag(0, 0)]
