import itertools

import pytest

from axioms import DEFAULT_CHECKS, AxiomCheck, AxiomManager, AxiomResult, create_axiom_manager, verify_axioms
from axioms.associativity_check import associativity_rows
from constants import AXIOM_NAMES
from labels import Diag, NonDiag, Twist
from table_completion import build_partial_table

EXECUTION_ORDER = [
    "integrality",
    "unit",
    "commutativity",
    "associativity",
    "unit-delta",
    "dual-involution",
    "dual-symmetry",
    "qdim-lower-bound",
    "qdim-homomorphism",
    "simple-currents",
]


def test_registry_matches_constants():
    assert tuple(DEFAULT_CHECKS) == AXIOM_NAMES


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_completed_tables_pass(completed_table, k):
    log = verify_axioms(completed_table(k))
    assert log.passed, log.summary()
    assert [r.name for r in log] == EXECUTION_ORDER
    assert all(r.skipped == 0 for r in log if r.name != "simple-currents")
    assert log.first_failure() is None


@pytest.mark.parametrize("k", [5, 6])
def test_qdim_homomorphism_larger_rank(completion, k):
    report = completion(k, enabled=["qdim-homomorphism"])
    assert report.is_unique
    result = report.axiom_log.get("qdim-homomorphism")
    assert result.passed
    assert result.checked == report.table.size * (report.table.size + 1) // 2


def test_printed_rank_one_is_not_associative(printed_cfg):
    table = build_partial_table(1, printed_cfg).known_table()
    log = verify_axioms(table)
    assert not log.passed
    assert "associativity" in log.failed_names()
    assert log.get("qdim-homomorphism").passed
    assert log.get("commutativity").passed
    assert log.get("associativity").first_counterexample.startswith("(")


def test_parallel_associativity_matches_serial(printed_cfg):
    table = build_partial_table(1, printed_cfg).known_table()
    serial = verify_axioms(table, enabled=["associativity"])
    parallel = verify_axioms(table, enabled=["associativity"], workers=2)
    assert serial.get("associativity") == parallel.get("associativity")


def test_counterexamples_are_capped(printed_cfg):
    table = build_partial_table(2, printed_cfg).known_table()
    result = verify_axioms(table, enabled=["associativity"], max_counterexamples=3).get("associativity")
    assert not result.passed
    assert len(result.counterexamples) == 3
    assert result.total_failures > 3


def test_partial_table_skips_unknown_cells():
    table = build_partial_table(2).known_table()
    log = verify_axioms(table)
    assert log.passed, log.summary()
    assert log.get("associativity").skipped > 0
    assert log.get("unit-delta").skipped > 0


def test_associativity_rows_reports_sample(completed_table):
    table = completed_table(1).perturbed(Twist(0, 0), Twist(0, 0), NonDiag(1, 0))
    checked, skipped, failed, sample = associativity_rows(table.N, table.known, range(table.size), 2)
    assert failed > 0
    assert skipped == 0
    assert len(sample) == 2
    a, b, c, d, left, right = sample[0]
    assert left != right


class TestMutationSensitivity:
    def test_every_symmetric_bump_breaks_qdim(self, completed_table):
        table = completed_table(2)
        size = table.size
        for a in range(size):
            for b in range(a, size):
                c = (a + b) % size
                bumped = table.perturbed(table.labels[a], table.labels[b], table.labels[c], symmetric=True)
                log = verify_axioms(bumped, enabled=["qdim-homomorphism"])
                assert not log.passed, (a, b, c)

    def test_every_single_bump_is_caught(self, completed_table):
        table = completed_table(2)
        missed = []
        for a, b, c in itertools.product(range(table.size), repeat=3):
            bumped = table.perturbed(table.labels[a], table.labels[b], table.labels[c])
            if verify_axioms(bumped, enabled=["commutativity", "qdim-homomorphism"]).passed:
                missed.append((a, b, c))
        assert missed == []

    def test_sampled_bumps_fail_full_suite(self, completed_table):
        table = completed_table(2)
        triples = list(itertools.product(range(table.size), repeat=3))[::487]
        assert len(triples) > 20
        for a, b, c in triples:
            bumped = table.perturbed(table.labels[a], table.labels[b], table.labels[c])
            assert not verify_axioms(bumped).passed, (a, b, c)

    def test_asymmetric_bump_names_commutativity(self, completed_table):
        bumped = completed_table(1).perturbed(NonDiag(1, 0), Twist(0, 0), Diag(0, 0))
        log = verify_axioms(bumped)
        result = log.get("commutativity")
        assert not result.passed
        assert result.counterexamples == ["N(1,0) x T(0,0) differs from T(0,0) x N(1,0)"]

    def test_negative_constant_fails_integrality(self, completed_table):
        bumped = completed_table(1).perturbed(Diag(1, 0), Diag(1, 0), Diag(1, 1), delta=-1, symmetric=True)
        result = verify_axioms(bumped, enabled=["integrality"]).get("integrality")
        assert not result.passed
        assert result.counterexamples == ["N^D(1,1)_{D(1,0),D(1,0)} = -1"]


class TestAxiomManager:
    def test_dependencies_are_pulled_in(self):
        manager = create_axiom_manager(enabled=[])
        assert manager.resolve_dependencies(["simple-currents"]) == ["qdim-lower-bound", "qdim-homomorphism", "simple-currents"]
        assert manager.resolve_dependencies(["dual-symmetry"]) == ["integrality", "unit", "unit-delta", "dual-involution", "dual-symmetry"]

    def test_enable_disable(self):
        manager = create_axiom_manager(enabled=["unit"])
        assert manager.enabled_checks == ["unit"]
        manager.enable_check("associativity")
        manager.disable_check("unit")
        assert manager.enabled_checks == ["associativity"]
        with pytest.raises(ValueError):
            manager.enable_check("no-such-axiom")

    def test_duplicate_and_unknown_checks(self):
        manager = create_axiom_manager()
        with pytest.raises(ValueError):
            manager.load_check("unit", DEFAULT_CHECKS["unit"])
        with pytest.raises(ValueError):
            manager.resolve_dependencies(["no-such-axiom"])

    def test_circular_dependency(self):
        class Loop(AxiomCheck):
            def get_dependencies(self):
                return ["loop-b"]

            def check(self, context):
                return AxiomResult(self.name, passed=True)

        class LoopB(Loop):
            def get_dependencies(self):
                return ["loop"]

        manager = AxiomManager()
        manager.load_check("loop", Loop)
        manager.load_check("loop-b", LoopB)
        with pytest.raises(ValueError, match="Circular"):
            manager.resolve_dependencies(["loop"])

    def test_check_info(self):
        info = create_axiom_manager().list_checks()
        assert set(info) == set(AXIOM_NAMES)
        assert info["associativity"]["dependencies"] == ["commutativity"]
        assert info["unit"]["enabled"]

    def test_result_to_dict(self, completed_table):
        entry = verify_axioms(completed_table(1), enabled=["unit"]).to_list()[-1]
        assert entry == {"name": "unit", "passed": True, "checked": 9, "skipped": 0, "failures": 0, "counterexamples": []}
