import csv
import io
import json

import pytest
from pydantic import ValidationError

from constants import TOOL_VERSION
from exporters import (
    AXIOMS_CSV_COLUMNS,
    BRANCH_CSV_COLUMNS,
    CELLS_CSV_COLUMNS,
    SIMPLES_CSV_COLUMNS,
    TableExport,
    build_branch_export,
    build_completion_export,
    build_product_export,
    build_simples_export,
    build_table_export,
    build_verification_export,
    load_table_export,
    render_axiom_log_csv,
    render_axiom_log_text,
    render_branch_csv,
    render_cells_csv,
    render_json,
    render_product_text,
    render_qdim_text,
    render_simples_csv,
    table_from_export,
)
from fusion_rules import FusionVector
from labels import Diag, NonDiag, Twist
from qdim import QDim


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_simples_export_rank_two():
    data = json.loads(render_json(build_simples_export(2)))
    assert data["k"] == 2
    assert data["tool_version"] == TOOL_VERSION
    assert len(data["simples"]) == 22
    twist = next(s for s in data["simples"] if s["label"] == "T(0,0)")
    assert twist["family"] == "twist"
    assert twist["qdim"] == {"a": "2", "b": "0", "radicand": 4}
    assert data["simples"][0]["label"] == "N(1,0)"


def test_table_export_round_trip(completion):
    report = completion(2)
    text = render_json(build_table_export(report.table, report))
    export = load_table_export(text)
    assert export.completion.status == "unique"
    assert "N(1,0) x N(3,0)" in export.completion.resolved_cells

    table = table_from_export(export)
    assert table.is_complete()
    assert (table.N == report.table.N).all()
    assert table.cell_provenance(NonDiag(1, 0), NonDiag(3, 0)).startswith("transport:")


def test_table_export_is_byte_stable(completion):
    report = completion(1)
    first = render_json(build_table_export(report.table, report))
    second = render_json(build_table_export(report.table, report))
    assert first == second
    assert first.endswith("\n")


def test_partial_table_export_keeps_cells_unknown():
    from table_completion import build_partial_table

    pt = build_partial_table(2)
    export = build_table_export(pt.known_table())
    assert export.completion is None
    table = table_from_export(load_table_export(render_json(export)))
    assert set(table.unknown_cells()) == set(pt.unknowns)


def test_table_export_rejects_negative_multiplicity():
    text = json.dumps(
        {
            "k": 1,
            "variant": "corrected",
            "degenerate_policy": "split",
            "simples": [],
            "cells": [{"a": "D(0,0)", "b": "D(0,0)", "products": [{"c": "D(0,0)", "mult": -1}]}],
        }
    )
    with pytest.raises(ValidationError):
        TableExport.model_validate_json(text)


def test_verification_export(completion, corrected_cfg):
    report = completion(1)
    export = build_verification_export(1, corrected_cfg, report.axiom_log)
    assert export.passed
    assert [a.name for a in export.axioms][:3] == ["integrality", "unit", "commutativity"]
    assert all(a.failures == 0 for a in export.axioms)


def test_completion_export(completion):
    export = build_completion_export(completion(2))
    data = json.loads(render_json(export))
    assert data["completion"]["status"] == "unique"
    assert data["completion"]["solutions"] == 1
    assert "cells" not in data


def test_product_export_checks_qdim(corrected_cfg):
    vector = FusionVector.from_counts({Diag(0, 0): 1, Diag(1, 1): 1})
    export = build_product_export(1, corrected_cfg, [Twist(0, 0), Twist(0, 0)], vector, ["twist*twist:odd"])
    assert export.qdim_check
    assert export.qdim.model_dump() == {"a": "2", "b": "0", "radicand": 2}
    assert export.factors == ["T(0,0)", "T(0,0)"]

    wrong = build_product_export(1, corrected_cfg, [Twist(0, 0), Twist(0, 0)], FusionVector.single(Diag(0, 0)), [])
    assert not wrong.qdim_check


def test_branch_export():
    export = build_branch_export(1, Twist(0, 0))
    assert [(s.lattice, s.plus, s.mult) for s in export.summands] == [(0, "T2+", 1), (2, "T2-", 1)]
    assert export.qdim.model_dump() == {"a": "0", "b": "1", "radicand": 2}


def test_csv_headers(completion):
    report = completion(1)
    assert _rows(render_simples_csv(1))[0] == SIMPLES_CSV_COLUMNS
    assert len(_rows(render_simples_csv(1))) == 1 + 9
    assert _rows(render_cells_csv(report.table))[0] == CELLS_CSV_COLUMNS
    assert _rows(render_axiom_log_csv(report.axiom_log))[0] == AXIOMS_CSV_COLUMNS
    assert _rows(render_branch_csv(1, Twist(0, 0)))[0] == BRANCH_CSV_COLUMNS


def test_cells_csv_rows(completion):
    rows = _rows(render_cells_csv(completion(1).table))[1:]
    square = [row for row in rows if row[0] == "N(1,0)" and row[1] == "N(1,0)"]
    assert [row[2] for row in square] == ["D(0,0)", "D(0,1)", "D(1,0)", "D(1,1)"]
    assert all(row[3] == "1" for row in square)


def test_axiom_log_csv_uses_lowercase_booleans(completion):
    rows = _rows(render_axiom_log_csv(completion(1).axiom_log))[1:]
    assert {row[1] for row in rows} == {"true"}


def test_product_text():
    vector = FusionVector.from_counts({Diag(0, 0): 1, Diag(0, 1): 1, Diag(1, 0): 1, Diag(1, 1): 1})
    text = render_product_text(1, [NonDiag(1, 0), NonDiag(1, 0)], vector, ["nondiag*nondiag:equal"])
    lines = text.splitlines()
    assert lines[0] == "N(1,0) x N(1,0) = D(0,0) + D(0,1) + D(1,0) + D(1,1)"
    assert lines[1] == "  via nondiag*nondiag:equal"
    assert lines[2].endswith("[ok]")


def test_qdim_text():
    assert render_qdim_text(QDim(2, 0, 2)) == "2 = (2, 0) with radicand 2"
    assert render_qdim_text(QDim(0, 1, 2)).endswith("~ 1.414214")


def test_axiom_log_text(completion, printed_cfg):
    assert render_axiom_log_text(completion(1).axiom_log).rstrip().endswith("ALL AXIOMS PASS")
    printed = completion(1, printed_cfg)
    assert "FAILED: " in render_axiom_log_text(printed.axiom_log)
    assert "associativity" in render_axiom_log_text(printed.axiom_log).splitlines()[-1]
