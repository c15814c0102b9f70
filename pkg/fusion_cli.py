#!/usr/bin/env python3
"""
Command-line interface for the orbifold fusion toolkit.

    enumerate   list the simples with their quantum dimensions
    fuse        fuse two or more labels
    table       the completed fusion table
    verify      run the axiom suite on the completed table
    complete    completion report (or a comparison of both rule variants)
    branch      decomposition of a simple over the subalgebra
    qdim        exact quantum dimension of a simple

Exit codes: 0 success, 2 usage or parse error, 3 mathematical inconsistency.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from axioms import verify_axioms
from constants import (
    DEGENERATE_POLICIES,
    EXIT_INCONSISTENT,
    EXIT_OK,
    EXIT_USAGE,
    OUTPUT_FORMATS,
    TOOL_NAME,
    TOOL_VERSION,
    VARIANTS,
)
from database_manager import TableStore
from exporters import (
    QDimModel,
    build_branch_export,
    build_comparison_export,
    build_completion_export,
    build_product_export,
    build_simples_export,
    build_table_export,
    build_verification_export,
    completion_summary,
    render_axiom_log_csv,
    render_axiom_log_text,
    render_branch_csv,
    render_branch_text,
    render_cells_csv,
    render_comparison_text,
    render_completion_csv,
    render_completion_text,
    render_json,
    render_product_csv,
    render_product_text,
    render_qdim_csv,
    render_qdim_text,
    render_simples_csv,
    render_simples_text,
    render_table_text,
    table_from_export,
)
from fusion_rules import FusionVector, RuleVariantConfig
from labels import InvalidLabelError, Label, LabelParseError, parse_label_for
from qdim import qdim
from settings_manager import SettingsManager
from table_completion import (
    CompletionError,
    CompletionReport,
    SearchLimitExceeded,
    build_partial_table,
    compare_variants,
    complete_cell,
    complete_table,
)

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad command-line input detected after argument parsing."""


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description='Fusion ring of the permutation orbifold of a rank-one lattice VOA')
    parser.add_argument('--version', action='version', version=f'{TOOL_NAME} {TOOL_VERSION}')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--k', type=positive_int, required=True, help='Rank parameter k >= 1')
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=None, help='Output format (default from config)')
    common.add_argument('--out', type=Path, default=None, help='Write output to this file instead of stdout')

    rules = argparse.ArgumentParser(add_help=False)
    rules.add_argument('--variant', choices=VARIANTS, default=None, help='Rule variant (default from env/config)')
    rules.add_argument('--policy', choices=DEGENERATE_POLICIES, default=None, help='Degenerate-pair policy')
    rules.add_argument('--max-assignments', type=positive_int, default=None, help='Completion search bound')

    subparsers = parser.add_subparsers(dest='command', required=True, help='Available commands')

    subparsers.add_parser('enumerate', parents=[common], help='List simples with quantum dimensions')

    fuse_parser = subparsers.add_parser('fuse', parents=[common, rules], help='Fuse two or more labels')
    fuse_parser.add_argument('labels', nargs='+', help='Labels such as "N(1,0)", "D(0,1)", "T(2,0)"')

    subparsers.add_parser('table', parents=[common, rules], help='Completed fusion table')
    subparsers.add_parser('verify', parents=[common, rules], help='Run the axiom suite')

    complete_parser = subparsers.add_parser('complete', parents=[common, rules], help='Completion report')
    complete_parser.add_argument('--compare', action='store_true', help='Complete under both variants and name the passing one')

    branch_parser = subparsers.add_parser('branch', parents=[common], help='Branching to the subalgebra')
    branch_parser.add_argument('label')

    qdim_parser = subparsers.add_parser('qdim', parents=[common], help='Exact quantum dimension')
    qdim_parser.add_argument('label')

    return parser


class FusionCommands:
    """Runs one parsed command; all output goes through emit()."""

    def __init__(self, args: argparse.Namespace, settings: SettingsManager):
        self.args = args
        self.settings = settings
        self.k: int = args.k
        self.format: str = args.format or settings.DEFAULT_FORMAT
        self._store: Optional[TableStore] = None

    # Settings with flag > environment > config precedence

    @property
    def cfg(self) -> RuleVariantConfig:
        return RuleVariantConfig.from_names(
            getattr(self.args, 'variant', None) or self.settings.DEFAULT_VARIANT,
            getattr(self.args, 'policy', None) or self.settings.DEGENERATE_POLICY,
        )

    @property
    def completion_options(self) -> dict:
        return {
            'max_assignments': getattr(self.args, 'max_assignments', None) or self.settings.MAX_ASSIGNMENTS,
            'enabled': list(self.settings.ENABLED_AXIOMS),
            'max_counterexamples': self.settings.MAX_COUNTEREXAMPLES,
            'workers': self.settings.ASSOCIATIVITY_WORKERS,
        }

    @property
    def store(self) -> Optional[TableStore]:
        url = self.settings.get('TABLE_CACHE_URL')
        if url and self._store is None:
            self._store = TableStore(url)
        return self._store

    def emit(self, text: str) -> None:
        if self.args.out is not None:
            self.args.out.parent.mkdir(parents=True, exist_ok=True)
            self.args.out.write_text(text, encoding='utf-8')
        else:
            sys.stdout.write(text)

    def label(self, text: str) -> Label:
        return parse_label_for(self.k, text)

    def write_report(self, report: CompletionReport) -> Path:
        """Persist a failed completion report and return its path."""
        report_dir = Path(self.settings.REPORT_DIR)
        report_dir.mkdir(parents=True, exist_ok=True)
        path = report_dir / f"completion-k{self.k}-{report.cfg.variant.value}-{report.cfg.degenerate_policy.value}.json"
        path.write_text(render_json(build_completion_export(report)), encoding='utf-8')
        return path

    def inconsistent(self, report: CompletionReport) -> int:
        path = self.write_report(report)
        sys.stderr.write(f"{report.summary()}\nreport written to {path}\n")
        return EXIT_INCONSISTENT

    def complete(self) -> CompletionReport:
        return complete_table(build_partial_table(self.k, self.cfg), **self.completion_options)

    # Commands

    def cmd_enumerate(self) -> int:
        if self.format == 'json':
            self.emit(render_json(build_simples_export(self.k)))
        elif self.format == 'csv':
            self.emit(render_simples_csv(self.k))
        else:
            self.emit(render_simples_text(self.k))
        return EXIT_OK

    def fuse_labels(self, factors: Sequence[Label]) -> Tuple[FusionVector, List[str]]:
        """Left-to-right product, each cell completed on demand."""
        cfg = self.cfg
        vector = FusionVector.single(factors[0])
        provenance: List[str] = []
        for y in factors[1:]:
            total = FusionVector()
            for x, m in vector.items():
                cell, via = complete_cell(self.k, x, y, cfg, **self.completion_options)
                total = total + cell.scaled(m)
                provenance.append(f"{x} x {y}: {via}")
            vector = total
        return vector, provenance

    def cmd_fuse(self) -> int:
        if len(self.args.labels) < 2:
            raise UsageError("fuse needs at least two labels")
        factors = [self.label(text) for text in self.args.labels]
        try:
            vector, provenance = self.fuse_labels(factors)
        except CompletionError as e:
            if e.report is not None:
                return self.inconsistent(e.report)
            sys.stderr.write(f"{e}\n")
            return EXIT_INCONSISTENT

        if self.format == 'json':
            self.emit(render_json(build_product_export(self.k, self.cfg, factors, vector, provenance)))
        elif self.format == 'csv':
            self.emit(render_product_csv(factors, vector, provenance))
        else:
            self.emit(render_product_text(self.k, factors, vector, provenance))
        return EXIT_OK

    def completed_export(self):
        """TableExport of the completed table, from the cache when available; None on failure."""
        cfg = self.cfg
        store = self.store
        export = store.load_export(self.k, cfg.variant.value, cfg.degenerate_policy.value) if store else None
        if export is not None:
            logger.info(f"Using cached table for k={self.k} [{cfg}]")
            return export, None
        report = self.complete()
        if not report.is_unique:
            return None, report
        export = build_table_export(report.table, report)
        if store:
            store.save_export(export)
        return export, report

    def cmd_table(self) -> int:
        export, report = self.completed_export()
        if export is None:
            return self.inconsistent(report)
        table = table_from_export(export)
        if self.format == 'json':
            self.emit(render_json(export))
        elif self.format == 'csv':
            self.emit(render_cells_csv(table))
        else:
            self.emit(render_table_text(table, export.completion))
        return EXIT_OK

    def cmd_verify(self) -> int:
        export, report = self.completed_export()
        if export is None:
            # Suite as evaluated before the completion gave up
            log, passed = report.axiom_log, False
        else:
            options = self.completion_options
            log = verify_axioms(table_from_export(export), options['enabled'], options['max_counterexamples'], options['workers'])
            passed = log.passed
            if self.store:
                self.store.record_verification(self.k, self.cfg.variant.value, log)

        if self.format == 'json':
            self.emit(render_json(build_verification_export(self.k, self.cfg, log, passed)))
        elif self.format == 'csv':
            self.emit(render_axiom_log_csv(log))
        else:
            text = render_axiom_log_text(log)
            if export is None:
                text += f"completion {report.status.value}: {report.failure or 'no unique completion'}\n"
            self.emit(text)
        if export is None:
            return self.inconsistent(report)
        return EXIT_OK if passed else EXIT_INCONSISTENT

    def cmd_complete(self) -> int:
        if self.args.compare:
            cfg = self.cfg
            options = self.completion_options
            comparison = compare_variants(self.k, cfg.degenerate_policy, **options)
            if self.format == 'json':
                self.emit(render_json(build_comparison_export(comparison, cfg.degenerate_policy.value)))
            elif self.format == 'csv':
                self.emit(render_completion_csv({name: completion_summary(r) for name, r in comparison.reports.items()}))
            else:
                self.emit(render_comparison_text(comparison))
            return EXIT_OK if comparison.verdict != "none" else EXIT_INCONSISTENT

        report = self.complete()
        if self.format == 'json':
            self.emit(render_json(build_completion_export(report)))
        elif self.format == 'csv':
            self.emit(render_completion_csv({report.cfg.variant.value: completion_summary(report)}))
        else:
            self.emit(render_completion_text(report))
        if not report.is_unique:
            return self.inconsistent(report)
        return EXIT_OK

    def cmd_branch(self) -> int:
        x = self.label(self.args.label)
        if self.format == 'json':
            self.emit(render_json(build_branch_export(self.k, x)))
        elif self.format == 'csv':
            self.emit(render_branch_csv(self.k, x))
        else:
            self.emit(render_branch_text(self.k, x))
        return EXIT_OK

    def cmd_qdim(self) -> int:
        x = self.label(self.args.label)
        if self.format == 'json':
            self.emit(render_json(QDimModel.from_qdim(qdim(self.k, x))))
        elif self.format == 'csv':
            self.emit(render_qdim_csv(self.k, x))
        else:
            self.emit(f"{x}: {render_qdim_text(qdim(self.k, x))}\n")
        return EXIT_OK

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.args.command}")
        return handler()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = SettingsManager()
    except (ValueError, FileNotFoundError) as e:
        sys.stderr.write(f"{TOOL_NAME}: configuration error: {e}\n")
        return EXIT_USAGE

    logging.basicConfig(format=settings.LOG_FORMAT, level=settings.LOG_LEVEL.upper(), stream=sys.stderr, force=True)

    try:
        return FusionCommands(args, settings).run()
    except (LabelParseError, InvalidLabelError, UsageError) as e:
        sys.stderr.write(f"{TOOL_NAME} {args.command}: error: {e}\n")
        return EXIT_USAGE
    except SearchLimitExceeded as e:
        sys.stderr.write(f"{TOOL_NAME} {args.command}: search limit exceeded: {e}\n")
        return EXIT_INCONSISTENT


if __name__ == '__main__':
    sys.exit(main())
