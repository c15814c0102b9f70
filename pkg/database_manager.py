"""Manages the persistent cache of completed fusion tables."""

import json
import logging
from typing import Dict, List, Optional, Tuple

from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from constants import TOOL_VERSION
from database import Base, StoredTable, VerificationRun
from exporters import TableExport, load_table_export, render_json

logger = logging.getLogger(__name__)

TableKey = Tuple[int, str, str, str]


class TableStore:
    """Stores table exports by (k, variant, degenerate policy, tool version)."""

    def __init__(self, database_url: str):
        self.database_url = database_url
        self.db_engine = None
        self.db_session = None
        self.export_cache: Dict[TableKey, str] = {}  # In-memory cache of export JSON

        self._init_database()
        self._load_exports()

    def _init_database(self):
        """Initialize database connection and create tables."""
        self.db_engine = create_engine(self.database_url, echo=False)
        self.db_session = sessionmaker(bind=self.db_engine)

        Base.metadata.create_all(self.db_engine)
        logger.info(f"Table store initialized at {self.database_url}")

    def _load_exports(self):
        """Load stored exports into the cache."""
        session = self.db_session()
        try:
            rows = session.query(StoredTable).all()
            for row in rows:
                self.export_cache[(row.k, row.variant, row.degenerate_policy, row.tool_version)] = row.export_json
            logger.info(f"Loaded {len(rows)} stored tables")
        except Exception as e:
            logger.error(f"Error loading stored tables: {e}")
        finally:
            session.close()

    def save_export(self, export: TableExport) -> None:
        """Save an export to the database and the memory cache."""
        key = (export.k, export.variant, export.degenerate_policy, export.tool_version)
        text = render_json(export)
        status = export.completion.status if export.completion else "unknown"
        session = self.db_session()
        try:
            row = (
                session.query(StoredTable)
                .filter_by(k=export.k, variant=export.variant, degenerate_policy=export.degenerate_policy, tool_version=export.tool_version)
                .first()
            )
            if not row:
                row = StoredTable(k=export.k, variant=export.variant, degenerate_policy=export.degenerate_policy, tool_version=export.tool_version)
                session.add(row)
            row.status = status
            row.export_json = text
            session.commit()

            self.export_cache[key] = text
            logger.debug(f"Saved table export k={export.k} {export.variant}/{export.degenerate_policy}")
        except Exception as e:
            logger.error(f"Error saving table export: {e}")
            session.rollback()
            raise
        finally:
            session.close()

    def load_export(self, k: int, variant: str, degenerate_policy: str, tool_version: str = TOOL_VERSION) -> Optional[TableExport]:
        """Get a stored export from the cache, or None."""
        text = self.export_cache.get((k, variant, degenerate_policy, tool_version))
        return load_table_export(text) if text is not None else None

    def record_verification(self, k: int, variant: str, log) -> None:
        session = self.db_session()
        try:
            session.add(VerificationRun(k=k, variant=variant, passed=log.passed, axiom_log_json=json.dumps(log.to_list(), sort_keys=True)))
            session.commit()
        except Exception as e:
            logger.error(f"Error recording verification run: {e}")
            session.rollback()
        finally:
            session.close()

    def verification_history(self, k: int) -> List[VerificationRun]:
        session = self.db_session()
        try:
            return session.query(VerificationRun).filter_by(k=k).order_by(VerificationRun.id).all()
        finally:
            session.close()
