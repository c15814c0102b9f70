"""Database models for cached fusion tables and verification runs"""

from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class StoredTable(Base):
    """A completed table export, keyed by everything that determines its content"""
    __tablename__ = 'stored_tables'
    __table_args__ = (UniqueConstraint('k', 'variant', 'degenerate_policy', 'tool_version', name='uq_table_key'),)

    id = Column(Integer, primary_key=True)
    k = Column(Integer, nullable=False, index=True)
    variant = Column(String(20), nullable=False)
    degenerate_policy = Column(String(20), nullable=False)
    tool_version = Column(String(20), nullable=False)
    status = Column(String(20), nullable=False)  # unique, ambiguous, infeasible
    export_json = Column(Text, nullable=False)  # exact TableExport JSON
    created_at = Column(DateTime, default=datetime.utcnow)

    def __repr__(self):
        return f"<StoredTable(k={self.k}, variant={self.variant}, policy={self.degenerate_policy}, status={self.status})>"


class VerificationRun(Base):
    """Outcome of one axiom-suite run"""
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True)
    k = Column(Integer, nullable=False, index=True)
    variant = Column(String(20), nullable=False)
    passed = Column(Boolean, nullable=False)
    axiom_log_json = Column(Text, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow)

    def __repr__(self):
        return f"<VerificationRun(k={self.k}, variant={self.variant}, passed={self.passed})>"
