"""
Branching of orbifold simples into simples of V_{Zb} (x) V_{Zb}^+, <b,b> = 4k.

A subalgebra simple is a lattice coset index mod 4k together with one of the
2k+7 simples of V_{Zb}^+: V+, V-, V_s (1 <= s <= 2k-1), Vhalf+, Vhalf-,
T1+, T1-, T2+, T2-.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from labels import Diag, Label, NonDiag, check_rank, validate_label
from qdim import QDim

logger = logging.getLogger(__name__)


class PlusKind(str, Enum):
    VACUUM = "V"
    COSET = "V_s"
    HALF = "Vhalf"
    TWIST_1 = "T1"
    TWIST_2 = "T2"


_SIGNED_KINDS = (PlusKind.VACUUM, PlusKind.HALF, PlusKind.TWIST_1, PlusKind.TWIST_2)


@dataclass(frozen=True)
class SubalgebraLabel:
    """(lattice coset mod 4k, plus-orbifold simple); index is the sign bit, or s for V_s."""

    lattice: int
    kind: PlusKind
    index: int

    def plus_tag(self) -> str:
        if self.kind == PlusKind.COSET:
            return f"V_{self.index}"
        return f"{self.kind.value}{'+' if self.index == 0 else '-'}"

    def sort_key(self) -> Tuple[int, int, int]:
        order = [PlusKind.VACUUM, PlusKind.COSET, PlusKind.HALF, PlusKind.TWIST_1, PlusKind.TWIST_2]
        return (self.lattice, order.index(self.kind), self.index)

    def __str__(self) -> str:
        return f"(lattice {self.lattice}, {self.plus_tag()})"


def validate_subalgebra_label(k: int, s: SubalgebraLabel) -> SubalgebraLabel:
    check_rank(k)
    if not 0 <= s.lattice < 4 * k:
        raise ValueError(f"Lattice index {s.lattice} out of range for k={k}")
    if s.kind == PlusKind.COSET:
        if not 1 <= s.index <= 2 * k - 1:
            raise ValueError(f"V_s index {s.index} out of range for k={k}")
    elif s.index not in (0, 1):
        raise ValueError(f"Sign bit must be 0 or 1, got {s.index}")
    return s


def plus_simples(k: int) -> List[Tuple[PlusKind, int]]:
    """The 2k+7 simples of V_{Zb}^+ as (kind, index)."""
    check_rank(k)
    tags = [(PlusKind.VACUUM, 0), (PlusKind.VACUUM, 1)]
    tags.extend((PlusKind.COSET, s) for s in range(1, 2 * k))
    tags.extend((kind, e) for kind in _SIGNED_KINDS[1:] for e in (0, 1))
    return tags


def enumerate_subalgebra_simples(k: int) -> List[SubalgebraLabel]:
    """All 4k(2k+7) simples of V_{Zb} (x) V_{Zb}^+."""
    return [SubalgebraLabel(lattice, kind, index) for lattice in range(4 * k) for kind, index in plus_simples(k)]


def branch(k: int, x: Label) -> List[Tuple[SubalgebraLabel, int]]:
    """Decompose a simple into its two subalgebra summands, each of multiplicity 1."""
    validate_label(k, x)
    m = 4 * k
    if isinstance(x, NonDiag):
        summands = [
            SubalgebraLabel((x.i + x.j) % m, PlusKind.COSET, x.i - x.j),
            SubalgebraLabel((2 * k + x.i + x.j) % m, PlusKind.COSET, 2 * k - x.i + x.j),
        ]
    elif isinstance(x, Diag):
        summands = [
            SubalgebraLabel((2 * x.i) % m, PlusKind.VACUUM, x.eps),
            SubalgebraLabel((2 * x.i + 2 * k) % m, PlusKind.HALF, x.eps),
        ]
    elif (k + x.i) % 2 == 0:
        summands = [
            SubalgebraLabel(x.i, PlusKind.TWIST_1, x.eps),
            SubalgebraLabel(2 * k + x.i, PlusKind.TWIST_1, x.eps),
        ]
    else:
        summands = [
            SubalgebraLabel(x.i, PlusKind.TWIST_2, x.eps),
            SubalgebraLabel(2 * k + x.i, PlusKind.TWIST_2, 1 - x.eps),
        ]
    return [(s, 1) for s in summands]


def qdim_sub(k: int, s: SubalgebraLabel) -> QDim:
    """Quantum dimension over the subalgebra: the lattice factor always contributes 1."""
    validate_subalgebra_label(k, s)
    if s.kind in (PlusKind.VACUUM, PlusKind.HALF):
        return QDim.one(k)
    if s.kind == PlusKind.COSET:
        return QDim(2, 0, 2 * k)
    return QDim.sqrt_radicand(k)
