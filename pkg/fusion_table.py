"""
Dense structure-constant tables.

N[a, b, c] is the multiplicity of simple c in a * b, indexed by the position
of each label in enumerate_simples(k). A boolean mask marks the cells whose
constants are known; querying an unknown cell raises UncoveredCellError.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from fusion_rules import DEFAULT_CONFIG, FusionVector, RuleVariantConfig
from labels import Diag, Label, enumerate_simples, unit_label, validate_label
from qdim import QDim, qdim, qdim_vector

logger = logging.getLogger(__name__)


class UncoveredCellError(LookupError):
    """A structure constant was requested for a cell that is not determined."""


class DualityError(ValueError):
    """A simple has no dual, or more than one."""


class SimpleCurrentError(ValueError):
    """The qdim-1 simples are not exactly the Diag labels, or do not form the expected group."""


@dataclass
class SimpleCurrentGroup:
    identity: Label
    elements: List[Label]
    law: Dict[Tuple[Label, Label], Label] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, x: Label, y: Label) -> Label:
        return self.law[(x, y)]

    def describe(self, k: int) -> str:
        return f"Z_{2 * k} x Z_2 (order {self.order}, identity {self.identity})"


class FusionTable:
    """Structure constants for one k, with a known-cell mask and per-cell provenance."""

    def __init__(
        self,
        k: int,
        constants: np.ndarray,
        known: Optional[np.ndarray] = None,
        provenance: Optional[Mapping[Tuple[int, int], str]] = None,
        cfg: RuleVariantConfig = DEFAULT_CONFIG,
    ):
        self.k = k
        self.cfg = cfg
        self.labels: List[Label] = enumerate_simples(k)
        self.size = len(self.labels)
        self.index: Dict[Label, int] = {label: pos for pos, label in enumerate(self.labels)}

        shape = (self.size, self.size, self.size)
        if constants.shape != shape:
            raise ValueError(f"Expected a constants tensor of shape {shape}, got {constants.shape}")
        self.N = np.asarray(constants, dtype=np.int64)
        self.known = np.ones((self.size, self.size), dtype=bool) if known is None else np.asarray(known, dtype=bool)
        self.provenance: Dict[Tuple[int, int], str] = dict(provenance or {})
        self._duals: Optional[Dict[Label, Label]] = None

    @classmethod
    def from_cells(
        cls,
        k: int,
        cells: Mapping[Tuple[Label, Label], FusionVector],
        provenance: Optional[Mapping[Tuple[Label, Label], str]] = None,
        cfg: RuleVariantConfig = DEFAULT_CONFIG,
    ) -> "FusionTable":
        """Build from unordered cells; missing cells stay unknown."""
        labels = enumerate_simples(k)
        index = {label: pos for pos, label in enumerate(labels)}
        size = len(labels)
        constants = np.zeros((size, size, size), dtype=np.int64)
        known = np.zeros((size, size), dtype=bool)
        tags: Dict[Tuple[int, int], str] = {}
        for (a, b), vector in cells.items():
            ia, ib = index[a], index[b]
            for c, mult in vector.items():
                constants[ia, ib, index[c]] = mult
                constants[ib, ia, index[c]] = mult
            known[ia, ib] = known[ib, ia] = True
            if provenance and (a, b) in provenance:
                tags[(min(ia, ib), max(ia, ib))] = provenance[(a, b)]
        return cls(k, constants, known, tags, cfg)

    def copy(self) -> "FusionTable":
        return FusionTable(self.k, self.N.copy(), self.known.copy(), self.provenance, self.cfg)

    # Lookups

    def index_of(self, x: Label) -> int:
        validate_label(self.k, x)
        return self.index[x]

    @property
    def unit_index(self) -> int:
        return self.index[unit_label()]

    def is_complete(self) -> bool:
        return bool(self.known.all())

    def unknown_cells(self) -> List[Tuple[Label, Label]]:
        rows, cols = np.nonzero(~self.known)
        return [(self.labels[a], self.labels[b]) for a, b in zip(rows, cols) if a <= b]

    def _require_known(self, ia: int, ib: int):
        if not self.known[ia, ib]:
            raise UncoveredCellError(f"Cell {self.labels[ia]} x {self.labels[ib]} is not determined for k={self.k}")

    def structure_constant(self, a: Label, b: Label, c: Label) -> int:
        """N^c_{a,b}."""
        ia, ib, ic = self.index_of(a), self.index_of(b), self.index_of(c)
        self._require_known(ia, ib)
        return int(self.N[ia, ib, ic])

    def product_at(self, ia: int, ib: int) -> FusionVector:
        self._require_known(ia, ib)
        row = self.N[ia, ib]
        return FusionVector(tuple((self.labels[c], int(row[c])) for c in np.nonzero(row)[0]))

    def product(self, a: Label, b: Label) -> FusionVector:
        return self.product_at(self.index_of(a), self.index_of(b))

    def cell_provenance(self, a: Label, b: Label) -> str:
        ia, ib = self.index_of(a), self.index_of(b)
        return self.provenance.get((min(ia, ib), max(ia, ib)), "")

    def cells(self) -> Iterator[Tuple[Label, Label, FusionVector, str]]:
        """Unordered cells in canonical order (a before b in label order)."""
        for ia in range(self.size):
            for ib in range(ia, self.size):
                if self.known[ia, ib]:
                    yield self.labels[ia], self.labels[ib], self.product_at(ia, ib), self.provenance.get((ia, ib), "")

    # Linear extension

    def multiply(self, u: FusionVector, v: FusionVector) -> FusionVector:
        """Fusion product extended bilinearly to multiplicity vectors."""
        total = np.zeros(self.size, dtype=np.int64)
        for a, ma in u.items():
            for b, mb in v.items():
                ia, ib = self.index_of(a), self.index_of(b)
                self._require_known(ia, ib)
                total += ma * mb * self.N[ia, ib]
        return FusionVector(tuple((self.labels[c], int(total[c])) for c in np.nonzero(total)[0]))

    def fusion_power(self, x: Label, power: int) -> FusionVector:
        if power < 0:
            raise ValueError(f"Fusion power must be nonnegative, got {power}")
        result = FusionVector.single(unit_label())
        base = FusionVector.single(x)
        for _ in range(power):
            result = self.multiply(result, base)
        return result

    # Derived data

    def dual_map(self) -> Dict[Label, Label]:
        """x -> the unique y with N^{unit}_{x,y} = 1."""
        if self._duals is not None:
            return self._duals
        unit = self.unit_index
        duals: Dict[Label, Label] = {}
        for ia, x in enumerate(self.labels):
            if not self.known[ia].all():
                raise DualityError(f"Cannot determine the dual of {x}: its row has undetermined cells")
            partners = np.nonzero(self.N[ia, :, unit])[0]
            if len(partners) != 1 or self.N[ia, partners[0], unit] != 1:
                found = ", ".join(f"{self.labels[p]}^{int(self.N[ia, p, unit])}" for p in partners) or "none"
                raise DualityError(f"{x} must have exactly one dual with unit multiplicity 1, found: {found}")
            duals[x] = self.labels[partners[0]]
        self._duals = duals
        return duals

    def dual(self, x: Label) -> Label:
        validate_label(self.k, x)
        return self.dual_map()[x]

    def simple_currents(self) -> SimpleCurrentGroup:
        """The qdim-1 simples, checked to be the Diag labels forming Z_2k x Z_2."""
        one = QDim.one(self.k)
        currents = [x for x in self.labels if qdim(self.k, x) == one]
        expected = [x for x in self.labels if isinstance(x, Diag)]
        if currents != expected:
            raise SimpleCurrentError(f"qdim-1 simples {[str(x) for x in currents]} differ from the Diag labels")

        for x in currents:
            for y in self.labels:
                product = self.product(x, y)
                if not product.is_simple():
                    raise SimpleCurrentError(f"{x} x {y} = {product} is not a single simple")

        n = 2 * self.k
        group = SimpleCurrentGroup(identity=unit_label(), elements=currents)
        for x in currents:
            for y in currents:
                (z,) = self.product(x, y).labels()
                if z != Diag((x.i + y.i) % n, (x.eps + y.eps) % 2):
                    raise SimpleCurrentError(f"{x} x {y} = {z} breaks the Z_{n} x Z_2 group law")
                group.law[(x, y)] = z
        return group

    def global_dimension(self) -> QDim:
        return sum((qdim(self.k, x) * qdim(self.k, x) for x in self.labels), QDim.zero(self.k))

    def qdim_of_product(self, a: Label, b: Label) -> QDim:
        return qdim_vector(self.k, self.product(a, b).items())

    # Mutation

    def perturbed(self, a: Label, b: Label, c: Label, delta: int = 1, symmetric: bool = False) -> "FusionTable":
        """Copy with N^c_{a,b} shifted by delta."""
        table = self.copy()
        ia, ib, ic = self.index_of(a), self.index_of(b), self.index_of(c)
        table.N[ia, ib, ic] += delta
        if symmetric and ia != ib:
            table.N[ib, ia, ic] += delta
        return table

    def __repr__(self) -> str:
        return f"<FusionTable k={self.k} simples={self.size} cfg={self.cfg} complete={self.is_complete()}>"
