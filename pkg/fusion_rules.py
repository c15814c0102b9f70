"""
Rule-based fusion of orbifold simples.

Each product of two simples is evaluated by the rule that matches the pair of
families. Index arithmetic is mod 2k; formal pairs produced by the rules are
canonicalized by normalize_pair. Two rule variants are available: the rules as
printed, and a corrected reading consistent with the branching to
V_{Zb} (x) V_{Zb}^+. They differ in four places, see RuleVariant.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from labels import Diag, Label, NonDiag, Twist, FAMILY_RANK, check_rank, validate_label

logger = logging.getLogger(__name__)


class RuleVariant(str, Enum):
    """
    PRINTED evaluates every rule as stated. CORRECTED changes:
      - generic NonDiag*NonDiag second summand (i+q, j+p) instead of (i+q, j-p)
      - NonDiag*NonDiag with equal differences: D(p+j,*) plus N(i+p, j+q),
        or D(p+j+k,*) when the difference is k
      - Diag*Twist flips the sign bit on odd-class twists whose lattice coset wraps
      - Twist*Twist pair term ((i+j+r)/2, (i+j-r)/2) instead of (i+r, j-r)
    """

    PRINTED = "printed"
    CORRECTED = "corrected"


class DegeneratePolicy(str, Enum):
    SPLIT = "split"
    FIXED_SPLIT = "fixed-split"


@dataclass(frozen=True)
class RuleVariantConfig:
    variant: RuleVariant = RuleVariant.CORRECTED
    degenerate_policy: DegeneratePolicy = DegeneratePolicy.SPLIT

    @classmethod
    def from_names(cls, variant: Optional[str] = None, degenerate_policy: Optional[str] = None) -> "RuleVariantConfig":
        """Build a config from setting strings, e.g. ("printed", "fixed-split")."""
        try:
            v = RuleVariant(variant) if variant else RuleVariant.CORRECTED
        except ValueError:
            raise ValueError(f"Unknown rule variant {variant!r}; choose from {[m.value for m in RuleVariant]}")
        try:
            p = DegeneratePolicy(degenerate_policy) if degenerate_policy else DegeneratePolicy.SPLIT
        except ValueError:
            raise ValueError(f"Unknown degenerate policy {degenerate_policy!r}; choose from {[m.value for m in DegeneratePolicy]}")
        return cls(v, p)

    @property
    def is_printed(self) -> bool:
        return self.variant == RuleVariant.PRINTED

    def __str__(self) -> str:
        return f"{self.variant.value}/{self.degenerate_policy.value}"


DEFAULT_CONFIG = RuleVariantConfig()


@dataclass(frozen=True)
class DegenerateDiagonal:
    """A formal pair (a, a): not a NonDiag label, expands into Diag(a, *)."""

    residue: int

    def __str__(self) -> str:
        return f"({self.residue} {self.residue})"


@dataclass(frozen=True)
class Uncovered:
    """A cell no rule determines; resolved by table completion."""

    a: Label
    b: Label

    def __str__(self) -> str:
        return f"Uncovered[{self.a} x {self.b}]"


NormalizedSummand = Union[NonDiag, DegenerateDiagonal]


@dataclass(frozen=True)
class FusionVector:
    """Finite multiplicity map, stored sorted by label order."""

    entries: Tuple[Tuple[Label, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[Label, int]) -> "FusionVector":
        items = [(label, int(m)) for label, m in counts.items() if m]
        for label, m in items:
            if m < 0:
                raise ValueError(f"Negative multiplicity {m} for {label}")
        return cls(tuple(sorted(items, key=lambda item: item[0].sort_key())))

    @classmethod
    def single(cls, label: Label) -> "FusionVector":
        return cls(((label, 1),))

    def as_counter(self) -> Counter:
        return Counter(dict(self.entries))

    def items(self) -> Iterator[Tuple[Label, int]]:
        return iter(self.entries)

    def labels(self):
        return [label for label, _ in self.entries]

    def __getitem__(self, label: Label) -> int:
        for other, m in self.entries:
            if other == label:
                return m
        return 0

    def __contains__(self, label: Label) -> bool:
        return self[label] > 0

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.labels())

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def __add__(self, other: "FusionVector") -> "FusionVector":
        return FusionVector.from_counts(self.as_counter() + other.as_counter())

    def scaled(self, factor: int) -> "FusionVector":
        return FusionVector.from_counts({label: m * factor for label, m in self.entries})

    def is_simple(self) -> bool:
        return len(self.entries) == 1 and self.entries[0][1] == 1

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(str(label) if m == 1 else f"{m}*{label}" for label, m in self.entries)


FusionResult = Union[FusionVector, Uncovered]


@dataclass(frozen=True)
class RuleEvaluation:
    """
    Raw outcome of one rule: the determined summands, any degenerate formal
    pairs (residue -> multiplicity) and whether the cell is uncovered.
    """

    rule: str
    fixed: FusionVector = field(default_factory=FusionVector)
    degenerate: Tuple[Tuple[int, int], ...] = ()
    uncovered: bool = False

    @property
    def is_determined(self) -> bool:
        return not self.uncovered and not self.degenerate

    def default_expansion(self) -> FusionVector:
        """Expand each degenerate slot of multiplicity m as m*D(a,0) + m*D(a,1)."""
        counts = self.fixed.as_counter()
        for residue, m in self.degenerate:
            counts[Diag(residue, 0)] += m
            counts[Diag(residue, 1)] += m
        return FusionVector.from_counts(counts)


def normalize_pair(k: int, a: int, b: int) -> NormalizedSummand:
    """Reduce a formal pair mod 2k; equal residues give a DegenerateDiagonal."""
    n = 2 * k
    a, b = a % n, b % n
    if a == b:
        return DegenerateDiagonal(a)
    return NonDiag(max(a, b), min(a, b))


def ordered_cell(x: Label, y: Label) -> Tuple[Label, Label]:
    """Fixed argument order for a cell: family rank first, then label order."""
    return (x, y) if x.sort_key() <= y.sort_key() else (y, x)


class _RuleBuilder:
    def __init__(self, k: int):
        self.k = k
        self.n = 2 * k
        self.fixed: Dict[Label, int] = Counter()
        self.degenerate: Dict[int, int] = Counter()

    def diag(self, i: int, eps: int, mult: int = 1):
        self.fixed[Diag(i % self.n, eps % 2)] += mult

    def twist(self, i: int, eps: int):
        self.fixed[Twist(i % self.n, eps % 2)] += 1

    def pair(self, a: int, b: int):
        summand = normalize_pair(self.k, a, b)
        if isinstance(summand, DegenerateDiagonal):
            self.degenerate[summand.residue] += 1
        else:
            self.fixed[summand] += 1

    def build(self, rule: str) -> RuleEvaluation:
        return RuleEvaluation(
            rule=rule,
            fixed=FusionVector.from_counts(self.fixed),
            degenerate=tuple(sorted(self.degenerate.items())),
        )


def _nondiag_nondiag(k: int, x: NonDiag, y: NonDiag, cfg: RuleVariantConfig) -> RuleEvaluation:
    i, j, p, q = x.i, x.j, y.i, y.j
    d1, d2 = i - j, p - q
    out = _RuleBuilder(k)

    if d1 == d2:
        out.diag(p + j, 0)
        out.diag(p + j, 1)
        if cfg.is_printed:
            out.diag(p - i, 0)
            out.diag(p - i, 1)
        elif d1 == k:
            out.diag(p + j + k, 0)
            out.diag(p + j + k, 1)
        else:
            out.pair(i + p, j + q)
        return out.build("nondiag*nondiag:equal")

    if (d1 + d2) % (2 * k) == 0:
        return RuleEvaluation(rule="nondiag*nondiag:uncovered", uncovered=True)

    out.pair(i + p, j + q)
    if cfg.is_printed:
        out.pair(i + q, j - p)
    else:
        out.pair(i + q, j + p)
    return out.build("nondiag*nondiag")


def _nondiag_diag(k: int, x: NonDiag, y: Diag, cfg: RuleVariantConfig) -> RuleEvaluation:
    out = _RuleBuilder(k)
    out.pair(x.i + y.i, x.j + y.i)
    return out.build("nondiag*diag")


def _nondiag_twist(k: int, x: NonDiag, y: Twist, cfg: RuleVariantConfig) -> RuleEvaluation:
    out = _RuleBuilder(k)
    index = x.i + x.j + y.i
    out.twist(index, 0)
    out.twist(index, 1)
    return out.build("nondiag*twist")


def _diag_diag(k: int, x: Diag, y: Diag, cfg: RuleVariantConfig) -> RuleEvaluation:
    out = _RuleBuilder(k)
    out.diag(x.i + y.i, x.eps + y.eps)
    return out.build("diag*diag")


def _diag_twist(k: int, x: Diag, y: Twist, cfg: RuleVariantConfig) -> RuleEvaluation:
    out = _RuleBuilder(k)
    coset = 2 * x.i + y.i
    eps = x.eps + y.eps
    # Odd-class twists swap sign on the second branch summand
    if not cfg.is_printed and (coset // (2 * k)) % 2 == 1 and (k + y.i) % 2 == 1:
        eps += 1
    out.twist(coset, eps)
    return out.build("diag*twist")


def _twist_twist(k: int, x: Twist, y: Twist, cfg: RuleVariantConfig) -> RuleEvaluation:
    i, j = x.i, y.i
    n = 2 * k
    eps = x.eps + y.eps
    class_i, class_j = (k + i) % 2, (k + j) % 2
    out = _RuleBuilder(k)

    if class_i == class_j:
        half = (i + j) // 2
        out.diag(half, eps)
        out.diag(k + half, eps + class_i)
        steps = range(2, n, 2)
        rule = "twist*twist:odd" if class_i else "twist*twist:even"
    else:
        steps = range(1, n, 2)
        rule = "twist*twist:mixed"

    for r in steps:
        if cfg.is_printed:
            out.pair(i + r, j - r)
        else:
            out.pair((i + j + r) // 2, (i + j - r) // 2)
    return out.build(rule)


_RULES = {
    (NonDiag, NonDiag): _nondiag_nondiag,
    (NonDiag, Diag): _nondiag_diag,
    (NonDiag, Twist): _nondiag_twist,
    (Diag, Diag): _diag_diag,
    (Diag, Twist): _diag_twist,
    (Twist, Twist): _twist_twist,
}


def evaluate_rule(k: int, x: Label, y: Label, cfg: RuleVariantConfig = DEFAULT_CONFIG) -> RuleEvaluation:
    """Evaluate the matching rule for x * y without expanding degenerate pairs."""
    check_rank(k)
    validate_label(k, x)
    validate_label(k, y)
    x, y = ordered_cell(x, y)
    assert FAMILY_RANK[x.family] <= FAMILY_RANK[y.family]
    return _RULES[(type(x), type(y))](k, x, y, cfg)


def fuse_detailed(k: int, x: Label, y: Label, cfg: RuleVariantConfig = DEFAULT_CONFIG) -> RuleEvaluation:
    evaluation = evaluate_rule(k, x, y, cfg)
    logger.debug(f"k={k} {x} x {y} [{cfg}] via {evaluation.rule}: fixed={evaluation.fixed} degenerate={evaluation.degenerate}")
    return evaluation


def fuse(k: int, x: Label, y: Label, cfg: RuleVariantConfig = DEFAULT_CONFIG) -> FusionResult:
    """
    Fusion product x * y at rule level.

    Returns Uncovered for the NonDiag cells no rule determines. Degenerate
    pairs are expanded as m*D(a,0) + m*D(a,1); the completion solver may
    redistribute them.
    """
    evaluation = evaluate_rule(k, x, y, cfg)
    if evaluation.uncovered:
        return Uncovered(*ordered_cell(x, y))
    return evaluation.default_expansion()


def dual_label(k: int, x: Label) -> Label:
    """Closed-form dual of x under the corrected rules."""
    check_rank(k)
    validate_label(k, x)
    n = 2 * k
    if isinstance(x, NonDiag):
        return normalize_pair(k, -x.j, -x.i)
    if isinstance(x, Diag):
        return Diag(-x.i % n, x.eps)
    if x.i == 0:
        return x
    return Twist(n - x.i, (x.eps + (k + x.i) % 2) % 2)
