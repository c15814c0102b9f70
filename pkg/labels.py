"""
Labels of the irreducible modules of the 2-cycle permutation orbifold.

Three families, for a rank parameter k (lattice Z alpha with <alpha, alpha> = 2k):

    NonDiag  N(i,j)   unordered pair of distinct residues mod 2k, stored with i > j
    Diag     D(i,e)   residue mod 2k and a sign bit
    Twist    T(i,e)   residue mod 2k and a sign bit

The text grammar (LabelText) is "N(i,j)", "D(i,e)", "T(i,e)" with the aliases
"(i j)", "~(i e)" and "^(i e)" accepted on input.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Tuple, Union

logger = logging.getLogger(__name__)

NONDIAG = "nondiag"
DIAG = "diag"
TWIST = "twist"

# Family order is also the label order and the argument order used by the rules
FAMILY_RANK = {NONDIAG: 0, DIAG: 1, TWIST: 2}


class InvalidLabelError(ValueError):
    """A label does not name a simple module for the given k."""


class LabelParseError(ValueError):
    """A LabelText string does not match the grammar."""


def check_rank(k: int) -> int:
    """Validate the rank parameter k and return it."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValueError(f"Rank parameter must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"Rank parameter must be >= 1, got {k}")
    return k


@dataclass(frozen=True)
class NonDiag:
    i: int
    j: int

    family = NONDIAG

    def sort_key(self) -> Tuple[int, int, int]:
        return (FAMILY_RANK[NONDIAG], self.i, self.j)

    def __str__(self) -> str:
        return f"N({self.i},{self.j})"


@dataclass(frozen=True)
class Diag:
    i: int
    eps: int

    family = DIAG

    def sort_key(self) -> Tuple[int, int, int]:
        return (FAMILY_RANK[DIAG], self.i, self.eps)

    def __str__(self) -> str:
        return f"D({self.i},{self.eps})"


@dataclass(frozen=True)
class Twist:
    i: int
    eps: int

    family = TWIST

    def sort_key(self) -> Tuple[int, int, int]:
        return (FAMILY_RANK[TWIST], self.i, self.eps)

    def __str__(self) -> str:
        return f"T({self.i},{self.eps})"


Label = Union[NonDiag, Diag, Twist]


def unit_label() -> Diag:
    """The vacuum module, D(0,0)."""
    return Diag(0, 0)


def validate_label(k: int, x: Label) -> Label:
    """Check that x is a canonical label for k; return it unchanged."""
    check_rank(k)
    n = 2 * k
    if isinstance(x, NonDiag):
        if not (0 <= x.j < x.i <= n - 1):
            raise InvalidLabelError(f"{x} is not a valid NonDiag label for k={k} (need 0 <= j < i <= {n - 1})")
    elif isinstance(x, (Diag, Twist)):
        if not (0 <= x.i <= n - 1) or x.eps not in (0, 1):
            raise InvalidLabelError(f"{x} is not a valid {x.family} label for k={k} (need 0 <= i <= {n - 1}, e in {{0,1}})")
    else:
        raise InvalidLabelError(f"Not a label: {x!r}")
    return x


def enumerate_simples(k: int) -> List[Label]:
    """All 2k^2 + 7k simples in the fixed order NonDiag, Diag, Twist."""
    check_rank(k)
    n = 2 * k
    labels: List[Label] = [NonDiag(i, j) for i in range(n) for j in range(i)]
    labels.extend(Diag(i, e) for i in range(n) for e in (0, 1))
    labels.extend(Twist(i, e) for i in range(n) for e in (0, 1))
    logger.debug(f"Enumerated {len(labels)} simples for k={k}")
    return labels


def sort_labels(labels) -> List[Label]:
    return sorted(labels, key=lambda x: x.sort_key())


# LabelText grammar
_CANONICAL_RE = re.compile(r"^([NDT])\((-?\d+),(-?\d+)\)$", re.IGNORECASE)
_ALIAS_RE = re.compile(r"^([~^]?)\((-?\d+)\s+(-?\d+)\)$")


def parse_label(text: str) -> Label:
    """Parse LabelText into a label (ranges are checked by validate_label)."""
    if not isinstance(text, str) or not text.strip():
        raise LabelParseError("Label text must be a non-empty string")

    squeezed = re.sub(r"\s+", "", text)
    match = _CANONICAL_RE.match(squeezed)
    if match:
        tag, first, second = match.group(1).upper(), int(match.group(2)), int(match.group(3))
    else:
        # Aliases keep one space between the two indices
        spaced = re.sub(r"\s+", " ", text.strip())
        spaced = re.sub(r"\(\s+", "(", spaced)
        spaced = re.sub(r"\s+\)", ")", spaced)
        spaced = re.sub(r"^([~^])\s+", r"\1", spaced)
        match = _ALIAS_RE.match(spaced)
        if not match:
            raise LabelParseError(f"Cannot parse label {text!r}: expected N(i,j), D(i,e), T(i,e), (i j), ~(i e) or ^(i e)")
        tag = {"": "N", "~": "D", "^": "T"}[match.group(1)]
        first, second = int(match.group(2)), int(match.group(3))

    if tag == "N":
        if first == second:
            raise LabelParseError(f"NonDiag label {text!r} needs two distinct indices")
        return NonDiag(max(first, second), min(first, second))
    if tag == "D":
        return Diag(first, second)
    return Twist(first, second)


def render_label(x: Label) -> str:
    """Canonical LabelText of a label."""
    return str(x)


def parse_label_for(k: int, text: str) -> Label:
    """Parse and validate against k in one step."""
    return validate_label(k, parse_label(text))
