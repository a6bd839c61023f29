"""Finite Abelian semigroups: validation, selectors, zero elements, S_E family.

Elements are identified with their positions 0..M-1 in the label list; all
computation is index-based, labels only matter for file formats and display.
The multiplication table stores ``table[a][b] = index of the product``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import InvalidSemigroup


@dataclass(frozen=True)
class Semigroup:
    """A validated finite Abelian semigroup.

    Construct through :func:`validate` (or :func:`gen_se`); the constructor
    itself only normalizes the field types.
    """

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))

    @property
    def order(self) -> int:
        return len(self.labels)

    def product(self, a: int, b: int) -> int:
        """Index of the product of elements a and b (a table lookup)."""
        if not (0 <= a < len(self.table) and 0 <= b < len(self.table)):
            raise IndexError(f"element index out of range: ({a}, {b})")
        return self.table[a][b]

    def fold(self, args: Sequence[int]) -> int:
        """Product of a sequence of elements; order is immaterial here."""
        return reduce(self.product, args)

    def selector(self, args: Sequence[int], gamma: int) -> int:
        """The n-selector: 1 iff the product of args equals element gamma."""
        if len(args) < 2:
            raise ValueError("selector needs at least two arguments")
        if not 0 <= gamma < self.order:
            raise IndexError(f"element index {gamma} out of range")
        return 1 if self.fold(args) == gamma else 0

    def zero_element(self) -> int | None:
        """Index of the absorbing element, or None if there is none.

        At most one element z can satisfy z*a == z for all a: two of them
        would collapse via z = z*z' = z'.
        """
        for z in range(self.order):
            row = self.table[z]
            if all(row[a] == z for a in range(self.order)):
                return z
        return None


def table_violations(
    table: Sequence[Sequence[int]],
) -> list[tuple[str, tuple[int, ...]]]:
    """Every axiom violation in a candidate table, as (kind, witness) records.

    Kinds: "closure" with witness (a, b), "commutativity" with witness (a, b),
    "associativity" with witness (a, b, c).  The check is exhaustive, O(M^3).
    """
    m = len(table)
    violations: list[tuple[str, tuple[int, ...]]] = []
    if any(len(row) != m for row in table):
        raise ValueError("table must be square")
    closed = True
    for a in range(m):
        for b in range(m):
            if not 0 <= table[a][b] < m:
                violations.append(("closure", (a, b)))
                closed = False
    for a in range(m):
        for b in range(a + 1, m):
            if table[a][b] != table[b][a]:
                violations.append(("commutativity", (a, b)))
    if closed:
        for a in range(m):
            for b in range(m):
                ab = table[a][b]
                row_a = table[a]
                for c in range(m):
                    if table[ab][c] != row_a[table[b][c]]:
                        violations.append(("associativity", (a, b, c)))
    return violations


def validate(labels: Iterable[str], table: Sequence[Sequence[int]]) -> Semigroup:
    """Check the Abelian semigroup axioms and build the Semigroup.

    Raises InvalidSemigroup carrying every violated pair/triple.
    """
    labels = tuple(labels)
    if len(labels) != len(table) or len(labels) == 0:
        raise ValueError("need one label per table row, at least one element")
    violations = table_violations(table)
    if violations:
        raise InvalidSemigroup(violations)
    return Semigroup(labels, tuple(tuple(row) for row in table))


def selector_n(s: Semigroup, args: Sequence[int], gamma: int) -> int:
    """Module-level alias for :meth:`Semigroup.selector`."""
    return s.selector(args, gamma)


def gen_se(n: int) -> Semigroup:
    """The semigroup l_0, ..., l_{N+1} with l_a * l_b = l_{min(a+b, N+1)}.

    The last element l_{N+1} is absorbing (the zero element).  gen_se(0) is
    the two-element case where l_1 already absorbs everything.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    m = n + 2
    labels = tuple(f"l{i}" for i in range(m))
    table = tuple(tuple(min(a + b, n + 1) for b in range(m)) for a in range(m))
    return Semigroup(labels, table)
