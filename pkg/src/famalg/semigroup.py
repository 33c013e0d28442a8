from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .errors import AssociativityViolation, CommutativityViolation, IndexOutOfRange


@dataclass(frozen=True)
class CommutativeSemigroup:
    """Finite commutative semigroup given by its Cayley table.

    Construct through :func:`semigroup_validate`; the constructor itself
    only normalizes the table to nested tuples.
    """

    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in self.table))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, *elements: int) -> int:
        acc = elements[0]
        for e in elements[1:]:
            acc = self.table[acc][e]
        return acc

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.order, self.order)

    def elements(self):
        return range(self.order)


def semigroup_validate(table) -> CommutativeSemigroup:
    """Check a Cayley table and return the semigroup.

    Commutativity is checked before associativity, each in lexicographic
    order of the offending tuple, so the reported witness is the first one.
    """
    rows = [list(r) for r in table]
    m = len(rows)
    if m == 0:
        raise IndexOutOfRange("a semigroup needs at least one element")
    for a, row in enumerate(rows):
        if len(row) != m:
            raise IndexOutOfRange(f"row {a} has length {len(row)}, expected {m}")
        for b, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < m:
                raise IndexOutOfRange(f"table[{a}][{b}] = {v!r} is not in [0, {m})")
    for a, b in product(range(m), repeat=2):
        if a < b and rows[a][b] != rows[b][a]:
            raise CommutativityViolation(a, b)
    for a, b, c in product(range(m), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise AssociativityViolation(a, b, c)
    return CommutativeSemigroup(tuple(tuple(r) for r in rows))


def trivial_semigroup() -> CommutativeSemigroup:
    return CommutativeSemigroup(((0,),))


def cyclic_group(m: int) -> CommutativeSemigroup:
    """Z/m under addition."""
    return semigroup_validate([[(a + b) % m for b in range(m)] for a in range(m)])
