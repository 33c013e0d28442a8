"""Structure-constant tensors, algebra presentations and operator families."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product as cartesian
from typing import Mapping

import numpy as np

from .errors import (
    ArityMismatch,
    DimensionMismatch,
    IndexOutOfRange,
    MissingProduct,
    SemanticError,
)
from .fields import Field
from .kinds import REQUIRED_PRODUCTS, as_kind
from .semigroup import CommutativeSemigroup, trivial_semigroup


def _entry_key(key):
    idx, i, j, k = key
    return (tuple(int(a) for a in idx), int(i), int(j), int(k))


@dataclass(frozen=True)
class FamilyProduct:
    """Sparse structure constants of an indexed bilinear product.

    ``entries[(idx, i, j, k)] = c`` means that ``e_i o_idx e_j`` has
    coefficient ``c`` on ``e_k``.  ``idx`` is a tuple of ``index_arity``
    semigroup elements.  Zero coefficients are never stored and keys are kept
    in lexicographic order.
    """

    name: str
    index_arity: int
    dimension: int
    entries: Mapping = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.index_arity not in (0, 1, 2):
            raise ArityMismatch(f"index arity must be 0, 1 or 2, got {self.index_arity}")
        clean = {}
        for key, v in self.entries.items():
            key = _entry_key(key)
            if len(key[0]) != self.index_arity:
                raise ArityMismatch(f"{self.name}: index tuple {key[0]} has wrong arity")
            if any(not 0 <= b < self.dimension for b in key[1:]):
                raise IndexOutOfRange(f"{self.name}: basis index out of range in {key}")
            if v:
                clean[key] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @cached_property
    def by_index(self) -> dict:
        rows: dict = {}
        for (idx, i, j, k), c in self.entries.items():
            rows.setdefault(idx, []).append((i, j, k, c))
        return rows

    def index_tuples(self, order: int):
        return cartesian(range(order), repeat=self.index_arity)

    def dense(self, fld: Field, order: int) -> np.ndarray:
        n = self.dimension
        t = fld.zeros((order,) * self.index_arity + (n, n, n))
        for (idx, i, j, k), c in self.entries.items():
            t[idx + (i, j, k)] = c if fld.dtype is object else int(c)
        return t

    @classmethod
    def from_dense(cls, name: str, index_arity: int, tensor: np.ndarray, fld: Field) -> "FamilyProduct":
        tensor = fld.reduce(tensor)
        n = tensor.shape[-1]
        entries = {}
        for pos in zip(*np.nonzero(tensor != 0)):
            pos = tuple(int(p) for p in pos)
            entries[(pos[:index_arity],) + pos[index_arity:]] = fld.scalar(tensor[pos])
        return cls(name, index_arity, n, entries)

    def renamed(self, name: str) -> "FamilyProduct":
        return FamilyProduct(name, self.index_arity, self.dimension, self.entries)


def product_eval(p: FamilyProduct, indices, x, y) -> list:
    """Bilinear extension: sum over i, j, k of x_i y_j c[indices][i][j][k] e_k."""
    indices = tuple(indices)
    if len(indices) != p.index_arity:
        raise ArityMismatch(f"{p.name} takes {p.index_arity} indices, got {len(indices)}")
    n = p.dimension
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"vectors must have length {n}")
    zero = x[0] - x[0]
    out = [zero] * n
    for i, j, k, c in p.by_index.get(indices, ()):
        out[k] = out[k] + x[i] * y[j] * c
    return out


@dataclass(frozen=True)
class AlgebraPresentation:
    field: Field
    semigroup: CommutativeSemigroup
    dimension: int
    products: Mapping
    kind: str | None = None
    meta: Mapping = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        m, n = self.semigroup.order, self.dimension
        if n < 1:
            raise SemanticError("dimension must be positive")
        fixed = {}
        for name, p in sorted(self.products.items()):
            if p.name != name:
                raise SemanticError(f"product stored under {name!r} is named {p.name!r}")
            if p.dimension != n:
                raise DimensionMismatch(f"product {name!r} has dimension {p.dimension}, expected {n}")
            for idx, *_ in p.entries:
                if any(not 0 <= a < m for a in idx):
                    raise IndexOutOfRange(f"product {name!r}: index {idx} outside semigroup of order {m}")
            coerced = {key: self.field.coerce(v) for key, v in p.entries.items()}
            fixed[name] = FamilyProduct(name, p.index_arity, n, coerced)
        object.__setattr__(self, "products", fixed)
        if self.kind is not None:
            kind = as_kind(self.kind)
            object.__setattr__(self, "kind", kind.value)
            for pname, arity in REQUIRED_PRODUCTS[kind].items():
                p = fixed.get(pname)
                if p is None:
                    raise MissingProduct(f"kind {kind.value} requires product {pname!r}")
                if p.index_arity != arity:
                    raise ArityMismatch(f"kind {kind.value} requires {pname!r} with index arity {arity}")
        object.__setattr__(self, "_dense", {})

    @property
    def order(self) -> int:
        return self.semigroup.order

    def product(self, name: str) -> FamilyProduct:
        try:
            return self.products[name]
        except KeyError:
            raise MissingProduct(f"algebra has no product {name!r}") from None

    def tensor(self, name: str) -> np.ndarray:
        """Dense tensor of shape (m,)*arity + (n, n, n); cached, do not mutate."""
        cache = self._dense
        if name not in cache:
            cache[name] = self.product(name).dense(self.field, self.order)
        return cache[name]

    def entry_count(self) -> int:
        return sum(len(p.entries) for p in self.products.values())

    def with_products(self, products: Mapping, kind=None, meta=None) -> "AlgebraPresentation":
        return AlgebraPresentation(self.field, self.semigroup, self.dimension, dict(products), kind, meta or {})

    def basis(self, i: int) -> list:
        v = [self.field.zero] * self.dimension
        v[i] = self.field.one
        return v


def zero_algebra(fld: Field, dimension: int, semigroup=None, names=("prec", "succ"), index_arity=1, kind=None):
    semigroup = semigroup or trivial_semigroup()
    products = {nm: FamilyProduct(nm, index_arity, dimension) for nm in names}
    return AlgebraPresentation(fld, semigroup, dimension, products, kind)


def lift(a: AlgebraPresentation, index_arity: int, semigroup: CommutativeSemigroup | None = None,
         kind=None) -> AlgebraPresentation:
    """Copy every arity-0 product to all index tuples of ``semigroup``."""
    semigroup = semigroup or a.semigroup
    products = {}
    for name, p in a.products.items():
        if p.index_arity != 0:
            raise ArityMismatch(f"only arity-0 products can be lifted; {name!r} has arity {p.index_arity}")
        entries = {}
        for idx in cartesian(range(semigroup.order), repeat=index_arity):
            for (_, i, j, k), c in p.entries.items():
                entries[(idx, i, j, k)] = c
        products[name] = FamilyProduct(name, index_arity, a.dimension, entries)
    return AlgebraPresentation(a.field, semigroup, a.dimension, products, kind)


def lower(a: AlgebraPresentation, kind=None) -> AlgebraPresentation:
    """Drop the indices of products over the trivial semigroup."""
    if a.order != 1:
        raise SemanticError("only algebras over the trivial semigroup can be lowered")
    products = {
        name: FamilyProduct(name, 0, a.dimension, {((), i, j, k): c for (_, i, j, k), c in p.entries.items()})
        for name, p in a.products.items()
    }
    return AlgebraPresentation(a.field, a.semigroup, a.dimension, products, kind)


@dataclass(frozen=True)
class OperatorFamily:
    """One n x n matrix per semigroup element; ``apply(w, x) = M_w @ x``."""

    field: Field
    semigroup: CommutativeSemigroup
    matrices: tuple

    def __post_init__(self):
        m = self.semigroup.order
        if len(self.matrices) != m:
            raise DimensionMismatch(f"need one matrix per semigroup element ({m}), got {len(self.matrices)}")
        mats = []
        n = len(self.matrices[0])
        for M in self.matrices:
            if len(M) != n or any(len(row) != n for row in M):
                raise DimensionMismatch("operator matrices must all be n x n")
            mats.append(tuple(tuple(self.field.coerce(v) for v in row) for row in M))
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def dimension(self) -> int:
        return len(self.matrices[0])

    @classmethod
    def from_mapping(cls, fld, semigroup, maps: Mapping) -> "OperatorFamily":
        missing = [w for w in range(semigroup.order) if w not in maps]
        if missing:
            raise DimensionMismatch(f"no matrix for semigroup elements {missing}")
        return cls(fld, semigroup, tuple(maps[w] for w in range(semigroup.order)))

    @classmethod
    def constant(cls, fld, semigroup, matrix) -> "OperatorFamily":
        return cls(fld, semigroup, tuple(matrix for _ in range(semigroup.order)))

    @classmethod
    def zero(cls, fld, semigroup, n) -> "OperatorFamily":
        return cls.constant(fld, semigroup, [[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, fld, semigroup, n) -> "OperatorFamily":
        return cls.constant(fld, semigroup, [[int(r == c) for c in range(n)] for r in range(n)])

    def apply(self, w: int, x) -> list:
        M = self.matrices[w]
        zero = self.field.zero
        out = []
        for row in M:
            acc = zero
            for c, xv in zip(row, x):
                acc = acc + c * xv
            out.append(acc)
        return out

    def dense(self) -> np.ndarray:
        return self.field.array([[list(r) for r in M] for M in self.matrices])

    def is_zero(self) -> bool:
        return all(not v for M in self.matrices for row in M for v in row)
