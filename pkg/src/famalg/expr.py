"""A small expression language for multilinear identities and its dense evaluator.

Identities are written with Python operators over the vector variables
``x, y, z`` and indexed products, e.g.::

    succ, prec = op("succ"), op("prec")
    lhs = prec(succ(x, y, "a"), z, "b") - succ(x, prec(y, z, "b"), "a")

Index arguments are strings of index-variable letters; ``"ab"`` stands for the
semigroup product of the first two index variables.  Linear maps from an
operator family enter through :func:`lin_map`.

The evaluator works on dense structure tensors and returns, for every
requested (index assignment, basis tuple) point, the coordinate vector of the
expression.  A leading batch axis lets the search module test many candidate
algebras in one call.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

import numpy as np

from .errors import ArityMismatch, MissingProduct

INDEX_LETTERS = "abc"
VECTOR_NAMES = "xyz"


def _ix(spec) -> tuple:
    if isinstance(spec, tuple):
        return spec
    return tuple(INDEX_LETTERS.index(ch) for ch in spec)


class Expr:
    def _lin(self):
        return Lin(((1, self),))

    def __add__(self, other):
        return Lin(self._lin().terms + other._lin().terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Lin(tuple((-c, e) for c, e in self._lin().terms))

    def __rmul__(self, coef):
        return Lin(tuple((coef * c, e) for c, e in self._lin().terms))


@dataclass(frozen=True)
class Var(Expr):
    pos: int

    def __repr__(self):
        return VECTOR_NAMES[self.pos]


@dataclass(frozen=True)
class Mul(Expr):
    name: str
    idx: tuple
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Apply(Expr):
    name: str
    idx: tuple
    arg: Expr


@dataclass(frozen=True)
class Lin(Expr):
    terms: tuple

    def _lin(self):
        return self


ZERO = Lin(())
x, y, z = Var(0), Var(1), Var(2)


def op(name: str):
    def apply(left, right, *idx):
        return Mul(name, tuple(_ix(s) for s in idx), left, right)

    apply.__name__ = name
    return apply


def lin_map(name: str):
    def apply(arg, idx):
        return Apply(name, _ix(idx), arg)

    apply.__name__ = name
    return apply


def walk(e: Expr):
    yield e
    if isinstance(e, Mul):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, Apply):
        yield from walk(e.arg)
    elif isinstance(e, Lin):
        for _, t in e.terms:
            yield from walk(t)


@dataclass(frozen=True)
class Identity:
    """A named multilinear identity ``lhs = rhs``.

    ``index_vars`` free semigroup variables and ``args`` free vector
    variables.  With ``skew_pairs`` only basis pairs with ``i <= j`` are
    evaluated (the identity is symmetric under swapping the pair together
    with its indices).
    """

    id: str
    index_vars: int
    args: int
    lhs: Expr
    rhs: Expr = ZERO
    skew_pairs: bool = False
    note: str = ""
    products: dict = field(init=False, compare=False)
    operators: tuple = field(init=False, compare=False)

    def __post_init__(self):
        prods, ops = {}, set()
        for e in (self.lhs, self.rhs):
            for node in walk(e):
                if isinstance(node, Mul):
                    prods[node.name] = len(node.idx)
                elif isinstance(node, Apply):
                    ops.add(node.name)
        object.__setattr__(self, "products", prods)
        object.__setattr__(self, "operators", tuple(sorted(ops)))

    @property
    def residual(self) -> Expr:
        return self.lhs - self.rhs

    def index_points(self, order: int) -> np.ndarray:
        pts = list(cartesian(range(order), repeat=self.index_vars))
        return np.array(pts, dtype=np.int64).reshape(len(pts), self.index_vars)

    def basis_points(self, n: int) -> np.ndarray:
        pts = list(cartesian(range(n), repeat=self.args))
        if self.skew_pairs:
            pts = [p for p in pts if p[0] <= p[1]]
        return np.array(pts, dtype=np.int64).reshape(len(pts), self.args)


@dataclass
class Context:
    """Dense data an identity is evaluated against.

    ``products`` and ``operators`` map names to arrays with a leading batch
    axis: products ``(B,) + (m,)*arity + (n, n, n)``, operators
    ``(B, m, n, n)`` with ``apply(w, v) = M[w] @ v``.
    """

    field: object
    table: np.ndarray
    dimension: int
    products: dict
    operators: dict = field(default_factory=dict)
    batch: int = 1

    @classmethod
    def of(cls, algebra, operators=None) -> "Context":
        prods = {name: algebra.tensor(name)[None] for name in algebra.products}
        ops = {name: fam.dense()[None] for name, fam in (operators or {}).items()}
        return cls(algebra.field, algebra.semigroup.array, algebra.dimension, prods, ops, 1)


def _index_values(table, pts, ix):
    v = pts[:, ix[0]]
    for p in ix[1:]:
        v = table[v, pts[:, p]]
    return v


class _Z:
    """Plain int64 arithmetic; used for Q when every constant is an integer."""

    dtype = np.int64

    @staticmethod
    def coerce(v):
        return int(v)

    @staticmethod
    def zeros(shape):
        return np.zeros(shape, dtype=np.int64)

    @staticmethod
    def reduce(arr):
        return arr


def _as_int(arr):
    flat = arr.reshape(-1)
    if not all(getattr(v, "denominator", 1) == 1 for v in flat):
        return None
    return np.array([int(v) for v in flat], dtype=object).reshape(arr.shape)


def _bound(e, ctx, cmax, pmax):
    """Upper bound on the magnitude of any coordinate of ``e`` (exact ints)."""
    n = ctx.dimension
    if isinstance(e, Var):
        return 1
    if isinstance(e, Lin):
        return sum(abs(Fraction(c)) * _bound(t, ctx, cmax, pmax) for c, t in e.terms)
    if isinstance(e, Mul):
        return n * n * cmax.get(e.name, 0) * _bound(e.left, ctx, cmax, pmax) * _bound(e.right, ctx, cmax, pmax)
    if isinstance(e, Apply):
        return n * pmax.get(e.name, 0) * _bound(e.arg, ctx, cmax, pmax)
    return None


def _lin_integral(e):
    if isinstance(e, Lin):
        return all(Fraction(c).denominator == 1 and _lin_integral(t) for c, t in e.terms)
    if isinstance(e, Mul):
        return _lin_integral(e.left) and _lin_integral(e.right)
    if isinstance(e, Apply):
        return _lin_integral(e.arg)
    return True


def _integer_context(expr, ctx):
    if ctx.field.dtype is not object or not _lin_integral(expr):
        return None
    prods, ops, cmax, pmax = {}, {}, {}, {}
    for src, dst, mx in ((ctx.products, prods, cmax), (ctx.operators, ops, pmax)):
        for name, arr in src.items():
            ints = _as_int(np.asarray(arr))
            if ints is None:
                return None
            mx[name] = max((abs(v) for v in ints.reshape(-1)), default=0)
            dst[name] = ints.astype(np.int64) if mx[name] < 2 ** 62 else None
            if dst[name] is None:
                return None
    try:
        if _bound(expr, ctx, cmax, pmax) >= 2 ** 62:
            return None
    except TypeError:
        return None
    return Context(_Z, ctx.table, ctx.dimension, prods, ops, ctx.batch)


def evaluate(expr: Expr, ctx: Context, index_points: np.ndarray, basis_points: np.ndarray) -> np.ndarray:
    """Coordinates of ``expr`` at every point: array of shape (B, M, N, n)."""
    ictx = _integer_context(expr, ctx)
    if ictx is not None:
        out = _evaluate(expr, ictx, index_points, basis_points)
        return ctx.field.array(out)
    return _evaluate(expr, ctx, index_points, basis_points)


def _evaluate(expr, ctx, index_points, basis_points):
    fld, n, B = ctx.field, ctx.dimension, ctx.batch
    M, N = len(index_points), len(basis_points)
    shape = (B, M, N, n)
    cache = {}

    def ev(e):
        key = id(e)
        if key in cache:
            return cache[key][1]
        out = _ev(e)
        cache[key] = (e, out)
        return out

    def _ev(e):
        if isinstance(e, Var):
            onehot = (basis_points[:, e.pos][:, None] == np.arange(n)[None, :]).astype(np.int64)
            if fld.dtype is object:
                onehot = fld.array(onehot)
            return np.broadcast_to(onehot[None, None], shape)
        if isinstance(e, Lin):
            acc = fld.zeros(shape)
            for coef, t in e.terms:
                c = fld.coerce(coef)
                c = c if fld.dtype is object else int(c)
                if c:
                    acc = acc + c * ev(t)
            return fld.reduce(acc)
        if isinstance(e, Mul):
            try:
                C = ctx.products[e.name]
            except KeyError:
                raise MissingProduct(f"identity needs product {e.name!r}") from None
            arity = C.ndim - 4
            if arity != len(e.idx):
                raise ArityMismatch(f"product {e.name!r} has index arity {arity}, identity uses {len(e.idx)}")
            if arity == 0:
                Cg = np.broadcast_to(C[:, None], (B, M, n, n, n))
            else:
                sel = tuple(_index_values(ctx.table, index_points, ix) for ix in e.idx)
                Cg = C[(slice(None),) + sel]
                Cg = np.broadcast_to(Cg, (B, M, n, n, n))
            L, R = ev(e.left), ev(e.right)
            return fld.reduce(np.einsum("bMNs,bMNt,bMstu->bMNu", L, R, Cg))
        if isinstance(e, Apply):
            try:
                P = ctx.operators[e.name]
            except KeyError:
                raise MissingProduct(f"identity needs operator family {e.name!r}") from None
            Pg = np.broadcast_to(P[:, _index_values(ctx.table, index_points, e.idx)], (B, M, n, n))
            return fld.reduce(np.einsum("bMNs,bMus->bMNu", ev(e.arg), Pg))
        raise TypeError(f"not an expression: {e!r}")

    return np.broadcast_to(ev(expr), shape)
