"""Witness search over tiny fields, and an independent residual oracle.

Random mode draws sparse structure constants and screens whole batches at
once with the dense evaluator on machine integers; survivors are re-checked
exactly before they are returned.  Exhaustive mode walks every support of at
most ``sparsity`` entries per product with every nonzero value pattern.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian

import numpy as np

from .algebra import AlgebraPresentation, FamilyProduct, product_eval
from .errors import BudgetExhausted, OrderTooLarge, StateSpaceTooLarge, UnknownIdentity
from .expr import Context, evaluate
from .fields import Q, field_from_tag
from .identities import KIND_IDENTITIES, check
from .io import serialize_algebra
from .kinds import REQUIRED_PRODUCTS, as_kind
from .semigroup import CommutativeSemigroup, semigroup_validate

DEFAULT_CAP = 2 ** 24


@dataclass
class SearchConfig:
    kind: str
    field: str = "F2"
    dimension: int = 2
    semigroup_order: int = 1
    sparsity: int = 3
    samples: int = 10_000
    seed: int = 0
    mode: str = "random"
    cap: int = DEFAULT_CAP
    nontrivial: bool = False
    semigroup: tuple | None = None   # a fixed Cayley table; default: every table of the order
    max_witnesses: int = 50
    batch: int = 2048

    def __post_init__(self):
        if not 1 <= self.dimension <= 4:
            raise ValueError("dimension must be in 1..4")
        if not 1 <= self.semigroup_order <= 3:
            raise OrderTooLarge(f"semigroup order {self.semigroup_order} not in 1..3")
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.sparsity < 0 or self.samples < 0:
            raise ValueError("sparsity and samples must be non-negative")
        as_kind(self.kind)
        field_from_tag(self.field)


def enumerate_semigroups(order: int) -> list[CommutativeSemigroup]:
    """Every commutative associative table on {0..order-1}, in lexicographic order of the rows."""
    if not 1 <= order <= 3:
        raise OrderTooLarge(f"order {order} not in 1..3")
    out = []
    cells = [(a, b) for a in range(order) for b in range(a, order)]
    for values in cartesian(range(order), repeat=len(cells)):
        t = [[0] * order for _ in range(order)]
        for (a, b), v in zip(cells, values):
            t[a][b] = t[b][a] = v
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in cartesian(range(order), repeat=3)):
            out.append(semigroup_validate(t))
    return sorted(out, key=lambda s: s.table)


class _IntShadow:
    """Integer stand-in for Q in the batched screen; exact as long as nothing overflows."""

    dtype = np.int64
    zero, one = 0, 1

    def coerce(self, v):
        return int(v)

    def array(self, values):
        return np.asarray(values, dtype=np.int64)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def reduce(self, arr):
        return arr


class _ModShadow(_IntShadow):
    def __init__(self, p):
        self.p = p

    def coerce(self, v):
        return int(v) % self.p

    def reduce(self, arr):
        return arr % self.p


def _shadow(fld):
    return _IntShadow() if fld.dtype is object else _ModShadow(fld.characteristic)


def _batch_passes(kind, fld, sg, n, tensors) -> np.ndarray:
    B = next(iter(tensors.values())).shape[0]
    sh = _shadow(fld)
    ctx = Context(sh, sg.array, n, tensors, {}, B)
    ok = np.ones(B, dtype=bool)
    for ident in KIND_IDENTITIES[as_kind(kind)]:
        res = evaluate(ident.residual, ctx, ident.index_points(sg.order), ident.basis_points(n))
        ok &= ~np.any(res.reshape(B, -1) != 0, axis=1)
    return ok


def _layout(kind, m, n):
    """(name, arity, shape) for every required product, in name order."""
    req = REQUIRED_PRODUCTS[as_kind(kind)]
    return [(nm, ar, (m,) * ar + (n, n, n)) for nm, ar in sorted(req.items())]


def _to_algebra(fld, sg, n, kind, flat_by_name, layout) -> AlgebraPresentation:
    products = {}
    for nm, ar, shape in layout:
        t = np.asarray(flat_by_name[nm]).reshape(shape)
        entries = {}
        for pos in zip(*np.nonzero(t)):
            pos = tuple(int(p) for p in pos)
            entries[(pos[:ar],) + pos[ar:]] = fld.coerce(int(t[pos]))
        products[nm] = FamilyProduct(nm, ar, n, entries)
    return AlgebraPresentation(fld, sg, n, products, kind)


def _values(fld):
    if fld.dtype is object:
        return [-1, 1]
    return list(range(1, fld.characteristic))


def _semigroups(cfg):
    if cfg.semigroup is not None:
        return [semigroup_validate(cfg.semigroup)]
    return enumerate_semigroups(cfg.semigroup_order)


def state_space(cfg) -> int:
    fld = field_from_tag(cfg.field)
    q = len(_values(fld))
    total = 0
    for sg in _semigroups(cfg):
        per = [sum(math.comb(math.prod(shape), t) * q ** t for t in range(cfg.sparsity + 1))
               for _, _, shape in _layout(cfg.kind, sg.order, cfg.dimension)]
        total += math.prod(per)
    return total


def _random_batches(cfg, sg, fld, rng, count):
    layout = _layout(cfg.kind, sg.order, cfg.dimension)
    vals = np.array(_values(fld), dtype=np.int64)
    done = 0
    while done < count:
        B = min(cfg.batch, count - done)
        out = {}
        for nm, _, shape in layout:
            size = math.prod(shape)
            s = min(cfg.sparsity, size)
            pos = np.argsort(rng.random((B, size)), axis=1)[:, :s]
            k = rng.integers(0, s + 1, B)
            live = np.arange(s)[None, :] < k[:, None]
            v = vals[rng.integers(0, len(vals), (B, s))] * live
            flat = np.zeros((B, size), dtype=np.int64)
            np.put_along_axis(flat, pos, v, axis=1)
            out[nm] = flat
        done += B
        yield layout, out


def _exhaustive_batches(cfg, sg, fld):
    layout = _layout(cfg.kind, sg.order, cfg.dimension)
    vals = _values(fld)
    per_product = []
    for _, _, shape in layout:
        size = math.prod(shape)
        opts = []
        for t in range(min(cfg.sparsity, size) + 1):
            for support in combinations(range(size), t):
                for vs in cartesian(vals, repeat=t):
                    opts.append((support, vs))
        per_product.append((size, opts))
    chunk = {nm: [] for nm, _, _ in layout}

    def flush():
        out = {nm: np.array(rows, dtype=np.int64) for nm, rows in chunk.items()}
        for rows in chunk.values():
            rows.clear()
        return layout, out

    for combo in cartesian(*[opts for _, opts in per_product]):
        for (nm, _, _), (size, _), (support, vs) in zip(layout, per_product, combo):
            row = [0] * size
            for p, v in zip(support, vs):
                row[p] = v
            chunk[nm].append(row)
        if len(chunk[layout[0][0]]) >= cfg.batch:
            yield flush()
    if chunk[layout[0][0]]:
        yield flush()


def find_witnesses(cfg: SearchConfig) -> list[AlgebraPresentation]:
    """Algebras of ``cfg.kind`` with empty check reports, canonically sorted and deduplicated."""
    fld = field_from_tag(cfg.field)
    kind = as_kind(cfg.kind)
    sgs = _semigroups(cfg)
    if cfg.mode == "exhaustive":
        size = state_space(cfg)
        if size > cfg.cap:
            raise StateSpaceTooLarge(f"{size} candidates exceed the cap of {cfg.cap}")
    rng = np.random.default_rng(cfg.seed)
    found: dict[bytes, AlgebraPresentation] = {}
    tried = 0
    for si, sg in enumerate(sgs):
        if cfg.mode == "exhaustive":
            batches = _exhaustive_batches(cfg, sg, fld)
        else:
            share = cfg.samples // len(sgs) + (si < cfg.samples % len(sgs))
            batches = _random_batches(cfg, sg, fld, rng, share)
        for layout, flat in batches:
            B = next(iter(flat.values())).shape[0]
            tried += B
            tensors = {nm: flat[nm].reshape((B,) + shape) for nm, _, shape in layout}
            ok = _batch_passes(kind, fld, sg, cfg.dimension, tensors)
            for b in np.nonzero(ok)[0]:
                a = _to_algebra(fld, sg, cfg.dimension, kind, {nm: flat[nm][b] for nm in flat}, layout)
                if cfg.nontrivial and a.entry_count() == 0:
                    continue
                key = serialize_algebra(a)
                if key in found:
                    continue
                if not check(kind, a).empty:
                    # the integer screen can only be optimistic if values overflowed
                    continue
                found[key] = a
    if not cfg.nontrivial and not any(a.entry_count() == 0 for a in found.values()):
        layout = _layout(kind, sgs[0].order, cfg.dimension)
        zero = _to_algebra(fld, sgs[0], cfg.dimension, kind,
                           {nm: np.zeros(math.prod(shape), dtype=np.int64) for nm, _, shape in layout}, layout)
        found[serialize_algebra(zero)] = zero
    if not found:
        raise BudgetExhausted(tried)
    ordered = [found[k] for k in sorted(found, key=lambda k: (len(k), k))]
    return ordered[: cfg.max_witnesses]


def relift(a: AlgebraPresentation, kind=None, max_patterns: int = 4096):
    """A rational algebra with the same support and +-1 coefficients that passes ``kind``.

    Over F_3 the symmetric lift (1 -> 1, 2 -> -1) is tried first.  Sign
    patterns are then tried in binary-counting order.  Returns None if none
    of the first ``max_patterns`` patterns validates.
    """
    kind = as_kind(kind or a.kind)
    keys = [(nm, key) for nm, p in sorted(a.products.items()) for key in p.entries]
    base = []
    for nm, key in keys:
        v = int(a.products[nm].entries[key])
        base.append(-1 if a.field.characteristic == 3 and v == 2 else 1)

    def build(signs):
        prods = {}
        for nm, p in a.products.items():
            prods[nm] = {}
        for (nm, key), s in zip(keys, signs):
            prods[nm][key] = Fraction(s)
        products = {nm: FamilyProduct(nm, a.products[nm].index_arity, a.dimension, e) for nm, e in prods.items()}
        return AlgebraPresentation(Q, a.semigroup, a.dimension, products, kind, {"relift": a.field.tag})

    first = build(base)
    if check(kind, first).empty:
        return first
    for t, flips in enumerate(cartesian((1, -1), repeat=len(keys))):
        if t >= max_patterns:
            break
        cand = build([b * f for b, f in zip(base, flips)])
        if check(kind, cand).empty:
            return cand
    return None


def random_algebra(kind, fld, semigroup, dimension, rng, sparsity=None, values=None, products=None):
    """A random algebra carrying the products ``kind`` needs (or ``products``: name -> arity).

    ``sparsity`` caps the nonzero entries per product (dense when None);
    ``values`` is the pool nonzero entries are drawn from.
    """
    req = products if products is not None else REQUIRED_PRODUCTS[as_kind(kind)]
    values = values or _values(fld)
    m = semigroup.order
    out = {}
    for nm, ar in sorted(req.items()):
        shape = (m,) * ar + (dimension,) * 3
        size = math.prod(shape)
        k = size if sparsity is None else int(rng.integers(0, min(sparsity, size) + 1))
        flat = np.zeros(size, dtype=object)
        for pos in rng.choice(size, size=k, replace=False):
            flat[pos] = values[int(rng.integers(0, len(values)))]
        if sparsity is None:
            # dense mode: also allow zeros
            flat[rng.random(size) < 0.5] = 0
        entries = {}
        for pos in zip(*np.nonzero(flat.reshape(shape))):
            pos = tuple(int(p) for p in pos)
            entries[(pos[:ar],) + pos[ar:]] = flat.reshape(shape)[pos]
        out[nm] = FamilyProduct(nm, ar, dimension, entries)
    kind = None if products is not None else kind
    return AlgebraPresentation(fld, semigroup, dimension, out, kind)


def random_operators(fld, semigroup, dimension, rng, values=(-1, 0, 1)):
    from .algebra import OperatorFamily

    mats = [[[values[int(rng.integers(0, len(values)))] for _ in range(dimension)] for _ in range(dimension)]
            for _ in range(semigroup.order)]
    return OperatorFamily(fld, semigroup, tuple(mats))


# ---------------------------------------------------------------- oracle

def _add(*vs):
    out = list(vs[0])
    for v in vs[1:]:
        out = [p + q for p, q in zip(out, v)]
    return out


def _neg(v):
    return [-c for c in v]


def _sub(u, v):
    return _add(u, _neg(v))


def _scale(c, v):
    return [c * t for t in v]


class _Oracle:
    def __init__(self, a, ops, weight):
        self.a, self.ops, self.S = a, ops, a.semigroup
        self.weight = weight

    def m(self, name, idx, u, v):
        return product_eval(self.a.product(name), idx, u, v)

    def P(self, w, u):
        return self.ops.apply(w, u)

    def ab(self, *e):
        return self.S.mul(*e)

    # --- family split relations
    def preanti1(self, a, b, x, y, z):
        pr = lambda u, v, w: self.m("prec", (w,), u, v)
        su = lambda u, v, w: self.m("succ", (w,), u, v)
        lhs = _sub(pr(su(x, y, a), z, b), su(x, pr(y, z, b), a))
        rhs = _sub(pr(su(z, y, b), x, a), su(z, pr(y, x, a), b))
        return lhs, rhs

    def preanti2(self, a, b, x, y, z):
        pr = lambda u, v, w: self.m("prec", (w,), u, v)
        su = lambda u, v, w: self.m("succ", (w,), u, v)
        lhs = _sub(su(_add(su(x, y, a), pr(x, y, b)), z, self.ab(a, b)), su(x, su(y, z, b), a))
        rhs = _sub(pr(pr(z, y, b), x, a), pr(z, _add(su(y, x, b), pr(y, x, a)), self.ab(b, a)))
        return lhs, rhs

    def relpreanti1(self, a, b, c, x, y, z):
        pr = lambda u, v, i, j: self.m("prec", (i, j), u, v)
        su = lambda u, v, i, j: self.m("succ", (i, j), u, v)
        lhs = _sub(pr(su(x, y, a, b), z, self.ab(a, b), c), su(x, pr(y, z, b, c), a, self.ab(b, c)))
        rhs = _sub(pr(su(z, y, c, b), x, self.ab(c, b), a), su(z, pr(y, x, b, a), c, self.ab(b, a)))
        return lhs, rhs

    def relpreanti2(self, a, b, c, x, y, z):
        pr = lambda u, v, i, j: self.m("prec", (i, j), u, v)
        su = lambda u, v, i, j: self.m("succ", (i, j), u, v)
        lhs = _sub(su(_add(pr(x, y, a, b), su(x, y, a, b)), z, self.ab(a, b), c),
                   su(x, su(y, z, b, c), a, self.ab(b, c)))
        rhs = _sub(pr(pr(z, y, c, b), x, self.ab(c, b), a),
                   pr(z, _add(pr(y, x, b, a), su(y, x, b, a)), c, self.ab(b, a)))
        return lhs, rhs

    def ordpreanti1(self, x, y, z):
        pr = lambda u, v: self.m("prec", (), u, v)
        su = lambda u, v: self.m("succ", (), u, v)
        return _sub(pr(su(x, y), z), su(x, pr(y, z))), _sub(pr(su(z, y), x), su(z, pr(y, x)))

    def ordpreanti2(self, x, y, z):
        pr = lambda u, v: self.m("prec", (), u, v)
        su = lambda u, v: self.m("succ", (), u, v)
        lhs = _sub(su(_add(su(x, y), pr(x, y)), z), su(x, su(y, z)))
        rhs = _sub(pr(pr(z, y), x), pr(z, _add(su(y, x), pr(y, x))))
        return lhs, rhs

    # --- associator based
    def assoc(self, name, a, b, c, x, y, z):
        d = lambda u, v, i, j: self.m(name, (i, j), u, v)
        return _sub(d(d(x, y, a, b), z, self.ab(a, b), c), d(x, d(y, z, b, c), a, self.ab(b, c)))

    def dot2(self, u, v, i, j):
        return self.m("dot", (i, j), u, v)

    def defect(self, u, v, a, b):
        d, P = self.dot2, self.P
        inner = _add(d(P(a, u), v, a, b), d(u, P(b, v), a, b))
        return _sub(P(self.ab(a, b), inner), d(P(a, u), P(b, v), a, b))


def _oracle_pair(ident_id, o: _Oracle, idx, x, y, z):
    """(lhs, rhs) of the identity, computed with nested products on vectors."""
    S = o.S
    if ident_id == "eq:preanti1":
        return o.preanti1(*idx, x, y, z)
    if ident_id == "eq:preanti2":
        return o.preanti2(*idx, x, y, z)
    if ident_id == "eq:relativepreanti1":
        return o.relpreanti1(*idx, x, y, z)
    if ident_id == "eq:relativepreanti2":
        return o.relpreanti2(*idx, x, y, z)
    if ident_id == "eq:pre-anti-flexible-rel1":
        return o.ordpreanti1(x, y, z)
    if ident_id == "eq:pre-anti-flexible-rel2":
        return o.ordpreanti2(x, y, z)
    if ident_id == "eq:associatorid":
        a, b, c = idx
        return o.assoc("dot", a, b, c, x, y, z), o.assoc("dot", c, b, a, z, y, x)
    if ident_id == "eq:identityantiflexible":
        a, b, c = idx
        d = o.dot2
        t1 = d(d(x, y, a, b), z, S.mul(a, b), c)
        t2 = d(z, d(y, x, b, a), c, S.mul(b, a))
        t3 = d(d(z, y, c, b), x, S.mul(c, b), a)
        t4 = d(x, d(y, z, b, c), a, S.mul(b, c))
        return _add(t1, t2), _add(t3, t4)
    if ident_id == "anti-flexible":
        d = lambda u, v: o.m("dot", (), u, v)
        return _sub(d(d(x, y), z), d(x, d(y, z))), _sub(d(d(z, y), x), d(z, d(y, x)))
    if ident_id in ("eq:leftpreLieid", "eq:rightpreLieid"):
        a, b = idx
        d = lambda u, v, w: o.m("dot", (w,), u, v)
        if ident_id == "eq:leftpreLieid":
            lhs = _sub(d(d(x, y, a), z, S.mul(a, b)), d(x, d(y, z, b), a))
            rhs = _sub(d(d(y, x, b), z, S.mul(b, a)), d(y, d(x, z, a), b))
        else:
            lhs = _sub(d(x, d(y, z, b), S.mul(a, b)), d(d(x, y, a), z, b))
            rhs = _sub(d(x, d(z, y, a), S.mul(b, a)), d(d(x, z, b), y, a))
        return lhs, rhs
    if ident_id == "eq:preLieid":
        a, b, c = idx
        return o.assoc("dot", a, b, c, x, y, z), o.assoc("dot", b, a, c, y, x, z)
    if ident_id == "eq:rightLieid":
        a, b, c = idx
        return o.assoc("dot", a, b, c, x, y, z), o.assoc("dot", a, c, b, x, z, y)
    if ident_id == "eq:LieFamilyskew":
        a, b = idx
        br = o.m("bracket", (a, b), x, y)
        return _add(br, o.m("bracket", (b, a), y, x)), _scale(0, br)
    if ident_id == "eq:LieFamilyJacobi":
        a, b, c = idx
        br = lambda u, v, i, j: o.m("bracket", (i, j), u, v)
        s = _add(br(br(x, y, a, b), z, S.mul(a, b), c),
                 br(br(y, z, b, c), x, S.mul(b, c), a),
                 br(br(z, x, c, a), y, S.mul(c, a), b))
        return s, _scale(0, s)
    if ident_id == "circ-associator":
        a, b, c = idx
        br = lambda u, v, i, j: o.m("bracket", (i, j), u, v)
        return o.assoc("circ", a, b, c, x, y, z), br(y, br(x, z, a, c), b, S.mul(a, c))
    if ident_id == "eq:identitycommutatorntiflexible":
        a, b, c = idx
        s = _add(o.assoc("circ", a, b, c, x, y, z), o.assoc("circ", c, a, b, z, x, y),
                 o.assoc("circ", b, c, a, y, z, x))
        return s, _scale(0, s)
    if ident_id == "rb-relative":
        a, b = idx
        d, P = o.dot2, o.P
        return d(P(a, x), P(b, y), a, b), P(S.mul(a, b), _add(d(P(a, x), y, a, b), d(x, P(b, y), a, b)))
    if ident_id in ("eq:generalizedRB", "grb-symmetric-defect"):
        a, b, c = idx
        left = o.dot2(o.defect(x, y, a, b), z, S.mul(a, b), c)
        right = o.dot2(z, o.defect(y, x, b, a), c, S.mul(b, a))
        total = _sub(left, right) if ident_id == "eq:generalizedRB" else _add(left, right)
        return total, _scale(0, total)
    if ident_id == "eq:comu-RB":
        a, b, c = idx
        D = _neg(o.defect(x, y, a, b))
        return o.dot2(z, D, c, S.mul(b, a)), o.dot2(D, z, S.mul(a, b), c)
    if ident_id == "eq:RB_Lie":
        a, b = idx
        br = lambda u, v: o.m("bracket", (a, b), u, v)
        P = o.P
        return br(P(a, x), P(b, y)), P(S.mul(a, b), _add(br(x, P(b, y)), br(P(a, x), y)))
    if ident_id == "eq:Rota-Bater-Family-Algebra-weiged":
        a, b = idx
        name = "dot" if "dot" in o.a.products else next(iter(o.a.products))
        d = lambda u, v: o.m(name, (), u, v)
        P = o.P
        ab = S.mul(a, b)
        rhs = _add(P(ab, d(x, P(b, y))), P(ab, d(P(a, x), y)), _scale(o.weight, P(ab, d(x, y))))
        return d(P(a, x), P(b, y)), rhs
    raise UnknownIdentity(f"the oracle has no formula for {ident_id!r}")


def oracle_vector_residual(identity_id: str, a: AlgebraPresentation, indices, vectors, operators=None,
                           weight=0) -> list:
    """LHS - RHS of an identity on arbitrary vectors, from nested vector products only."""
    fld = a.field
    vecs = list(vectors) + [[fld.zero] * a.dimension] * (3 - len(vectors))
    x, y, z = vecs
    ops = operators.get("P") if isinstance(operators, dict) else operators
    o = _Oracle(a, ops, fld.coerce(weight))
    base, side = identity_id, None
    if identity_id.endswith((":lhs", ":rhs")):
        base, side = identity_id[:-4], identity_id[-3:]
    lhs, rhs = _oracle_pair(base, o, tuple(indices), x, y, z)
    if side == "lhs":
        return lhs
    if side == "rhs":
        return rhs
    return _sub(lhs, rhs)


def oracle_residual(identity_id: str, a: AlgebraPresentation, point, operators=None, weight=0) -> list:
    """Residual at ``point = (indices, basis)``; the independent twin of ``identities.residual``."""
    indices, basis = point
    return oracle_vector_residual(identity_id, a, indices, [a.basis(i) for i in basis], operators, weight)
