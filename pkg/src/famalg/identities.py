"""Defining identities of every algebra class, and the exhaustive checker.

Every identity is checked on basis tuples crossed with all assignments of its
free semigroup variables; derived indices such as ``ab`` go through the Cayley
table.  By multilinearity an empty report means the identity holds for all
vectors.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraPresentation
from .errors import ArityMismatch, MissingProduct, UnknownIdentity
from .expr import Context, Identity, evaluate, op, x, y, z
from .kinds import IdentityKind, REQUIRED_PRODUCTS, as_kind

K = IdentityKind
DEFAULT_MAX_RECORDS = 1000

prec, succ, dot, bracket = op("prec"), op("succ"), op("dot"), op("bracket")
circ = op("circ")


def rel_assoc(p, u, v, w, a, b, c):
    """Relative associator (u, v, w)_{a,b,c} of the arity-2 product ``p``."""
    return p(p(u, v, a, b), w, a + b, c) - p(u, p(v, w, b, c), a, b + c)


def _split(ident: Identity) -> list[Identity]:
    # dendriform variants force both sides of a pre-anti-flexible relation to zero
    return [
        Identity(ident.id + ":lhs", ident.index_vars, ident.args, ident.lhs),
        Identity(ident.id + ":rhs", ident.index_vars, ident.args, ident.rhs),
    ]


PREANTI1 = Identity(
    "eq:preanti1", 2, 3,
    prec(succ(x, y, "a"), z, "b") - succ(x, prec(y, z, "b"), "a"),
    prec(succ(z, y, "b"), x, "a") - succ(z, prec(y, x, "a"), "b"),
)
PREANTI2 = Identity(
    "eq:preanti2", 2, 3,
    succ(succ(x, y, "a") + prec(x, y, "b"), z, "ab") - succ(x, succ(y, z, "b"), "a"),
    prec(prec(z, y, "b"), x, "a") - prec(z, succ(y, x, "b") + prec(y, x, "a"), "ba"),
)

REL_PREANTI1 = Identity(
    "eq:relativepreanti1", 3, 3,
    prec(succ(x, y, "a", "b"), z, "ab", "c") - succ(x, prec(y, z, "b", "c"), "a", "bc"),
    prec(succ(z, y, "c", "b"), x, "cb", "a") - succ(z, prec(y, x, "b", "a"), "c", "ba"),
)
REL_PREANTI2 = Identity(
    "eq:relativepreanti2", 3, 3,
    succ(prec(x, y, "a", "b") + succ(x, y, "a", "b"), z, "ab", "c") - succ(x, succ(y, z, "b", "c"), "a", "bc"),
    prec(prec(z, y, "c", "b"), x, "cb", "a")
    - prec(z, prec(y, x, "b", "a") + succ(y, x, "b", "a"), "c", "ba"),
)

# Trivial-semigroup forms of the two relations above.  The second relation
# uses the sign that makes prec + succ anti-flexible.
ORD_PREANTI1 = Identity(
    "eq:pre-anti-flexible-rel1", 0, 3,
    prec(succ(x, y), z) - succ(x, prec(y, z)),
    prec(succ(z, y), x) - succ(z, prec(y, x)),
)
ORD_PREANTI2 = Identity(
    "eq:pre-anti-flexible-rel2", 0, 3,
    succ(succ(x, y) + prec(x, y), z) - succ(x, succ(y, z)),
    prec(prec(z, y), x) - prec(z, succ(y, x) + prec(y, x)),
)

ASSOCIATOR_ID = Identity(
    "eq:associatorid", 3, 3,
    rel_assoc(dot, x, y, z, "a", "b", "c"),
    rel_assoc(dot, z, y, x, "c", "b", "a"),
)
ANTIFLEXIBLE_EXPANDED = Identity(
    "eq:identityantiflexible", 3, 3,
    dot(dot(x, y, "a", "b"), z, "ab", "c") + dot(z, dot(y, x, "b", "a"), "c", "ba")
    - dot(dot(z, y, "c", "b"), x, "cb", "a") - dot(x, dot(y, z, "b", "c"), "a", "bc"),
)
ORD_ANTIFLEXIBLE = Identity(
    "anti-flexible", 0, 3,
    dot(dot(x, y), z) - dot(x, dot(y, z)),
    dot(dot(z, y), x) - dot(z, dot(y, x)),
)

LEFT_PRE_LIE = Identity(
    "eq:leftpreLieid", 2, 3,
    dot(dot(x, y, "a"), z, "ab") - dot(x, dot(y, z, "b"), "a"),
    dot(dot(y, x, "b"), z, "ba") - dot(y, dot(x, z, "a"), "b"),
)
RIGHT_PRE_LIE = Identity(
    "eq:rightpreLieid", 2, 3,
    dot(x, dot(y, z, "b"), "ab") - dot(dot(x, y, "a"), z, "b"),
    dot(x, dot(z, y, "a"), "ba") - dot(dot(x, z, "b"), y, "a"),
)
REL_PRE_LIE = Identity(
    "eq:preLieid", 3, 3,
    dot(dot(x, y, "a", "b"), z, "ab", "c") - dot(x, dot(y, z, "b", "c"), "a", "bc")
    - dot(dot(y, x, "b", "a"), z, "ba", "c") + dot(y, dot(x, z, "a", "c"), "b", "ac"),
)
REL_RIGHT_SYMMETRIC = Identity(
    "eq:rightLieid", 3, 3,
    dot(dot(x, y, "a", "b"), z, "ab", "c") - dot(x, dot(y, z, "b", "c"), "a", "bc")
    - dot(dot(x, z, "a", "c"), y, "ac", "b") + dot(x, dot(z, y, "c", "b"), "a", "cb"),
)
LIE_SKEW = Identity(
    "eq:LieFamilyskew", 2, 2,
    bracket(x, y, "a", "b") + bracket(y, x, "b", "a"),
    skew_pairs=True,
)
LIE_JACOBI = Identity(
    "eq:LieFamilyJacobi", 3, 3,
    bracket(bracket(x, y, "a", "b"), z, "ab", "c")
    + bracket(bracket(y, z, "b", "c"), x, "bc", "a")
    + bracket(bracket(z, x, "c", "a"), y, "ca", "b"),
)

# conclusions about the symmetrized product "circ" and the commutator "bracket"
CIRC_ASSOCIATOR = Identity(
    "circ-associator", 3, 3,
    rel_assoc(circ, x, y, z, "a", "b", "c"),
    bracket(y, bracket(x, z, "a", "c"), "b", "ac"),
)
CIRC_CYCLIC = Identity(
    "eq:identitycommutatorntiflexible", 3, 3,
    rel_assoc(circ, x, y, z, "a", "b", "c")
    + rel_assoc(circ, z, x, y, "c", "a", "b")
    + rel_assoc(circ, y, z, x, "b", "c", "a"),
)

KIND_IDENTITIES: dict[IdentityKind, list[Identity]] = {
    K.PRE_ANTI_FLEXIBLE_FAMILY: [PREANTI1, PREANTI2],
    K.DENDRIFORM_FAMILY: _split(PREANTI1) + _split(PREANTI2),
    K.RELATIVE_ANTI_FLEXIBLE: [ASSOCIATOR_ID],
    K.RELATIVE_PRE_ANTI_FLEXIBLE: [REL_PREANTI1, REL_PREANTI2],
    K.RELATIVE_DENDRIFORM: _split(REL_PREANTI1) + _split(REL_PREANTI2),
    K.LEFT_PRE_LIE_FAMILY: [LEFT_PRE_LIE],
    K.RIGHT_PRE_LIE_FAMILY: [RIGHT_PRE_LIE],
    K.RELATIVE_PRE_LIE: [REL_PRE_LIE],
    K.RELATIVE_RIGHT_SYMMETRIC: [REL_RIGHT_SYMMETRIC],
    K.RELATIVE_LIE: [LIE_SKEW, LIE_JACOBI],
    K.ORDINARY_PRE_ANTI_FLEXIBLE: [ORD_PREANTI1, ORD_PREANTI2],
    K.ORDINARY_DENDRIFORM: _split(ORD_PREANTI1) + _split(ORD_PREANTI2),
    K.ORDINARY_ANTI_FLEXIBLE: [ORD_ANTIFLEXIBLE],
}

REGISTRY: dict[str, Identity] = {}
for _ids in KIND_IDENTITIES.values():
    for _ident in _ids:
        REGISTRY[_ident.id] = _ident
for _ident in (ANTIFLEXIBLE_EXPANDED, CIRC_ASSOCIATOR, CIRC_CYCLIC):
    REGISTRY[_ident.id] = _ident


def register(ident: Identity) -> Identity:
    REGISTRY[ident.id] = ident
    return ident


def get_identity(identity_id: str) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity_id!r}") from None


def kind_of(identity_id: str):
    """The first kind whose defining list contains ``identity_id`` (or None)."""
    for kind, ids in KIND_IDENTITIES.items():
        if any(i.id == identity_id for i in ids):
            return kind
    return None


@dataclass(frozen=True)
class Violation:
    identity_id: str
    indices: tuple
    basis: tuple
    residual: tuple

    def sort_key(self):
        return (self.identity_id, self.indices, self.basis)


@dataclass
class ViolationReport:
    records: list = field(default_factory=list)
    total: int = 0
    points_checked: int = 0
    identity_ids: tuple = ()
    max_records: int = DEFAULT_MAX_RECORDS

    @property
    def empty(self) -> bool:
        return self.total == 0

    @property
    def truncated(self) -> bool:
        return self.total > len(self.records)

    def summary(self) -> dict:
        return {
            "identityCount": len(self.identity_ids),
            "pointsChecked": self.points_checked,
            "violations": self.total,
        }

    def merge(self, other: "ViolationReport") -> "ViolationReport":
        recs = sorted(self.records + other.records, key=Violation.sort_key)
        cap = min(self.max_records, other.max_records)
        return ViolationReport(
            recs[:cap], self.total + other.total, self.points_checked + other.points_checked,
            tuple(dict.fromkeys(self.identity_ids + other.identity_ids)), cap,
        )

    def to_json(self, fld) -> dict:
        return {
            "identities": list(self.identity_ids),
            "records": [
                {
                    "identityId": r.identity_id,
                    "semigroupIndices": list(r.indices),
                    "basis": list(r.basis),
                    "residual": [fld.format(v) for v in r.residual],
                }
                for r in self.records
            ],
            "truncated": self.truncated,
            "summary": self.summary(),
        }

    def to_text(self, fld) -> str:
        lines = []
        for r in self.records:
            res = ", ".join(str(fld.format(v)) for v in r.residual)
            lines.append(f"{r.identity_id} indices={list(r.indices)} basis={list(r.basis)} residual=[{res}]")
        s = self.summary()
        lines.append(
            f"# {s['violations']} violation(s) over {s['pointsChecked']} point(s), "
            f"{s['identityCount']} identity(ies)" + (" [truncated]" if self.truncated else "")
        )
        return "\n".join(lines)

    def dumps(self, fld) -> str:
        return json.dumps(self.to_json(fld), sort_keys=True)


def evaluate_identity(ident: Identity, algebra: AlgebraPresentation, operators=None,
                      index_points=None, basis_points=None):
    """Residual tensor (M, N, n) of ``ident`` plus the point arrays used."""
    for name, arity in ident.products.items():
        p = algebra.product(name)
        if p.index_arity != arity:
            raise ArityMismatch(f"{ident.id} needs {name!r} with index arity {arity}, got {p.index_arity}")
    for name in ident.operators:
        if not operators or name not in operators:
            raise MissingProduct(f"{ident.id} needs operator family {name!r}")
    if index_points is None:
        index_points = ident.index_points(algebra.order)
    if basis_points is None:
        basis_points = ident.basis_points(algebra.dimension)
    ctx = Context.of(algebra, operators)
    res = evaluate(ident.residual, ctx, index_points, basis_points)[0]
    return res, index_points, basis_points


def _check_one(ident: Identity, algebra, operators, max_records) -> ViolationReport:
    res, ipts, bpts = evaluate_identity(ident, algebra, operators)
    nz = np.nonzero(np.any(res != 0, axis=-1))
    fld = algebra.field
    records = []
    for mi, ni in zip(*nz):
        if len(records) >= max_records:
            break
        records.append(Violation(
            ident.id,
            tuple(int(v) for v in ipts[mi]),
            tuple(int(v) for v in bpts[ni]),
            tuple(fld.scalar(v) for v in res[mi, ni]),
        ))
    return ViolationReport(records, len(nz[0]), res.shape[0] * res.shape[1], (ident.id,), max_records)


def check_identities(identities, algebra: AlgebraPresentation, operators=None,
                     max_records: int = DEFAULT_MAX_RECORDS, workers: int | None = None) -> ViolationReport:
    identities = list(identities)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda i: _check_one(i, algebra, operators, max_records), identities))
    else:
        parts = [_check_one(i, algebra, operators, max_records) for i in identities]
    report = ViolationReport(max_records=max_records)
    for part in parts:
        report = report.merge(part)
    report.identity_ids = tuple(i.id for i in identities)
    return report


def required_products(kind) -> dict:
    return REQUIRED_PRODUCTS[as_kind(kind)]


def check(kind, algebra: AlgebraPresentation, max_records: int = DEFAULT_MAX_RECORDS,
          workers: int | None = None) -> ViolationReport:
    kind = as_kind(kind)
    for name, arity in REQUIRED_PRODUCTS[kind].items():
        p = algebra.product(name)
        if p.index_arity != arity:
            raise ArityMismatch(f"kind {kind.value} needs {name!r} with index arity {arity}")
    return check_identities(KIND_IDENTITIES[kind], algebra, max_records=max_records, workers=workers)


def residual(identity_id: str, algebra: AlgebraPresentation, indices, basis, operators=None) -> list:
    """LHS - RHS of one identity at a single (indices, basis tuple) point."""
    ident = get_identity(identity_id)
    ipts = np.array([tuple(indices)], dtype=np.int64).reshape(1, ident.index_vars)
    bpts = np.array([tuple(basis)], dtype=np.int64).reshape(1, ident.args)
    res, _, _ = evaluate_identity(ident, algebra, operators, ipts, bpts)
    return [algebra.field.scalar(v) for v in res[0, 0]]


def associator(algebra: AlgebraPresentation, indices, u, v, w, name: str = "dot") -> list:
    """Relative associator (u, v, w)_{a,b,c} of an arity-2 product on arbitrary vectors."""
    from .algebra import product_eval

    p = algebra.product(name)
    if p.index_arity != 2:
        raise ArityMismatch(f"the associator needs an arity-2 product, {name!r} has arity {p.index_arity}")
    a, b, c = indices
    S = algebra.semigroup
    left = product_eval(p, (S.mul(a, b), c), product_eval(p, (a, b), u, v), w)
    right = product_eval(p, (a, S.mul(b, c)), u, product_eval(p, (b, c), v, w))
    return [l - r for l, r in zip(left, right)]
