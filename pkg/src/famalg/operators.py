"""Rota-Baxter type operator families: weighted, relative, generalized and Lie variants.

Operator families enter identities under the name ``"P"``; ``P(x, "a")`` is
``M_a @ x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import AlgebraPresentation, FamilyProduct, OperatorFamily
from .constructions import family_commutator
from .errors import ArityMismatch, CentralityNotSatisfied, DimensionMismatch, MissingProduct
from .expr import Identity, Lin, lin_map, op, x, y, z
from .identities import DEFAULT_MAX_RECORDS, ViolationReport, check, check_identities, register
from .io import algebra_hash
from .kinds import IdentityKind

K = IdentityKind
P = lin_map("P")
dot, bracket = op("dot"), op("bracket")


class RBVariant(str, Enum):
    WEIGHTED = "weighted"
    RELATIVE = "relative"
    GENERALIZED = "generalized"
    LIE = "lie"


WEIGHTED_ID = "eq:Rota-Bater-Family-Algebra-weiged"


def weighted_identity(weight) -> Identity:
    # ordinary product, operators indexed by the semigroup
    return Identity(
        WEIGHTED_ID, 2, 2,
        dot(P(x, "a"), P(y, "b")),
        P(dot(x, P(y, "b")), "ab") + P(dot(P(x, "a"), y), "ab") + Lin(((weight, P(dot(x, y), "ab")),)),
    )


RB_RELATIVE = register(Identity(
    "rb-relative", 2, 2,
    dot(P(x, "a"), P(y, "b"), "a", "b"),
    P(dot(P(x, "a"), y, "a", "b") + dot(x, P(y, "b"), "a", "b"), "ab"),
))


def defect(u, v, a, b, prod=dot):
    """Rota-Baxter defect ``P_ab(P_a(u) v + u P_b(v)) - P_a(u) P_b(v)`` of an arity-2 product."""
    return P(prod(P(u, a), v, a, b) + prod(u, P(v, b), a, b), a + b) - prod(P(u, a), P(v, b), a, b)


# As printed: the mirrored term enters with the opposite sign of the defect.
GRB = register(Identity(
    "eq:generalizedRB", 3, 3,
    dot(defect(x, y, "a", "b"), z, "ab", "c") - dot(z, defect(y, x, "b", "a"), "c", "ba"),
))

# Diagnostic only: the combination that the induced second relation actually
# reduces to on an anti-flexible product (both defect terms with a plus sign).
GRB_SYMMETRIC = register(Identity(
    "grb-symmetric-defect", 3, 3,
    dot(defect(x, y, "a", "b"), z, "ab", "c") + dot(z, defect(y, x, "b", "a"), "c", "ba"),
    note="diagnostic, not a defining identity",
))

CENTRALITY = register(Identity(
    "eq:comu-RB", 3, 3,
    dot(z, -defect(x, y, "a", "b"), "c", "ba"),
    dot(-defect(x, y, "a", "b"), z, "ab", "c"),
))

RB_LIE = register(Identity(
    "eq:RB_Lie", 2, 2,
    bracket(P(x, "a"), P(y, "b"), "a", "b"),
    P(bracket(x, P(y, "b"), "a", "b") + bracket(P(x, "a"), y, "a", "b"), "ab"),
))


def _check_ops(a: AlgebraPresentation, ops: OperatorFamily):
    if ops.dimension != a.dimension:
        raise DimensionMismatch(f"operators act on dimension {ops.dimension}, algebra has {a.dimension}")
    if ops.semigroup.order != a.order:
        raise DimensionMismatch("operator family and algebra use different semigroups")
    return {"P": ops}


def _need(a: AlgebraPresentation, name: str, arity: int) -> FamilyProduct:
    p = a.product(name)
    if p.index_arity != arity:
        raise ArityMismatch(f"{name!r} must have index arity {arity}, got {p.index_arity}")
    return p


def _ordinary_dot(a: AlgebraPresentation) -> AlgebraPresentation:
    flat = [p for p in a.products.values() if p.index_arity == 0]
    if "dot" in a.products and a.products["dot"].index_arity == 0:
        p = a.products["dot"]
    elif len(flat) == 1:
        p = flat[0]
    else:
        raise MissingProduct("weighted check needs exactly one arity-0 product (or one named 'dot')")
    return a.with_products({"dot": p.renamed("dot")})


def check_rb_weighted(a: AlgebraPresentation, ops: OperatorFamily, weight=0,
                      max_records: int = DEFAULT_MAX_RECORDS) -> ViolationReport:
    weight = a.field.coerce(weight)
    b = _ordinary_dot(a)
    return check_identities([weighted_identity(weight)], b, _check_ops(a, ops), max_records)


def check_rb_relative(a: AlgebraPresentation, ops: OperatorFamily,
                      max_records: int = DEFAULT_MAX_RECORDS) -> ViolationReport:
    _need(a, "dot", 2)
    return check_identities([RB_RELATIVE], a, _check_ops(a, ops), max_records)


def check_grb(a: AlgebraPresentation, ops: OperatorFamily,
              max_records: int = DEFAULT_MAX_RECORDS) -> ViolationReport:
    _need(a, "dot", 2)
    return check_identities([GRB], a, _check_ops(a, ops), max_records)


def check_grb_symmetric(a: AlgebraPresentation, ops: OperatorFamily,
                        max_records: int = DEFAULT_MAX_RECORDS) -> ViolationReport:
    _need(a, "dot", 2)
    return check_identities([GRB_SYMMETRIC], a, _check_ops(a, ops), max_records)


def centrality_check(a: AlgebraPresentation, ops: OperatorFamily,
                     max_records: int = DEFAULT_MAX_RECORDS) -> ViolationReport:
    _need(a, "dot", 2)
    return check_identities([CENTRALITY], a, _check_ops(a, ops), max_records)


def check_rb_lie(lie: AlgebraPresentation, ops: OperatorFamily,
                 max_records: int = DEFAULT_MAX_RECORDS) -> ViolationReport:
    _need(lie, "bracket", 2)
    return check_identities([RB_LIE], lie, _check_ops(lie, ops), max_records)


def induce_relative_paf(a: AlgebraPresentation, ops: OperatorFamily) -> AlgebraPresentation:
    """x prec_{a,b} y = x . G_b(y) and x succ_{a,b} y = G_a(x) . y."""
    _need(a, "dot", 2)
    _check_ops(a, ops)
    fld = a.field
    D = a.tensor("dot")
    G = ops.dense()  # G[w, l, j]: coefficient of e_l in G_w(e_j)
    prec = fld.reduce(np.einsum("abilk,blj->abijk", D, G))
    succ = fld.reduce(np.einsum("abljk,ali->abijk", D, G))
    products = {
        "prec": FamilyProduct.from_dense("prec", 2, prec, fld),
        "succ": FamilyProduct.from_dense("succ", 2, succ, fld),
    }
    meta = {"construction": "rb-induce", "source": algebra_hash(a)}
    return AlgebraPresentation(fld, a.semigroup, a.dimension, products, K.RELATIVE_PRE_ANTI_FLEXIBLE, meta)


@dataclass
class LieRBOutcome:
    centrality: ViolationReport
    induced: ViolationReport
    lie: ViolationReport

    @property
    def centrality_holds(self) -> bool:
        return self.centrality.empty

    @property
    def induced_valid(self) -> bool:
        return self.induced.empty

    @property
    def lie_rb(self) -> bool:
        return self.lie.empty

    @property
    def iff_holds(self):
        """None when centrality fails and the equivalence makes no claim."""
        if not self.centrality_holds:
            return None
        return self.induced_valid == self.lie_rb

    def to_json(self) -> dict:
        return {
            "centrality": self.centrality.summary(),
            "centralityHolds": self.centrality_holds,
            "inducedValid": self.induced_valid,
            "lieRB": self.lie_rb,
            "iffHolds": self.iff_holds,
        }


def lie_rb_pipeline(a: AlgebraPresentation, ops: OperatorFamily, strict: bool = False,
                    max_records: int = DEFAULT_MAX_RECORDS) -> LieRBOutcome:
    """Compare validity of the induced split structure with the RB property on the commutator bracket."""
    cen = centrality_check(a, ops, max_records)
    if strict and not cen.empty:
        raise CentralityNotSatisfied(f"{cen.total} centrality violation(s)")
    induced = check(K.RELATIVE_PRE_ANTI_FLEXIBLE, induce_relative_paf(a, ops), max_records)
    lie = check_rb_lie(family_commutator(a), ops, max_records)
    return LieRBOutcome(cen, induced, lie)
