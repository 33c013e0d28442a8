"""Derived products, computed as index rewrites of structure tensors.

Conventions for the dense tensors used below: a family product has shape
``(m, n, n, n)`` indexed ``[w, i, j, k]``; a relative product ``(m, m, n, n, n)``
indexed ``[a, b, i, j, k]``.  "Swapping arguments" of a relative product means
transposing both the two index axes and the two input basis axes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraPresentation, FamilyProduct
from .errors import ArityMismatch, IndependenceViolation, MissingProduct
from .identities import CIRC_ASSOCIATOR, CIRC_CYCLIC, ViolationReport, check_identities
from .io import algebra_hash
from .kinds import IdentityKind

K = IdentityKind

# [a, b, i, j, k] -> [b, a, j, i, k]
_SWAP_REL = (1, 0, 3, 2, 4)
# [w, i, j, k] -> [w, j, i, k]
_SWAP_FAM = (0, 2, 1, 3)


@dataclass(frozen=True)
class DerivedAlgebra:
    source: AlgebraPresentation
    construction: str
    result: AlgebraPresentation


def _emit(a: AlgebraPresentation, tag: str, tensors: dict, kind=None) -> AlgebraPresentation:
    products = {}
    for name, t in tensors.items():
        arity = t.ndim - 3
        products[name] = FamilyProduct.from_dense(name, arity, t, a.field)
    meta = {"construction": tag, "source": algebra_hash(a)}
    return AlgebraPresentation(a.field, a.semigroup, a.dimension, products, kind, meta)


def _pair(a: AlgebraPresentation, arity: int):
    prec, succ = a.product("prec"), a.product("succ")
    for p in (prec, succ):
        if p.index_arity != arity:
            raise ArityMismatch(f"{p.name!r} has index arity {p.index_arity}, expected {arity}")
    return a.tensor("prec"), a.tensor("succ")


def star_tensor(a: AlgebraPresentation) -> np.ndarray:
    """The relative anti-flexible product underlying ``a``.

    Family prec/succ give ``succ[a] + prec[b]``; relative prec/succ give their
    sum; an arity-2 "dot" product is returned as is.
    """
    if "prec" in a.products and "succ" in a.products:
        arity = a.product("prec").index_arity
        prec, succ = _pair(a, arity)
        if arity == 1:
            return a.field.reduce(succ[:, None] + prec[None, :])
        if arity == 2:
            return a.field.reduce(prec + succ)
        raise ArityMismatch("prec/succ must have index arity 1 or 2")
    if "dot" in a.products:
        if a.product("dot").index_arity != 2:
            raise ArityMismatch("a 'dot' source must have index arity 2")
        return a.tensor("dot")
    raise MissingProduct("need prec/succ or an arity-2 'dot' product")


def family_sum(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 1)
    return _emit(a, "sum", {"dot": a.field.reduce(succ[:, None] + prec[None, :])}, K.RELATIVE_ANTI_FLEXIBLE)


def left_pre_lie_family(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 1)
    t = succ - prec.transpose(_SWAP_FAM)
    return _emit(a, "left-pre-lie", {"dot": t}, K.LEFT_PRE_LIE_FAMILY)


def right_pre_lie_family(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 1)
    t = prec - succ.transpose(_SWAP_FAM)
    return _emit(a, "right-pre-lie", {"dot": t}, K.RIGHT_PRE_LIE_FAMILY)


def _commutator(star):
    return star - star.transpose(_SWAP_REL)


def _anticommutator(star):
    return star + star.transpose(_SWAP_REL)


def family_commutator(a: AlgebraPresentation) -> AlgebraPresentation:
    return _emit(a, "commutator", {"bracket": _commutator(star_tensor(a))}, K.RELATIVE_LIE)


def family_anticommutator(a: AlgebraPresentation) -> AlgebraPresentation:
    return _emit(a, "anticommutator", {"circ": _anticommutator(star_tensor(a))})


def pre_lie_commutator(a: AlgebraPresentation, side: str = "left") -> AlgebraPresentation:
    """Commutator ``x o_a y - y o_b x`` of the left or right pre-Lie family product."""
    derived = left_pre_lie_family(a) if side == "left" else right_pre_lie_family(a)
    t = derived.tensor("dot")
    br = t[:, None] - t.transpose(_SWAP_FAM)[None, :]
    return _emit(a, f"{side}-pre-lie-commutator", {"bracket": br}, K.RELATIVE_LIE)


def relative_sum(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 2)
    return _emit(a, "sum", {"dot": prec + succ}, K.RELATIVE_ANTI_FLEXIBLE)


def relative_pre_lie(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 2)
    return _emit(a, "pre-lie", {"dot": succ - prec.transpose(_SWAP_REL)}, K.RELATIVE_PRE_LIE)


def relative_right_pre_lie(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 2)
    return _emit(a, "right-symmetric", {"dot": prec - succ.transpose(_SWAP_REL)}, K.RELATIVE_RIGHT_SYMMETRIC)


def relative_commutator(a: AlgebraPresentation) -> AlgebraPresentation:
    _pair(a, 2)
    return family_commutator(a)


def relative_anticommutator(a: AlgebraPresentation) -> AlgebraPresentation:
    _pair(a, 2)
    return family_anticommutator(a)


def circ_and_bracket(a: AlgebraPresentation) -> AlgebraPresentation:
    """Algebra carrying both the symmetrized product and the commutator of ``a``'s star product."""
    star = star_tensor(a)
    return _emit(a, "circ-bracket", {"circ": _anticommutator(star), "bracket": _commutator(star)})


def circ_identity_check(a: AlgebraPresentation, **kw) -> ViolationReport:
    return check_identities([CIRC_ASSOCIATOR], circ_and_bracket(a), **kw)


def cyclic_sum_check(a: AlgebraPresentation, **kw) -> ViolationReport:
    return check_identities([CIRC_CYCLIC], circ_and_bracket(a), **kw)


def family_to_relative(a: AlgebraPresentation) -> AlgebraPresentation:
    prec, succ = _pair(a, 1)
    m = a.order
    rel_prec = np.broadcast_to(prec[None, :], (m,) + prec.shape).copy()
    rel_succ = np.broadcast_to(succ[:, None], (m, m) + succ.shape[1:]).copy()
    kind = {K.PRE_ANTI_FLEXIBLE_FAMILY.value: K.RELATIVE_PRE_ANTI_FLEXIBLE,
            K.DENDRIFORM_FAMILY.value: K.RELATIVE_DENDRIFORM}.get(a.kind)
    return _emit(a, "embed", {"prec": rel_prec, "succ": rel_succ}, kind)


def _first_dependence(t: np.ndarray, free_axis: int):
    m = t.shape[0]
    for w1 in range(m):
        for w2 in range(m):
            ref = t[0, w2] if free_axis == 0 else t[w1, 0]
            if np.any(t[w1, w2] != ref):
                return (w1, w2)
    return None


def relative_to_family(a: AlgebraPresentation) -> AlgebraPresentation:
    """Project a relative algebra whose prec ignores its first index and succ its second."""
    prec, succ = _pair(a, 2)
    bad = _first_dependence(prec, 0)
    if bad:
        raise IndependenceViolation("prec", bad)
    bad = _first_dependence(succ, 1)
    if bad:
        raise IndependenceViolation("succ", bad)
    kind = {K.RELATIVE_PRE_ANTI_FLEXIBLE.value: K.PRE_ANTI_FLEXIBLE_FAMILY,
            K.RELATIVE_DENDRIFORM.value: K.DENDRIFORM_FAMILY}.get(a.kind)
    return _emit(a, "project", {"prec": prec[0], "succ": succ[:, 0]}, kind)


CONSTRUCTIONS = {
    "sum": lambda a: relative_sum(a) if a.product("prec").index_arity == 2 else family_sum(a),
    "left-pre-lie": left_pre_lie_family,
    "right-pre-lie": right_pre_lie_family,
    "commutator": family_commutator,
    "anticommutator": family_anticommutator,
    "pre-lie": relative_pre_lie,
    "right-symmetric": relative_right_pre_lie,
    "embed": family_to_relative,
    "project": relative_to_family,
}


def derive(construction: str, a: AlgebraPresentation) -> DerivedAlgebra:
    try:
        fn = CONSTRUCTIONS[construction]
    except KeyError:
        raise ValueError(f"unknown construction {construction!r}") from None
    return DerivedAlgebra(a, construction, fn(a))
