"""Expansion of a family or relative algebra to an ordinary algebra on A (x) k[semigroup].

Basis element ``e_i (x) a`` gets ordinary index ``i*m + a``.  Family products
use ``prec_b`` / ``succ_a`` on ``(e_i (x) a, e_j (x) b)``; relative ones use the
pair ``(a, b)``.  The output always lands in the ``ab`` slot.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraPresentation, FamilyProduct
from .errors import ArityMismatch
from .identities import ViolationReport, check
from .io import algebra_hash
from .kinds import IdentityKind
from .semigroup import trivial_semigroup

K = IdentityKind


def flat_index(i: int, alpha: int, m: int) -> int:
    return i * m + alpha


def split_index(f: int, m: int) -> tuple:
    return divmod(f, m)


@dataclass(frozen=True)
class TensorExpansion:
    source: AlgebraPresentation
    result: AlgebraPresentation

    @property
    def order(self) -> int:
        return self.source.order

    def index_map(self) -> dict:
        m = self.order
        return {(i, a): flat_index(i, a, m) for i in range(self.source.dimension) for a in range(m)}


def _expand(p: FamilyProduct, which: str, sg, n: int) -> FamilyProduct:
    m = sg.order
    entries = {}
    for (idx, i, j, k), c in p.entries.items():
        if p.index_arity == 2:
            pairs = [idx]
        elif which == "prec":   # family prec_b: the right factor's index is the label
            pairs = [(a, idx[0]) for a in range(m)]
        else:
            pairs = [(idx[0], b) for b in range(m)]
        for a, b in pairs:
            key = ((), flat_index(i, a, m), flat_index(j, b, m), flat_index(k, sg.mul(a, b), m))
            entries[key] = c
    return FamilyProduct(which, 0, n * m, entries)


def tensor_expand(a: AlgebraPresentation) -> TensorExpansion:
    prec, succ = a.product("prec"), a.product("succ")
    arity = prec.index_arity
    if arity not in (1, 2) or succ.index_arity != arity:
        raise ArityMismatch("tensor expansion needs family (arity 1) or relative (arity 2) prec/succ")
    n = a.dimension
    products = {nm: _expand(a.product(nm), nm, a.semigroup, n) for nm in ("prec", "succ")}
    meta = {"construction": "tensor", "source": algebra_hash(a)}
    result = AlgebraPresentation(a.field, trivial_semigroup(), n * a.order, products, None, meta)
    return TensorExpansion(a, result)


@dataclass
class Equivalence:
    family_report: ViolationReport
    expanded_report: ViolationReport
    expansion: TensorExpansion

    @property
    def agree(self) -> bool:
        return self.family_report.empty == self.expanded_report.empty


def equivalence_verify(a: AlgebraPresentation, max_records: int = 1000) -> Equivalence:
    exp = tensor_expand(a)
    kind = K.PRE_ANTI_FLEXIBLE_FAMILY if a.product("prec").index_arity == 1 else K.RELATIVE_PRE_ANTI_FLEXIBLE
    fam = check(kind, a, max_records=max_records)
    ordinary = check(K.ORDINARY_PRE_ANTI_FLEXIBLE, exp.result, max_records=max_records)
    return Equivalence(fam, ordinary, exp)
