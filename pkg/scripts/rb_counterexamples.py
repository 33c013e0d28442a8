"""Compare the generalized Rota-Baxter condition and the Lie-bracket RB condition
with validity of the induced relative split structure.

Prints two explicit counterexamples on the two-dimensional algebra
e0 e0 = e0, e0 e1 = e1 e0 = e1 and then tabulates random operator samples.

    python scripts/rb_counterexamples.py --samples 200
"""
import argparse
import json
from collections import Counter

import numpy as np

from famalg.algebra import AlgebraPresentation, FamilyProduct, OperatorFamily, lift
from famalg.constructions import family_commutator
from famalg.fields import Q
from famalg.identities import check
from famalg.io import serialize_operators
from famalg.operators import (
    centrality_check, check_grb, check_grb_symmetric, check_rb_lie, induce_relative_paf,
)
from famalg.search import SearchConfig, find_witnesses, random_operators, relift
from famalg.semigroup import trivial_semigroup

KIND = "relative-pre-anti-flexible"


def e1():
    entries = {((), 0, 0, 0): 1, ((), 0, 1, 1): 1, ((), 1, 0, 1): 1}
    base = AlgebraPresentation(Q, trivial_semigroup(), 2, {"dot": FamilyProduct("dot", 0, 2, entries)})
    return lift(base, 2, kind="relative-anti-flexible")


def induced_ok(a, ops):
    return check(KIND, induce_relative_paf(a, ops)).empty


def show(a, ops, label):
    rep = check(KIND, induce_relative_paf(a, ops), max_records=1)
    print(f"{label}: operators {json.dumps(json.loads(serialize_operators(ops)))}")
    print(f"  generalized RB holds: {check_grb(a, ops).empty}")
    print(f"  symmetric-defect variant holds: {check_grb_symmetric(a, ops).empty}")
    print(f"  centrality holds: {centrality_check(a, ops).empty}")
    print(f"  RB on commutator bracket: {check_rb_lie(family_commutator(a), ops).empty}")
    print(f"  induced structure valid: {rep.empty}")
    if not rep.empty:
        print(f"  first violation: {rep.to_json(a.field)['records'][0]}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100, help="operator samples per algebra")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    a = e1()
    show(a, OperatorFamily.identity(Q, a.semigroup, 2), "identity map on E1")
    show(a, OperatorFamily(Q, a.semigroup, ([[1, 0], [0, 0]],)), "projection onto e0 on E1")

    pool = [a]
    for m in (1, 2):
        found = find_witnesses(SearchConfig("relative-anti-flexible", "F3", 2, m, sparsity=5, samples=6000,
                                            seed=11, nontrivial=True, max_witnesses=60))
        pool += [b for b in map(relift, found[::6]) if b is not None]
    rng = np.random.default_rng(args.seed)
    tally = Counter()
    for alg in pool:
        d = alg.tensor("dot")
        comm = np.array_equal(d, d.transpose(1, 0, 3, 2, 4))
        for _ in range(args.samples):
            G = random_operators(Q, alg.semigroup, alg.dimension, rng)
            tally[(comm, check_grb(alg, G).empty, check_grb_symmetric(alg, G).empty,
                   check_rb_lie(family_commutator(alg), G).empty, induced_ok(alg, G))] += 1
    print(f"\n{len(pool)} algebras x {args.samples} operators")
    print("commutative  generalized  symmetric  lieRB  induced  count")
    for key, n in sorted(tally.items()):
        print("  ".join(f"{str(v):>11}" for v in key) + f"  {n:5d}")


if __name__ == "__main__":
    main()
