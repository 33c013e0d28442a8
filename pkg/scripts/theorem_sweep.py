"""Run every derived construction over a pool of witnesses and tabulate failures.

    python scripts/theorem_sweep.py --per-config 10
"""
import argparse
from collections import Counter

import numpy as np

from famalg.constructions import (
    circ_identity_check, cyclic_sum_check, family_commutator, family_sum, left_pre_lie_family, pre_lie_commutator,
    relative_commutator, relative_pre_lie, relative_right_pre_lie, relative_sum, right_pre_lie_family,
)
from famalg.identities import check
from famalg.search import SearchConfig, find_witnesses, relift

REL_AF = "relative-anti-flexible"


def family_stages(a):
    br = family_commutator(a).tensor("bracket")
    return {
        "sum is relative anti-flexible": check(REL_AF, family_sum(a)).empty,
        "left pre-Lie family": check("left-pre-lie-family", left_pre_lie_family(a)).empty,
        "right pre-Lie family": check("right-pre-lie-family", right_pre_lie_family(a)).empty,
        "commutator is relative Lie": check("relative-lie", family_commutator(a)).empty,
        "left bracket = commutator": np.array_equal(pre_lie_commutator(a, "left").tensor("bracket"), br),
        "right bracket = swapped commutator": np.array_equal(
            pre_lie_commutator(a, "right").tensor("bracket"), br.transpose(1, 0, 2, 3, 4)),
        "circ identity": circ_identity_check(a).empty,
        "cyclic sum": cyclic_sum_check(a).empty,
    }


def relative_stages(a):
    return {
        "sum is relative anti-flexible": check(REL_AF, relative_sum(a)).empty,
        "relative pre-Lie": check("relative-pre-lie", relative_pre_lie(a)).empty,
        "right-symmetric": check("relative-right-symmetric", relative_right_pre_lie(a)).empty,
        "literal pre-Lie reading of the right product": check("relative-pre-lie", relative_right_pre_lie(a)).empty,
        "commutator is relative Lie": check("relative-lie", relative_commutator(a)).empty,
        "circ identity": circ_identity_check(a).empty,
        "cyclic sum": cyclic_sum_check(a).empty,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-config", type=int, default=10)
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    for kind, stages in (("pre-anti-flexible-family", family_stages), ("relative-pre-anti-flexible", relative_stages)):
        passed, total = Counter(), 0
        for tag in ("F2", "F3"):
            for m in (1, 2):
                found = find_witnesses(SearchConfig(kind, tag, 2, m, samples=args.samples, seed=args.seed,
                                                    nontrivial=True, max_witnesses=args.per_config))
                for a in found:
                    a = relift(a) or a
                    total += 1
                    for name, ok in stages(a).items():
                        passed[name] += bool(ok)
        print(f"{kind}: {total} witnesses")
        for name in passed:
            print(f"  {passed[name]:4d}/{total}  {name}")


if __name__ == "__main__":
    main()
