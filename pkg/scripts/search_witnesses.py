"""Search for small witnesses of a structure kind and write them as JSON files.

    python scripts/search_witnesses.py relative-pre-anti-flexible --field F3 --order 2 --relift
"""
import argparse
from pathlib import Path

from famalg.io import write_algebra
from famalg.search import SearchConfig, find_witnesses, relift


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("kind")
    ap.add_argument("--field", default="F2")
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--order", type=int, default=1, help="semigroup order")
    ap.add_argument("--sparsity", type=int, default=4)
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--exhaustive", action="store_true")
    ap.add_argument("--max-witnesses", type=int, default=50)
    ap.add_argument("--relift", action="store_true", help="try to lift F2/F3 hits to Q")
    ap.add_argument("--out", type=Path, default=Path("witnesses"))
    args = ap.parse_args()

    cfg = SearchConfig(args.kind, args.field, args.dim, args.order, sparsity=args.sparsity, samples=args.samples,
                       seed=args.seed, mode="exhaustive" if args.exhaustive else "random", nontrivial=True,
                       max_witnesses=args.max_witnesses)
    found = find_witnesses(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    lifted = 0
    for i, a in enumerate(found):
        if args.relift:
            b = relift(a)
            if b is not None:
                a, lifted = b, lifted + 1
        write_algebra(a, args.out / f"witness_{i:03d}.json")
    print(f"{len(found)} witnesses written to {args.out}" + (f", {lifted} lifted to Q" if args.relift else ""))


if __name__ == "__main__":
    main()
