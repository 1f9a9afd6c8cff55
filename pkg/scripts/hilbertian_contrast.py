"""Joint-basis ubc on random uniformly Hilbertian sections of l_F, next to
the canonical twisted-sum basis.

    python3 scripts/hilbertian_contrast.py --seeds 20 --blocks 2,4,8,16,32
"""
import argparse
import time

import numpy as np

from banachlab.sweeps import hilbertian_section_ubc, twisted_growth


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--blocks", default="2,4,8,16,32")
    ap.add_argument("--count", type=int, default=24)
    ap.add_argument("--twisted-sizes", default="4,16,64")
    args = ap.parse_args()

    blocks = [int(v) for v in args.blocks.split(",")]
    t0 = time.perf_counter()
    print(f"{'blocks':>6} {'vectors':>8} {'max ubc':>8} {'mean ubc':>9}")
    for nb in blocks:
        rows = [hilbertian_section_ubc(seed, nb, count=args.count) for seed in range(args.seeds)]
        ubc = np.array([r.ubc for r in rows])
        vecs = int(np.mean([r.vectors for r in rows]))
        print(f"{nb:>6} {vecs:>8} {ubc.max():>8.4f} {ubc.mean():>9.4f}")
    print("twisted sum, canonical basis:")
    for r in twisted_growth([int(v) for v in args.twisted_sizes.split(",")]):
        print(f"  n = {r.n:>4}  ubc {r.ubc:.4f}")
    print(f"{time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
