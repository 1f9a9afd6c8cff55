"""Growth of ubc, absoluteness and splitting deficiency on twisted-sum sections.

    python3 scripts/kalton_peck_growth.py --sizes 4,16,64,256 --seed 0 --csv growth.csv
"""
import argparse
import csv
import time

from banachlab.sweeps import twisted_growth


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,16,64,256")
    ap.add_argument("--f", default="identity", choices=["identity", "zero", "clamp"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=64)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()

    sizes = [int(v) for v in args.sizes.split(",")]
    t0 = time.perf_counter()
    rows = twisted_growth(sizes, args.f, args.seed, count=args.count)
    print(f"{'n':>5} {'ubc':>9} {'absolute':>9} {'C(n)':>9}")
    for r in rows:
        print(f"{r.n:>5} {r.ubc:>9.4f} {r.absoluteness:>9.4f} {r.splitting:>9.4f}")
    print(f"f = {args.f}, seed {args.seed}, {time.perf_counter() - t0:.1f} s")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "ubc", "absoluteness", "splitting"])
            w.writerows([r.n, r.ubc, r.absoluteness, r.splitting] for r in rows)


if __name__ == "__main__":
    main()
