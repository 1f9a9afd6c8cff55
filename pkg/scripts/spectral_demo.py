"""Projection search on a rank-one decomposition of the identity, then
triangularization of a conjugated triangular algebra.

    python3 scripts/spectral_demo.py --n 4 --seed 3
"""
import argparse

import numpy as np

from banachlab.opalg import algebra_closure, lemma37_search, triangularize, upper_residual
from banachlab.seqcore import Sampler


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--depth", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    n = args.n
    np.set_printoptions(precision=4, suppress=True)

    X = rng.standard_normal((n, n)) + 2 * np.eye(n)
    Xi = np.linalg.inv(X)
    decomp = [np.outer(X[:, k], Xi[k]) for k in range(n)]
    res = lemma37_search(decomp, args.depth, Sampler(args.seed, count=16))
    P = res.P
    print(f"projection found at word depth {res.depth} after {res.candidates_tried} candidates")
    print(f"spread {res.delta:.4f}, gap {res.split.gap:.4f}, polish sweeps {res.polish_sweeps}")
    print(f"rank {round(np.trace(P).real)}, ||P^2 - P|| = {np.linalg.norm(P @ P - P):.2e}, "
          f"||PS - SP|| = {np.linalg.norm(P @ res.S - res.S @ P):.2e}")

    Y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 2 * np.eye(n)
    gens = [Y @ (np.triu(rng.standard_normal((n, n)), 1) + rng.standard_normal() * np.eye(n))
            @ np.linalg.inv(Y) for _ in range(2)]
    alg = algebra_closure(gens)
    U = triangularize(alg)
    print(f"algebra of dimension {alg.dim}; triangularizing residual "
          f"{upper_residual(U, alg.trace_zero_basis()):.2e}")
    print("first trace-zero element in the recovered basis:")
    print(np.abs(U.conj().T @ alg.trace_zero_basis()[0] @ U))


if __name__ == "__main__":
    main()
