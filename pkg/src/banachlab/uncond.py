"""Estimators for unconditionality-type constants and block-basis constructions.

Every estimator returns a `ConstantEstimate`: the largest ratio found over
sampled (and optionally hinted) configurations, refined by a short seeded
local ascent, together with the configuration that attains it. The values
are lower bounds for the true suprema, never claims about them.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import linalg as sla
from scipy.optimize import linear_sum_assignment

from .errors import ConditioningError, PreconditionError
from .norms import BasisFamily, batch_norms
from .seqcore import BlockStructure, ConstantEstimate, Decomposition, Sampler

__all__ = [
    "ubc_estimate",
    "ubc_ratio",
    "absoluteness_estimate",
    "absoluteness_ratio",
    "shift_constant",
    "equivalence_constant",
    "prop26_matching",
    "Matching",
    "extract_block_basis",
    "ExtractedBasis",
    "joint_basis",
    "hermitian_stress",
    "random_hilbertian_section",
]

EXHAUSTIVE_LIMIT = 20
SAMPLED_PATTERNS = 4096
HUNT_STEPS = 200
SIGN_CHUNK = 1 << 14


def ascent(fn, x0: np.ndarray, rng: np.random.Generator, steps: int = HUNT_STEPS,
           batch: int = 16, scale: float = 0.5) -> tuple[np.ndarray, float]:
    """Maximise ``fn`` (batch -> values) by random local search with step halving."""
    x = np.asarray(x0, dtype=float).copy()
    best = float(fn(x[None, :])[0])
    size = max(float(np.linalg.norm(x)), 1e-300)
    for _ in range(steps):
        if scale < 1e-10:
            break
        g = rng.standard_normal((batch, x.size))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        cands = x + scale * size * g
        vals = fn(cands)
        vals = np.where(np.isfinite(vals), vals, -np.inf)
        i = int(np.argmax(vals))
        if vals[i] > best:
            x, best = cands[i], float(vals[i])
            size = max(float(np.linalg.norm(x)), 1e-300)
        else:
            scale *= 0.5
    return x, best


def _ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), -np.inf)


def sign_patterns(n: int, sampler: Sampler, exhaustive_limit: int = EXHAUSTIVE_LIMIT):
    """All sign patterns (first sign fixed to +, by symmetry) or a seeded sample.

    Sampled sets always contain all-plus, the alternating pattern and its
    shifted twin; all-minus is the negative of all-plus.
    """
    if n <= exhaustive_limit:
        if n == 0:
            return np.ones((1, 0)), True
        codes = np.arange(1 << (n - 1), dtype=np.int64)
        bits = (codes[:, None] >> np.arange(n - 1)) & 1
        pats = np.hstack([np.ones((codes.size, 1)), 1.0 - 2.0 * bits])
        return pats, True
    rng = sampler.rng(61)
    fixed = np.array([np.ones(n), -np.ones(n), (-1.0) ** np.arange(n), -((-1.0) ** np.arange(n))])
    rand = rng.choice([-1.0, 1.0], size=(SAMPLED_PATTERNS, n))
    return np.vstack([fixed, rand]), False


def ubc_ratio(b: BasisFamily, coeffs, signs) -> float:
    """||sum eps_i a_i x_i|| / ||sum a_i x_i||."""
    a = np.asarray(coeffs, dtype=float)
    e = np.asarray(signs, dtype=float)
    return float(b.norms_of(a * e)[0] / b.norms_of(a)[0])


def _hint_rows(hints, width: int) -> np.ndarray:
    if hints is None:
        return np.zeros((0, width))
    H = np.atleast_2d(np.asarray(hints, dtype=float))
    if H.size == 0:
        return np.zeros((0, width))
    if H.shape[1] != width:
        raise PreconditionError(f"hint vectors have {H.shape[1]} entries, expected {width}")
    return H


def ubc_estimate(b: BasisFamily, s: Sampler, hints=None,
                 exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> ConstantEstimate:
    """Lower bound on the unconditional basis constant of ``b``.

    Coefficient vectors come from the sampler plus ``hints``; each is tested
    against every sign pattern (exhaustively up to ``exhaustive_limit``
    vectors). When the sampler has a positive count the best pair is then
    refined by local ascent over the coefficients.
    """
    n = len(b)
    A = np.vstack([_hint_rows(hints, n), s.draws(n, stream=1)])
    A = A[np.any(A != 0, axis=1)]
    pats, exhaustive = sign_patterns(n, s, exhaustive_limit)
    best, best_a, best_e = 1.0, np.eye(n)[0] if n else np.zeros(0), np.ones(n)
    evals = 0
    for a in A:
        base = float(b.norms_of(a)[0])
        if base == 0:
            continue
        for lo in range(0, len(pats), SIGN_CHUNK):
            E = pats[lo:lo + SIGN_CHUNK]
            r = b.norms_of(E * a) / base
            evals += len(E)
            i = int(np.argmax(r))
            if r[i] > best:
                best, best_a, best_e = float(r[i]), a.copy(), E[i].copy()
    if s.count > 0 and n > 1 and best > 1.0:
        e = best_e

        def fn(C):
            return _ratio(b.norms_of(C * e), b.norms_of(C))

        a2, val = ascent(fn, best_a, s.rng(2))
        evals += HUNT_STEPS
        if val > best:
            best, best_a = val, a2
    best = ubc_ratio(b, best_a, best_e) if n else 1.0
    return ConstantEstimate(max(best, 1.0), {"coefficients": best_a, "signs": best_e},
                            samples_used=evals, exhaustive_signs=exhaustive,
                            notes={"kind": "ubc", "vectors": n})


def _bases(bs) -> list[np.ndarray]:
    if isinstance(bs, (BlockStructure, Decomposition)):
        return bs.embedded()
    raise PreconditionError("expected a BlockStructure or Decomposition")


def _split_coeffs(c: np.ndarray, dims: Sequence[int]) -> list[np.ndarray]:
    out, at = [], 0
    for d in dims:
        out.append(c[..., at:at + d])
        at += d
    return out


def _hint_coeffs(hints, bases) -> np.ndarray:
    """Ambient hint vectors -> stacked block coefficients."""
    full = np.hstack(bases)
    H = _hint_rows(hints, full.shape[0])
    if len(H) == 0:
        return np.zeros((0, full.shape[1]))
    c, *_ = np.linalg.lstsq(full, H.T, rcond=None)
    return c.T


def absoluteness_ratio(bs, norm, coeffs, directions) -> float:
    """||sum y_n|| / ||sum x_n|| with y_n = ||x_n|| u_n / ||u_n||.

    ``coeffs`` are the stacked block coefficients of the x_n and
    ``directions`` the stacked block coefficients of the u_n.
    """
    bases = _bases(bs)
    return float(_absoluteness_batch(bases, norm, np.atleast_2d(coeffs), np.atleast_2d(directions))[0])


def _absoluteness_batch(bases, norm, C: np.ndarray, U: np.ndarray) -> np.ndarray:
    dims = [m.shape[1] for m in bases]
    xs = [c @ m.T for c, m in zip(_split_coeffs(C, dims), bases)]
    us = [u @ m.T for u, m in zip(_split_coeffs(U, dims), bases)]
    total_x = sum(xs)
    total_y = np.zeros_like(total_x)
    for x, u in zip(xs, us):
        nx = batch_norms(norm, x)
        nu = batch_norms(norm, u)
        scale = np.where(nu > 0, nx / np.where(nu > 0, nu, 1.0), 0.0)
        total_y = total_y + scale[:, None] * u
    return _ratio(batch_norms(norm, total_y), batch_norms(norm, total_x))


def _direction_patterns(dims: Sequence[int], C: np.ndarray, rng: np.random.Generator,
                        random_dirs: int) -> list[np.ndarray]:
    """Candidate y-directions for coefficient rows C: uniform sign flips of
    the x_n's own coefficients, random per-block flips, random directions."""
    dmax = max(dims)
    out = []
    for bits in itertools.product([1.0, -1.0], repeat=dmax):
        flip = np.concatenate([np.array(bits[:d]) for d in dims])
        out.append(C * flip)
    total = sum(dims)
    for _ in range(4):
        out.append(C * rng.choice([-1.0, 1.0], size=C.shape))
    for _ in range(random_dirs):
        out.append(rng.standard_normal((C.shape[0], total)))
    return out


def absoluteness_estimate(bs, norm, s: Sampler, hints=None, random_dirs: int = 8) -> ConstantEstimate:
    """Lower bound on the smallest C with ||sum y_n|| <= C ||sum x_n|| whenever ||y_n|| <= ||x_n||."""
    bases = _bases(bs)
    dims = [m.shape[1] for m in bases]
    total = sum(dims)
    C = np.vstack([_hint_coeffs(hints, bases), s.draws(total, stream=3)])
    C = C[np.any(C != 0, axis=1)]
    rng = s.rng(4)
    best, best_c, best_u = 1.0, np.ones(total), np.ones(total)
    evals = 0
    if len(C):
        for U in _direction_patterns(dims, C, rng, random_dirs):
            r = _absoluteness_batch(bases, norm, C, U)
            evals += len(C)
            i = int(np.argmax(r))
            if r[i] > best:
                best, best_c, best_u = float(r[i]), C[i].copy(), U[i].copy()
    if s.count > 0 and best > 1.0:
        def fn(Z):
            return _absoluteness_batch(bases, norm, Z[:, :total], Z[:, total:])

        z, val = ascent(fn, np.concatenate([best_c, best_u]), s.rng(5))
        evals += HUNT_STEPS
        if val > best:
            best_c, best_u = z[:total], z[total:]
    best = absoluteness_ratio(bs, norm, best_c, best_u) if (best_c != best_u).any() else 1.0
    return ConstantEstimate(max(best, 1.0), {"coefficients": best_c, "directions": best_u},
                            samples_used=evals, notes={"kind": "absoluteness", "blocks": len(bases)})


def _two_sided_batch(num, den):
    r = _ratio(num, den)
    inv = _ratio(den, num)
    return np.maximum(r, inv)


def shift_ratio(b: BasisFamily, alpha) -> float:
    """max(B/A, A/B) with A = ||sum alpha_n x_n||, B = ||sum alpha_n x_{n+1}||."""
    a = np.atleast_2d(np.asarray(alpha, dtype=float))
    M = b.matrix
    A = batch_norms(b.norm, a @ M[:-1])
    B = batch_norms(b.norm, a @ M[1:])
    return float(_two_sided_batch(B, A)[0])


def shift_constant(b: BasisFamily, s: Sampler, hints=None) -> ConstantEstimate:
    """Lower bound on the two-sided constant comparing (x_n) with its shift (x_{n+1})."""
    K = len(b)
    if K < 2:
        raise PreconditionError("the shift needs at least two vectors")
    M = b.matrix
    A = np.vstack([_hint_rows(hints, K - 1), s.draws(K - 1, stream=6)])
    A = A[np.any(A != 0, axis=1)]

    def fn(Z):
        return _two_sided_batch(batch_norms(b.norm, Z @ M[1:]), batch_norms(b.norm, Z @ M[:-1]))

    best, best_a = 1.0, np.eye(K - 1)[0]
    if len(A):
        r = fn(A)
        i = int(np.argmax(r))
        if r[i] > best:
            best, best_a = float(r[i]), A[i].copy()
    evals = len(A)
    if s.count > 0 and best > 1.0:
        a2, val = ascent(fn, best_a, s.rng(7))
        evals += HUNT_STEPS
        if val > best:
            best, best_a = val, a2
    best = shift_ratio(b, best_a)
    return ConstantEstimate(max(best, 1.0), {"coefficients": best_a}, samples_used=evals,
                            notes={"kind": "shift", "vectors": K})


def equivalence_ratio(b1: BasisFamily, b2: BasisFamily, alpha) -> float:
    a = np.atleast_2d(np.asarray(alpha, dtype=float))
    return float(_two_sided_batch(b1.norms_of(a), b2.norms_of(a))[0])


def equivalence_constant(b1: BasisFamily, b2: BasisFamily, s: Sampler, hints=None) -> ConstantEstimate:
    """Lower bound on K with K^-1 ||sum a y|| <= ||sum a x|| <= K ||sum a y||."""
    K = len(b1)
    if len(b2) != K:
        raise PreconditionError("families must have equal length")
    A = np.vstack([_hint_rows(hints, K), np.eye(K), s.draws(K, stream=8)])
    A = A[np.any(A != 0, axis=1)]

    def fn(Z):
        return _two_sided_batch(b1.norms_of(Z), b2.norms_of(Z))

    r = fn(A)
    i = int(np.argmax(r))
    best, best_a = float(r[i]), A[i].copy()
    evals = len(A)
    if s.count > 0 and best > 1.0 + 1e-12:
        a2, val = ascent(fn, best_a, s.rng(9))
        evals += HUNT_STEPS
        if val > best:
            best, best_a = val, a2
    best = equivalence_ratio(b1, b2, best_a)
    return ConstantEstimate(max(best, 1.0), {"coefficients": best_a}, samples_used=evals,
                            notes={"kind": "equivalence", "vectors": K})


@dataclass
class Matching:
    sigma: tuple[int, ...]
    product: float
    det: float

    @property
    def bound(self) -> float:
        """|det A| / d!, the guaranteed lower bound for ``product``."""
        return self.det / math.factorial(len(self.sigma))

    def to_json(self):
        return {"sigma": list(self.sigma), "product": self.product, "abs_det": self.det,
                "det_over_factorial": self.bound}


def prop26_matching(A) -> Matching:
    """Permutation sigma maximising prod_i |a_{i, sigma(i)}| (0-based).

    Solved as an assignment problem on -log|a_ij|; zero entries get a cost
    larger than any finite one so they are used only if unavoidable (which
    nonsingularity rules out).
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise PreconditionError("matching needs a non-empty square matrix")
    d = A.shape[0]
    mag = np.abs(A).astype(float)
    det = float(abs(np.linalg.det(A)))
    hadamard = float(np.prod(np.linalg.norm(mag, axis=1)))
    if not det > 1e-12 * hadamard:
        raise PreconditionError("matrix is singular")
    nz = mag > 0
    cost = np.zeros_like(mag)
    cost[nz] = -np.log(mag[nz])
    finite_span = cost[nz].max() - cost[nz].min() if nz.any() else 0.0
    cost[~nz] = cost[nz].max() + d * (finite_span + 1.0) + 1.0
    rows, cols = linear_sum_assignment(cost)
    sigma = tuple(int(c) for c in cols[np.argsort(rows)])
    product = float(np.prod(mag[np.arange(d), sigma]))
    return Matching(sigma, product, det)


@dataclass
class ExtractedBasis:
    vectors: list[np.ndarray]
    pivots: list[list[int]]
    alphas: list[list[float]]

    def to_json(self):
        return {"vectors": [v.T.tolist() for v in self.vectors], "pivots": self.pivots,
                "alphas": self.alphas}


def extract_block_basis(bs: BlockStructure, P, norm=None, tol: float = 1e-9) -> ExtractedBasis:
    """Basis of each E_n = P(F_n) built by repeated diagonal pivoting.

    For block n: pick the coordinate k with the largest diagonal entry
    alpha = <P e_k, e_k^*> (at least 1/N by pigeonhole, N the widest block),
    take f = P e_k, and continue with (I - Q) P where Q y = y_k f / alpha.
    Vectors are returned as ambient columns, normalised in ``norm`` if given.
    """
    P = np.asarray(P, dtype=float)
    dim = bs.dim
    if P.shape != (dim, dim):
        raise PreconditionError(f"projection must be {dim}x{dim}")
    scale = max(1.0, float(np.abs(P).max()))
    if np.abs(P @ P - P).max() > tol * scale * scale:
        raise PreconditionError("P is not a projection")
    N = max(bs.boundaries[n + 1] - bs.boundaries[n] for n in range(bs.n_blocks))
    vectors, pivots, alphas = [], [], []
    for n in range(bs.n_blocks):
        w = bs.window(n)
        col = P[:, w].copy()
        col[w] = 0.0
        if np.abs(col).max(initial=0.0) > tol * scale:
            raise PreconditionError(f"P does not map block {n} into itself")
        Pn = P[w, w].copy()
        width = Pn.shape[0]
        d = int(round(float(np.trace(Pn))))
        fs, ks, als = [], [], []
        for _ in range(d):
            diag = np.diag(Pn)
            k = int(np.argmax(diag))
            alpha = float(diag[k])
            if alpha < 1.0 / N - 1e-12:
                raise PreconditionError(f"block {n}: no diagonal entry reaches 1/N")
            f = Pn[:, k].copy()
            Q = np.outer(f, np.eye(width)[k]) / alpha
            Pn = (np.eye(width) - Q) @ Pn
            fs.append(f)
            ks.append(k + bs.boundaries[n] + 1)
            als.append(alpha)
        if np.abs(Pn).max(initial=0.0) > 1e-7 * scale:
            raise ConditioningError("residual projection did not vanish", block=n)
        V = np.zeros((dim, len(fs)))
        if fs:
            V[w] = np.array(fs).T
        if norm is not None:
            for j in range(V.shape[1]):
                V[:, j] /= batch_norms(norm, V[:, j][None, :])[0]
        vectors.append(V)
        pivots.append(ks)
        alphas.append(als)
    return ExtractedBasis(vectors, pivots, alphas)


def _check_spd(G, what: str) -> np.ndarray:
    G = np.array(G, dtype=float, ndmin=2)
    if G.shape[0] != G.shape[1] or not np.allclose(G, G.T, rtol=1e-10, atol=1e-12):
        raise PreconditionError(f"{what} is not symmetric")
    try:
        np.linalg.cholesky(G)
    except np.linalg.LinAlgError:
        raise PreconditionError(f"{what} is not positive definite") from None
    return 0.5 * (G + G.T)


def joint_basis(bs: BlockStructure | None, grams2, gramsE, tol: float = 1e-10) -> list[np.ndarray]:
    """Per block, coefficients B with B^T G_E B = I and B^T G_2 B diagonal.

    This is the symmetric-definite generalized eigenproblem G_2 v = lam G_E v.
    Columns are ordered by increasing lam and signed so their largest entry
    is positive.
    """
    if bs is not None and len(grams2) != bs.n_blocks:
        raise PreconditionError("need one Gram pair per block")
    out = []
    for n, (g2, gE) in enumerate(zip(grams2, gramsE)):
        g2 = _check_spd(g2, f"l2 Gram {n}")
        gE = _check_spd(gE, f"block-norm Gram {n}")
        lam, B = sla.eigh(g2, gE)
        idx = np.argmax(np.abs(B), axis=0)
        B = B * np.sign(B[idx, np.arange(B.shape[1])])
        resE = np.abs(B.T @ gE @ B - np.eye(len(lam))).max()
        D = B.T @ g2 @ B
        res2 = np.abs(D - np.diag(np.diag(D))).max()
        if resE > tol or res2 > tol * max(1.0, np.abs(lam).max()):
            raise ConditioningError("simultaneous diagonalisation missed tolerance",
                                    block=n, residual_E=resE, residual_2=res2)
        out.append(B)
    return out


def block_grams(bs: BlockStructure) -> list[np.ndarray]:
    """l2 Gram matrices B_n^T B_n of the block bases."""
    return [m.T @ m for m in bs.blocks]


def _hermitian_contractions(G: np.ndarray, rng, count: int) -> list[np.ndarray]:
    """Operators on a block that are self-adjoint contractions for <u, v> = u^T G v."""
    d = G.shape[0]
    L = np.linalg.cholesky(G)
    Linv_T = np.linalg.inv(L.T)
    ops = []
    for bits in itertools.product([1.0, -1.0], repeat=d):
        ops.append(Linv_T @ np.diag(bits) @ L.T)
    for _ in range(count):
        Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
        sv = rng.choice([-1.0, 1.0], size=d) if rng.random() < 0.5 else rng.uniform(-1, 1, size=d)
        ops.append(Linv_T @ (Q @ np.diag(sv) @ Q.T) @ L.T)
    return ops


def hermitian_stress(bs, norm, s: Sampler, grams=None, hints=None, operators: int = 8) -> ConstantEstimate:
    """Lower bound on the best C in ||sum A_n x_n|| <= C ||sum x_n|| over
    self-adjoint contractions A_n of the per-block Euclidean structures."""
    bases = _bases(bs)
    dims = [m.shape[1] for m in bases]
    total = sum(dims)
    if grams is None:
        grams = [m.T @ m for m in bases]
    grams = [_check_spd(g, f"Euclidean Gram {n}") for n, g in enumerate(grams)]
    rng = s.rng(10)
    C = np.vstack([_hint_coeffs(hints, bases), s.draws(total, stream=11)])
    C = C[np.any(C != 0, axis=1)]
    full = np.hstack(bases)
    base_norms = batch_norms(norm, C @ full.T) if len(C) else np.zeros(0)
    per_block = [_hermitian_contractions(g, rng, operators) for g in grams]
    n_choice = max(len(p) for p in per_block)
    best, best_c, best_ops = 1.0, np.ones(total), [np.eye(d) for d in dims]
    evals = 0
    if len(C):
        # same operator index in every block, then independent random choices
        choices = [[i % len(p) for p in per_block] for i in range(n_choice)]
        choices += [[int(rng.integers(len(p))) for p in per_block] for _ in range(16)]
        for ch in choices:
            ops = [per_block[n][j] for n, j in enumerate(ch)]
            T = sla.block_diag(*ops)
            r = _ratio(batch_norms(norm, (C @ T.T) @ full.T), base_norms)
            evals += len(C)
            i = int(np.argmax(r))
            if r[i] > best:
                best, best_c, best_ops = float(r[i]), C[i].copy(), ops
    T = sla.block_diag(*best_ops)
    if s.count > 0 and best > 1.0:
        def fn(Z):
            return _ratio(batch_norms(norm, (Z @ T.T) @ full.T), batch_norms(norm, Z @ full.T))

        c2, val = ascent(fn, best_c, s.rng(12))
        evals += HUNT_STEPS
        if val > best:
            best_c = c2
    x = best_c @ full.T
    best = float(batch_norms(norm, (best_c @ T.T) @ full.T)[0] / batch_norms(norm, x)[0])
    return ConstantEstimate(max(best, 1.0), {"coefficients": best_c,
                                             "operators": [o.tolist() for o in best_ops]},
                            samples_used=evals, notes={"kind": "hermitian", "blocks": len(bases)})


def random_hilbertian_section(rng: np.random.Generator, n_blocks: int, max_width: int = 4,
                              max_distortion: float = 2.0, probes: int = 4000):
    """A random block section inside l_F with a Euclidean norm on each block.

    Block n sits in a window of width <= ``max_width`` and is spanned by a
    random subspace (l_2 Gram condition number <= 1e3); its Euclidean norm ||.||_E (Gram ``gramsE[n]`` in block
    coefficients) is scaled so that, over ``probes`` sampled directions,
    ||x||_F <= ||x||_E <= D ||x||_F with the measured D <= ``max_distortion``.
    Returns ``(bs, grams2, gramsE, distortions)``.
    """
    from .norms import OrliczGauge

    normF = OrliczGauge()
    widths = rng.integers(1, max_width + 1, size=n_blocks)
    bounds = np.concatenate([[0], np.cumsum(widths)])
    blocks, grams2, gramsE, dist = [], [], [], []
    for w in widths:
        while True:
            d = int(rng.integers(1, w + 1))
            B = rng.standard_normal((w, d))
            H = B.T @ B
            if np.linalg.cond(H) > 1e3:
                continue
            Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
            R = Q @ np.diag(rng.uniform(1.0, 1.6, size=d)) @ Q.T
            Hh = sla.sqrtm(H).real
            GE = Hh @ R @ Hh
            GE = 0.5 * (GE + GE.T)
            Z = rng.standard_normal((probes, d))
            Z = np.vstack([Z, np.eye(d)])
            eN = np.sqrt(np.einsum("ij,jk,ik->i", Z, GE, Z))
            fN = normF.norms(Z @ B.T)
            ratio = eN / fN
            GE = GE / ratio.min() ** 2
            D = float(ratio.max() / ratio.min())
            if D <= max_distortion:
                break
        blocks.append(B)
        grams2.append(H)
        gramsE.append(GE)
        dist.append(D)
    return BlockStructure(tuple(int(b) for b in bounds), tuple(blocks)), grams2, gramsE, dist
