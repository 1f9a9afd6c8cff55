"""Small dense complex matrix algebra: eigenvalues, algebras generated by
families, simultaneous triangularization, and spectral projections built as
explicit polynomials in a single matrix.

Matrices are plain ``numpy`` complex arrays of size n <= 12.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg as sla

from .errors import ConditioningError, ConvergenceError, PreconditionError, SearchExhaustedError
from .seqcore import Sampler, parallel_map

__all__ = [
    "as_matrix",
    "eigenvalues",
    "spectral_radius",
    "trace",
    "is_triangular_element",
    "is_nilpotent",
    "OperatorFamily",
    "MatrixAlgebra",
    "algebra_closure",
    "triangularize",
    "SpectrumSplit",
    "cluster_split",
    "spectral_projection",
    "ProjectionSearch",
    "lemma37_search",
    "family_bound",
    "lemma36_bound",
    "triangular_distance_check",
    "split_uniform_ufdd",
    "lattice_factorization_norm",
    "khintchine_sides",
]

MAX_N = 12
DELTA_MIN = 1e-6
POLISH_TOL = 1e-9
POST_TOL = 1e-6


def as_matrix(A, max_n: int = MAX_N) -> np.ndarray:
    """Validate and convert to a square complex array."""
    A = np.array(A, dtype=complex, ndmin=2)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] > max_n:
        raise PreconditionError(f"matrices are limited to n <= {max_n}")
    if not np.all(np.isfinite(A)):
        raise PreconditionError("matrix has non-finite entries")
    return A


# ---------------------------------------------------------------- eigenvalues

def _wilkinson_shift(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closer to d."""
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(tr * tr / 4 - det)
    l1, l2 = tr / 2 + disc, tr / 2 - disc
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def _qr_eigenvalues(A: np.ndarray, max_iter: int) -> list[complex] | None:
    n = A.shape[0]
    H = sla.hessenberg(A).astype(complex)
    eps = np.finfo(float).eps
    out: list[complex] = []
    hi = n - 1
    its = 0
    stall = 0
    while hi >= 0:
        if hi == 0:
            out.append(complex(H[0, 0]))
            break
        # locate the start of the trailing unreduced block
        lo = hi
        while lo > 0:
            scale = abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])
            if scale == 0:
                scale = np.abs(H).max()
            if abs(H[lo, lo - 1]) <= eps * scale:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out.append(complex(H[hi, hi]))
            hi -= 1
            stall = 0
            continue
        if its >= max_iter:
            return None
        its += 1
        stall += 1
        if stall % 11 == 0:
            # exceptional shift to break cycles
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * (1 + 1j)
        else:
            mu = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        blk = H[lo:hi + 1, lo:hi + 1]
        eye = np.eye(blk.shape[0])
        Q, R = np.linalg.qr(blk - mu * eye)
        H[lo:hi + 1, lo:hi + 1] = R @ Q + mu * eye
    return out


def charpoly(A: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients (highest degree first), Faddeev-LeVerrier."""
    n = A.shape[0]
    c = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + c[k - 1] * eye
        c[k] = -np.trace(A @ Mk) / k
    return c


def _durand_kerner(coeffs: np.ndarray, max_iter: int = 2000) -> np.ndarray | None:
    n = len(coeffs) - 1
    radius = 1 + np.abs(coeffs[1:]).max(initial=0.0)
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    for _ in range(max_iter):
        pz = np.polyval(coeffs, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        step = pz / diff.prod(axis=1)
        z = z - step
        if np.abs(step).max() <= 1e-15 * max(1.0, np.abs(z).max()):
            return z
    return None


def eigenvalues(A, max_iter: int | None = None) -> list[complex]:
    """All eigenvalues with algebraic multiplicity.

    Hessenberg reduction then Wilkinson-shifted QR with deflation, capped at
    500 n iterations; on failure, Durand-Kerner on the characteristic
    polynomial.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if max_iter is None:
        max_iter = 500 * n
    eig = _qr_eigenvalues(A, max_iter)
    if eig is not None:
        return sorted(eig, key=lambda z: (z.real, z.imag))
    roots = _durand_kerner(charpoly(A))
    if roots is None:
        raise ConvergenceError("eigenvalue iteration did not converge", n=n,
                               norm=float(np.linalg.norm(A, 2)), iterations=max_iter)
    return sorted((complex(r) for r in roots), key=lambda z: (z.real, z.imag))


def trace(A) -> complex:
    return complex(np.trace(as_matrix(A)))


def spectral_radius(A) -> float:
    return float(max(abs(e) for e in eigenvalues(A)))


def is_triangular_element(A, tol: float = 1e-7) -> bool:
    """True iff r(A - (tr A / n) I) <= tol."""
    A = as_matrix(A)
    n = A.shape[0]
    return spectral_radius(A - np.trace(A) / n * np.eye(n)) <= tol


def is_nilpotent(A, tol: float = 1e-7) -> bool:
    """||A^n|| <= tol max(||A||, 1)^n.

    More robust than an eigenvalue test: eigenvalues of a perturbed
    nilpotent move by roughly (machine eps)^(1/n).
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    nrm = max(float(np.linalg.norm(A, 2)), 1.0)
    return float(np.linalg.norm(np.linalg.matrix_power(A / nrm, n), 2)) <= tol


# ---------------------------------------------------------------- algebras

@dataclass(frozen=True, eq=False)
class OperatorFamily:
    members: tuple[np.ndarray, ...]
    includes_identity: bool = False

    def __post_init__(self):
        ms = [as_matrix(m) for m in self.members]
        if not ms:
            raise PreconditionError("empty operator family")
        n = ms[0].shape[0]
        if any(m.shape != (n, n) for m in ms):
            raise PreconditionError("family members differ in size")
        if self.includes_identity and not any(np.allclose(m, np.eye(n)) for m in ms):
            ms.append(np.eye(n, dtype=complex))
        object.__setattr__(self, "members", tuple(ms))

    @property
    def n(self) -> int:
        return self.members[0].shape[0]

    @property
    def bound(self) -> float:
        return max(float(np.linalg.norm(m, 2)) for m in self.members)


def _orth_span(mats: Sequence[np.ndarray], tol: float = 1e-10) -> np.ndarray:
    """Orthonormal (Frobenius) basis of the span of ``mats`` as rows of vec's."""
    if not len(mats):
        return np.zeros((0, 0), dtype=complex)
    V = np.array([np.asarray(m).ravel() for m in mats], dtype=complex)
    U, s, Vh = np.linalg.svd(V, full_matrices=False)
    scale = max(s.max(initial=0.0), 1.0)
    r = int(np.sum(s > tol * scale))
    return Vh[:r]


@dataclass(frozen=True, eq=False)
class MatrixAlgebra:
    """A matrix algebra stored as a Frobenius-orthonormal basis."""

    basis: tuple[np.ndarray, ...]
    n: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _vecs(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.n * self.n), dtype=complex)
        return np.array([b.ravel() for b in self.basis])

    def project(self, X) -> np.ndarray:
        """Frobenius-orthogonal projection of X onto the algebra."""
        V = self._vecs()
        x = np.asarray(X, dtype=complex).ravel()
        return (V.T @ (V.conj() @ x)).reshape(self.n, self.n)

    def distance(self, X) -> float:
        """dist_F(X, A) / sqrt(n), a lower bound for the operator-norm distance."""
        X = np.asarray(X, dtype=complex)
        return float(np.linalg.norm(X - self.project(X)) / math.sqrt(self.n))

    def contains(self, X, tol: float = 1e-9) -> bool:
        X = np.asarray(X, dtype=complex)
        return float(np.linalg.norm(X - self.project(X))) <= tol * max(1.0, float(np.linalg.norm(X)))

    def closure_residual(self) -> float:
        worst = 0.0
        for a, b in itertools.product(self.basis, repeat=2):
            p = a @ b
            worst = max(worst, float(np.linalg.norm(p - self.project(p))))
        return worst

    def nilpotent_parts(self) -> list[np.ndarray]:
        """B - (tr B / n) I for each basis element; these span the trace-zero ideal
        of a triangular algebra (together with zero)."""
        eye = np.eye(self.n)
        return [b - np.trace(b) / self.n * eye for b in self.basis]

    def trace_zero_basis(self) -> list[np.ndarray]:
        """Basis of the trace-zero subspace of the algebra."""
        tr = np.array([np.trace(b) for b in self.basis])
        if not len(tr):
            return []
        if np.abs(tr).max() < 1e-12:
            return list(self.basis)
        null = sla.null_space(tr[None, :])
        return [sum(c * b for c, b in zip(col, self.basis)) for col in null.T]

    def is_triangular(self, tol: float = 1e-7, probes: int = 8, seed: int = 0) -> bool:
        parts = self.nilpotent_parts()
        if not all(is_nilpotent(p, tol) for p in parts):
            return False
        rng = np.random.default_rng(seed)
        for _ in range(probes if len(parts) > 1 else 0):
            c = rng.standard_normal(len(parts)) + 1j * rng.standard_normal(len(parts))
            if not is_nilpotent(sum(ci * p for ci, p in zip(c, parts)), tol):
                return False
        return True


def _has_invertible_scalar_part(B: Sequence[np.ndarray], rng: np.random.Generator) -> bool:
    """True if a random element of span(B) is (nonzero scalar) + nilpotent.

    Such an element is invertible, so the algebra contains I by
    Cayley-Hamilton; the identity may otherwise only appear through a tiny
    power coefficient that rounding noise swamps.
    """
    c = rng.standard_normal(len(B)) + 1j * rng.standard_normal(len(B))
    M = sum(ci * b for ci, b in zip(c, B))
    n = M.shape[0]
    mean = np.trace(M) / n
    return abs(mean) > 1e-8 * float(np.linalg.norm(M)) and is_nilpotent(M - mean * np.eye(n))


def algebra_closure(gens, tol: float = 1e-10) -> MatrixAlgebra:
    """Span of all words in ``gens``.

    The identity is added only when the algebra provably contains it (see
    `_has_invertible_scalar_part`).
    """
    mats = [as_matrix(g) for g in gens]
    if not mats:
        raise PreconditionError("need at least one generator")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise PreconditionError("generators differ in size")
    rng = np.random.default_rng(0)
    eye = np.eye(n, dtype=complex)
    unital = False
    basis = _orth_span(mats, tol)
    while True:
        B = [v.reshape(n, n) for v in basis]
        if not unital and _has_invertible_scalar_part(B, rng):
            unital = True
        prods = [a @ b for a in B for b in B]
        grown = _orth_span(B + prods + ([eye] if unital else []), tol)
        if grown.shape[0] == basis.shape[0]:
            break
        basis = grown
    return MatrixAlgebra(tuple(v.reshape(n, n) for v in basis), n)


def triangularize(alg: MatrixAlgebra, tol: float = 1e-7) -> np.ndarray:
    """Unitary U whose columns e_1..e_n satisfy (e_j, A e_k) = 0 for j <= k and
    every trace-zero member A.

    The flag E_1 < E_2 < ... is grown one dimension at a time by picking x
    orthogonal to E_{k-1} with N x in E_{k-1} for each nilpotent part N; then
    e_k is the unit vector added at step n - k + 1.
    """
    n = alg.n
    if not alg.is_triangular(tol):
        raise PreconditionError("algebra is not triangular")
    parts = alg.nilpotent_parts()
    scale = max([1.0] + [float(np.linalg.norm(p, 2)) for p in parts])
    flag = np.zeros((n, 0), dtype=complex)
    for k in range(n):
        comp = sla.null_space(flag.conj().T) if flag.shape[1] else np.eye(n, dtype=complex)
        if not parts:
            x = comp[:, 0]
        else:
            proj_out = np.eye(n) - flag @ flag.conj().T
            M = np.vstack([proj_out @ p @ comp for p in parts])
            _, s, Vh = np.linalg.svd(M)
            if s[-1] > tol * scale:
                raise ConditioningError("no admissible flag vector: algebra is not triangular",
                                        step=k + 1, residual=float(s[-1]))
            x = comp @ Vh[-1].conj()
        x = x / np.linalg.norm(x)
        big = x[np.argmax(np.abs(x))]
        x = x * (abs(big) / big)
        flag = np.hstack([flag, x[:, None]])
    return flag[:, ::-1]


def upper_residual(U: np.ndarray, mats: Sequence[np.ndarray]) -> float:
    """max over mats and j <= k of |(e_j, A e_k)| in the basis given by U's columns."""
    worst = 0.0
    mask = np.triu(np.ones((U.shape[0],) * 2, dtype=bool))
    for A in mats:
        B = U.conj().T @ A @ U
        worst = max(worst, float(np.abs(B[mask]).max(initial=0.0)))
    return worst


# ---------------------------------------------------------------- projections

@dataclass(frozen=True)
class SpectrumSplit:
    eigenvalues: tuple[complex, ...]
    group_one: tuple[int, ...]
    gap: float

    def __post_init__(self):
        n = len(self.eigenvalues)
        g = tuple(sorted(set(int(i) for i in self.group_one)))
        if not g or len(g) >= n or g[0] < 0 or g[-1] >= n:
            raise PreconditionError("group_one must be a proper non-empty index subset")
        object.__setattr__(self, "group_one", g)
        object.__setattr__(self, "eigenvalues", tuple(complex(e) for e in self.eigenvalues))
        if not self.gap > 0:
            raise PreconditionError("spectrum split needs a positive cross-group gap")

    @property
    def group_two(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.eigenvalues)) if i not in self.group_one)

    @classmethod
    def from_groups(cls, eigs, group_one) -> "SpectrumSplit":
        eigs = [complex(e) for e in eigs]
        g1 = set(int(i) for i in group_one)
        cross = [abs(eigs[i] - eigs[j]) for i in g1 for j in range(len(eigs)) if j not in g1]
        return cls(tuple(eigs), tuple(g1), min(cross) if cross else 0.0)

    def swapped(self) -> "SpectrumSplit":
        return SpectrumSplit(self.eigenvalues, self.group_two, self.gap)

    def to_json(self):
        return {"eigenvalues": [[e.real, e.imag] for e in self.eigenvalues],
                "group_one": list(self.group_one), "gap": self.gap}


def cluster_split(eigs, delta: float, n: int | None = None) -> SpectrumSplit:
    """Split eigenvalues into the component (at linking distance delta / 2n)
    containing the smallest-modulus eigenvalue and the rest."""
    eigs = [complex(e) for e in eigs]
    n = len(eigs) if n is None else n
    if len(eigs) < 2:
        raise PreconditionError("need at least two eigenvalues")
    E = np.array(eigs)
    D = np.abs(E[:, None] - E[None, :])
    if not D.max() >= delta or not delta > 0:
        raise PreconditionError(f"eigenvalue spread {D.max():.3g} is below delta = {delta!r}")
    thr = delta / (2 * n)
    key = sorted(range(len(eigs)), key=lambda i: (abs(E[i]), np.angle(E[i]) % (2 * np.pi), i))
    comp = {key[0]}
    frontier = [key[0]]
    while frontier:
        i = frontier.pop()
        for j in np.nonzero(D[i] < thr)[0]:
            if int(j) not in comp:
                comp.add(int(j))
                frontier.append(int(j))
    if len(comp) == len(eigs):
        raise PreconditionError("eigenvalues form a single cluster; inconsistent with the spread")
    rest = [j for j in range(len(eigs)) if j not in comp]
    gap = float(D[np.ix_(sorted(comp), rest)].min())
    return SpectrumSplit(tuple(eigs), tuple(sorted(comp)), gap)


@dataclass
class ProjectionResult:
    P: np.ndarray
    rank: int
    polish_sweeps: int
    gamma: complex
    idempotency: float
    commutator: float


def spectral_projection(S, split: SpectrumSplit, max_polish: int = 8, detail: bool = False):
    """Riesz-type projection onto the group-one generalised eigenspace, as
    an explicit polynomial in S.

        T = prod_{j in g1} (S - l_j I),  mu_k = prod_{j in g1} (l_k - l_j),
        W = prod_{k in g2} (T - mu_k I), gamma = prod_{k in g2} (-mu_k), P = W / gamma.

    If ||P^2 - P||_F > 1e-9 the result is polished by P <- 3P^2 - 2P^3
    (still a polynomial in S), repeated at most ``max_polish`` times.
    """
    S = as_matrix(S)
    n = S.shape[0]
    lam = np.array(split.eigenvalues)
    if len(lam) != n:
        raise PreconditionError("split has the wrong number of eigenvalues")
    g1, g2 = list(split.group_one), list(split.group_two)
    cross = np.abs(lam[g1][:, None] - lam[g2][None, :]).min()
    if not cross > 1e-12 * max(1.0, np.abs(lam).max()):
        raise PreconditionError(f"no gap between the spectral groups (gap {cross:.3g})")
    eye = np.eye(n, dtype=complex)
    T = eye.copy()
    for j in g1:
        T = T @ (S - lam[j] * eye)
    mu = [np.prod([lam[k] - lam[j] for j in g1]) for k in g2]
    W = eye.copy()
    for m in mu:
        W = W @ (T - m * eye)
    gamma = complex(np.prod([-m for m in mu]))
    normS = float(np.linalg.norm(S))
    if not abs(gamma) > 1e-300:
        raise ConditioningError("gamma underflow", gap=float(cross), n=n, norm=normS)
    P = W / gamma
    sweeps = 0
    while np.linalg.norm(P @ P - P) > POLISH_TOL and sweeps < max_polish:
        P2 = P @ P
        P = 3 * P2 - 2 * P2 @ P
        sweeps += 1
    P = P + 0.0  # drop negative zeros
    idem = float(np.linalg.norm(P @ P - P))
    comm = float(np.linalg.norm(P @ S - S @ P))
    rank = int(round(np.trace(P).real))
    sv_rank = int(np.sum(np.linalg.svd(P, compute_uv=False) > 0.5))
    if (idem > POST_TOL or comm > POST_TOL * max(1.0, normS) or rank != sv_rank
            or rank != len(g1) or not 0 < rank < n):
        raise ConditioningError("spectral projection failed its checks", gap=float(cross), n=n,
                                norm=normS, idempotency=idem, commutator=comm, rank=rank)
    if detail:
        return ProjectionResult(P, rank, sweeps, gamma, idem, comm)
    return P


# ---------------------------------------------------------------- projection search

def _check_decomposition(decomp) -> list[np.ndarray]:
    mats = [as_matrix(a) for a in decomp]
    if not mats:
        raise PreconditionError("empty decomposition")
    n = mats[0].shape[0]
    if n < 2 or any(m.shape != (n, n) for m in mats):
        raise PreconditionError("decomposition needs n x n members with n >= 2")
    for k, m in enumerate(mats):
        scale = max(1.0, float(np.linalg.norm(m, 2))) ** n
        if abs(np.linalg.det(m)) >= 1e-9 * scale:
            raise PreconditionError(f"member {k} is invertible")
    if np.linalg.norm(sum(mats) - np.eye(n), 2) >= 1e-9:
        raise PreconditionError("members do not sum to the identity")
    return mats


@dataclass
class ProjectionSearch:
    P: np.ndarray
    S: np.ndarray
    words: list[tuple[int, ...]]
    coefficients: np.ndarray
    depth: int
    delta: float
    split: SpectrumSplit
    polish_sweeps: int
    candidates_tried: int

    def to_json(self):
        return {"P": self.P, "S": self.S, "words": [list(w) for w in self.words],
                "coefficients": self.coefficients, "depth": self.depth, "delta": self.delta,
                "split": self.split.to_json(), "polish_sweeps": self.polish_sweeps,
                "candidates_tried": self.candidates_tried}


def _word_products(mats, depth):
    words = list(itertools.product(range(len(mats)), repeat=depth))
    prods = []
    for w in words:
        p = mats[w[0]]
        for i in w[1:]:
            p = p @ mats[i]
        prods.append(p)
    return words, prods


def lemma37_search(decomp, depth: int, s: Sampler, delta_min: float = DELTA_MIN) -> ProjectionSearch:
    """Budgeted search for a nontrivial projection in the algebra of a singular
    decomposition of the identity.

    At each word length d = 1..depth, candidates S are the single words and
    then ``s.count`` random combinations with coefficients in [-1, 1]. The first
    S with r(S - tr(S)/n I) > ``delta_min`` is split by `cluster_split`; the
    projection returned is onto the group NOT containing the smallest-modulus
    eigenvalue.
    """
    mats = _check_decomposition(decomp)
    n = mats[0].shape[0]
    if depth < 1:
        raise PreconditionError("depth cap must be at least 1")
    rng = s.rng(37)
    eye = np.eye(n)
    tried = 0
    for d in range(1, depth + 1):
        words, prods = _word_products(mats, d)
        K = len(prods)
        coeffs = [np.eye(K)[i] for i in range(K)]
        coeffs += list(rng.uniform(-1.0, 1.0, size=(s.count, K)))
        for c in coeffs:
            tried += 1
            S = sum(ci * p for ci, p in zip(c, prods) if ci != 0)
            if np.isscalar(S):
                continue
            eig = eigenvalues(S)
            mean = np.trace(S) / n
            delta = max(abs(e - mean) for e in eig)
            if delta <= delta_min:
                continue
            try:
                split = cluster_split(eig, delta, n).swapped()
                res = spectral_projection(S, split, detail=True)
            except (PreconditionError, ConditioningError):
                continue
            keep = [i for i in range(K) if c[i] != 0]
            return ProjectionSearch(res.P, S, [words[i] for i in keep], np.asarray(c)[keep], d,
                                    float(delta), split, res.polish_sweeps, tried)
    raise SearchExhaustedError("no candidate with a usable spectral spread", depth=depth,
                               candidates=tried, n=n)


def family_bound(decomp, vertices: bool = True) -> float:
    """sup over |alpha_k| <= 1 of ||sum alpha_k A_k||, over real sign vertices.

    Real vertices give a lower estimate of the complex supremum; for the
    distance bound below a smaller M only makes the bound harder to meet.
    """
    mats = [as_matrix(a) for a in decomp]
    K = len(mats)
    best = 0.0
    if K <= 16 and vertices:
        for signs in itertools.product([1.0, -1.0], repeat=K):
            best = max(best, float(np.linalg.norm(sum(e * m for e, m in zip(signs, mats)), 2)))
    else:
        best = sum(float(np.linalg.norm(m, 2)) for m in mats)
    return max(best, 1.0)


def lemma36_bound(N: int, M: float) -> float:
    """2^(-3 N^2) (N!)^(-N) M^(1 - N^2)."""
    return 2.0 ** (-3 * N * N) * float(math.factorial(N)) ** (-N) * M ** (1 - N * N)


def triangular_distance_check(decomp, alg: MatrixAlgebra, s: Sampler, grid: int | None = None):
    """Largest distance from sum alpha_k A_k to ``alg`` (Frobenius / sqrt n),
    over sampled alpha in [-1, 1]^K, or over a dense grid with ``grid``
    points per axis. Returns ``(b, bound, M)``."""
    mats = _check_decomposition(decomp)
    n = mats[0].shape[0]
    if not alg.is_triangular():
        raise PreconditionError("algebra is not triangular")
    K = len(mats)
    if grid is not None:
        axis = np.linspace(-1.0, 1.0, grid)
        alphas = np.array(list(itertools.product(axis, repeat=K)))
    else:
        alphas = np.vstack([np.array(list(itertools.product([1.0, -1.0], repeat=min(K, 12)))
                                     ) if K <= 12 else np.zeros((0, K)),
                            s.rng(36).uniform(-1, 1, size=(s.count, K))])
    V = alg._vecs()
    stack = np.array([m.ravel() for m in mats])
    X = alphas @ stack
    R = X - (X @ V.conj().T) @ V
    b = float(np.linalg.norm(R, axis=1).max() / math.sqrt(n)) if len(X) else 0.0
    M = family_bound(mats)
    return b, lemma36_bound(n, M), M


def _orthonormal_block_basis(B: np.ndarray) -> np.ndarray:
    Q, _ = np.linalg.qr(B)
    return Q


@dataclass
class UfddSplit:
    R: list[np.ndarray]
    Q: np.ndarray
    searches: list[ProjectionSearch]

    def to_json(self):
        return {"R": self.R, "Q": self.Q, "searches": [x.to_json() for x in self.searches]}


def split_uniform_ufdd(bs, P, depth: int, s: Sampler, tol: float = 1e-9) -> UfddSplit:
    """Per-block nontrivial projections for a uniform block decomposition.

    ``bs`` gives the coordinate windows and a basis of each block E_n; ``P``
    is an ambient projection with P(F_n) = E_n. With V_n an orthonormal basis
    of E_n, the rank-one family A_nk = V_n^+ P E_kk V_n sums to the identity,
    and `lemma37_search` finds R_n in its algebra. The assembled
    Q = sum_n V_n R_n V_n^+ P_n acts on E_n as V_n R_n V_n^+.
    """
    P = np.asarray(P, dtype=complex)
    dims = bs.block_dims
    if len(set(dims)) != 1 or dims[0] < 2:
        raise PreconditionError("need blocks of a common dimension N >= 2")
    if P.shape != (bs.dim, bs.dim):
        raise PreconditionError("projection has the wrong size")
    if np.linalg.norm(P @ P - P) > tol * max(1.0, float(np.linalg.norm(P))):
        raise PreconditionError("P is not a projection")
    tasks = []
    for n in range(bs.n_blocks):
        w = bs.window(n)
        V = _orthonormal_block_basis(bs.blocks[n])
        Pn = P[w, w]
        if np.linalg.norm(Pn @ V - V) > 1e-7:
            raise PreconditionError(f"P does not fix block {n}")
        fam = [V.conj().T @ Pn[:, [k]] @ V[[k], :] for k in range(V.shape[0])]
        tasks.append((n, V, Pn, fam))
    subs = [Sampler(int(s.rng(1000 + n).integers(2**31)), count=s.count) for n in range(bs.n_blocks)]
    searches = parallel_map(lambda t: lemma37_search(t[3], depth, subs[t[0]]), tasks)
    Q = np.zeros_like(P)
    Rs = []
    for (n, V, Pn, _), res in zip(tasks, searches):
        w = bs.window(n)
        Q[w, w] += V @ res.P @ V.conj().T @ Pn
        Rs.append(res.P)
    if np.linalg.norm(Q @ Q - Q) > POST_TOL:
        raise ConditioningError("assembled Q is not a projection")
    return UfddSplit(Rs, Q, searches)


# ---------------------------------------------------------------- lattice seminorm

def lattice_factorization_norm(ys, Qs, A, B, ambient) -> float:
    """sup over the dual unit ball of sum_j <|y_j|, |B^* Q_j^* A^* y*|>.

    The expression is convex in y*, so the sup sits at an extreme point of
    the ball. ``Lp(inf)`` scans all +-1 vectors (m <= 20); ``Lp(1)`` scans the
    coordinate functionals.
    """
    from .norms import Lp

    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    Ys = [np.abs(np.asarray(y.dense(B.shape[1]) if hasattr(y, "dense") else y, dtype=complex))
          for y in ys]
    if len(Qs) != len(Ys):
        raise PreconditionError("need one projection per vector")
    m = A.shape[0]
    ops = []
    for Q in Qs:
        Q = np.atleast_2d(np.asarray(Q, dtype=complex))
        if A.shape[1] != Q.shape[0] or Q.shape[1] != B.shape[0]:
            raise PreconditionError("incompatible dimensions")
        ops.append((A @ Q @ B).conj().T)
    if not isinstance(ambient, Lp) or ambient.p not in (1.0, math.inf):
        raise PreconditionError("ambient must be Lp(1) or Lp(inf)")
    if ambient.p == 1.0:
        cands = np.eye(m)
    else:
        if m > 20:
            raise PreconditionError("sign enumeration limited to m <= 20")
        codes = np.arange(1 << max(m - 1, 0))
        bits = (codes[:, None] >> np.arange(max(m - 1, 0))) & 1
        cands = np.hstack([np.ones((codes.size, 1)), 1.0 - 2.0 * bits])[:, :m]
    total = np.zeros(len(cands))
    for y, op in zip(Ys, ops):
        total += np.abs(cands @ op.T) @ y.real
    return float(total.max(initial=0.0))


def khintchine_sides(x, A, Qs, ambient, rng: np.random.Generator, patterns: int = 256):
    """(||(sum_j |A Q_j x|^2)^(1/2)||, sqrt(2) * mean_eps ||sum_j eps_j A Q_j x||)."""
    from .norms import batch_norms

    vs = np.array([np.real(A @ Q @ x) for Q in Qs])
    lhs = float(batch_norms(ambient, np.sqrt((vs * vs).sum(axis=0))[None, :])[0])
    eps = rng.choice([-1.0, 1.0], size=(patterns, len(Qs)))
    rhs = math.sqrt(2) * float(batch_norms(ambient, eps @ vs).mean())
    return lhs, rhs
