"""Norms and quasi-norms on coordinate vectors.

A norm spec is any object with a ``norms(X)`` method taking a 2-d array
(one vector per row) and returning the row norms, plus a ``dim`` attribute
that is ``None`` for lattice norms defined on every section. `eval_norm` is
the single-vector entry point; estimators call ``norms`` on whole batches.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .orlicz import F, MusielakProfile, OrliczFn, gauge
from .seqcore import BlockStructure, SeqVector, block_decompose

__all__ = ["Lp", "OrliczGauge", "Musielak", "BlockEuclidean", "BasisFamily", "eval_norm",
           "norm_from_json", "batch_norms", "triangle_constant"]


@dataclass(frozen=True)
class Lp:
    p: float = 2.0
    lattice = True
    dim = None

    def __post_init__(self):
        p = float(self.p)
        if not (p >= 1.0):
            raise PreconditionError(f"l_p needs p >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)

    def norms(self, X: np.ndarray) -> np.ndarray:
        A = np.abs(np.atleast_2d(X))
        if A.shape[1] == 0:
            return np.zeros(A.shape[0])
        if math.isinf(self.p):
            return A.max(axis=1)
        if self.p == 1.0:
            return A.sum(axis=1)
        if self.p == 2.0:
            return np.sqrt(np.einsum("ij,ij->i", A, A))
        # scale out the max to avoid overflow for large p
        m = A.max(axis=1)
        safe = np.where(m > 0, m, 1.0)
        return m * ((A / safe[:, None]) ** self.p).sum(axis=1) ** (1.0 / self.p)

    def to_json(self):
        return {"kind": "Lp", "p": "inf" if math.isinf(self.p) else self.p}


@dataclass(frozen=True)
class OrliczGauge:
    fn: OrliczFn = F
    lattice = True
    dim = None

    def norms(self, X: np.ndarray) -> np.ndarray:
        return np.atleast_1d(gauge(np.atleast_2d(X), self.fn))

    def to_json(self):
        return {"kind": "OrliczGauge", "fn": self.fn.to_json()}


@dataclass(frozen=True)
class Musielak:
    profile: MusielakProfile
    lattice = True

    @property
    def dim(self):
        return None

    def norms(self, X: np.ndarray) -> np.ndarray:
        return np.atleast_1d(gauge(np.atleast_2d(X), self.profile))

    def to_json(self):
        return {"kind": "Musielak", "a": list(self.profile.a)}


@dataclass(frozen=True, eq=False)
class BlockEuclidean:
    """sqrt(sum_n c_n^T G_n c_n) where c_n are the block coefficients of x."""

    bs: BlockStructure
    grams: tuple[np.ndarray, ...]
    lattice = False

    def __post_init__(self):
        if len(self.grams) != self.bs.n_blocks:
            raise PreconditionError("need one Gram matrix per block")
        chol = []
        for n, (g, d) in enumerate(zip(self.grams, self.bs.block_dims)):
            g = np.array(g, dtype=float, ndmin=2)
            if g.shape != (d, d) or not np.allclose(g, g.T, rtol=1e-12, atol=1e-12):
                raise PreconditionError(f"Gram matrix {n} is not symmetric {d}x{d}")
            try:
                chol.append(np.linalg.cholesky(g))
            except np.linalg.LinAlgError:
                raise PreconditionError(f"Gram matrix {n} is not positive definite") from None
        object.__setattr__(self, "grams", tuple(np.array(g, dtype=float, ndmin=2) for g in self.grams))
        object.__setattr__(self, "_chol", tuple(chol))
        # least-squares left inverses of each block basis
        object.__setattr__(self, "_pinv", tuple(np.linalg.pinv(m) for m in self.bs.blocks))

    @property
    def dim(self):
        return self.bs.dim

    def norms(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        total = np.zeros(X.shape[0])
        for n, (pinv, L) in enumerate(zip(self._pinv, self._chol)):
            c = X[:, self.bs.window(n)] @ pinv.T
            z = c @ L
            total += np.einsum("ij,ij->i", z, z)
        return np.sqrt(total)

    def to_json(self):
        return {"kind": "BlockEuclidean", "blocks": self.bs.to_json(),
                "grams": [g.tolist() for g in self.grams]}


@dataclass(frozen=True, eq=False)
class BasisFamily:
    """Linearly independent vectors (rows of ``matrix``) measured in ``norm``."""

    matrix: np.ndarray
    norm: object

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float, ndmin=2)
        if M.shape[0] and np.linalg.matrix_rank(M) < M.shape[0]:
            raise PreconditionError("basis vectors are linearly dependent")
        if self.norm.dim is not None and M.shape[1] != self.norm.dim:
            raise PreconditionError(f"vectors have {M.shape[1]} coordinates, norm expects {self.norm.dim}")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @classmethod
    def from_vectors(cls, vectors, norm, dim: int | None = None) -> "BasisFamily":
        vectors = list(vectors)
        if dim is None:
            dim = norm.dim if norm.dim is not None else max((v.dim for v in vectors), default=0)
        return cls(np.array([v.dense(dim) for v in vectors]).reshape(len(vectors), dim), norm)

    @classmethod
    def from_matrix(cls, rows, norm) -> "BasisFamily":
        return cls(np.asarray(rows, dtype=float), norm)

    def __len__(self):
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self) -> list[SeqVector]:
        return [SeqVector.from_dense(r) for r in self.matrix]

    def combine(self, coeffs: np.ndarray) -> np.ndarray:
        """Rows of ``coeffs`` times the basis: sum_i a_i x_i for each row a."""
        return np.atleast_2d(coeffs) @ self.matrix

    def norms_of(self, coeffs: np.ndarray) -> np.ndarray:
        return batch_norms(self.norm, self.combine(coeffs))


def batch_norms(spec, X: np.ndarray) -> np.ndarray:
    return np.asarray(spec.norms(np.atleast_2d(np.asarray(X, dtype=float))), dtype=float)


def eval_norm(x: SeqVector | np.ndarray, spec) -> float:
    """Norm of a single vector under ``spec``."""
    if isinstance(x, SeqVector):
        n = spec.dim if spec.dim is not None else x.dim
        if isinstance(spec, BlockEuclidean):
            block_decompose(x, spec.bs)
        arr = x.dense(n)
    else:
        arr = np.asarray(x, dtype=float)
        if isinstance(spec, BlockEuclidean):
            block_decompose(arr, spec.bs)
    return float(batch_norms(spec, arr[None, :])[0])


def norm_from_json(obj):
    """Build a norm spec from its JSON description."""
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind")
    if kind in ("Lp", "lp"):
        p = obj.get("p", 2)
        return Lp(math.inf if p in ("inf", "Infinity", None) else float(p))
    if kind in ("l1", "l2", "linf"):
        return Lp({"l1": 1.0, "l2": 2.0, "linf": math.inf}[kind])
    if kind in ("OrliczGauge", "F", "G", "Fa"):
        fn = obj.get("fn", {"family": kind if kind != "OrliczGauge" else "F", "a": obj.get("a", 1.0)})
        return OrliczGauge(OrliczFn.from_json(fn))
    if kind == "Musielak":
        return Musielak(MusielakProfile(tuple(obj["a"])))
    if kind == "BlockEuclidean":
        bs = BlockStructure.from_json(obj["blocks"])
        return BlockEuclidean(bs, tuple(np.array(g, dtype=float) for g in obj["grams"]))
    if kind == "Twisted":
        from .twisted import TwistedSpace

        return TwistedSpace.from_json(obj)
    raise PreconditionError(f"unknown norm kind {kind!r}")


def triangle_constant(spec, dim: int, sampler, pairs: Sequence | None = None) -> tuple[float, dict]:
    """Largest sampled ||u + v|| / (||u|| + ||v||); at least 1 by the pair (u, 0)."""
    U = sampler.draws(dim, stream=11)
    V = sampler.draws(dim, stream=12)
    rng = sampler.rng(13)
    V = V * np.exp(rng.uniform(-3, 3, size=(V.shape[0], 1)))
    best, wit = 1.0, {"u": np.eye(dim)[0], "v": np.zeros(dim)}
    if len(U):
        r = batch_norms(spec, U + V) / (batch_norms(spec, U) + batch_norms(spec, V))
        i = int(np.argmax(r))
        if r[i] > best:
            best, wit = float(r[i]), {"u": U[i], "v": V[i]}
    return best, wit
