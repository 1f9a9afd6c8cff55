"""Centralizers and finite sections of twisted sums X (+)_Omega X.

A vector of the twisted sum's m-section is stored interleaved: coordinate
2n-1 holds x(n) and coordinate 2n holds y(n), so the two-dimensional
summands E_n = span{(e_n, 0), (0, e_n)} are consecutive coordinate pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .norms import Lp, batch_norms, norm_from_json
from .seqcore import BlockStructure, ConstantEstimate, Sampler, SeqVector

__all__ = [
    "LipschitzFn",
    "Centralizer",
    "TwistedSpace",
    "TwistedVector",
    "apply_centralizer",
    "twisted_norm",
    "quasinorm_constant",
    "splitting_deficiency",
    "SplittingResult",
    "centralizer_constant",
    "kalton_peck",
    "canonical_basis",
    "canonical_blocks",
    "aligned_draws",
]

LIPSCHITZ_GRID = np.linspace(-60.0, 60.0, 24001)


@dataclass(frozen=True)
class LipschitzFn:
    """A scalar Lipschitz function from a small named family.

    ``identity``   f(t) = t
    ``zero``       f(t) = 0
    ``clamp``      f(t) = min(L, max(-L, t))            (params: L)
    ``piecewise``  linear interpolation through knots, constant outside
                   (params: knots = ((t0, v0), (t1, v1), ...))
    """

    name: str = "identity"
    L: float = 1.0
    knots: tuple[tuple[float, float], ...] = ()
    lipschitz: float = field(default=None)

    def __post_init__(self):
        if self.name not in ("identity", "zero", "clamp", "piecewise"):
            raise PreconditionError(f"unknown Lipschitz function {self.name!r}")
        if self.name == "clamp" and self.L < 0:
            raise PreconditionError("clamp level must be non-negative")
        if self.name == "piecewise":
            k = tuple(sorted((float(t), float(v)) for t, v in self.knots))
            if len(k) < 1 or len({t for t, _ in k}) != len(k):
                raise PreconditionError("piecewise function needs distinct knots")
            object.__setattr__(self, "knots", k)
        declared = self._natural_constant() if self.lipschitz is None else float(self.lipschitz)
        object.__setattr__(self, "lipschitz", declared)
        vals = self(LIPSCHITZ_GRID)
        measured = float(np.max(np.abs(np.diff(vals)) / np.diff(LIPSCHITZ_GRID)))
        if measured > declared * (1 + 1e-9) + 1e-12:
            raise PreconditionError(
                f"declared Lipschitz constant {declared} < measured {measured}")

    def _natural_constant(self) -> float:
        if self.name == "identity":
            return 1.0
        if self.name == "zero":
            return 0.0
        if self.name == "clamp":
            return 1.0 if self.L > 0 else 0.0
        t = np.array([k[0] for k in self.knots])
        v = np.array([k[1] for k in self.knots])
        return float(np.max(np.abs(np.diff(v) / np.diff(t)), initial=0.0))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.name == "identity":
            return t.copy()
        if self.name == "zero":
            return np.zeros_like(t)
        if self.name == "clamp":
            return np.clip(t, -self.L, self.L)
        ts = np.array([k[0] for k in self.knots])
        vs = np.array([k[1] for k in self.knots])
        return np.interp(t, ts, vs)

    def to_json(self):
        out = {"name": self.name, "lipschitz": self.lipschitz}
        if self.name == "clamp":
            out["L"] = self.L
        if self.name == "piecewise":
            out["knots"] = [list(k) for k in self.knots]
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            return cls(obj)
        return cls(obj["name"], float(obj.get("L", 1.0)),
                   tuple(tuple(k) for k in obj.get("knots", ())), obj.get("lipschitz"))


@dataclass(frozen=True)
class Centralizer:
    """Omega(x)(n) = x(n) f(log(|x(n)| / ||x||_X)), and 0 where x(n) = 0."""

    base: object = Lp(2.0)
    f: LipschitzFn = LipschitzFn("identity")

    def apply_dense(self, X: np.ndarray) -> np.ndarray:
        """Row-wise Omega on a ``(k, n)`` batch."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.f.name == "zero":
            return np.zeros_like(X)
        nrm = batch_norms(self.base, X)
        safe = np.where(nrm > 0, nrm, 1.0)[:, None]
        nz = X != 0
        ratio = np.where(nz, np.abs(X) / safe, 1.0)
        return np.where(nz, X * self.f(np.log(ratio)), 0.0)

    def to_json(self):
        return {"base": self.base.to_json(), "f": self.f.to_json()}


def apply_centralizer(c: Centralizer, x: SeqVector) -> SeqVector:
    if len(x) == 0:
        return SeqVector()
    dense = x.dense()
    return SeqVector.from_dense(c.apply_dense(dense[None, :])[0])


@dataclass(frozen=True)
class TwistedVector:
    x: SeqVector
    y: SeqVector


@dataclass(frozen=True)
class TwistedSpace:
    """The m-section of X (+)_Omega X, usable as a norm spec on 2m coordinates."""

    omega: Centralizer
    m: int = 1
    lattice = False

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("section size must be at least 1")

    @property
    def dim(self) -> int:
        return 2 * self.m

    def split(self, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        V = np.atleast_2d(np.asarray(V, dtype=float))
        return V[:, 0::2], V[:, 1::2]

    @staticmethod
    def join(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X, Y = np.atleast_2d(X), np.atleast_2d(Y)
        out = np.empty((X.shape[0], 2 * X.shape[1]))
        out[:, 0::2] = X
        out[:, 1::2] = Y
        return out

    def norms(self, V: np.ndarray) -> np.ndarray:
        X, Y = self.split(V)
        base = self.omega.base
        return batch_norms(base, X) + batch_norms(base, Y - self.omega.apply_dense(X))

    def with_size(self, m: int) -> "TwistedSpace":
        return TwistedSpace(self.omega, m)

    def to_json(self):
        return {"kind": "Twisted", "m": self.m, **self.omega.to_json()}

    @classmethod
    def from_json(cls, obj):
        base = norm_from_json(obj.get("base", {"kind": "Lp", "p": 2}))
        return cls(Centralizer(base, LipschitzFn.from_json(obj.get("f", "identity"))), int(obj.get("m", 1)))


def twisted_norm(t: TwistedSpace, v: TwistedVector) -> float:
    """||x||_X + ||y - Omega(x)||_X."""
    n = max(v.x.dim, v.y.dim, 1)
    if n > t.m:
        raise PreconditionError(f"vector needs section size {n}, space has {t.m}")
    X = v.x.dense(t.m)[None, :]
    Y = v.y.dense(t.m)[None, :]
    return float(t.norms(TwistedSpace.join(X, Y))[0])


def kalton_peck(m: int, f: str | LipschitzFn = "identity", base=None) -> TwistedSpace:
    """The m-section of the twisted sum; f = identity over l_2 gives Z_2."""
    f = LipschitzFn(f) if isinstance(f, str) else f
    return TwistedSpace(Centralizer(Lp(2.0) if base is None else base, f), m)


def canonical_basis(t: TwistedSpace):
    """(e_n, 0), (0, e_n) for n = 1..m, in interleaved order."""
    from .norms import BasisFamily

    return BasisFamily.from_matrix(np.eye(t.dim), t)


def canonical_blocks(t: TwistedSpace) -> BlockStructure:
    return BlockStructure.coordinate([2] * t.m)


def aligned_draws(t: TwistedSpace, sampler: Sampler, count: int | None = None,
                  stream: int = 41) -> np.ndarray:
    """Interleaved vectors (u, Omega(u)); these lie on the "twisted" diagonal
    where the quasi-norm collapses to ||u||, so sign changes hurt the most."""
    U = sampler.with_strategy("extreme").draws(t.m, count, stream=stream)
    if len(U) == 0:
        return np.zeros((0, t.dim))
    return TwistedSpace.join(U, t.omega.apply_dense(U))


def quasinorm_ratio(t: TwistedSpace, u: np.ndarray, v: np.ndarray) -> float:
    u, v = np.atleast_2d(u), np.atleast_2d(v)
    return float(t.norms(u + v)[0] / (t.norms(u)[0] + t.norms(v)[0]))


def quasinorm_constant(t: TwistedSpace, s: Sampler) -> ConstantEstimate:
    """Sampled lower bound on the best Delta with ||u+v|| <= Delta(||u|| + ||v||)."""
    m = t.m
    om = t.omega
    rng = s.rng(21)
    X1 = s.draws(m, stream=22)
    X2 = s.draws(m, stream=23)
    k = X1.shape[0]
    # perturb off the twisted diagonal at random log-scales
    sc1 = np.exp(rng.uniform(-4, 2, size=(k, 1)))
    sc2 = np.exp(rng.uniform(-4, 2, size=(k, 1)))
    Y1 = om.apply_dense(X1) + sc1 * rng.standard_normal((k, m))
    Y2 = om.apply_dense(X2) + sc2 * rng.standard_normal((k, m))
    U = TwistedSpace.join(X1, Y1) if k else np.zeros((0, 2 * m))
    V = TwistedSpace.join(X2, Y2) if k else np.zeros((0, 2 * m))
    A = aligned_draws(t, s, stream=24)
    B = aligned_draws(t, s, stream=25)
    U = np.vstack([U, A, A])
    V = np.vstack([V, B, -np.roll(A, 1, axis=0) if len(A) else A])
    best = 1.0
    wit = {"u": np.eye(2 * m)[0], "v": np.zeros(2 * m)}
    if len(U):
        ratios = t.norms(U + V) / (t.norms(U) + t.norms(V))
        i = int(np.argmax(ratios))
        if ratios[i] > best:
            best = float(ratios[i])
            wit = {"u": U[i], "v": V[i]}
    return ConstantEstimate(best, wit, samples_used=len(U) + 1,
                            notes={"kind": "quasinorm", "m": m})


@dataclass
class SplittingResult:
    b: SeqVector
    C: float
    witness: np.ndarray
    rounds: int
    samples_used: int

    def to_json(self):
        return {"b": self.b.to_json(), "C": self.C, "witness": self.witness.tolist(),
                "rounds": self.rounds, "samples_used": self.samples_used}


GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(obj, lo: float, hi: float, iters: int = 100) -> float:
    if hi - lo <= 0:
        return lo
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = obj(c), obj(d)
    for _ in range(iters):
        if b - a <= 1e-13 * max(1.0, abs(a), abs(b)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = obj(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = obj(d)
    return 0.5 * (a + b)


def splitting_deficiency(t: TwistedSpace, n: int, s: Sampler, rounds: int = 50) -> SplittingResult:
    """Best multiplier b and C = max_x ||Omega(x) - b x|| / ||x|| over the sample.

    The sample lives in the n-section of X. b is improved one coordinate at a
    time by exact one-dimensional minimax (golden section on a convex
    objective, then the candidates 0 and the previous value), preceded in
    each sweep by one minimax step along the constant direction, for up to
    ``rounds`` sweeps; ties go to b(k) = 0. The returned C is attained by the
    returned b on the stored sample.
    """
    if not 1 <= n <= t.m:
        raise PreconditionError(f"section size {n} must lie in 1..{t.m}")
    base = t.omega.base
    X = s.draws(n, stream=31)
    X = X[np.any(X != 0, axis=1)]
    if len(X) == 0:
        return SplittingResult(SeqVector(), 0.0, np.zeros(n), 0, 0)
    Om = t.omega.apply_dense(X)
    den = batch_norms(base, X)
    b = np.zeros(n)
    R = Om.copy()
    fast = isinstance(base, Lp) and math.isfinite(base.p)
    p = base.p if fast else None

    def full_obj(R):
        return batch_norms(base, R) / den

    pw = (np.abs(R) ** p).sum(axis=1) if fast else None
    current = float(np.max(full_obj(R)))
    done = 0
    for done in range(1, rounds + 1):
        start = current
        # 1-D minimax along the constant direction b + beta * 1
        def shift_obj(beta):
            return float(np.max(full_obj(R - beta * X)))

        ratios_now = (Om / np.where(X != 0, X, np.inf))[X != 0] - np.broadcast_to(b, X.shape)[X != 0]
        lo, hi = float(ratios_now.min()), float(ratios_now.max())
        beta = _golden_min(shift_obj, min(lo, 0.0), max(hi, 0.0))
        if shift_obj(beta) < float(np.max(full_obj(R))) * (1 - 1e-12):
            R = R - beta * X
            b = b + beta
            if fast:
                pw = (np.abs(R) ** p).sum(axis=1)
        for k in range(n):
            xk = X[:, k]
            act = xk != 0
            if not act.any():
                continue
            rk = R[act, k]
            xa = xk[act]
            rest = full_obj(R)[~act].max(initial=0.0) if (~act).any() else 0.0
            if fast:
                pw_rest = pw[act] - np.abs(rk) ** p
                dena = den[act]

                def obj(beta, rk=rk, xa=xa, pw_rest=pw_rest, dena=dena, bk=b[k], rest=rest):
                    new = np.abs(rk - (beta - bk) * xa) ** p
                    return max(float(np.max((pw_rest + new) ** (1.0 / p) / dena)), rest)
            else:
                Ra = R[act].copy()
                dena = den[act]

                def obj(beta, Ra=Ra, rk=rk, xa=xa, dena=dena, bk=b[k], rest=rest, k=k):
                    Ra[:, k] = rk - (beta - bk) * xa
                    return max(float(np.max(batch_norms(base, Ra) / dena)), rest)

            zeros_at = b[k] + rk / xa
            lo, hi = float(zeros_at.min()), float(zeros_at.max())
            cand = [_golden_min(obj, lo, hi), b[k], lo, hi]
            vals = [obj(c) for c in cand]
            j = int(np.argmin(vals))
            beta, val = cand[j], vals[j]
            v0 = obj(0.0)
            if v0 <= val * (1 + 1e-12) + 1e-300:
                beta, val = 0.0, v0
            if beta != b[k]:
                R[:, k] = R[:, k] - (beta - b[k]) * xk
                if fast:
                    pw = (np.abs(R) ** p).sum(axis=1)
                b[k] = beta
        current = float(np.max(full_obj(R)))
        if start - current <= 1e-12 * max(start, 1e-300):
            break
    ratios = full_obj(R)
    i = int(np.argmax(ratios))
    return SplittingResult(SeqVector.from_dense(b), float(ratios[i]), X[i], done, len(X))


def centralizer_constant(c: Centralizer, m: int, s: Sampler) -> ConstantEstimate:
    """Sampled lower bound on Delta in ||Omega(ux) - u Omega(x)|| <= Delta ||u||_inf ||x||."""
    X = np.vstack([s.draws(m, stream=51), s.with_strategy("extreme").draws(m, stream=52)])
    rng = s.rng(53)
    Umat = rng.uniform(-1.0, 1.0, size=X.shape)
    lhs = batch_norms(c.base, c.apply_dense(Umat * X) - Umat * c.apply_dense(X))
    den = np.abs(Umat).max(axis=1) * batch_norms(c.base, X)
    ratio = np.where(den > 0, lhs / np.where(den > 0, den, 1.0), 0.0)
    i = int(np.argmax(ratio))
    return ConstantEstimate(float(ratio[i]), {"u": Umat[i], "x": X[i]}, len(X),
                            notes={"kind": "centralizer", "m": m})
