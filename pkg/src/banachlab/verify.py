"""Sampled verifiers for inequalities on Orlicz and l_p sequences.

Each verifier draws seeded instances inside the hypotheses, evaluates
``slack = RHS - LHS`` and reports the worst one. Anything below
``-tolerance`` is kept as a violator with its full input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConditioningError, PreconditionError
from .norms import BasisFamily, Lp, OrliczGauge, batch_norms
from .orlicz import F, G, gauge, modular
from .seqcore import ConstantEstimate, Decomposition, BlockStructure, Sampler, SeqVector
from .uncond import ascent, equivalence_constant

__all__ = [
    "VerifyReport",
    "lemma41_check",
    "lemma41_slack",
    "lemma310_check",
    "lemma42_modular_identity",
    "lemma42_equivalence",
    "k_cap",
    "thm24_sandwich",
]

TOL = 1e-12
HUNT_STEPS = 200


@dataclass
class VerifyReport:
    instances: int
    worst_slack: float
    violators: list = field(default_factory=list)
    tolerance: float = TOL
    skipped: int = 0
    worst_input: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violators

    def to_json(self):
        return {"instances": self.instances, "worst_slack": self.worst_slack,
                "violators": self.violators, "tolerance": self.tolerance,
                "skipped": self.skipped, "worst_input": self.worst_input, "notes": self.notes,
                "ok": self.ok}


# ------------------------------------------------------------ G-superadditivity defect

def lemma41_slack(a: np.ndarray, t: np.ndarray, p: float) -> np.ndarray:
    """G(sum a t) + p sum t G(a) - sum G(a t), row-wise (zero-padded rows allowed)."""
    a = np.atleast_2d(a)
    t = np.atleast_2d(t)
    at = a * t
    lhs = G(at).sum(axis=1)
    rhs = G(at.sum(axis=1)) + p * (t * G(a)).sum(axis=1)
    return rhs - lhs, lhs


def _lemma41_draw(rng, p: float, count: int, max_len: int = 32):
    lens = rng.integers(1, max_len + 1, size=count)
    mask = np.arange(max_len)[None, :] < lens[:, None]
    a = rng.uniform(0.0, 1.0, size=(count, max_len)) ** rng.uniform(0.5, 4.0, size=(count, 1))
    a = np.where(mask, a, 0.0)
    # place a on the l_p sphere for half the rows, strictly inside for the rest
    nrm = (a ** p).sum(axis=1) ** (1.0 / p)
    radius = np.where(rng.random(count) < 0.5, 1.0, rng.uniform(0.0, 1.0, size=count))
    a = a / np.where(nrm > 0, nrm, 1.0)[:, None] * radius[:, None]
    a = np.minimum(a, 1.0)
    t = np.exp(rng.uniform(math.log(1e-6), math.log(1e3), size=(count, max_len)))
    t = np.where(mask, t, 0.0)
    return a, t


def _project_a(a: np.ndarray, p: float) -> np.ndarray:
    a = np.clip(a, 0.0, 1.0)
    nrm = (a ** p).sum(axis=-1, keepdims=True) ** (1.0 / p)
    return np.where(nrm > 1.0, a / np.where(nrm > 0, nrm, 1.0), a)


def lemma41_check(p: float, s: Sampler, hunt: bool = False, tol: float = TOL,
                  batch: int = 20_000) -> VerifyReport:
    """sum G(a_n t_n) <= G(sum a_n t_n) + p sum t_n G(a_n) for 0 <= a_n <= 1, ||a||_p <= 1, t >= 0.

    Slack below ``-tol * max(1, LHS)`` counts as a violation.
    """
    if not p >= 1:
        raise PreconditionError("p must be at least 1")
    rng = s.rng(41)
    worst, worst_in = math.inf, {}
    violators = []
    done = 0
    while done < s.count:
        k = min(batch, s.count - done)
        a, t = _lemma41_draw(rng, p, k)
        slack, lhs = lemma41_slack(a, t, p)
        scaled = slack / np.maximum(1.0, lhs)
        i = int(np.argmin(scaled))
        if scaled[i] < worst:
            worst = float(scaled[i])
            n = int(np.count_nonzero(t[i]))
            worst_in = {"a": a[i, :n], "t": t[i, :n]}
        for j in np.nonzero(scaled < -tol)[0][:10]:
            n = int(np.count_nonzero(t[j]))
            violators.append({"a": a[j, :n], "t": t[j, :n], "slack": float(slack[j])})
        done += k
    hunted = None
    if hunt and worst_in:
        # ascend LHS / RHS, which seeks tight instances rather than t -> 0
        a0, t0 = np.asarray(worst_in["a"]), np.asarray(worst_in["t"])
        n = a0.size

        def unpack(Z):
            return _project_a(Z[:, :n], p), np.exp(np.clip(Z[:, n:], math.log(1e-9), math.log(1e6)))

        def tightness(Z):
            sl, lh = lemma41_slack(*unpack(Z), p)
            rhs = lh + sl
            return np.where(rhs > 0, lh / np.where(rhs > 0, rhs, 1.0), -np.inf)

        z, ratio = ascent(tightness, np.concatenate([a0, np.log(t0)]), s.rng(42), steps=HUNT_STEPS)
        aa, tt = unpack(z[None, :])
        sl, lh = lemma41_slack(aa, tt, p)
        hunted = float(sl[0] / max(1.0, lh[0]))
        if hunted < worst:
            worst, worst_in = hunted, {"a": aa[0], "t": tt[0]}
        if hunted < -tol:
            violators.append({"a": aa[0], "t": tt[0], "slack": float(sl[0]), "source": "hunt"})
    notes = {"p": p, "hunt": hunt, "slack_scale": "relative to max(1, LHS)"}
    if hunted is not None:
        notes["hunt_slack"] = hunted
        notes["hunt_lhs_over_rhs"] = float(ratio)
    return VerifyReport(s.count + (1 if hunt else 0), worst, violators, tol, 0, worst_in, notes)


# ------------------------------------------------------------ min(xi, eta) lower bound

def lemma310_check(p: float, m: int, s: Sampler, tol: float = TOL, max_reject: int = 1000) -> VerifyReport:
    """<min(xi, eta), xi*> >= q^-1 M^-q in l_p^m with xi* the norming functional of xi."""
    if not p > 1:
        raise PreconditionError("p must exceed 1")
    if m < 1:
        raise PreconditionError("dimension must be positive")
    q = p / (p - 1.0)
    rng = s.rng(310)
    worst, worst_in = math.inf, {}
    violators, skipped = [], 0
    for _ in range(s.count):
        xi = np.abs(rng.standard_normal(m)) * (rng.random(m) < rng.uniform(0.3, 1.0))
        if not xi.any():
            xi[rng.integers(m)] = 1.0
        xi /= np.linalg.norm(xi, p)
        xs = xi ** (p - 1.0)
        M = math.exp(rng.uniform(0.0, math.log(50.0)))
        spread = rng.choice([0.01, 0.3, 3.0])
        for _ in range(max_reject):
            u = np.abs(xi + spread * np.abs(rng.standard_normal(m)) * (rng.random(m) < 0.7))
            if not u.any():
                continue
            eta = M * u / np.linalg.norm(u, p)
            if eta @ xs >= 1.0:
                break
        else:
            skipped += 1
            continue
        lhs = float(np.minimum(xi, eta) @ xs)
        rhs = M ** (-q) / q
        slack = lhs - rhs
        if slack < worst:
            worst, worst_in = slack, {"xi": xi, "eta": eta, "M": M}
        if slack < -tol:
            violators.append({"xi": xi, "eta": eta, "M": M, "slack": slack})
    return VerifyReport(s.count - skipped, worst, violators, tol, skipped, worst_in,
                        {"p": p, "q": q, "m": m})


# ------------------------------------------------------------ modular identity and equivalence

def _block_arrays(blocks: Sequence[SeqVector]):
    seen = set()
    for n, b in enumerate(blocks):
        if seen.intersection(b.indices):
            raise PreconditionError(f"block {n} overlaps an earlier block")
        seen.update(b.indices)
    return [np.asarray(b.values, dtype=float) for b in blocks]


def lemma42_modular_identity(blocks: Sequence[SeqVector], t, tol: float = TOL,
                             norm_tol: float = 1e-9) -> VerifyReport:
    """Lambda(sum t_n x_n) = sum t_n^2 (1 - a_n log|t_n|) with a_n = ||x_n||_2^2.

    Needs disjoint blocks with ||x_n||_F = 1 and |t_n| <= 1; the slack is the
    signed difference RHS - LHS and should vanish to rounding.
    """
    t = np.asarray(t, dtype=float)
    vals = _block_arrays(blocks)
    if t.shape != (len(vals),):
        raise PreconditionError("need one coefficient per block")
    if np.any(np.abs(t) > 1.0):
        raise PreconditionError("coefficients must satisfy |t_n| <= 1")
    for n, v in enumerate(vals):
        if abs(gauge(np.abs(v), F) - 1.0) > norm_tol:
            raise PreconditionError(f"block {n} is not normalised in l_F")
    lhs = float(sum(modular(tn * v, F) for tn, v in zip(t, vals)))
    a = np.array([float(v @ v) for v in vals])
    at = np.abs(t)
    logt = np.log(np.where(at > 0, at, 1.0))
    rhs = float(np.sum(t * t * (1.0 - a * logt)))
    dev = rhs - lhs
    viol = [{"t": t, "deviation": dev}] if abs(dev) > tol else []
    return VerifyReport(1, -abs(dev), viol, tol, 0, {"t": t},
                        {"lhs": lhs, "rhs": rhs, "a": a})


def k_cap(M: float) -> float:
    """Empirically calibrated cap for the equivalence constant at pairing ratio M."""
    return 2.0 * M * M


def lemma42_equivalence(b1: BasisFamily, b2: BasisFamily, M: float, s: Sampler,
                        enforce: bool = True, hints=None) -> ConstantEstimate:
    """Equivalence constant of two families whose paired vectors have norms within M.

    The first pairing ratio uses each family's own norm; the l_2 ratio is
    checked as well when both families live in the same norm. The estimate
    is compared with `k_cap`, which is an empirical calibration.
    """
    if len(b1) != len(b2):
        raise PreconditionError("families must have equal length")
    if not M >= 1:
        raise PreconditionError("M must be at least 1")
    slack = 1.0 + 1e-12
    n1 = b1.norms_of(np.eye(len(b1)))
    n2 = b2.norms_of(np.eye(len(b2)))
    if np.any(np.maximum(n1 / n2, n2 / n1) > M * slack):
        raise PreconditionError("paired vectors differ in norm by more than M")
    checked_l2 = type(b1.norm) is type(b2.norm) and b1.norm == b2.norm
    if checked_l2:
        l1 = np.linalg.norm(b1.matrix, axis=1)
        l2 = np.linalg.norm(b2.matrix, axis=1)
        if np.any(np.maximum(l1 / l2, l2 / l1) > M * slack):
            raise PreconditionError("paired vectors differ in l_2 norm by more than M")
    est = equivalence_constant(b1, b2, s, hints=hints)
    cap = k_cap(M)
    est.notes.update({"K_cap": cap, "K_cap_kind": "empirical", "within_cap": est.lower_bound <= cap,
                      "l2_pairing_checked": checked_l2, "M": M})
    if enforce and est.lower_bound > cap:
        raise ConditioningError("equivalence estimate exceeds the empirical cap",
                                estimate=est.lower_bound, cap=cap)
    return est


# ------------------------------------------------------------ block sandwich

_SPACES = {"l1": Lp(1.0), "l2": Lp(2.0), "max": Lp(math.inf), "c0": Lp(math.inf)}


def _aggregate(space: str, parts: np.ndarray) -> np.ndarray:
    """Combine per-block norms (rows = samples, cols = blocks)."""
    if space == "l2":
        return np.sqrt((parts * parts).sum(axis=1))
    if space == "l1":
        return parts.sum(axis=1)
    return parts.max(axis=1)


def thm24_sandwich(space: str, bs, s: Sampler, hints=None) -> ConstantEstimate:
    """Best two-sided C comparing ||sum x_n|| with the l_2 / l_1 / max
    aggregate of the block norms ||x_n||, in the matching ambient norm."""
    if space not in _SPACES:
        raise PreconditionError(f"space must be one of {sorted(_SPACES)}")
    norm = _SPACES[space]
    bases = bs.embedded() if isinstance(bs, (BlockStructure, Decomposition)) else None
    if bases is None:
        raise PreconditionError("expected a BlockStructure or Decomposition")
    dims = [m.shape[1] for m in bases]
    total = sum(dims)
    full = np.hstack(bases)
    cuts = np.cumsum([0] + dims)

    def ratio(C):
        whole = batch_norms(norm, C @ full.T)
        parts = np.column_stack([batch_norms(norm, C[:, cuts[i]:cuts[i + 1]] @ bases[i].T)
                                 for i in range(len(bases))])
        agg = _aggregate(space, parts)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.maximum(whole / agg, agg / whole)
        return np.where(np.isfinite(r), r, -np.inf)

    C = s.draws(total, stream=24)
    if hints is not None:
        H = np.atleast_2d(np.asarray(hints, dtype=float))
        C = np.vstack([np.linalg.lstsq(full, H.T, rcond=None)[0].T, C])
    C = np.vstack([np.eye(total), C])
    r = ratio(C)
    i = int(np.argmax(r))
    best, best_c = float(r[i]), C[i].copy()
    evals = len(C)
    if s.count > 0 and best > 1.0 + 1e-9:
        c2, val = ascent(ratio, best_c, s.rng(25))
        evals += HUNT_STEPS
        if val > best:
            best, best_c = val, c2
    best = float(ratio(best_c[None, :])[0])
    return ConstantEstimate(max(best, 1.0), {"coefficients": best_c}, samples_used=evals,
                            notes={"kind": "sandwich", "space": space, "blocks": len(bases)})
