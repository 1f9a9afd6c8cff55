"""Finitely supported coordinate vectors, block structures and sampling.

Everything an estimator needs that is not a norm lives here: the sparse
vector type, finite sections of block decompositions, the deterministic
sampler, and the `ConstantEstimate` record all estimators return.
"""
from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import PreconditionError, ResidualError

__all__ = [
    "SeqVector",
    "BlockStructure",
    "Decomposition",
    "Sampler",
    "ConstantEstimate",
    "block_decompose",
    "parallel_map",
    "max_workers",
]

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class SeqVector:
    """A finitely supported real sequence, indexed from 1.

    Zero entries are never stored, so two vectors compare equal exactly when
    they agree coordinatewise.
    """

    indices: tuple[int, ...] = ()
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise PreconditionError("indices and values differ in length")
        pairs = sorted(
            (int(i), float(v)) for i, v in zip(self.indices, self.values) if v != 0.0
        )
        idx = tuple(i for i, _ in pairs)
        if any(i < 1 for i in idx):
            raise PreconditionError("SeqVector indices start at 1")
        if len(set(idx)) != len(idx):
            raise PreconditionError("duplicate index in SeqVector")
        if any(not math.isfinite(v) for _, v in pairs):
            raise PreconditionError("SeqVector entries must be finite")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", tuple(v for _, v in pairs))

    @classmethod
    def from_mapping(cls, entries: Mapping[int, float]) -> "SeqVector":
        return cls(tuple(entries.keys()), tuple(entries.values()))

    @classmethod
    def from_dense(cls, arr, start: int = 1) -> "SeqVector":
        arr = np.asarray(arr, dtype=float).ravel()
        nz = np.flatnonzero(arr)
        return cls(tuple(int(i) + start for i in nz), tuple(float(arr[i]) for i in nz))

    @classmethod
    def unit(cls, i: int) -> "SeqVector":
        return cls((i,), (1.0,))

    @property
    def dim(self) -> int:
        """Largest index in the support (0 for the zero vector)."""
        return self.indices[-1] if self.indices else 0

    @property
    def support(self) -> tuple[int, ...]:
        return self.indices

    def dense(self, n: int | None = None) -> np.ndarray:
        n = self.dim if n is None else n
        if self.dim > n:
            raise PreconditionError(f"vector supported up to {self.dim}, section has {n}")
        out = np.zeros(n)
        for i, v in zip(self.indices, self.values):
            out[i - 1] = v
        return out

    def __getitem__(self, i: int) -> float:
        try:
            return self.values[self.indices.index(i)]
        except ValueError:
            return 0.0

    def __len__(self) -> int:
        return len(self.indices)

    def _combine(self, other: "SeqVector", sign: float) -> "SeqVector":
        acc = dict(zip(self.indices, self.values))
        for i, v in zip(other.indices, other.values):
            acc[i] = acc.get(i, 0.0) + sign * v
        return SeqVector.from_mapping(acc)

    def __add__(self, other: "SeqVector") -> "SeqVector":
        return self._combine(other, 1.0)

    def __sub__(self, other: "SeqVector") -> "SeqVector":
        return self._combine(other, -1.0)

    def __mul__(self, scalar: float) -> "SeqVector":
        return SeqVector(self.indices, tuple(scalar * v for v in self.values))

    __rmul__ = __mul__

    def __neg__(self) -> "SeqVector":
        return self * -1.0

    def to_json(self) -> dict:
        return {"entries": [[i, v] for i, v in zip(self.indices, self.values)]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SeqVector":
        entries = obj["entries"]
        return cls(tuple(int(i) for i, _ in entries), tuple(float(v) for _, v in entries))


@dataclass(frozen=True, eq=False)
class BlockStructure:
    """Consecutive coordinate windows with a basis matrix per window.

    ``boundaries`` is ``p_0 = 0 < p_1 < ...``; block ``n`` (0-based here) owns
    coordinates ``p_n + 1 .. p_{n+1}`` and ``blocks[n]`` has one column per
    basis vector of the block, expressed in those coordinates.
    """

    boundaries: tuple[int, ...]
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        b = tuple(int(x) for x in self.boundaries)
        if len(b) < 2 or b[0] != 0 or any(y <= x for x, y in zip(b, b[1:])):
            raise PreconditionError("boundaries must be 0 = p_0 < p_1 < ...")
        if len(self.blocks) != len(b) - 1:
            raise PreconditionError("need one basis matrix per block")
        mats = []
        for n, m in enumerate(self.blocks):
            m = np.array(m, dtype=float, ndmin=2)
            width = b[n + 1] - b[n]
            if m.shape[0] != width:
                raise PreconditionError(f"block {n}: basis has {m.shape[0]} rows, window is {width}")
            if m.shape[1] > width or np.linalg.matrix_rank(m) < m.shape[1]:
                raise PreconditionError(f"block {n}: basis must have full column rank")
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "boundaries", b)
        object.__setattr__(self, "blocks", tuple(mats))

    @classmethod
    def coordinate(cls, widths: Sequence[int]) -> "BlockStructure":
        """Blocks that are whole coordinate windows with the unit-vector basis."""
        bounds = np.concatenate([[0], np.cumsum(widths)]).astype(int)
        return cls(tuple(bounds), tuple(np.eye(w) for w in widths))

    @property
    def dim(self) -> int:
        return self.boundaries[-1]

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(m.shape[1] for m in self.blocks)

    def window(self, n: int) -> slice:
        return slice(self.boundaries[n], self.boundaries[n + 1])

    def embedded(self) -> list[np.ndarray]:
        """Block bases as ``dim x d_n`` matrices in ambient coordinates."""
        out = []
        for n, m in enumerate(self.blocks):
            e = np.zeros((self.dim, m.shape[1]))
            e[self.window(n)] = m
            out.append(e)
        return out

    def to_json(self) -> dict:
        return {"boundaries": list(self.boundaries), "blocks": [m.tolist() for m in self.blocks]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "BlockStructure":
        """Without ``blocks`` every window gets its unit-vector basis."""
        b = tuple(int(x) for x in obj["boundaries"])
        if "blocks" not in obj:
            return cls.coordinate([y - x for x, y in zip(b, b[1:])])
        return cls(b, tuple(np.array(m, dtype=float) for m in obj["blocks"]))


@dataclass(frozen=True, eq=False)
class Decomposition:
    """A direct sum of subspaces of R^dim given by ambient basis matrices.

    Unlike `BlockStructure` the summands may share coordinates, which is what
    the skewed-subspace demonstrations need.
    """

    bases: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(np.array(m, dtype=float, ndmin=2) for m in self.bases)
        if not mats:
            raise PreconditionError("empty decomposition")
        dims = {m.shape[0] for m in mats}
        if len(dims) != 1:
            raise PreconditionError("summands must live in the same ambient space")
        full = np.hstack(mats)
        if full.shape[1] > full.shape[0] or np.linalg.matrix_rank(full) < full.shape[1]:
            raise PreconditionError("summands are not linearly independent")
        object.__setattr__(self, "bases", mats)

    @property
    def dim(self) -> int:
        return self.bases[0].shape[0]

    @property
    def n_blocks(self) -> int:
        return len(self.bases)

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(m.shape[1] for m in self.bases)

    def embedded(self) -> list[np.ndarray]:
        return list(self.bases)


def block_decompose(x: SeqVector | np.ndarray, bs: BlockStructure) -> list[np.ndarray]:
    """Coefficients of ``x`` in each block basis.

    Raises `ResidualError` if ``x`` has mass outside the covered coordinates
    or outside the span of the block bases.
    """
    if isinstance(x, SeqVector):
        if x.dim > bs.dim:
            raise ResidualError(f"coordinate {x.dim} lies outside every block")
        vec = x.dense(bs.dim)
    else:
        vec = np.asarray(x, dtype=float)
    scale = max(1.0, float(np.max(np.abs(vec), initial=0.0)))
    coeffs = []
    for n, basis in enumerate(bs.blocks):
        part = vec[bs.window(n)]
        c, *_ = np.linalg.lstsq(basis, part, rcond=None)
        resid = np.max(np.abs(basis @ c - part), initial=0.0)
        if resid > RESIDUAL_TOL * scale:
            raise ResidualError(f"block {n}: residual {resid:.3g} outside the block span")
        coeffs.append(c)
    return coeffs


def block_assemble(coeffs: Sequence[np.ndarray], bs: BlockStructure) -> np.ndarray:
    out = np.zeros(bs.dim)
    for n, (c, basis) in enumerate(zip(coeffs, bs.blocks)):
        out[bs.window(n)] = basis @ np.asarray(c, dtype=float)
    return out


STRATEGIES = ("sphere", "extreme", "grid")


@dataclass(frozen=True)
class Sampler:
    """Seeded source of test directions.

    Every draw is a pure function of ``(seed, stream, strategy)``; callers
    pick distinct ``stream`` numbers for independent sub-sequences so that
    parallel evaluation never changes results.

    Strategies:
      ``sphere``  Gaussian directions normalised to the Euclidean sphere.
      ``extreme`` signed flat vectors on random supports whose sizes cycle
                  through 1, 2, 4, ... up to the dimension.
      ``grid``    points of the lattice ``{-1, ..., 1}^dim`` with
                  ``resolution`` levels per axis (zero excluded).
    """

    seed: int
    count: int = 256
    strategy: str = "sphere"
    resolution: int = 5

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise PreconditionError(f"unknown sampling strategy {self.strategy!r}")
        if self.count < 0:
            raise PreconditionError("sample count must be non-negative")
        if not 0 <= int(self.seed) < 2**64:
            raise PreconditionError("seed must fit in 64 bits")
        if self.strategy == "grid" and self.resolution < 2:
            raise PreconditionError("grid resolution must be at least 2")

    def rng(self, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([int(self.seed), int(stream)]))

    def with_count(self, count: int) -> "Sampler":
        return Sampler(self.seed, count, self.strategy, self.resolution)

    def with_strategy(self, strategy: str) -> "Sampler":
        return Sampler(self.seed, self.count, strategy, self.resolution)

    def draws(self, dim: int, count: int | None = None, stream: int = 0) -> np.ndarray:
        """A ``(count, dim)`` array of draws for this strategy."""
        count = self.count if count is None else count
        rng = self.rng(stream)
        if count == 0 or dim == 0:
            return np.zeros((count, dim))
        if self.strategy == "sphere":
            g = rng.standard_normal((count, dim))
            return g / np.linalg.norm(g, axis=1, keepdims=True)
        if self.strategy == "extreme":
            return extreme_draws(rng, dim, count)
        return grid_draws(rng, dim, count, self.resolution)


def extreme_draws(rng: np.random.Generator, dim: int, count: int) -> np.ndarray:
    sizes = [1 << k for k in range(int(math.log2(dim)) + 1)]
    if sizes[-1] != dim:
        sizes.append(dim)
    out = np.zeros((count, dim))
    for i in range(count):
        k = sizes[i % len(sizes)]
        supp = rng.choice(dim, size=k, replace=False)
        out[i, supp] = rng.choice([-1.0, 1.0], size=k)
    return out


def grid_draws(rng: np.random.Generator, dim: int, count: int, resolution: int) -> np.ndarray:
    levels = np.linspace(-1.0, 1.0, resolution)
    total = resolution**dim
    if total - 1 <= count:
        pts = np.array(list(itertools.product(levels, repeat=dim)))
        return pts[np.any(pts != 0.0, axis=1)]
    pts = levels[rng.integers(0, resolution, size=(count, dim))]
    zero = ~np.any(pts != 0.0, axis=1)
    pts[zero, 0] = 1.0
    return pts


@dataclass
class ConstantEstimate:
    """A certified lower bound on a supremum together with its witness.

    ``witness`` holds whatever configuration attains ``lower_bound`` (JSON
    friendly: lists, floats); re-evaluating it reproduces the bound.
    """

    lower_bound: float
    witness: dict[str, Any]
    samples_used: int
    exhaustive_signs: bool = False
    notes: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "witness": _jsonable(self.witness),
            "samples_used": self.samples_used,
            "exhaustive_signs": self.exhaustive_signs,
            "notes": _jsonable(self.notes),
        }


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [[float(z.real), float(z.imag)] for z in obj.ravel()] if obj.ndim == 1 else [
                [[float(z.real), float(z.imag)] for z in row] for row in obj
            ]
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    return obj


def to_jsonable(obj):
    """Convert numpy-laden results into plain JSON types."""
    return _jsonable(obj)


def max_workers() -> int:
    """Parallelism cap from ``BANACHLAB_THREADS`` (default 1)."""
    raw = os.environ.get("BANACHLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Iterable, workers: int | None = None) -> list:
    """Order-preserving map; threads only when ``BANACHLAB_THREADS`` > 1."""
    items = list(items)
    workers = max_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def load_json(path_or_obj):
    if isinstance(path_or_obj, (str, os.PathLike)):
        with open(path_or_obj) as fh:
            return json.load(fh)
    return path_or_obj
