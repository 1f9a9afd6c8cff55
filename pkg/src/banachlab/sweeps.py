"""Size sweeps shared by the CLI, the scripts and the acceptance tests."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .norms import BasisFamily, OrliczGauge
from .seqcore import Sampler
from .twisted import aligned_draws, canonical_basis, canonical_blocks, kalton_peck, splitting_deficiency
from .uncond import absoluteness_estimate, joint_basis, random_hilbertian_section, ubc_estimate

__all__ = ["GrowthRow", "twisted_growth", "HilbertianRow", "hilbertian_section_ubc", "hilbertian_sweep"]


@dataclass
class GrowthRow:
    n: int
    ubc: float
    absoluteness: float
    splitting: float
    exhaustive_signs: bool

    def to_json(self):
        return asdict(self)


def twisted_growth(sizes, f: str = "identity", seed: int = 0, count: int = 64, hints: int = 16,
                   splitting_count: int = 256, rounds: int = 50) -> list[GrowthRow]:
    """ubc and absoluteness of the canonical 2-block basis and the splitting
    deficiency C(n), for each section size n."""
    rows = []
    for n in sizes:
        t = kalton_peck(int(n), f)
        s = Sampler(seed, count=count, strategy="extreme")
        h = aligned_draws(t, s, hints)
        u = ubc_estimate(canonical_basis(t), s, hints=h)
        a = absoluteness_estimate(canonical_blocks(t), t, s, hints=h)
        c = splitting_deficiency(t, int(n), Sampler(seed, count=splitting_count, strategy="extreme"),
                                 rounds=rounds)
        rows.append(GrowthRow(int(n), u.lower_bound, a.lower_bound, c.C, u.exhaustive_signs))
    return rows


@dataclass
class HilbertianRow:
    seed: int
    blocks: int
    vectors: int
    distortion: float
    ubc: float

    def to_json(self):
        return asdict(self)


def hilbertian_section_ubc(seed: int, n_blocks: int, max_width: int = 4,
                           max_distortion: float = 2.0, count: int = 64) -> HilbertianRow:
    """ubc in l_F of the joint basis (orthonormal for the block Euclidean
    norm, l_2-orthogonal) of a random uniformly Hilbertian block section."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 45]))
    bs, g2, gE, dist = random_hilbertian_section(rng, n_blocks, max_width, max_distortion)
    Bs = joint_basis(bs, g2, gE)
    cols = [emb @ B for emb, B in zip(bs.embedded(), Bs)]
    fam = BasisFamily.from_matrix(np.hstack(cols).T, OrliczGauge())
    est = ubc_estimate(fam, Sampler(seed, count=count, strategy="sphere"))
    return HilbertianRow(seed, n_blocks, len(fam), max(dist), est.lower_bound)


def hilbertian_sweep(seeds, sizes, **kw) -> list[HilbertianRow]:
    return [hilbertian_section_ubc(sd, n, **kw) for sd in seeds for n in sizes]
