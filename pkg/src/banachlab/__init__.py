"""Finite-section computations in Orlicz, twisted-sum and block-decomposed
sequence spaces, plus small-matrix operator algebra."""

__version__ = "0.1.0"

from .errors import (BanachLabError, ConditioningError, ConvergenceError, PreconditionError,
                     ResidualError, SearchExhaustedError)
from .norms import BasisFamily, BlockEuclidean, Lp, Musielak, OrliczGauge, eval_norm
from .orlicz import F, G, MusielakProfile, OrliczFn, gauge, modular
from .seqcore import BlockStructure, ConstantEstimate, Decomposition, Sampler, SeqVector

__all__ = [
    "__version__",
    "BanachLabError", "ConditioningError", "ConvergenceError", "PreconditionError",
    "ResidualError", "SearchExhaustedError",
    "BasisFamily", "BlockEuclidean", "Lp", "Musielak", "OrliczGauge", "eval_norm",
    "F", "G", "MusielakProfile", "OrliczFn", "gauge", "modular",
    "BlockStructure", "ConstantEstimate", "Decomposition", "Sampler", "SeqVector",
]
