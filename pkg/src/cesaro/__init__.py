"""Streaming summability analysis over geometric block partitions.

The library computes Cesàro and strong Cesàro means, block means over the
partitions [alpha^(j-1), alpha^j) for arbitrary bases alpha > 1, the
dyadic sup norm, and asymptotic densities of integer sets, all in single
ordered passes with compensated accumulation.  On top of that sit exact
identity checks (partial-sum decomposition over blocks, telescoping of
block sums) and finite-truncation checkers for the equivalence between
Cesàro convergence and block-mean convergence.
"""

__version__ = "0.1.0"

from .analysis import (
    DEFAULT_BASES,
    BaseVerdict,
    CounterexampleDemo,
    LimitEstimate,
    TheoremReport,
    check_theorem1,
    check_theorem2,
    counterexample_demo,
    tail_band,
)
from .backend import backend_name
from .blocks import GeometricPartition, block_bounds, block_index_of, iota, weight
from .density import (
    DensityReport,
    a_s_density_formulas,
    block_density,
    counting,
    density_band,
)
from .errors import DomainError, HorizonError, ParameterError
from .seqcore import (
    IndicatorSet,
    SequenceSource,
    a_s_member,
    a_s_set,
    alternating,
    constant,
    counterexample,
    counterexample_sign,
    from_file,
    from_runs,
    from_source,
    indicator,
    multiples_of,
    paper_example_member,
    paper_example_set,
    random_bounded,
    sup_abs_prefix,
)
from .summability import (
    CARDINALITY,
    REAL_LENGTH,
    BlockMeanSeries,
    MeanSeries,
    W1NormState,
    block_means,
    cesaro_means,
    decomposition_residual,
    shifted,
    strong_cesaro_means,
    telescoping_residual,
    telescoping_residuals,
    w1_block_abs_means,
    w1_norm_partial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
