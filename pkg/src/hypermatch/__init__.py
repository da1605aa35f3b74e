"""Exact and semi-random matching toolkit for k-uniform hypergraphs.

The package covers the whole constructive range of the rainbow-matching
problem for 3-graph families: the color-vertex reduction to (1,3)-partite
perfect matchings, extremal templates and closeness classification, exact
branch-and-bound solvers, exact-rational fractional matching LPs with
stable completion, absorbing-set machinery, two-round randomized sampling
with a nibble matcher, and the dispatching pipeline that ties them together.
"""

__version__ = "0.1.0"

from .core import (
    Family,
    Hypergraph,
    InputError,
    Matching,
    PartiteStructure,
    complete_hypergraph,
    is_balanced_partite,
    is_partite,
    is_perfect_matching,
    is_valid_matching,
    is_valid_rainbow,
)
from .constructions import (
    ClosenessReport,
    ExtremalTemplate,
    alpha_bad_vertices,
    closeness,
    closeness_to_extremal,
    density_check,
    gen_extremal_h13,
    gen_hnm,
    reduce_family,
    sharpness_family,
)
from .exact import (
    GreedyRainbowResult,
    IndependentSetResult,
    MaxMatchingResult,
    PerfectMatchingResult,
    RainbowResult,
    cover_matching,
    greedy_rainbow,
    has_balanced_independent_set,
    has_perfect_matching,
    is_stable,
    max_matching,
    rainbow_matching,
    stable_closure,
)
from .fractional import (
    FractionalSolution,
    PfracReport,
    SizeLimitError,
    fractional_matching,
    min_fractional_vertex_cover,
    pfrac_pipeline,
    stable_completion,
)
from .absorbing import (
    AbsorbingFamily,
    AbsorbOutcome,
    absorb_leftover,
    count_absorbing,
    is_absorbing,
    sample_absorbing_family,
)
from .nibble import (
    AlmostPerfectResult,
    NibbleResult,
    RoundSet,
    SamplingParams,
    almost_perfect,
    build_sparse,
    nibble_matching,
    paper_params,
    round_fractional,
    sample_rounds,
)
from .pipeline import (
    PROFILES,
    ExtremalPathResult,
    PipelineConfig,
    PipelineOutcome,
    extremal_path,
    greedy_pattern_matching,
    solve,
    solve_family,
)
from .generators import near_regular_typed, random_family, random_hypergraph, random_partite
from .scan import ScanRow, scan_threshold, to_csv
