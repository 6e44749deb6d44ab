"""Staircase encodings, boundary grids and downcore purity for pattern-avoiding permutations."""

from .enumeration import (
    I_closed,
    J_closed,
    binomial,
    catalan,
    fibonacci,
    max_nonzero_k,
    peak_value,
)
from .exceptions import (
    DomainError,
    DowncoreError,
    PermutationParseError,
    PermutationValidationError,
    ResourceLimitError,
)
from .grids import (
    BoxSet,
    DowncoreGraph,
    PurityReport,
    boundary_grid,
    construction_grid,
    count_independent_sets_by_size,
    downcore,
    duplicate_row,
    is_pure,
    is_skew_young,
    maximal_independent_sets,
    staircase_boxset,
)
from .permutations import (
    ExtremalProfile,
    Pattern,
    Permutation,
    avoids_all,
    contains_pattern,
    enumerate_avoiders,
    extremal_profile,
    is_123_avoiding_fast,
    is_skew_decomposable,
    parse_permutation,
    skew_components,
)
from .series import BivariateSeries, series_solve_F, verify_functional_equation
from .staircase import (
    StaircaseEncoding,
    decode,
    encode,
    is_valid_132_encoding,
    nonzero_count,
    staircase_downcore,
)

__version__ = "0.1.0"
