"""Shift spaces over finite and truncated-countable alphabets on the
lattices N and Z: languages, sliding block codes, higher-block and
1-block recodings, labeled-graph presentations, follower-set graphs,
nested-cylinder intersection, and the variable-length separation demo.
"""

from .errors import (
    EmptyShift,
    ForeignSymbol,
    Incompatible,
    InfiniteAlphabetUnsupported,
    InsufficientWindow,
    InteriorAddition,
    NoPeriodicSolution,
    NotAdmissible,
    NotMarkov,
    NotNested,
    OverlapMismatch,
    ParseError,
    ResourceBound,
    RuleGap,
    ShiftError,
    TruncationWarning,
    ValidationError,
    WindowTooShort,
)
from .kernel import (
    Alphabet,
    Cylinder,
    ONE_SIDED,
    Pattern,
    Point,
    ShiftSpec,
    TWO_SIDED,
    contains_point,
    format_word,
    is_empty,
    is_locally_admissible,
    language,
    merge_patterns,
    same_sequence,
)
from .codes import (
    CylinderPartition,
    LocalRule,
    SlidingBlockCode,
    apply_partition_code,
    apply_rule_point,
    apply_rule_word,
    empirical_order,
    image_language,
    partition_classify,
    preimage_count,
    singleton_partition,
)
from .recoding import (
    HigherBlockSystem,
    OneBlockRecoding,
    block_backward,
    block_forward,
    higher_block,
    one_block_recode,
)
from .presentations import (
    FollowerSetGraph,
    LabeledGraph,
    Presentation,
    export_dot,
    follower_set_graph,
    graph_language,
    label_multiplicity,
    markov_to_graph,
    present_image,
    relabel,
    vertex_sets,
)
from .nested import (
    CounterexampleSft,
    InfiniteFamily,
    NestedFamily,
    PathWitness,
    counterexample_sft,
    family_matches,
    intersect_prefix,
    limit_witness,
    min_first_gap,
    normalize_family,
)
from .svl import (
    context_cap,
    context_sequence,
    duality_holds,
    forced_continuation,
    separation_count,
    svl_image_window,
    svl_partition,
)
from .builtins import (
    full_shift,
    golden_mean,
    identity_code,
    projection_code,
    xor_code,
)

__version__ = "0.1.0"
