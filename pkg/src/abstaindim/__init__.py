"""Optimal mistake/abstention tradeoffs for online classification.

Computes Littlestone-style dimensions of finite hypothesis classes under a
mistake budget with an abstention option, extracts and verifies difficult
extended mistake trees, and simulates the optimal learner against optimal
adversaries, including the non-realizable (l-bias) and soft-prediction
settings.
"""

from .adversaries import (
    AdversaryProtocolError,
    MinimaxAdversary,
    RandomizedAdversary,
    TreeAdversary,
    bias_adversary,
)
from .dimensions import (
    NEG_INF,
    DimCache,
    SearchCapExceeded,
    SizeGuardExceeded,
    binom_leq,
    bound_finiteub,
    bound_infiniteub,
    egg_drop,
    eldim,
    eldim_alg_form,
    eldim_upper_finite,
    eldim_upper_growth,
    labelings_on_tree,
    ldim,
    shatter_enumerative,
    shatter_recursive,
)
from .experts import AdviceStream, advice_stream, l_mistake_check, parse_advice_csv, read_advice_csv
from .experts import reduce as reduce_experts
from .game import (
    PenaltyLedger,
    Round,
    Transcript,
    TruncatedRunError,
    check_szb,
    run,
    run_randomized,
    stream_run,
    transcript_to_jsonl,
)
from .hypotheses import (
    Domain,
    FormatError,
    HypothesisClass,
    VersionSpace,
    bias_check,
    bias_expand,
    class_to_csv,
    class_to_json,
    domain_of,
    from_table,
    parse_class_csv,
    parse_class_json,
    product,
    read_class_file,
    realizable_check,
    singleton_unions,
    thresholds,
    union_name,
)
from .learners import (
    ABSTAIN,
    SOA,
    SOADK,
    ConstantFractional,
    FractionalWrapper,
    RealizabilityViolation,
    as_fractional,
)
from .trees import (
    DifficultyReport,
    DomainTooSmall,
    Leaf,
    Node,
    ValidationReport,
    add_dashed_right,
    best_move,
    check_difficulty,
    exhaustive_max_difficulty,
    from_dot,
    max_difficulty,
    mistake_tree_witness,
    singleton_leaf_flips,
    singleton_tree,
    threshold_tree,
    to_dot,
    tree_from_json,
    tree_to_json,
    validate,
    witness,
)

__version__ = "0.1.0"
