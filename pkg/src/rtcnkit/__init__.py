"""Ranked tree-child networks: counting, bijections, sampling, containment."""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    KEEP,
    BoatSequence,
    Branching,
    DagNode,
    DecisionVector,
    EventCode,
    LabeledHistoryTree,
    NetworkDag,
    ParseError,
    Permutation,
    PhyloTree,
    RankArray,
    Reticulation,
    TranspositionSeq,
    ValidationError,
    code_to_dag,
    dag_to_code,
    profile,
    validate_boat,
    validate_code,
    validate_decisions,
    validate_history,
    validate_perm,
    validate_phylo,
    validate_ranks,
    validate_transpositions,
)
from .codecs import (  # noqa: F401
    format_boat,
    format_decisions,
    format_object,
    format_perm,
    format_phylo,
    format_rtcn,
    parse_boat,
    parse_decisions,
    parse_object,
    parse_perm,
    parse_phylo,
    parse_ranked_tree,
    parse_rtcn,
)
from .enumeration import (  # noqa: F401
    GrowBranching,
    GrowReticulation,
    apply_growth,
    containing_count,
    enumerate_codes,
    enumerate_growth_ops,
    enumerate_ranked_trees,
    rt_count,
    rtc_count,
    rtc_count_by_branching,
    sample_uniform,
    stirling1,
    strip_bottom,
)
from .boat import (  # noqa: F401
    boat_to_rtcn,
    enumerate_boats,
    extend_ranks,
    max_rank_return_count,
    rank_map,
    rank_unmap,
    reduce_ranks,
    rtcn_to_boat,
)
from .treeperm import (  # noqa: F401
    ReplacementStep,
    cycle_count,
    insert_retic,
    perm_to_transpositions,
    replace_retic,
    replacement_steps,
    rtcn_to_treeperm,
    transpositions_to_perm,
    treeperm_to_rtcn,
)
from .containment import (  # noqa: F401
    contains,
    decisions_from_pair,
    decisions_to_history,
    enumerate_decisions,
    expand,
    history_to_decisions,
    label_phylo,
    pair_to_phylo,
    phylo_to_pair,
    reduce_by_choice,
)
from .stats import (  # noqa: F401
    ExperimentReport,
    boat_return_experiment,
    chi_square_stat,
    exact_branching_pmf,
    exact_moments,
    ks_normal_distance,
    normality_report,
    sample_branching_counts,
    samples_to_csv,
)
from .dot import export_dot  # noqa: F401
from .verify import CheckResult, run_suite  # noqa: F401
