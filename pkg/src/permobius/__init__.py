"""Mobius function on the permutation pattern poset: evaluation, zero
certificates, census sweeps and structural verification."""

from .permcore import (
    BudgetError,
    Embedding,
    IntervalCopy,
    Perm,
    PermError,
    SYMMETRY_LABELS,
    adjacencies,
    apply_symmetry,
    canonical_symmetry_form,
    compose,
    compose_symmetries,
    contains,
    direct_sum,
    down_set,
    embeddings,
    find_sum_split_interval,
    fmt,
    has_opposing_adjacencies,
    inflate,
    inflate_at,
    interval_copies,
    interval_set,
    is_adjacency_free,
    is_simple,
    parse,
    pattern_of,
    perm,
    skew_sum,
    symmetry_orbit,
)
from .mobius import (
    FinitePosetView,
    MobiusCache,
    i_switch,
    interval_as_poset,
    mobius,
    mobius_poset,
    principal_mobius,
)
from .zerorules import (
    ANNIHILATOR_PAIRS,
    BASE_ANNIHILATORS,
    CONJECTURED_PAIRS,
    AnnihilatorPair,
    BaseAnnihilator,
    OpposingAdjacencies,
    SumAnnihilator,
    ZeroCertificate,
    certificate_line,
    certify_zero,
    describe_certificate,
    sigma_sum_rule,
    verify_certificate,
)
from .census import (
    CensusRow,
    adjacency_counts,
    count_adjacency_classes,
    density_bound_report,
    emit_table,
    render_density,
    sweep,
    zero_density,
)
from .verify import (
    CoreInvariantError,
    PreconditionError,
    Report,
    TippedCore,
    run_theorem_suites,
)

__version__ = "0.1.0"
