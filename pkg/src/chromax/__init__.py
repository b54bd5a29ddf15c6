"""chromax: exact machinery for maximizing the number of proper q-colorings
of graphs with given vertex and edge counts.

Graph constructions and exact counters live alongside the two
quadratically-constrained linear programs whose solutions describe the
extremal graphs, plus exhaustive desk-scale searches and a numeric
verification suite.
"""

from .graphs import (
    BipartitionSpec,
    Graph,
    GraphFormatError,
    VERTEX_CAP,
    decode,
    encode,
    g_alpha,
    g_alpha_prime,
    linial_graph,
    pendant_graph,
    semi_complete,
    sparse_optimal,
    turan,
    turan_edge_count,
    are_isomorphic,
)
from .counting import (
    ChromaticPolynomial,
    acyclic_orientations,
    bipartite_star_count_q3,
    chromatic_polynomial,
    count_cliques,
    count_colorings,
    footprint_count_q3,
    turan_coloring_count,
)
from .optimize import (
    OptResult,
    ProgramValues,
    SubsetVector,
    SweepResult,
    evaluate,
    kappa,
    opt2_closed_form,
    opt_closed_form_q3,
    opt_closed_form_sparse,
    partitions_of,
    solve_opt1_numeric,
    solve_opt2_all_partitions,
    solve_opt2_partition,
    stationarity_residual,
)
from .search import (
    PendantCaseReport,
    SearchReport,
    classify_extremal,
    enumerate_graphs,
    pendant_case_report,
    search_max_cliques,
    search_max_colorings,
    search_min_colorings,
)
from .verify import (
    CheckResult,
    check_Fq,
    check_claim5_inequality,
    check_partition_colors,
    check_turan_routine,
    cross_check_counting,
    run_all_checks,
)

__version__ = "0.1.0"
