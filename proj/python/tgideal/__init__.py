"""Two-grid ideal interpolation analysis toolkit.

Quality measures, ideal-set classification, explicit ideal-interpolation
constructions and the symmetrized two-grid iteration, all on dense
matrices.
"""

from ._core import (
    Classification,
    Decomposition,
    SolveTrace,
    __version__,
    a_norm,
    classify,
    cli_main,
    e_tg,
    epsilon_smoother,
    ideal_interpolation,
    k_measure,
    k_tg,
    mu_star,
    mu_x,
    p_sharp,
    range_equiv_p0,
    read_matrix_market,
    run_suite,
    schur_smoothers,
    smoother_constants,
    suite_names,
    tg_solve,
    theta_angle,
    worst_case_mu,
    write_matrix_market,
)

__all__ = [
    "Classification",
    "Decomposition",
    "SolveTrace",
    "__version__",
    "a_norm",
    "classify",
    "cli_main",
    "e_tg",
    "epsilon_smoother",
    "ideal_interpolation",
    "k_measure",
    "k_tg",
    "mu_star",
    "mu_x",
    "p_sharp",
    "range_equiv_p0",
    "read_matrix_market",
    "run_suite",
    "schur_smoothers",
    "smoother_constants",
    "suite_names",
    "tg_solve",
    "theta_angle",
    "worst_case_mu",
    "write_matrix_market",
]
