"""Python bindings for the carpetlab C++ core."""

try:
    from ._carpetlab import (  # installed wheel layout
        ball_measure,
        beta_exponent,
        cell_measure,
        corner_move,
        cross_graph_resistance,
        crosswire_resistance,
        diag_graph_resistance,
        diagonal_profile,
        grid_resistance,
        harnack_constant,
        mean_exit_time,
        parse_rho,
        psi,
        scaling_report,
        y_chain,
    )
except ImportError:  # in-tree build: the extension sits on sys.path directly
    from _carpetlab import (
        ball_measure,
        beta_exponent,
        cell_measure,
        corner_move,
        cross_graph_resistance,
        crosswire_resistance,
        diag_graph_resistance,
        diagonal_profile,
        grid_resistance,
        harnack_constant,
        mean_exit_time,
        parse_rho,
        psi,
        scaling_report,
        y_chain,
    )

__all__ = [
    "ball_measure",
    "beta_exponent",
    "cell_measure",
    "corner_move",
    "cross_graph_resistance",
    "crosswire_resistance",
    "diag_graph_resistance",
    "diagonal_profile",
    "grid_resistance",
    "harnack_constant",
    "mean_exit_time",
    "parse_rho",
    "psi",
    "scaling_report",
    "y_chain",
]
