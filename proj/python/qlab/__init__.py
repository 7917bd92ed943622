"""Python front end to the qlab C++ core."""

from ._qlab import (
    PauliString,
    QlabError,
    lb_bounded_memory,
    lb_compare_abs,
    lb_predict_abs,
    lb_qpca,
    plan_hash,
    qpca_estimate,
    quantum_enhanced_estimate,
    run_plan_toml,
    shadow_estimate,
    summary_csv,
)

__all__ = [
    "PauliString",
    "QlabError",
    "lb_bounded_memory",
    "lb_compare_abs",
    "lb_predict_abs",
    "lb_qpca",
    "plan_hash",
    "qpca_estimate",
    "quantum_enhanced_estimate",
    "run_plan_toml",
    "shadow_estimate",
    "summary_csv",
]
