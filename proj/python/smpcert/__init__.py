"""Extremal polygon norms for 2x2 matrix pairs with two spectrum maximizing products.

Exact inputs are ints, fractions.Fraction or "p/q" strings; floats select the
float backend. Exact results come back as Fraction.
"""

from ._smpcert import (
    SmpcertError,
    admissible_interval,
    bounds,
    certify,
    figure_svg,
    kappa_max,
    mu_thresholds,
    permutable,
    run_cli,
)

__all__ = [
    "SmpcertError",
    "admissible_interval",
    "bounds",
    "certify",
    "figure_svg",
    "kappa_max",
    "mu_thresholds",
    "permutable",
    "run_cli",
]
