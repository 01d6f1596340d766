"""Interference statistics for hard-core (carrier-sensing) wireless networks.

Thin python surface over the C++ core: survival probabilities of dependent
thinnings, analytic interference moments and correlation, and Monte Carlo
estimation. See the compiled module's docstrings for details.
"""

try:
    from ._matint import *  # noqa: F401,F403  (wheel layout)
    from ._matint import NO_FADING, __version__  # noqa: F401
except ImportError:  # build-tree layout: extension sits on sys.path directly
    from _matint import *  # noqa: F401,F403
    from _matint import NO_FADING, __version__  # noqa: F401

__all__ = [
    "NO_FADING",
    "ModelParams",
    "__version__",
    "correlation_interference",
    "covariance_interference",
    "exp_integral_ei",
    "fading_moment2",
    "gamma_overlap",
    "gamma_union",
    "interference_stats",
    "mean_interference",
    "p1",
    "p11",
    "p12",
    "p12r",
    "path_gain",
    "poisson_baseline_correlation",
    "poisson_baseline_stats",
    "product_density2",
    "simulate_retention",
    "simulate_stats",
    "variance_interference",
]
