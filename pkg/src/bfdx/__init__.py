"""Bayes factors, evidence ratios, Lindley cases and ROPE decisions for point nulls."""

__version__ = "0.1.0"

from .bayes_factors import (
    BfKind,
    BinomialData,
    GaussianSummary,
    Interval,
    bf_threshold_t,
    binom_bf01,
    jzs_bf01,
    mu_bounds,
    point_bf,
    robert_bf,
    robert_required_mean,
    si_bf01,
)
from .errors import BfdxError, BracketError, ConvergenceError, DomainError, InfeasibleError
from .evidence_ratios import RegionSet, gaussian_regions, binom_regions
from .lindley import LindleyReport, detect_lindley_case, lindley_probability
from .rope import Rope, Verdict, decide
from .simulation import SimulationResult, simulate_lindley_rate
