"""Exact sum-GDoF of the two-user interference channel with limited
transmitter cooperation, with scheme synthesis, checking and simulation."""
from .channel import (
    ChannelParams,
    LevelBand,
    Regime,
    admissible_regimes,
    classify_regime,
    d_2e,
    d_3e,
    d_bc,
    d_ic,
    to_rational,
)
from .detsim import GrainedChannel, SimResult, grain_for, simulate
from .scheme import Codeword, DecodingPlan, JointMAC, Msg, Placement, Scheme, Step, Successive
from .synth import case_id, synthesize
from .theorems import (
    BoundSet,
    CoopBudget,
    Mode,
    PiecewiseCurve,
    SplitBudget,
    curve,
    general_converse,
    pi_plus,
    pi_star,
    sum_gdof,
)
from .verify import Finding, StructuralError, VerificationReport, verify

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "LevelBand",
    "Regime",
    "admissible_regimes",
    "classify_regime",
    "d_2e",
    "d_3e",
    "d_bc",
    "d_ic",
    "to_rational",
    "GrainedChannel",
    "SimResult",
    "grain_for",
    "simulate",
    "Codeword",
    "DecodingPlan",
    "JointMAC",
    "Msg",
    "Placement",
    "Scheme",
    "Step",
    "Successive",
    "case_id",
    "synthesize",
    "BoundSet",
    "CoopBudget",
    "Mode",
    "PiecewiseCurve",
    "SplitBudget",
    "curve",
    "general_converse",
    "pi_plus",
    "pi_star",
    "sum_gdof",
    "Finding",
    "StructuralError",
    "VerificationReport",
    "verify",
]
