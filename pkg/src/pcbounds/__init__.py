"""Bounds on the probability of causation from population-level evidence.

The probability of causation for an exposed individual who developed the
outcome is ``P(Y(0) = 0 | X = 1, Y(1) = 1)``. It is not identified from data,
but it can be bounded. This package computes those bounds for four kinds of
evidence and checks each against a brute-force search over joint laws of the
potential responses.
"""

from .bounds import (
    ObservationalJoint,
    StratifiedMargins,
    Stratum,
    covariate_conditional_bounds,
    covariate_marginal_bounds,
    simple_bounds,
    tian_pearl_bounds,
)
from .core import ExperimentalMargins, Interval, Probability, clamp_to_unit, risk_ratio
from .errors import (
    ConditioningEventImpossible,
    DegenerateTable,
    InconsistentEvidence,
    ParseError,
    PCBoundsError,
    SchemaMismatch,
    TooManyStrata,
    UnknownStratum,
)
from .mediation import (
    MediatedObservations,
    MediatorMargins,
    PotentialPairJoint,
    compose_ystar,
    extract_mediator_margins,
    markov_check,
    mediation_bounds,
    ystar_margins,
)
from .oracle import (
    GridSpec,
    OracleResult,
    frechet_oracle_simple,
    oracle_covariate_marginal,
    oracle_mediation,
    oracle_tian_pearl,
)

__version__ = "0.1.0"
