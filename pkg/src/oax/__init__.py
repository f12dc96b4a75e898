"""Axis-decomposed reasoning over ODRL spatial constraints."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    NotSubmittableError,
    OaxError,
    PolicyParseError,
    ProverNotFoundError,
)
from .interval import AxisConstraint, Density, Interval, denote, intersect, is_empty, is_subset  # noqa: E402
from .model import Policy, parse_context, parse_policy, serialize_policy  # noqa: E402
from .profile import Axis, AxisOperand, AxisProfile, default_profile  # noqa: E402
from .verdict import (  # noqa: E402
    Satisfaction,
    SubsumptionVerdict,
    Verdict3,
    box_subsumes,
    box_verdict,
    request_satisfied,
)
from .evaluation import evaluate_conflict, evaluate_request, evaluate_subsumption  # noqa: E402
from .quality import check_refinement, lint, validate  # noqa: E402

__all__ = [
    "Axis", "AxisConstraint", "AxisOperand", "AxisProfile", "ConfigError", "Density", "Interval",
    "NotSubmittableError", "OaxError", "Policy", "PolicyParseError", "ProverNotFoundError",
    "Satisfaction", "SubsumptionVerdict", "Verdict3", "box_subsumes", "box_verdict", "check_refinement",
    "default_profile", "denote", "evaluate_conflict", "evaluate_request", "evaluate_subsumption",
    "intersect", "is_empty", "is_subset", "lint", "parse_context", "parse_policy", "request_satisfied",
    "serialize_policy", "validate",
]
