"""Exact model checking of a non-SAS plane.

Points and lines are those of the rational Euclidean plane. Angle
congruence is redefined point by point through bijections of (0, π/2), which
keeps Playfair's axiom but breaks SAS and Euclid's parallel postulate.
"""

__version__ = "0.1.0"

from nonsas.checker import (  # noqa: E402
    AXIOM_IDS,
    CheckResult,
    Domain,
    Status,
    canonical_domain,
    main_theorem,
    replay,
    run_check,
    run_suite,
)
from nonsas.labeling import (  # noqa: E402
    LabelScheme,
    builtin_scheme,
    congruent,
    counterexample_scheme,
    identity_scheme,
    label_of,
    power_scheme,
)
from nonsas.values import ExactPi, Interval, Precision, TriBool  # noqa: E402

__all__ = [
    "AXIOM_IDS", "CheckResult", "Domain", "ExactPi", "Interval", "LabelScheme", "Precision", "Status",
    "TriBool", "builtin_scheme", "canonical_domain", "congruent", "counterexample_scheme",
    "identity_scheme", "label_of", "main_theorem", "power_scheme", "replay", "run_check", "run_suite",
    "__version__",
]
