"""Independent verification of descent outputs."""

from .checks import (FAIL, INCONCLUSIVE, PASS, CheckResult, VerificationReport, auto_relations, check_cascade_match,
                     check_relations, check_specialization, check_support_and_closeness,
                     groebner_trace_compare, relation_variables, verify_output)
from .groebner import GroebnerRun, buchberger, compare_traces, hilbert_function, minimal_monomials

__all__ = [
    "PASS",
    "FAIL",
    "INCONCLUSIVE",
    "CheckResult",
    "VerificationReport",
    "auto_relations",
    "check_cascade_match",
    "check_relations",
    "check_specialization",
    "check_support_and_closeness",
    "groebner_trace_compare",
    "relation_variables",
    "verify_output",
    "GroebnerRun",
    "buchberger",
    "compare_traces",
    "hilbert_function",
    "minimal_monomials",
]
