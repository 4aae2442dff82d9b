"""Subset sums, zero-sum-free sets and incomplete sets in Z_p.

Exact bitset arithmetic for subset-sum sets, integer representation
constructions, dilation analysis, exhaustive extremal search, and a
theorem-verification harness with a CLI front end (``zpsums``).
"""

from ._version import __version__
from .errors import CapabilityError, ContractError
from .core import (
    Modulus,
    NormStats,
    ZpSet,
    dilate,
    exceptional_check,
    is_prime,
    m_of_p,
    n_of_p,
    norm,
    norm_stats,
    read_set_file,
    signed_rep,
)
from .sumsets import (
    SumSet,
    Witness,
    WitnessTable,
    build_witness_table,
    check_witness,
    is_complete,
    is_zero_sum_free,
    naive_subset_sums,
    subset_sums,
    witness,
    witness_from_table,
)
from .constructions import (
    CorePairing,
    IntRepresentation,
    build_family,
    chain_sums,
    core_interval_witness,
    core_pairs,
    extend_interval,
    extend_interval_down,
    represent_in_interval,
    represent_via_core,
)
from .analysis import (
    DilationReport,
    ExtremalDiagnostics,
    IncompleteDiagnostics,
    attempt_zero_sum_by_cancellation,
    best_dilation,
    diagnostic_expectations,
    extremal_diagnostics,
    incomplete_diagnostics,
    split_counting_inequality,
)
from .search import (
    ExtremalClassification,
    SearchResult,
    classify_extremal_zsf,
    exceptional_prime_scan,
    max_incomplete,
    max_zero_sum_free,
)
from .harness import (
    TheoremRecord,
    VerificationReport,
    emit_report,
    report_from_json,
    report_to_csv,
    report_to_json,
    verify_theorem,
)

__all__ = [
    "__version__",
    "CapabilityError",
    "ContractError",
    "Modulus",
    "NormStats",
    "ZpSet",
    "dilate",
    "exceptional_check",
    "is_prime",
    "m_of_p",
    "n_of_p",
    "norm",
    "norm_stats",
    "read_set_file",
    "signed_rep",
    "SumSet",
    "Witness",
    "WitnessTable",
    "build_witness_table",
    "check_witness",
    "is_complete",
    "is_zero_sum_free",
    "naive_subset_sums",
    "subset_sums",
    "witness",
    "witness_from_table",
    "CorePairing",
    "IntRepresentation",
    "build_family",
    "chain_sums",
    "core_interval_witness",
    "core_pairs",
    "extend_interval",
    "extend_interval_down",
    "represent_in_interval",
    "represent_via_core",
    "DilationReport",
    "ExtremalDiagnostics",
    "IncompleteDiagnostics",
    "attempt_zero_sum_by_cancellation",
    "best_dilation",
    "diagnostic_expectations",
    "extremal_diagnostics",
    "incomplete_diagnostics",
    "split_counting_inequality",
    "ExtremalClassification",
    "SearchResult",
    "classify_extremal_zsf",
    "exceptional_prime_scan",
    "max_incomplete",
    "max_zero_sum_free",
    "TheoremRecord",
    "VerificationReport",
    "emit_report",
    "report_from_json",
    "report_to_csv",
    "report_to_json",
    "verify_theorem",
]
