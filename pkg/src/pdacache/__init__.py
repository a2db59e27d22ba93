"""Keyed coded caching from placement delivery arrays.

A library plus CLI covering: exact GF(2^r) arithmetic and linear algebra,
PDA parsing/validation/construction, Cauchy-matrix share encoding with a
secrecy threshold, full placement/delivery/decoding simulation, executable
zero-leakage certificates with an exhaustive cross-check oracle, and the
rate/subpacketization analysis tables.
"""

from .gf2 import GF2m, GFMatrix, default_polynomial, is_irreducible, poly_str
from .pda import (
    PDA,
    STAR,
    PdaFormatError,
    SchemeParams,
    ValidationReport,
    Violation,
    derive_params,
    mn_pda,
    parse_pda,
    serialize_pda,
    validate,
)
from .sharing import (
    CauchyMatrix,
    SharingParams,
    ThresholdSecrecyReport,
    cauchy_matrix,
    decode_shares,
    encode_shares,
    file_to_secret,
    secret_to_file,
    sharing_params,
    threshold_secrecy_check,
)
from .sim import (
    BaselineState,
    Cache,
    PlacementError,
    RateReport,
    SystemConfig,
    SystemState,
    Transcript,
    baseline_decode,
    baseline_decode_all,
    baseline_deliver,
    baseline_setup,
    decode_all,
    deliver,
    measure,
    minimum_field,
    run_report,
    setup,
    system_config,
    user_decode,
)
from .audit import (
    EAVESDROPPER,
    INTACT,
    AuditFault,
    LeakageReport,
    MIResult,
    ObservationSystem,
    Scenario,
    SystemAuditor,
    Witness,
    audit_summary,
    brute_force_mi,
    build_observation,
    certify_zero_leakage,
    cross_validate,
    demand_space,
    granted_key,
    standard_mutants,
    unkeyed_slot,
    verify_witness,
)
from .analysis import (
    Envelope,
    RatePoint,
    Table1Row,
    Table2Row,
    convex_envelope,
    mn_endpoint,
    mn_rate_point,
    mn_rate_points,
    table1_rows,
    table2_row,
    table2_rows,
)

__version__ = "0.1.0"
