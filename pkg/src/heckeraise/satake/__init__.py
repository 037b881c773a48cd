from .classify import (
    SatakeParamsGL3,
    SatakeParamsGSp4,
    bruhat_check,
    classify_gl3,
    classify_gsp4,
    gl3_type_i_unitary,
    parahoric_indices,
    satake_matrix_gsp4,
    weyl_orbit_gsp4,
)
from .conditions import (
    ConditionResult,
    allowed_types,
    brute_force_exclusions,
    check_gsp4_condition,
    check_u3_condition,
    exclusions,
    raising_types,
    unitary_dual_filter,
)
from .tables import (
    GL3,
    GSP4,
    ParahoricProfile,
    RepType,
    all_types,
    constituent_sums,
    profile_gl3,
    profile_gsp4,
    rep_type,
    tables_digest,
    verify_checksum,
)
from .weyl import A2, C2, bruhat_index, weyl_double_cosets

__all__ = [
    "A2",
    "C2",
    "GL3",
    "GSP4",
    "ConditionResult",
    "ParahoricProfile",
    "RepType",
    "SatakeParamsGL3",
    "SatakeParamsGSp4",
    "all_types",
    "allowed_types",
    "bruhat_check",
    "bruhat_index",
    "brute_force_exclusions",
    "check_gsp4_condition",
    "check_u3_condition",
    "classify_gl3",
    "classify_gsp4",
    "constituent_sums",
    "exclusions",
    "gl3_type_i_unitary",
    "parahoric_indices",
    "profile_gl3",
    "profile_gsp4",
    "raising_types",
    "rep_type",
    "satake_matrix_gsp4",
    "tables_digest",
    "unitary_dual_filter",
    "verify_checksum",
    "weyl_double_cosets",
    "weyl_orbit_gsp4",
]
