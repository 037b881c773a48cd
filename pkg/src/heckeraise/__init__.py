"""Level raising for algebraic modular forms on finite double-coset models."""

from .cosetmodel import (
    DoubleCosetModel,
    Operator,
    ValidationReport,
    annihilators,
    averaging_projector,
    class_partition,
    gram_matrix,
    load_model,
    validate,
)
from .eigensys import (
    HeckeRing,
    hecke_ring,
    lift_character,
    saturation_index,
    semisimple_mod_p,
)
from .errors import HeckeRaiseError
from .levelraise import (
    CongruenceCertificate,
    DegeneracyData,
    abelian_check,
    build_degeneracy,
    certify,
    congruence_module,
    detect_new_congruence,
    ihara_defect,
    raising_bound,
    rank_one_refine,
)

__version__ = "0.1.0"

__all__ = [
    "CongruenceCertificate",
    "DegeneracyData",
    "DoubleCosetModel",
    "HeckeRaiseError",
    "HeckeRing",
    "Operator",
    "ValidationReport",
    "abelian_check",
    "annihilators",
    "averaging_projector",
    "build_degeneracy",
    "certify",
    "class_partition",
    "congruence_module",
    "detect_new_congruence",
    "gram_matrix",
    "hecke_ring",
    "ihara_defect",
    "lift_character",
    "load_model",
    "raising_bound",
    "rank_one_refine",
    "saturation_index",
    "semisimple_mod_p",
    "validate",
]
