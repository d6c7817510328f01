"""Computational algebra over group rings of cyclic p-groups.

The package computes with finitely presented modules over Zp[G], G
cyclic of order p^n, at a fixed working precision p^N:

- Tate cohomology of every subgroup in both parities, with restriction
  and corestriction maps (``cohomology``);
- level diagrams built from the degree -1 groups, their axioms, and a
  decision procedure for diagram isomorphism (``yakovlev``);
- extension classes as explicit two-variable tables, their middle
  terms, and the scaled-sublattice family J_e (``constructions``);
- a randomized-plus-enumeration oracle for module isomorphism and
  stable isomorphism (``oracle``);
- the projection pipeline that realizes a prescribed finite kernel and
  the end-to-end verification chain built on it (``constructions``);
- named verification batteries (``suites``), JSON documents
  (``fileio``), and the ``cyclomod`` command line (``cli``).
"""

from .arith import GroupRingElement, norm_element, sigma_power, subgroup_norm
from .cohomology import (
    CohomMap,
    TateGroup,
    connecting_iso,
    corestriction,
    induced_map,
    is_cohomologically_trivial,
    restriction,
    tate,
)
from .config import DEFAULT_GUARD, GroupConfig, IsoSearchConfig, default_precision
from .constructions import (
    ExtensionData,
    FourTermResolution,
    Lemma2Result,
    SplittingModule,
    Theorem1Input,
    Theorem1Report,
    carry_cocycle,
    coboundary_shift,
    cocycle_from_section,
    h_isomorphism,
    j_module,
    lemma2_pipeline,
    lemma3_resolution,
    predicted_unit_structure,
    splitting_module,
    theorem1_verify,
    zero_extension,
)
from .errors import (
    AxiomViolation,
    CyclomodError,
    IllDefinedHom,
    InfiniteKernel,
    NotACocycle,
    NotAUnit,
    NotSurjective,
    ParseError,
    PreconditionViolated,
    PrecisionExhausted,
    WitnessInvalid,
)
from .fileio import (
    load_file,
    load_text,
    machine_report,
    parse_document,
    save_file,
    save_text,
    text_report,
    to_dict,
)
from .modules import (
    DirectSum,
    ElementVector,
    ModuleHom,
    PresentedModule,
    Quotient,
    Submodule,
    augmentation_ideal,
    direct_sum,
    fixed_points,
    free_cover,
    free_module,
    identity_hom,
    kernel_of,
    minimal_generators,
    quotient_by_image,
    quotient_group_module,
    submodule_from_elements,
    trivial_module,
    zp_trivial,
)
from .oracle import (
    FreeSummandReport,
    Iso,
    StableIso,
    krull_schmidt_note,
    modules_isomorphic,
    stably_isomorphic,
)
from .suites import ALL_SUITES, CheckResult, SuiteReport
from .verdicts import NotIsomorphic, NotStablyIsomorphic, Undecided
from .yakovlev import (
    DiagramIso,
    YakovlevDiagram,
    check_axioms,
    delta,
    diagrams_isomorphic,
)

__all__ = [
    "ALL_SUITES",
    "AxiomViolation",
    "CheckResult",
    "CohomMap",
    "CyclomodError",
    "DEFAULT_GUARD",
    "DiagramIso",
    "DirectSum",
    "ElementVector",
    "ExtensionData",
    "FourTermResolution",
    "FreeSummandReport",
    "GroupConfig",
    "GroupRingElement",
    "IllDefinedHom",
    "InfiniteKernel",
    "Iso",
    "IsoSearchConfig",
    "Lemma2Result",
    "ModuleHom",
    "NotACocycle",
    "NotAUnit",
    "NotIsomorphic",
    "NotStablyIsomorphic",
    "NotSurjective",
    "ParseError",
    "PreconditionViolated",
    "PrecisionExhausted",
    "PresentedModule",
    "Quotient",
    "SplittingModule",
    "StableIso",
    "Submodule",
    "SuiteReport",
    "TateGroup",
    "Theorem1Input",
    "Theorem1Report",
    "Undecided",
    "WitnessInvalid",
    "YakovlevDiagram",
    "augmentation_ideal",
    "carry_cocycle",
    "check_axioms",
    "coboundary_shift",
    "cocycle_from_section",
    "connecting_iso",
    "corestriction",
    "default_precision",
    "delta",
    "diagrams_isomorphic",
    "direct_sum",
    "fixed_points",
    "free_cover",
    "free_module",
    "h_isomorphism",
    "identity_hom",
    "induced_map",
    "is_cohomologically_trivial",
    "j_module",
    "kernel_of",
    "krull_schmidt_note",
    "lemma2_pipeline",
    "lemma3_resolution",
    "load_file",
    "load_text",
    "machine_report",
    "minimal_generators",
    "modules_isomorphic",
    "norm_element",
    "parse_document",
    "predicted_unit_structure",
    "quotient_by_image",
    "quotient_group_module",
    "restriction",
    "save_file",
    "save_text",
    "sigma_power",
    "splitting_module",
    "stably_isomorphic",
    "subgroup_norm",
    "submodule_from_elements",
    "tate",
    "text_report",
    "theorem1_verify",
    "to_dict",
    "trivial_module",
    "zero_extension",
    "zp_trivial",
]
