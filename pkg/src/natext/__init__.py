"""Finitely presented semigroup actions made group-dynamical.

Presented semigroups act on symbolic configurations; a receiving group
(free construction, abelian completion, or an exact concrete model)
turns the action into a group subshift.  Bounded procedures then decide
what a desk-scale computation can decide: emptiness on Cayley balls with
contradiction cores, pattern extensibility, reversibility and
directedness searches, and window growth rates over Folner sequences.
"""

from .cayley import Ball, build_ball, element_label, export_dot, geodesic_word
from .carriers import Carrier, FreeCarrier, GridCarrier, carrier_for
from .dynamics import (
    EntropyEstimate,
    eigen_entropy,
    entropy_compare,
    entropy_estimate,
    entropy_series,
    entropy_summary,
    folner_defect,
    folner_window,
)
from .errors import (
    EqualityUnknown,
    EtaCollision,
    FamilyMismatch,
    MembershipUndecidable,
    MorphismInconsistent,
    NatextError,
    NoRelatorList,
    NotAmenableFamily,
    NotDeclaredCommutative,
    NotSingleGenerator,
    UnknownExample,
)
from .extension import (
    ExtensionReport,
    Problem,
    all_solutions,
    build_problem,
    check_empty,
    check_point_extensible,
    check_surjective_up_to,
    default_s_window,
    hom_obstruction,
    pin_pattern,
    pushforward_forbidden,
    solve,
    solve_ball,
    unsat_core,
    verify_witness,
)
from .groups import (
    AbelianStructure,
    AffineFamily,
    BrittonFamily,
    FiniteFamily,
    FiniteGroup,
    FreeFamily,
    GenericFamily,
    GroupElem,
    SGroup,
    ZdFamily,
    bs23_affine_sgroup,
    britton_reduce,
    endomorphism_apply,
    eta_apply,
    eta_apply_signed,
    free_s_group_of,
    grothendieck_group,
    inv,
    is_identity,
    mul,
    semigroup_membership,
    sgroup_bs,
    sgroup_bs12,
    sgroup_finite,
    sgroup_free,
    sgroup_zd,
)
from .registry import get_example, list_examples, run_all, run_example
from .reversibility import (
    PreorderOracle,
    directed_bounded,
    check_fractions_by_subshift,
    left_reversible_bounded,
    xstar_patch,
)
from .snf import (
    invariant_factors,
    lattice_contains,
    quotient_structure,
    smith_normal_form,
)
from .subshift import (
    BUILTIN_SPECS,
    FiniteAction,
    Pattern,
    SubshiftSpec,
    WindowCount,
    check_minimal,
    check_minimal_finite,
    check_surjective_finite,
    check_transitive,
    check_transitive_finite,
    check_transitive_matrix,
    config_distance,
    coset_action,
    coset_subshift,
    enumerate_admissible,
    load_builtin_spec,
    load_spec,
    locally_admissible,
    make_pattern,
    nn_spec,
    pattern_spec,
    save_spec,
    spec_from_json,
    spec_to_json,
    window_count,
)
from .words import (
    GeneratorSet,
    SemigroupPresentation,
    TriState,
    free_reduce,
    parse_presentation,
    relation_lattice,
    signed_invert,
    word_to_signed,
    words_equal_bounded,
)

__version__ = "0.1.0"
