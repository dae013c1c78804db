"""finact: finite-group actions, semidirect products, commutator calculus.

Everything is exhaustively checkable at desk scale: groups are Cayley
tables on dense indices, free-product words have decidable normal forms,
and every categorical statement the package exposes is realized as a
finite computation with an honest bound flag where a bound is involved.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .actions import (
    GroupAction,
    Point,
    SemidirectProduct,
    action_point_roundtrip,
    coequalizer_check,
    enumerate_actions,
    point_action_roundtrip,
    point_of,
    point_to_action,
    restrict_action,
    semidirect,
    semidirect_map,
    trivial_action,
    twisted_eval,
    universal_property,
    validate_action,
)
from .commutators import (
    binary_commutator,
    higher_commutator_oracle,
    huq_commutator,
    ternary_recipe,
)
from .conjugation import (
    conjugation_on_normal,
    normalizes,
    propercrit,
    propercrit_sweep,
    property_p_sweep,
    stability_action,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_homs,
    all_subgroups,
    automorphisms,
    cyclic,
    dihedral,
    direct_product,
    family_groups,
    find_isomorphism,
    full_subgroup,
    identity_hom,
    image,
    inclusion_hom,
    intersection,
    is_isomorphic,
    is_normal,
    join,
    kernel,
    make_group,
    named_group,
    normal_closure,
    quaternion8,
    quotient,
    subgroup,
    subgroup_generated,
    symmetric,
    alternating,
    trivial_subgroup,
    zero_hom,
)
from .pairs import (
    GroupPair,
    PairMorphism,
    PairSubobject,
    is_normal_pair_subobject,
    is_proper_pair_subobject,
    kernel_of_cokernel,
    nonexactness_demo,
    pair_cokernel,
    pair_conjugation_action,
    pair_kernel,
    pair_sweep,
)
from .talgebra import (
    check_assoc_diagram,
    check_mufact,
    check_third_diagram,
    check_unit_diagram,
    extended_eval,
    kerxi_consistency,
    talgebra_report,
)
from .words import (
    CommutatorDecomposition,
    FreeProduct,
    FreeWord,
    commutator_decomposition,
    commutator_word,
    enumerate_words,
    eval_word,
    format_word,
    free_product,
    in_cross_effect,
    in_multi_cross_effect,
    in_retraction_kernel,
    parse_word,
    product_image,
    word_concat,
)

__version__ = "0.1.0"
