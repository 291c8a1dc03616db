"""involex: finite 2-group computations around index-2 embeddings into
involution-generated groups.

The central question answered here: given a finite 2-group G, is there a
group Gamma generated by elements of order 2 that contains G as a
subgroup of index 2?  `satisfies_star` decides this by exhausting all
index-2 extension data; the `families` and `star` modules also carry the
structural obstruction that proves failure for the whole family
<a,b | a^m, b^n, [b,a] = a^4>.
"""

__version__ = "0.1.0"

from .catalog import (
    Catalog,
    SearchReport,
    SurveyReport,
    load_catalog,
    parse_catalog,
    run_star_survey,
    save_catalog,
    search_by_maximal_subgroups,
)
from .cosets import CosetTable, enumerate_cosets, regular_generators
from .errors import (
    CatalogError,
    CosetOverflow,
    InvolexError,
    NonRegularAction,
    ParseError,
    SizeLimitExceeded,
    StructureError,
)
from .families import FamilySpec, FamilyStructureReport, make_presentation, verify_family_structure
from .groups import (
    ConcreteGroup,
    Subgroup,
    abelian_invariants,
    center,
    closure,
    derived_subgroup,
    frattini_subgroup,
    from_permutations,
    from_table,
    inverted_set,
    involution_generated_subgroup,
    involutions,
    maximal_subgroups,
    omega,
    quotient,
    realize,
    subgroup_group,
)
from .maps import (
    Fingerprint,
    GroupMap,
    are_isomorphic,
    enumerate_automorphisms,
    fingerprint,
    hom_from_generator_images,
    identity_map,
    is_characteristic,
)
from .star import (
    ExtensionSpec,
    StarReport,
    build_extension,
    check_quotient_propagation,
    compatible_extension_specs,
    exists_inverting_automorphism,
    family_fails_star,
    inverted_decomposition_holds,
    satisfies_star,
)
from .words import Presentation, Word, parse_presentation, word_commutator, word_multiply

__all__ = [
    "Catalog",
    "CatalogError",
    "ConcreteGroup",
    "CosetOverflow",
    "CosetTable",
    "ExtensionSpec",
    "FamilySpec",
    "FamilyStructureReport",
    "Fingerprint",
    "GroupMap",
    "InvolexError",
    "NonRegularAction",
    "ParseError",
    "Presentation",
    "SearchReport",
    "SizeLimitExceeded",
    "StarReport",
    "StructureError",
    "Subgroup",
    "SurveyReport",
    "Word",
    "abelian_invariants",
    "are_isomorphic",
    "build_extension",
    "center",
    "check_quotient_propagation",
    "closure",
    "compatible_extension_specs",
    "derived_subgroup",
    "enumerate_automorphisms",
    "enumerate_cosets",
    "exists_inverting_automorphism",
    "family_fails_star",
    "fingerprint",
    "frattini_subgroup",
    "from_permutations",
    "from_table",
    "hom_from_generator_images",
    "identity_map",
    "inverted_decomposition_holds",
    "inverted_set",
    "involution_generated_subgroup",
    "involutions",
    "is_characteristic",
    "load_catalog",
    "make_presentation",
    "maximal_subgroups",
    "omega",
    "parse_catalog",
    "parse_presentation",
    "quotient",
    "realize",
    "regular_generators",
    "run_star_survey",
    "satisfies_star",
    "save_catalog",
    "search_by_maximal_subgroups",
    "subgroup_group",
    "verify_family_structure",
    "word_commutator",
    "word_multiply",
]
