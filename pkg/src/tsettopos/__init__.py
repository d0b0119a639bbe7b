"""Finite workbench for Heyting algebras, T-sets, sheaves on poset
sites, and the topos structure checks built on them."""

from .errors import (
    BasisInvalid,
    CycleError,
    NoBound,
    NotASheaf,
    NotAtom,
    NotBelow,
    NotCompatible,
    NotDistributive,
    NotSubobject,
    PostulateRequired,
    SchemaError,
    SizeGuard,
    WorkbenchError,
)
from .heyting import (
    HeytingAlgebra,
    PosetSpec,
    build_algebra,
    chain3,
    chain_spec,
    diamond,
    diamond_spec,
    envelope,
    implies,
    is_boolean,
    named_algebras,
    negate,
    pentagon_spec,
    subsets,
    two_element,
)
from .tset import (
    TRelation,
    TSet,
    atoms,
    compatible,
    element_leq,
    existence,
    extensionally_equal,
    extensionally_isomorphic,
    family_envelope,
    hom_set,
    identity_relation,
    is_atom,
    is_subobject_map,
    localise_atom,
    localise_element,
    make_tset,
    principal_tset,
    real_witnesses,
    satisfies_postulate,
    separated_quotient,
    set_like_tset,
    singleton_completion,
    validate_relation,
    validate_tset,
)
from .sites import (
    Sieve,
    Topology,
    all_sieves,
    closed_sieves,
    closure,
    down_closure,
    is_closed,
    maximal_sieve,
    pullback_sieve,
    principal_sieves,
    territories,
    territory_basis,
    territory_topology,
    topology_from_basis,
    validate_basis,
    validate_topology,
)
from .sheaves import (
    MatchingFamily,
    NatTransform,
    Presheaf,
    amalgamate,
    empty_presheaf,
    find_presheaf_iso,
    hom_presheaf,
    is_separated,
    is_sheaf,
    make_presheaf,
    matching_families,
    presheaf_to_tset,
    product_presheaf,
    quasi_presheaf,
    representable,
    sheafify,
    terminal_presheaf,
    tset_to_presheaf,
    validate_nat,
    validate_presheaf,
)
from .topos import (
    CounterexampleReport,
    ExponentialResult,
    GraphResult,
    OmegaResult,
    ProductResult,
    PullbackResult,
    SgExhibit,
    SgReport,
    SubobjectInclusion,
    ToposReport,
    check_adjunction,
    check_classifier,
    check_pullback_universal,
    check_product_universal,
    check_topos_axioms,
    classify,
    doubled_point_presheaf,
    doubled_point_tset,
    evaluation,
    exponential,
    exposition_counterexample,
    graph,
    mediate_product,
    mediators,
    omega,
    product,
    pullback,
    sg_check,
    sg_failure_exhibit,
    subobject_from_mask,
    subobjects,
    terminal,
    transpose,
    unique_to_terminal,
    untranspose,
)
from .pools import algebra_pool, all_poset_specs, sheaf_pool, tset_pool
from .suites import (
    CheckResult,
    InstancePool,
    SuiteConfig,
    SuiteReport,
    generate_instance_pool,
    report_json,
    report_text,
    run_suite,
)
from .fileio import (
    algebra_from_dict,
    algebra_to_dict,
    detect_kind,
    load_structure,
    presheaf_from_dict,
    presheaf_to_dict,
    relation_from_dict,
    relation_to_dict,
    save_structure,
    structure_to_dict,
    tset_from_dict,
    tset_to_dict,
)
from .cli import main, run_command

__version__ = "0.1.0"
