"""Finite topos structure: limits, exponentials, classifier, refutation."""

from hypothesis import given
from hypothesis import strategies as st

from tsettopos import (
    chain3,
    check_adjunction,
    check_classifier,
    check_product_universal,
    check_pullback_universal,
    check_topos_axioms,
    classify,
    closed_sieves,
    diamond,
    doubled_point_presheaf,
    doubled_point_tset,
    exponential,
    exposition_counterexample,
    extensionally_equal,
    extensionally_isomorphic,
    graph,
    hom_presheaf,
    hom_set,
    identity_relation,
    is_sheaf,
    mediate_product,
    mediators,
    omega,
    product,
    pullback,
    set_like_tset,
    sg_check,
    sg_failure_exhibit,
    sheaf_pool,
    subobjects,
    terminal,
    terminal_presheaf,
    territory_topology,
    tset_pool,
    two_element,
    unique_to_terminal,
    validate_nat,
    validate_relation,
    validate_tset,
)
from strategies import ALGEBRAS, tsets

CH = chain3()
CH_J = territory_topology(CH)
CH_POOL = sheaf_pool(CH, CH_J, 3)


@given(tsets())
def test_terminal_admits_exactly_one_map(t):
    H = t.algebra
    one = terminal(H)
    assert validate_tset(one, require_separated=True).ok
    homs = hom_set(t, one)
    assert len(homs) == 1
    u = unique_to_terminal(t, one)
    assert homs[0].mapping == u.mapping
    assert all(u.mapping[x] == t.ee(x) for x in range(t.size))


@given(tsets())
def test_product_projections_validate(t):
    prod = product(t, t)
    assert validate_relation(prod.proj1).ok
    assert validate_relation(prod.proj2).ok
    assert validate_tset(prod.tset).ok


@given(tsets())
def test_product_universal_against_small_cones(t):
    prod = product(t, t)
    one = terminal(t.algebra)
    ok, witness = check_product_universal(prod, [t, one])
    assert ok, witness


@given(tsets())
def test_product_with_terminal_recovers_factor(t):
    one = terminal(t.algebra)
    prod = product(t, one)
    assert extensionally_isomorphic(prod.tset, t) is not None


def test_mediate_product_commutes():
    t = set_like_tset(two_element(), 2)
    prod = product(t, t)
    idr = identity_relation(t)
    m = mediate_product(prod, idr, idr)
    assert validate_relation(m).ok
    assert extensionally_equal(prod.proj1.compose(m), idr)
    assert extensionally_equal(prod.proj2.compose(m), idr)


@given(tsets())
def test_graph_legs(t):
    for rho in hom_set(t, t):
        g = graph(rho)
        assert validate_tset(g.tset).ok
        assert validate_relation(g.to_source).ok
        assert validate_relation(g.to_target).ok
        # the embedding section realises the pair (x, rho x)
        back = g.to_source.compose(g.embed)
        fwd = g.to_target.compose(g.embed)
        assert extensionally_equal(back, identity_relation(t))
        assert extensionally_equal(fwd, rho)


@given(tsets())
def test_pullback_square_commutes_and_is_universal(t):
    one = terminal(t.algebra)
    f = unique_to_terminal(t, one)
    pb = pullback(f, f)
    lhs = f.compose(pb.proj1)
    rhs = f.compose(pb.proj2)
    assert extensionally_equal(lhs, rhs)
    ok, witness = check_pullback_universal(pb, f, f, [t, one])
    assert ok, witness


def test_pullback_along_identity_recovers_graph():
    t = set_like_tset(two_element(), 2)
    for rho in hom_set(t, t):
        pb = pullback(rho, identity_relation(t))
        g = graph(rho)
        assert extensionally_isomorphic(pb.tset, g.tset) is not None


def test_mediator_counts_literal_vs_extensional():
    # separated target: literal relation count equals extensional count
    t = set_like_tset(two_element(), 2)
    prod = product(t, t)
    idr = identity_relation(t)
    ms = mediators(t, prod.tset,
                   [(prod.proj1, idr), (prod.proj2, idr)])
    distinct = []
    for m in ms:
        if not any(extensionally_equal(m, d) for d in distinct):
            distinct.append(m)
    assert len(distinct) == 1


def test_counterexample_frozen_counts():
    rep = exposition_counterexample()
    assert rep.proper_size == 2
    assert rep.vertex_size == 9
    assert rep.flawed_count == 256 == rep.expected_flawed
    assert rep.refuted
    assert rep.corrected_count == 1
    assert rep.corrected_unique


def test_counterexample_degenerate_point():
    rep = exposition_counterexample(proper_size=1)
    assert rep.flawed_count == 1
    assert not rep.refuted
    assert rep.corrected_unique


def test_omega_levels_are_closed_sieves():
    om = omega(CH, CH_J)
    assert is_sheaf(om.presheaf, CH_J).ok
    assert validate_nat(om.truth)
    for p in CH.elements():
        assert om.presheaf.n(p) == len(closed_sieves(CH, CH_J, p))
    assert [om.presheaf.n(p) for p in CH.elements()] == [1, 2, 3]


def test_classifier_on_chain3_pool():
    om = omega(CH, CH_J)
    for P in CH_POOL:
        ok, witness = check_classifier(P, CH_J, om)
        assert ok, witness


def test_classify_components_validate():
    om = omega(CH, CH_J)
    one = terminal_presheaf(CH)
    subs = subobjects(one, CH_J)
    # sheaf subobjects of 1 = closed sieves at the top
    assert len(subs) == 3
    for inc in subs:
        phi = classify(inc, om)
        assert validate_nat(phi)


def test_exponential_of_terminal_is_target():
    one = terminal_presheaf(CH)
    for P in CH_POOL:
        E = exponential(one, P)
        assert is_sheaf(E.presheaf, CH_J).ok
        # 1 -> P transposes: Y^1 has exactly P's sections levelwise
        for p in CH.elements():
            assert E.presheaf.n(p) == P.n(p)


def test_adjunction_small_instances():
    X = CH_POOL[1]
    Y = CH_POOL[2]
    E = exponential(X, Y)
    for Z in (terminal_presheaf(CH), CH_POOL[1]):
        ok, witness = check_adjunction(E, Z)
        assert ok, witness


def test_hom_counts_match_adjunction_cardinality():
    X, Y, Z = CH_POOL[1], CH_POOL[2], CH_POOL[3]
    E = exponential(X, Y)
    from tsettopos.topos import product_presheaf
    lhs = hom_presheaf(product_presheaf(Z, X), Y)
    rhs = hom_presheaf(Z, E.presheaf)
    assert len(lhs) == len(rhs)


def test_topos_axioms_smoke():
    rep = check_topos_axioms(CH_POOL[:2], CH_J)
    assert rep.ok
    names = {row[0] for row in rep.rows}
    assert {"terminal-sheaf", "product-universal", "pullback-universal",
            "adjunction-bijection", "classifier-unique"} <= names


def test_sg_holds_on_pool_tsets():
    for H in ALGEBRAS:
        rep = sg_check(tset_pool(H, 3))
        assert rep.ok, rep.witness
        assert rep.pairs_checked > 0


def test_sg_failure_exhibit_doubled_point():
    H = diamond()
    ex = sg_failure_exhibit(H, territory_topology(H))
    assert ex.maps_distinct
    assert not ex.probe_separable
    assert not is_sheaf(ex.presheaf, territory_topology(H)).ok


def test_doubled_point_tset_is_not_separated():
    H = diamond()
    t = doubled_point_tset(H)
    assert validate_tset(t).ok
    assert not validate_tset(t, require_separated=True).ok
    P = doubled_point_presheaf(H)
    assert not is_sheaf(P, territory_topology(H)).ok
