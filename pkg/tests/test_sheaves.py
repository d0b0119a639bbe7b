"""Presheaves over the algebra site, sheaf condition, sheafification."""

import pytest
from hypothesis import given

from tsettopos import (
    NotASheaf,
    chain3,
    doubled_point_presheaf,
    diamond,
    empty_presheaf,
    find_presheaf_iso,
    hom_presheaf,
    is_separated,
    is_sheaf,
    make_presheaf,
    make_tset,
    presheaf_to_tset,
    quasi_presheaf,
    representable,
    set_like_tset,
    sheafify,
    singleton_completion,
    terminal_presheaf,
    territory_topology,
    tset_to_presheaf,
    two_element,
    validate_nat,
    validate_presheaf,
    validate_tset,
)
from strategies import algebras, tsets


def test_make_presheaf_functoriality_checked():
    H = chain3()
    mu, p, M = (H.index(n) for n in ("mu", "p", "M"))
    P = make_presheaf(
        H,
        sections=(("s",), ("s",), ("s",)),
        restrict={(p, mu): (0,), (M, mu): (0,), (M, p): (0,)},
    )
    assert validate_presheaf(P).ok


def test_validate_presheaf_flags_non_composing_tables():
    H = chain3()
    mu, p, M = (H.index(n) for n in ("mu", "p", "M"))
    P = make_presheaf(
        H,
        sections=(("a", "b"), ("x",), ("s",)),
        # M -> p -> mu lands on b, but M -> mu goes to a
        restrict={(p, mu): (1,), (M, mu): (0,), (M, p): (0,)},
    )
    rep = validate_presheaf(P)
    assert not rep.ok
    assert any(v[0] == "composition" for v in rep.violations)


@given(algebras())
def test_terminal_presheaf_is_sheaf(H):
    P = terminal_presheaf(H)
    assert all(P.n(p) == 1 for p in H.elements())
    assert is_sheaf(P, territory_topology(H)).ok


@given(algebras())
def test_empty_presheaf_fails_at_bottom(H):
    # the empty sieve covers the bottom element, forcing one section there
    P = empty_presheaf(H)
    J = territory_topology(H)
    assert not is_sheaf(P, J).ok
    assert is_separated(P, J).ok
    assert all(done == 1 if p == H.bottom else done == 0
               for p, done in ((q, sheafify(P, J).n(q)) for q in H.elements()))


@given(algebras())
def test_representables_are_sheaves(H):
    # subcanonicity of the join-generated coverage
    J = territory_topology(H)
    for s in H.elements():
        P = representable(H, s)
        assert is_sheaf(P, J).ok
        # a poset arrow p -> s exists iff p <= s, so levels are 0/1
        for p in H.elements():
            assert P.n(p) == (1 if H.le(p, s) else 0)


@given(tsets())
def test_pool_tsets_become_sheaves(t):
    H = t.algebra
    P = tset_to_presheaf(t)
    assert validate_presheaf(P).ok
    assert is_sheaf(P, territory_topology(H)).ok
    # level sizes count elements by exact existence degree
    for p in H.elements():
        assert P.n(p) == sum(1 for x in range(t.size) if t.ee(x) == p)


@given(tsets())
def test_round_trip_preserves_tset(t):
    H = t.algebra
    J = territory_topology(H)
    back = presheaf_to_tset(tset_to_presheaf(t), J)
    assert back.size == t.size
    rep = validate_tset(back, require_separated=True)
    assert rep.ok


@given(tsets())
def test_round_trip_preserves_presheaf(t):
    H = t.algebra
    J = territory_topology(H)
    P = tset_to_presheaf(t)
    Q = tset_to_presheaf(presheaf_to_tset(P, J))
    iso = find_presheaf_iso(P, Q)
    assert iso is not None
    assert validate_nat(iso)


def test_presheaf_to_tset_requires_sheaf():
    H = diamond()
    with pytest.raises(NotASheaf):
        presheaf_to_tset(doubled_point_presheaf(H), territory_topology(H))


def test_quasi_presheaf_of_unreal_atom_instance():
    # single element at full existence: every level sees it, so the
    # embedding is already the terminal sheaf
    H = chain3()
    t = make_tset(H, ("x",), ((2,),))
    P = quasi_presheaf(t)
    J = territory_topology(H)
    assert [P.n(p) for p in H.elements()] == [1, 1, 1]
    assert is_sheaf(P, J).ok


def test_quasi_presheaf_separated_not_sheaf():
    # x lives at degree a, y at degree b: the {a, b} cover of the top
    # has a compatible family with nothing to amalgamate to
    H = diamond()
    a, b = H.index("a"), H.index("b")
    mu = H.bottom
    t = make_tset(H, ("x", "y"), ((a, mu), (mu, b)))
    P = quasi_presheaf(t)
    J = territory_topology(H)
    assert is_separated(P, J).ok
    assert not is_sheaf(P, J).ok


def test_sheafify_agrees_with_completion():
    H = chain3()
    t = make_tset(H, ("x",), ((2,),))
    J = territory_topology(H)
    plus = sheafify(quasi_presheaf(t), J)
    direct = tset_to_presheaf(singleton_completion(t).tset)
    assert find_presheaf_iso(plus, direct) is not None


def test_sheafify_agrees_with_completion_diamond():
    H = diamond()
    a, b = H.index("a"), H.index("b")
    t = make_tset(H, ("x", "y"), ((a, H.bottom), (H.bottom, b)))
    J = territory_topology(H)
    plus = sheafify(quasi_presheaf(t), J)
    direct = tset_to_presheaf(singleton_completion(t).tset)
    assert find_presheaf_iso(plus, direct) is not None


@given(tsets())
def test_sheafify_fixes_sheaves(t):
    H = t.algebra
    J = territory_topology(H)
    P = tset_to_presheaf(t)
    assert find_presheaf_iso(sheafify(P, J), P) is not None


def test_sheafify_idempotent():
    H = diamond()
    J = territory_topology(H)
    P = doubled_point_presheaf(H)
    once = sheafify(P, J)
    assert is_sheaf(once, J).ok
    assert find_presheaf_iso(sheafify(once, J), once) is not None


def test_doubled_point_is_separated_failure():
    # two global points restricting equally along a cover: not separated
    H = diamond()
    J = territory_topology(H)
    P = doubled_point_presheaf(H)
    assert not is_sheaf(P, J).ok
    assert not is_separated(P, J).ok


def test_hom_presheaf_counts_terminal():
    H = chain3()
    one = terminal_presheaf(H)
    assert len(hom_presheaf(one, one)) == 1
    P = tset_to_presheaf(singleton_completion(set_like_tset(H, 2)).tset)
    assert len(hom_presheaf(P, one)) == 1


def test_tower_is_the_terminal_presheaf():
    # one element per degree of a chain, glued by restriction: that IS 1
    H = chain3()
    tower = make_tset(H, ("z", "x", "y"), ((0, 0, 0), (0, 1, 1), (0, 1, 2)))
    iso = find_presheaf_iso(tset_to_presheaf(tower), terminal_presheaf(H))
    assert iso is not None


def test_no_iso_between_different_shapes():
    H = chain3()
    one = terminal_presheaf(H)
    P = representable(H, H.index("p"))
    assert find_presheaf_iso(P, one) is None
    assert find_presheaf_iso(one, P) is None
