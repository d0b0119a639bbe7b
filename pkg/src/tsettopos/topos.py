"""Category structure on T-sets and their sheaves.

Finite limits, exponentials, and the subobject classifier, each paired
with a brute-force universal-property verifier: existence plus
uniqueness of the mediating arrow, by enumeration.  Also the published
refutation machinery: the commutativity-only mediation count on a
triple product, against the unique mediation into a graph, and the
probe-separation check tying the reality of atoms to arrows out of
subterminals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotSubobject, SizeGuard
from .heyting import HeytingAlgebra, two_element
from .sheaves import (
    NatTransform,
    Presheaf,
    hom_presheaf,
    is_sheaf,
    make_presheaf,
    product_presheaf,
    terminal_presheaf,
    validate_nat,
)
from .sites import Topology, closed_sieves
from .tset import (
    DEFAULT_GUARD,
    TRelation,
    TSet,
    extensionally_equal,
    hom_set,
    identity_relation,
    localise_element,
    principal_tset,
    separated_quotient,
    set_like_tset,
    validate_relation,
)


# ---------------------------------------------------- T-set level limits

def terminal(H: HeytingAlgebra) -> TSet:
    """Carrier = the algebra itself, identity = meet."""
    names = tuple(H.names)
    table = tuple(
        tuple(H.meet(p, q) for q in H.elements()) for p in H.elements()
    )
    return TSet(H, names, table)


def unique_to_terminal(A: TSet, one: TSet) -> TRelation:
    return TRelation(A, one, tuple(A.ee(x) for x in range(A.size)))


@dataclass(frozen=True)
class ProductResult:
    tset: TSet
    proj1: TRelation
    proj2: TRelation
    pairs: tuple[tuple[int, int], ...]

    def pair_index(self, a: int, b: int) -> int:
        return self.pairs.index((a, b))


def product(A: TSet, B: TSet, guard: int = DEFAULT_GUARD) -> ProductResult:
    """All carrier pairs with componentwise identity meet.

    Projections localise each component to the pair's existence degree,
    so both factors must have their localisations witnessed.
    """
    if A.algebra != B.algebra:
        raise ValueError("product factors live over different algebras")
    H = A.algebra
    if A.size * B.size > guard:
        raise SizeGuard("product carrier", A.size * B.size, guard)
    pairs = tuple((i, j) for i in range(A.size) for j in range(B.size))
    names = tuple(f"({A.name(i)},{B.name(j)})" for i, j in pairs)
    table = tuple(
        tuple(
            H.meet(A.ident(i, k), B.ident(j, l))
            for k, l in pairs
        )
        for i, j in pairs
    )
    prod = TSet(H, names, table)
    m1 = []
    m2 = []
    for i, j in pairs:
        e = H.meet(A.ee(i), B.ee(j))
        m1.append(localise_element(A, i, e))
        m2.append(localise_element(B, j, e))
    return ProductResult(
        prod,
        TRelation(prod, A, tuple(m1)),
        TRelation(prod, B, tuple(m2)),
        pairs,
    )


def mediate_product(prod: ProductResult, f: TRelation, g: TRelation) -> TRelation:
    """The canonical cone mediator w -> (f(w), g(w))."""
    W = f.source
    mapping = tuple(
        prod.pair_index(f.apply(w), g.apply(w)) for w in range(W.size)
    )
    return TRelation(W, prod.tset, mapping)


def mediators(W: TSet, target: TSet,
              constraints: list[tuple[TRelation, TRelation]],
              guard: int = DEFAULT_GUARD) -> list[TRelation]:
    """All valid relations h: W -> target with after . h = required for
    each (after, required) pair, by exhaustive search over the allowed
    image sets."""
    allowed: list[list[int]] = []
    total = 1
    for w in range(W.size):
        ok = [
            y for y in range(target.size)
            if target.ee(y) == W.ee(w)
            and all(a.mapping[y] == r.mapping[w] for a, r in constraints)
        ]
        allowed.append(ok)
        total *= max(len(ok), 1)
        if total > guard:
            raise SizeGuard("mediator enumeration", total, guard)
        if not ok:
            return []
    out = []
    for combo in itertools.product(*allowed):
        h = TRelation(W, target, tuple(combo))
        if validate_relation(h).ok:
            out.append(h)
    return out


def _extensional_classes(hs: list[TRelation]) -> list[list[TRelation]]:
    classes: list[list[TRelation]] = []
    for h in hs:
        for c in classes:
            if extensionally_equal(h, c[0]):
                c.append(h)
                break
        else:
            classes.append([h])
    return classes


def check_product_universal(prod: ProductResult, cones: list[TSet],
                            guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    """Exactly one mediating relation for every cone from every listed
    vertex.  Mediators are counted up to extensional equality: two
    element maps whose images are indiscernible present the same
    relation, and the pair carrier is not separated in general."""
    A, B = prod.proj1.target, prod.proj2.target
    for W in cones:
        homs = hom_set(W, prod.tset, guard)
        for f in hom_set(W, A, guard):
            for g in hom_set(W, B, guard):
                hits = [
                    h for h in homs
                    if extensionally_equal(prod.proj1.compose(h), f)
                    and extensionally_equal(prod.proj2.compose(h), g)
                ]
                classes = _extensional_classes(hits)
                if len(classes) != 1:
                    return False, (repr(W), f.mapping, g.mapping, len(classes))
                canon = mediate_product(prod, f, g)
                if not extensionally_equal(classes[0][0], canon):
                    return False, (repr(W), f.mapping, g.mapping, "mediator")
    return True, None


@dataclass(frozen=True)
class GraphResult:
    tset: TSet
    to_source: TRelation
    to_target: TRelation
    embed: TRelation


def graph(rho: TRelation) -> GraphResult:
    """Carrier = pairs (x, rho(x)) with the componentwise identity meet;
    the identity inequality collapses it to the source identity."""
    A, B = rho.source, rho.target
    H = A.algebra
    names = tuple(
        f"({A.name(x)},{B.name(rho.apply(x))})" for x in range(A.size)
    )
    table = tuple(
        tuple(
            H.meet(A.ident(x, y), B.ident(rho.apply(x), rho.apply(y)))
            for y in range(A.size)
        )
        for x in range(A.size)
    )
    g = TSet(H, names, table)
    idx = tuple(range(A.size))
    return GraphResult(
        g,
        TRelation(g, A, idx),
        TRelation(g, B, tuple(rho.mapping)),
        TRelation(A, g, idx),
    )


@dataclass(frozen=True)
class PullbackResult:
    tset: TSet
    proj1: TRelation
    proj2: TRelation
    inclusion: TRelation
    product: ProductResult


def pullback(f: TRelation, g: TRelation,
             guard: int = DEFAULT_GUARD) -> PullbackResult:
    """Pairs whose images in the shared codomain agree at the pair's
    full existence degree."""
    if f.target != g.target:
        raise ValueError("pullback needs a shared codomain")
    A, B, C = f.source, g.source, f.target
    H = A.algebra
    prod = product(A, B, guard)
    keep = [
        k for k, (a, b) in enumerate(prod.pairs)
        if C.ident(f.apply(a), g.apply(b)) == H.meet(A.ee(a), B.ee(b))
    ]
    names = tuple(prod.tset.name(k) for k in keep)
    table = tuple(
        tuple(prod.tset.ident(k, l) for l in keep) for k in keep
    )
    pb = TSet(H, names, table)
    m1 = tuple(prod.proj1.mapping[k] for k in keep)
    m2 = tuple(prod.proj2.mapping[k] for k in keep)
    return PullbackResult(
        pb,
        TRelation(pb, A, m1),
        TRelation(pb, B, m2),
        TRelation(pb, prod.tset, tuple(keep)),
        prod,
    )


def check_pullback_universal(pb: PullbackResult, f: TRelation, g: TRelation,
                             cones: list[TSet],
                             guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    """Every commuting cone mediates uniquely through the pullback,
    with commutation and uniqueness read extensionally."""
    A, B = f.source, g.source
    for W in cones:
        homs = hom_set(W, pb.tset, guard)
        for u in hom_set(W, A, guard):
            for v in hom_set(W, B, guard):
                if not extensionally_equal(f.compose(u), g.compose(v)):
                    continue
                hits = [
                    h for h in homs
                    if extensionally_equal(pb.proj1.compose(h), u)
                    and extensionally_equal(pb.proj2.compose(h), v)
                ]
                classes = _extensional_classes(hits)
                if len(classes) != 1:
                    return False, (repr(W), u.mapping, v.mapping, len(classes))
    return True, None


# ----------------------------------------------- presheaf-level structure

def presheaf_projections(P: Presheaf, Q: Presheaf,
                         PQ: Presheaf) -> tuple[NatTransform, NatTransform]:
    H = P.algebra
    c1 = []
    c2 = []
    for p in H.elements():
        n = Q.n(p)
        c1.append(tuple(k // n for k in range(PQ.n(p))))
        c2.append(tuple(k % n for k in range(PQ.n(p))))
    return (NatTransform(PQ, P, tuple(c1)), NatTransform(PQ, Q, tuple(c2)))


def pair_nat(f: NatTransform, g: NatTransform, PQ: Presheaf) -> NatTransform:
    """Mediator Z -> P x Q induced by components (f, g)."""
    Z = f.source
    Q = g.target
    comps = tuple(
        tuple(
            f.components[p][z] * Q.n(p) + g.components[p][z]
            for z in range(Z.n(p))
        )
        for p in Z.algebra.elements()
    )
    return NatTransform(Z, PQ, comps)


def product_universal_presheaf(P: Presheaf, Q: Presheaf, pool: list[Presheaf],
                               guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    PQ = product_presheaf(P, Q)
    pr1, pr2 = presheaf_projections(P, Q, PQ)
    for W in pool:
        homs_p = hom_presheaf(W, P, guard)
        homs_q = hom_presheaf(W, Q, guard)
        candidates = hom_presheaf(W, PQ, guard)
        for f in homs_p:
            for g in homs_q:
                ms = [
                    h for h in candidates
                    if pr1.compose(h).components == f.components
                    and pr2.compose(h).components == g.components
                ]
                if len(ms) != 1:
                    return False, (repr(W), f.components, g.components, len(ms))
                if ms[0].components != pair_nat(f, g, PQ).components:
                    return False, (repr(W), f.components, g.components, "mediator")
    return True, None


@dataclass(frozen=True)
class PresheafPullback:
    presheaf: Presheaf
    proj1: NatTransform
    proj2: NatTransform


def pullback_presheaf(f: NatTransform, g: NatTransform) -> PresheafPullback:
    """Sectionwise pairs agreeing in the shared codomain."""
    if f.target != g.target:
        raise ValueError("pullback needs a shared codomain")
    P, Q = f.source, g.source
    H = P.algebra
    pairs = {
        p: [
            (i, j)
            for i in range(P.n(p)) for j in range(Q.n(p))
            if f.components[p][i] == g.components[p][j]
        ]
        for p in H.elements()
    }
    sections = tuple(
        tuple(f"({P.section_name(p, i)},{Q.section_name(p, j)})"
              for i, j in pairs[p])
        for p in H.elements()
    )
    restrict = {}
    for p in H.elements():
        for q in H.down(p):
            if q == p:
                continue
            pos = {pair: k for k, pair in enumerate(pairs[q])}
            restrict[(p, q)] = tuple(
                pos[(P.restrict(p, q, i), Q.restrict(p, q, j))]
                for i, j in pairs[p]
            )
    PB = make_presheaf(H, sections, restrict)
    c1 = tuple(tuple(i for i, _ in pairs[p]) for p in H.elements())
    c2 = tuple(tuple(j for _, j in pairs[p]) for p in H.elements())
    return PresheafPullback(
        PB, NatTransform(PB, P, c1), NatTransform(PB, Q, c2)
    )


def pullback_universal_presheaf(f: NatTransform, g: NatTransform,
                                pool: list[Presheaf],
                                guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    pb = pullback_presheaf(f, g)
    for W in pool:
        candidates = hom_presheaf(W, pb.presheaf, guard)
        for u in hom_presheaf(W, f.source, guard):
            for v in hom_presheaf(W, g.source, guard):
                if f.compose(u).components != g.compose(v).components:
                    continue
                ms = [
                    h for h in candidates
                    if pb.proj1.compose(h).components == u.components
                    and pb.proj2.compose(h).components == v.components
                ]
                if len(ms) != 1:
                    return False, (repr(W), u.components, v.components, len(ms))
    return True, None


# ------------------------------------------------------------ exponential

@dataclass(frozen=True)
class ExponentialResult:
    presheaf: Presheaf
    base: Presheaf
    power: Presheaf
    # families[p][k] lists (q, component tuple) pairs, ascending q, one
    # entry per q <= p: the k-th section as an actual family of maps.
    families: tuple[tuple[tuple[tuple[int, tuple[int, ...]], ...], ...], ...]

    def component_at(self, p: int, k: int, q: int) -> tuple[int, ...]:
        for qq, comps in self.families[p][k]:
            if qq == q:
                return comps
        raise KeyError((p, k, q))


def exponential(X: Presheaf, Y: Presheaf,
                guard: int = DEFAULT_GUARD) -> ExponentialResult:
    """Sections over p are the natural families of maps X(q) -> Y(q) for
    q <= p; restriction is truncation of the family."""
    H = X.algebra
    if H != Y.algebra:
        raise ValueError("exponential needs one algebra")
    total = 1
    for p in H.elements():
        for q in H.down(p):
            total *= max(Y.n(q), 1) ** X.n(q)
            if total > guard:
                raise SizeGuard("exponential enumeration", total, guard)

    fams_at: list[list[tuple]] = []
    for p in H.elements():
        downs = list(H.down(p))
        order = sorted(downs, key=lambda q: (-len(H.down(q)), q))
        chosen: dict[int, tuple[int, ...]] = {}
        found: list[tuple] = []

        def natural_with(q: int, comp: tuple[int, ...]) -> bool:
            for r, other in chosen.items():
                if H.le(r, q):
                    if any(
                        Y.restrict(q, r, comp[i]) != other[X.restrict(q, r, i)]
                        for i in range(X.n(q))
                    ):
                        return False
                if H.le(q, r):
                    if any(
                        Y.restrict(r, q, other[i]) != comp[X.restrict(r, q, i)]
                        for i in range(X.n(r))
                    ):
                        return False
            return True

        def rec(k: int):
            if k == len(order):
                found.append(tuple((q, chosen[q]) for q in downs))
                return
            q = order[k]
            for comp in itertools.product(range(Y.n(q)), repeat=X.n(q)):
                if natural_with(q, comp):
                    chosen[q] = comp
                    rec(k + 1)
                    del chosen[q]

        rec(0)
        found.sort()
        fams_at.append(found)

    sections = tuple(
        tuple(f"{H.name(p)}^f{k}" for k in range(len(fams_at[p])))
        for p in H.elements()
    )
    index_at = [
        {fam: k for k, fam in enumerate(fams_at[p])} for p in H.elements()
    ]
    restrict = {}
    for p in H.elements():
        for q in H.down(p):
            if q == p:
                continue
            below = set(H.down(q))
            row = []
            for fam in fams_at[p]:
                cut = tuple((r, comps) for r, comps in fam if r in below)
                row.append(index_at[q][cut])
            restrict[(p, q)] = tuple(row)
    E = make_presheaf(H, sections, restrict)
    return ExponentialResult(
        E, X, Y, tuple(tuple(f) for f in fams_at)
    )


def evaluation(E: ExponentialResult) -> NatTransform:
    """ev: (Y^X) x X -> Y, applying the family's component at its level."""
    X, Y = E.base, E.power
    H = X.algebra
    EX = product_presheaf(E.presheaf, X)
    comps = []
    for p in H.elements():
        n = X.n(p)
        row = []
        for m in range(EX.n(p)):
            k, x = m // n, m % n
            row.append(E.component_at(p, k, p)[x])
        comps.append(tuple(row))
    return NatTransform(EX, Y, tuple(comps))


def transpose(E: ExponentialResult, Z: Presheaf,
              k: NatTransform) -> NatTransform:
    """Currying: k: Z x X -> Y becomes Z -> Y^X."""
    X = E.base
    H = X.algebra
    fams_index = [
        {fam: i for i, fam in enumerate(E.families[p])}
        for p in H.elements()
    ]
    comps = []
    for p in H.elements():
        row = []
        for z in range(Z.n(p)):
            fam = tuple(
                (
                    q,
                    tuple(
                        k.components[q][Z.restrict(p, q, z) * X.n(q) + x]
                        for x in range(X.n(q))
                    ),
                )
                for q in H.down(p)
            )
            row.append(fams_index[p][fam])
        comps.append(tuple(row))
    return NatTransform(Z, E.presheaf, tuple(comps))


def untranspose(E: ExponentialResult, Z: Presheaf,
                h: NatTransform) -> NatTransform:
    """Uncurrying: h: Z -> Y^X becomes Z x X -> Y."""
    X, Y = E.base, E.power
    H = X.algebra
    ZX = product_presheaf(Z, X)
    comps = []
    for p in H.elements():
        n = X.n(p)
        row = []
        for m in range(ZX.n(p)):
            z, x = m // n, m % n
            row.append(E.component_at(p, h.components[p][z], p)[x])
        comps.append(tuple(row))
    return NatTransform(ZX, Y, tuple(comps))


def check_adjunction(E: ExponentialResult, Z: Presheaf,
                     guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    """Hom(Z x X, Y) and Hom(Z, Y^X) biject via transpose/untranspose."""
    X, Y = E.base, E.power
    ZX = product_presheaf(Z, X)
    lower = hom_presheaf(ZX, Y, guard)
    upper = hom_presheaf(Z, E.presheaf, guard)
    if len(lower) != len(upper):
        return False, ("count", len(lower), len(upper))
    for k in lower:
        h = transpose(E, Z, k)
        if not validate_nat(h):
            return False, ("transpose-nat", k.components)
        if untranspose(E, Z, h).components != k.components:
            return False, ("roundtrip-lower", k.components)
    for h in upper:
        k = untranspose(E, Z, h)
        if not validate_nat(k):
            return False, ("untranspose-nat", h.components)
        if transpose(E, Z, k).components != h.components:
            return False, ("roundtrip-upper", h.components)
    return True, None


def cross_nat(r: NatTransform, X: Presheaf,
              source_prod: Presheaf, target_prod: Presheaf) -> NatTransform:
    """r x id_X on sectionwise pair presheaves."""
    H = X.algebra
    comps = []
    for p in H.elements():
        n = X.n(p)
        row = []
        for m in range(source_prod.n(p)):
            z, x = m // n, m % n
            row.append(r.components[p][z] * n + x)
        comps.append(tuple(row))
    return NatTransform(source_prod, target_prod, tuple(comps))


def check_adjunction_natural(E: ExponentialResult, Z2: Presheaf, Z: Presheaf,
                             guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    """transpose(k . (r x id)) = transpose(k) . r for all r: Z2 -> Z."""
    X, Y = E.base, E.power
    ZX = product_presheaf(Z, X)
    Z2X = product_presheaf(Z2, X)
    for r in hom_presheaf(Z2, Z, guard):
        rx = cross_nat(r, X, Z2X, ZX)
        for k in hom_presheaf(ZX, Y, guard):
            left = transpose(E, Z2, k.compose(rx))
            right = transpose(E, Z, k).compose(r)
            if left.components != right.components:
                return False, (r.components, k.components)
    return True, None


# ------------------------------------------------- subobject classifier

@dataclass(frozen=True)
class OmegaResult:
    presheaf: Presheaf
    truth: NatTransform
    sieves: tuple[tuple[frozenset[int], ...], ...]

    def sieve_index(self, p: int, members: frozenset[int]) -> int:
        return self.sieves[p].index(members)


def omega(H: HeytingAlgebra, J: Topology) -> OmegaResult:
    """Sections over p are the closed sieves at p; restriction is sieve
    pullback; truth points at the maximal sieve."""
    sieves = tuple(
        tuple(closed_sieves(H, J, p)) for p in H.elements()
    )
    sections = tuple(
        tuple(
            "{" + ",".join(H.name(q) for q in sorted(m)) + "}"
            for m in sieves[p]
        )
        for p in H.elements()
    )
    restrict = {}
    for p in H.elements():
        for q in H.down(p):
            if q == p:
                continue
            below = frozenset(H.down(q))
            restrict[(p, q)] = tuple(
                sieves[q].index(m & below) for m in sieves[p]
            )
    om = make_presheaf(H, sections, restrict)
    one = terminal_presheaf(H)
    truth_comps = tuple(
        (sieves[p].index(frozenset(H.down(p))),) for p in H.elements()
    )
    return OmegaResult(om, NatTransform(one, om, truth_comps), sieves)


@dataclass(frozen=True)
class SubobjectInclusion:
    sub: Presheaf
    parent: Presheaf
    inclusion: NatTransform
    mask: tuple[tuple[int, ...], ...]
    # mask[p] lists the parent section indices belonging to the subobject


def subobject_from_mask(parent: Presheaf,
                        mask: tuple[tuple[int, ...], ...]) -> SubobjectInclusion:
    """Build the sub-presheaf on the masked sections; the mask must be
    closed under restriction."""
    H = parent.algebra
    pos: list[dict[int, int]] = []
    for p in H.elements():
        seen = {}
        for k, i in enumerate(mask[p]):
            if not 0 <= i < parent.n(p) or i in seen:
                raise NotSubobject(f"bad mask at {H.name(p)!r}")
            seen[i] = k
        pos.append(seen)
    for p in H.elements():
        for q in H.down(p):
            for i in mask[p]:
                if parent.restrict(p, q, i) not in pos[q]:
                    raise NotSubobject(
                        f"mask not closed under restriction at {H.name(p)!r}"
                    )
    sections = tuple(
        tuple(parent.section_name(p, i) for i in mask[p])
        for p in H.elements()
    )
    restrict = {}
    for p in H.elements():
        for q in H.down(p):
            if q == p:
                continue
            restrict[(p, q)] = tuple(
                pos[q][parent.restrict(p, q, i)] for i in mask[p]
            )
    sub = make_presheaf(H, sections, restrict)
    inc = NatTransform(
        sub, parent, tuple(tuple(mask[p]) for p in H.elements())
    )
    return SubobjectInclusion(sub, parent, inc, tuple(tuple(m) for m in mask))


def subobjects(parent: Presheaf, J: Topology | None = None,
               require_sheaf: bool = True) -> list[SubobjectInclusion]:
    """All restriction-closed section masks, optionally filtered to
    subsheaves; canonical (mask-lexicographic) order."""
    H = parent.algebra
    per_level = [
        [tuple(sorted(c))
         for r in range(parent.n(p) + 1)
         for c in itertools.combinations(range(parent.n(p)), r)]
        for p in H.elements()
    ]
    out = []
    for mask in itertools.product(*per_level):
        ok = all(
            parent.restrict(p, q, i) in mask[q]
            for p in H.elements()
            for q in H.down(p)
            for i in mask[p]
        )
        if not ok:
            continue
        inc = subobject_from_mask(parent, mask)
        if require_sheaf and J is not None and not is_sheaf(inc.sub, J).ok:
            continue
        out.append(inc)
    out.sort(key=lambda s: s.mask)
    return out


def classify(inc: SubobjectInclusion, om: OmegaResult) -> NatTransform:
    """The arrow to the classifier sending a section to the sieve of
    levels where its restriction lands in the subobject."""
    parent = inc.parent
    H = parent.algebra
    comps = []
    for p in H.elements():
        row = []
        for x in range(parent.n(p)):
            members = frozenset(
                q for q in H.down(p)
                if parent.restrict(p, q, x) in inc.mask[q]
            )
            try:
                row.append(om.sieve_index(p, members))
            except ValueError:
                raise NotSubobject(
                    f"classifying sieve at {H.name(p)!r} is not closed"
                ) from None
        comps.append(tuple(row))
    return NatTransform(parent, om.presheaf, tuple(comps))


def truth_pullback_mask(parent: Presheaf, phi: NatTransform,
                        om: OmegaResult) -> tuple[tuple[int, ...], ...]:
    """Sections classified as true: the pullback of truth along phi."""
    H = parent.algebra
    out = []
    for p in H.elements():
        top_idx = om.sieve_index(p, frozenset(H.down(p)))
        out.append(tuple(
            x for x in range(parent.n(p)) if phi.components[p][x] == top_idx
        ))
    return tuple(out)


def check_classifier(parent: Presheaf, J: Topology, om: OmegaResult,
                     guard: int = DEFAULT_GUARD) -> tuple[bool, tuple | None]:
    """Every subsheaf is classified by exactly one arrow to the
    classifier whose truth pullback recovers it."""
    arrows = hom_presheaf(parent, om.presheaf, guard)
    for inc in subobjects(parent, J, require_sheaf=True):
        phi = classify(inc, om)
        if not validate_nat(phi):
            return False, (inc.mask, "not natural")
        if truth_pullback_mask(parent, phi, om) != inc.mask:
            return False, (inc.mask, "pullback mismatch")
        matching = [
            a for a in arrows
            if truth_pullback_mask(parent, a, om) == inc.mask
        ]
        if len(matching) != 1 or matching[0].components != phi.components:
            return False, (inc.mask, "not unique", len(matching))
    return True, None


# ---------------------------------------------------- axiom sweep report

@dataclass(frozen=True)
class ToposReport:
    ok: bool
    rows: tuple[tuple[str, str, bool], ...]


def check_topos_axioms(pool: list[Presheaf], J: Topology,
                       guard: int = DEFAULT_GUARD) -> ToposReport:
    """Terminal, products, pullbacks, exponentials, classifier: existence
    and universality over every instance drawn from the pool."""
    if not pool:
        return ToposReport(True, ())
    H = pool[0].algebra
    rows: list[tuple[str, str, bool]] = []

    def name_of(P: Presheaf) -> str:
        return "F(" + ",".join(str(P.n(p)) for p in H.elements()) + ")"

    one = terminal_presheaf(H)
    rows.append(("terminal-sheaf", "1", is_sheaf(one, J).ok))
    for P in pool:
        rows.append((
            "terminal-unique", name_of(P),
            len(hom_presheaf(P, one, guard)) == 1,
        ))

    for A in pool:
        for B in pool:
            inst = f"{name_of(A)}x{name_of(B)}"
            PQ = product_presheaf(A, B)
            rows.append(("product-sheaf", inst, is_sheaf(PQ, J).ok))
            ok, _ = product_universal_presheaf(A, B, pool, guard)
            rows.append(("product-universal", inst, ok))

    for C in pool:
        for A in pool:
            for B in pool:
                for f in hom_presheaf(A, C, guard):
                    for g in hom_presheaf(B, C, guard):
                        inst = f"{name_of(A)}->{name_of(C)}<-{name_of(B)}"
                        pb = pullback_presheaf(f, g)
                        rows.append((
                            "pullback-sheaf", inst, is_sheaf(pb.presheaf, J).ok
                        ))
                        ok, _ = pullback_universal_presheaf(f, g, pool, guard)
                        rows.append(("pullback-universal", inst, ok))

    for X in pool:
        for Y in pool:
            inst = f"{name_of(Y)}^{name_of(X)}"
            E = exponential(X, Y, guard)
            rows.append(("exponential-sheaf", inst, is_sheaf(E.presheaf, J).ok))
            rows.append(("evaluation-natural", inst, validate_nat(evaluation(E))))
            adj_ok = True
            for Z in pool:
                ok, _ = check_adjunction(E, Z, guard)
                adj_ok = adj_ok and ok
            rows.append(("adjunction-bijection", inst, adj_ok))
            nat_ok = True
            for Z in pool:
                for Z2 in pool:
                    ok, _ = check_adjunction_natural(E, Z2, Z, guard)
                    nat_ok = nat_ok and ok
            rows.append(("adjunction-natural", inst, nat_ok))

    om = omega(H, J)
    rows.append(("omega-sheaf", "Omega", is_sheaf(om.presheaf, J).ok))
    rows.append(("truth-natural", "true", validate_nat(om.truth)))
    for A in pool:
        ok, _ = check_classifier(A, J, om, guard)
        rows.append(("classifier-unique", name_of(A), ok))

    return ToposReport(all(r[2] for r in rows), tuple(rows))


# ------------------------------------------------- published refutation

@dataclass(frozen=True)
class CounterexampleReport:
    proper_size: int
    vertex_size: int
    flawed_count: int
    expected_flawed: int
    corrected_count: int
    refuted: bool
    corrected_unique: bool


def exposition_counterexample(H: HeytingAlgebra | None = None,
                              proper_size: int = 2,
                              guard: int = DEFAULT_GUARD) -> CounterexampleReport:
    """Mediation counts on the triple product of a set-like object.

    The commutativity-only condition pins the first two components of
    h: XxXxX -> XxXxX and leaves the third free, so the mediator count
    is |X| to the power |X|^3; the corrected condition mediates into
    graph(f) and admits exactly one arrow.
    """
    if H is None:
        H = two_element()
    X = set_like_tset(H, proper_size)
    XX = product(X, X, guard)
    XXX = product(XX.tset, X, guard)
    quot = separated_quotient(XXX.tset)
    W = quot.tset
    top = H.top
    z_idx = X.size - 1

    reps = tuple(cls[0] for cls in quot.classes)
    first = []
    second = []
    for w in range(W.size):
        k, _ = XXX.pairs[reps[w]]
        i, j = XX.pairs[k]
        if W.ee(w) == top:
            first.append(i)
            second.append(j)
        else:
            first.append(z_idx)
            second.append(z_idx)
    p1 = TRelation(W, X, tuple(first))
    p2 = TRelation(W, X, tuple(second))

    flawed = mediators(W, W, [(p1, p1), (p2, p2)], guard)
    proper_triples = sum(1 for w in range(W.size) if W.ee(w) == top)
    expected = proper_size ** proper_triples

    gr = graph(identity_relation(X))
    corrected = mediators(W, gr.tset, [(gr.to_source, p1), (gr.to_target, p1)],
                          guard)

    return CounterexampleReport(
        proper_size=proper_size,
        vertex_size=W.size,
        flawed_count=len(flawed),
        expected_flawed=expected,
        corrected_count=len(corrected),
        refuted=len(flawed) >= 2,
        corrected_unique=len(corrected) == 1,
    )


# ------------------------------------------------------------ SG probing

@dataclass(frozen=True)
class SgReport:
    ok: bool
    pairs_checked: int
    witness: tuple | None


def sg_check(pool: list[TSet], guard: int = DEFAULT_GUARD) -> SgReport:
    """Probe separation: arrows out of subterminals distinguish every
    pair of distinct arrows in the pool's hom-sets.

    Arrow pairs count as distinct when their mappings differ; probe
    composites are compared extensionally (at the existence degree).
    On separated objects the two notions coincide, so this is the
    support-generator property there.
    """
    if not pool:
        return SgReport(True, 0, None)
    H = pool[0].algebra
    probes: dict[tuple[int, int], list[TRelation]] = {}

    def probe_maps(s: int, k: int) -> list[TRelation]:
        if (s, k) not in probes:
            probes[(s, k)] = hom_set(principal_tset(H, s), pool[k], guard)
        return probes[(s, k)]

    checked = 0
    for ka, A in enumerate(pool):
        for B in pool:
            homs = hom_set(A, B, guard)
            for fi, f in enumerate(homs):
                for g in homs[fi + 1:]:
                    checked += 1
                    found = False
                    for s in H.elements():
                        for e in probe_maps(s, ka):
                            if not extensionally_equal(
                                f.compose(e), g.compose(e)
                            ):
                                found = True
                                break
                        if found:
                            break
                    if not found:
                        return SgReport(
                            False, checked,
                            (repr(A), repr(B), f.mapping, g.mapping),
                        )
    return SgReport(True, checked, None)


@dataclass(frozen=True)
class SgExhibit:
    presheaf: Presheaf
    sheaf_witness: tuple | None
    tset: TSet
    f: TRelation
    g: TRelation
    maps_distinct: bool
    probe_separable: bool


def doubled_point_presheaf(H: HeytingAlgebra) -> Presheaf:
    """Two top sections agreeing on everything below, singletons at
    every proper level.  Not a sheaf whenever the proper levels cover
    the top."""
    sections = tuple(
        ("x", "y") if p == H.top else ("*",) for p in H.elements()
    )
    restrict = {}
    for p in H.elements():
        for q in H.down(p):
            if q == p:
                continue
            restrict[(p, q)] = (0, 0) if p == H.top else (0,)
    return make_presheaf(H, sections, restrict)


def doubled_point_tset(H: HeytingAlgebra) -> TSet:
    """The doubled-point presheaf transported by the agreement-degree
    identity: the two top elements come out indiscernible, so the
    carrier is not separated."""
    proper = [p for p in H.elements() if p != H.top]
    names = ("x", "y") + tuple(f"s{H.name(p)}" for p in proper)
    below_top = H.sigma(proper)

    def ident(i: int, j: int) -> int:
        ei = H.top if i < 2 else proper[i - 2]
        ej = H.top if j < 2 else proper[j - 2]
        if i == j:
            return ei
        if i < 2 and j < 2:
            return below_top
        return H.meet(ei, ej)

    n = 2 + len(proper)
    table = tuple(tuple(ident(i, j) for j in range(n)) for i in range(n))
    return TSet(H, names, table)


def sg_failure_exhibit(H: HeytingAlgebra, J: Topology,
                       guard: int = DEFAULT_GUARD) -> SgExhibit:
    """On the doubled point, the identity and the swap of the two top
    elements differ as carrier maps, yet every probe composite agrees
    extensionally: probing cannot resolve indiscernible doubles.

    Meaningful over algebras whose top is covered by the proper
    elements (the diamond, not a chain): there the presheaf fails the
    sheaf condition and the carrier fails separation.
    """
    P = doubled_point_presheaf(H)
    sheaf = is_sheaf(P, J)
    D = doubled_point_tset(H)
    swap = TRelation(D, D, (1, 0) + tuple(range(2, D.size)))
    f = identity_relation(D)
    separable = False
    for s in H.elements():
        for e in hom_set(principal_tset(H, s), D, guard):
            if not extensionally_equal(f.compose(e), swap.compose(e)):
                separable = True
    return SgExhibit(
        presheaf=P,
        sheaf_witness=sheaf.witness,
        tset=D,
        f=f,
        g=swap,
        maps_distinct=f.mapping != swap.mapping,
        probe_separable=separable,
    )
