"""Deterministic pools of small instances.

Everything here is exhaustive enumeration up to isomorphism with a
canonical output order, so that two runs over the same bounds produce
identical pools.  Posets are generated as upper-triangular relations
and deduplicated by a minimal permuted form; identity tables and
restriction tables get the same treatment.
"""

from __future__ import annotations

import itertools

from .errors import CycleError, NoBound, NotDistributive
from .heyting import HeytingAlgebra, PosetSpec, build_algebra
from .sheaves import Presheaf, is_sheaf, make_presheaf, validate_presheaf
from .sites import Topology
from .tset import TSet, satisfies_postulate

ALGEBRA_ERRORS = (CycleError, NoBound, NotDistributive)


def _relation_key(n: int, le: list[list[bool]], perm) -> tuple[bool, ...]:
    return tuple(le[perm[i]][perm[j]] for i in range(n) for j in range(n))


def all_poset_specs(n: int) -> list[PosetSpec]:
    """All partial orders on n points, one spec per isomorphism class,
    sorted by canonical relation key."""
    if n <= 0:
        return []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = list(itertools.permutations(range(n)))
    keys: set[tuple[bool, ...]] = set()
    for bits in range(1 << len(pairs)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for b, (i, j) in enumerate(pairs):
            if bits >> b & 1:
                le[i][j] = True
        # every order on a finite set admits a monotone labelling, so
        # upper-triangular candidates reach every isomorphism class
        if any(
            le[i][j] and le[j][k] and not le[i][k]
            for i, j in pairs for k in range(j + 1, n)
        ):
            continue
        keys.add(min(_relation_key(n, le, p) for p in perms))
    out = []
    for key in sorted(keys):
        le = [[key[i * n + j] for j in range(n)] for i in range(n)]
        covers = [
            (f"x{i}", f"x{j}")
            for i in range(n)
            for j in range(n)
            if i != j and le[i][j]
            and not any(
                k not in (i, j) and le[i][k] and le[k][j] for k in range(n)
            )
        ]
        out.append(PosetSpec(tuple(f"x{i}" for i in range(n)), tuple(covers)))
    return out


def algebra_pool(max_size: int) -> list[tuple[str, HeytingAlgebra]]:
    """Every complete Heyting algebra with 2..max_size elements, one per
    isomorphism class, labelled A<size>.<index>."""
    out: list[tuple[str, HeytingAlgebra]] = []
    for n in range(2, max_size + 1):
        hit = 0
        for spec in all_poset_specs(n):
            try:
                H = build_algebra(spec)
            except ALGEBRA_ERRORS:
                continue
            out.append((f"A{n}.{hit}", H))
            hit += 1
    return out


def _table_key(n: int, table, perm) -> tuple[int, ...]:
    return tuple(table[perm[i]][perm[j]] for i in range(n) for j in range(n))


def tset_pool(H: HeytingAlgebra, max_size: int, *,
              require_separated: bool = True,
              require_postulate: bool = True,
              include_empty: bool = False) -> list[TSet]:
    """All T-sets over H with carrier size up to max_size, one per
    isomorphism class, by backtracking over identity tables.

    Existence degrees are generated in nondecreasing index order, which
    costs no classes; duplicates across the remaining relabellings are
    removed by a minimal permuted table form.
    """
    out: list[TSet] = []
    lo = 0 if include_empty else 1
    for n in range(lo, max_size + 1):
        found: list[tuple[tuple[int, ...], ...]] = []
        seen: set[tuple[int, ...]] = set()
        perms = list(itertools.permutations(range(n)))
        for diag in itertools.combinations_with_replacement(range(H.size), n):
            if n == 0:
                found.append(())
                continue
            cells = list(itertools.combinations(range(n), 2))
            table: list[list[int | None]] = [
                [diag[i] if i == j else None for j in range(n)]
                for i in range(n)
            ]

            def closed(x: int, y: int) -> bool:
                # all transitivity instances whose three entries exist
                # and that involve the fresh cell
                for z in range(n):
                    for a, b, c in ((x, y, z), (x, z, y), (z, x, y)):
                        tab, tbc = table[a][b], table[b][c]
                        tac = table[a][c]
                        if tab is None or tbc is None or tac is None:
                            continue
                        if not H.le(H.meet(tab, tbc), tac):
                            return False
                return True

            def rec(k: int):
                if k == len(cells):
                    found.append(tuple(tuple(r) for r in table))
                    return
                x, y = cells[k]
                cap = H.meet(diag[x], diag[y])
                for v in H.down(cap):
                    if require_separated and v == diag[x] and v == diag[y]:
                        continue
                    table[x][y] = table[y][x] = v
                    if closed(x, y):
                        rec(k + 1)
                table[x][y] = table[y][x] = None

            rec(0)
        for tab in sorted(found):
            key = min(_table_key(n, tab, p) for p in perms) if n else ()
            if key in seen:
                continue
            seen.add(key)
            t = TSet(H, tuple(f"a{i}" for i in range(n)), tab)
            if require_postulate and not satisfies_postulate(t).ok:
                continue
            out.append(t)
    return out


def _presheaf_key(shape: tuple[int, ...], tables: dict, pair_order,
                  perm_sets) -> tuple:
    best = None
    for perms in itertools.product(*perm_sets):
        normal = tuple(
            tuple(perms[q][tables[(p, q)][perms[p].index(i)]]
                  for i in range(len(perms[p])))
            for p, q in pair_order
        )
        if best is None or normal < best:
            best = normal
    return (shape, best)


def sheaf_pool(H: HeytingAlgebra, J: Topology, max_total: int, *,
               require_sheaf: bool = True) -> list[Presheaf]:
    """All presheaves over H with total section count up to max_total,
    one per isomorphism class, optionally filtered to sheaves for J."""
    levels = list(H.elements())
    pair_order = [
        (p, q) for p in levels for q in H.down(p) if q != p
    ]
    out: list[Presheaf] = []
    seen: set[tuple] = set()
    for shape in itertools.product(range(max_total + 1), repeat=len(levels)):
        if sum(shape) > max_total:
            continue
        choice_sets = [
            list(itertools.product(range(shape[q]), repeat=shape[p]))
            for p, q in pair_order
        ]
        if any(shape[p] and not shape[q] for p, q in pair_order):
            continue
        perm_sets = [
            list(itertools.permutations(range(shape[p]))) for p in levels
        ]
        for combo in itertools.product(*choice_sets):
            tables = dict(zip(pair_order, combo))
            sections = tuple(
                tuple(f"x{i}" for i in range(shape[p])) for p in levels
            )
            P = make_presheaf(H, sections, tables)
            if not validate_presheaf(P).ok:
                continue
            if require_sheaf and not is_sheaf(P, J).ok:
                continue
            key = _presheaf_key(shape, tables, pair_order, perm_sets)
            if key in seen:
                continue
            seen.add(key)
            out.append(P)
    return out
