"""Flat-file JSON formats for algebras, T-sets, relations, presheaves.

One shape per structure, detected by its required keys:

  algebra   {"elements": [...], "covers": [[lo, hi], ...]}
  tset      {"algebra": <path or inline>, "elements": [...],
             "id": [[element names]]}
  relation  {"source": <tset>, "target": <tset>, "map": {a: b}}
  presheaf  {"algebra": <path or inline>, "sections": {level: [...]},
             "restrict": {"p>q": {src: dst}}}   (cover pairs only)

Presheaf files carry restriction maps for Hasse cover pairs only;
composites are derived along cover chains and cross-checked for path
independence.  Referenced algebras may be inline objects or paths
relative to the referencing file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import SchemaError
from .heyting import HeytingAlgebra, PosetSpec, build_algebra
from .sheaves import Presheaf, make_presheaf, validate_presheaf
from .tset import TRelation, TSet, make_tset

_KIND_KEYS = {
    "algebra": {"elements", "covers"},
    "tset": {"algebra", "elements", "id"},
    "relation": {"source", "target", "map"},
    "presheaf": {"algebra", "sections", "restrict"},
}


def detect_kind(doc: object) -> str:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object")
    hits = [k for k, keys in _KIND_KEYS.items() if keys == set(doc)]
    if len(hits) != 1:
        raise SchemaError(
            f"keys {sorted(doc)} match {len(hits)} structure kinds, need 1"
        )
    return hits[0]


def _covers(H: HeytingAlgebra) -> list[tuple[str, str]]:
    out = []
    for p in H.elements():
        for q in H.down(p):
            if q == p:
                continue
            if not any(
                r not in (p, q) and H.le(q, r) and H.le(r, p)
                for r in H.elements()
            ):
                out.append((H.name(q), H.name(p)))
    return out


def algebra_to_dict(H: HeytingAlgebra) -> dict:
    return {
        "elements": list(H.names),
        "covers": [list(c) for c in _covers(H)],
    }


def algebra_from_dict(doc: dict) -> HeytingAlgebra:
    try:
        elements = [str(e) for e in doc["elements"]]
        covers = [(str(lo), str(hi)) for lo, hi in doc["covers"]]
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"algebra shape: {e}") from None
    return build_algebra(PosetSpec(tuple(elements), tuple(covers)))


def _resolve_algebra(ref: object, base: Path | None) -> HeytingAlgebra:
    if isinstance(ref, str):
        path = Path(ref)
        if base is not None and not path.is_absolute():
            path = base / path
        return algebra_from_dict(read_doc(path))
    if isinstance(ref, dict):
        return algebra_from_dict(ref)
    raise SchemaError("algebra reference must be a path or an object")


def tset_to_dict(t: TSet) -> dict:
    H = t.algebra
    return {
        "algebra": algebra_to_dict(H),
        "elements": list(t.elements),
        "id": [[H.name(v) for v in row] for row in t.id_table],
    }


def tset_from_dict(doc: dict, base: Path | None = None) -> TSet:
    H = _resolve_algebra(doc.get("algebra"), base)
    try:
        elements = [str(e) for e in doc["elements"]]
        rows = doc["id"]
        table = [[H.index(str(v)) for v in row] for row in rows]
    except (KeyError, TypeError) as e:
        raise SchemaError(f"tset shape: {e}") from None
    except ValueError as e:
        raise SchemaError(f"tset id entry: {e}") from None
    if len(set(elements)) != len(elements):
        raise SchemaError("duplicate carrier element names")
    if len(table) != len(elements) or any(len(r) != len(elements) for r in table):
        raise SchemaError("id matrix must be square over the carrier")
    return make_tset(H, elements, table)


def relation_to_dict(r: TRelation) -> dict:
    return {
        "source": tset_to_dict(r.source),
        "target": tset_to_dict(r.target),
        "map": {
            r.source.name(x): r.target.name(r.mapping[x])
            for x in range(r.source.size)
        },
    }


def relation_from_dict(doc: dict, base: Path | None = None) -> TRelation:
    for key in ("source", "target"):
        if not isinstance(doc.get(key), dict):
            raise SchemaError(f"relation {key} must be an inline tset")
    src = tset_from_dict(doc["source"], base)
    tgt = tset_from_dict(doc["target"], base)
    m = doc.get("map")
    if not isinstance(m, dict):
        raise SchemaError("relation map must be an object")
    try:
        mapping = tuple(tgt.index(str(m[name])) for name in src.elements)
    except KeyError as e:
        raise SchemaError(f"relation map misses element {e}") from None
    except ValueError as e:
        raise SchemaError(f"relation map target: {e}") from None
    return TRelation(src, tgt, mapping)


def presheaf_to_dict(P: Presheaf) -> dict:
    H = P.algebra
    restrict = {}
    for q_name, p_name in _covers(H):
        p, q = H.index(p_name), H.index(q_name)
        restrict[f"{p_name}>{q_name}"] = {
            P.section_name(p, i): P.section_name(q, P.restrict(p, q, i))
            for i in range(P.n(p))
        }
    return {
        "algebra": algebra_to_dict(H),
        "sections": {
            H.name(p): [P.section_name(p, i) for i in range(P.n(p))]
            for p in H.elements()
        },
        "restrict": restrict,
    }


def presheaf_from_dict(doc: dict, base: Path | None = None, *,
                       check: bool = True) -> Presheaf:
    H = _resolve_algebra(doc.get("algebra"), base)
    raw_sections = doc.get("sections")
    if not isinstance(raw_sections, dict):
        raise SchemaError("sections must map level names to lists")
    try:
        sections = tuple(
            tuple(str(s) for s in raw_sections.get(H.name(p), []))
            for p in H.elements()
        )
    except TypeError as e:
        raise SchemaError(f"sections shape: {e}") from None
    extra = set(raw_sections) - set(H.names)
    if extra:
        raise SchemaError(f"sections name unknown levels {sorted(extra)}")
    for p in H.elements():
        if len(set(sections[p])) != len(sections[p]):
            raise SchemaError(f"duplicate section names at {H.name(p)!r}")

    covers = _covers(H)
    want = {f"{p_name}>{q_name}" for q_name, p_name in covers}
    raw_restrict = doc.get("restrict")
    if not isinstance(raw_restrict, dict):
        raise SchemaError("restrict must be an object")
    if set(raw_restrict) != want:
        raise SchemaError(
            f"restrict keys must be exactly the cover pairs {sorted(want)}"
        )

    tables: dict[tuple[int, int], tuple[int, ...]] = {}
    for q_name, p_name in covers:
        p, q = H.index(p_name), H.index(q_name)
        entry = raw_restrict[f"{p_name}>{q_name}"]
        if not isinstance(entry, dict):
            raise SchemaError(f"restrict {p_name}>{q_name} must be an object")
        row = []
        for i, s in enumerate(sections[p]):
            if s not in entry:
                raise SchemaError(f"restrict {p_name}>{q_name} misses {s!r}")
            dst = str(entry[s])
            if dst not in sections[q]:
                raise SchemaError(
                    f"restrict {p_name}>{q_name} sends {s!r} to unknown {dst!r}"
                )
            row.append(sections[q].index(dst))
        tables[(p, q)] = tuple(row)

    def fill(p: int, q: int) -> tuple[int, ...]:
        # compose down any cover chain; path independence is validated after
        if (p, q) in tables:
            return tables[(p, q)]
        for r in H.elements():
            if r in (p, q) or not (H.le(q, r) and H.le(r, p)):
                continue
            if (p, r) in tables:
                lower = fill(r, q)
                tables[(p, q)] = tuple(
                    lower[v] for v in tables[(p, r)]
                )
                return tables[(p, q)]
        raise SchemaError(f"no cover chain from {H.name(p)!r} to {H.name(q)!r}")

    full = {}
    for p in H.elements():
        for q in H.down(p):
            if q != p:
                full[(p, q)] = fill(p, q)
    P = make_presheaf(H, sections, full)
    if check:
        rep = validate_presheaf(P)
        if not rep.ok:
            raise SchemaError(
                f"restrictions do not compose: {rep.violations[0]}"
            )
    return P


def read_doc(path: Path) -> dict:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return doc


def load_structure(path: str | Path) -> tuple[str, object]:
    """Read a JSON file and return (kind, structure); the kind is
    detected from the key set."""
    path = Path(path)
    doc = read_doc(path)
    kind = detect_kind(doc)
    base = path.parent
    if kind == "algebra":
        return kind, algebra_from_dict(doc)
    if kind == "tset":
        return kind, tset_from_dict(doc, base)
    if kind == "relation":
        return kind, relation_from_dict(doc, base)
    return kind, presheaf_from_dict(doc, base)


def structure_to_dict(obj: object) -> dict:
    if isinstance(obj, HeytingAlgebra):
        return algebra_to_dict(obj)
    if isinstance(obj, TSet):
        return tset_to_dict(obj)
    if isinstance(obj, TRelation):
        return relation_to_dict(obj)
    if isinstance(obj, Presheaf):
        return presheaf_to_dict(obj)
    raise TypeError(f"no file form for {type(obj).__name__}")


def save_structure(path: str | Path, obj: object) -> None:
    Path(path).write_text(
        json.dumps(structure_to_dict(obj), indent=2) + "\n", encoding="utf-8"
    )
