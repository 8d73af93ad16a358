"""JSON forms of ideals, posets, free complexes and Betti tables."""

from __future__ import annotations

from typing import Any, Hashable, Mapping, Sequence

from .homology import Field, parse_field
from .monomial import MonomialIdeal, format_monomial, ideal_from_json, ideal_to_json
from .poset import GradedPoset, Poset, PosetError
from .resolution import BettiTable, FreeComplex, scalar_from_json, scalar_to_json

__all__ = [
    "betti_table_to_json",
    "complex_from_json",
    "complex_to_json",
    "ideal_from_json",
    "ideal_to_json",
    "iso_pairs_from_json",
    "lattice_to_json",
    "poset_from_json",
    "poset_to_json",
]


def _key(x: Hashable) -> Any:
    return x if isinstance(x, (str, int)) else str(x)


def poset_to_json(P: Poset, names: Mapping[Hashable, str] | None = None) -> dict:
    """Elements, covering relations and (for graded posets) the grading."""
    if names is None:
        if isinstance(P, GradedPoset):
            names = {x: P.label(x) for x in P.elements}
        else:
            names = {x: _key(x) for x in P.elements}
    out: dict = {
        "elements": [names[x] for x in P.elements],
        "relations": [[names[x], names[y]] for x, y in P.cover_pairs()],
    }
    if isinstance(P, GradedPoset):
        out["variables"] = list(P.variables)
        out["grading"] = {str(names[x]): list(P.grade[x]) for x in P.elements}
    return out


def poset_from_json(data: dict) -> Poset:
    """Inverse of :func:`poset_to_json`; relations may be any generating pairs of ids."""
    if not isinstance(data, dict) or "elements" not in data:
        raise PosetError("poset JSON needs an 'elements' list")
    elements = data["elements"]
    if not isinstance(elements, list):
        raise PosetError("'elements' must be a list")
    relations = data.get("relations", [])
    if not all(isinstance(r, list) and len(r) == 2 for r in relations):
        raise PosetError("'relations' must be a list of [lower, upper] pairs")
    P = Poset.from_relations(elements, [tuple(r) for r in relations])
    grading = data.get("grading")
    if grading is None:
        return P
    grade = {}
    for x in elements:
        g = grading.get(str(x))
        if g is None:
            raise PosetError(f"no grading for element {x!r}")
        grade[x] = tuple(int(e) for e in g)
    m = len(next(iter(grade.values()))) if grade else 0
    return GradedPoset.from_poset(P, grade, m, data.get("variables"))


def lattice_to_json(M: Poset, name_atom=str) -> dict:
    """A meet-closure lattice whose elements are frozensets of atoms."""
    def name(s):
        return "{" + ",".join(sorted(name_atom(a) for a in s)) + "}"

    names = {s: name(s) for s in M.elements}
    out = poset_to_json(M, names)
    out["sets"] = {names[s]: sorted(name_atom(a) for a in s) for s in M.elements}
    return out


def complex_to_json(F: FreeComplex) -> dict:
    out: dict = {
        "num_vars": F.num_vars,
        "field": F.field.spec if F.field is not None else None,
        "degrees": [[list(d) for d in ds] for ds in F.degrees],
        "differentials": [
            [[i, j, scalar_to_json(c)] for (i, j), c in sorted(entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
            for entries in F.differentials
        ],
    }
    if F.ideal is not None:
        out["ideal"] = ideal_to_json(F.ideal)
    return out


def complex_from_json(data: dict) -> FreeComplex:
    try:
        degrees = tuple(tuple(tuple(int(e) for e in d) for d in ds) for ds in data["degrees"])
        diffs = tuple({(int(i), int(j)): scalar_from_json(c) for i, j, c in entries} for entries in data["differentials"])
        num_vars = int(data["num_vars"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed complex JSON: {exc}") from exc
    field = parse_field(data["field"]) if data.get("field") else None
    ideal = ideal_from_json(data["ideal"]) if data.get("ideal") else None
    return FreeComplex(num_vars, degrees, diffs, ideal, field)


def betti_table_to_json(table: BettiTable) -> list[dict]:
    return table.to_json()


def betti_table_text(table: BettiTable, variables: Sequence[str]) -> str:
    lines = []
    for (d, a), b in sorted(table.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1])):
        lines.append(f"beta_{d},{format_monomial(a, variables)} = {b}")
    lines.append("totals: " + " ".join(str(t) for t in table.totals()))
    return "\n".join(lines) + "\n"


def iso_pairs_from_json(data) -> dict:
    """Degree map for ``relabel``: a list of [source, target] pairs or ``{"degree_pairs": ...}``."""
    if isinstance(data, dict):
        data = data.get("degree_pairs")
    if not isinstance(data, list):
        raise ValueError("iso map must be a list of [source_degree, target_degree] pairs")
    out = {}
    for pair in data:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ValueError(f"bad iso pair {pair!r}")
        out[tuple(int(e) for e in pair[0])] = tuple(int(e) for e in pair[1])
    return out


def field_name(field: Field | None) -> str | None:
    return None if field is None else field.spec


def ideal_json(ideal: MonomialIdeal) -> dict:
    out = ideal_to_json(ideal)
    out["monomials"] = [ideal.monomial(g) for g in ideal.generators]
    return out
