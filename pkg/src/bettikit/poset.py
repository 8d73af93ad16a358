"""Finite posets, order complexes, atomicity and meet-closures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .monomial import MonomialIdeal, Multidegree, divides, format_monomial, join_closure


class PosetError(ValueError):
    pass


class NotAtomicError(PosetError):
    pass


class Poset:
    """A finite poset stored as its full ``<=`` matrix.

    ``elements`` are arbitrary hashable ids; ``leq[i, j]`` says
    ``elements[i] <= elements[j]``.
    """

    def __init__(self, elements: Sequence[Hashable], leq, *, check: bool = True):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PosetError("duplicate poset elements")
        n = len(self.elements)
        self.leq = np.array(leq, dtype=bool).reshape(n, n)
        self.leq.flags.writeable = False
        if check:
            self._validate()

    def _validate(self):
        L = self.leq
        n = len(self.elements)
        if n == 0:
            return
        if not L.diagonal().all():
            raise PosetError("relation is not reflexive")
        if (L & L.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("relation is not antisymmetric")
        Li = L.astype(np.int64)
        if ((Li @ Li > 0) & ~L).any():
            raise PosetError("relation is not transitive")

    @classmethod
    def from_relations(cls, elements: Sequence[Hashable], relations: Iterable[tuple[Hashable, Hashable]]):
        """Build from generating pairs ``(x, y)`` meaning ``x <= y``; closes transitively."""
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        L = np.eye(n, dtype=bool)
        for x, y in relations:
            if x not in index or y not in index:
                raise PosetError(f"relation ({x!r}, {y!r}) names an unknown element")
            L[index[x], index[y]] = True
        for k in range(n):
            L |= L[:, k : k + 1] & L[k : k + 1, :]
        return cls(elements, L)

    @classmethod
    def from_order(cls, elements: Sequence[Hashable], le):
        elements = tuple(elements)
        L = [[bool(le(x, y)) for y in elements] for x in elements]
        return cls(elements, L)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"{type(self).__name__}({list(self.elements)!r})"

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index[x], self.index[y]])

    def lt(self, x, y) -> bool:
        return x != y and self.le(x, y)

    def below(self, x, strict: bool = True) -> list:
        j = self.index[x]
        return [e for i, e in enumerate(self.elements) if self.leq[i, j] and (not strict or i != j)]

    def above(self, x, strict: bool = True) -> list:
        i = self.index[x]
        return [e for j, e in enumerate(self.elements) if self.leq[i, j] and (not strict or i != j)]

    def minimal_elements(self) -> list:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        return [x for j, x in enumerate(self.elements) if not strict[:, j].any()]

    def maximal_elements(self) -> list:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        return [x for i, x in enumerate(self.elements) if not strict[i, :].any()]

    def induced(self, subset: Iterable[Hashable]) -> "Poset":
        keep = set(subset)
        for x in keep:
            if x not in self.index:
                raise PosetError(f"unknown element {x!r}")
        idx = [i for i, x in enumerate(self.elements) if x in keep]
        return self._restrict(idx)

    def _restrict(self, idx: list[int]) -> "Poset":
        return Poset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)], check=False)

    def cover_pairs(self) -> list[tuple]:
        """Covering relations ``(x, y)`` with x < y and nothing in between."""
        n = len(self)
        strict = self.leq & ~np.eye(n, dtype=bool)
        S = strict.astype(np.int64)
        covers = strict & ~((S @ S) > 0)
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(covers))]

    def linear_extension(self) -> list:
        """Lexicographic topological sort: always take the earliest available element."""
        n = len(self)
        strict = self.leq & ~np.eye(n, dtype=bool)
        indeg = strict.sum(axis=0).tolist()
        done = [False] * n
        order = []
        for _ in range(n):
            i = next(k for k in range(n) if not done[k] and indeg[k] == 0)
            done[i] = True
            order.append(self.elements[i])
            for j in np.nonzero(strict[i])[0]:
                indeg[j] -= 1
        return order

    def ranks(self) -> dict:
        """Length of the longest chain ending at each element (minimal elements get 0)."""
        rank = {}
        for x in self.linear_extension():
            rank[x] = max((rank[y] + 1 for y in self.below(x)), default=0)
        return rank

    def with_bottom(self, bottom: Hashable = "0") -> "Poset":
        if bottom in self.index:
            raise PosetError(f"{bottom!r} already in poset")
        n = len(self)
        L = np.zeros((n + 1, n + 1), dtype=bool)
        L[0, :] = True
        L[1:, 1:] = self.leq
        return Poset((bottom,) + self.elements, L, check=False)

    def relabel(self, mapping: Mapping) -> "Poset":
        return Poset([mapping[x] for x in self.elements], self.leq, check=False)


class GradedPoset(Poset):
    """A poset with an order-preserving grading into Z^m."""

    def __init__(self, elements, leq, grade: Mapping[Hashable, Multidegree], num_vars: int,
                 variables: Sequence[str] | None = None, *, check: bool = True):
        super().__init__(elements, leq, check=check)
        self.num_vars = num_vars
        self.variables = tuple(variables) if variables else tuple(f"x{i + 1}" for i in range(num_vars))
        self.grade = {x: tuple(grade[x]) for x in self.elements}
        if check:
            for x, g in self.grade.items():
                if len(g) != num_vars:
                    raise PosetError(f"grade of {x!r} has wrong length")
            n = len(self)
            for i in range(n):
                for j in range(n):
                    if self.leq[i, j] and not divides(self.grade[self.elements[i]], self.grade[self.elements[j]]):
                        raise PosetError("grading is not order-preserving")

    @classmethod
    def from_degrees(cls, degrees: Iterable[Multidegree], variables: Sequence[str] | None = None) -> "GradedPoset":
        """Subposet of Z^m with the grading given by inclusion."""
        degs = sorted({tuple(d) for d in degrees}, key=lambda d: (sum(d), tuple(-e for e in d)))
        if not degs:
            m = len(variables) if variables else 0
            return cls([], np.zeros((0, 0), dtype=bool), {}, m, variables, check=False)
        m = len(degs[0])
        L = [[divides(a, b) for b in degs] for a in degs]
        return cls(degs, L, {d: d for d in degs}, m, variables, check=False)

    @classmethod
    def from_poset(cls, poset: Poset, grade: Mapping, num_vars: int, variables=None) -> "GradedPoset":
        return cls(poset.elements, poset.leq, grade, num_vars, variables)

    def _restrict(self, idx):
        elements = [self.elements[i] for i in idx]
        return GradedPoset(elements, self.leq[np.ix_(idx, idx)], {x: self.grade[x] for x in elements},
                           self.num_vars, self.variables, check=False)

    def is_embedded(self) -> bool:
        """True iff the grading is injective and reflects the order."""
        grades = [self.grade[x] for x in self.elements]
        if len(set(grades)) != len(grades):
            return False
        return all(
            bool(self.leq[i, j]) == divides(grades[i], grades[j])
            for i in range(len(grades)) for j in range(len(grades))
        )

    def label(self, x) -> str:
        return format_monomial(self.grade[x], self.variables)

    def with_bottom(self, bottom="0"):
        return Poset.with_bottom(self, bottom)


@dataclass(frozen=True)
class SimplicialComplex:
    """Ordered faces of a simplicial complex.

    ``faces[n]`` holds the n-faces as increasing tuples of positions into
    ``vertices``; the last position of a face is its apex.
    """

    vertices: tuple
    faces: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_facets(cls, vertices: Sequence, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        from itertools import combinations

        by_dim: dict[int, set] = {}
        for facet in facets:
            f = tuple(sorted(set(facet)))
            for k in range(1, len(f) + 1):
                by_dim.setdefault(k - 1, set()).update(combinations(f, k))
        top = max(by_dim, default=-1)
        return cls(tuple(vertices), tuple(tuple(sorted(by_dim.get(n, ()))) for n in range(top + 1)))

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def num_faces(self, n: int) -> int:
        return len(self.faces[n]) if 0 <= n < len(self.faces) else 0

    def vertex_labels(self, face: tuple[int, ...]) -> tuple:
        return tuple(self.vertices[i] for i in face)

    def maximal_faces(self) -> list[tuple[int, ...]]:
        covered = set()
        for n in range(1, len(self.faces)):
            for f in self.faces[n]:
                covered.update(f[:i] + f[i + 1:] for i in range(len(f)))
        return [f for fs in self.faces for f in fs if f not in covered]

    def is_cone(self) -> bool:
        """Some vertex lies in every maximal face."""
        facets = self.maximal_faces()
        if not facets:
            return False
        return bool(set.intersection(*(set(f) for f in facets)))


def order_complex(P: Poset) -> SimplicialComplex:
    """All strictly increasing chains of P, vertices in a fixed linear extension."""
    order = P.linear_extension()
    perm = [P.index[x] for x in order]
    strict = P.leq[np.ix_(perm, perm)] & ~np.eye(len(order), dtype=bool)
    ups = [np.nonzero(strict[k])[0].tolist() for k in range(len(order))]
    faces: list[list[tuple[int, ...]]] = []

    def extend(chain):
        n = len(chain) - 1
        if len(faces) <= n:
            faces.append([])
        faces[n].append(tuple(chain))
        for nxt in ups[chain[-1]]:
            chain.append(nxt)
            extend(chain)
            chain.pop()

    for k in range(len(order)):
        extend([k])
    return SimplicialComplex(tuple(order), tuple(tuple(sorted(fs)) for fs in faces))


def open_filter(P: Poset, a) -> Poset:
    """Induced subposet on ``{x | x < a}``."""
    if a not in P:
        raise PosetError(f"unknown element {a!r}")
    return P.induced(P.below(a, strict=True))


def closed_filter(P: Poset, a) -> Poset:
    if a not in P:
        raise PosetError(f"unknown element {a!r}")
    return P.induced(P.below(a, strict=False))


def lcm_lattice(ideal: MonomialIdeal) -> GradedPoset:
    """L(I) without its bottom, as a graded subposet of Z^m."""
    return GradedPoset.from_degrees(join_closure(ideal.generators), ideal.variables)


# --- atomic posets -------------------------------------------------------

def atoms_below(P: Poset, x) -> set:
    """A_x: the minimal elements of P below x."""
    mins = P.minimal_elements()
    return {a for a in mins if P.le(a, x)}


def _least_upper_bound_failures(P: Poset) -> list:
    mins = P.minimal_elements()
    bad = []
    for x in P.elements:
        ax = [a for a in mins if P.le(a, x)]
        uppers = [y for y in P.elements if all(P.le(a, y) for a in ax)]
        if not all(P.le(x, y) for y in uppers):
            bad.append(x)
    return bad


def is_atomic(P: Poset) -> bool:
    """Every element is the unique least upper bound of the atoms below it."""
    return not _least_upper_bound_failures(P)


@dataclass(frozen=True)
class BooleanEmbedding:
    atoms: tuple
    sets: dict

    def __call__(self, x) -> frozenset:
        return self.sets[x]


def boolean_embedding(P: Poset) -> BooleanEmbedding:
    atoms = tuple(P.minimal_elements())
    return BooleanEmbedding(atoms, {x: frozenset(a for a in atoms if P.le(a, x)) for x in P.elements})


def _set_key(atoms: Sequence):
    pos = {a: i for i, a in enumerate(atoms)}
    return lambda s: (len(s), sorted(pos[a] for a in s))


def meet_closure(P: Poset) -> tuple[Poset, BooleanEmbedding]:
    """M(P): sigma(P) closed under intersection, with bottom {} and top A.

    Elements of the returned poset are frozensets of atoms ordered by
    inclusion.
    """
    bad = _least_upper_bound_failures(P)
    if bad:
        raise NotAtomicError(f"poset is not atomic; no least upper bound of atoms below {bad[0]!r}")
    sigma = boolean_embedding(P)
    top = frozenset(sigma.atoms)
    sets = set(sigma.sets.values()) | {frozenset(), top}
    frontier = set(sets)
    while frontier:
        new = {a & b for a in frontier for b in sets} - sets
        sets |= new
        frontier = new
    ordered = sorted(sets, key=_set_key(sigma.atoms))
    return Poset.from_order(ordered, lambda s, t: s <= t), sigma


def is_lattice(P: Poset) -> bool:
    """Every pair of elements has a least upper bound (and P is nonempty with a bottom)."""
    n = len(P)
    if n == 0:
        return False
    L = P.leq
    if len(P.minimal_elements()) != 1:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            ub = np.nonzero(L[i] & L[j])[0]
            if len(ub) == 0:
                return False
            least = [u for u in ub if L[u, ub].all()]
            if not least:
                return False
    return True


# --- isomorphism ---------------------------------------------------------

def _invariants(P: Poset) -> dict:
    rank = P.ranks()
    covers = P.cover_pairs()
    up_cov = {x: 0 for x in P.elements}
    down_cov = {x: 0 for x in P.elements}
    for x, y in covers:
        up_cov[x] += 1
        down_cov[y] += 1
    mins = set(P.minimal_elements())
    inv = {}
    for x in P.elements:
        below = P.below(x, strict=False)
        inv[x] = (rank[x], len(below), len(P.above(x, strict=False)), up_cov[x], down_cov[x],
                  sum(1 for a in below if a in mins))
    return inv


def is_isomorphism(P: Poset, Q: Poset, mapping: Mapping) -> bool:
    if len(P) != len(Q) or set(mapping) != set(P.elements):
        return False
    if set(mapping.values()) != set(Q.elements):
        return False
    return all(P.le(x, y) == Q.le(mapping[x], mapping[y]) for x in P.elements for y in P.elements)


def find_isomorphism(P: Poset, Q: Poset) -> dict | None:
    """An order isomorphism P -> Q, or None.  Backtracking with invariant pruning."""
    if len(P) != len(Q):
        return None
    if len(P) == 0:
        return {}
    inv_p, inv_q = _invariants(P), _invariants(Q)
    if sorted(inv_p.values()) != sorted(inv_q.values()):
        return None
    if len(P.cover_pairs()) != len(Q.cover_pairs()):
        return None
    candidates = {x: [y for y in Q.elements if inv_q[y] == inv_p[x]] for x in P.elements}
    # most constrained first, ties broken by a linear extension for locality
    lin = {x: k for k, x in enumerate(P.linear_extension())}
    order = sorted(P.elements, key=lambda x: (len(candidates[x]), lin[x]))
    mapping: dict = {}
    used: set = set()

    def consistent(x, y):
        for u, v in mapping.items():
            if P.le(x, u) != Q.le(y, v) or P.le(u, x) != Q.le(v, y):
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        x = order[k]
        for y in candidates[x]:
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if search(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if search(0):
        return {x: mapping[x] for x in P.elements}
    return None


# --- DOT -----------------------------------------------------------------

def _dot_quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(P: Poset, highlight: Iterable | None = None, labels: Mapping | None = None,
              name: str = "hasse") -> str:
    """DOT digraph of the covering relations, drawn bottom-to-top.

    Highlighted elements get dashed rounded boxes.
    """
    highlight = set(highlight or ())
    if labels is None:
        labels = {x: P.label(x) for x in P.elements} if isinstance(P, GradedPoset) else {x: str(x) for x in P.elements}
    ids = {x: f"n{k}" for k, x in enumerate(P.elements)}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in P.elements:
        attrs = f"label={_dot_quote(labels[x])}"
        if x in highlight:
            attrs += ', shape=box, style="rounded,dashed"'
        lines.append(f"  {ids[x]} [{attrs}];")
    for x, y in P.cover_pairs():
        lines.append(f"  {ids[x]} -> {ids[y]} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
