"""Multigraded free chain complexes over a polynomial ring.

Differential entries are stored as scalars only.  The monomial part of
an entry from basis element ``j`` (degree n) to ``i`` (degree n-1) is
always ``x^(deg j - deg i)``, so homogeneity holds by construction and
tensoring with R/m or cutting out a strand is just index selection.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Mapping, Sequence

from .homology import QQ, ChainComplexK, Field, FieldMatrix, homology_dims
from .monomial import (
    MonomialIdeal,
    Multidegree,
    default_variables,
    divides,
    in_degree_support,
    join_all,
    join_closure,
)
from .poset import GradedPoset, Poset, order_complex

Entries = dict[tuple[int, int], object]


class HomogeneityError(ValueError):
    pass


@dataclass(frozen=True)
class FreeComplex:
    """A free multigraded complex ``F_0 <- F_1 <- ...``.

    ``degrees[n]`` lists the basis multidegrees of F_n and
    ``differentials[n - 1]`` holds the scalar entries of d_n as
    ``{(i, j): c}``, i indexing F_{n-1} and j indexing F_n.  ``field`` is
    None when the scalars are integers valid over every field.
    F_0 maps onto ``ideal`` by sending b to x^deg(b).
    """

    num_vars: int
    degrees: tuple[tuple[Multidegree, ...], ...]
    differentials: tuple[Entries, ...]
    ideal: MonomialIdeal | None = None
    field: Field | None = None

    def __post_init__(self):
        degrees = tuple(tuple(tuple(d) for d in ds) for ds in self.degrees)
        diffs = tuple(dict(e) for e in self.differentials)
        if len(diffs) != max(len(degrees) - 1, 0):
            raise ValueError(f"{len(degrees)} modules need {max(len(degrees) - 1, 0)} differentials")
        for ds in degrees:
            for d in ds:
                if len(d) != self.num_vars:
                    raise ValueError(f"basis degree {d} does not have {self.num_vars} entries")
        for n, entries in enumerate(diffs, start=1):
            src, tgt = degrees[n], degrees[n - 1]
            for (i, j), c in list(entries.items()):
                if not (0 <= i < len(tgt) and 0 <= j < len(src)):
                    raise IndexError(f"d_{n} entry ({i}, {j}) out of range")
                if c == 0:
                    del entries[(i, j)]
                    continue
                if not divides(tgt[i], src[j]):
                    raise HomogeneityError(f"d_{n} entry ({i}, {j}): {tgt[i]} does not divide {src[j]}")
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "differentials", diffs)

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(ds) for ds in self.degrees)

    def differential(self, n: int) -> Entries:
        if 1 <= n < len(self.degrees):
            return self.differentials[n - 1]
        return {}

    def basis_degree_multiset(self) -> list[tuple[int, Multidegree]]:
        return sorted((n, d) for n, ds in enumerate(self.degrees) for d in ds)

    def target_ideal(self) -> MonomialIdeal:
        """The ideal F_0 maps onto."""
        if self.ideal is not None:
            return self.ideal
        return MonomialIdeal.from_generators(self.degrees[0], num_vars=self.num_vars)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * len(ds) for n, ds in enumerate(self.degrees))


def _scalar_field(F: FreeComplex, field: Field) -> Field:
    if F.field is not None and F.field != field:
        raise ValueError(f"complex has scalars in {F.field}, not {field}")
    return field


def _trim(degrees: list[list], diffs: list[dict]) -> tuple[list, list]:
    while len(degrees) > 1 and not degrees[-1]:
        degrees.pop()
        diffs.pop()
    return degrees, diffs


# --- constructors --------------------------------------------------------

def taylor_complex(ideal: MonomialIdeal) -> FreeComplex:
    """Taylor resolution: basis in degree k is the (k+1)-subsets of generators."""
    gens = ideal.generators
    r = len(gens)
    faces = [list(combinations(range(r), k + 1)) for k in range(r)]
    degrees = [[join_all(gens[g] for g in f) for f in fs] for fs in faces]
    diffs = []
    for k in range(1, r):
        lower = {f: i for i, f in enumerate(faces[k - 1])}
        entries = {}
        for j, f in enumerate(faces[k]):
            for pos in range(len(f)):
                entries[(lower[f[:pos] + f[pos + 1:]], j)] = -1 if pos % 2 else 1
        diffs.append(entries)
    return FreeComplex(ideal.num_vars, tuple(map(tuple, degrees)), tuple(diffs), ideal)


@dataclass(frozen=True)
class LabeledComplex:
    """A based complex over a field whose basis elements carry labels in ``poset``.

    ``differentials[n - 1]`` holds the entries of d_n as ``{(i, j): c}``.
    An entry from basis element b to c may be nonzero only when
    label(c) <= label(b).
    """

    poset: Poset
    labels: tuple[tuple[Hashable, ...], ...]
    differentials: tuple[Entries, ...]
    field: Field | None = None

    def __post_init__(self):
        labels = tuple(tuple(ls) for ls in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(self.differentials) != max(len(labels) - 1, 0):
            raise ValueError("wrong number of differentials")
        for ls in labels:
            for x in ls:
                if x not in self.poset:
                    raise ValueError(f"label {x!r} is not in the poset")
        for n, entries in enumerate(self.differentials, start=1):
            for (i, j), c in entries.items():
                if c and not self.poset.le(labels[n - 1][i], labels[n][j]):
                    raise HomogeneityError(
                        f"d_{n} entry ({i}, {j}) goes from label {labels[n][j]!r} to non-smaller {labels[n - 1][i]!r}"
                    )

    def based_rank(self, n: int, label) -> int:
        if not 0 <= n < len(self.labels):
            return 0
        return sum(1 for x in self.labels[n] if x == label)


def homogenize_frame(C: LabeledComplex, grade: Mapping[Hashable, Multidegree] | GradedPoset,
                     ideal: MonomialIdeal | None = None, num_vars: int | None = None) -> FreeComplex:
    """Shift every basis element to the degree of its label; scalars unchanged."""
    if isinstance(grade, GradedPoset):
        num_vars = grade.num_vars
        grade = grade.grade
    grade = {x: tuple(g) for x, g in grade.items()}
    P = C.poset
    for x in P.elements:
        if x not in grade:
            raise ValueError(f"no grade for {x!r}")
    for x in P.elements:
        for y in P.above(x):
            if not divides(grade[x], grade[y]):
                raise HomogeneityError(f"grading not order-preserving at {x!r} <= {y!r}")
    if num_vars is None:
        num_vars = len(next(iter(grade.values()))) if grade else (ideal.num_vars if ideal else 0)
    degrees = tuple(tuple(grade[x] for x in ls) for ls in C.labels)
    return FreeComplex(num_vars, degrees, tuple(dict(e) for e in C.differentials), ideal, C.field)


def simplex_frame(ideal: MonomialIdeal) -> LabeledComplex:
    """Simplicial chains of the full simplex on the generators, labeled by lcm."""
    from .poset import lcm_lattice

    L = lcm_lattice(ideal)
    gens = ideal.generators
    r = len(gens)
    faces = [list(combinations(range(r), k + 1)) for k in range(r)]
    labels = [[join_all(gens[g] for g in f) for f in fs] for fs in faces]
    diffs = []
    for k in range(1, r):
        lower = {f: i for i, f in enumerate(faces[k - 1])}
        diffs.append({(lower[f[:p] + f[p + 1:]], j): (-1) ** p for j, f in enumerate(faces[k]) for p in range(len(f))})
    return LabeledComplex(L, tuple(map(tuple, labels)), tuple(diffs))


def order_complex_frame(P: Poset) -> LabeledComplex:
    """Chains of the order complex of P, each labeled by its apex (maximum)."""
    K = order_complex(P)
    labels = [tuple(K.vertices[f[-1]] for f in fs) for fs in K.faces]
    diffs = []
    for n in range(1, len(K.faces)):
        lower = {f: i for i, f in enumerate(K.faces[n - 1])}
        diffs.append({(lower[f[:p] + f[p + 1:]], j): (-1) ** p
                      for j, f in enumerate(K.faces[n]) for p in range(len(f))})
    return LabeledComplex(P, tuple(labels), tuple(diffs))


def order_complex_resolution(P: GradedPoset, ideal: MonomialIdeal) -> FreeComplex:
    """Homogenized order complex of P; resolves I when B(I) <= P <= deg(I)."""
    if not isinstance(P, GradedPoset):
        raise TypeError("order_complex_resolution needs a GradedPoset")
    if P.num_vars != ideal.num_vars:
        raise ValueError(f"poset is graded in Z^{P.num_vars}, ideal lives in {ideal.num_vars} variables")
    for x in P.elements:
        if not in_degree_support(ideal, P.grade[x]):
            raise ValueError(f"{P.label(x)} is not a degree of the ideal")
    return homogenize_frame(order_complex_frame(P), P, ideal)


# --- strands and verification --------------------------------------------

@dataclass(frozen=True)
class Strand:
    """The degree-``alpha`` strand; ``basis[n]`` indexes F_n elements with degree <= alpha.

    When ``augmented`` the complex has a 1-dimensional degree -1 term (I_alpha).
    """

    alpha: Multidegree
    basis: tuple[tuple[int, ...], ...]
    complex: ChainComplexK
    augmented: bool

    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)


def strand(F: FreeComplex, alpha: Multidegree, field: Field = QQ, augment: bool = True) -> Strand:
    field = _scalar_field(F, field)
    alpha = tuple(alpha)
    if len(alpha) != F.num_vars:
        raise ValueError("degree has the wrong number of variables")
    basis = tuple(tuple(j for j, d in enumerate(ds) if divides(d, alpha)) for ds in F.degrees)
    dims = {n: len(b) for n, b in enumerate(basis)}
    diffs = {}
    for n in range(1, len(basis)):
        rows = {i: k for k, i in enumerate(basis[n - 1])}
        cols = {j: k for k, j in enumerate(basis[n])}
        entries = {(rows[i], cols[j]): c for (i, j), c in F.differentials[n - 1].items() if i in rows and j in cols}
        diffs[n] = FieldMatrix(dims[n - 1], dims[n], entries, field)
    augmented = augment and in_degree_support(F.target_ideal(), alpha)
    if augmented:
        dims[-1] = 1
        diffs[0] = FieldMatrix(1, dims[0], {(0, k): 1 for k in range(dims[0])}, field)
    return Strand(alpha, basis, ChainComplexK(field, dims, diffs), augmented)


@dataclass(frozen=True)
class Report:
    """Outcome of a verification; truthy iff ``ok``."""

    ok: bool
    message: str = ""
    alpha: Multidegree | None = None
    degree: int | None = None
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok, "message": self.message}
        if self.alpha is not None:
            out["alpha"] = list(self.alpha)
        if self.degree is not None:
            out["degree"] = self.degree
        out.update(self.details)
        return out


def scalar_matrix(F: FreeComplex, n: int, field: Field) -> FieldMatrix:
    return FieldMatrix(len(F.degrees[n - 1]), len(F.degrees[n]), F.differential(n), field)


def squares_to_zero(F: FreeComplex, field: Field = QQ) -> int | None:
    """First n with d_n d_{n+1} != 0, or None.

    All monomial factors in an entry of d_n d_{n+1} coincide, so the
    scalar product decides.
    """
    for n in range(1, F.length):
        if not (scalar_matrix(F, n, field) @ scalar_matrix(F, n + 1, field)).is_zero():
            return n
    return None


def check_degrees(F: FreeComplex) -> set[Multidegree]:
    """Degrees at which strand exactness must be checked.

    A strand at alpha depends only on which basis degrees and generators
    lie below alpha, so it equals the strand at the join of those; every
    such join lies in the join-closure of basis degrees and generators.
    """
    pool = {d for ds in F.degrees for d in ds} | set(F.target_ideal().generators)
    return join_closure(pool) if pool else set()


def is_resolution_of(F: FreeComplex, ideal: MonomialIdeal, field: Field = QQ) -> Report:
    """Check d^2 = 0 and exactness of every augmented strand onto I_alpha."""
    field = _scalar_field(F, field)
    if F.num_vars != ideal.num_vars:
        return Report(False, "complex and ideal live in different numbers of variables")
    bad = squares_to_zero(F, field)
    if bad is not None:
        return Report(False, f"d_{bad} d_{bad + 1} is not zero", degree=bad)
    if F.length >= 1:
        eps = FieldMatrix(1, len(F.degrees[0]), {(0, k): 1 for k in range(len(F.degrees[0]))}, field)
        if not (eps @ scalar_matrix(F, 1, field)).is_zero():
            return Report(False, "the augmentation does not vanish on the image of d_1", degree=0)
    for d in F.degrees[0]:
        if not in_degree_support(ideal, d):
            return Report(False, f"F_0 basis degree {d} does not lie in the ideal", alpha=d, degree=0)
    F = FreeComplex(F.num_vars, F.degrees, F.differentials, ideal, F.field)
    for alpha in sorted(check_degrees(F), key=lambda a: (sum(a), a)):
        S = strand(F, alpha, field)
        H = homology_dims(S.complex, check=False)
        for n in sorted(H):
            if H[n]:
                what = "augmentation is not onto I_alpha" if n == -1 else f"H_{n} of the strand is nonzero"
                return Report(False, what, alpha=alpha, degree=n)
    return Report(True, "exact in every strand")


def is_minimal(F: FreeComplex) -> bool:
    """No nonzero scalar entry joins two basis elements of the same degree."""
    for n, entries in enumerate(F.differentials, start=1):
        for (i, j), c in entries.items():
            if c and F.degrees[n - 1][i] == F.degrees[n][j]:
                return False
    return True


# --- minimalization --------------------------------------------------------

def minimalize(F: FreeComplex, field: Field = QQ) -> FreeComplex:
    """Cancel unit entries until none remain.

    A unit entry u at (i, j) of d_n (equal degrees) is removed together
    with basis element j of F_n and i of F_{n-1}; the rest of d_n becomes
    d - c u^{-1} r, where c is column j and r is row i.  Lower homological
    degrees are cleared first, each scanned column by column.
    """
    field = _scalar_field(F, field)
    K = field
    degrees = [list(ds) for ds in F.degrees]
    alive = [list(range(len(ds))) for ds in degrees]
    # cols[n][j] = {i: c} and rows[n][i] = {j: c} for d_n
    cols: list[dict] = [dict()]
    rows: list[dict] = [dict()]
    for n in range(1, len(degrees)):
        cn, rn = {}, {}
        for (i, j), c in F.differentials[n - 1].items():
            c = K(c)
            if c:
                cn.setdefault(j, {})[i] = c
                rn.setdefault(i, {})[j] = c
        cols.append(cn)
        rows.append(rn)

    def find_unit(n):
        tgt = degrees[n - 1]
        src = degrees[n]
        for j in alive[n]:
            col = cols[n].get(j)
            if not col:
                continue
            for i in sorted(col):
                if tgt[i] == src[j]:
                    return i, j
        return None

    def drop_row(n, i):
        for j in rows[n].pop(i, {}):
            col = cols[n][j]
            del col[i]
            if not col:
                del cols[n][j]

    def drop_col(n, j):
        for i in cols[n].pop(j, {}):
            row = rows[n][i]
            del row[j]
            if not row:
                del rows[n][i]

    for n in range(1, len(degrees)):
        while True:
            hit = find_unit(n)
            if hit is None:
                break
            i, j = hit
            u_inv = K.inv(cols[n][j][i])
            col = {r: c for r, c in cols[n][j].items() if r != i}
            row = {k: c for k, c in rows[n][i].items() if k != j}
            drop_col(n, j)
            drop_row(n, i)
            for r, cr in col.items():
                f = K.mul(cr, u_inv)
                for k, rk in row.items():
                    old = rows[n].get(r, {}).get(k, 0)
                    new = K.sub(old, K.mul(f, rk))
                    if new:
                        rows[n].setdefault(r, {})[k] = new
                        cols[n].setdefault(k, {})[r] = new
                    elif old:
                        del rows[n][r][k]
                        if not rows[n][r]:
                            del rows[n][r]
                        del cols[n][k][r]
                        if not cols[n][k]:
                            del cols[n][k]
            if n + 1 < len(degrees):
                drop_row(n + 1, j)
            if n - 1 >= 1:
                drop_col(n - 1, i)
            alive[n].remove(j)
            alive[n - 1].remove(i)

    new_index = [{old: k for k, old in enumerate(a)} for a in alive]
    new_degrees = [[degrees[n][j] for j in alive[n]] for n in range(len(degrees))]
    new_diffs = []
    for n in range(1, len(degrees)):
        entries = {}
        for j, col in cols[n].items():
            for i, c in col.items():
                entries[(new_index[n - 1][i], new_index[n][j])] = K.normalize(c)
        new_diffs.append(entries)
    new_degrees, new_diffs = _trim(new_degrees, new_diffs)
    return FreeComplex(F.num_vars, tuple(map(tuple, new_degrees)), tuple(new_diffs), F.ideal, field)


# --- Tor ------------------------------------------------------------------

class BettiTable(dict):
    """``{(d, alpha): beta}`` with only nonzero entries."""

    def totals(self) -> tuple[int, ...]:
        if not self:
            return ()
        top = max(d for d, _ in self)
        return tuple(sum(b for (d, _), b in self.items() if d == k) for k in range(top + 1))

    def support(self) -> set[Multidegree]:
        return {a for _, a in self}

    def at(self, d: int, alpha: Multidegree) -> int:
        return self.get((d, tuple(alpha)), 0)

    def to_json(self) -> list[dict]:
        return [{"d": d, "degree": list(a), "beta": b} for (d, a), b in sorted(self.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))]

    @classmethod
    def from_json(cls, data: list[dict]) -> "BettiTable":
        return cls({(int(e["d"]), tuple(e["degree"])): int(e["beta"]) for e in data if e["beta"]})


def basis_counts(F: FreeComplex) -> BettiTable:
    table = BettiTable()
    for n, ds in enumerate(F.degrees):
        for d in ds:
            table[(n, d)] = table.get((n, d), 0) + 1
    return table


def tor_betti(F: FreeComplex, field: Field = QQ) -> BettiTable:
    """dim Tor_d(I, k)_alpha, computed as the homology of F tensor R/m in degree alpha."""
    field = _scalar_field(F, field)
    table = BettiTable()
    for alpha in sorted({d for ds in F.degrees for d in ds}):
        basis = [[j for j, d in enumerate(ds) if d == alpha] for ds in F.degrees]
        dims = {n: len(b) for n, b in enumerate(basis)}
        diffs = {}
        for n in range(1, len(basis)):
            r = {i: k for k, i in enumerate(basis[n - 1])}
            c = {j: k for k, j in enumerate(basis[n])}
            diffs[n] = FieldMatrix(dims[n - 1], dims[n], {(r[i], c[j]): v for (i, j), v in F.differentials[n - 1].items()
                                                          if i in r and j in c}, field)
        H = homology_dims(ChainComplexK(field, dims, diffs), check=False)
        for d, h in H.items():
            if h:
                table[(d, alpha)] = h
    return table


# --- relabeling ------------------------------------------------------------

def _check_order_iso(iso: Mapping[Multidegree, Multidegree]) -> None:
    items = list(iso.items())
    if len(set(iso.values())) != len(items):
        raise ValueError("relabeling map is not injective")
    for a, fa in items:
        for b, fb in items:
            if divides(a, b) != divides(fa, fb):
                raise ValueError(f"relabeling map is not an order isomorphism at {a} <= {b}")


def relabel(F: FreeComplex, iso: Mapping[Multidegree, Multidegree], variables: Sequence[str] | None = None) -> FreeComplex:
    """Replace each basis degree by its image; scalars are kept verbatim."""
    iso = {tuple(a): tuple(b) for a, b in iso.items()}
    if not iso:
        raise ValueError("empty relabeling map")
    for n, ds in enumerate(F.degrees):
        for d in ds:
            if d not in iso:
                raise ValueError(f"basis degree {d} in F_{n} is outside the map's domain")
    _check_order_iso(iso)
    t = len(next(iter(iso.values())))
    degrees = tuple(tuple(iso[d] for d in ds) for ds in F.degrees)
    ideal = MonomialIdeal.from_generators(degrees[0], variables or default_variables(t), num_vars=t)
    return FreeComplex(t, degrees, F.differentials, ideal, F.field)


# --- P-samples -------------------------------------------------------------

@dataclass(frozen=True)
class PSample:
    """The restriction of a free complex to a graded poset P.

    At each p the degree-n term is the strand (F_n)_{gr(p)}, spanned by
    the F_n basis elements with degree <= gr(p); for p <= q the structure
    map is multiplication by x^(gr(q) - gr(p)), which sends spanning
    elements to spanning elements, i.e. an inclusion of index sets.
    """

    poset: GradedPoset
    complex: FreeComplex
    spans: dict  # p -> tuple of per-degree frozensets of basis indices

    def dims(self, p) -> tuple[int, ...]:
        return tuple(len(s) for s in self.spans[p])


def sample(F: FreeComplex, P: GradedPoset) -> PSample:
    spans = {
        p: tuple(frozenset(j for j, d in enumerate(ds) if divides(d, P.grade[p])) for ds in F.degrees)
        for p in P.elements
    }
    return PSample(P, F, spans)


def free_generators(S: PSample) -> list[list[tuple[Hashable, int]]]:
    """Free generators of a sampled complex, per homological degree.

    At each p the generators are the part of the term at p not hit by
    the structure maps from any q < p.  Raises if the sample is not free.
    """
    P = S.poset
    out: list[list] = [[] for _ in S.complex.degrees]
    for n in range(len(S.complex.degrees)):
        seen: dict[int, Hashable] = {}
        for p in P.linear_extension():
            image = set()
            for q in P.below(p):
                image |= S.spans[q][n]
            for j in sorted(S.spans[p][n] - image):
                if j in seen:
                    raise ValueError(f"basis element {j} of F_{n} is born at both {seen[j]!r} and {p!r}; sample is not free")
                seen[j] = p
                out[n].append((p, j))
        if len(seen) != len(S.complex.degrees[n]):
            raise ValueError(f"some F_{n} basis elements are not born at any element of P")
    return out


def homogenize_sample(S: PSample) -> FreeComplex:
    """Homogenize the free kP-complex recovered from a sample."""
    gens = free_generators(S)
    for g in gens:
        g.sort(key=lambda pj: pj[1])
    labels = tuple(tuple(p for p, _ in g) for g in gens)
    C = LabeledComplex(S.poset, labels, S.complex.differentials, S.complex.field)
    return homogenize_frame(C, S.poset, S.complex.ideal)


def scalar_to_json(c) -> int | str:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return int(c)


def scalar_from_json(v):
    if isinstance(v, str):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"bad scalar {v!r}")
    return v
