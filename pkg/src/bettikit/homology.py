"""Exact linear algebra over Q and GF(p), and homology of chain complexes.

Scalars over Q are ``Fraction`` (or plain ``int``); over GF(p) they are
ints reduced into ``range(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .poset import SimplicialComplex

GF_P_LIMIT = 2**15


class FieldError(ValueError):
    pass


class NotAComplexError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``characteristic == 0``, otherwise GF(characteristic)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p >= GF_P_LIMIT:
            raise FieldError(f"GF(p) requires p < {GF_P_LIMIT}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def spec(self) -> str:
        return "q" if self.characteristic == 0 else f"gf:{self.characteristic}"

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return a * b % self.characteristic if self.characteristic else a * b

    def neg(self, a):
        return -a % self.characteristic if self.characteristic else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def normalize(self, x):
        if self.characteristic == 0 and isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """``q`` (rationals) or ``gf:p``."""
    t = text.strip().lower()
    if t in ("q", "qq", "rationals", "0"):
        return QQ
    for prefix in ("gf:", "gf(", "gf"):
        if t.startswith(prefix):
            digits = t[len(prefix):].rstrip(")")
            if digits.isdigit():
                return Field(int(digits))
    raise FieldError(f"unknown field {text!r}; use 'q' or 'gf:p'")


@dataclass(frozen=True)
class FieldMatrix:
    """Sparse matrix over a field, stored as ``{(row, col): scalar}`` with no zeros."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], object]
    field: Field = QQ

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = self.field(v)
            if v != 0:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zero(cls, rows, cols, field=QQ):
        return cls(rows, cols, {}, field)

    @classmethod
    def from_dense(cls, rows: list[list], field=QQ):
        r = len(rows)
        c = len(rows[0]) if rows else 0
        return cls(r, c, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}, field)

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        other_rows = other.row_dicts()
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in other_rows[k].items():
                out[(i, j)] = F.add(out.get((i, j), 0), F.mul(a, b))
        return FieldMatrix(self.rows, other.cols, out, F)

    def is_zero(self) -> bool:
        return not self.entries

    def rank(self) -> int:
        return rank(self)


def rank(M: FieldMatrix) -> int:
    """Rank over ``M.field`` by exact elimination."""
    if not M.entries:
        return 0
    p = M.field.characteristic
    # eliminate along the shorter side
    if M.rows > M.cols:
        vectors: dict[int, dict] = {}
        for (i, j), v in M.entries.items():
            vectors.setdefault(j, {})[i] = v
    else:
        vectors = {}
        for (i, j), v in M.entries.items():
            vectors.setdefault(i, {})[j] = v
    rows = list(vectors.values())
    if p == 2:
        return _rank_gf2(rows)
    if p:
        return _rank_gfp(rows, p)
    return _rank_rational(rows)


def _rank_gf2(rows: Iterable[dict]) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        v = 0
        for j in row:
            v |= 1 << j
        while v:
            low = (v & -v).bit_length() - 1
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = v
                r += 1
                break
            v ^= piv
    return r


def _rank_gfp(rows: Iterable[dict], p: int) -> int:
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {j: v % p for j, v in row.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[c]
            for j, v in piv.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return len(pivots)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def _rank_rational(rows: Iterable[dict]) -> int:
    # fraction-free: clear denominators, then combine rows with integer
    # cross-multiplication and strip the content after each step
    pivots: dict[int, dict] = {}
    for row in rows:
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        row = {j: int(v * den) for j, v in row.items() if v}
        row = _primitive(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {}
            for j in row.keys() | piv.keys():
                w = a * row.get(j, 0) - b * piv.get(j, 0)
                if w:
                    new[j] = w
            row = _primitive(new) if new else new
    return len(pivots)


@dataclass(frozen=True)
class ChainComplexK:
    """A bounded chain complex of finite-dimensional vector spaces.

    ``dims[n]`` is the dimension in degree n; ``differentials[n]`` maps
    degree n to degree n - 1.  Missing degrees are zero.
    """

    field: Field
    dims: Mapping[int, int]
    differentials: Mapping[int, FieldMatrix] = dc_field(default_factory=dict)

    def __post_init__(self):
        for n, d in self.differentials.items():
            if d.shape != (self.dim(n - 1), self.dim(n)):
                raise ValueError(f"differential {n} has shape {d.shape}, expected {(self.dim(n - 1), self.dim(n))}")

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self) -> list[int]:
        return sorted(n for n, d in self.dims.items() if d)

    def differential(self, n: int) -> FieldMatrix:
        d = self.differentials.get(n)
        return d if d is not None else FieldMatrix.zero(self.dim(n - 1), self.dim(n), self.field)

    def is_complex(self) -> bool:
        return all(
            (self.differential(n) @ self.differential(n + 1)).is_zero()
            for n in self.differentials if n + 1 in self.differentials
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * d for n, d in self.dims.items())


def homology_dims(C: ChainComplexK, check: bool = True) -> dict[int, int]:
    """dim H_n for every degree carrying a nonzero term."""
    if check and not C.is_complex():
        raise NotAComplexError("consecutive differentials do not compose to zero")
    ranks = {n: rank(d) for n, d in C.differentials.items()}
    return {n: C.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in sorted(C.dims) if C.dims[n]}


def boundary_matrices(K: SimplicialComplex, field: Field = QQ, reduced: bool = True) -> ChainComplexK:
    """Simplicial chain complex; face ``(v0<...<vn)`` maps to sum of (-1)^i times the face without v_i."""
    dims = {n: len(fs) for n, fs in enumerate(K.faces)}
    diffs = {}
    one, minus = field(1), field(-1)
    for n in range(1, len(K.faces)):
        lower = {f: i for i, f in enumerate(K.faces[n - 1])}
        entries = {}
        for j, f in enumerate(K.faces[n]):
            for i in range(len(f)):
                entries[(lower[f[:i] + f[i + 1:]], j)] = one if i % 2 == 0 else minus
        diffs[n] = FieldMatrix(dims[n - 1], dims[n], entries, field)
    if reduced:
        dims[-1] = 1
        diffs[0] = FieldMatrix(1, dims.get(0, 0), {(0, j): one for j in range(dims.get(0, 0))}, field)
    return ChainComplexK(field, dims, diffs)


def reduced_homology_dims(K: SimplicialComplex, field: Field = QQ) -> dict[int, int]:
    """dim of reduced homology in degrees -1..dim K; the empty complex has H_{-1} = 1."""
    C = boundary_matrices(K, field, reduced=True)
    ranks = {n: rank(d) for n, d in C.differentials.items()}
    return {n: C.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in range(-1, K.dim + 1)}


def nonzero(dims: Mapping[int, int]) -> dict[int, int]:
    return {n: d for n, d in dims.items() if d}
