"""Multidegrees and monomial ideals.

A multidegree is a plain tuple of ints; the helpers here do the
componentwise arithmetic.  ``MonomialIdeal`` always holds a minimal
generating set in a canonical order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Multidegree = tuple[int, ...]

# exponents must fit a signed machine word
MAX_EXPONENT = 2**31 - 1


class IdealError(ValueError):
    """Malformed or degenerate monomial-ideal input."""


def _check_lengths(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"multidegree length mismatch: {len(a)} vs {len(b)}")


def join(a: Multidegree, b: Multidegree) -> Multidegree:
    """Componentwise maximum (the lcm degree)."""
    _check_lengths(a, b)
    return tuple(x if x >= y else y for x, y in zip(a, b))


def meet(a: Multidegree, b: Multidegree) -> Multidegree:
    _check_lengths(a, b)
    return tuple(x if x <= y else y for x, y in zip(a, b))


def join_all(degrees: Iterable[Multidegree]) -> Multidegree:
    it = iter(degrees)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("join of an empty family") from None
    for d in it:
        acc = join(acc, d)
    return acc


def divides(a: Multidegree, b: Multidegree) -> bool:
    """True iff ``a <= b`` componentwise, i.e. x^a divides x^b."""
    _check_lengths(a, b)
    return all(x <= y for x, y in zip(a, b))


def subtract(a: Multidegree, b: Multidegree) -> Multidegree:
    _check_lengths(a, b)
    return tuple(x - y for x, y in zip(a, b))


def minimalize(generators: Iterable[Sequence[int]]) -> list[Multidegree]:
    """Drop every degree divisible by another one; canonical order out."""
    gens = sorted({tuple(int(e) for e in g) for g in generators}, key=lambda g: (sum(g), g))
    kept: list[Multidegree] = []
    for g in gens:
        # anything dividing g has total degree <= sum(g), so it is already in kept
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return sorted(kept, reverse=True)


def join_closure(degrees: Iterable[Multidegree]) -> set[Multidegree]:
    """All joins of nonempty subsets of ``degrees``."""
    closure = set(degrees)
    frontier = set(closure)
    while frontier:
        new = set()
        for a in frontier:
            for b in closure:
                c = join(a, b)
                if c not in closure:
                    new.add(c)
        closure |= new
        frontier = new
    return closure


def default_variables(m: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(m))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generator degrees."""

    num_vars: int
    generators: tuple[Multidegree, ...]
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.num_vars < 1:
            raise IdealError("need at least one variable")
        if not self.variables:
            object.__setattr__(self, "variables", default_variables(self.num_vars))
        if len(self.variables) != self.num_vars:
            raise IdealError("variable names do not match num_vars")
        if len(set(self.variables)) != self.num_vars:
            raise IdealError("duplicate variable names")
        if not self.generators:
            raise IdealError("ideal has no generators")
        for g in self.generators:
            if len(g) != self.num_vars:
                raise IdealError(f"generator {g} has wrong length")
            if any(e < 0 or e > MAX_EXPONENT for e in g):
                raise IdealError(f"generator {g} has an exponent out of range")
            if not any(g):
                raise IdealError("the unit monomial cannot be a generator")
        canonical = tuple(minimalize(self.generators))
        if len(canonical) != len(self.generators):
            raise IdealError("generators are not pairwise incomparable")
        object.__setattr__(self, "generators", canonical)

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], variables: Sequence[str] | None = None,
                        num_vars: int | None = None) -> "MonomialIdeal":
        """Build an ideal from any generating set, minimalizing first."""
        gens = [tuple(int(e) for e in g) for g in generators]
        if num_vars is None:
            if variables:
                num_vars = len(variables)
            elif gens:
                num_vars = len(gens[0])
            else:
                raise IdealError("ideal has no generators")
        for g in gens:
            if len(g) != num_vars:
                raise IdealError(f"generator {list(g)} has length {len(g)}, expected {num_vars}")
            if any(e < 0 for e in g):
                raise IdealError(f"negative exponent in generator {list(g)}")
        nonzero = [g for g in gens if any(g)]
        if len(nonzero) != len(gens):
            raise IdealError("the unit monomial cannot be a generator")
        return cls(num_vars, tuple(minimalize(nonzero)), tuple(variables or ()))

    def contains(self, a: Multidegree) -> bool:
        return in_degree_support(self, a)

    def monomial(self, a: Multidegree) -> str:
        return format_monomial(a, self.variables)

    def __str__(self):
        return "(" + ", ".join(self.monomial(g) for g in self.generators) + ")"


def in_degree_support(ideal: MonomialIdeal, a: Multidegree) -> bool:
    """True iff ``a`` lies in deg(I): some generator divides x^a."""
    if len(a) != ideal.num_vars:
        raise ValueError(f"multidegree {a} does not match {ideal.num_vars} variables")
    return any(divides(g, a) for g in ideal.generators)


def format_monomial(a: Multidegree, variables: Sequence[str]) -> str:
    """Render x^a; juxtaposes single-letter names, otherwise joins with ``*``."""
    parts = []
    for e, name in zip(a, variables):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    if not parts:
        return "1"
    sep = "" if all(len(v) == 1 for v in variables) else "*"
    return sep.join(parts)


# --- parsing -------------------------------------------------------------

_AUTO_TOKEN = re.compile(r"([A-Za-z][0-9_]*)(?:\^(\d+))?")
_HEADER = re.compile(r"^\s*(?:variables|vars)\s*:\s*(.*)$", re.IGNORECASE)


def _tokenize(factor: str, variables: Sequence[str] | None) -> list[tuple[str, int]]:
    out = []
    pos = 0
    names = sorted(variables, key=len, reverse=True) if variables else None
    while pos < len(factor):
        if names is not None:
            for name in names:
                if factor.startswith(name, pos):
                    pos += len(name)
                    break
            else:
                raise IdealError(f"unknown variable at {factor[pos:]!r}")
            exp = 1
            m = re.match(r"\^(\d+)", factor[pos:])
            if m:
                exp = int(m.group(1))
                pos += m.end()
            out.append((name, exp))
        else:
            m = _AUTO_TOKEN.match(factor, pos)
            if not m:
                raise IdealError(f"cannot parse monomial factor {factor!r}")
            out.append((m.group(1), int(m.group(2) or 1)))
            pos = m.end()
    return out


def parse_monomials(text: str, variables: Sequence[str] | None = None) -> MonomialIdeal:
    """Parse ``"a*c, a*e, b^2d"``-style text.

    Variables may be declared with a leading ``variables: a b c`` line or
    the ``variables`` argument; otherwise they are inferred (single letters,
    optionally followed by digits) and sorted.
    """
    lines = text.strip().splitlines()
    if lines:
        m = _HEADER.match(lines[0])
        if m:
            if variables is None:
                variables = [v for v in re.split(r"[\s,]+", m.group(1)) if v]
            lines = lines[1:]
    body = " ".join(lines)
    for ch in "()[]":
        body = body.replace(ch, " ")
    items = [s.strip() for s in body.split(",") if s.strip()]
    if not items:
        raise IdealError("no monomials given")
    parsed = []
    for item in items:
        factors = []
        for factor in item.replace(" ", "*").split("*"):
            if not factor:
                continue
            if factor == "1":
                continue
            factors.extend(_tokenize(factor, variables))
        parsed.append(factors)
    if variables is None:
        variables = sorted({name for factors in parsed for name, _ in factors})
    variables = list(variables)
    if not variables:
        raise IdealError("no variables")
    index = {v: i for i, v in enumerate(variables)}
    gens = []
    for factors in parsed:
        exps = [0] * len(variables)
        for name, e in factors:
            if name not in index:
                raise IdealError(f"unknown variable {name!r}")
            exps[index[name]] += e
        gens.append(exps)
    return MonomialIdeal.from_generators(gens, variables)


def ideal_from_json(data: dict) -> MonomialIdeal:
    if not isinstance(data, dict) or "generators" not in data:
        raise IdealError("ideal JSON needs a 'generators' field")
    gens = data["generators"]
    if not isinstance(gens, list) or not all(
        isinstance(g, list) and all(isinstance(e, int) and not isinstance(e, bool) for e in g) for g in gens
    ):
        raise IdealError("'generators' must be a list of integer lists")
    variables = data.get("variables")
    if variables is not None and not (isinstance(variables, list) and all(isinstance(v, str) for v in variables)):
        raise IdealError("'variables' must be a list of strings")
    return MonomialIdeal.from_generators(gens, variables)


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    return {"variables": list(ideal.variables), "generators": [list(g) for g in ideal.generators]}


def parse_ideal(text: str, variables: Sequence[str] | None = None) -> MonomialIdeal:
    """Parse either the JSON form or the monomial-string form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise IdealError(f"malformed JSON: {exc}") from exc
        return ideal_from_json(data)
    return parse_monomials(text, variables)
