"""Betti numbers from interval homology, Betti posets and Betti lattices."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, TypeVar

from .homology import QQ, Field, nonzero, reduced_homology_dims
from .monomial import MonomialIdeal, Multidegree, in_degree_support
from .poset import (
    GradedPoset,
    NotAtomicError,
    Poset,
    PosetError,
    is_atomic,
    is_lattice,
    lcm_lattice,
    meet_closure,
    open_filter,
    order_complex,
)
from .resolution import BettiTable, Report

T = TypeVar("T")
R = TypeVar("R")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BETTIKIT_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    items = list(items)
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def interval_homology(P: Poset, x, field: Field = QQ) -> dict[int, int]:
    """Reduced homology of the order complex of P_{<x}."""
    return reduced_homology_dims(order_complex(open_filter(P, x)), field)


def betti_numbers_from_poset(P: GradedPoset, ideal: MonomialIdeal, field: Field = QQ) -> BettiTable:
    """beta_{d,alpha} = dim H~_{d-1}(Delta(P_{<alpha})) for alpha in P.

    Only ``P <= deg(I)`` is validated.  The answer is correct when P also
    contains every Betti degree of I, which cannot be checked without
    computing them.
    """
    if P.num_vars != ideal.num_vars:
        raise ValueError("poset and ideal have different numbers of variables")
    for x in P.elements:
        if not in_degree_support(ideal, P.grade[x]):
            raise ValueError(f"{P.label(x)} is not a degree of the ideal")
    if not P.is_embedded():
        raise ValueError("poset must be a subposet of Z^m")
    table = BettiTable()
    for x, H in zip(P.elements, _map(lambda x: interval_homology(P, x, field), P.elements)):
        for n, h in H.items():
            if h:
                table[(n + 1, P.grade[x])] = h
    return table


def betti_numbers(ideal: MonomialIdeal, field: Field = QQ) -> BettiTable:
    """Multigraded Betti numbers of I from the open intervals of its lcm-lattice."""
    return betti_numbers_from_poset(lcm_lattice(ideal), ideal, field)


@dataclass(frozen=True)
class BettiPosetResult:
    poset: GradedPoset
    field: Field
    table: BettiTable


def betti_poset(ideal: MonomialIdeal, field: Field = QQ) -> BettiPosetResult:
    L = lcm_lattice(ideal)
    table = betti_numbers_from_poset(L, ideal, field)
    support = table.support()
    return BettiPosetResult(L.induced([x for x in L.elements if L.grade[x] in support]), field, table)


def betti_lattice(ideal: MonomialIdeal, field: Field = QQ) -> Poset:
    """M(B(I)): elements are frozensets of generator degrees."""
    lattice, _ = meet_closure(betti_poset(ideal, field).poset)
    return lattice


def lattice_element_degree(s: frozenset) -> Multidegree | None:
    """The lcm of a set of generator degrees; None for the empty set."""
    if not s:
        return None
    it = iter(s)
    acc = next(it)
    for d in it:
        acc = tuple(max(a, b) for a, b in zip(acc, d))
    return acc


# --- characterization ----------------------------------------------------

@dataclass(frozen=True)
class Witness:
    element: frozenset
    kind: str  # "missing": not in P but homology nonzero; "present": in P but acyclic
    homology: dict

    def to_json(self, name=str) -> dict:
        return {"set": sorted(name(a) for a in self.element), "kind": self.kind,
                "homology": {str(k): v for k, v in sorted(self.homology.items())}}


@dataclass(frozen=True)
class BettiPosetCheck:
    verdict: bool
    witnesses: list[Witness]
    lattice: Poset
    realizing_ideal: MonomialIdeal | None = None
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def check_betti_poset(P: Poset, field: Field = QQ) -> BettiPosetCheck:
    """Decide whether the atomic poset P is the Betti poset of a monomial ideal over ``field``.

    For every x in M(P) other than its bottom, x must lie in sigma(P)
    exactly when the open interval below x (bottom removed) has some
    nonvanishing reduced homology.
    """
    if len(P) == 0:
        raise PosetError("empty poset")
    if not is_atomic(P):
        raise NotAtomicError("poset is not atomic")
    M, sigma = meet_closure(P)
    image = set(sigma.sets.values())
    bottom = frozenset()
    Mx = M.induced([x for x in M.elements if x != bottom])
    witnesses = []
    for x in Mx.elements:
        H = nonzero(interval_homology(Mx, x, field))
        if x in image and not H:
            witnesses.append(Witness(x, "present", H))
        elif x not in image and H:
            witnesses.append(Witness(x, "missing", H))
    realizing = realize_atomic_lattice(M) if not witnesses else None
    return BettiPosetCheck(not witnesses, witnesses, M, realizing)


def realize_atomic_lattice(L: Poset, variables: list[str] | None = None) -> MonomialIdeal:
    """A monomial ideal whose lcm-lattice (with bottom) is isomorphic to L.

    One variable x_p per non-bottom element p; atom a gets the generator
    prod{x_p : p not >= a}.  A one-atom lattice yields a principal ideal.
    """
    if not is_lattice(L):
        raise NotAtomicError("input is not a finite lattice with a bottom")
    bottom = L.minimal_elements()[0]
    upper = [x for x in L.elements if x != bottom]
    if not upper:
        raise NotAtomicError("lattice has no atoms")
    rest = L.induced(upper)
    if not is_atomic(rest):
        raise NotAtomicError("lattice is not atomic")
    atoms = rest.minimal_elements()
    if variables is None:
        variables = [f"x{k + 1}" for k in range(len(upper))]
    if len(atoms) == 1:
        # every product would be empty; use the atom's own variable
        return MonomialIdeal.from_generators([[1] + [0] * (len(upper) - 1)], variables[: len(upper)])
    gens = [[0 if L.le(a, p) else 1 for p in upper] for a in atoms]
    return MonomialIdeal.from_generators(gens, variables[: len(upper)])


def verify_homology_iso(ideal: MonomialIdeal, field: Field = QQ) -> Report:
    """For alpha in B(I), compare H~ of Delta(B_{<alpha}) and Delta((L minus 0)_{<alpha})."""
    L = lcm_lattice(ideal)
    B = betti_poset(ideal, field).poset
    for alpha in B.elements:
        hb = nonzero(interval_homology(B, alpha, field))
        hl = nonzero(interval_homology(L, alpha, field))
        if hb != hl:
            return Report(False, "interval homology differs", alpha=alpha,
                          details={"betti": hb, "lcm": hl})
    return Report(True, f"homology agrees at all {len(B)} Betti degrees")

