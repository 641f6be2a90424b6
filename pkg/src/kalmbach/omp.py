"""Orthomodular posets, their morphisms, and the passage to effect algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .effect import UNDEFINED, EffectAlgebra
from .errors import (
    InvalidStructure,
    JoinMissing,
    MissingMeet,
    NotAMorphism,
    PASS,
    ValidationError,
    Verdict,
    fail,
)
from .poset import BoundedPoset, diamond, enumerate_bounded_posets


@dataclass(frozen=True)
class OrthomodularPoset:
    carrier: BoundedPoset
    complement: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def elements(self) -> tuple[str, ...]:
        return self.carrier.elements

    @cached_property
    def verdict(self) -> Verdict:
        return check_omp_axioms(self.carrier, self.complement)

    def require(self) -> "OrthomodularPoset":
        if not self.verdict:
            raise InvalidStructure(self.verdict, "orthomodular poset")
        return self

    def perp(self, x: int) -> int:
        return self.complement[x]

    def orthogonal(self, x: int, y: int) -> bool:
        return self.carrier.leq[x][self.complement[y]]

    def join(self, x: int, y: int) -> int | None:
        return self.carrier.join(x, y)

    def meet(self, x: int, y: int) -> int | None:
        return self.carrier.meet(x, y)

    def orthogonal_join(self, x: int, y: int) -> int:
        if not self.orthogonal(x, y):
            raise ValidationError(f"{self.elements[x]} and {self.elements[y]} are not orthogonal")
        j = self.join(x, y)
        if j is None:
            raise JoinMissing(f"orthogonal join {self.elements[x]} v {self.elements[y]} does not exist")
        return j

    def relative_complement(self, x: int, y: int) -> int:
        """``x' ^ y`` for ``x <= y``, computed as ``(x v y')'``."""
        j = self.join(x, self.complement[y])
        if j is None:
            raise MissingMeet(
                f"{self.elements[x]}' ^ {self.elements[y]}: join {self.elements[x]} v "
                f"{self.elements[y]}' is missing"
            )
        return self.complement[j]


@dataclass(frozen=True)
class OMPMorphism:
    source: OrthomodularPoset
    target: OrthomodularPoset
    mapping: tuple[int, ...]

    def __post_init__(self):
        verdict = check_omp_morphism(self.mapping, self.source, self.target, "primary")
        if not verdict:
            raise NotAMorphism(f"not an OMP morphism: {verdict.rule} at {verdict.witness}")

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def orthomodular_poset(P: BoundedPoset, complement: Mapping[str, str]) -> OrthomodularPoset:
    try:
        table = tuple(P.index[complement[name]] for name in P.elements)
    except KeyError as exc:
        raise ValidationError(f"complement is not total or names an unknown element: {exc.args[0]!r}") from None
    return OrthomodularPoset(P, table)


def check_omp_axioms(P: BoundedPoset, complement: Sequence[int]) -> Verdict:
    n = P.n
    el = P.elements
    c = complement
    if len(c) != n or any(not (isinstance(v, int) and 0 <= v < n) for v in c):
        return fail("totality", tuple(c))
    for x in range(n):
        for y in range(n):
            if P.leq[x][y] and not P.leq[c[y]][c[x]]:
                return fail("antitone", el[x], el[y])
    for x in range(n):
        if c[c[x]] != x:
            return fail("involution", el[x])
    for x in range(n):
        if P.meet(x, c[x]) != P.bottom:
            return fail("complement-meet", el[x])
    for x in range(n):
        for y in range(n):
            if P.leq[x][c[y]] and P.join(x, y) is None:
                return fail("orthogonal-join", el[x], el[y])
    for x in range(n):
        for y in range(n):
            if not P.leq[x][y]:
                continue
            inner = P.join(x, c[y])
            outer = None if inner is None else P.join(x, c[inner])
            if outer != y:
                return fail("orthomodular", el[x], el[y])
    return PASS


def check_omp_morphism(
    f: Sequence[int], A1: OrthomodularPoset, A2: OrthomodularPoset, definition: str = "primary"
) -> Verdict:
    """``primary``: f(1)=1 and orthogonal pairs go to orthogonal pairs with
    their join preserved. ``alternative``: isotone, complement preserving,
    and preserving joins of orthogonal elements."""
    if definition not in ("primary", "alternative"):
        raise ValueError(f"definition must be primary or alternative, not {definition!r}")
    P, Q = A1.carrier, A2.carrier
    el = P.elements
    if len(f) != P.n or any(not 0 <= v < Q.n for v in f):
        return fail("totality", tuple(f))
    if definition == "primary":
        if f[P.top] != Q.top:
            return fail("top", el[P.top])
        for a in range(P.n):
            for b in range(P.n):
                if not A1.orthogonal(a, b):
                    continue
                if not A2.orthogonal(f[a], f[b]):
                    return fail("orthogonality", el[a], el[b])
                if Q.join(f[a], f[b]) != f[P.join(a, b)]:
                    return fail("orthogonal-join", el[a], el[b])
        return PASS
    for a in range(P.n):
        for b in range(P.n):
            if P.leq[a][b] and not Q.leq[f[a]][f[b]]:
                return fail("isotone", el[a], el[b])
    for a in range(P.n):
        if f[A1.complement[a]] != A2.complement[f[a]]:
            return fail("complement", el[a])
    for a in range(P.n):
        for b in range(P.n):
            if A1.orthogonal(a, b) and Q.join(f[a], f[b]) != f[P.join(a, b)]:
                return fail("orthogonal-join", el[a], el[b])
    return PASS


def omp_to_ea(A: OrthomodularPoset) -> EffectAlgebra:
    """``x + y`` is defined iff ``x <= y'`` and then equals ``x v y``."""
    A.require()
    rows = []
    for x in range(A.n):
        row = []
        for y in range(A.n):
            row.append(A.orthogonal_join(x, y) if A.orthogonal(x, y) else UNDEFINED)
        rows.append(tuple(row))
    return EffectAlgebra(A.elements, tuple(rows), A.carrier.bottom, A.carrier.top)


def enumerate_omps(n: int, cap: int | None = None) -> Iterator[OrthomodularPoset]:
    """Every orthomodular poset on a labeled bounded poset of size n."""
    for P in enumerate_bounded_posets(n, cap=cap):
        for perm in itertools.permutations(range(n)):
            if any(perm[perm[x]] != x for x in range(n)):
                continue
            if check_omp_axioms(P, perm):
                yield OrthomodularPoset(P, perm)


def all_omps(max_size: int, cap: int | None = None) -> Iterator[OrthomodularPoset]:
    for n in range(2, max_size + 1):
        yield from enumerate_omps(n, cap=cap)


def enumerate_omp_maps(A1: OrthomodularPoset, A2: OrthomodularPoset) -> Iterator[tuple[int, ...]]:
    """Every total map between the carriers (no filtering)."""
    return itertools.product(range(A2.n), repeat=A1.n)


def boolean_four() -> OrthomodularPoset:
    """The four-element Boolean algebra with a' = b."""
    return orthomodular_poset(diamond(), {"0": "1", "a": "b", "b": "a", "1": "0"})
