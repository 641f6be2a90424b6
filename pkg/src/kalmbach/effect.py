"""Effect algebras and D-posets as finite partial-operation tables.

A table is total: ``oplus[a][b]`` is an element index or ``UNDEFINED``.
Structures are plain containers; ``check_ea_axioms`` / ``check_dposet_axioms``
decide validity and operations that need a valid input call ``require``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    InternalLawFailure,
    InvalidStructure,
    NonUniqueWitness,
    NotAMorphism,
    NotAPartialOrder,
    PASS,
    UndefinedDifference,
    UndefinedSum,
    ValidationError,
    Verdict,
    fail,
)
from .poset import BoundedPoset, element_names, size_cap, validate_poset, CAP_ENV

UNDEFINED = None


@dataclass(frozen=True)
class EffectAlgebra:
    elements: tuple[str, ...]
    oplus: tuple[tuple[int | None, ...], ...]
    zero: int
    one: int

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def verdict(self) -> Verdict:
        return check_ea_axioms(self)

    def require(self) -> "EffectAlgebra":
        if not self.verdict:
            raise InvalidStructure(self.verdict, "effect algebra")
        return self

    def add(self, a: int, b: int) -> int | None:
        return self.oplus[a][b]

    def name(self, x) -> str:
        return "undefined" if x is None else self.elements[x]

    @cached_property
    def complements(self) -> tuple[int, ...]:
        self.require()
        return tuple(
            next(b for b in range(self.n) if self.oplus[a][b] == self.one) for a in range(self.n)
        )

    def complement(self, a: int) -> int:
        return self.complements[a]

    @cached_property
    def order(self) -> BoundedPoset:
        return derived_order(self)

    @cached_property
    def ominus_table(self) -> tuple[tuple[int | None, ...], ...]:
        self.require()
        rows = []
        for b in range(self.n):
            row = []
            for a in range(self.n):
                witnesses = [c for c in range(self.n) if self.oplus[a][c] == b]
                if len(witnesses) > 1:
                    raise NonUniqueWitness(
                        f"{self.name(b)} - {self.name(a)} has witnesses {[self.name(c) for c in witnesses]}"
                    )
                row.append(witnesses[0] if witnesses else UNDEFINED)
            rows.append(tuple(row))
        return tuple(rows)

    def fold(self, values: Iterable[int]) -> int:
        """Left-to-right sum ``((v1 + v2) + v3) + ...``; the empty sum is 0."""
        acc = self.zero
        for v in values:
            nxt = self.oplus[acc][v]
            if nxt is UNDEFINED:
                raise UndefinedSum(f"{self.name(acc)} + {self.name(v)} is undefined")
            acc = nxt
        return acc


def effect_algebra(
    elements: Sequence[str], sums: Iterable[tuple[str, str, str]], zero: str, one: str
) -> EffectAlgebra:
    """Build a table from the defined triples ``(a, b, a+b)``; every pair not
    listed is undefined. Only names are checked here, not the axioms."""
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ValidationError("duplicate element names")
    n = len(elements)
    table = [[UNDEFINED] * n for _ in range(n)]
    for triple in sums:
        try:
            a, b, c = (index[str(x)] for x in triple)
        except KeyError as exc:
            raise ValidationError(f"sum mentions undeclared element {exc.args[0]!r}") from None
        except ValueError:
            raise ValidationError(f"sum entries are triples (a, b, a+b), got {triple!r}") from None
        if table[a][b] is not UNDEFINED and table[a][b] != c:
            raise ValidationError(f"conflicting values for {elements[a]} + {elements[b]}")
        table[a][b] = c
    for name in (zero, one):
        if name not in index:
            raise ValidationError(f"{name!r} is not an element")
    return EffectAlgebra(elements, tuple(map(tuple, table)), index[zero], index[one])


def from_function(names: Sequence[str], op, zero: int, one: int) -> EffectAlgebra:
    """Tabulate ``op(a, b)`` (an index or None) over all pairs."""
    n = len(names)
    table = tuple(tuple(op(a, b) for b in range(n)) for a in range(n))
    return EffectAlgebra(tuple(names), table, zero, one)


def lukasiewicz_chain(n: int) -> EffectAlgebra:
    """The n-element chain ``{0, 1/(n-1), ..., 1}`` with truncated addition:
    ``i + j`` is defined iff it does not exceed 1."""
    names = ["0"] + [f"{k}/{n - 1}" for k in range(1, n - 1)] + ["1"]
    return from_function(names, lambda a, b: a + b if a + b <= n - 1 else None, 0, n - 1)


def boolean_ea() -> EffectAlgebra:
    return lukasiewicz_chain(2)


def diamond_ea() -> EffectAlgebra:
    """The four-element Boolean algebra as an effect algebra: a + b = 1."""
    return effect_algebra(
        ["0", "a", "b", "1"],
        [("0", x, x) for x in "0ab1"] + [(x, "0", x) for x in "ab1"] + [("a", "b", "1"), ("b", "a", "1")],
        "0",
        "1",
    )


# axioms --------------------------------------------------------------------


def check_ea_axioms(E: EffectAlgebra) -> Verdict:
    """Scan order: table shape, E1, E4, E2, E3 (cheapest first)."""
    n = E.n
    T = E.oplus
    name = E.name
    if not (0 <= E.zero < n and 0 <= E.one < n):
        return fail("bounds", E.zero, E.one)
    if len(T) != n or any(len(row) != n for row in T):
        return fail("shape", n)
    for a in range(n):
        for b in range(n):
            v = T[a][b]
            if v is not UNDEFINED and not (isinstance(v, int) and 0 <= v < n):
                return fail("entry", name(a), name(b), v)
    for a in range(n):
        for b in range(n):
            if T[a][b] != T[b][a]:
                return fail("E1", name(a), name(b))
    for a in range(n):
        if T[a][E.one] is not UNDEFINED and a != E.zero:
            return fail("E4", name(a))
    for a in range(n):
        for b in range(n):
            ab = T[a][b]
            if ab is UNDEFINED:
                continue
            for c in range(n):
                abc = T[ab][c]
                if abc is UNDEFINED:
                    continue
                bc = T[b][c]
                if bc is UNDEFINED or T[a][bc] != abc:
                    return fail("E2", name(a), name(b), name(c))
    for a in range(n):
        partners = [b for b in range(n) if T[a][b] == E.one]
        if len(partners) != 1:
            return fail("E3", name(a), *[name(b) for b in partners])
    return PASS


def derived_order(E: EffectAlgebra) -> BoundedPoset:
    """``a <= b`` iff ``a + c = b`` for some c."""
    E.require()
    pairs = [
        (E.elements[a], E.elements[b])
        for a in range(E.n)
        for b in range(E.n)
        if any(E.oplus[a][c] == b for c in range(E.n))
    ]
    try:
        P = validate_poset(E.elements, pairs, mode="full")
    except ValidationError as exc:
        raise NotAPartialOrder(f"derived order of a valid effect algebra: {exc}") from exc
    if (P.bottom, P.top) != (E.zero, E.one):
        raise NotAPartialOrder("derived order is not bounded by 0 and 1")
    return P


def derived_ominus(E: EffectAlgebra, b: int, a: int) -> int:
    """The unique c with ``a + c = b``."""
    c = E.ominus_table[b][a]
    if c is UNDEFINED:
        raise UndefinedDifference(f"{E.name(b)} - {E.name(a)}: {E.name(a)} is not below {E.name(b)}")
    return c


# D-posets -------------------------------------------------------------------


@dataclass(frozen=True)
class DPoset:
    carrier: BoundedPoset
    ominus: tuple[tuple[int | None, ...], ...]  # ominus[b][a] = b - a

    @cached_property
    def verdict(self) -> Verdict:
        return check_dposet_axioms(self)

    def require(self) -> "DPoset":
        if not self.verdict:
            raise InvalidStructure(self.verdict, "D-poset")
        return self

    def minus(self, b: int, a: int) -> int | None:
        return self.ominus[b][a]


def check_dposet_axioms(D: DPoset) -> Verdict:
    P = D.carrier
    n = P.n
    M = D.ominus
    el = P.elements
    if len(M) != n or any(len(row) != n for row in M):
        return fail("shape", n)
    for b in range(n):
        for a in range(n):
            v = M[b][a]
            if v is not UNDEFINED and not (isinstance(v, int) and 0 <= v < n):
                return fail("entry", el[b], el[a], v)
            if (v is not UNDEFINED) != P.leq[a][b]:
                return fail("D1", el[b], el[a])
    for a in range(n):
        for b in range(n):
            if not P.leq[a][b]:
                continue
            d = M[b][a]
            if not P.leq[d][b] or M[b][d] != a:
                return fail("D2", el[a], el[b])
    for a in range(n):
        for b in range(n):
            if not P.leq[a][b]:
                continue
            for c in range(n):
                if not P.leq[b][c]:
                    continue
                cb, ca = M[c][b], M[c][a]
                if not P.leq[cb][ca] or M[ca][cb] != M[b][a]:
                    return fail("D3", el[a], el[b], el[c])
    return PASS


def ea_to_dposet(E: EffectAlgebra) -> DPoset:
    D = DPoset(derived_order(E), E.ominus_table)
    if not D.verdict:
        raise InternalLawFailure(f"effect algebra gave an invalid D-poset: {D.verdict}")
    return D


def dposet_to_ea(D: DPoset) -> EffectAlgebra:
    """``a + b`` is defined iff ``a <= 1 - b`` and equals ``1 - ((1 - a) - b)``."""
    D.require()
    P = D.carrier
    one = P.top
    M = D.ominus
    rows = []
    for a in range(P.n):
        row = []
        for b in range(P.n):
            if P.leq[a][M[one][b]]:
                inner = M[M[one][a]][b]
                if inner is UNDEFINED:
                    raise InternalLawFailure(f"(1 - {P.elements[a]}) - {P.elements[b]} undefined")
                row.append(M[one][inner])
            else:
                row.append(UNDEFINED)
        rows.append(tuple(row))
    return EffectAlgebra(P.elements, tuple(rows), P.bottom, one)


def roundtrip_dposet(E: EffectAlgebra) -> Verdict:
    """EA -> D-poset -> EA reproduces the table exactly."""
    back = dposet_to_ea(ea_to_dposet(E))
    if back == E:
        return PASS
    for a in range(E.n):
        for b in range(E.n):
            if back.oplus[a][b] != E.oplus[a][b]:
                return fail("DP-roundtrip", E.name(a), E.name(b))
    return fail("DP-roundtrip", "bounds")


# morphisms -----------------------------------------------------------------


def check_ea_morphism(f: Sequence[int], E1: EffectAlgebra, E2: EffectAlgebra) -> Verdict:
    if len(f) != E1.n or any(not 0 <= v < E2.n for v in f):
        return fail("totality", tuple(f))
    if f[E1.one] != E2.one:
        return fail("one", E1.name(E1.one))
    nonzero = [x for x in range(E1.n) if x != E1.zero]
    pairs = list(itertools.product(nonzero, repeat=2))
    pairs += [p for p in itertools.product(range(E1.n), repeat=2) if E1.zero in p]
    for a, b in pairs:
        s = E1.oplus[a][b]
        if s is UNDEFINED:
            continue
        image = E2.oplus[f[a]][f[b]]
        if image is UNDEFINED or image != f[s]:
            return fail("additive", E1.name(a), E1.name(b))
    if f[E1.zero] != E2.zero:
        return fail("zero", E1.name(E1.zero))
    return PASS


@dataclass(frozen=True)
class EAMorphism:
    source: EffectAlgebra
    target: EffectAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        verdict = check_ea_morphism(self.mapping, self.source, self.target)
        if not verdict:
            raise NotAMorphism(f"not an effect-algebra morphism: {verdict.rule} at {verdict.witness}")

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def enumerate_maps(E1: EffectAlgebra, E2: EffectAlgebra) -> Iterator[tuple[int, ...]]:
    """All EA morphisms E1 -> E2 by brute force over every total map."""
    for f in itertools.product(range(E2.n), repeat=E1.n):
        if check_ea_morphism(f, E1, E2):
            yield f


# lemma suite ---------------------------------------------------------------


def lemma1_suite(E: EffectAlgebra) -> Verdict:
    """Check the standard identities linking +, - and ' on every pair and triple.

    Derived operations are computed leniently, so a corrupted table yields a
    failing verdict instead of an exception.
    """
    n = E.n
    T = E.oplus
    nm = E.name
    le = [[any(T[a][c] == b for c in range(n)) for b in range(n)] for a in range(n)]
    minus = [[None] * n for _ in range(n)]
    for b in range(n):
        for a in range(n):
            ws = [c for c in range(n) if T[a][c] == b]
            if len(ws) > 1:
                return fail("difference", nm(b), nm(a))
            minus[b][a] = ws[0] if ws else None
    comp = []
    for a in range(n):
        ws = [c for c in range(n) if T[a][c] == E.one]
        if len(ws) != 1:
            return fail("complement", nm(a))
        comp.append(ws[0])

    def m(b, a):
        return None if b is None or a is None else minus[b][a]

    def below(a, b):
        return a is not None and b is not None and le[a][b]

    for a in range(n):
        for b in range(n):
            s = T[a][b]
            conds = (below(a, comp[b]), below(b, comp[a]), s is not None)
            if len(set(conds)) != 1:
                return fail("lemma1(a)", nm(a), nm(b))
            if s is not None:
                vals = {comp[s], m(comp[a], b), m(comp[b], a)}
                if len(vals) != 1 or None in vals:
                    return fail("lemma1(a)", nm(a), nm(b))
    for a in range(n):
        for b in range(n):
            t = T[a][comp[b]]
            if le[a][b] != (t is not None):
                return fail("lemma1(b)", nm(a), nm(b))
            if t is not None:
                d = minus[b][a]
                if d is None or comp[d] != t:
                    return fail("lemma1(b)", nm(a), nm(b))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                cb, ca, s = minus[c][b], minus[c][a], T[a][b]
                conds = (below(a, cb), below(b, ca), below(s, c))
                if len(set(conds)) != 1:
                    return fail("lemma1(c)", nm(a), nm(b), nm(c))
                if conds[0]:
                    vals = {m(c, s), m(ca, b), m(cb, a)}
                    if len(vals) != 1 or None in vals:
                        return fail("lemma1(c)", nm(a), nm(b), nm(c))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                # one direction only: a = 1, b = c = 0 has 1 + (0 - 0) defined
                # in every effect algebra although 1 <= 0 fails
                cb = minus[c][b]
                chain = le[a][b] and le[b][c]
                if chain:
                    if cb is None or T[a][cb] is None:
                        return fail("lemma1(d)", nm(a), nm(b), nm(c))
                    lhs = m(c, minus[b][a])
                    if lhs is None or lhs != T[a][cb]:
                        return fail("lemma1(d)", nm(a), nm(b), nm(c))
    return PASS


# enumeration ---------------------------------------------------------------

_UNKNOWN = -1


def enumerate_effect_algebras(n: int, cap: int | None = None) -> Iterator[EffectAlgebra]:
    """All labeled effect algebras on ``element_names(n)`` with 0 first and 1 last.

    Row 0 is fixed to ``0 + x = x`` and row 1 to ``1 + x`` undefined for
    ``x != 0``, both consequences of the axioms; nonzero sums are never 0.
    The remaining cells are filled by backtracking, pruning on partial E2/E3.
    """
    cap = size_cap() if cap is None else cap
    if n < 2:
        raise ValidationError("effect algebras here have 0 != 1")
    if n > cap:
        raise CapExceeded(f"size {n} exceeds the cap {cap} (set ${CAP_ENV} to raise it)")
    names = tuple(element_names(n))
    one = n - 1
    T = [[_UNKNOWN] * n for _ in range(n)]
    for x in range(n):
        T[0][x] = T[x][0] = x
        if x:
            T[one][x] = T[x][one] = UNDEFINED
    middle = range(1, n - 1)
    cells = list(itertools.combinations_with_replacement(middle, 2))
    values = [UNDEFINED, *range(1, n)]

    def viable():
        for a in range(n):
            row = T[a]
            if row.count(one) > 1:
                return False
            if _UNKNOWN not in row and one not in row:
                return False
        for a in range(n):
            for b in range(n):
                ab = T[a][b]
                if ab is UNDEFINED or ab == _UNKNOWN:
                    continue
                for c in range(n):
                    abc = T[ab][c]
                    if abc is UNDEFINED or abc == _UNKNOWN:
                        continue
                    bc = T[b][c]
                    if bc == _UNKNOWN:
                        continue
                    if bc is UNDEFINED:
                        return False
                    abc2 = T[a][bc]
                    if abc2 == _UNKNOWN:
                        continue
                    if abc2 != abc:
                        return False
        return True

    def search(k):
        if k == len(cells):
            E = EffectAlgebra(names, tuple(map(tuple, T)), 0, one)
            if E.verdict:
                yield E
            return
        i, j = cells[k]
        for v in values:
            T[i][j] = T[j][i] = v
            if viable():
                yield from search(k + 1)
        T[i][j] = T[j][i] = _UNKNOWN

    yield from search(0)


def all_effect_algebras(max_size: int, min_size: int = 2, cap: int | None = None) -> Iterator[EffectAlgebra]:
    for n in range(min_size, max_size + 1):
        yield from enumerate_effect_algebras(n, cap=cap)
