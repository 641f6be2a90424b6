"""Algebras for the Kalmbach monad and their correspondence with effect algebras.

An algebra is a bounded poset A with a structure map ``alpha`` from the even
chains of A to A; ``alpha`` is stored as a tuple aligned with
``kalmbach_extend(A).chains``. ``structure_map_mA`` turns an effect algebra
into an algebra and ``ea_from_algebra`` goes back through the D-poset with
``b - a = alpha([a<b])``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .effect import (
    UNDEFINED,
    DPoset,
    EAMorphism,
    EffectAlgebra,
    check_dposet_axioms,
    derived_ominus,
    dposet_to_ea,
)
from .errors import (
    CapExceeded,
    DAxiomFailure,
    InternalLawFailure,
    InvalidStructure,
    PASS,
    UndefinedSum,
    ValidationError,
    Verdict,
    fail,
)
from .extension import KalmbachPoset, eta_chain, image_chain, kalmbach_extend, mu_chain
from .poset import CAP_ENV, BoundedPoset, Chain, all_chains, is_morphism, size_cap, symmetric_difference

ALGEBRA_CAP = 4


@dataclass(frozen=True)
class MonadAlgebra:
    carrier: BoundedPoset
    alpha: tuple[int, ...]

    @property
    def extension(self) -> KalmbachPoset:
        return kalmbach_extend(self.carrier)

    @cached_property
    def verdict(self) -> Verdict:
        return check_algebra_laws(self.carrier, self.alpha)

    def require(self) -> "MonadAlgebra":
        if not self.verdict:
            raise InvalidStructure(self.verdict, "monad algebra")
        return self

    def __call__(self, chain: Chain) -> int:
        return self.alpha[self.extension.index[chain]]

    def pairs(self) -> list[tuple[str, str]]:
        K = self.extension
        return [(K.render(i), self.carrier.elements[v]) for i, v in enumerate(self.alpha)]


def monad_algebra(A: BoundedPoset, alpha: Mapping[str, str]) -> MonadAlgebra:
    """Build from ``{"[x1<x2]": "value", ...}``; every even chain must appear."""
    K = kalmbach_extend(A)
    table = [None] * K.n
    for text, value in alpha.items():
        chain = A.parse_chain(text)
        if chain not in K.index:
            raise ValidationError(f"{text} is not an even chain")
        if value not in A.index:
            raise ValidationError(f"alpha value {value!r} is not an element")
        table[K.index[chain]] = A.index[value]
    missing = [K.render(i) for i, v in enumerate(table) if v is None]
    if missing:
        raise ValidationError(f"alpha is not total, missing {missing}")
    return MonadAlgebra(A, tuple(table))


def check_algebra_laws(A: BoundedPoset, alpha: Sequence[int]) -> Verdict:
    """alpha is a morphism T(A) -> A, alpha . eta = id, and
    alpha . T(alpha) = alpha . mu on all of T^2(A)."""
    K = kalmbach_extend(A)
    T = K.poset
    if len(alpha) != K.n or any(not 0 <= v < A.n for v in alpha):
        return fail("totality", tuple(alpha))
    verdict = is_morphism(alpha, T, A)
    if not verdict:
        return fail(f"morphism-{verdict.rule}", *verdict.witness)
    for a in range(A.n):
        if alpha[K.index[eta_chain(A, a)]] != a:
            return fail("triangle", A.elements[a])
    for X in all_chains(T, "even"):
        across = alpha[K.index[image_chain(alpha, X, A)]]
        down = alpha[K.index[mu_chain(K, X)]]
        if across != down:
            return fail("square", T.render_chain(X))
    return PASS


def check_algebra_morphism(h: Sequence[int], M1: MonadAlgebra, M2: MonadAlgebra) -> Verdict:
    """h is a bounded-poset morphism with ``alpha2 . T(h) = h . alpha1``."""
    verdict = is_morphism(h, M1.carrier, M2.carrier)
    if not verdict:
        return verdict
    K1 = M1.extension
    for i, C in enumerate(K1.chains):
        if M2(image_chain(h, C, M2.carrier)) != h[M1.alpha[i]]:
            return fail("algebra-square", K1.render(i))
    return PASS


# G: effect algebras -> algebras ----------------------------------------------


def m_value(E: EffectAlgebra, chain: Chain) -> int:
    """``(x2 - x1) + (x4 - x3) + ...`` folded left to right in E."""
    return E.fold(derived_ominus(E, chain[i + 1], chain[i]) for i in range(0, len(chain), 2))


def structure_map_mA(E: EffectAlgebra) -> MonadAlgebra:
    E.require()
    A = E.order
    K = kalmbach_extend(A)
    M = MonadAlgebra(A, tuple(m_value(E, c) for c in K.chains))
    if not M.verdict:
        raise InternalLawFailure(f"m_A fails {M.verdict.rule} at {M.verdict.witness}")
    return M


# E: algebras -> effect algebras -----------------------------------------------


def algebra_dposet(M: MonadAlgebra) -> DPoset:
    """``b - b = 0`` and ``b - a = alpha([a<b])`` for ``a < b``."""
    A = M.carrier
    rows = []
    for b in range(A.n):
        row = []
        for a in range(A.n):
            if a == b:
                row.append(A.bottom)
            elif A.lt(a, b):
                row.append(M((a, b)))
            else:
                row.append(UNDEFINED)
        rows.append(tuple(row))
    return DPoset(A, tuple(rows))


def ea_from_algebra(M: MonadAlgebra) -> EffectAlgebra:
    M.require()
    D = algebra_dposet(M)
    verdict = check_dposet_axioms(D)
    if not verdict:
        raise DAxiomFailure(f"E(A, alpha) fails {verdict.rule} at {verdict.witness}")
    return dposet_to_ea(D)


def check_auxiliary_claim(M: MonadAlgebra) -> Verdict:
    """``alpha(C delta [0<u]) = alpha([alpha(C)<u])`` for every even chain C
    and every u strictly above all of C (u > 0 when C is empty)."""
    A = M.carrier
    K = M.extension
    for i, C in enumerate(K.chains):
        for u in range(A.n):
            if u in C or u == A.bottom or not all(A.le(x, u) for x in C):
                continue
            lhs = M(A.chain(symmetric_difference(C, (A.bottom, u))))
            v = M.alpha[i]
            pair = set() if v == u else {v, u}
            if not A.is_chain(pair):
                return fail("auxiliary", K.render(i), A.elements[u])
            rhs = M(A.chain(pair))
            if lhs != rhs:
                return fail("auxiliary", K.render(i), A.elements[u])
    return PASS


def check_g_morphism_equation(f: EAMorphism) -> Verdict:
    """For every even chain of the source, the alternating sum of image
    differences equals m_B of the symmetric difference of image singletons."""
    A, B = f.source, f.target
    P, Q = A.order, B.order
    for C in all_chains(P, "even"):
        try:
            lhs = B.fold(
                derived_ominus(B, f(C[i + 1]), f(C[i])) for i in range(0, len(C), 2)
            )
        except (UndefinedSum, ValidationError):
            return fail("equation-lhs", P.render_chain(C))
        rhs = m_value(B, image_chain(f.mapping, C, Q))
        if lhs != rhs:
            return fail("equation", P.render_chain(C))
    return PASS


def roundtrip_EG(E: EffectAlgebra) -> Verdict:
    back = ea_from_algebra(structure_map_mA(E))
    if back == E:
        return PASS
    for a in range(E.n):
        for b in range(E.n):
            if back.oplus[a][b] != E.oplus[a][b]:
                return fail("EG", E.name(a), E.name(b))
    return fail("EG", "labels")


def roundtrip_GE(M: MonadAlgebra) -> Verdict:
    back = structure_map_mA(ea_from_algebra(M))
    if back.carrier != M.carrier:
        return fail("GE-carrier", repr(M.carrier))
    for i, (x, y) in enumerate(zip(back.alpha, M.alpha)):
        if x != y:
            return fail("GE", M.extension.render(i))
    return PASS


def enumerate_algebras(A: BoundedPoset, cap: int | None = None) -> Iterator[MonadAlgebra]:
    """Every algebra structure on A. The triangle law fixes alpha on the empty
    chain and on each ``[0<a]``; the rest is searched with isotony pruning and
    the full law check at the leaves."""
    cap = size_cap(ALGEBRA_CAP) if cap is None else cap
    if A.n > cap:
        raise CapExceeded(f"carrier size {A.n} exceeds the cap {cap} (set ${CAP_ENV} to raise it)")
    K = kalmbach_extend(A)
    T = K.poset
    alpha: list[int | None] = [None] * K.n
    for a in range(A.n):
        alpha[K.index[eta_chain(A, a)]] = a
    free = [i for i in range(K.n) if alpha[i] is None]
    free.sort(key=T.height_key.__getitem__)

    def consistent(i):
        for j in range(K.n):
            if alpha[j] is None:
                continue
            if T.le(i, j) and not A.le(alpha[i], alpha[j]):
                return False
            if T.le(j, i) and not A.le(alpha[j], alpha[i]):
                return False
        return True

    def search(k):
        if k == len(free):
            M = MonadAlgebra(A, tuple(alpha))
            if M.verdict:
                yield M
            return
        i = free[k]
        for v in range(A.n):
            alpha[i] = v
            if consistent(i):
                yield from search(k + 1)
        alpha[i] = None

    yield from search(0)


def algebra_morphisms(M1: MonadAlgebra, M2: MonadAlgebra) -> Iterator[tuple[int, ...]]:
    """Every algebra morphism, by brute force over all maps of carriers."""
    for h in itertools.product(range(M2.carrier.n), repeat=M1.carrier.n):
        if check_algebra_morphism(h, M1, M2):
            yield h
