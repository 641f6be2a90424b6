"""The Kalmbach extension K, its unit and counit, and the induced monad.

K(P) is built as an ordinary ``BoundedPoset`` whose elements are the even
chains of P (rendered ``[x1<x2<...]``), so T(P) = U(K(P)) can be fed back in
to build T^2(P) and T^3(P) without special cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import (
    BaseNotLattice,
    InternalLawFailure,
    KalmbachError,
    NotAChain,
    NotOrthogonal,
    PASS,
    MissingJoin,
    Verdict,
    fail,
)
from .omp import OrthomodularPoset, check_omp_axioms, check_omp_morphism
from .poset import BoundedPoset, Chain, PosetMorphism, all_chains, symmetric_difference


def kalmbach_leq(P: BoundedPoset, C: Chain, D: Chain) -> bool:
    """Every consecutive pair of C sits inside some consecutive pair of D."""
    for i in range(0, len(C), 2):
        x_lo, x_hi = C[i], C[i + 1]
        if not any(
            P.le(D[j], x_lo) and P.lt(x_lo, x_hi) and P.le(x_hi, D[j + 1])
            for j in range(0, len(D), 2)
        ):
            return False
    return True


def kalmbach_perp(P: BoundedPoset, C: Chain) -> Chain:
    """Symmetric difference with ``{0, 1}``."""
    return P.chain(symmetric_difference(C, (P.bottom, P.top)))


@dataclass(frozen=True, eq=False)
class KalmbachPoset:
    base: BoundedPoset
    chains: tuple[Chain, ...]
    omp: OrthomodularPoset

    @property
    def poset(self) -> BoundedPoset:
        return self.omp.carrier

    @property
    def n(self) -> int:
        return len(self.chains)

    @cached_property
    def index(self) -> dict[Chain, int]:
        return {c: i for i, c in enumerate(self.chains)}

    def index_of(self, members) -> int:
        """Index of the even chain formed by ``members`` (any iterable)."""
        chain = self.base.chain(members)
        if len(chain) % 2:
            raise NotAChain(f"{self.base.render_chain(chain)} has odd length")
        return self.index[chain]

    def render(self, i: int) -> str:
        return self.poset.elements[i]


def kalmbach_extend(P: BoundedPoset) -> KalmbachPoset:
    """K(P): even chains of P under the sandwich order with C -> C delta {0,1}."""
    return _extend(P)


@lru_cache(maxsize=256)
def _extend(P: BoundedPoset) -> KalmbachPoset:
    chains = tuple(all_chains(P, "even"))
    leq = tuple(tuple(kalmbach_leq(P, c, d) for d in chains) for c in chains)
    names = tuple(P.render_chain(c) for c in chains)
    index = {c: i for i, c in enumerate(chains)}
    try:
        carrier = BoundedPoset(names, leq, index[()], index[(P.bottom, P.top)])
    except KalmbachError as exc:
        raise InternalLawFailure(f"K({P!r}) is not a bounded poset: {exc}") from exc
    complement = tuple(index[kalmbach_perp(P, c)] for c in chains)
    verdict = check_omp_axioms(carrier, complement)
    if not verdict:
        raise InternalLawFailure(f"K({P!r}) fails {verdict.rule} at {verdict.witness}")
    return KalmbachPoset(P, chains, OrthomodularPoset(carrier, complement))


def image_chain(f: Sequence[int], chain: Chain, Q: BoundedPoset) -> Chain:
    """``delta_i {f(x_i)}``, the action of K(f) on one chain."""
    return Q.chain(symmetric_difference(*[(f[x],) for x in chain]))


def kalmbach_map(f: PosetMorphism) -> PosetMorphism:
    """K(f) : K(P) -> K(Q), checked to be a morphism of orthomodular posets."""
    KP, KQ = kalmbach_extend(f.source), kalmbach_extend(f.target)
    mapping = tuple(KQ.index[image_chain(f.mapping, c, f.target)] for c in KP.chains)
    verdict = check_omp_morphism(mapping, KP.omp, KQ.omp, "primary")
    if not verdict:
        raise InternalLawFailure(f"K(f) is not an OMP morphism: {verdict.rule} at {verdict.witness}")
    return PosetMorphism(KP.poset, KQ.poset, mapping)


def eta_chain(P: BoundedPoset, a: int) -> Chain:
    return () if a == P.bottom else (P.bottom, a)


def unit_eta(P: BoundedPoset) -> PosetMorphism:
    """a -> [0<a], 0 -> empty chain."""
    KP = kalmbach_extend(P)
    return PosetMorphism(P, KP.poset, tuple(KP.index[eta_chain(P, a)] for a in range(P.n)))


def check_embedding(P: BoundedPoset) -> Verdict:
    """The unit is injective and reflects the order."""
    eta = unit_eta(P)
    Q = eta.target
    images = {}
    for a in range(P.n):
        if eta(a) in images:
            return fail("injective", P.elements[images[eta(a)]], P.elements[a])
        images[eta(a)] = a
    for a in range(P.n):
        for b in range(P.n):
            if Q.le(eta(a), eta(b)) != P.le(a, b):
                return fail("order-reflecting", P.elements[a], P.elements[b])
    return PASS


def epsilon_value(L: OrthomodularPoset, chain: Chain) -> int:
    """``(x1' ^ x2) v ... v (x_{2n-1}' ^ x_{2n})`` folded left to right."""
    el = L.elements
    acc = L.carrier.bottom
    for i in range(0, len(chain), 2):
        lo, hi = chain[i], chain[i + 1]
        term = L.relative_complement(lo, hi)
        if not L.orthogonal(acc, term):
            raise NotOrthogonal(f"{el[acc]} and {el[term]} are not orthogonal in the join for {chain}")
        nxt = L.join(acc, term)
        if nxt is None:
            raise MissingJoin(f"{el[acc]} v {el[term]} does not exist")
        acc = nxt
    return acc


def counit_epsilon(L: OrthomodularPoset) -> PosetMorphism:
    """epsilon_L : K(U(L)) -> L, checked to be an OMP morphism."""
    L.require()
    KL = kalmbach_extend(L.carrier)
    mapping = tuple(epsilon_value(L, c) for c in KL.chains)
    verdict = check_omp_morphism(mapping, KL.omp, L, "primary")
    if not verdict:
        raise InternalLawFailure(f"epsilon is not an OMP morphism: {verdict.rule} at {verdict.witness}")
    return PosetMorphism(KL.poset, L.carrier, mapping)


def mu_chain(KP: KalmbachPoset, outer: Sequence[int]) -> Chain:
    """``C1 delta ... delta C2n`` for a chain of K(P)-indices; asserts the
    result is an even chain of P."""
    members = symmetric_difference(*[KP.chains[i] for i in outer])
    try:
        chain = KP.base.chain(members)
    except NotAChain as exc:
        raise NotAChain(f"mu of {KP.poset.render_chain(outer)}: {exc}") from exc
    if len(chain) % 2:
        raise NotAChain(f"mu of {KP.poset.render_chain(outer)} has odd length")
    return chain


def monad_mu(P: BoundedPoset) -> PosetMorphism:
    """mu_P : T^2(P) -> T(P) as a checked bounded-poset morphism."""
    KP = kalmbach_extend(P)
    KKP = kalmbach_extend(KP.poset)
    return PosetMorphism(KKP.poset, KP.poset, tuple(KP.index[mu_chain(KP, c)] for c in KKP.chains))


def random_even_chain(Q: BoundedPoset, rng: random.Random, stop: float = 0.25) -> Chain:
    """A random even chain of Q grown one comparable element at a time."""
    members: list[int] = []
    while True:
        options = [x for x in range(Q.n) if x not in members and all(Q.comparable(x, m) for m in members)]
        if not options or rng.random() < stop:
            break
        members.append(rng.choice(options))
    if len(members) % 2:
        members.pop(rng.randrange(len(members)))
    return Q.chain(members)


def check_monad_laws(
    P: BoundedPoset, assoc_mode: str = "exhaustive", seed: int = 0, samples: int = 1000
) -> Verdict:
    """Unit laws over all of T(P); associativity over T^3(P), exhaustively,
    on ``samples`` seeded random draws, or not at all (``"none"``)."""
    if assoc_mode not in ("exhaustive", "sampled", "none"):
        raise ValueError(f"assoc_mode must be exhaustive, sampled or none, not {assoc_mode!r}")
    K1 = kalmbach_extend(P)
    T1 = K1.poset
    eta_P = [K1.index[eta_chain(P, a)] for a in range(P.n)]
    for i, C in enumerate(K1.chains):
        # mu . T(eta)
        outer = image_chain(eta_P, C, T1)
        if mu_chain(K1, outer) != C:
            return fail("unit-left", T1.elements[i])
        # mu . eta_T
        outer = eta_chain(T1, i)
        if mu_chain(K1, outer) != C:
            return fail("unit-right", T1.elements[i])
    if assoc_mode == "none":
        return Verdict(True, info={"T": K1.n})

    K2 = kalmbach_extend(T1)
    T2 = K2.poset
    mu_P = [K1.index[mu_chain(K1, c)] for c in K2.chains]
    if assoc_mode == "exhaustive":
        elements = all_chains(T2, "even")
    else:
        rng = random.Random(seed)
        elements = [random_even_chain(T2, rng) for _ in range(samples)]
    for X in elements:
        lhs = mu_chain(K1, image_chain(mu_P, X, T1))
        rhs = K1.chains[mu_P[K2.index[mu_chain(K2, X)]]]
        if lhs != rhs:
            return fail("associativity", T2.render_chain(X))
    info = {"T": K1.n, "T2": K2.n, "T3_checked": len(elements), "T3_distinct": len(set(elements))}
    return Verdict(True, info=info)


def check_unit_triangle(P: BoundedPoset) -> Verdict:
    """``epsilon_{K(P)} . K(eta_P) = id`` on K(P)."""
    KP = kalmbach_extend(P)
    K_eta = kalmbach_map(unit_eta(P))
    eps = counit_epsilon(KP.omp)
    for i in range(KP.n):
        if eps(K_eta(i)) != i:
            return fail("triangle-K", KP.render(i))
    return PASS


def check_counit_triangle(L: OrthomodularPoset) -> Verdict:
    """``U(epsilon_L) . eta_{U(L)} = id`` on U(L)."""
    eta = unit_eta(L.carrier)
    eps = counit_epsilon(L)
    for x in range(L.n):
        if eps(eta(x)) != x:
            return fail("triangle-U", L.elements[x])
    return PASS


def check_naturality(component: str, f) -> Verdict:
    """Naturality square of ``eta`` or ``mu`` at a PosetMorphism f, or of
    ``epsilon`` at an OMPMorphism f."""
    if component == "eta":
        P, Q = f.source, f.target
        for x in range(P.n):
            if image_chain(f.mapping, eta_chain(P, x), Q) != eta_chain(Q, f(x)):
                return fail("eta", P.elements[x])
        return PASS
    if component == "mu":
        Kf = kalmbach_map(f)
        KP, KQ = kalmbach_extend(f.source), kalmbach_extend(f.target)
        KKP = kalmbach_extend(KP.poset)
        for X in KKP.chains:
            lhs = image_chain(f.mapping, mu_chain(KP, X), f.target)
            rhs = mu_chain(KQ, image_chain(Kf.mapping, X, KQ.poset))
            if lhs != rhs:
                return fail("mu", KP.poset.render_chain(X))
        return PASS
    if component == "epsilon":
        L1, L2 = f.source, f.target
        K1 = kalmbach_extend(L1.carrier)
        for C in K1.chains:
            lhs = f(epsilon_value(L1, C))
            rhs = epsilon_value(L2, image_chain(f.mapping, C, L2.carrier))
            if lhs != rhs:
                return fail("epsilon", L1.carrier.render_chain(C))
        return PASS
    raise ValueError(f"component must be eta, mu or epsilon, not {component!r}")


def check_functoriality(f: PosetMorphism, g: PosetMorphism | None = None) -> Verdict:
    """K(id) = id, and K(g . f) = K(g) . K(f) when g is given."""
    KP = kalmbach_extend(f.source)
    if kalmbach_map(PosetMorphism.identity(f.source)).mapping != tuple(range(KP.n)):
        return fail("identity", repr(f.source))
    if g is None:
        return PASS
    composite = kalmbach_map(f.then(g))
    stepwise = kalmbach_map(f).then(kalmbach_map(g))
    for i in range(KP.n):
        if composite(i) != stepwise(i):
            return fail("composition", KP.render(i))
    return PASS


def check_lattice_property(KP: KalmbachPoset) -> Verdict:
    """Every pair of K(P) has a join and a meet; requires P to be a lattice."""
    base = KP.base.is_lattice()
    if not base:
        raise BaseNotLattice(f"base poset has no {base.rule} for {base.witness}")
    return KP.poset.is_lattice()
