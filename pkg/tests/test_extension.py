import itertools
import random

import pytest
from hypothesis import given, settings

from strategies import random_posets

from kalmbach.errors import BaseNotLattice
from kalmbach.extension import (
    check_counit_triangle,
    check_embedding,
    check_functoriality,
    check_lattice_property,
    check_monad_laws,
    check_naturality,
    check_unit_triangle,
    counit_epsilon,
    eta_chain,
    kalmbach_extend,
    kalmbach_leq,
    kalmbach_map,
    kalmbach_perp,
    monad_mu,
    mu_chain,
    random_even_chain,
    unit_eta,
)
from kalmbach.omp import boolean_four
from kalmbach.poset import (
    PosetMorphism,
    all_bounded_posets,
    all_chains,
    chain_poset,
    diamond,
    enumerate_morphisms,
    validate_poset,
)

C2, C3, D = chain_poset(2), chain_poset(3), diamond()


def ch(P, text):
    return P.parse_chain(text)


def naive_join(P, x, y):
    uppers = [z for z in range(P.n) if P.le(x, z) and P.le(y, z)]
    least = [z for z in uppers if all(P.le(z, w) for w in uppers)]
    return least[0] if least else None


def naive_omp_check(P, perp):
    """The orthomodular poset axioms by direct quantification."""
    n = range(P.n)
    for x in n:
        if perp[perp[x]] != x:
            return False
        lower = [z for z in n if P.le(z, x) and P.le(z, perp[x])]
        if lower != [P.bottom]:
            return False
        for y in n:
            if P.le(x, y) and not P.le(perp[y], perp[x]):
                return False
            if P.le(x, perp[y]) and naive_join(P, x, y) is None:
                return False
            if P.le(x, y):
                j = naive_join(P, x, perp[y])
                if j is None or naive_join(P, x, perp[j]) != y:
                    return False
    return True


def sandwich_by_intervals(P, C, D):
    """C <= D iff every block [x, y] of C lies inside some block of D,
    phrased through interval membership."""
    def interval(lo, hi):
        return {z for z in range(P.n) if P.le(lo, z) and P.le(z, hi)}

    blocks_d = [interval(D[j], D[j + 1]) for j in range(0, len(D), 2)]
    return all(
        any({C[i], C[i + 1]} <= b and interval(C[i], C[i + 1]) <= b for b in blocks_d)
        for i in range(0, len(C), 2)
    )


def test_leq_examples():
    for c in all_chains(C3):
        assert kalmbach_leq(C3, (), c)
    assert kalmbach_leq(C3, ch(C3, "[0<a]"), ch(C3, "[0<1]"))
    assert not kalmbach_leq(C3, ch(C3, "[0<a]"), ch(C3, "[a<1]"))


def test_leq_matches_interval_reading():
    for P in all_bounded_posets(5):
        chains = all_chains(P)
        for C, E in itertools.product(chains, repeat=2):
            assert kalmbach_leq(P, C, E) == sandwich_by_intervals(P, C, E)


def test_perp_examples():
    assert kalmbach_perp(C3, ()) == ch(C3, "[0<1]")
    assert kalmbach_perp(C3, ch(C3, "[0<1]")) == ()
    assert kalmbach_perp(C3, ch(C3, "[0<a]")) == ch(C3, "[a<1]")


def test_extend_examples():
    K2 = kalmbach_extend(C2)
    assert K2.poset.elements == ("[]", "[0<1]")
    K3 = kalmbach_extend(C3)
    assert K3.poset.elements == ("[]", "[0<a]", "[0<1]", "[a<1]")
    assert K3.omp.perp(1) == 3
    assert not K3.poset.comparable(1, 3)
    KD = kalmbach_extend(D)
    assert sorted(KD.poset.elements) == sorted(["[]", "[0<a]", "[0<b]", "[0<1]", "[a<1]", "[b<1]"])
    assert KD.poset.elements[KD.poset.bottom] == "[]"
    assert KD.poset.elements[KD.poset.top] == "[0<1]"


def test_extension_is_omp_by_naive_check():
    for P in all_bounded_posets(5):
        K = kalmbach_extend(P)
        assert naive_omp_check(K.poset, K.omp.complement)
        assert check_embedding(P)


@settings(max_examples=40, deadline=None)
@given(random_posets(max_size=6))
def test_extension_is_omp_on_random_posets(P):
    K = kalmbach_extend(P)
    assert naive_omp_check(K.poset, K.omp.complement)
    assert check_embedding(P)


def test_kalmbach_map_examples():
    up = PosetMorphism(C3, C2, (0, 1, 1))
    down = PosetMorphism(C3, C2, (0, 0, 1))
    K3, K2 = kalmbach_extend(C3), kalmbach_extend(C2)
    Kup, Kdown = kalmbach_map(up), kalmbach_map(down)
    assert K2.chains[Kup(K3.index[ch(C3, "[0<a]")])] == ch(C2, "[0<1]")
    assert K2.chains[Kup(K3.index[ch(C3, "[a<1]")])] == ()
    assert K2.chains[Kdown(K3.index[ch(C3, "[0<a]")])] == ()
    assert kalmbach_map(PosetMorphism.identity(D)).mapping == tuple(range(6))


def test_functoriality_small():
    posets = list(all_bounded_posets(4))
    for P, Q, R in itertools.product(posets, repeat=3):
        for f in enumerate_morphisms(P, Q):
            for g in enumerate_morphisms(Q, R):
                assert check_functoriality(f, g)


def test_eta_examples():
    eta = unit_eta(C3)
    K = kalmbach_extend(C3)
    assert K.chains[eta(0)] == ()
    assert eta(2) == K.poset.top
    assert K.chains[eta(1)] == ch(C3, "[0<a]")


def test_epsilon_examples():
    B = boolean_four()
    eps = counit_epsilon(B)
    K = kalmbach_extend(B.carrier)
    a, b = B.carrier.index["a"], B.carrier.index["b"]
    assert eps(K.index[()]) == 0
    assert eps(K.index[ch(B.carrier, "[0<a]")]) == a
    assert eps(K.index[ch(B.carrier, "[a<1]")]) == b


def test_mu_examples():
    K = kalmbach_extend(C3)
    T = K.poset
    assert mu_chain(K, ()) == ()
    outer = T.parse_chain("[[0<a]<[0<1]]")
    assert mu_chain(K, outer) == ch(C3, "[a<1]")
    for i, C in enumerate(K.chains):
        if i != T.bottom:
            assert mu_chain(K, (T.bottom, i)) == C


def test_mu_is_a_morphism_and_sizes():
    mu = monad_mu(C3)
    assert len(mu.source.elements) == 6 and len(mu.target.elements) == 4
    assert kalmbach_extend(C2).n == 2


def test_monad_laws_exhaustive_up_to_four():
    """Stronger than the sampled run: every element of T^3 at size 4."""
    for P in all_bounded_posets(4):
        v = check_monad_laws(P, "exhaustive")
        assert v, v
        assert v.info["T3_checked"] == v.info["T3_distinct"]


def test_monad_laws_examples():
    assert check_monad_laws(C2)
    v = check_monad_laws(C3)
    assert v.info["T"] == 4 and v.info["T2"] == 6


def test_sampled_mode_draws_requested_count():
    for P in all_bounded_posets(4, min_size=4):
        v = check_monad_laws(P, "sampled", seed=0, samples=1000)
        assert v
        assert v.info["T3_checked"] == 1000


def test_random_even_chain_reaches_everything():
    """The sampler can produce every even chain of a small poset."""
    Q = kalmbach_extend(kalmbach_extend(C3).poset).poset
    rng = random.Random(0)
    seen = {random_even_chain(Q, rng) for _ in range(5000)}
    assert seen == set(all_chains(Q))


def test_triangles():
    for P in all_bounded_posets(4):
        assert check_unit_triangle(P)
        assert check_counit_triangle(kalmbach_extend(P).omp)
    assert check_counit_triangle(boolean_four())


def test_naturality_examples():
    assert check_naturality("eta", PosetMorphism.identity(C3))
    for P, Q in itertools.product(list(all_bounded_posets(3)), repeat=2):
        for f in enumerate_morphisms(P, Q):
            assert check_naturality("eta", f)
            assert check_naturality("mu", f)


def test_lattice_examples():
    assert check_lattice_property(kalmbach_extend(C2))
    assert check_lattice_property(kalmbach_extend(C3))
    assert check_lattice_property(kalmbach_extend(D))


def test_lattice_requires_lattice_base():
    bowtie = validate_poset(
        ["0", "a", "b", "c", "d", "1"],
        [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
    )
    with pytest.raises(BaseNotLattice):
        check_lattice_property(kalmbach_extend(bowtie))


def test_eta_chain_of_bottom_is_empty():
    for P in all_bounded_posets(5):
        assert eta_chain(P, P.bottom) == ()
