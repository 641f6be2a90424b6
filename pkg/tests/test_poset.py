import itertools

import pytest
from hypothesis import given, settings

from strategies import random_posets

from kalmbach.errors import CapExceeded, CycleDetected, InvalidChain, NoBound, TrivialPoset
from kalmbach.poset import (
    PosetMorphism,
    all_bounded_posets,
    all_chains,
    chain_poset,
    diamond,
    enumerate_bounded_posets,
    enumerate_morphisms,
    is_morphism,
    validate_poset,
)


def naive_chains(P, parity):
    """Every subset of P filtered for being a chain, in canonical form."""
    found = []
    for r in range(P.n + 1):
        if parity == "even" and r % 2:
            continue
        for subset in itertools.combinations(range(P.n), r):
            if all(P.comparable(x, y) for x, y in itertools.combinations(subset, 2)):
                found.append(P.chain(subset))
    return sorted(found)


def naive_posets(n):
    """Labeled bounded posets on 0, a, b, ..., 1 by brute force over every
    relation on the middle elements."""
    middle = n - 2
    pairs = [(i, j) for i in range(middle) for j in range(middle) if i != j]
    found = set()
    for bits in itertools.product([False, True], repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((j, k) in rel and (i, k) not in rel for i, j in rel for k in range(middle) if k != i):
            continue
        found.add(frozenset(rel))
    return found


def test_validate_three_chain():
    P = validate_poset(["0", "a", "1"], [("0", "a"), ("a", "1")])
    assert P.elements[P.bottom] == "0" and P.elements[P.top] == "1"
    assert P.le(P.index["0"], P.index["1"])


def test_validate_cycle():
    with pytest.raises(CycleDetected):
        validate_poset(["0", "1"], [("0", "1"), ("1", "0")])


def test_validate_diamond():
    P = validate_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert P.n == 4
    assert not P.comparable(P.index["a"], P.index["b"])
    assert P == diamond()


def test_validate_rejects_one_element_and_missing_bounds():
    with pytest.raises(TrivialPoset):
        validate_poset(["0"], [])
    with pytest.raises(NoBound):
        validate_poset(["0", "a", "b"], [("0", "a"), ("0", "b")])


def test_is_morphism_examples():
    C3, C2 = chain_poset(3), chain_poset(2)
    assert is_morphism((0, 1, 2), C3, C3)
    assert is_morphism((0, 1, 1), C3, C2)
    v = is_morphism((0, 1, 0), C3, C2)
    assert not v
    assert v.witness == ("a", "1")


def test_all_chains_examples():
    C2, C3, D = chain_poset(2), chain_poset(3), diamond()
    assert [C2.render_chain(c) for c in all_chains(C2)] == ["[]", "[0<1]"]
    assert [C3.render_chain(c) for c in all_chains(C3)] == ["[]", "[0<a]", "[0<1]", "[a<1]"]
    assert sorted(D.render_chain(c) for c in all_chains(D)) == sorted(
        ["[]", "[0<a]", "[0<b]", "[0<1]", "[a<1]", "[b<1]"]
    )


def test_all_chains_matches_powerset_filter_up_to_six():
    for P in all_bounded_posets(6, cap=6):
        for parity in ("even", "any"):
            assert sorted(all_chains(P, parity)) == naive_chains(P, parity)


def test_enumeration_counts():
    assert len(list(enumerate_bounded_posets(2))) == 1
    assert len(list(enumerate_bounded_posets(3))) == 1
    four = list(enumerate_bounded_posets(4))
    assert len(four) == 3
    assert {tuple(P.cover_names()) for P in four} == {
        (("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")),
        (("0", "a"), ("a", "b"), ("b", "1")),
        (("0", "b"), ("a", "1"), ("b", "a")),
    }


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_enumeration_matches_brute_force(n):
    assert len(list(enumerate_bounded_posets(n, cap=6))) == len(naive_posets(n))


def test_enumeration_up_to_isomorphism():
    assert len(list(enumerate_bounded_posets(4, up_to_isomorphism=True))) == 2
    # 5 unlabeled posets on 3 points
    assert len(list(enumerate_bounded_posets(5, up_to_isomorphism=True))) == 5


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_bounded_posets(6))


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("KALMBACH_SIZE_CAP", "6")
    assert len(list(enumerate_bounded_posets(6))) == len(naive_posets(6))


def test_morphism_counts():
    C2, C3 = chain_poset(2), chain_poset(3)
    assert len(list(enumerate_morphisms(C2, C2))) == 1
    assert len(list(enumerate_morphisms(C3, C2))) == 2
    assert len(list(enumerate_morphisms(C2, C3))) == 1


def test_morphisms_match_brute_force():
    posets = list(all_bounded_posets(4))
    for P in posets:
        for Q in posets:
            brute = {f for f in itertools.product(range(Q.n), repeat=P.n) if is_morphism(f, P, Q)}
            assert {f.mapping for f in enumerate_morphisms(P, Q)} == brute


def test_composition_and_identity_are_morphisms():
    posets = list(all_bounded_posets(4))
    for P in posets:
        assert is_morphism(PosetMorphism.identity(P).mapping, P, P)
        for Q in posets:
            for f in enumerate_morphisms(P, Q):
                for R in posets:
                    for g in enumerate_morphisms(Q, R):
                        assert is_morphism(f.then(g).mapping, P, R)


def test_parse_chain():
    P = diamond()
    assert P.parse_chain("[0<a]") == (P.index["0"], P.index["a"])
    assert P.parse_chain("[]") == ()
    with pytest.raises(InvalidChain):
        P.parse_chain("[a<b]")


@settings(max_examples=200, deadline=None)
@given(random_posets())
def test_order_axioms_on_constructed_posets(P):
    for x in range(P.n):
        assert P.le(x, x)
        assert P.le(P.bottom, x) and P.le(x, P.top)
        for y in range(P.n):
            if P.le(x, y) and P.le(y, x):
                assert x == y
            for z in range(P.n):
                if P.le(x, y) and P.le(y, z):
                    assert P.le(x, z)


@settings(max_examples=100, deadline=None)
@given(random_posets())
def test_covers_generate_the_order(P):
    again = validate_poset(list(P.elements), P.cover_names())
    assert again == P
