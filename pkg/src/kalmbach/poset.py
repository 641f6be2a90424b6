"""Finite bounded posets, their morphisms, and chain machinery.

Elements are addressed by index ``0..n-1``; ``elements`` holds the display
names. A chain is a plain tuple of indices listed in increasing poset order,
so two chains are equal exactly when their tuples are.
"""

from __future__ import annotations

import itertools
import os
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    CycleDetected,
    InvalidChain,
    NoBound,
    NotAMorphism,
    NotAChain,
    NotTransitive,
    TrivialPoset,
    UnknownElement,
    Verdict,
    PASS,
    fail,
)

Chain = tuple  # tuple[int, ...] in increasing order

DEFAULT_CAP = 5
CAP_ENV = "KALMBACH_SIZE_CAP"


def size_cap(default: int = DEFAULT_CAP) -> int:
    """The enumeration cap, raised (or lowered) by ``$KALMBACH_SIZE_CAP``."""
    value = os.environ.get(CAP_ENV)
    return int(value) if value else default


def element_names(n: int) -> list[str]:
    """Labels used by the enumerators: ``0, a, b, ..., 1``."""
    if n < 2:
        raise TrivialPoset("a bounded poset needs at least two elements")
    middle = list(string.ascii_lowercase[: n - 2])
    if len(middle) < n - 2:
        middle += [f"x{i}" for i in range(len(middle), n - 2)]
    return ["0", *middle, "1"]


@dataclass(frozen=True, eq=False)
class BoundedPoset:
    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    bottom: int
    top: int

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise UnknownElement(f"duplicate element names in {self.elements}")
        m = self.matrix
        if m.shape != (n, n):
            raise ValueError("leq must be an n x n relation")
        if not m.diagonal().all():
            i = int(np.flatnonzero(~m.diagonal())[0])
            raise NotTransitive(f"relation is not reflexive at {self.elements[i]!r}")
        both = m & m.T & ~np.eye(n, dtype=bool)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleDetected(
                f"antisymmetry fails: {self.elements[i]!r} <= {self.elements[j]!r} <= {self.elements[i]!r}"
            )
        mi = m.astype(np.int64)
        composed = (mi @ mi) > 0
        if (composed & ~m).any():
            i, j = map(int, np.argwhere(composed & ~m)[0])
            raise NotTransitive(
                f"transitivity fails: {self.elements[i]!r} <= ... <= {self.elements[j]!r} but not directly"
            )
        if not (m[self.bottom, :].all() and m[:, self.top].all()):
            raise NoBound(
                f"{self.elements[self.bottom]!r}/{self.elements[self.top]!r} are not bottom/top"
            )
        if self.bottom == self.top:
            raise TrivialPoset("bottom and top coincide")

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.leq, dtype=bool).reshape(len(self.elements), len(self.elements))

    @cached_property
    def _key(self):
        return (self.elements, self.leq, self.bottom, self.top)

    def __eq__(self, other):
        if not isinstance(other, BoundedPoset):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"BoundedPoset({len(self)} elements, covers={self.cover_names()})"

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    def comparable(self, x: int, y: int) -> bool:
        return self.leq[x][y] or self.leq[y][x]

    @cached_property
    def height_key(self) -> tuple[int, ...]:
        """Size of each principal down-set; strictly increases along any chain."""
        return tuple(int(c) for c in self.matrix.sum(axis=0))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for x in range(self.n):
            for y in range(self.n):
                if self.lt(x, y) and not any(
                    self.lt(x, z) and self.lt(z, y) for z in range(self.n)
                ):
                    out.append((x, y))
        return tuple(out)

    def cover_names(self) -> list[tuple[str, str]]:
        return [(self.elements[x], self.elements[y]) for x, y in self.covers]

    def join(self, x: int, y: int) -> int | None:
        """Least upper bound, or None when it does not exist."""
        ups = [z for z in range(self.n) if self.leq[x][z] and self.leq[y][z]]
        for z in ups:
            if all(self.leq[z][u] for u in ups):
                return z
        return None

    def meet(self, x: int, y: int) -> int | None:
        downs = [z for z in range(self.n) if self.leq[z][x] and self.leq[z][y]]
        for z in downs:
            if all(self.leq[d][z] for d in downs):
                return z
        return None

    def is_lattice(self) -> Verdict:
        for x in range(self.n):
            for y in range(x + 1, self.n):
                if self.join(x, y) is None:
                    return fail("join", self.elements[x], self.elements[y])
                if self.meet(x, y) is None:
                    return fail("meet", self.elements[x], self.elements[y])
        return PASS

    # chains ---------------------------------------------------------------

    def is_chain(self, members: Iterable[int]) -> bool:
        members = list(members)
        return len(set(members)) == len(members) and all(
            self.comparable(x, y) for x, y in itertools.combinations(members, 2)
        )

    def chain(self, members: Iterable[int]) -> Chain:
        """Canonical (increasing) form of a set of pairwise comparable elements."""
        members = set(members)
        if not self.is_chain(members):
            raise NotAChain(f"{sorted(self.elements[m] for m in members)} is not a chain")
        return tuple(sorted(members, key=self.height_key.__getitem__))

    def render_chain(self, chain: Sequence[int]) -> str:
        return "[" + "<".join(self.elements[x] for x in chain) + "]"

    def parse_chain(self, text: str) -> Chain:
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise UnknownElement(f"chain {text!r} must be written as [x1<x2<...]")
        names = split_chain_names(text[1:-1])
        try:
            members = [self.index[name] for name in names]
        except KeyError as exc:
            raise UnknownElement(f"unknown element {exc.args[0]!r} in chain {text!r}") from None
        if not self.is_chain(members) or list(self.chain(members)) != members:
            raise InvalidChain(f"{text!r} is not a chain listed in increasing order")
        return tuple(members)


def split_chain_names(inner: str) -> list[str]:
    """Split ``a<b<c`` on top-level ``<`` only, so nested chain names survive."""
    if not inner:
        return []
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(inner):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "<" and depth == 0:
            parts.append(inner[start:i])
            start = i + 1
    parts.append(inner[start:])
    return parts


def symmetric_difference(*sets: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for s in sets:
        out ^= set(s)
    return out


def validate_poset(
    elements: Sequence[str],
    relation: Iterable[tuple[str, str]],
    mode: str = "cover",
    bottom: str | None = None,
    top: str | None = None,
) -> BoundedPoset:
    """Build a BoundedPoset from names and relation pairs.

    ``mode="cover"`` takes the reflexive-transitive closure of the pairs;
    ``mode="full"`` expects the order already transitive (reflexive pairs may
    be omitted). Bottom and top are detected when not given.
    """
    if mode not in ("cover", "full"):
        raise ValueError(f"mode must be 'cover' or 'full', not {mode!r}")
    elements = [str(e) for e in elements]
    index = {name: i for i, name in enumerate(elements)}
    if len(index) != len(elements):
        raise UnknownElement("duplicate element names")
    n = len(elements)
    if n < 2:
        raise TrivialPoset("a bounded poset needs distinct bottom and top")
    m = np.eye(n, dtype=bool)
    for a, b in relation:
        try:
            m[index[str(a)], index[str(b)]] = True
        except KeyError as exc:
            raise UnknownElement(f"relation mentions undeclared element {exc.args[0]!r}") from None
    if mode == "cover":
        m = transitive_closure(m)
    both = m & m.T & ~np.eye(n, dtype=bool)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        raise CycleDetected(f"{elements[i]!r} and {elements[j]!r} lie on a cycle")
    lo = _find_bound(m, elements, bottom, axis="bottom")
    hi = _find_bound(m, elements, top, axis="top")
    leq = tuple(tuple(bool(v) for v in row) for row in m)
    return BoundedPoset(tuple(elements), leq, lo, hi)


def transitive_closure(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    for k in range(m.shape[0]):
        m |= np.outer(m[:, k], m[k, :])
    return m


def _find_bound(m, elements, declared, axis):
    n = len(elements)
    if axis == "bottom":
        candidates = [i for i in range(n) if m[i, :].all()]
    else:
        candidates = [i for i in range(n) if m[:, i].all()]
    if declared is not None:
        if declared not in elements:
            raise UnknownElement(f"declared {axis} {declared!r} is not an element")
        i = elements.index(declared)
        if i not in candidates:
            raise NoBound(f"declared {axis} {declared!r} is not the {axis} of the order")
        return i
    if len(candidates) != 1:
        raise NoBound(f"no unique {axis} element")
    return candidates[0]


def chain_poset(n: int) -> BoundedPoset:
    """The n-element chain ``0 < a < ... < 1``."""
    names = element_names(n)
    return validate_poset(names, list(zip(names, names[1:])))


def diamond() -> BoundedPoset:
    return validate_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


# morphisms ----------------------------------------------------------------


def is_morphism(f: Sequence[int], P: BoundedPoset, Q: BoundedPoset) -> Verdict:
    """Check that ``f`` (a list: index in P -> index in Q) is isotone and bounded."""
    if len(f) != P.n or any(not 0 <= v < Q.n for v in f):
        return fail("totality", tuple(f))
    for x in range(P.n):
        for y in range(P.n):
            if P.leq[x][y] and not Q.leq[f[x]][f[y]]:
                return fail("isotone", P.elements[x], P.elements[y])
    if f[P.bottom] != Q.bottom:
        return fail("bottom", P.elements[P.bottom])
    if f[P.top] != Q.top:
        return fail("top", P.elements[P.top])
    return PASS


@dataclass(frozen=True)
class PosetMorphism:
    source: BoundedPoset
    target: BoundedPoset
    mapping: tuple[int, ...]

    def __post_init__(self):
        verdict = is_morphism(self.mapping, self.source, self.target)
        if not verdict:
            raise NotAMorphism(f"not a bounded-poset morphism: {verdict.rule} at {verdict.witness}")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def then(self, g: "PosetMorphism") -> "PosetMorphism":
        """Composite ``g . self``."""
        if g.source != self.target:
            raise ValueError("morphisms are not composable")
        return PosetMorphism(self.source, g.target, tuple(g.mapping[v] for v in self.mapping))

    @classmethod
    def identity(cls, P: BoundedPoset) -> "PosetMorphism":
        return cls(P, P, tuple(range(P.n)))

    def named(self) -> dict[str, str]:
        return {self.source.elements[x]: self.target.elements[y] for x, y in enumerate(self.mapping)}


def enumerate_morphisms(P: BoundedPoset, Q: BoundedPoset) -> Iterator[PosetMorphism]:
    """All bounded-poset morphisms P -> Q, in lexicographic order of their tables."""
    free = [x for x in range(P.n) if x not in (P.bottom, P.top)]
    # order the free points along a linear extension so isotony prunes early
    free.sort(key=P.height_key.__getitem__)
    f = [None] * P.n
    f[P.bottom], f[P.top] = Q.bottom, Q.top

    def consistent(x):
        for y in range(P.n):
            if f[y] is None or y == x:
                continue
            if P.leq[x][y] and not Q.leq[f[x]][f[y]]:
                return False
            if P.leq[y][x] and not Q.leq[f[y]][f[x]]:
                return False
        return True

    found = []

    def extend(k):
        if k == len(free):
            found.append(tuple(f))
            return
        x = free[k]
        for v in range(Q.n):
            f[x] = v
            if consistent(x):
                extend(k + 1)
        f[x] = None

    if Q.leq[Q.bottom][Q.top]:
        extend(0)
    for table in sorted(found):
        yield PosetMorphism(P, Q, table)


# enumeration --------------------------------------------------------------


def all_chains(P: BoundedPoset, parity: str = "even") -> list[Chain]:
    """Every chain of P of the requested parity (``even``, ``odd`` or ``any``),
    the empty chain included when admissible, sorted lexicographically."""
    if parity not in ("even", "odd", "any"):
        raise ValueError(f"parity must be even, odd or any, not {parity!r}")
    order = sorted(range(P.n), key=P.height_key.__getitem__)
    out: list[Chain] = []

    def grow(chain: tuple, start: int):
        out.append(chain)
        for k in range(start, len(order)):
            x = order[k]
            if not chain or P.lt(chain[-1], x):
                grow(chain + (x,), k + 1)

    grow((), 0)
    if parity == "even":
        out = [c for c in out if len(c) % 2 == 0]
    elif parity == "odd":
        out = [c for c in out if len(c) % 2 == 1]
    return sorted(out)


def enumerate_bounded_posets(
    n: int, cap: int | None = None, up_to_isomorphism: bool = False
) -> Iterator[BoundedPoset]:
    """All labeled bounded posets on ``element_names(n)`` with ``0`` first and
    ``1`` last; optionally one representative per isomorphism class."""
    cap = size_cap() if cap is None else cap
    if n < 2:
        raise TrivialPoset("bounded posets have at least two elements")
    if n > cap:
        raise CapExceeded(f"size {n} exceeds the cap {cap} (set ${CAP_ENV} to raise it)")
    names = element_names(n)
    middle = list(range(1, n - 1))
    pairs = list(itertools.combinations(middle, 2))
    seen = set()
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        m = np.eye(n, dtype=bool)
        m[0, :] = True
        m[:, n - 1] = True
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                m[i, j] = True
            elif c == 2:
                m[j, i] = True
        if (transitive_closure(m) != m).any():
            continue
        if up_to_isomorphism:
            sig = canonical_form(m)
            if sig in seen:
                continue
            seen.add(sig)
        leq = tuple(tuple(bool(v) for v in row) for row in m)
        yield BoundedPoset(tuple(names), leq, 0, n - 1)


def canonical_form(m: np.ndarray) -> tuple:
    """Lexicographically least relation matrix over relabelings of the middle
    elements; equal signatures mean isomorphic bounded posets."""
    n = m.shape[0]
    best = None
    for perm in itertools.permutations(range(1, n - 1)):
        p = [0, *perm, n - 1]
        sig = tuple(bool(m[p[i], p[j]]) for i in range(n) for j in range(n))
        if best is None or sig < best:
            best = sig
    return best


def all_bounded_posets(max_size: int, min_size: int = 2, cap: int | None = None) -> Iterator[BoundedPoset]:
    for n in range(min_size, max_size + 1):
        yield from enumerate_bounded_posets(n, cap=cap)
