"""Exhaustive law suites over enumerated instances, producing JSON reports."""

from __future__ import annotations

import collections
import itertools
from dataclasses import dataclass, field

from .algebras import (
    check_algebra_laws,
    check_algebra_morphism,
    check_auxiliary_claim,
    check_g_morphism_equation,
    enumerate_algebras,
    roundtrip_EG,
    roundtrip_GE,
    structure_map_mA,
)
from .effect import (
    EAMorphism,
    all_effect_algebras,
    check_ea_axioms,
    enumerate_maps,
    lemma1_suite,
    roundtrip_dposet,
)
from .errors import KalmbachError, Verdict, fail
from .extension import (
    check_counit_triangle,
    check_embedding,
    check_functoriality,
    check_lattice_property,
    check_monad_laws,
    check_naturality,
    check_unit_triangle,
    kalmbach_extend,
)
from .omp import OMPMorphism, all_omps, check_omp_morphism, enumerate_omp_maps
from .poset import BoundedPoset, all_bounded_posets, enumerate_morphisms


def describe(P: BoundedPoset) -> str:
    covers = ",".join(f"{a}<{b}" for a, b in P.cover_names())
    return f"{{{','.join(P.elements)} | {covers}}}"


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    details: list = field(default_factory=list)

    def record(self, instance: str, check: str, verdict: Verdict):
        self.checked.append((instance, check))
        if not verdict:
            self.failures.append({"instance": instance, "check": check, **verdict.to_dict()})

    def guard(self, instance: str, check: str, fn, *args):
        """Run a checker; an exception counts as a failure with its message."""
        try:
            verdict = fn(*args)
        except KalmbachError as exc:
            verdict = fail(type(exc).__name__, str(exc))
        self.record(instance, check, verdict)
        return verdict

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            **self.params,
            "instances": len({i for i, _ in self.checked}),
            "checks": len(self.checked),
            "passed": len(self.checked) - len(self.failures),
            "failed": len(self.failures),
            "failures": sorted(self.failures, key=lambda f: (f["instance"], f["check"])),
            "details": sorted(self.details, key=lambda d: str(d.get("instance", ""))),
        }


def laws_omp(max_size: int) -> Report:
    """K(P) is an OMP (asserted while building) and eta embeds P."""
    rep = Report("omp", {"max_size": max_size})
    for P in all_bounded_posets(max_size):
        name = describe(P)
        rep.guard(name, "K-is-omp", lambda P=P: kalmbach_extend(P).omp.verdict)
        rep.guard(name, "embedding", check_embedding, P)
        rep.details.append({"instance": name, "K": kalmbach_extend(P).n})
    return rep


def laws_lattice(max_size: int) -> Report:
    rep = Report("lattice", {"max_size": max_size})
    for P in all_bounded_posets(max_size):
        if P.is_lattice():
            rep.guard(describe(P), "K-lattice", lambda P=P: check_lattice_property(kalmbach_extend(P)))
    return rep


def laws_monad(
    max_size: int,
    seed: int = 0,
    samples: int = 1000,
    exhaustive_upto: int = 3,
    unit_upto: int | None = None,
) -> Report:
    """Associativity exhaustively up to ``exhaustive_upto``, sampled up to
    ``max_size``; unit laws alone on larger posets up to ``unit_upto``."""
    unit_upto = max(max_size, unit_upto or 0)
    rep = Report("monad", {"max_size": max_size, "seed": seed, "samples": samples, "unit_max_size": unit_upto})
    for P in all_bounded_posets(unit_upto):
        if P.n <= exhaustive_upto:
            mode = "exhaustive"
        elif P.n <= max_size:
            mode = "sampled"
        else:
            mode = "none"
        v = rep.guard(describe(P), f"monad-{mode}", check_monad_laws, P, mode, seed, samples)
        rep.details.append({"instance": describe(P), "mode": mode, **v.info})
    return rep


def laws_adjunction(max_size: int, omp_size: int = 5) -> Report:
    rep = Report("adjunction", {"max_size": max_size, "omp_size": omp_size})
    for P in all_bounded_posets(max_size):
        rep.guard(describe(P), "triangle-K", check_unit_triangle, P)
        KP = kalmbach_extend(P)
        rep.guard("K" + describe(P), "triangle-U", check_counit_triangle, KP.omp)
    for L in all_omps(omp_size):
        rep.guard(describe(L.carrier) + f" '{L.complement}", "triangle-U", check_counit_triangle, L)
    return rep


def laws_naturality(max_size: int, mu_size: int = 3) -> Report:
    rep = Report("naturality", {"max_size": max_size, "mu_size": mu_size})
    posets = list(all_bounded_posets(max_size))
    for P in posets:
        for Q in posets:
            for f in enumerate_morphisms(P, Q):
                inst = f"{describe(P)} -> {describe(Q)} {f.mapping}"
                rep.guard(inst, "eta", check_naturality, "eta", f)
                if P.n <= mu_size and Q.n <= mu_size:
                    rep.guard(inst, "mu", check_naturality, "mu", f)
                    rep.guard(inst, "functor", check_functoriality, f)
    omps = list(all_omps(4))
    for L1 in omps:
        for L2 in omps:
            for g in enumerate_omp_maps(L1, L2):
                if check_omp_morphism(g, L1, L2):
                    inst = f"{describe(L1.carrier)} -> {describe(L2.carrier)} {g}"
                    rep.guard(inst, "epsilon", check_naturality, "epsilon", OMPMorphism(L1, L2, g))
    return rep


def laws_lemma1(max_size: int) -> Report:
    rep = Report("lemma1", {"max_size": max_size})
    for E in all_effect_algebras(max_size):
        name = ea_name(E)
        rep.guard(name, "axioms", check_ea_axioms, E)
        rep.guard(name, "lemma1", lemma1_suite, E)
        rep.guard(name, "DP-roundtrip", roundtrip_dposet, E)
    return rep


def laws_algebra(max_size: int) -> Report:
    """Algebra laws, auxiliary claim and GE round trip for every algebra."""
    rep = Report("algebra", {"max_size": max_size})
    for A in all_bounded_posets(max_size):
        algebras = list(enumerate_algebras(A))
        for k, M in enumerate(algebras):
            name = f"{describe(A)} #{k}"
            rep.guard(name, "laws", check_algebra_laws, A, M.alpha)
            rep.guard(name, "auxiliary", check_auxiliary_claim, M)
        rep.details.append({"instance": describe(A), "algebras": len(algebras)})
    return rep


def laws_equation(max_size: int) -> Report:
    """Equation for G on morphisms, and EA morphisms = algebra morphisms."""
    rep = Report("equation", {"max_size": max_size})
    eas = list(all_effect_algebras(max_size))
    algs = {E: structure_map_mA(E) for E in eas}
    for A in eas:
        for B in eas:
            inst = f"{ea_name(A)} -> {ea_name(B)}"
            ea_maps = set(enumerate_maps(A, B))
            for f in sorted(ea_maps):
                rep.guard(f"{inst} {f}", "equation", check_g_morphism_equation, EAMorphism(A, B, f))
            alg_maps = {
                h
                for h in _all_maps(A.n, B.n)
                if check_algebra_morphism(h, algs[A], algs[B])
            }
            verdict = Verdict(True) if alg_maps == ea_maps else fail(
                "morphisms-coincide", sorted(alg_maps ^ ea_maps)[0]
            )
            rep.record(inst, "morphisms-coincide", verdict)
    return rep


def roundtrip(direction: str, max_size: int) -> Report:
    rep = Report(f"roundtrip-{direction}", {"max_size": max_size})
    if direction == "EG":
        for E in all_effect_algebras(max_size):
            rep.guard(ea_name(E), "EG", roundtrip_EG, E)
    elif direction == "DP":
        for E in all_effect_algebras(max_size):
            rep.guard(ea_name(E), "DP", roundtrip_dposet, E)
    elif direction == "GE":
        counts = collections.Counter(E.order for E in all_effect_algebras(max_size))
        for A in all_bounded_posets(max_size):
            algebras = list(enumerate_algebras(A))
            for k, M in enumerate(algebras):
                rep.guard(f"{describe(A)} #{k}", "GE", roundtrip_GE, M)
            verdict = Verdict(True) if len(algebras) == counts[A] else fail(
                "bijection-count", len(algebras), counts[A]
            )
            rep.record(describe(A), "bijection-count", verdict)
            rep.details.append(
                {"instance": describe(A), "algebras": len(algebras), "effect_algebras": counts[A]}
            )
    else:
        raise ValueError(f"direction must be EG, GE or DP, not {direction!r}")
    return rep


def ea_name(E) -> str:
    sums = ",".join(
        f"{E.elements[a]}+{E.elements[b]}={E.elements[c]}"
        for a, row in enumerate(E.oplus)
        for b, c in enumerate(row)
        if c is not None and a <= b and a != E.zero
    )
    return f"{{{','.join(E.elements)} | {sums}}}"


def _all_maps(n: int, m: int):
    return itertools.product(range(m), repeat=n)


SCOPES = {
    "omp": (laws_omp, 5),
    "lattice": (laws_lattice, 5),
    "monad": (laws_monad, 4),
    "adjunction": (laws_adjunction, 4),
    "naturality": (laws_naturality, 4),
    "lemma1": (laws_lemma1, 5),
    "algebra": (laws_algebra, 4),
    "equation": (laws_equation, 4),
}
