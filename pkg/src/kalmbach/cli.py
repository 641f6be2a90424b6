"""Command-line interface.

Exit codes: 0 success, 2 unreadable input, 3 invalid structure or options,
4 a law failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats, suites
from .algebras import enumerate_algebras, check_algebra_laws, check_auxiliary_claim
from .effect import check_ea_axioms, enumerate_effect_algebras, lemma1_suite
from .errors import InternalLawFailure, KalmbachError, ValidationError
from .extension import check_embedding, kalmbach_extend
from .omp import enumerate_omps
from .poset import enumerate_bounded_posets

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_LAW = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str, kind: str = "auto"):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None
    doc = formats.loads(text, path)
    return formats.read_structure(doc, kind)


def _emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def cmd_extend(args) -> int:
    kind, P = _read(args.file, "poset")
    K = kalmbach_extend(P)
    _emit(formats.dumps(formats.omp_to_json(K.omp)), args.output)
    if args.dot:
        Path(args.dot).write_text(formats.poset_dot(K.poset, K.omp.complement), encoding="utf-8")
    return EXIT_OK


def cmd_check(args) -> int:
    kind, obj = _read(args.file, args.kind)
    results = {}
    if kind == "poset":
        results["embedding"] = check_embedding(obj)
        results["K-is-omp"] = kalmbach_extend(obj).omp.verdict
    elif kind == "omp":
        results["omp-axioms"] = obj.verdict
    elif kind == "ea":
        results["ea-axioms"] = check_ea_axioms(obj)
        if results["ea-axioms"]:
            results["lemma1"] = lemma1_suite(obj)
    elif kind == "algebra":
        results["algebra-laws"] = check_algebra_laws(obj.carrier, obj.alpha)
        if results["algebra-laws"]:
            results["auxiliary"] = check_auxiliary_claim(obj)
    report = {"kind": kind, "checks": {k: v.to_dict() for k, v in results.items()}}
    ok = all(results.values())
    report["ok"] = ok
    _emit(formats.dumps(report), args.output)
    return EXIT_OK if ok else EXIT_LAW


def cmd_laws(args) -> int:
    fn, default = suites.SCOPES[args.scope]
    size = args.max_size or default
    if args.scope == "monad":
        rep = fn(size, seed=args.seed, samples=args.samples, unit_upto=args.unit_max_size)
    else:
        rep = fn(size)
    _emit(formats.dumps(rep.to_dict()), args.output)
    return EXIT_OK if rep.ok else EXIT_LAW


def cmd_roundtrip(args) -> int:
    size = args.max_size or (4 if args.direction == "GE" else 5)
    rep = suites.roundtrip(args.direction, size)
    _emit(formats.dumps(rep.to_dict()), args.output)
    return EXIT_OK if rep.ok else EXIT_LAW


def cmd_enumerate(args) -> int:
    n = args.size
    if args.kind == "posets":
        docs = [formats.poset_to_json(P) for P in enumerate_bounded_posets(n, up_to_isomorphism=args.iso)]
    elif args.kind == "eas":
        docs = [formats.ea_to_json(E) for E in enumerate_effect_algebras(n)]
    elif args.kind == "omps":
        docs = [formats.omp_to_json(A) for A in enumerate_omps(n)]
    else:
        docs = [
            formats.algebra_to_json(M)
            for P in enumerate_bounded_posets(n, up_to_isomorphism=args.iso)
            for M in enumerate_algebras(P)
        ]
    _emit(formats.dumps(docs), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    kind, obj = _read(args.file, args.kind)
    _emit(formats.structure_dot(kind, obj), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kalmbach",
        description="Law checks for the Kalmbach monad and effect algebras on small finite instances.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    kinds = ["auto", "poset", "omp", "ea", "algebra"]

    p = sub.add_parser("extend", help="build K(P) from a poset file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--dot", help="also write the Hasse diagram of K(P) here")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("check", help="run the axiom checker for a structure file")
    p.add_argument("file")
    p.add_argument("--kind", choices=kinds, default="auto")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("laws", help="run a law suite over enumerated instances")
    p.add_argument("scope", choices=sorted(suites.SCOPES))
    p.add_argument("--max-size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--unit-max-size", type=int, help="monad: also check the unit laws up to this size")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("roundtrip", help="check EG = Id, GE = Id or the D-poset round trip")
    p.add_argument("direction", choices=["EG", "GE", "DP"])
    p.add_argument("--max-size", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("enumerate", help="list every structure of one size as JSON")
    p.add_argument("kind", choices=["posets", "eas", "omps", "algebras"])
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--iso", action="store_true", help="posets up to isomorphism")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="Hasse diagram of a structure as DOT")
    p.add_argument("file")
    p.add_argument("--kind", choices=kinds, default="auto")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except formats.FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalLawFailure, KalmbachError) as exc:
        print(f"law failure: {exc}", file=sys.stderr)
        return EXIT_LAW


if __name__ == "__main__":
    sys.exit(main())
