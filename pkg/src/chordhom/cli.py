"""Command line interface.

Exit codes: 0 on success, 1 on mathematical failure (a differential that
does not square to zero, a failed chain-map or dictionary check), 2 on
input errors (unreadable files, schema violations, bad flags).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import documents as docs
from . import examples as corpus
from .complexes import (
    build_cyclic_complex,
    build_ho_complex,
    build_hoplus_complex,
    build_mcyc_complex,
    ho_vanishes_by_unit_differential,
)
from .dga import Augmentation, check_d_squared, check_morphism, linearize
from .homology import DSquareError, betti
from .lefschetz import (
    build_curved_category,
    dualize_tensor_algebra,
    hochschild_complex,
    lefschetz_dga,
    user_counts,
    verify_dictionary,
)
from .surgery import (
    SurgeryCountTable,
    build_lch_surgery,
    build_sh_surgery,
    build_shplus_surgery,
    builtin_ball_filling,
    empty_filling,
)

OK, MATH_FAIL, INPUT_FAIL = 0, 1, 2


class CliInputError(Exception):
    pass


def _load_document(ref: str) -> dict:
    path = Path(ref)
    if path.exists():
        try:
            return docs.loads(path.read_text())
        except docs.ParseError as exc:
            raise CliInputError(f"{ref}: {exc}")
        except OSError as exc:
            raise CliInputError(f"{ref}: {exc}")
    try:
        return corpus.example_document(ref)
    except KeyError:
        raise CliInputError(f"{ref}: no such file or bundled example")


def _load_dga(ref: str, allow_partial: bool = False):
    doc = _load_document(ref)
    try:
        return docs.dga_from_document(doc, allow_partial=allow_partial)
    except docs.ParseError as exc:
        raise CliInputError(f"{ref}: {exc}")


def cmd_validate(args) -> int:
    dga = _load_dga(args.dga, allow_partial=False)
    report = check_d_squared(dga)
    if report.ok:
        print(f"{args.dga}: valid ({len(dga.generators)} generators, d^2 = 0)")
        return OK
    for line in report.lines():
        print(line)
    return MATH_FAIL


def cmd_homology(args) -> int:
    dga = _load_dga(args.dga)
    window = (args.min_deg, args.max_deg)
    if args.complex == "lin":
        if args.augmentation:
            doc = _load_document(args.augmentation)
            try:
                eps = docs.augmentation_from_document(doc)
            except docs.ParseError as exc:
                raise CliInputError(str(exc))
        else:
            eps = Augmentation(values={})
        try:
            complex = linearize(dga, eps)
        except ValueError as exc:
            raise CliInputError(str(exc))
    else:
        builder = {
            "cyc": build_cyclic_complex,
            "hoplus": build_hoplus_complex,
            "ho": build_ho_complex,
            "mcyc": build_mcyc_complex,
        }[args.complex]
        complex = builder(dga, window, args.max_len)
    try:
        table = betti(complex)
    except DSquareError as exc:
        if complex.verdict != "EXACT":
            print(
                "mathematical failure: the length-truncated window is not a "
                f"subcomplex at max-len {args.max_len} ({exc}); truncated "
                "ranks are unavailable here"
            )
        else:
            print(f"mathematical failure: {exc}")
        return MATH_FAIL
    lo = max(window[0], min(table.ranks)) if table.ranks else window[0]
    hi = min(window[1], max(table.ranks)) if table.ranks else window[1]
    if args.complex == "lin":
        lo, hi = min(table.ranks), max(table.ranks)
    sys.stdout.write(docs.betti_to_text(table, (lo, hi)))
    if args.json:
        sys.stdout.write(docs.dumps(docs.betti_to_document(table, (lo, hi))))
    return OK


def _filling_of(ref: str):
    if ref.startswith("ball:"):
        try:
            return builtin_ball_filling(int(ref.split(":", 1)[1]))
        except ValueError as exc:
            raise CliInputError(f"bad filling {ref!r}: {exc}")
    if ref.startswith("empty:"):
        return empty_filling(int(ref.split(":", 1)[1]))
    doc = _load_document(ref)
    try:
        return docs.filling_from_document(doc)
    except docs.ParseError as exc:
        raise CliInputError(f"{ref}: {exc}")


def cmd_surgery(args) -> int:
    dga = _load_dga(args.dga)
    filling = _filling_of(args.filling)
    if args.counts:
        try:
            counts = docs.counts_from_document(_load_document(args.counts))
        except docs.ParseError as exc:
            raise CliInputError(str(exc))
    else:
        counts = SurgeryCountTable.zero()
        counts.meta["provenance"] = (
            "mixed counts default to zero; valid when every relevant disk "
            "stays in a chart around the surgery locus"
        )
    window = (args.min_deg, args.max_deg)
    builder = {
        "ch": build_lch_surgery,
        "sh+": build_shplus_surgery,
        "sh": build_sh_surgery,
    }[args.theory]
    complex = builder(filling, dga, counts, window, args.max_len)
    try:
        table = betti(complex)
    except DSquareError as exc:
        print(f"mathematical failure: {exc}")
        return MATH_FAIL
    sys.stdout.write(docs.betti_to_text(table, window))
    if args.json:
        sys.stdout.write(docs.dumps(docs.betti_to_document(table, window)))
    return OK


def cmd_augmentations(args) -> int:
    dga = _load_dga(args.dga)
    try:
        values = [v.strip() for v in args.values.split(",") if v.strip()]
    except AttributeError:
        raise CliInputError("bad value list")
    from .dga import enumerate_augmentations

    found = enumerate_augmentations(dga, values)
    print(f"{len(found)} augmentation(s) over {{{args.values}}}")
    for eps in found:
        items = ", ".join(f"{k}={v}" for k, v in sorted(eps.values.items()))
        print(f"  {{{items}}}" if items else "  {trivial}")
    return OK


def cmd_morphism(args) -> int:
    doc = _load_document(args.file)
    try:
        f = docs.morphism_from_document(doc)
    except docs.ParseError as exc:
        raise CliInputError(str(exc))
    ok, counter = check_morphism(f)
    if ok:
        print("chain map: OK")
        return OK
    print(f"chain map: FAILED at {counter}")
    return MATH_FAIL


def cmd_lefschetz(args) -> int:
    doc = _load_document(args.ainf)
    try:
        spec = docs.ainf_from_document(doc)
    except docs.ParseError as exc:
        raise CliInputError(str(exc))
    if args.dim is not None and args.dim != spec.n:
        raise CliInputError(
            f"--dim {args.dim} disagrees with the document parameter {spec.n}"
        )
    try:
        D = build_curved_category(spec, args.t_order)
    except Exception as exc:
        print(f"mathematical failure: {exc}")
        return MATH_FAIL
    if args.emit == "dga":
        dga = dualize_tensor_algebra(D)
        report = check_d_squared(dga)
        if not report.ok:
            print("mathematical failure: emitted differential does not square to zero")
            return MATH_FAIL
        sys.stdout.write(docs.dumps(docs.dga_to_document(dga)))
        return OK
    window = (args.min_deg, args.max_deg)
    if args.emit == "hochschild":
        cc = hochschild_complex(D, window, args.max_len)
        bad = cc.d_squared_report()
        if bad:
            print("mathematical failure: cyclic tensor differential does not square to zero")
            return MATH_FAIL
        table = betti(cc)
        ranks = {-d: r for d, r in table.ranks.items()}
        print("ranks by dictionary degree:")
        for d in sorted(ranks):
            if window[0] <= d <= window[1]:
                print(f"{d:>8} {ranks[d]:>6}")
        return OK
    # dictionary-check
    dual = dualize_tensor_algebra(D)
    direct = lefschetz_dga(spec, user_counts(D), spec.n, args.t_order)
    same = [g.name for g in dual.generators] == [g.name for g in direct.generators] and all(
        dual.d_gen(g.name) == direct.d_gen(g.name) for g in dual.generators
    )
    if not same:
        print("mathematical failure: dual and direct differentials disagree")
        return MATH_FAIL
    ho = build_ho_complex(dual, window, args.max_len)
    cc = hochschild_complex(D, window, args.max_len)
    try:
        ok = verify_dictionary(cc, ho)
    except ValueError as exc:
        print(f"mathematical failure: {exc}")
        return MATH_FAIL
    if not ok:
        print("mathematical failure: dictionary mismatch")
        return MATH_FAIL
    print("dictionary: OK (dual DGA, direct DGA, and cyclic tensor complex agree)")
    return OK


def cmd_examples(args) -> int:
    if args.action == "list":
        for name in corpus.example_names():
            print(name)
        return OK
    try:
        doc = corpus.example_document(args.name)
    except KeyError as exc:
        raise CliInputError(str(exc))
    sys.stdout.write(docs.dumps(doc))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordhom",
        description="exact invariants of chord algebras and surgery complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check gradings, ports, and d^2 = 0")
    p.add_argument("dga")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("homology", help="Betti table of a derived complex")
    p.add_argument("dga")
    p.add_argument("--complex", choices=["lin", "cyc", "hoplus", "ho", "mcyc"], required=True)
    p.add_argument("--min-deg", type=int, default=0)
    p.add_argument("--max-deg", type=int, default=8)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--augmentation", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("surgery", help="Betti table of a surgery complex")
    p.add_argument("dga")
    p.add_argument("--filling", required=True, help="ball:<n>, empty:<n>, or a filling document")
    p.add_argument("--theory", choices=["ch", "sh+", "sh"], required=True)
    p.add_argument("--min-deg", type=int, default=0)
    p.add_argument("--max-deg", type=int, default=8)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--counts", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("augmentations", help="brute-force augmentation search")
    p.add_argument("dga")
    p.add_argument("--values", required=True, help="comma-separated rationals")
    p.set_defaults(func=cmd_augmentations)

    p = sub.add_parser("morphism", help="verify a chain-map document")
    p.add_argument("file")
    p.add_argument("--check", action="store_true", default=True)
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("lefschetz", help="vanishing-cycle pipeline")
    p.add_argument("ainf")
    p.add_argument("--t-order", type=int, required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--emit", choices=["dga", "hochschild", "dictionary-check"], required=True)
    p.add_argument("--min-deg", type=int, default=0)
    p.add_argument("--max-deg", type=int, default=6)
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(func=cmd_lefschetz)

    p = sub.add_parser("examples", help="bundled document corpus")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "examples" and args.action == "emit" and not args.name:
        print("examples emit needs a name", file=sys.stderr)
        return INPUT_FAIL
    try:
        return args.func(args)
    except CliInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
