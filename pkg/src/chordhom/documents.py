"""Strict, versioned document formats and the bundled example corpus.

Documents are JSON with exact rational coefficients written as strings
(for example "-3/2"); floating point numbers are rejected.  Emission is canonical
(sorted keys, fixed separators, trailing newline) so parse-emit round
trips are byte-identical on canonical input.  Schema errors carry JSON
paths; syntax errors carry the parser's line and column.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import BaseRing, Element, Generator, Word, rat
from .dga import Augmentation, DGAMorphism, DGASpec
from .homology import BettiTable
from .lefschetz import DirectedAinfSpec
from .surgery import FillingModel, Orbit, SurgeryCountTable


class ParseError(ValueError):
    def __init__(self, issues: list[tuple[str, str]]):
        self.issues = issues
        super().__init__("; ".join(f"{path}: {msg}" for path, msg in issues))


def _fail(path: str, msg: str):
    raise ParseError([(path, msg)])


def _rational(value, path: str) -> Fraction:
    if isinstance(value, float):
        _fail(path, "floating point is not accepted; write rationals as strings")
    if isinstance(value, bool):
        _fail(path, "expected a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.replace("−", "-"))
        except (ValueError, ZeroDivisionError):
            _fail(path, f"not a rational: {value!r}")
    _fail(path, f"not a rational: {value!r}")


def _require(doc: dict, key: str, typ, path: str):
    if key not in doc:
        _fail(f"{path}.{key}", "missing field")
    v = doc[key]
    if typ is int and isinstance(v, bool):
        _fail(f"{path}.{key}", "expected an integer")
    if not isinstance(v, typ):
        if isinstance(v, float):
            _fail(
                f"{path}.{key}",
                "floating point is not accepted; write rationals as strings",
            )
        names = (
            typ.__name__
            if isinstance(typ, type)
            else "/".join(t.__name__ for t in typ)
        )
        _fail(f"{path}.{key}", f"expected {names}")
    return v


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError([(f"line {exc.lineno}, column {exc.colno}", exc.msg)])
    if not isinstance(doc, dict):
        raise ParseError([("$", "document must be an object")])
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _coeff_str(c: Fraction) -> str:
    return str(c)


# ---- chord DGA documents ------------------------------------------------------


def dga_from_document(doc: dict, allow_partial: bool = False) -> DGASpec:
    fmt = _require(doc, "format", str, "$")
    if fmt != "dga/1":
        _fail("$.format", f"unsupported format {fmt!r}")
    field_tag = _require(doc, "field", str, "$")
    if field_tag != "Q":
        _fail("$.field", "only the rationals are supported")
    k = _require(doc, "components", int, "$")
    n = _require(doc, "ambient_dim", int, "$")
    gens_doc = _require(doc, "generators", list, "$")
    gens: list[Generator] = []
    names = set()
    for idx, g in enumerate(gens_doc):
        path = f"$.generators[{idx}]"
        if not isinstance(g, dict):
            _fail(path, "expected an object")
        name = _require(g, "name", str, path)
        grading = _require(g, "grading", int, path)
        src = g.get("src", 1)
        dst = g.get("dst", 1)
        if not isinstance(src, int) or not isinstance(dst, int):
            _fail(path, "ports must be integers")
        if name in names:
            _fail(path, f"duplicate generator {name}")
        names.add(name)
        gens.append(Generator(name, grading, src, dst))
    meta = doc.get("metadata", {})
    partial = bool(meta.get("partial"))
    if partial and not allow_partial:
        _fail(
            "$.metadata.partial",
            "partial document: differentials are incomplete; "
            "only the unit-differential property is usable",
        )
    diff_doc = _require(doc, "differential", dict, "$")
    differential: dict[str, Element] = {}
    for name, terms in diff_doc.items():
        path = f"$.differential.{name}"
        if name not in names:
            _fail(path, f"unknown generator {name}")
        if not isinstance(terms, list):
            _fail(path, "expected a list of terms")
        acc: dict[Word, Fraction] = {}
        for t_idx, term in enumerate(terms):
            tpath = f"{path}[{t_idx}]"
            if not isinstance(term, dict):
                _fail(tpath, "expected an object")
            coeff = _rational(_require(term, "coeff", (str, int), tpath), f"{tpath}.coeff")
            word = term.get("word")
            if isinstance(word, str):
                if not word.startswith("e_"):
                    _fail(f"{tpath}.word", "unit words are written e_<component>")
                try:
                    comp = int(word[2:])
                except ValueError:
                    _fail(f"{tpath}.word", f"bad unit word {word!r}")
                w = Word.idem(comp)
            elif isinstance(word, list):
                for letter in word:
                    if letter not in names:
                        _fail(f"{tpath}.word", f"unknown generator {letter!r}")
                if not word:
                    _fail(f"{tpath}.word", "empty word lists are not allowed; use e_i")
                w = Word.of(word)
            else:
                _fail(f"{tpath}.word", "expected a list of names or e_<component>")
            acc[w] = acc.get(w, Fraction(0)) + coeff
        differential[name] = Element(acc)
    try:
        return DGASpec(
            ring=BaseRing(k),
            generators=gens,
            differential=differential,
            ambient_dim=n,
            meta=dict(meta),
        )
    except (ValueError, KeyError) as exc:
        raise ParseError([("$", str(exc))])


def dga_to_document(dga: DGASpec) -> dict:
    gens = [
        {"name": g.name, "grading": g.grading, "src": g.src, "dst": g.dst}
        for g in dga.generators
    ]
    diff: dict[str, list] = {}
    for g in dga.generators:
        el = dga.d_gen(g.name)
        if el.is_zero():
            continue
        terms = []
        for w, c in el.items():
            word: Any = f"e_{w.comp}" if w.is_idem else list(w.letters)
            terms.append({"coeff": _coeff_str(c), "word": word})
        diff[g.name] = terms
    meta = {k: v for k, v in dga.meta.items() if not k.startswith("_")}
    meta.pop("algebra", None)
    return {
        "format": "dga/1",
        "field": "Q",
        "components": dga.ring.k,
        "ambient_dim": dga.ambient_dim,
        "generators": gens,
        "differential": diff,
        "metadata": _plain(meta),
    }


def _plain(value):
    """Restrict metadata to JSON-serializable scalars and containers."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items() if _is_plain(v)}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value if _is_plain(v)]
    return value


def _is_plain(v) -> bool:
    return isinstance(v, (str, int, bool, list, tuple, dict)) or v is None


# ---- filling and count documents ----------------------------------------------


def filling_from_document(doc: dict) -> FillingModel:
    fmt = _require(doc, "format", str, "$")
    if fmt != "filling/1":
        _fail("$.format", f"unsupported format {fmt!r}")
    n = _require(doc, "n", int, "$")
    orbits = []
    labels = set()
    for idx, o in enumerate(doc.get("orbits", [])):
        path = f"$.orbits[{idx}]"
        label = _require(o, "label", str, path)
        if label in labels:
            _fail(path, f"duplicate orbit {label}")
        labels.add(label)
        orbits.append(
            Orbit(
                label=label,
                grading=_require(o, "grading", int, path),
                multiplicity=o.get("multiplicity", 1),
                bad=bool(o.get("bad", False)),
            )
        )
    morse = []
    morse_labels = set()
    for idx, p in enumerate(doc.get("morse", [])):
        path = f"$.morse[{idx}]"
        label = _require(p, "label", str, path)
        morse_labels.add(label)
        morse.append((label, _require(p, "grading", int, path)))

    def edge_table(key: str, src_set, dst_set, src_field="from", dst_field="to"):
        out = {}
        for idx, e in enumerate(doc.get(key, [])):
            path = f"$.{key}[{idx}]"
            a = _require(e, src_field, str, path)
            b = _require(e, dst_field, str, path)
            if src_set is not None and a not in src_set:
                _fail(path, f"unknown label {a!r}")
            if dst_set is not None and b not in dst_set:
                _fail(path, f"unknown label {b!r}")
            out[(a, b)] = _rational(
                _require(e, "coeff", (str, int), path), f"{path}.coeff"
            )
        return out

    model = FillingModel(
        n=n,
        orbits=orbits,
        morse=morse,
        orbit_diff=edge_table("orbit_differential", labels, labels),
        bott_diff=edge_table("bott", labels, labels),
        to_morse=edge_table("to_morse", labels, morse_labels, "orbit", "morse"),
        morse_diff=edge_table("morse_differential", morse_labels, morse_labels),
        meta=dict(doc.get("metadata", {})),
    )
    for idx, e in enumerate(doc.get("morse_tau", [])):
        path = f"$.morse_tau[{idx}]"
        p = _require(e, "morse", str, path)
        j = _require(e, "component", int, path)
        model.morse_tau[(p, j)] = _rational(
            _require(e, "coeff", (str, int), path), f"{path}.coeff"
        )
    return model


def counts_from_document(doc: dict) -> SurgeryCountTable:
    fmt = _require(doc, "format", str, "$")
    if fmt != "counts/1":
        _fail("$.format", f"unsupported format {fmt!r}")
    table = SurgeryCountTable()

    def word_entries(key: str, target: dict):
        for idx, e in enumerate(doc.get(key, [])):
            path = f"$.{key}[{idx}]"
            orbit = _require(e, "orbit", str, path)
            word = _require(e, "word", list, path)
            coeff = _rational(_require(e, "coeff", (str, int), path), f"{path}.coeff")
            target[(orbit, tuple(word))] = coeff

    word_entries("mixed_cyclic", table.mixed_cyc)
    word_entries("check", table.ncheck)
    word_entries("hat", table.nhat)
    for idx, e in enumerate(doc.get("orbit_tau", [])):
        path = f"$.orbit_tau[{idx}]"
        orbit = _require(e, "orbit", str, path)
        j = _require(e, "component", int, path)
        table.orbit_tau[(orbit, j)] = _rational(
            _require(e, "coeff", (str, int), path), f"{path}.coeff"
        )
    table.meta = dict(doc.get("metadata", {}))
    return table


# ---- directed A-infinity documents ---------------------------------------------


def _symref(token: str, path: str, point_names: set[str], k: int):
    if ":" not in token:
        _fail(path, f"bad symbol reference {token!r}")
    kind, _, rest = token.partition(":")
    if kind in ("e", "m"):
        try:
            comp = int(rest)
        except ValueError:
            _fail(path, f"bad component in {token!r}")
        if not 1 <= comp <= k:
            _fail(path, f"component out of range in {token!r}")
        return (kind, comp)
    if kind in ("f", "b"):
        if rest not in point_names:
            _fail(path, f"unknown point in {token!r}")
        return (kind, rest)
    _fail(path, f"bad symbol kind in {token!r}")


def ainf_from_document(doc: dict) -> DirectedAinfSpec:
    fmt = _require(doc, "format", str, "$")
    if fmt != "ainf/1":
        _fail("$.format", f"unsupported format {fmt!r}")
    k = _require(doc, "components", int, "$")
    n = _require(doc, "fiber_dim_param", int, "$")
    points = []
    names = set()
    for idx, p in enumerate(doc.get("points", [])):
        path = f"$.points[{idx}]"
        name = _require(p, "name", str, path)
        if name in names:
            _fail(path, f"duplicate point {name}")
        names.add(name)
        points.append(
            (
                name,
                _require(p, "grading", int, path),
                _require(p, "from", int, path),
                _require(p, "to", int, path),
            )
        )
    mu = []
    for idx, m in enumerate(doc.get("mu", [])):
        path = f"$.mu[{idx}]"
        out = _symref(_require(m, "out", str, path), f"{path}.out", names, k)
        inputs = tuple(
            _symref(t, f"{path}.inputs[{i}]", names, k)
            for i, t in enumerate(_require(m, "inputs", list, path))
        )
        coeff = _rational(_require(m, "coeff", (str, int), path), f"{path}.coeff")
        mu.append((out, inputs, coeff))
    order = doc.get("order")
    if order is not None:
        for idx, nm in enumerate(order):
            if nm not in names:
                _fail(f"$.order[{idx}]", f"unknown point {nm!r}")
    try:
        return DirectedAinfSpec(
            k=k, n=n, points=points, mu=mu, order=order, meta=dict(doc.get("metadata", {}))
        )
    except ValueError as exc:
        raise ParseError([("$", str(exc))])


# ---- morphism and augmentation documents ---------------------------------------


def _element_from_terms(terms, names: set[str], path: str) -> Element:
    acc: dict[Word, Fraction] = {}
    if not isinstance(terms, list):
        _fail(path, "expected a list of terms")
    for idx, term in enumerate(terms):
        tpath = f"{path}[{idx}]"
        coeff = _rational(_require(term, "coeff", (str, int), tpath), f"{tpath}.coeff")
        word = term.get("word")
        if isinstance(word, str) and word.startswith("e_"):
            w = Word.idem(int(word[2:]))
        elif isinstance(word, list) and word:
            for letter in word:
                if letter not in names:
                    _fail(f"{tpath}.word", f"unknown generator {letter!r}")
            w = Word.of(word)
        else:
            _fail(f"{tpath}.word", "expected a list of names or e_<component>")
        acc[w] = acc.get(w, Fraction(0)) + coeff
    return Element(acc)


def morphism_from_document(doc: dict) -> DGAMorphism:
    from .examples import example_document

    fmt = _require(doc, "format", str, "$")
    if fmt != "morphism/1":
        _fail("$.format", f"unsupported format {fmt!r}")

    def side(key: str) -> DGASpec:
        sub = _require(doc, key, dict, "$")
        if "example" in sub:
            return dga_from_document(example_document(sub["example"]))
        return dga_from_document(sub)

    source = side("source")
    target = side("target")
    target_names = {g.name for g in target.generators}
    assignment = {}
    for name, terms in _require(doc, "assignment", dict, "$").items():
        if name not in {g.name for g in source.generators}:
            _fail(f"$.assignment.{name}", "unknown source generator")
        assignment[name] = _element_from_terms(
            terms, target_names, f"$.assignment.{name}"
        )
    return DGAMorphism(source=source, target=target, assignment=assignment)


def augmentation_from_document(doc: dict) -> Augmentation:
    fmt = _require(doc, "format", str, "$")
    if fmt != "augmentation/1":
        _fail("$.format", f"unsupported format {fmt!r}")
    values = {}
    for name, v in _require(doc, "values", dict, "$").items():
        values[name] = _rational(v, f"$.values.{name}")
    return Augmentation(values={k: v for k, v in values.items() if v})


# ---- Betti table reports -------------------------------------------------------


def betti_to_document(table: BettiTable, window: tuple[int, int] | None = None) -> dict:
    lo, hi = window if window else (min(table.ranks), max(table.ranks))
    return {
        "format": "betti/1",
        "ranks": {str(d): table.rank(d) for d in range(lo, hi + 1)},
        "flagged": sorted(d for d in table.flagged if lo <= d <= hi),
        "verdict": table.verdict,
    }


def betti_from_document(doc: dict) -> BettiTable:
    fmt = _require(doc, "format", str, "$")
    if fmt != "betti/1":
        _fail("$.format", f"unsupported format {fmt!r}")
    ranks = {}
    for key, v in _require(doc, "ranks", dict, "$").items():
        if isinstance(v, bool) or not isinstance(v, int):
            _fail(f"$.ranks.{key}", "ranks are integers")
        ranks[int(key)] = v
    return BettiTable(
        ranks=ranks,
        flagged=frozenset(doc.get("flagged", [])),
        verdict=doc.get("verdict", "EXACT"),
    )


def betti_to_text(
    table: BettiTable,
    window: tuple[int, int] | None = None,
    basis_summary: dict[int, str] | None = None,
) -> str:
    lo, hi = window if window else (min(table.ranks), max(table.ranks))
    lines = []
    if table.verdict != "EXACT":
        lines.append(f"*** verdict: {table.verdict} — ranks are lower bounds on the window ***")
    else:
        lines.append("verdict: EXACT")
    lines.append(f"{'degree':>8} {'rank':>6}  {'':2}")
    for d in range(lo, hi + 1):
        flag = "edge" if d in table.flagged else ""
        extra = f"  {basis_summary.get(d, '')}" if basis_summary else ""
        lines.append(f"{d:>8} {table.rank(d):>6}  {flag:4}{extra}")
    return "\n".join(lines) + "\n"
