"""From directed A-infinity data of vanishing cycles to the surgery DGA and
its cyclic tensor complex.

The operations of the curved category are stored in path order: a table
entry C[word] -> {out: coeff} means the differential of the chord dual to
`out` contains `word`.  Translating from composition order (inputs listed
source-to-target) to path order reverses the input tuple.  All operations
are t-linear; the table is indexed by symbols, with t-powers distributed
over the letters at expansion time.  The curvature contributes the unit
term of the first minimum chord and the insertion operator of the cyclic
tensor differential.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algebra import BaseRing, ChordAlgebra, Element, Generator, TruncatedSeries, Word, rat, series_multiply
from .dga import DGASpec
from .homology import (
    GradedChainComplex,
    TRUNCATED,
    build_complex,
    enumerate_cyclic_words,
    guard_verdict,
)

Symbol = tuple  # ("e", i) | ("m", i) | ("f", name) | ("b", name)


@dataclass(frozen=True)
class SymbolInfo:
    base: int  # chord grading at t-power zero
    p_min: int
    src: int
    dst: int


@dataclass
class DirectedAinfSpec:
    """Directed vanishing-cycle data: components, intersection points with
    the grading of their shortest chord, composition-order structure
    constants, and (for n = 2) a global order on the points."""

    k: int
    n: int
    points: list[tuple[str, int, int, int]]  # (name, grading, i, j), i < j
    mu: list[tuple[Symbol, tuple[Symbol, ...], Fraction]] = field(default_factory=list)
    order: list[str] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for name, _grading, i, j in self.points:
            if name in seen:
                raise ValueError(f"duplicate intersection point {name}")
            seen.add(name)
            if not (1 <= i < j <= self.k):
                raise ValueError(f"point {name} must join distinct ordered components")

    def point(self, name: str) -> tuple[str, int, int, int]:
        for p in self.points:
            if p[0] == name:
                return p
        raise KeyError(f"unknown intersection point {name}")


class AinfValidationError(ValueError):
    pass


@dataclass
class CurvedAinf:
    """The t-adically truncated curved category in symbol form."""

    spec: DirectedAinfSpec
    order: int  # truncation order N
    symbols: dict[Symbol, SymbolInfo]
    units: dict[tuple[Symbol, ...], dict[Symbol, Fraction]]
    pairings: dict[tuple[Symbol, ...], dict[Symbol, Fraction]]
    user: dict[tuple[Symbol, ...], dict[Symbol, Fraction]]

    def full_table(self) -> dict[tuple[Symbol, ...], dict[Symbol, Fraction]]:
        out: dict[tuple[Symbol, ...], dict[Symbol, Fraction]] = {}
        for table in (self.units, self.pairings, self.user):
            for word, hits in table.items():
                slot = out.setdefault(word, {})
                for c, v in hits.items():
                    slot[c] = slot.get(c, Fraction(0)) + v
        return {
            w: {c: v for c, v in hits.items() if v}
            for w, hits in out.items()
            if any(hits.values())
        }

    def sigma(self, sym: Symbol, p: int) -> int:
        return self.symbols[sym].base + 2 * p

    def chord_name(self, sym: Symbol, p: int) -> str:
        kind = sym[0]
        if kind == "e":
            return f"q{sym[1]}-({p})"
        if kind == "m":
            return f"q{sym[1]}+({p})"
        if kind == "f":
            return f"q>{sym[1]}({p})"
        return f"q<{sym[1]}({p})"

    def chords(self) -> list[tuple[Symbol, int]]:
        out = []
        for sym, info in self.symbols.items():
            for p in range(info.p_min, self.order + 1):
                out.append((sym, p))
        out.sort(key=lambda sp: (self.chord_name(*sp)))
        return out


def _symbol_table(spec: DirectedAinfSpec) -> dict[Symbol, SymbolInfo]:
    n = spec.n
    table: dict[Symbol, SymbolInfo] = {}
    for i in range(1, spec.k + 1):
        table[("e", i)] = SymbolInfo(base=-1, p_min=1, src=i, dst=i)
        table[("m", i)] = SymbolInfo(base=n - 2, p_min=1, src=i, dst=i)
    for name, grading, i, j in spec.points:
        table[("f", name)] = SymbolInfo(base=grading, p_min=0, src=i, dst=j)
        table[("b", name)] = SymbolInfo(base=(n - 3) - grading, p_min=1, src=j, dst=i)
    return table


def _forced_tables(spec: DirectedAinfSpec, symbols: dict[Symbol, SymbolInfo]):
    units: dict[tuple[Symbol, ...], dict[Symbol, Fraction]] = {}
    pairings: dict[tuple[Symbol, ...], dict[Symbol, Fraction]] = {}

    def put(table, word, out, coeff):
        slot = table.setdefault(word, {})
        slot[out] = slot.get(out, Fraction(0)) + Fraction(coeff)

    for sym, info in symbols.items():
        e_left = ("e", info.dst)
        put(units, (e_left, sym), sym, 1)
        if sym[0] != "e":
            e_right = ("e", info.src)
            sign = -1 if (info.base - 1) % 2 else 1
            put(units, (sym, e_right), sym, sign)

    for name, _grading, i, j in spec.points:
        f, b = ("f", name), ("b", name)
        put(pairings, (f, b), ("m", j), 1)
        put(pairings, (b, f), ("m", i), 1)

    if spec.n == 2:
        if spec.order is None:
            raise AinfValidationError(
                "n = 2 requires a global order on the intersection points"
            )
        rank = {nm: r for r, nm in enumerate(spec.order)}
        for nm, _g, i, j in spec.points:
            if nm not in rank:
                raise AinfValidationError(f"order is missing the point {nm}")

        def less(a: str, b: str) -> bool:
            return rank[a] < rank[b]

        def wing(point: str, comp: int) -> tuple[Symbol, Symbol]:
            """The pair (first, second) with ports leaving and returning to
            comp through the given point."""
            _nm, _g, pi, pj = spec.point(point)
            if comp == pj:
                return ("f", point), ("b", point)
            return ("b", point), ("f", point)

        for i in range(1, spec.k + 1):
            for nm, _g, pi, pj in spec.points:
                if i not in (pi, pj):
                    continue
                u, v = wing(nm, i)
                put(pairings, (("m", i), u, v), ("m", i), 1)
        for nm, ga, i, j in spec.points:
            f_a, b_a = ("f", nm), ("b", nm)
            sign_f = -1 if (ga - 1) % 2 else 1
            sign_b = -1 if ga % 2 else 1
            for other, _g2, oi, oj in spec.points:
                if other == nm or not less(other, nm):
                    continue
                if i in (oi, oj):
                    u, v = wing(other, i)
                    put(pairings, (f_a, u, v), f_a, sign_f)
                    put(pairings, (u, v, b_a), b_a, -1)
                if j in (oi, oj):
                    u, v = wing(other, j)
                    put(pairings, (u, v, f_a), f_a, -1)
                    put(pairings, (b_a, u, v), b_a, sign_b)
    return units, pairings


def build_curved_category(spec: DirectedAinfSpec, t_order: int) -> CurvedAinf:
    """Assemble the curved category: strict units, the point pairings onto
    the maximum classes (plus the n = 2 corrections), and the supplied
    composition-order constants reversed into path order."""
    symbols = _symbol_table(spec)
    units, pairings = _forced_tables(spec, symbols)
    user: dict[tuple[Symbol, ...], dict[Symbol, Fraction]] = {}
    for out_sym, inputs, coeff in spec.mu:
        if out_sym not in symbols:
            raise AinfValidationError(f"unknown output symbol {out_sym}")
        if out_sym[0] == "e":
            raise AinfValidationError("structure constants may not output a unit")
        word = tuple(reversed(inputs))
        for s in word:
            if s not in symbols:
                raise AinfValidationError(f"unknown input symbol {s}")
            if s[0] == "e":
                raise AinfValidationError(
                    "unit inputs are fixed by strict unitality; do not supply them"
                )
        slot = user.setdefault(word, {})
        slot[out_sym] = slot.get(out_sym, Fraction(0)) + rat(coeff)
    D = CurvedAinf(
        spec=spec, order=t_order, symbols=symbols, units=units, pairings=pairings, user=user
    )
    report = check_curved_ainf(D)
    if report:
        raise AinfValidationError("; ".join(report[:5]))
    return D


def _word_composable(symbols: dict[Symbol, SymbolInfo], word: tuple[Symbol, ...]) -> bool:
    return all(
        symbols[a].src == symbols[b].dst for a, b in zip(word, word[1:])
    )


def check_curved_ainf(D: CurvedAinf) -> list[str]:
    """Verify grading and port homogeneity of every table entry, strict
    unitality, the unit/curvature identities, and the square-zero identity
    over all composable symbol words up to twice the maximal arity."""
    problems: list[str] = []
    table = D.full_table()
    symbols = D.symbols

    for word, hits in table.items():
        if not _word_composable(symbols, word):
            problems.append(f"entry {word} is not port-composable")
            continue
        base_sum = sum(symbols[s].base for s in word)
        for out, coeff in hits.items():
            if not coeff:
                continue
            info = symbols[out]
            if info.base != base_sum + 1:
                problems.append(
                    f"entry {word} -> {out} violates grading: {base_sum}+1 != {info.base}"
                )
            if info.dst != symbols[word[0]].dst or info.src != symbols[word[-1]].src:
                problems.append(f"entry {word} -> {out} violates ports")
        if len(word) >= 3 and any(s[0] == "e" for s in word):
            problems.append(f"strict unitality broken by {word}")
    if problems:
        return problems

    # curvature/unit identity on single letters
    for sym, info in symbols.items():
        acc: dict[Symbol, Fraction] = {}
        left = table.get((("e", info.dst), sym), {})
        right = table.get((sym, ("e", info.src)), {})
        sgn = -1 if info.base % 2 else 1
        for c, v in left.items():
            acc[c] = acc.get(c, Fraction(0)) + v
        for c, v in right.items():
            acc[c] = acc.get(c, Fraction(0)) + sgn * v
        for c, v in acc.items():
            if v:
                problems.append(f"unit identity fails on {sym}: {c} has {v}")

    max_arity = max((len(w) for w in table), default=1)
    syms = sorted(symbols, key=repr)

    def words_of_length(length: int):
        def extend(prefix: list[Symbol]):
            if len(prefix) == length:
                yield tuple(prefix)
                return
            for s in syms:
                if prefix and symbols[prefix[-1]].src != symbols[s].dst:
                    continue
                prefix.append(s)
                yield from extend(prefix)
                prefix.pop()

        yield from extend([])

    # Square-zero identity per composable word: the single-symbol output of
    # the squared coderivation.  Disjoint and nested applications with a
    # longer output cancel once this holds for every subword length.
    for length in range(1, 2 * max_arity):
        for word in words_of_length(length):
            acc: dict[Symbol, Fraction] = {}
            for i in range(length):
                prefix_deg = sum(symbols[s].base for s in word[:i])
                psign = -1 if prefix_deg % 2 else 1
                for j in range(1, max_arity + 1):
                    if i + j > length:
                        break
                    hits = table.get(word[i : i + j])
                    if not hits:
                        continue
                    for mid, coeff in hits.items():
                        outer = word[:i] + (mid,) + word[i + j :]
                        for out, c2 in table.get(outer, {}).items():
                            acc[out] = acc.get(out, Fraction(0)) + psign * coeff * c2
            for out, v in acc.items():
                if v:
                    problems.append(
                        f"square-zero identity fails on {word}: output {out} has {v}"
                    )
                    break
    return problems


def dualize_tensor_algebra(D: CurvedAinf) -> DGASpec:
    """The DGA dual to the tensor coalgebra of the curved category: chords
    are the t-weighted basis morphisms, the differential collects every
    table entry over all t-power distributions, and the curvature
    contributes the unit term of each first minimum chord."""
    spec = D.spec
    N = D.order
    gens: list[Generator] = []
    for sym, p in D.chords():
        info = D.symbols[sym]
        gens.append(
            Generator(D.chord_name(sym, p), D.sigma(sym, p), src=info.src, dst=info.dst)
        )
    diff: dict[str, Element] = {name.name: Element.zero() for name in gens}
    table = D.full_table()
    for word, hits in table.items():
        infos = [D.symbols[s] for s in word]
        ranges = [range(info.p_min, N + 1) for info in infos]
        for powers in itertools.product(*ranges):
            total = sum(powers)
            if total > N:
                continue
            letters = tuple(
                D.chord_name(s, p) for s, p in zip(word, powers)
            )
            target = Element.monomial(Word.of(letters))
            for out, coeff in hits.items():
                if D.symbols[out].p_min > total:
                    continue
                name = D.chord_name(out, total)
                if name in diff:
                    diff[name] = diff[name] + target.scale(coeff)
    for i in range(1, spec.k + 1):
        name = D.chord_name(("e", i), 1)
        if name in diff:
            diff[name] = diff[name] + Element.monomial(Word.idem(i))
    return DGASpec(
        ring=BaseRing(spec.k),
        generators=gens,
        differential=diff,
        ambient_dim=spec.n,
        meta={"kind": "dual-tensor", "t_order": N},
    )


# ---- the direct construction -------------------------------------------------


@dataclass
class LefschetzChordBasis:
    """The chord generators of the surgery DGA of a fibration with the
    given vanishing-cycle intersection data."""

    k: int
    n: int
    points: list[tuple[str, int, int, int]]
    order: list[str] | None = None

    def spec(self) -> DirectedAinfSpec:
        return DirectedAinfSpec(
            k=self.k, n=self.n, points=self.points, mu=[], order=self.order
        )


def lefschetz_dga(
    basis: LefschetzChordBasis | DirectedAinfSpec,
    h_counts: dict[tuple[Symbol, ...], dict[Symbol, Fraction]] | None,
    n: int,
    t_order: int,
) -> DGASpec:
    """Direct assembly of the surgery DGA: the constant term on the first
    minimum chord, the Morse--Bott series expansions, and the supplied
    holomorphic counts inserted with t-power conservation."""
    if isinstance(basis, DirectedAinfSpec):
        spec = basis
    else:
        spec = basis.spec()
    if spec.n != n:
        raise ValueError("dimension parameter disagrees with the basis data")
    if n < 2:
        raise ValueError("needs n >= 2")
    symbols = _symbol_table(spec)
    N = t_order
    names: dict[tuple[Symbol, int], str] = {}
    gens: list[Generator] = []
    helper = CurvedAinf(spec, N, symbols, {}, {}, {})
    for sym, p in helper.chords():
        nm = helper.chord_name(sym, p)
        names[(sym, p)] = nm
        info = symbols[sym]
        gens.append(Generator(nm, info.base + 2 * p, src=info.src, dst=info.dst))
    ring = BaseRing(spec.k)
    alg = ChordAlgebra(ring, gens)

    def series(sym: Symbol) -> TruncatedSeries:
        info = symbols[sym]
        return TruncatedSeries(
            N,
            {
                p: Element.monomial(Word.of([names[(sym, p)]]))
                for p in range(info.p_min, N + 1)
            },
        )

    def smul(*ss: TruncatedSeries) -> TruncatedSeries:
        acc = ss[0]
        for s in ss[1:]:
            acc = series_multiply(alg, acc, s)
        return acc

    def sscale(s: TruncatedSeries, c: int) -> TruncatedSeries:
        return TruncatedSeries(N, {p: el.scale(c) for p, el in s.coeffs.items()})

    diff_series: dict[Symbol, TruncatedSeries] = {
        sym: TruncatedSeries(N, {}) for sym in symbols
    }

    # d_MB
    for i in range(1, spec.k + 1):
        e, m = ("e", i), ("m", i)
        diff_series[e] = diff_series[e] + smul(series(e), series(e))
        msign = -1 if (n - 1) % 2 else 1
        diff_series[m] = (
            diff_series[m]
            + smul(series(e), series(m))
            + sscale(smul(series(m), series(e)), msign)
        )
        for nm, _g, pi, pj in spec.points:
            f, b = ("f", nm), ("b", nm)
            if pj == i:
                diff_series[m] = diff_series[m] + smul(series(f), series(b))
            if pi == i:
                diff_series[m] = diff_series[m] + smul(series(b), series(f))
    for nm, ga, i, j in spec.points:
        f, b = ("f", nm), ("b", nm)
        fsign = -1 if (ga - 1) % 2 else 1
        bsign = -1 if ((n - 2) - ga) % 2 else 1
        diff_series[f] = (
            diff_series[f]
            + smul(series(("e", j)), series(f))
            + sscale(smul(series(f), series(("e", i))), fsign)
        )
        diff_series[b] = (
            diff_series[b]
            + smul(series(("e", i)), series(b))
            + sscale(smul(series(b), series(("e", j))), bsign)
        )

    if n == 2:
        if spec.order is None:
            raise ValueError("n = 2 requires a global order on the intersection points")
        rank = {nm: r for r, nm in enumerate(spec.order)}

        def wing_series(point: str, comp: int) -> TruncatedSeries:
            _nm, _g, pi, pj = spec.point(point)
            if comp == pj:
                return smul(series(("f", point)), series(("b", point)))
            return smul(series(("b", point)), series(("f", point)))

        for i in range(1, spec.k + 1):
            m = ("m", i)
            for nm, _g, pi, pj in spec.points:
                if i not in (pi, pj):
                    continue
                diff_series[m] = diff_series[m] + smul(series(m), wing_series(nm, i))
        for nm, ga, i, j in spec.points:
            f, b = ("f", nm), ("b", nm)
            fsign = -1 if (ga - 1) % 2 else 1
            bsign = -1 if ga % 2 else 1
            for other, _g2, oi, oj in spec.points:
                if other == nm or rank[other] >= rank[nm]:
                    continue
                if i in (oi, oj):
                    diff_series[f] = diff_series[f] + sscale(
                        smul(series(f), wing_series(other, i)), fsign
                    )
                    diff_series[b] = diff_series[b] + sscale(
                        smul(wing_series(other, i), series(b)), -1
                    )
                if j in (oi, oj):
                    diff_series[f] = diff_series[f] + sscale(
                        smul(wing_series(other, j), series(f)), -1
                    )
                    diff_series[b] = diff_series[b] + sscale(
                        smul(series(b), wing_series(other, j)), bsign
                    )

    diff: dict[str, Element] = {}
    for sym, info in symbols.items():
        s = diff_series[sym]
        for p in range(info.p_min, N + 1):
            diff[names[(sym, p)]] = s.coeff(p)

    # d_const
    for i in range(1, spec.k + 1):
        nm = names[(("e", i), 1)]
        diff[nm] = diff[nm] + Element.monomial(Word.idem(i))

    # d_h
    if h_counts:
        for word, hits in h_counts.items():
            infos = [symbols[s] for s in word]
            ranges = [range(f.p_min, N + 1) for f in infos]
            for powers in itertools.product(*ranges):
                total = sum(powers)
                if total > N:
                    continue
                letters = tuple(names[(s, p)] for s, p in zip(word, powers))
                target = Element.monomial(Word.of(letters))
                for out, coeff in hits.items():
                    if symbols[out].p_min > total:
                        continue
                    nm = names[(out, total)]
                    diff[nm] = diff[nm] + target.scale(coeff)

    return DGASpec(
        ring=ring,
        generators=gens,
        differential=diff,
        ambient_dim=n,
        meta={"kind": "lefschetz-dga", "t_order": N},
    )


def user_counts(D: CurvedAinf) -> dict[tuple[Symbol, ...], dict[Symbol, Fraction]]:
    """The non-unit, non-Morse-Bott part of the operations, in the shape
    lefschetz_dga takes for its holomorphic counts."""
    return {w: dict(hits) for w, hits in D.user.items()}


# ---- the cyclic tensor complex -----------------------------------------------


def hochschild_complex(
    D: CurvedAinf, window: tuple[int, int], max_len: int
) -> GradedChainComplex:
    """The diagonal cyclic tensor complex of the curved category.

    The returned complex is stored with degrees negated (its differential
    raises the dictionary degree by one); the meta field records the
    dictionary window.  Sectors: one class per component, words headed by a
    component factor, and plain words.
    """
    dual = dualize_tensor_algebra(D)
    alg = dual.algebra
    lo, hi = window
    name_to_chord = {
        D.chord_name(sym, p): (sym, p) for sym, p in D.chords()
    }
    table = D.full_table()
    symbols = D.symbols

    def sigma_name(nm: str) -> int:
        return alg.gen(nm).grading

    def sigma_sum(letters: Iterable[str]) -> int:
        return sum(sigma_name(x) for x in letters)

    words = enumerate_cyclic_words(alg, (lo - 2, hi + 1), max_len)
    bases: dict[int, list] = {}
    if lo - 1 <= 0 <= hi + 1:
        for i in range(1, D.spec.k + 1):
            bases.setdefault(0, []).append(("cce", i))
    for w in words:
        deg = alg.grading(w)
        comp = alg.dst(w)
        if lo - 1 <= deg <= hi + 1:
            bases.setdefault(deg, []).append(("ccv", comp, w.letters))
        if lo - 1 <= deg + 1 <= hi + 1:
            bases.setdefault(deg + 1, []).append(("cch", w.letters))
    stored: dict[int, list] = {}
    for deg, labs in bases.items():
        labs.sort(key=_cc_label_key)
        stored[-deg] = labs

    def blocks_of(letters: tuple[str, ...], start: int, length: int):
        """Table hits for the consecutive block; yields (out_name, coeff)."""
        block = letters[start : start + length]
        syms = tuple(name_to_chord[x][0] for x in block)
        hits = table.get(syms)
        if not hits:
            return
        total = sum(name_to_chord[x][1] for x in block)
        if total > D.order:
            return
        for out, coeff in hits.items():
            if symbols[out].p_min <= total:
                yield D.chord_name(out, total), coeff

    def insertions(letters: tuple[str, ...], comp_first: int):
        """Insertion slots for the curvature chord: (slot, component)."""
        out = []
        for slot in range(len(letters) + 1):
            if slot == 0:
                comp = alg.gen(letters[0]).dst if letters else comp_first
            else:
                comp = alg.gen(letters[slot - 1]).src
            out.append((slot, comp))
        return out

    def image(stored_degree: int, label) -> dict:
        out: dict = {}

        def put(key, coeff):
            out[key] = out.get(key, Fraction(0)) + coeff

        kind = label[0]
        if kind == "cce":
            i = label[1]
            put(("ccv", i, (D.chord_name(("e", i), 1),)), Fraction(1))
            return out
        if kind == "ccv":
            letters = label[2]
            slot_word = letters[1:] + (letters[0],)
            s = len(slot_word)

            def emit(new_word, coeff):
                lab = (new_word[-1],) + new_word[:-1]
                put(("ccv", alg.gen(lab[0]).dst, lab), coeff)

            for t in range(s):
                psign = -1 if sigma_sum(slot_word[:t]) % 2 else 1
                for m in range(1, s - t + 1):
                    for out_name, coeff in blocks_of(slot_word, t, m):
                        emit(
                            slot_word[:t] + (out_name,) + slot_word[t + m :],
                            psign * coeff,
                        )
            for slot, c_comp in insertions(slot_word, label[1]):
                psign = -1 if sigma_sum(slot_word[:slot]) % 2 else 1
                enm = D.chord_name(("e", c_comp), 1)
                emit(slot_word[:slot] + (enm,) + slot_word[slot:], psign)
            put(("cch", slot_word), Fraction(1))
            g0 = sigma_name(letters[0])
            grest = sigma_sum(letters[1:])
            rsign = -1 if (g0 * grest) % 2 else 1
            put(("cch", letters), Fraction(-rsign))
            return out
        letters = label[1]
        s = len(letters)
        hat_sign = sigma_name(letters[0]) + 1
        for j in range(1, s):
            psign = -1 if (hat_sign + sigma_sum(letters[1:j])) % 2 else 1
            for m in range(1, s - j + 1):
                for out_name, coeff in blocks_of(letters, j, m):
                    new = letters[:j] + (out_name,) + letters[j + m :]
                    put(("cch", new), psign * coeff)
        for t in range(0, s):
            comp = alg.gen(letters[t]).src
            psign = -1 if (hat_sign + sigma_sum(letters[1 : t + 1])) % 2 else 1
            enm = D.chord_name(("e", comp), 1)
            new = letters[: t + 1] + (enm,) + letters[t + 1 :]
            put(("cch", new), psign)
        for h in range(1, s + 1):
            for t in range(0, s - h + 1):
                middle = letters[h : s - t]
                tail = letters[s - t :] if t else ()
                blockword = tail + letters[:h]
                syms = tuple(name_to_chord[x][0] for x in blockword)
                hits = table.get(syms)
                if not hits:
                    continue
                total = sum(name_to_chord[x][1] for x in blockword)
                if total > D.order:
                    continue
                sign_exp = sigma_sum(tail) * (sigma_sum(letters[:h]) + sigma_sum(middle))
                sgn = -1 if sign_exp % 2 else 1
                for out_sym, coeff in hits.items():
                    if symbols[out_sym].p_min > total:
                        continue
                    out_name = D.chord_name(out_sym, total)
                    # the spread of the marked letter enters negatively
                    put(("cch", (out_name,) + middle), -sgn * coeff)
        return out

    verdict = guard_verdict(
        (g.grading for g in dual.generators), window, max_len
    )
    return build_complex(
        stored,
        image,
        (-hi, -lo),
        verdict,
        max_len,
        meta={"kind": "hochschild", "dict_window": window, "t_order": D.order},
    )


def _cc_label_key(label):
    kind = label[0]
    if kind == "cce":
        return (0, label[1], ())
    if kind == "ccv":
        return (1, label[1], label[2])
    return (2, len(label[1]), label[1])


def verify_dictionary(
    cc: GradedChainComplex, ho: GradedChainComplex
) -> bool:
    """The generator bijection (component classes, check words headed by a
    component factor, hat words as plain words) pairs the two complexes;
    the differentials must be transposes of one another under it:
    <delta_cc(Phi u), Phi v> = <d_ho(v), u> entrywise on the window.
    """
    dict_window = cc.meta.get("dict_window")
    if dict_window is None:
        raise ValueError("first argument must be the cyclic tensor complex")
    lo, hi = ho.window

    def to_cc(label, alg):
        kind = label[0]
        if kind == "tau":
            return ("cce", label[1])
        if kind == "chk":
            return ("ccv", alg.gen(label[1][0]).dst, label[1])
        return ("cch", label[1])

    alg = ho.meta.get("algebra")
    if alg is None:
        raise ValueError("second argument must carry its algebra in meta")

    cc_index = {
        d: {lab: i for i, lab in enumerate(cc.labels(d))} for d in cc.basis
    }
    for d in range(lo - 1, hi + 2):
        for lab in ho.labels(d):
            mapped = to_cc(lab, alg)
            if cc_index.get(-d, {}).get(mapped) is None:
                raise ValueError(f"basis mismatch at degree {d}: {lab} has no partner")
    for d in range(lo, hi + 2):
        ho_cols = ho.labels(d)
        ho_rows = ho.labels(d - 1)
        ho_mat = ho.matrix(d)
        cc_mat = cc.matrix(-(d - 1))
        cc_rows = cc.labels(-d)
        cc_cols = cc.labels(-(d - 1))
        cc_row_index = {lab: i for i, lab in enumerate(cc_rows)}
        cc_col_index = {lab: i for i, lab in enumerate(cc_cols)}
        cc_entries = {}
        for (r, c), v in cc_mat.items():
            cc_entries[(r, c)] = v
        for col, vlab in enumerate(ho_cols):
            for row, ulab in enumerate(ho_rows):
                ho_val = ho_mat.get((row, col), Fraction(0))
                ccol = cc_col_index[to_cc(ulab, alg)]
                crow = cc_row_index[to_cc(vlab, alg)]
                cc_val = cc_entries.get((crow, ccol), Fraction(0))
                if ho_val != cc_val:
                    return False
    return True
