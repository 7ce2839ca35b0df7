"""Surgery complexes assembled from a filling model, a chord DGA, and
tables of mixed counts: the orbit/cyclic complex, the decorated-orbit plus
check/hat complex, and the full complex with the Morse block.

All geometric counts enter as data.  The built-in ball model carries the
orbit family gamma^k of grading n-1+2k and multiplicity k, the connecting
arrows from the (k+1)-st minimum-decorated orbit to the k-th maximum-
decorated one, and a single Morse generator of grading n hit by the first
orbit; mixed counts default to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import ChordAlgebra, Element, Word
from .complexes import (
    HoComplexSpec,
    _check_image,
    _decorated_bases,
    _hat_image,
    canonicalize_marked,
    cyclic_class,
)
from .dga import DGASpec, extend_leibniz
from .homology import (
    EXACT,
    GradedChainComplex,
    build_complex,
    enumerate_cyclic_words,
    guard_verdict,
)


class CountGradingError(ValueError):
    """A count entry violates its grading constraint."""


@dataclass(frozen=True)
class Orbit:
    label: str
    grading: int
    multiplicity: int = 1
    bad: bool = False


@dataclass
class FillingModel:
    """Orbit and Morse data of a filling, with count tables.

    orbit_factory, when set, generates the orbit list lazily up to a degree
    bound; otherwise the explicit orbit list is used.  Count dictionaries
    are keyed by generator labels.
    """

    n: int
    orbits: list[Orbit] = field(default_factory=list)
    morse: list[tuple[str, int]] = field(default_factory=list)
    orbit_diff: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    bott_diff: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    to_morse: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    morse_diff: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    morse_tau: dict[tuple[str, int], Fraction] = field(default_factory=dict)
    orbit_factory: Callable[[int], list[Orbit]] | None = None
    meta: dict = field(default_factory=dict)

    def orbits_up_to(self, max_degree: int) -> list[Orbit]:
        if self.orbit_factory is not None:
            return self.orbit_factory(max_degree)
        return [o for o in self.orbits if o.grading <= max_degree]

    def orbit(self, label: str, max_degree: int) -> Orbit:
        for o in self.orbits_up_to(max_degree):
            if o.label == label:
                return o
        raise KeyError(f"unknown orbit {label}")

    def d_orbit(self, gamma: str) -> list[tuple[str, Fraction]]:
        return [(b, c) for (g, b), c in self.orbit_diff.items() if g == gamma and c]

    def bott(self, gamma: str) -> list[tuple[str, Fraction]]:
        return [(b, c) for (g, b), c in self.bott_diff.items() if g == gamma and c]

    def morse_hits(self, gamma: str) -> list[tuple[str, Fraction]]:
        return [(p, c) for (g, p), c in self.to_morse.items() if g == gamma and c]


def builtin_ball_filling(n: int) -> FillingModel:
    """The ball model: orbits g^k (k >= 1) of grading n-1+2k and
    multiplicity k, trivial orbit differential, connecting counts from the
    minimum-decorated g^(k+1) to the maximum-decorated g^k, one Morse
    generator of grading n, and the forced count from g^1 onto it."""
    if n < 2:
        raise ValueError("ball model needs n >= 2")

    top_iteration = 64  # connecting counts are prefilled this far

    def factory(max_degree: int) -> list[Orbit]:
        out = []
        k = 1
        while n - 1 + 2 * k <= max_degree:
            if k > top_iteration:
                raise ValueError(
                    "ball model materialized beyond its prefilled arrows; "
                    "raise top_iteration for windows this deep"
                )
            out.append(Orbit(f"g{k}", n - 1 + 2 * k, k))
            k += 1
        return out

    model = FillingModel(n=n, orbit_factory=factory, morse=[("min", n)])
    model.meta["builtin"] = f"ball:{n}"
    for k in range(1, top_iteration):
        model.bott_diff[(f"g{k + 1}", f"g{k}")] = Fraction(1)
    model.to_morse[("g1", "min")] = Fraction(1)
    return model


def empty_filling(n: int) -> FillingModel:
    """No orbits and no Morse generators; surgery complexes reduce to the
    chord-side complexes."""
    return FillingModel(n=n, meta={"builtin": f"empty:{n}"})


@dataclass
class SurgeryCountTable:
    """Mixed counts feeding the surgery differentials.

    mixed_cyc holds the orbit-to-cyclic-class counts (divided by the class
    multiplicity in the orbit/cyclic block and by the orbit multiplicity in
    the hat block); ncheck and nhat feed the decorated blocks from
    minimum-decorated orbits; orbit_tau feeds the component classes.
    """

    mixed_cyc: dict[tuple[str, tuple[str, ...]], Fraction] = field(default_factory=dict)
    ncheck: dict[tuple[str, tuple[str, ...]], Fraction] = field(default_factory=dict)
    nhat: dict[tuple[str, tuple[str, ...]], Fraction] = field(default_factory=dict)
    orbit_tau: dict[tuple[str, int], Fraction] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @staticmethod
    def zero() -> "SurgeryCountTable":
        return SurgeryCountTable()

    def validate(self, filling: FillingModel, dga: DGASpec, max_degree: int = 64) -> None:
        alg = dga.algebra
        orbit_grading = {
            o.label: o.grading for o in filling.orbits_up_to(max_degree)
        }

        def word_deg(w: tuple[str, ...]) -> int:
            return sum(alg.gen(x).grading for x in w)

        for (g, w), c in self.mixed_cyc.items():
            if not c:
                continue
            if g in orbit_grading and orbit_grading[g] - word_deg(w) != 1:
                raise CountGradingError(
                    f"mixed count {g} -> ({'.'.join(w)}) violates |gamma|-|w|=1"
                )
        for (g, w), c in self.ncheck.items():
            if c and g in orbit_grading and orbit_grading[g] - word_deg(w) != 1:
                raise CountGradingError(
                    f"check count {g} -> {'.'.join(w)} violates |gamma|-|w|=1"
                )
        for (g, w), c in self.nhat.items():
            if c and g in orbit_grading and orbit_grading[g] - word_deg(w) != 2:
                raise CountGradingError(
                    f"hat count {g} -> {'.'.join(w)} violates |gamma|-|w|=2"
                )
        for (g, _j), c in self.orbit_tau.items():
            if c and g in orbit_grading and orbit_grading[g] != 1:
                raise CountGradingError(
                    f"component-class count from {g} violates |gamma|=1"
                )

    def normalize_cyclic_keys(self, alg: ChordAlgebra) -> None:
        """Fold cyclic-count keys onto canonical representatives."""
        folded: dict[tuple[str, tuple[str, ...]], Fraction] = {}
        for (g, w), c in self.mixed_cyc.items():
            cls = cyclic_class(alg, Word.of(w))
            if cls.is_zero:
                continue
            key = (g, cls.representative)
            folded[key] = folded.get(key, Fraction(0)) + c * cls.sign
        self.mixed_cyc = {k: v for k, v in folded.items() if v}


BAD_ORBIT_DOUBLING = Fraction(2)


def _orbit_bases(
    filling: FillingModel, window: tuple[int, int], decorated: bool, with_morse: bool
) -> dict[int, list]:
    lo, hi = window
    bases: dict[int, list] = {}
    for o in filling.orbits_up_to(hi + 2):
        if decorated:
            if lo - 1 <= o.grading <= hi + 1:
                bases.setdefault(o.grading, []).append(("ochk", o.label))
            if lo - 1 <= o.grading + 1 <= hi + 1:
                bases.setdefault(o.grading + 1, []).append(("ohat", o.label))
        else:
            if o.bad:
                continue
            if lo - 1 <= o.grading <= hi + 1:
                bases.setdefault(o.grading, []).append(("orb", o.label))
    if with_morse:
        for p, deg in filling.morse:
            if lo - 1 <= deg <= hi + 1:
                bases.setdefault(deg, []).append(("mrs", p))
    return bases


def _merge_bases(a: dict[int, list], b: dict[int, list]) -> dict[int, list]:
    out: dict[int, list] = {d: list(v) for d, v in a.items()}
    for d, labs in b.items():
        out.setdefault(d, []).extend(labs)
    return out


def build_lch_surgery(
    filling: FillingModel,
    dga: DGASpec | None,
    counts: SurgeryCountTable,
    window: tuple[int, int],
    max_len: int = 8,
) -> GradedChainComplex:
    """Good orbits plus good cyclic classes, with the orbit differential
    divided by the target multiplicity and the mixed block divided by the
    cyclic multiplicity.  dga=None builds the orbit-only complex (no
    surgery locus)."""
    lo, hi = window
    orbit_info = {o.label: o for o in filling.orbits_up_to(hi + 2)}

    word_bases: dict[int, list] = {}
    if dga is not None:
        alg = dga.algebra
        counts.validate(filling, dga)
        counts.normalize_cyclic_keys(alg)
        verdict = guard_verdict((g.grading for g in dga.generators), window, max_len)
        for w in enumerate_cyclic_words(alg, (lo - 1, hi + 1), max_len, canonical_only=True):
            cls = cyclic_class(alg, w)
            if cls.is_zero or cls.representative != w.letters:
                continue
            word_bases.setdefault(alg.grading(w), []).append(("cyc", w.letters))
        for labs in word_bases.values():
            labs.sort()
    else:
        verdict = EXACT
    bases = _merge_bases(_orbit_bases(filling, window, False, False), word_bases)

    def image(degree: int, label) -> dict:
        kind = label[0]
        out: dict = {}
        if kind == "orb":
            gamma = label[1]
            for beta, c in filling.d_orbit(gamma):
                if beta in orbit_info and not orbit_info[beta].bad:
                    kappa = Fraction(orbit_info[beta].multiplicity)
                    out[("orb", beta)] = out.get(("orb", beta), Fraction(0)) + c / kappa
            if dga is not None:
                for (g, w), c in counts.mixed_cyc.items():
                    if g != gamma or not c:
                        continue
                    cls = cyclic_class(dga.algebra, Word.of(w))
                    kappa = Fraction(cls.multiplicity)
                    out[("cyc", w)] = out.get(("cyc", w), Fraction(0)) + c / kappa
            return out
        _, letters = label
        dw = extend_leibniz(dga, Element.monomial(Word.of(letters)))
        for term, coeff in dw.terms.items():
            if term.is_idem:
                continue
            cls = cyclic_class(alg, term)
            if cls.is_zero:
                continue
            key = ("cyc", cls.representative)
            out[key] = out.get(key, Fraction(0)) + coeff * cls.sign
        return out

    return build_complex(
        bases, image, window, verdict, max_len, meta={"kind": "lch", "n": filling.n}
    )


def _s_operator_terms(alg: ChordAlgebra, letters: tuple[str, ...]):
    """Mark each letter with the alternating prefix sign and rotate to
    mark-first form; yields (word, coefficient)."""
    pdeg = 0
    for j, name in enumerate(letters):
        s = -1 if pdeg % 2 else 1
        dw, rot = canonicalize_marked(alg, letters, j, "hat")
        yield dw.word, s * rot
        pdeg += alg.gen(name).grading


def _shplus_orbit_image(
    filling: FillingModel,
    dga: DGASpec | None,
    counts: SurgeryCountTable,
    orbit_info: dict[str, Orbit],
    label,
) -> dict:
    alg = dga.algebra if dga is not None else None
    kind, gamma = label
    out: dict = {}
    if kind == "ochk":
        for beta, c in filling.d_orbit(gamma):
            if beta in orbit_info:
                kappa = Fraction(orbit_info[beta].multiplicity)
                out[("ochk", beta)] = out.get(("ochk", beta), Fraction(0)) + c / kappa
        for beta, c in filling.bott(gamma):
            out[("ohat", beta)] = out.get(("ohat", beta), Fraction(0)) + c
        for (g, w), c in counts.ncheck.items():
            if g == gamma and c:
                out[("chk", w)] = out.get(("chk", w), Fraction(0)) + c
        for (g, w), c in counts.nhat.items():
            if g == gamma and c:
                out[("hat", w)] = out.get(("hat", w), Fraction(0)) + c
        return out
    # maximum-decorated orbits
    info = orbit_info[gamma]
    if info.bad:
        out[("ochk", gamma)] = out.get(("ochk", gamma), Fraction(0)) + BAD_ORBIT_DOUBLING
    kappa_g = Fraction(info.multiplicity)
    for beta, c in filling.d_orbit(gamma):
        if beta in orbit_info:
            out[("ohat", beta)] = out.get(("ohat", beta), Fraction(0)) + c / kappa_g
    if alg is not None:
        for (g, w), c in counts.mixed_cyc.items():
            if g != gamma or not c:
                continue
            for word, s in _s_operator_terms(alg, w):
                out[("hat", word)] = out.get(("hat", word), Fraction(0)) + c * s / kappa_g
    return out


def build_shplus_surgery(
    filling: FillingModel,
    dga: DGASpec | None,
    counts: SurgeryCountTable,
    window: tuple[int, int],
    max_len: int = 8,
) -> GradedChainComplex:
    """Decorated orbits (bad ones included) plus the check/hat chord
    complex, with the stated block differential.  dga=None builds the
    orbit-only complex."""
    lo, hi = window
    orbit_info = {o.label: o for o in filling.orbits_up_to(hi + 2)}
    if dga is not None:
        counts.validate(filling, dga)
        counts.normalize_cyclic_keys(dga.algebra)
        verdict = guard_verdict((g.grading for g in dga.generators), window, max_len)
        word_bases = _decorated_bases(dga, window, max_len, with_tau=False)
    else:
        verdict = EXACT
        word_bases = {}
    bases = _merge_bases(_orbit_bases(filling, window, True, False), word_bases)

    def image(degree: int, label) -> dict:
        kind = label[0]
        if kind in ("ochk", "ohat"):
            return _shplus_orbit_image(filling, dga, counts, orbit_info, label)
        if kind == "chk":
            return _check_image(dga, label[1])
        return _hat_image(dga, label[1])

    return build_complex(
        bases, image, window, verdict, max_len, meta={"kind": "shplus", "n": filling.n}
    )


def build_sh_surgery(
    filling: FillingModel,
    dga: DGASpec | None,
    counts: SurgeryCountTable,
    window: tuple[int, int],
    max_len: int = 8,
    ho_spec: HoComplexSpec | None = None,
) -> GradedChainComplex:
    """The full complex: decorated orbits, the Morse block, the completed
    chord complex, and the coupling blocks.  dga=None builds the orbit and
    Morse part alone."""
    lo, hi = window
    orbit_info = {o.label: o for o in filling.orbits_up_to(hi + 2)}
    if dga is not None:
        counts.validate(filling, dga)
        counts.normalize_cyclic_keys(dga.algebra)
        spec = ho_spec or HoComplexSpec(dga=dga)
        verdict = guard_verdict((g.grading for g in dga.generators), window, max_len)
        word_bases = _decorated_bases(dga, window, max_len, with_tau=True)
    else:
        spec = None
        verdict = EXACT
        word_bases = {}
    bases = _merge_bases(_orbit_bases(filling, window, True, True), word_bases)

    def image(degree: int, label) -> dict:
        kind = label[0]
        if kind in ("ochk", "ohat"):
            out = _shplus_orbit_image(filling, dga, counts, orbit_info, label)
            if kind == "ochk":
                gamma = label[1]
                if not orbit_info[gamma].bad:
                    for p, c in filling.morse_hits(gamma):
                        out[("mrs", p)] = out.get(("mrs", p), Fraction(0)) + c
                    for (g, j), c in counts.orbit_tau.items():
                        if g == gamma and c:
                            out[("tau", j)] = out.get(("tau", j), Fraction(0)) + c
            return out
        if kind == "mrs":
            p = label[1]
            out = {}
            for (a, b), c in filling.morse_diff.items():
                if a == p and c:
                    out[("mrs", b)] = out.get(("mrs", b), Fraction(0)) + c
            for (a, j), c in filling.morse_tau.items():
                if a == p and c:
                    out[("tau", j)] = out.get(("tau", j), Fraction(0)) + c
            return out
        if kind == "tau":
            return {}
        if kind == "chk":
            out = _check_image(dga, label[1])
            letters = label[1]
            if len(letters) == 1:
                coeff = spec.unit_coeff(letters[0])
                if coeff:
                    comp = dga.algebra.gen(letters[0]).src
                    out[("tau", comp)] = out.get(("tau", comp), Fraction(0)) + coeff
            return out
        return _hat_image(dga, label[1])

    return build_complex(
        bases, image, window, verdict, max_len, meta={"kind": "sh", "n": filling.n}
    )


# ---- cobordism maps ----------------------------------------------------------


@dataclass
class CobordismCounts:
    """Count tables defining a degree-0 map between surgery complexes.

    The orbit blocks divide by the target multiplicity on minimum-decorated
    orbits and by the source multiplicity on maximum-decorated ones; the
    cyclic block divides by the class multiplicity.
    """

    orbit_orbit: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    orbit_orbit_bott: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    orbit_morse: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    orbit_cyc: dict[tuple[str, tuple[str, ...]], Fraction] = field(default_factory=dict)
    orbit_check_word: dict[tuple[str, tuple[str, ...]], Fraction] = field(default_factory=dict)
    orbit_hat_word: dict[tuple[str, tuple[str, ...]], Fraction] = field(default_factory=dict)
    orbit_tau: dict[tuple[str, int], Fraction] = field(default_factory=dict)
    morse_morse: dict[tuple[str, str], Fraction] = field(default_factory=dict)


@dataclass
class ChainMapReport:
    mapping: dict
    defects: list

    @property
    def ok(self) -> bool:
        return not self.defects


def assemble_cobordism_map(
    counts: CobordismCounts,
    source: GradedChainComplex,
    target: GradedChainComplex,
    target_kappa: dict[str, int] | None = None,
    source_kappa: dict[str, int] | None = None,
    algebra: ChordAlgebra | None = None,
) -> ChainMapReport:
    """Assemble the block map and verify F d - d F = 0 on the window."""
    target_kappa = target_kappa or {}
    source_kappa = source_kappa or {}

    def kappa_t(beta: str) -> Fraction:
        return Fraction(target_kappa.get(beta, 1))

    def kappa_s(gamma: str) -> Fraction:
        return Fraction(source_kappa.get(gamma, 1))

    def f_of(label) -> dict:
        kind = label[0]
        out: dict = {}
        if kind in ("orb", "ochk"):
            gamma = label[1]
            for (g, b), c in counts.orbit_orbit.items():
                if g == gamma and c:
                    out[(kind, b)] = out.get((kind, b), Fraction(0)) + c / kappa_t(b)
            if kind == "ochk":
                for (g, b), c in counts.orbit_orbit_bott.items():
                    if g == gamma and c:
                        out[("ohat", b)] = out.get(("ohat", b), Fraction(0)) + c
                for (g, w), c in counts.orbit_check_word.items():
                    if g == gamma and c:
                        out[("chk", w)] = out.get(("chk", w), Fraction(0)) + c
                for (g, w), c in counts.orbit_hat_word.items():
                    if g == gamma and c:
                        out[("hat", w)] = out.get(("hat", w), Fraction(0)) + c
                for (g, p), c in counts.orbit_morse.items():
                    if g == gamma and c:
                        out[("mrs", p)] = out.get(("mrs", p), Fraction(0)) + c
                for (g, j), c in counts.orbit_tau.items():
                    if g == gamma and c:
                        out[("tau", j)] = out.get(("tau", j), Fraction(0)) + c
            else:
                for (g, w), c in counts.orbit_cyc.items():
                    if g == gamma and c:
                        if algebra is None:
                            raise ValueError("cyclic counts need the chord algebra")
                        cls = cyclic_class(algebra, Word.of(w))
                        out[("cyc", cls.representative)] = (
                            out.get(("cyc", cls.representative), Fraction(0))
                            + c * cls.sign / Fraction(cls.multiplicity)
                        )
            return out
        if kind == "ohat":
            gamma = label[1]
            for (g, b), c in counts.orbit_orbit.items():
                if g == gamma and c:
                    out[("ohat", b)] = out.get(("ohat", b), Fraction(0)) + c / kappa_s(gamma)
            for (g, w), c in counts.orbit_cyc.items():
                if g == gamma and c:
                    if algebra is None:
                        raise ValueError("cyclic counts need the chord algebra")
                    for word, s in _s_operator_terms(algebra, w):
                        out[("hat", word)] = (
                            out.get(("hat", word), Fraction(0)) + c * s / kappa_s(gamma)
                        )
            return out
        if kind == "mrs":
            p = label[1]
            for (a, b), c in counts.morse_morse.items():
                if a == p and c:
                    out[("mrs", b)] = out.get(("mrs", b), Fraction(0)) + c
            return out
        return {}

    lo, hi = source.window
    mapping: dict = {}
    for d in range(lo - 1, hi + 2):
        for lab in source.labels(d):
            mapping[lab] = f_of(lab)

    tgt_index = {
        d: {lab: i for i, lab in enumerate(target.labels(d))}
        for d in target.basis
    }
    defects = []
    for d in range(lo, hi + 1):
        src_labels = source.labels(d)
        for col, lab in enumerate(src_labels):
            # F(dx)
            fdx: dict = {}
            for row, coeff in source.boundary_of(d, col).items():
                tlab = source.labels(d - 1)[row]
                for out_lab, c in mapping.get(tlab, {}).items():
                    fdx[out_lab] = fdx.get(out_lab, Fraction(0)) + coeff * c
            # d(Fx)
            dfx: dict = {}
            for out_lab, c in mapping.get(lab, {}).items():
                idx = tgt_index.get(d, {}).get(out_lab)
                if idx is None:
                    continue
                for row, coeff in target.boundary_of(d, idx).items():
                    t2 = target.labels(d - 1)[row]
                    dfx[t2] = dfx.get(t2, Fraction(0)) + c * coeff
            keys = set(fdx) | set(dfx)
            for k in keys:
                delta = fdx.get(k, Fraction(0)) - dfx.get(k, Fraction(0))
                if delta:
                    defects.append((d, lab, k, delta))
    return ChainMapReport(mapping=mapping, defects=defects)


# ---- the multiplicity-rescaling isomorphism ----------------------------------


def build_ch_complex(
    filling: FillingModel, window: tuple[int, int], convention: str = "target"
) -> GradedChainComplex:
    """Orbit-only complex under either multiplicity convention: the count
    divided by the multiplicity of the target orbit, or of the source."""
    if convention not in ("target", "source"):
        raise ValueError("convention is 'target' or 'source'")
    lo, hi = window
    orbit_info = {o.label: o for o in filling.orbits_up_to(hi + 2)}
    bases = _orbit_bases(filling, window, False, False)

    def image(degree: int, label) -> dict:
        gamma = label[1]
        out: dict = {}
        for beta, c in filling.d_orbit(gamma):
            if beta not in orbit_info or orbit_info[beta].bad:
                continue
            div = (
                Fraction(orbit_info[beta].multiplicity)
                if convention == "target"
                else Fraction(orbit_info[gamma].multiplicity)
            )
            out[("orb", beta)] = out.get(("orb", beta), Fraction(0)) + c / div
        return out

    return build_complex(bases, image, window, EXACT, meta={"kind": f"ch/{convention}"})


def verify_kappa_isomorphism(filling: FillingModel, window: tuple[int, int]) -> bool:
    """gamma -> multiplicity(gamma) * gamma intertwines the target-divided
    differential with the source-divided one, checked entrywise."""
    lo, hi = window
    src = build_ch_complex(filling, window, "target")
    tgt = build_ch_complex(filling, window, "source")
    info = {o.label: o for o in filling.orbits_up_to(hi + 2)}
    for d in range(lo, hi + 2):
        labels = src.labels(d)
        tlabels = tgt.labels(d)
        if labels != tlabels:
            return False
        for col, lab in enumerate(labels):
            gamma = lab[1]
            phi_dx: dict[int, Fraction] = {}
            for row, c in src.boundary_of(d, col).items():
                beta = src.labels(d - 1)[row][1]
                phi_dx[row] = c * Fraction(info[beta].multiplicity)
            d_phix: dict[int, Fraction] = {}
            for row, c in tgt.boundary_of(d, col).items():
                d_phix[row] = c * Fraction(info[gamma].multiplicity)
            if {k: v for k, v in phi_dx.items() if v} != {
                k: v for k, v in d_phix.items() if v
            }:
                return False
    return True
