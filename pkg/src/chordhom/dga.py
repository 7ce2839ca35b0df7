"""Differential graded algebra specifications and the constructions that
consume them directly: validation, morphisms, augmentations, linearized
complexes, and the point-class deformation (adjoined degree-(n-2) element
with its relative construction).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import BaseRing, ChordAlgebra, Element, Generator, Word, rat
from .homology import EXACT, GradedChainComplex, build_complex


class RelQError(ValueError):
    """The supplied differential is inconsistent with the q^2 = 0 descent."""


@dataclass
class DGASpec:
    """A free DGA presentation: generators plus the differential on them.

    The differential of a generator is an Element; idempotent words encode
    unit terms.  ambient_dim is the sphere-dimension parameter n used by
    grading conventions of the derived constructions.
    """

    ring: BaseRing
    generators: list[Generator]
    differential: dict[str, Element]
    ambient_dim: int = 2
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.algebra = ChordAlgebra(self.ring, self.generators)
        for name, el in self.differential.items():
            self.algebra.gen(name)
            for w, _ in el.terms.items():
                if not w.is_idem and not self.algebra.composable(w.letters):
                    raise ValueError(f"differential of {name} has a non-composable word {w}")
                for letter in w.letters:
                    self.algebra.gen(letter)

    def d_gen(self, name: str) -> Element:
        return self.differential.get(name, Element.zero())

    def gen_names(self) -> list[str]:
        return [g.name for g in self.generators]

    def grading0_pure_gens(self) -> list[Generator]:
        return [g for g in self.generators if g.grading == 0 and g.src == g.dst]

    def d(self, x: Element) -> Element:
        return extend_leibniz(self, x)


def extend_leibniz(dga: DGASpec, x: Element) -> Element:
    """Graded Leibniz extension of the generator differential.

    d(c_1...c_m) = sum_j (-1)^(|c_1...c_{j-1}|) c_1...d(c_j)...c_m, with
    units produced inside a word absorbed multiplicatively.
    """
    alg = dga.algebra
    out = Element.zero()
    for word, coeff in x.terms.items():
        if word.is_idem:
            continue
        letters = word.letters
        sign_deg = 0
        for j, name in enumerate(letters):
            dj = dga.d_gen(name)
            if not dj.is_zero():
                piece = dj
                if j > 0:
                    piece = alg.multiply(Element.monomial(Word.of(letters[:j])), piece)
                if j < len(letters) - 1:
                    piece = alg.multiply(piece, Element.monomial(Word.of(letters[j + 1:])))
                sgn = -1 if sign_deg % 2 else 1
                out = out + piece.scale(coeff * sgn)
            sign_deg += alg.gen(name).grading
    return out


@dataclass
class ValidationReport:
    grading_issues: list[str] = field(default_factory=list)
    port_issues: list[str] = field(default_factory=list)
    d2_issues: list[tuple[str, Element]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.grading_issues or self.port_issues or self.d2_issues)

    def lines(self) -> list[str]:
        out = list(self.grading_issues) + list(self.port_issues)
        for name, el in self.d2_issues:
            out.append(f"d^2({name}) = {el!r} != 0")
        return out


def check_d_squared(dga: DGASpec) -> ValidationReport:
    """Full validation: gradings and ports of every differential term, then
    the symbolic d^2 = 0 check generator by generator."""
    alg = dga.algebra
    report = ValidationReport()
    for g in dga.generators:
        dg = dga.d_gen(g.name)
        for w, _ in dg.terms.items():
            deg = alg.grading(w)
            if deg != g.grading - 1:
                report.grading_issues.append(
                    f"d({g.name}): term {w} has grading {deg}, expected {g.grading - 1}"
                )
            if alg.dst(w) != g.dst or alg.src(w) != g.src:
                report.port_issues.append(
                    f"d({g.name}): term {w} has ports ({alg.src(w)},{alg.dst(w)}), "
                    f"expected ({g.src},{g.dst})"
                )
        dd = extend_leibniz(dga, dg)
        if not dd.is_zero():
            report.d2_issues.append((g.name, dd))
    return report


@dataclass
class DGAMorphism:
    """Algebra morphism determined by a grading-preserving assignment on
    generators; idempotents map to idempotents of the same component."""

    source: DGASpec
    target: DGASpec
    assignment: dict[str, Element]

    def __post_init__(self):
        if self.source.ring.k != self.target.ring.k:
            raise ValueError("source and target must share the base ring")

    def value(self, name: str) -> Element:
        return self.assignment.get(name, Element.zero())


def evaluate_morphism(f: DGAMorphism, x: Element) -> Element:
    alg = f.target.algebra
    out = Element.zero()
    for word, coeff in x.terms.items():
        if word.is_idem:
            out = out + alg.unit(word.comp).scale(coeff)
            continue
        acc = alg.unit(f.source.algebra.dst(word))
        for name in word.letters:
            acc = alg.multiply(acc, f.value(name))
            if acc.is_zero():
                break
        out = out + acc.scale(coeff)
    return out


def check_morphism(f: DGAMorphism) -> tuple[bool, str | None]:
    """Chain-map check f(dc) = d(f(c)) on every source generator; the
    returned counterexample names the first failing generator."""
    for g in f.source.generators:
        img = f.value(g.name)
        for w, _ in img.terms.items():
            if f.target.algebra.grading(w) != g.grading:
                return False, f"{g.name}: image term {w} breaks the grading"
        lhs = evaluate_morphism(f, f.source.d_gen(g.name))
        rhs = extend_leibniz(f.target, img)
        if lhs != rhs:
            return False, g.name
    return True, None


def compose_morphisms(g: DGAMorphism, f: DGAMorphism) -> DGAMorphism:
    """The composite g o f."""
    if f.target is not g.source and f.target.gen_names() != g.source.gen_names():
        raise ValueError("morphisms do not compose")
    assignment = {
        name: evaluate_morphism(g, f.value(name)) for name in f.source.gen_names()
    }
    return DGAMorphism(source=f.source, target=g.target, assignment=assignment)


@dataclass
class Augmentation:
    """Grading-0 algebra map to the base ring annihilating the differential."""

    values: dict[str, Fraction]

    def value(self, dga: DGASpec, name: str) -> Fraction:
        g = dga.algebra.gen(name)
        if g.grading != 0 or g.src != g.dst:
            return Fraction(0)
        return self.values.get(name, Fraction(0))

    def evaluate(self, dga: DGASpec, x: Element) -> Fraction:
        """Scalar value; mixed-port words evaluate to zero componentwise."""
        total = Fraction(0)
        for w, coeff in x.terms.items():
            if w.is_idem:
                total += coeff
                continue
            prod = coeff
            for name in w.letters:
                v = self.value(dga, name)
                if not v:
                    prod = Fraction(0)
                    break
                prod *= v
            total += prod
        return total


def is_valid_augmentation(dga: DGASpec, eps: Augmentation) -> bool:
    return all(
        eps.evaluate(dga, dga.d_gen(g.name)) == 0 for g in dga.generators
    )


def enumerate_augmentations(
    dga: DGASpec, value_set: Sequence
) -> list[Augmentation]:
    """Brute-force search over the finite value set on grading-0 pure
    generators; exhaustive over the set, not over Q."""
    values = [rat(v) for v in value_set]
    gens = [g.name for g in dga.grading0_pure_gens()]
    found = []
    for combo in itertools.product(values, repeat=len(gens)):
        eps = Augmentation({n: v for n, v in zip(gens, combo) if v})
        if is_valid_augmentation(dga, eps):
            found.append(eps)
    return found


def linearize(dga: DGASpec, eps: Augmentation) -> GradedChainComplex:
    """Chekanov linearization after the change of variables c -> c + eps(c).

    The complex is spanned by the generators; for a word b_1...b_m in d(c),
    position j contributes (prod_{i<j} eps(b_i)) (prod_{i>j} eps(b_i)) b_j.
    """
    if not is_valid_augmentation(dga, eps):
        raise ValueError("invalid augmentation")
    degs = sorted({g.grading for g in dga.generators})
    window = (min(degs), max(degs)) if degs else (0, 0)
    bases: dict[int, list] = {}
    for g in sorted(dga.generators, key=lambda g: g.name):
        bases.setdefault(g.grading, []).append(g.name)
    for d, labs in bases.items():
        labs.sort()

    def image(degree: int, label) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for w, coeff in dga.d_gen(label).terms.items():
            if w.is_idem:
                continue
            letters = w.letters
            vals = [eps.value(dga, n) for n in letters]
            for j, name in enumerate(letters):
                prod = coeff
                for i, v in enumerate(vals):
                    if i == j:
                        continue
                    if not v:
                        prod = Fraction(0)
                        break
                    prod *= v
                if prod:
                    out[name] = out.get(name, Fraction(0)) + prod
        return out

    return build_complex(bases, image, window, EXACT, meta={"kind": "linearized"})


def adjoin_q(
    dga: DGASpec,
    q_grading: int,
    component: int = 1,
    deformed: Mapping[str, Element] | None = None,
    name: str = "q",
) -> DGASpec:
    """Adjoin the closed special element q of the given grading (n - k - 2
    for a degree-k cycle class).  A deformed differential for the old
    generators may be supplied; it is validated for gradings and ports by
    check_d_squared downstream.
    """
    if name in {g.name for g in dga.generators}:
        raise ValueError(f"generator named {name} already present")
    gens = list(dga.generators) + [
        Generator(name, q_grading, src=component, dst=component)
    ]
    diff = dict(dga.differential)
    if deformed:
        missing = set(deformed) - {g.name for g in dga.generators}
        if missing:
            raise ValueError(f"deformed differential for unknown generators {missing}")
        diff.update({k: v for k, v in deformed.items()})
    diff[name] = Element.zero()
    return DGASpec(
        ring=dga.ring,
        generators=gens,
        differential=diff,
        ambient_dim=dga.ambient_dim,
        meta=dict(dga.meta, adjoined=name),
    )


@dataclass
class RelQResult:
    B: DGASpec
    target: DGASpec
    phi: DGAMorphism


def _bname(letters: tuple[str, ...]) -> str:
    return "b[" + ".".join(letters) + "]"


def _yname(letters: tuple[str, ...]) -> str:
    return "y[" + ".".join(letters) + "]"


def rel_q_construction(
    dga_q: DGASpec, q_name: str = "q", max_len: int = 3
) -> RelQResult:
    """The relative construction at a point class q of grading n-2.

    B is free on generators b_w = wq for q-free words w (the empty word
    gives b_[] = q itself) with the differential descended through q^2 = 0;
    the target is free on y_w of grading |w| + (n-2) together with a filler
    of grading n-1 whose differential is y_[].  Phi maps b_w to y_w.
    """
    alg = dga_q.algebra
    q = alg.gen(q_name)
    n = dga_q.ambient_dim
    if q.src != q.dst:
        raise ValueError("q must be a pure chord")
    if q.grading != n - 2:
        raise ValueError(
            f"point class must have grading n-2 = {n - 2}, got {q.grading}"
        )
    if not dga_q.d_gen(q_name).is_zero():
        raise RelQError("q must be closed")
    comp = q.src

    plain = [g for g in dga_q.generators if g.name != q_name]
    words: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_len):
        new = []
        for w in frontier:
            for g in plain:
                if not w:
                    if g.dst != comp:
                        continue
                else:
                    if alg.gen(w[-1]).src != g.dst:
                        continue
                new.append(w + (g.name,))
        frontier = new
        words.extend(new)
    words = [w for w in words if not w or alg.gen(w[-1]).src == comp]
    words.sort(key=lambda w: (len(w), w))

    def split_at_q(word: Word) -> tuple[tuple[str, ...], ...] | None:
        """Split a word ending in q into q-free blocks; None when it
        contains q^2 (killed by the relation)."""
        blocks: list[tuple[str, ...]] = []
        cur: list[str] = []
        for letter in word.letters:
            if letter == q_name:
                blocks.append(tuple(cur))
                cur = []
            else:
                cur.append(letter)
        if cur:
            raise RelQError(f"word {word} does not end with q")
        for b in blocks[1:]:
            if not b:
                return None
        return tuple(blocks)

    b_ring = BaseRing(1)
    word_set = set(words)
    b_gens = []
    b_diff: dict[str, Element] = {}
    for w in words:
        grading = (sum(alg.gen(x).grading for x in w) if w else 0) + q.grading
        b_gens.append(Generator(_bname(w), grading, src=1, dst=1))
    for w in words:
        if not w:
            b_diff[_bname(w)] = Element.zero()
            continue
        dw = extend_leibniz(dga_q, Element.monomial(Word.of(w)))
        image: dict[Word, Fraction] = {}
        for term, coeff in alg.multiply(dw, alg.generator_element(q_name)).terms.items():
            blocks = split_at_q(term)
            if blocks is None:
                continue  # adjacent q pair, killed by the relation
            if not blocks[0]:
                if len(blocks) == 1:
                    # a unit term in d(w) descends to a bare q, which the
                    # free presentation of B cannot carry consistently
                    raise RelQError(
                        f"d({'.'.join(w)}) has a unit term; q^2 = 0 descent fails"
                    )
                raise RelQError(
                    f"differential does not descend: term {term} starts with q"
                )
            for b in blocks:
                if b not in word_set:
                    raise RelQError(
                        f"differential leaves the length-{max_len} truncation at {term}"
                    )
            bword = Word.of(tuple(_bname(b) for b in blocks))
            image[bword] = image.get(bword, Fraction(0)) + coeff
        b_diff[_bname(w)] = Element(image)
    B = DGASpec(
        ring=b_ring,
        generators=b_gens,
        differential=b_diff,
        ambient_dim=n,
        meta={"relative_to": q_name, "max_len": max_len},
    )

    filler = "a[fill]"
    t_gens = [Generator(_yname(w), g.grading, 1, 1) for w, g in zip(words, b_gens)]
    t_gens.append(Generator(filler, n - 1, 1, 1))
    rename = {_bname(w): _yname(w) for w in words}

    def to_target(el: Element) -> Element:
        out: dict[Word, Fraction] = {}
        for wd, c in el.terms.items():
            nw = wd if wd.is_idem else Word.of(tuple(rename[x] for x in wd.letters))
            out[nw] = out.get(nw, Fraction(0)) + c
        return Element(out)

    t_diff = {_yname(w): to_target(b_diff[_bname(w)]) for w in words}
    t_diff[filler] = Element.monomial(Word.of([_yname(())]))
    target = DGASpec(
        ring=b_ring,
        generators=t_gens,
        differential=t_diff,
        ambient_dim=n,
        meta={"relative_to": q_name, "filler": filler},
    )

    phi = DGAMorphism(
        source=B,
        target=target,
        assignment={
            _bname(w): Element.monomial(Word.of([_yname(w)])) for w in words
        },
    )
    ok, counter = check_morphism(phi)
    if not ok:
        raise RelQError(f"relative construction failed the chain-map check at {counter}")
    return RelQResult(B=B, target=target, phi=phi)
