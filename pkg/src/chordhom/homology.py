"""Exact homology engine: graded bases, sparse rational boundary maps,
fraction-free rank computation, Betti tables, and finiteness guards.

A complex stores bases for every degree of its window plus a one-degree
halo on each side, so the boundary maps into and out of the window edges
are complete.  Window-edge degrees are still flagged in every Betti table;
acceptance-grade reads should stick to interior degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .algebra import ChordAlgebra, Word

EXACT = "EXACT"
TRUNCATED = "TRUNCATED"

Label = Hashable
SparseMatrix = dict[tuple[int, int], Fraction]


class DSquareError(ValueError):
    """The boundary maps of a complex do not square to zero."""


@dataclass
class GradedChainComplex:
    """Per-degree bases with boundary matrices (degree d -> d-1) over Q.

    basis covers window plus halo degrees lo-1 and hi+1.  diffs[d] is the
    sparse matrix of the boundary from basis[d] to basis[d-1], stored as
    {(row, col): coeff}.
    """

    basis: dict[int, list[Label]]
    diffs: dict[int, SparseMatrix]
    window: tuple[int, int]
    verdict: str = EXACT
    max_len: int | None = None
    meta: dict = field(default_factory=dict)

    def dim(self, degree: int) -> int:
        return len(self.basis.get(degree, []))

    def labels(self, degree: int) -> list[Label]:
        return self.basis.get(degree, [])

    def matrix(self, degree: int) -> SparseMatrix:
        return self.diffs.get(degree, {})

    def boundary_of(self, degree: int, col: int) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for (r, c), v in self.matrix(degree).items():
            if c == col:
                out[r] = v
        return out

    def d_squared_report(self) -> list[tuple[int, tuple[int, int], Fraction]]:
        """Entries of boundary(d-1) * boundary(d) that are nonzero."""
        bad = []
        lo, hi = self.window
        for d in range(lo + 1, hi + 2):
            m_hi = self.matrix(d)
            m_lo = self.matrix(d - 1)
            if not m_hi or not m_lo:
                continue
            by_col: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, c), v in m_hi.items():
                by_col.setdefault(c, []).append((r, v))
            lo_by_col: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, c), v in m_lo.items():
                lo_by_col.setdefault(c, []).append((r, v))
            for c, col_entries in by_col.items():
                acc: dict[int, Fraction] = {}
                for mid, v in col_entries:
                    for r, w in lo_by_col.get(mid, []):
                        acc[r] = acc.get(r, Fraction(0)) + v * w
                for r, total in acc.items():
                    if total:
                        bad.append((d, (r, c), total))
        return bad


def rank(matrix: SparseMatrix, nrows: int, ncols: int) -> int:
    """Exact rank via fraction-free (Bareiss) elimination over the integers.

    Columns are cleared of denominators first; that rescaling does not
    change the rank.
    """
    if not matrix or nrows == 0 or ncols == 0:
        return 0
    cols: dict[int, dict[int, Fraction]] = {}
    for (r, c), v in matrix.items():
        if v:
            cols.setdefault(c, {})[r] = v
    dense: list[list[int]] = []
    for c, col in cols.items():
        denom = 1
        for v in col.values():
            denom = denom * v.denominator // _gcd(denom, v.denominator)
        vec = [0] * nrows
        for r, v in col.items():
            vec[r] = int(v * denom)
        dense.append(vec)
    # dense holds columns; eliminate over rows of the transposed layout.
    m = dense
    n_rows = len(m)
    n_cols = nrows
    r = 0
    prev = 1
    for c in range(n_cols):
        pivot = None
        for i in range(r, n_rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, n_rows):
            if not any(m[i][c2] for c2 in range(c, n_cols)):
                continue
            for c2 in range(c + 1, n_cols):
                m[i][c2] = (m[r][c] * m[i][c2] - m[i][c] * m[r][c2]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class BettiTable:
    """Degree-indexed homology ranks with window-edge flags."""

    ranks: dict[int, int]
    flagged: frozenset[int]
    verdict: str = EXACT

    def rank(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    def euler(self, window: tuple[int, int] | None = None) -> Fraction:
        lo, hi = window if window else (min(self.ranks), max(self.ranks))
        return sum(
            ((-1) ** d) * r for d, r in self.ranks.items() if lo <= d <= hi
        )


def betti(complex: GradedChainComplex) -> BettiTable:
    """Exact homology ranks on the complex window.

    Requires d^2 = 0 on the window; raises DSquareError otherwise.
    """
    bad = complex.d_squared_report()
    if bad:
        d, pos, val = bad[0]
        raise DSquareError(
            f"d^2 != 0 at degree {d}, entry {pos} = {val} "
            f"({len(bad)} nonzero entries total)"
        )
    lo, hi = complex.window
    ranks: dict[int, int] = {}
    rk: dict[int, int] = {}
    for d in range(lo, hi + 2):
        rk[d] = rank(complex.matrix(d), complex.dim(d - 1), complex.dim(d))
    for d in range(lo, hi + 1):
        dim = complex.dim(d)
        h = dim - rk[d] - rk[d + 1]
        ranks[d] = h
    return BettiTable(ranks=ranks, flagged=frozenset({lo, hi}), verdict=complex.verdict)


def is_boundary(
    complex: GradedChainComplex, degree: int, vector: dict[int, Fraction]
) -> bool:
    """Is the given degree-`degree` chain in the image of the boundary map?"""
    m = dict(complex.matrix(degree + 1))
    ncols = complex.dim(degree + 1)
    base = rank(m, complex.dim(degree), ncols)
    aug = dict(m)
    for r, v in vector.items():
        if v:
            aug[(r, ncols)] = v
    return rank(aug, complex.dim(degree), ncols + 1) == base


def verify_les_ranks(
    t1: BettiTable, t2: BettiTable, t3: BettiTable, window: tuple[int, int]
) -> bool:
    """Necessary rank conditions of an exact triangle t1 -> t2 -> t3 -> t1[-1].

    Checks Euler-characteristic additivity chi(t1) = chi(t2) + chi(t3) over
    the window and the per-degree bound rank(t1_d) <= rank(t2_d) + rank(t3_d).
    The window must avoid edge-flagged degrees of all three tables.
    """
    lo, hi = window
    for t in (t1, t2, t3):
        for d in range(lo, hi + 1):
            if d in t.flagged:
                raise ValueError(
                    f"window [{lo},{hi}] touches edge-flagged degree {d}"
                )
    if t1.euler(window) != t2.euler(window) + t3.euler(window):
        return False
    for d in range(lo, hi + 1):
        if t1.rank(d) > t2.rank(d) + t3.rank(d):
            return False
    return True


# ---- word enumeration with finiteness guard ---------------------------------


def guard_verdict(
    gradings: Iterable[int], window: tuple[int, int], max_len: int, mark_allowance: int = 0
) -> str:
    """EXACT when every available generator has grading >= 1 and max_len
    covers the top of the window (plus room for any fixed marked letter);
    TRUNCATED otherwise."""
    gradings = list(gradings)
    if not gradings:
        return EXACT
    if min(gradings) < 1:
        return TRUNCATED
    if max_len < window[1] + mark_allowance:
        return TRUNCATED
    return EXACT


def enumerate_cyclic_words(
    algebra: ChordAlgebra,
    window: tuple[int, int],
    max_len: int,
    *,
    canonical_only: bool = False,
) -> list[Word]:
    """All cyclically composable nonempty words with degree in the window
    and length at most max_len, in deterministic order.

    canonical_only keeps only words that are minimal (in sort order) among
    their rotations, one necklace representative per orbit.
    """
    lo, hi = window
    names = sorted(algebra.generators)
    if not names:
        return []
    gmin = min(g.grading for g in algebra.generators.values())
    gmax = max(g.grading for g in algebra.generators.values())
    out: list[Word] = []

    def feasible(deg: int, length: int) -> bool:
        for r in range(0, max_len - length + 1):
            low = deg + r * gmin
            high = deg + r * gmax
            if low <= hi and high >= lo:
                return True
        return False

    def extend(letters: list[str], deg: int):
        if letters:
            word_ok = lo <= deg <= hi and algebra.src(Word.of(tuple(letters))) == algebra.gen(letters[0]).dst
            if word_ok:
                w = Word.of(tuple(letters))
                if not canonical_only or _is_canonical_rotation(algebra, w):
                    out.append(w)
        if len(letters) == max_len:
            return
        for n in names:
            g = algebra.gen(n)
            if letters and g.dst != algebra.gen(letters[-1]).src:
                continue
            nd = deg + g.grading
            if not feasible(nd, len(letters) + 1):
                continue
            letters.append(n)
            extend(letters, nd)
            letters.pop()

    extend([], 0)
    out.sort(key=lambda w: w.sort_key())
    return out


def _is_canonical_rotation(algebra: ChordAlgebra, word: Word) -> bool:
    key = word.sort_key()
    return all(w.sort_key() >= key for w, _ in algebra.rotations(word))


def build_complex(
    bases: dict[int, list[Label]],
    image: Callable[[int, Label], dict[Label, Fraction]],
    window: tuple[int, int],
    verdict: str,
    max_len: int | None = None,
    meta: dict | None = None,
) -> GradedChainComplex:
    """Assemble a GradedChainComplex from per-degree label lists and a
    function producing the boundary image of each basis label."""
    lo, hi = window
    index: dict[int, dict[Label, int]] = {
        d: {lab: i for i, lab in enumerate(labs)} for d, labs in bases.items()
    }
    diffs: dict[int, SparseMatrix] = {}
    for d in range(lo, hi + 2):
        labs = bases.get(d, [])
        if not labs:
            continue
        target = index.get(d - 1, {})
        mat: SparseMatrix = {}
        for col, lab in enumerate(labs):
            for tlab, coeff in image(d, lab).items():
                if not coeff:
                    continue
                row = target.get(tlab)
                if row is None:
                    continue
                mat[(row, col)] = mat.get((row, col), Fraction(0)) + coeff
        diffs[d] = {k: v for k, v in mat.items() if v}
    return GradedChainComplex(
        basis=bases,
        diffs=diffs,
        window=window,
        verdict=verdict,
        max_len=max_len,
        meta=meta or {},
    )
