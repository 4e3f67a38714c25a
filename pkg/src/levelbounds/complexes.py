"""Finite free chain complexes over R: Koszul, Hom, homology, minimality.

Complexes are stored with internal homological degrees 0..length-1 and a
recorded shift, so lo is always 0 internally.  Differentials are degree
zero maps and the composite of consecutive differentials is checked to
vanish at construction time.

Koszul complexes built here carry their defining sequence as metadata;
Hom complexes of two tagged Koszul complexes inherit the concatenated
sequence, which level bounds exploit (the Hom of Koszul complexes is a
shifted Koszul complex on the concatenation).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import UsageError
from .modules import (
    FreeModule,
    GradedModule,
    ModMap,
    PresentedSubmodule,
    kernel_presented,
    subquotient,
    zero_map,
)
from .polys import Poly
from .rings import QuotientRing


@dataclass(frozen=True)
class KoszulTag:
    """Marks a complex as a sum of shifts of the Koszul complex on seq."""

    seq: tuple


class HomologyData:
    """Homology at one degree: representatives and a presentation."""

    def __init__(self, degree: int, presented: PresentedSubmodule):
        self.degree = degree
        self.presented = presented
        self.module = presented.module
        self.is_zero = presented.module.gens.rank == 0

    def __repr__(self):
        return f"HomologyData(degree={self.degree}, gens={self.module.gens.rank})"


class ChainComplex:
    """A finite complex of twisted free modules with degree zero maps."""

    def __init__(
        self,
        ring: QuotientRing,
        modules: Sequence[FreeModule],
        diffs: Sequence[ModMap],
        shift: int = 0,
        koszul: Optional[KoszulTag] = None,
    ):
        if not modules:
            raise UsageError("a complex needs at least one module")
        if len(diffs) != len(modules) - 1:
            raise UsageError("expected one differential per adjacent pair")
        for m in modules:
            if m.ring != ring:
                raise UsageError("module over a different ring")
        for i, d in enumerate(diffs, start=1):
            if d.degree != 0:
                raise UsageError("differentials must have internal degree zero")
            if d.source != modules[i] or d.target != modules[i - 1]:
                raise UsageError(f"differential {i} does not match adjacent modules")
        for i in range(2, len(modules)):
            if not diffs[i - 2].compose(diffs[i - 1]).is_zero():
                raise UsageError(f"differentials at {i} do not compose to zero")
        self.ring = ring
        self.modules = tuple(modules)
        self.diffs = tuple(diffs)
        self.shift = shift
        self.koszul = koszul
        self._homology: dict = {}
        self._lock = threading.Lock()

    @property
    def lo(self) -> int:
        return 0

    @property
    def hi(self) -> int:
        return len(self.modules) - 1

    def module(self, i: int) -> FreeModule:
        if not 0 <= i <= self.hi:
            raise UsageError(f"degree {i} outside 0..{self.hi}")
        return self.modules[i]

    def diff(self, i: int) -> ModMap:
        """The differential F_i -> F_(i-1), for 1 <= i <= hi."""
        if not 1 <= i <= self.hi:
            raise UsageError(f"no differential at {i}")
        return self.diffs[i - 1]

    def nonzero_degrees(self) -> list:
        return [i for i in range(len(self.modules)) if self.modules[i].rank > 0]

    def is_zero_complex(self) -> bool:
        return not self.nonzero_degrees()

    def total_rank(self) -> int:
        return sum(m.rank for m in self.modules)

    def is_minimal(self) -> bool:
        return all(d.entries_in_maximal_ideal() for d in self.diffs)

    def homology(self, i: int) -> HomologyData:
        if not 0 <= i <= self.hi:
            raise UsageError(f"degree {i} outside 0..{self.hi}")
        if i not in self._homology:
            with self._lock:
                if i not in self._homology:
                    free = self.modules[i]
                    if i + 1 <= self.hi:
                        image = self.diffs[i].columns()
                    else:
                        image = []
                    if i >= 1:
                        ker = kernel_presented(self.diffs[i - 1])
                        numer = list(ker.vectors)
                    else:
                        numer = [free.basis_vector(k) for k in range(free.rank)]
                    self._homology[i] = HomologyData(i, subquotient(free, numer, image))
        return self._homology[i]

    def __repr__(self):
        ranks = ", ".join(str(m.rank) for m in self.modules)
        return f"ChainComplex(ranks=[{ranks}], shift={self.shift})"


def single_module_complex(free: FreeModule, shift: int = 0) -> ChainComplex:
    return ChainComplex(free.ring, [free], [], shift=shift)


# ---------------------------------------------------------------------------
# Koszul complexes


def koszul_complex(seq: Sequence[Poly], ring: QuotientRing) -> ChainComplex:
    """The Koszul complex on seq over R, basis e_S ordered lex in each degree.

    The differential takes e_S for S = (i_1 < .. < i_k) to the
    alternating sum of f_(i_j) e_(S minus i_j) with sign +1 on the first
    entry.  Sequence entries must be nonzero homogeneous polynomials of
    positive degree; their images in R may vanish.
    """
    elems = []
    for f in seq:
        if not isinstance(f, Poly) or f.ring != ring.poly_ring:
            raise UsageError("sequence entries must come from the ambient ring")
        if f.is_zero() or not f.is_homogeneous() or f.degree() < 1:
            raise UsageError(f"sequence entry must be homogeneous of positive degree: {f}")
        elems.append(f)
    n = len(elems)
    degs = [f.degree() for f in elems]
    zero = ring.poly_ring.zero()
    subsets = [list(combinations(range(n), k)) for k in range(n + 1)]
    modules = []
    for k in range(n + 1):
        twists = tuple(sum(degs[i] for i in s) for s in subsets[k])
        modules.append(FreeModule(ring, twists))
    diffs = []
    for k in range(1, n + 1):
        index = {s: idx for idx, s in enumerate(subsets[k - 1])}
        rows = [[zero] * len(subsets[k]) for _ in range(len(subsets[k - 1]))]
        for col, s in enumerate(subsets[k]):
            for j, i in enumerate(s):
                rest = tuple(t for t in s if t != i)
                sign = 1 if j % 2 == 0 else -1
                rows[index[rest]][col] = elems[i].scale(sign)
        diffs.append(ModMap(modules[k], modules[k - 1], rows))
    nf_seq = tuple(ring.nf(f) for f in elems)
    return ChainComplex(ring, modules, diffs, koszul=KoszulTag(seq=nf_seq))


# ---------------------------------------------------------------------------
# minimalization


def minimalize(C: ChainComplex) -> ChainComplex:
    """Strip unit entries by Gaussian cancellation on the complex.

    A constant entry u at (a, b) of the differential F_i -> F_(i-1)
    splits off an exact summand: basis b of F_i and a of F_(i-1) are
    removed, the remaining entries of that differential pick up the
    correction -D[a][col] * D[row][b] / u, the next differential loses
    row b and the previous one loses column a, both unchanged otherwise.
    The result is homotopy equivalent to C and has all entries in m.
    """
    ring = C.ring
    p = ring.char
    twists = [list(m.twists) for m in C.modules]
    mats = [[list(row) for row in d.rows] for d in C.diffs]

    def find_unit():
        for i in range(len(mats)):
            for a in range(len(mats[i])):
                for b in range(len(mats[i][a])):
                    e = mats[i][a][b]
                    if not e.is_zero() and e.is_constant():
                        return i, a, b
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, a, b = hit
        u = mats[i][a][b].constant_coeff()
        uinv = pow(u, p - 2, p)
        old = mats[i]
        new_rows = []
        for r in range(len(old)):
            if r == a:
                continue
            row = []
            for c in range(len(old[r])):
                if c == b:
                    continue
                corr = old[a][c] * old[r][b]
                row.append(ring.nf(old[r][c] - corr.scale(uinv)))
            new_rows.append(row)
        mats[i] = new_rows
        if i + 1 < len(mats):
            mats[i + 1] = [row for r, row in enumerate(mats[i + 1]) if r != b]
        if i - 1 >= 0:
            mats[i - 1] = [[e for c, e in enumerate(row) if c != a] for row in mats[i - 1]]
        del twists[i + 1][b]
        del twists[i][a]

    # trim zero modules at both ends, keeping at least one module
    lo_trim = 0
    while lo_trim < len(twists) - 1 and not twists[lo_trim]:
        lo_trim += 1
    hi_trim = len(twists)
    while hi_trim - 1 > lo_trim and not twists[hi_trim - 1]:
        hi_trim -= 1
    twists = twists[lo_trim:hi_trim]
    mats = mats[lo_trim : hi_trim - 1]
    modules = [FreeModule(ring, tuple(t)) for t in twists]
    diffs = [
        ModMap(modules[k + 1], modules[k], mats[k]) for k in range(len(mats))
    ]
    return ChainComplex(ring, modules, diffs, shift=C.shift + lo_trim, koszul=C.koszul)


def truncation_cokernel(C: ChainComplex, b: int) -> GradedModule:
    """coker of the differential entering degree b-1 of a minimal complex.

    For b = hi + 1 the incoming map is zero and the result is free.
    """
    if not C.is_minimal():
        raise UsageError("truncation cokernel is only meaningful for minimal complexes")
    if not 1 <= b <= C.hi + 1:
        raise UsageError(f"truncation degree {b} outside 1..{C.hi + 1}")
    if b == C.hi + 1:
        return GradedModule.free_of(C.modules[C.hi])
    return GradedModule(C.modules[b - 1], C.diffs[b - 1])


# ---------------------------------------------------------------------------
# Hom complexes


def hom_complex(F: ChainComplex, G: ChainComplex) -> ChainComplex:
    """Hom(F, G) with differential d(phi) = dG o phi - (-1)^|phi| phi o dF.

    Degree i collects the maps F_j -> G_(j+i); the basis is ordered by
    (j, source index, target index).  When both inputs are tagged Koszul
    complexes the result is tagged with the concatenated sequence, which
    it is isomorphic to up to shift via Koszul self-duality.
    """
    if F.ring != G.ring:
        raise UsageError("complexes over different rings")
    ring = F.ring
    zero = ring.poly_ring.zero()
    lo_h = -F.hi
    hi_h = G.hi
    if hi_h < lo_h:
        raise UsageError("empty Hom range")
    basis = {}
    twists = {}
    for i in range(lo_h, hi_h + 1):
        items = []
        tw = []
        for j in range(F.hi + 1):
            gi = j + i
            if not 0 <= gi <= G.hi:
                continue
            for u in range(F.modules[j].rank):
                for v in range(G.modules[gi].rank):
                    items.append((j, u, v))
                    tw.append(G.modules[gi].twists[v] - F.modules[j].twists[u])
        basis[i] = items
        twists[i] = tuple(tw)
    modules = {i: FreeModule(ring, twists[i]) for i in range(lo_h, hi_h + 1)}
    diffs = []
    for i in range(lo_h + 1, hi_h + 1):
        tgt_index = {t: idx for idx, t in enumerate(basis[i - 1])}
        rows = [[zero] * len(basis[i]) for _ in range(len(basis[i - 1]))]
        sign = -1 if i % 2 == 0 else 1  # -(-1)^i
        for col, (j, u, v) in enumerate(basis[i]):
            gi = j + i
            if gi >= 1:
                dG = G.diffs[gi - 1]
                for w in range(G.modules[gi - 1].rank):
                    e = dG.rows[w][v]
                    if not e.is_zero():
                        r = tgt_index.get((j, u, w))
                        if r is not None:
                            rows[r][col] = ring.nf(rows[r][col] + e)
            if j + 1 <= F.hi:
                dF = F.diffs[j]
                for q in range(F.modules[j + 1].rank):
                    e = dF.rows[u][q]
                    if not e.is_zero():
                        r = tgt_index.get((j + 1, q, v))
                        if r is not None:
                            rows[r][col] = ring.nf(rows[r][col] + e.scale(sign))
        diffs.append(ModMap(modules[i], modules[i - 1], rows))
    mods = [modules[i] for i in range(lo_h, hi_h + 1)]
    tag = None
    if F.koszul is not None and G.koszul is not None:
        tag = KoszulTag(seq=F.koszul.seq + G.koszul.seq)
    return ChainComplex(ring, mods, diffs, shift=G.shift - F.shift + lo_h, koszul=tag)


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """A map of complexes, possibly with a uniform internal degree."""

    def __init__(self, source: ChainComplex, target: ChainComplex, components: dict, degree: int = 0):
        if source.ring != target.ring:
            raise UsageError("chain map between complexes over different rings")
        if source.shift != target.shift:
            raise UsageError("chain map requires aligned homological shifts")
        self.source = source
        self.target = target
        self.degree = degree
        top = min(source.hi, target.hi)
        comps = {}
        for i in range(top + 1):
            comp = components.get(i)
            if comp is None:
                comp = zero_map(source.modules[i], target.modules[i], degree=degree)
            if comp.source != source.modules[i] or comp.target != target.modules[i]:
                raise UsageError(f"component {i} does not match the complexes")
            if comp.degree != degree:
                raise UsageError("all components must share the map degree")
            comps[i] = comp
        for i, comp in components.items():
            if not 0 <= i <= top and not comp.is_zero():
                raise UsageError(f"nonzero component {i} outside the common range")
        self.components = comps

    def is_chain_map(self) -> bool:
        """Do the squares commute: dT o f_i = f_(i-1) o dS."""
        top = min(self.source.hi, self.target.hi)
        for i in range(1, self.source.hi + 1):
            if i <= top:
                left = self.target.diffs[i - 1].compose(self.components[i])
                right = self.components[i - 1].compose(self.source.diffs[i - 1])
                if left != right:
                    return False
            elif i - 1 <= top:
                # the target complex stops below i, so f_i is zero
                if not self.components[i - 1].compose(self.source.diffs[i - 1]).is_zero():
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChainMap)
            and self.source is other.source
            and self.target is other.target
            and self.degree == other.degree
            and self.components == other.components
        )

    def __repr__(self):
        return f"ChainMap(degree={self.degree})"


def identity_chain_map(C: ChainComplex) -> ChainMap:
    comps = {}
    one = C.ring.poly_ring.one()
    zero = C.ring.poly_ring.zero()
    for i in range(C.hi + 1):
        r = C.modules[i].rank
        rows = [[one if a == b else zero for b in range(r)] for a in range(r)]
        comps[i] = ModMap(C.modules[i], C.modules[i], rows)
    return ChainMap(C, C, comps)


def scalar_chain_map(C: ChainComplex, r: Poly) -> ChainMap:
    """Multiplication by a homogeneous ring element, degree deg(r)."""
    if r.ring != C.ring.poly_ring:
        raise UsageError("scalar from a different ring")
    if not r.is_homogeneous():
        raise UsageError("scalar must be homogeneous")
    d = max(r.degree(), 0)
    zero = C.ring.poly_ring.zero()
    comps = {}
    for i in range(C.hi + 1):
        rank = C.modules[i].rank
        rows = [[r if a == b else zero for b in range(rank)] for a in range(rank)]
        comps[i] = ModMap(C.modules[i], C.modules[i], rows, degree=d)
    return ChainMap(C, C, comps, degree=d)


def compose_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f after g; missing middle degrees contribute zero components."""
    if g.target is not f.source:
        raise UsageError("chain maps are not composable")
    comps = {}
    for i in range(min(g.source.hi, f.target.hi) + 1):
        if i <= g.target.hi:
            comps[i] = f.components[i].compose(g.components[i])
    return ChainMap(g.source, f.target, comps, degree=f.degree + g.degree)
