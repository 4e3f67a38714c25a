"""Graded modules over R = P/J: presentations and submodule calculus.

A module is presented as the cokernel of a map between twisted free
modules.  Vectors over R are tuples of polynomials in canonical J-normal
form.  Every operation (syzygies, kernels, colons, torsion, Hom, free
rank) reduces to the relative syzygy primitive of the Groebner engine,
with J folded in by appending J-multiples of the ambient basis.

Degree bookkeeping is strict: free modules carry twists, a basis element
of twist t has degree t, and a nonzero map entry (i, j) must be
homogeneous of degree twist_source(j) - twist_target(i) + map degree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import UsageError
from .gbcore import module_gb, pot_key, relative_syzygies, submodule_nf
from .groebner import IdealData, ideal_intersection
from .polys import Poly
from .rings import QuotientRing


# ---------------------------------------------------------------------------
# free modules, maps, presented modules


@dataclass(frozen=True)
class FreeModule:
    ring: QuotientRing
    twists: tuple

    @property
    def rank(self) -> int:
        return len(self.twists)

    def basis_vector(self, j: int) -> tuple:
        zero = self.ring.poly_ring.zero()
        one = self.ring.poly_ring.one()
        return tuple(one if i == j else zero for i in range(self.rank))

    def zero_vector(self) -> tuple:
        zero = self.ring.poly_ring.zero()
        return (zero,) * self.rank


class ModMap:
    """A degree-homogeneous map between free modules over R.

    rows[i][j] is the coefficient of target basis i in the image of
    source basis j; entries are stored as J-normal forms.  degree is the
    uniform internal degree shift (0 for differentials and relations).
    """

    def __init__(self, source: FreeModule, target: FreeModule, rows: Sequence, degree: int = 0):
        if source.ring != target.ring:
            raise UsageError("map between modules over different rings")
        self.source = source
        self.target = target
        self.degree = degree
        ring = source.ring
        rows = tuple(tuple(row) for row in rows)
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise UsageError(
                f"matrix shape {len(rows)}x{'x'.join(str(len(r)) for r in rows[:1]) or '0'} "
                f"does not match target rank {target.rank}, source rank {source.rank}"
            )
        normed = []
        for i, row in enumerate(rows):
            out_row = []
            for j, entry in enumerate(row):
                if entry.ring != ring.poly_ring:
                    raise UsageError("matrix entry from a different ring")
                e = ring.nf(entry)
                if not e.is_zero():
                    want = source.twists[j] - target.twists[i] + degree
                    if not e.is_homogeneous() or e.degree() != want:
                        raise UsageError(
                            f"entry ({i},{j}) = {e} must be homogeneous of degree {want}"
                        )
                out_row.append(e)
            normed.append(tuple(out_row))
        self.rows = tuple(normed)

    @property
    def ring(self) -> QuotientRing:
        return self.source.ring

    def column(self, j: int) -> tuple:
        return tuple(self.rows[i][j] for i in range(self.target.rank))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.source.rank)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def entries_in_maximal_ideal(self) -> bool:
        return all(e.constant_coeff() == 0 for row in self.rows for e in row)

    def compose(self, other: "ModMap") -> "ModMap":
        """self after other."""
        if other.target != self.source:
            raise UsageError("maps are not composable")
        ring = self.ring
        zero = ring.poly_ring.zero()
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = zero
                for k in range(self.source.rank):
                    if not self.rows[i][k].is_zero() and not other.rows[k][j].is_zero():
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(ring.nf(acc))
            rows.append(row)
        return ModMap(other.source, self.target, rows, degree=self.degree + other.degree)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModMap)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.source, self.target, self.degree, self.rows))

    def __repr__(self):
        return f"ModMap({self.target.rank}x{self.source.rank}, degree={self.degree})"


def zero_map(source: FreeModule, target: FreeModule, degree: int = 0) -> ModMap:
    zero = source.ring.poly_ring.zero()
    rows = [[zero] * source.rank for _ in range(target.rank)]
    return ModMap(source, target, rows, degree=degree)


class GradedModule:
    """coker(rels) for rels mapping into the free module of generators."""

    def __init__(self, gens: FreeModule, rels: ModMap):
        if rels.target != gens:
            raise UsageError("relations must land in the generator module")
        if rels.degree != 0:
            raise UsageError("relation maps must have internal degree zero")
        self.gens = gens
        self.rels = rels
        self._minimal: Optional[GradedModule] = None
        self._lock = threading.Lock()

    @property
    def ring(self) -> QuotientRing:
        return self.gens.ring

    @classmethod
    def free_of(cls, free: FreeModule) -> "GradedModule":
        empty = FreeModule(free.ring, ())
        return cls(free, zero_map(empty, free))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedModule)
            and self.gens == other.gens
            and self.rels == other.rels
        )

    def __hash__(self):
        return hash((self.gens, self.rels))

    def __repr__(self):
        return f"GradedModule(gens={self.gens.twists}, rels={self.rels.source.rank})"


# ---------------------------------------------------------------------------
# vector plumbing


def vec_from_polyvec(polys: Sequence[Poly]) -> dict:
    out: dict = {}
    for i, f in enumerate(polys):
        for e, c in f.terms:
            out[(i, e)] = c
    return out


def polyvec_from_vec(free: FreeModule, v: dict) -> tuple:
    ring = free.ring.poly_ring
    per: list = [dict() for _ in range(free.rank)]
    for (pos, e), c in v.items():
        per[pos][e] = c
    return tuple(ring.from_dict(d) for d in per)


def polyvec_degree(free: FreeModule, polys: Sequence[Poly]) -> Optional[int]:
    """Homogeneous degree of a vector, None when it is zero."""
    deg = None
    for j, f in enumerate(polys):
        if f.is_zero():
            continue
        if not f.is_homogeneous():
            raise UsageError(f"component {j} is not homogeneous: {f}")
        d = f.degree() + free.twists[j]
        if deg is None:
            deg = d
        elif deg != d:
            raise UsageError("vector is not homogeneous across components")
    return deg


def _defining_multiples(free: FreeModule) -> list:
    """J * e_k as raw vectors, the ambient relations of R inside P^rank."""
    out = []
    for g in free.ring.defining.gb:
        for k in range(free.rank):
            out.append({(k, e): c for e, c in g.terms})
    return out


class SubmoduleGB:
    """Reduced basis of a submodule of P^rank containing J * ambient."""

    def __init__(self, free: FreeModule, vectors: Sequence[dict], include_defining: bool = True):
        self.free = free
        p = free.ring.char
        vecs = [dict(v) for v in vectors if v]
        if include_defining:
            vecs.extend(_defining_multiples(free))
        self.gb = module_gb(vecs, pot_key, p)

    def nf(self, v: dict) -> dict:
        return submodule_nf(v, self.gb, pot_key, self.free.ring.char)

    def contains(self, v: dict) -> bool:
        return not self.nf(v)

    def contains_polyvec(self, polys: Sequence[Poly]) -> bool:
        return self.contains(vec_from_polyvec(polys))

    def is_everything(self) -> bool:
        zero = (0,) * self.free.ring.nvars
        return all(self.contains({(k, zero): 1}) for k in range(self.free.rank))

    def __eq__(self, other) -> bool:
        return isinstance(other, SubmoduleGB) and self.free == other.free and self.gb == other.gb


def submodule_basis(free: FreeModule, vectors: Sequence[Sequence[Poly]]) -> list:
    """Canonical reduced basis of the R-span of vectors inside free.

    Output vectors are J-reduced polynomial tuples; the list is the
    module analog of a reduced Groebner basis and is generating-set
    independent.
    """
    handle = SubmoduleGB(free, [vec_from_polyvec(v) for v in vectors])
    out = []
    for v in handle.gb:
        pv = tuple(free.ring.nf(f) for f in polyvec_from_vec(free, v))
        if any(not f.is_zero() for f in pv):
            out.append(pv)
    return out


def submodule_normal_form(free: FreeModule, vectors: Sequence, v: Sequence[Poly]) -> tuple:
    """Normal form of v against the span of vectors plus J * ambient."""
    handle = SubmoduleGB(free, [vec_from_polyvec(w) for w in vectors])
    return polyvec_from_vec(free, handle.nf(vec_from_polyvec(v)))


# ---------------------------------------------------------------------------
# syzygies and kernels


def _syzygy_vectors(free: FreeModule, vectors: Sequence[Sequence[Poly]], untracked: Sequence[dict]) -> list:
    ring = free.ring
    tracked = [vec_from_polyvec(v) for v in vectors]
    extra = list(untracked) + _defining_multiples(free)
    return relative_syzygies(tracked, extra, rank=free.rank, nvars=ring.nvars, p=ring.char)


def syzygies(free: FreeModule, vectors: Sequence[Sequence[Poly]], degrees: Optional[Sequence[int]] = None) -> ModMap:
    """First syzygy module of the given vectors over R, as a map.

    The target is the free module on the input vectors (twists = their
    degrees); columns of the returned map generate all R-relations.
    """
    ring = free.ring
    if degrees is None:
        degrees = []
        for v in vectors:
            d = polyvec_degree(free, v)
            if d is None:
                raise UsageError("zero vector needs an explicit degree")
            degrees.append(d)
    target = FreeModule(ring, tuple(degrees))
    raw = _syzygy_vectors(free, vectors, [])
    cols = []
    col_degs = []
    for s in raw:
        pv = tuple(ring.nf(f) for f in polyvec_from_vec(target, s))
        if all(f.is_zero() for f in pv):
            continue
        cols.append(pv)
        col_degs.append(polyvec_degree(target, pv))
    source = FreeModule(ring, tuple(col_degs))
    rows = [[cols[c][i] for c in range(len(cols))] for i in range(target.rank)]
    return ModMap(source, target, rows)


def subquotient(
    free: FreeModule,
    numerators: Sequence[Sequence[Poly]],
    denominators: Sequence[Sequence[Poly]],
) -> "PresentedSubmodule":
    """Present (span(numerators) + D) / D inside free, D = span(denominators).

    Generators whose class is zero are dropped up front; relations among
    the remaining classes are relative syzygies modulo D and J.
    """
    ring = free.ring
    denom_vecs = [vec_from_polyvec(v) for v in denominators]
    denom_gb = SubmoduleGB(free, denom_vecs)
    kept = []
    for v in numerators:
        pv = tuple(ring.nf(f) for f in v)
        if not denom_gb.contains_polyvec(pv):
            kept.append(pv)
    degs = []
    for pv in kept:
        d = polyvec_degree(free, pv)
        degs.append(0 if d is None else d)
    gens = FreeModule(ring, tuple(degs))
    raw = _syzygy_vectors(free, kept, denom_vecs)
    cols = []
    col_degs = []
    for s in raw:
        pv = tuple(ring.nf(f) for f in polyvec_from_vec(gens, s))
        if all(f.is_zero() for f in pv):
            continue
        cols.append(pv)
        col_degs.append(polyvec_degree(gens, pv))
    source = FreeModule(ring, tuple(col_degs))
    rows = [[cols[c][i] for c in range(len(cols))] for i in range(gens.rank)]
    module = GradedModule(gens, ModMap(source, gens, rows))
    return PresentedSubmodule(module=module, ambient=free, vectors=tuple(kept))


@dataclass
class PresentedSubmodule:
    """A subquotient with explicit generator representatives in ambient."""

    module: GradedModule
    ambient: FreeModule
    vectors: tuple

    def inclusion(self) -> ModMap:
        rows = [
            [self.vectors[l][i] for l in range(len(self.vectors))]
            for i in range(self.ambient.rank)
        ]
        return ModMap(self.module.gens, self.ambient, rows)


def kernel(phi: ModMap) -> GradedModule:
    return kernel_presented(phi).module


def kernel_presented(phi: ModMap) -> PresentedSubmodule:
    """ker(phi) as a subquotient of the source with representatives."""
    if phi.degree != 0:
        raise UsageError("kernel is only computed for degree zero maps")
    ring = phi.ring
    cols = phi.columns()
    raw = _syzygy_vectors(phi.target, cols, [])
    src = FreeModule(ring, phi.source.twists)
    reps = []
    for s in raw:
        pv = tuple(ring.nf(f) for f in polyvec_from_vec(src, s))
        if any(not f.is_zero() for f in pv):
            reps.append(pv)
    return subquotient(phi.source, reps, [])


# ---------------------------------------------------------------------------
# minimal presentations


def minimal_presentation(M: GradedModule) -> GradedModule:
    """Prune unit entries by pivoting until all relations lie in m.

    Each pivot removes one generator and one relation by the usual
    Gaussian cancellation; zero relation columns are dropped at the end.
    Idempotent, and preserves the degreewise Hilbert function.
    """
    if M._minimal is not None:
        return M._minimal
    with M._lock:
        if M._minimal is not None:
            return M._minimal
        ring = M.ring
        p = ring.char
        twists = list(M.gens.twists)
        src_twists = list(M.rels.source.twists)
        rows = [list(r) for r in M.rels.rows]
        while True:
            pivot = None
            for i in range(len(rows)):
                for j in range(len(src_twists)):
                    e = rows[i][j]
                    if not e.is_zero() and e.is_constant():
                        pivot = (i, j)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            pi, pj = pivot
            u = rows[pi][pj].constant_coeff()
            uinv = pow(u, p - 2, p)
            new_rows = []
            for i in range(len(rows)):
                if i == pi:
                    continue
                row = []
                for j in range(len(src_twists)):
                    if j == pj:
                        continue
                    corr = rows[pi][j] * rows[i][pj]
                    row.append(ring.nf(rows[i][j] - corr.scale(uinv)))
                new_rows.append(row)
            del twists[pi]
            del src_twists[pj]
            rows = new_rows
        keep_cols = [
            j
            for j in range(len(src_twists))
            if any(not rows[i][j].is_zero() for i in range(len(rows)))
        ]
        gens = FreeModule(ring, tuple(twists))
        source = FreeModule(ring, tuple(src_twists[j] for j in keep_cols))
        rows = [[rows[i][j] for j in keep_cols] for i in range(len(rows))]
        result = GradedModule(gens, ModMap(source, gens, rows))
        result._minimal = result
        M._minimal = result
    return result


def min_gens(M: GradedModule) -> int:
    """dim_k(M tensor k), the minimal number of generators."""
    return minimal_presentation(M).gens.rank


def is_zero_module(M: GradedModule) -> bool:
    return min_gens(M) == 0


def is_free(M: GradedModule) -> bool:
    """Free means the minimal presentation has no relations left."""
    return minimal_presentation(M).rels.source.rank == 0


def direct_sum(A: GradedModule, B: GradedModule) -> GradedModule:
    if A.ring != B.ring:
        raise UsageError("modules over different rings")
    ring = A.ring
    zero = ring.poly_ring.zero()
    gens = FreeModule(ring, A.gens.twists + B.gens.twists)
    source = FreeModule(ring, A.rels.source.twists + B.rels.source.twists)
    rows = []
    for i in range(A.gens.rank):
        rows.append(list(A.rels.rows[i]) + [zero] * B.rels.source.rank)
    for i in range(B.gens.rank):
        rows.append([zero] * A.rels.source.rank + list(B.rels.rows[i]))
    return GradedModule(gens, ModMap(source, gens, rows))


# ---------------------------------------------------------------------------
# Hom, annihilator, torsion


def transpose_map(phi: ModMap) -> ModMap:
    """The dual map between dual free modules (negated twists)."""
    ring = phi.ring
    dual_source = FreeModule(ring, tuple(-t for t in phi.target.twists))
    dual_target = FreeModule(ring, tuple(-t for t in phi.source.twists))
    rows = [[phi.rows[i][j] for i in range(phi.target.rank)] for j in range(phi.source.rank)]
    return ModMap(dual_source, dual_target, rows)


def hom_into_ring_presented(M: GradedModule) -> PresentedSubmodule:
    """Hom_R(M, R) = ker of the transposed relations, with vectors.

    A representative vector lists the values of the functional on the
    generators of M, as elements of R with the dual twist bookkeeping.
    """
    return kernel_presented(transpose_map(M.rels))


def hom_into_ring(M: GradedModule) -> GradedModule:
    return hom_into_ring_presented(M).module


def annihilator(M: GradedModule) -> IdealData:
    """(0 : M) as an ideal of the ambient polynomial ring containing J."""
    ring = M.ring
    if M.gens.rank == 0:
        return IdealData(ring.poly_ring, (ring.poly_ring.one(),), require_homogeneous=False)
    u_vecs = [vec_from_polyvec(c) for c in M.rels.columns()]
    u_vecs.extend(_defining_multiples(M.gens))
    result = None
    zero = (0,) * ring.nvars
    for k in range(M.gens.rank):
        tracked = [{(k, zero): 1}]
        syz = relative_syzygies(tracked, u_vecs, rank=M.gens.rank, nvars=ring.nvars, p=ring.char)
        gens = []
        for s in syz:
            f = ring.poly_ring.from_dict({e: c for (_, e), c in s.items()})
            if not f.is_zero():
                gens.append(f)
        colon = IdealData(ring.poly_ring, gens, require_homogeneous=False)
        result = colon if result is None else ideal_intersection(result, colon)
    return result


def _colon_submodule(free: FreeModule, n_gb: SubmoduleGB, ideal_gens: Sequence[Poly]) -> SubmoduleGB:
    """(N : I) inside free, for N given by a reduced basis handle.

    Uses the stacked trick: g lies in the colon iff (f_1 g, .., f_t g)
    lies in N + .. + N, which is one relative syzygy computation in
    P^(rank*t) with the candidate coordinates tracked.
    """
    ring = free.ring
    r = free.rank
    t = len(ideal_gens)
    if t == 0:
        raise UsageError("colon by an empty generator list")
    tracked = []
    for k in range(r):
        v: dict = {}
        for i, f in enumerate(ideal_gens):
            for e, c in f.terms:
                v[(i * r + k, e)] = c
        tracked.append(v)
    untracked = []
    for u in n_gb.gb:
        for i in range(t):
            untracked.append({(i * r + pos, e): c for (pos, e), c in u.items()})
    syz = relative_syzygies(tracked, untracked, rank=r * t, nvars=ring.nvars, p=ring.char)
    return SubmoduleGB(free, syz)


def _relation_handle(M: GradedModule) -> SubmoduleGB:
    return SubmoduleGB(M.gens, [vec_from_polyvec(c) for c in M.rels.columns()])


@dataclass
class TorsionSubmodule:
    module: GradedModule
    inclusion: ModMap


def gamma_torsion(M: GradedModule, I) -> TorsionSubmodule:
    """The I-power torsion submodule of M with its inclusion.

    Iterates N -> (N : I) starting from the relation submodule until the
    reduced basis stabilizes; the stable numerator presents the torsion
    subquotient.
    """
    ring = M.ring
    gens = [ring.nf(g) for g in I.gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        free = M.gens
        sub = subquotient(free, [free.basis_vector(k) for k in range(free.rank)], M.rels.columns())
        return TorsionSubmodule(module=sub.module, inclusion=sub.inclusion())
    current = _relation_handle(M)
    while True:
        step = _colon_submodule(M.gens, current, gens)
        if step.gb == current.gb:
            break
        current = step
    numerators = []
    for v in current.gb:
        pv = tuple(ring.nf(f) for f in polyvec_from_vec(M.gens, v))
        if any(not f.is_zero() for f in pv):
            numerators.append(pv)
    sub = subquotient(M.gens, numerators, M.rels.columns())
    return TorsionSubmodule(module=sub.module, inclusion=sub.inclusion())


def is_power_torsion(M: GradedModule, I) -> bool:
    """True when every element of M is killed by a power of I.

    Checked one generator f at a time: the chain (0 : f^s) must
    stabilize at all of M.  Agrees with radical membership of the
    annihilator, which the test suite asserts independently.
    """
    ring = M.ring
    gens = [ring.nf(g) for g in I.gens]
    for f in gens:
        if f.is_zero():
            continue
        current = _relation_handle(M)
        while True:
            step = _colon_submodule(M.gens, current, [f])
            if step.gb == current.gb:
                break
            current = step
        if not current.is_everything():
            return False
    return True


# ---------------------------------------------------------------------------
# free rank


def frank(M: GradedModule) -> int:
    """Rank of the largest free direct summand of M.

    Equals the rank over k of the evaluation pairing between Hom(M, R)
    and the minimal generators of M: an invertible r x r evaluation
    minor assembles a split surjection onto a rank r free module, and
    any free summand contributes such a minor.
    """
    Mm = minimal_presentation(M)
    r = Mm.gens.rank
    if r == 0:
        return 0
    hom = hom_into_ring_presented(Mm)
    if not hom.vectors:
        return 0
    pairing = [[f.constant_coeff() for f in vec] for vec in hom.vectors]
    return linalg.rank(linalg.as_matrix(pairing, M.ring.char), M.ring.char)


# ---------------------------------------------------------------------------
# degreewise data


def hilbert_function(M: GradedModule, d: int) -> int:
    """dim_k of the degree d piece of M, by row reduction."""
    ring = M.ring
    gens_basis = []
    for j in range(M.gens.rank):
        for m in ring.monomial_basis(d - M.gens.twists[j]):
            gens_basis.append((j, m))
    if not gens_basis:
        return 0
    index = {bm: i for i, bm in enumerate(gens_basis)}
    rows = []
    for c in range(M.rels.source.rank):
        col = M.rels.column(c)
        s_c = M.rels.source.twists[c]
        for m in ring.monomial_basis(d - s_c):
            vec = [0] * len(gens_basis)
            for j in range(M.gens.rank):
                if col[j].is_zero():
                    continue
                prod = ring.nf(col[j].shift_mono(m))
                for e, coeff in prod.terms:
                    vec[index[(j, e)]] = coeff
            rows.append(vec)
    if not rows:
        return len(gens_basis)
    mat = linalg.as_matrix(rows, ring.char)
    return len(gens_basis) - linalg.rank(mat, ring.char)
