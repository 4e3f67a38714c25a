"""Ideal calculus in F_p[x1..xn]: reduced bases and derived operations.

Everything routes through the rank one case of the module engine.  The
degrevlex reduced Groebner basis is the canonical form of an ideal;
intersections use one auxiliary variable with a block order, colons and
saturations reduce to relative syzygies, radical membership uses the
extra-variable unit trick.  Dimension theory here is combinatorial: the
Krull dimension comes from independent variable subsets of the initial
ideal, and minimal primes of monomial ideals are minimal vertex covers
of the generator supports.
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Iterable, Sequence

from .errors import UnsupportedInputError, UsageError
from .gbcore import aux_last_key, module_gb, pot_key, relative_syzygies, submodule_nf
from .polys import Poly, PolyRing

_MINPRIMES_VAR_CAP = 12


def _poly_to_vec(f: Poly) -> dict:
    return {(0, e): c for e, c in f.terms}


def _vec_to_poly(ring: PolyRing, v: dict) -> Poly:
    return ring.from_dict({e: c for (_, e), c in v.items()})


def _gb_polys(ring: PolyRing, polys: Iterable[Poly], key=pot_key) -> tuple:
    vecs = [_poly_to_vec(f) for f in polys if not f.is_zero()]
    gb = module_gb(vecs, key, ring.char)
    return tuple(_vec_to_poly(ring, v) for v in gb)


class IdealData:
    """A homogeneous ideal of P with its lazily computed reduced basis.

    Instances are immutable; the basis is computed once under a lock so
    concurrent first use from several threads stays deterministic.
    """

    def __init__(self, ring: PolyRing, gens: Sequence[Poly], require_homogeneous: bool = True):
        self.ring = ring
        clean = []
        for f in gens:
            if not isinstance(f, Poly) or f.ring != ring:
                raise UsageError("ideal generators must come from the ambient ring")
            if f.is_zero():
                continue
            if require_homogeneous and not f.is_homogeneous():
                raise UsageError(f"non-homogeneous generator: {f}")
            clean.append(f)
        self.gens = tuple(clean)
        self._gb = None
        self._lock = threading.Lock()

    @property
    def gb(self) -> tuple:
        """Reduced degrevlex Groebner basis, monic, descending leads."""
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = _gb_polys(self.ring, self.gens)
        return self._gb

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise UsageError("polynomial from a different ring")
        vecs = [_poly_to_vec(g) for g in self.gb]
        return _vec_to_poly(self.ring, submodule_nf(_poly_to_vec(f), vecs, pot_key, self.ring.char))

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def is_zero(self) -> bool:
        return not self.gb

    def is_proper(self) -> bool:
        return not any(g.is_constant() and not g.is_zero() for g in self.gb)

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gb)

    def leading_monomials(self) -> tuple:
        return tuple(g.leading_monomial() for g in self.gb)

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealData) and self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"IdealData({inside})"


def ideal(ring: PolyRing, gens: Sequence[Poly]) -> IdealData:
    return IdealData(ring, gens)


def zero_ideal(ring: PolyRing) -> IdealData:
    return IdealData(ring, ())


def ideal_sum(I: IdealData, J: IdealData) -> IdealData:
    if I.ring != J.ring:
        raise UsageError("ideals from different rings")
    return IdealData(I.ring, I.gens + J.gens)


def reduced_gb(I: IdealData) -> tuple:
    return I.gb


def normal_form(f: Poly, I: IdealData) -> Poly:
    return I.normal_form(f)


# ---------------------------------------------------------------------------
# auxiliary-variable constructions


def _embed_aux(f: Poly, aux_ring: PolyRing, aux_exp: int = 0) -> dict:
    return {(0, e + (aux_exp,)): c for e, c in f.terms}


def ideal_intersection(I: IdealData, J: IdealData) -> IdealData:
    """I meet J via t*I + (1-t)*J and elimination of the auxiliary t."""
    if I.ring != J.ring:
        raise UsageError("ideals from different rings")
    ring = I.ring
    aux_ring = PolyRing(ring.nvars + 1, ring.char)
    vecs = []
    for f in I.gens:
        vecs.append(_embed_aux(f, aux_ring, aux_exp=1))
    for g in J.gens:
        v = _embed_aux(g, aux_ring, aux_exp=0)
        for (pos, e), c in _embed_aux(g, aux_ring, aux_exp=1).items():
            val = (v.get((pos, e), 0) - c) % ring.char
            if val:
                v[(pos, e)] = val
            else:
                v.pop((pos, e), None)
        vecs.append(v)
    gb = module_gb(vecs, aux_last_key, ring.char)
    kept = []
    for v in gb:
        if all(e[-1] == 0 for _, e in v):
            kept.append(ring.from_dict({e[:-1]: c for (_, e), c in v.items()}))
    return IdealData(ring, _gb_polys(ring, kept))


def ideal_quotient(I: IdealData, f: Poly) -> IdealData:
    """The colon ideal (I : f), computed from relative syzygies."""
    if f.ring != I.ring:
        raise UsageError("polynomial from a different ring")
    if f.is_zero():
        raise UsageError("colon by zero is not defined")
    syz = relative_syzygies(
        [_poly_to_vec(f)],
        [_poly_to_vec(g) for g in I.gens],
        rank=1,
        nvars=I.ring.nvars,
        p=I.ring.char,
    )
    quotients = [_vec_to_poly(I.ring, v) for v in syz]
    return IdealData(I.ring, _gb_polys(I.ring, quotients))


def _colon_by_ideal(I: IdealData, J: IdealData) -> IdealData:
    out = None
    for g in J.gens:
        q = ideal_quotient(I, g)
        out = q if out is None else ideal_intersection(out, q)
    if out is None:
        raise UsageError("colon by the zero ideal is not defined")
    return out


def saturation(I: IdealData, J: IdealData) -> IdealData:
    """Union of the colon chain (I : J^s), detected by stable bases."""
    if I.ring != J.ring:
        raise UsageError("ideals from different rings")
    current = I
    while True:
        step = _colon_by_ideal(current, J)
        if step.gb == current.gb:
            return current
        current = step


def radical_membership(f: Poly, I: IdealData) -> bool:
    """True when f lies in the radical of I (extra-variable unit trick)."""
    if f.ring != I.ring:
        raise UsageError("polynomial from a different ring")
    ring = I.ring
    aux_ring = PolyRing(ring.nvars + 1, ring.char)
    p = ring.char
    vecs = [_embed_aux(g, aux_ring, aux_exp=0) for g in I.gens]
    one_minus_yf: dict = {(0, (0,) * aux_ring.nvars): 1}
    for e, c in f.terms:
        t = (0, e + (1,))
        val = (one_minus_yf.get(t, 0) - c) % p
        if val:
            one_minus_yf[t] = val
        else:
            one_minus_yf.pop(t, None)
    vecs.append(one_minus_yf)
    gb = module_gb(vecs, aux_last_key, p)
    for v in gb:
        if len(v) == 1:
            (pos, e), _ = next(iter(v.items()))
            if all(x == 0 for x in e):
                return True
    return False


# ---------------------------------------------------------------------------
# combinatorial dimension theory


def krull_dim(I: IdealData) -> int:
    """Krull dimension of P/I; the unit ideal reports -1.

    The dimension is the largest size of a variable subset S such that
    no leading monomial of the reduced basis is supported inside S.
    """
    if not I.is_proper():
        return -1
    n = I.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in I.leading_monomials()]
    for size in range(n, -1, -1):
        for combo in combinations(range(n), size):
            s = frozenset(combo)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def monomial_minimal_primes(I: IdealData) -> list:
    """Minimal primes of a monomial ideal, as frozensets of variable indices.

    These are the minimal vertex covers of the hypergraph of generator
    supports; the zero ideal yields the single empty prime.
    """
    if not I.is_monomial():
        raise UnsupportedInputError("minimal primes are only computed for monomial ideals")
    if not I.is_proper():
        raise UsageError("the unit ideal has no minimal primes")
    if I.ring.nvars > _MINPRIMES_VAR_CAP:
        raise UnsupportedInputError(
            f"minimal prime enumeration capped at {_MINPRIMES_VAR_CAP} variables"
        )
    if I.is_zero():
        return [frozenset()]
    edges = {frozenset(i for i, e in enumerate(m) if e) for m in I.leading_monomials()}
    edges = [e for e in edges if not any(other < e for other in edges)]
    universe = sorted(set().union(*edges))
    covers = []
    for size in range(len(universe) + 1):
        for combo in combinations(universe, size):
            s = frozenset(combo)
            if all(s & e for e in edges):
                covers.append(s)
    minimal = [c for c in covers if not any(other < c for other in covers)]
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def _heights_over_quotient(I: IdealData, J: IdealData) -> list:
    if I.ring != J.ring:
        raise UsageError("ideals from different rings")
    if not (I.is_monomial() and J.is_monomial()):
        raise UnsupportedInputError("height computations require monomial input ideals")
    total = ideal_sum(I, J)
    if not total.is_proper():
        raise UsageError("height of the unit ideal is not defined")
    big_primes = monomial_minimal_primes(total)
    small_primes = monomial_minimal_primes(J) if not J.is_zero() else [frozenset()]
    heights = []
    for p_big in big_primes:
        inside = [q for q in small_primes if q <= p_big]
        # every minimal prime of I+J contains J, hence some minimal cover of J
        heights.append(max(len(p_big - q) for q in inside))
    return heights


def height_monomial(I: IdealData, J: IdealData) -> int:
    """Height of I in P/J for monomial I and J (smallest chain bound)."""
    return min(_heights_over_quotient(I, J))


def bigheight_monomial(I: IdealData, J: IdealData) -> int:
    """Largest height of a minimal prime over I in P/J, monomial case."""
    return max(_heights_over_quotient(I, J))
