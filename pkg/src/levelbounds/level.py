"""Certified level intervals for perfect complexes.

Each bound runs its own hypothesis checks and, when they pass, emits a
BoundCertificate.  level_interval minimalizes the complex, collects all
applicable certificates, and reports [max lower, min upper].  Exactness
is claimed only when the two meet.  lower > upper is an engine bug and
raises InternalInconsistencyError with the full certificate dump.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .complexes import (
    ChainComplex,
    ChainMap,
    compose_chain_maps,
    koszul_complex,
    minimalize,
    scalar_chain_map,
    single_module_complex,
)
from .errors import InternalInconsistencyError, UsageError
from .groebner import IdealData, ideal, ideal_intersection, ideal_sum
from .invariants import dims, edim, frank_conormal
from .modules import (
    FreeModule,
    ModMap,
    SubmoduleGB,
    gamma_torsion,
    is_power_torsion,
    vec_from_polyvec,
)
from .polys import DEFAULT_CHAR, Poly, PolyRing
from .rings import QuotientRing

LOWER_KINDS = ("NONZERO", "GAP", "TORSION_DIM", "FRANK")
UPPER_KINDS = ("LENGTH_UB", "EDIM_UB", "KOSZUL_TRIM")


@dataclass
class BoundCertificate:
    kind: str
    value: int
    is_lower: bool
    evidence: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "bound": "lower" if self.is_lower else "upper",
            "evidence": self.evidence,
        }


@dataclass
class LevelReport:
    label: str
    lower: int
    upper: int
    exact: bool
    certificates: list

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "certificates": [c.as_dict() for c in self.certificates],
        }


def _require_minimal(F: ChainComplex):
    if not F.is_minimal():
        raise UsageError("bound requires a minimal complex; minimalize first")


def check_torsion_dim(F: ChainComplex, I: IdealData) -> Optional[BoundCertificate]:
    """Lower bound dim R - dim R/I + 1 from torsion homology.

    Hypotheses verified: every nonzero H_i, i >= 1, is I-power torsion,
    and H_0 has a minimal generator killed by a power of I (some element
    of the torsion submodule of H_0 survives in H_0 tensor k).  Returns
    None when any hypothesis fails.
    """
    _require_minimal(F)
    R = F.ring
    if not ideal_sum(I, R.defining).is_proper():
        raise UsageError("torsion bound needs a proper ideal")
    h0 = F.homology(0)
    if h0.is_zero:
        return None
    torsion_checks = []
    for i in range(1, F.hi + 1):
        hd = F.homology(i)
        if hd.is_zero:
            continue
        ok = is_power_torsion(hd.module, I)
        torsion_checks.append({"degree": i, "power_torsion": ok})
        if not ok:
            return None
    witness = _torsion_generator_witness(h0.module, I)
    if witness is None:
        return None
    d_R, d_RI = dims(I, R)
    return BoundCertificate(
        kind="TORSION_DIM",
        value=d_R - d_RI + 1,
        is_lower=True,
        evidence={
            "dim_R": d_R,
            "dim_RmodI": d_RI,
            "torsion_checks": torsion_checks,
            "torsion_generator": [str(f) for f in witness],
        },
    )


def _torsion_generator_witness(M, I: IdealData):
    """A generator of the I-torsion of M lying outside m*M, if any.

    The torsion submodule maps into the free cover of M; a column of
    that inclusion not contained in m*gens + relations is exactly an
    element of Gamma_I(M) that survives in M tensor k.
    """
    free = M.gens
    ring = free.ring
    torsion = gamma_torsion(M, I)
    cols = torsion.inclusion.columns()
    if not cols:
        return None
    span = [vec_from_polyvec(c) for c in M.rels.columns()]
    for g in ring.maximal_ideal_gens():
        for j in range(free.rank):
            vec = [ring.poly_ring.zero()] * free.rank
            vec[j] = g
            span.append(vec_from_polyvec(vec))
    handle = SubmoduleGB(free, span)
    for c in cols:
        if not handle.contains_polyvec(c):
            return c
    return None


def lb_gap(F: ChainComplex) -> Optional[BoundCertificate]:
    """Largest homology gap below a nonzero differential: b - a + 1."""
    _require_minimal(F)
    best = None
    for b in range(1, F.hi + 1):
        if F.diffs[b - 1].is_zero():
            continue
        for a in range(b - 1, -1, -1):
            if not F.homology(a).is_zero:
                if best is None or b - a + 1 > best[0]:
                    best = (b - a + 1, a, b)
                break
    if best is None:
        return None
    value, a, b = best
    return BoundCertificate(
        kind="GAP",
        value=value,
        is_lower=True,
        evidence={"a": a, "b": b},
    )


def lb_frank_koszul(seq: Sequence[Poly], R: QuotientRing) -> BoundCertificate:
    """Free rank of the conormal module of (seq), plus one."""
    fr = frank_conormal(seq, R)
    return BoundCertificate(
        kind="FRANK",
        value=fr + 1,
        is_lower=True,
        evidence={"frank_conormal": fr, "seq": [str(f) for f in seq]},
    )


def ub_length(F: ChainComplex) -> BoundCertificate:
    """Number of homological degrees spanned by the minimal complex."""
    _require_minimal(F)
    nz = F.nonzero_degrees()
    span = nz[-1] - nz[0] + 1 if nz else 0
    return BoundCertificate(
        kind="LENGTH_UB",
        value=span,
        is_lower=False,
        evidence={"ranks": [m.rank for m in F.modules]},
    )


def ub_edim_koszul(R: QuotientRing) -> BoundCertificate:
    e = edim(R)
    return BoundCertificate(
        kind="EDIM_UB", value=e + 1, is_lower=False, evidence={"edim": e}
    )


def trim_koszul_sequence(seq: Sequence[Poly], R: QuotientRing) -> tuple:
    """Drop entries lying in the ideal of the remaining ones (mod J).

    Koszul complexes on the trimmed and full sequences generate each
    other: adjoining y in (rest) splits off a shifted copy, so levels
    agree.  The scan is restarted after each removal for determinism.
    """
    kept = list(seq)
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            rest = kept[:idx] + kept[idx + 1 :]
            total = ideal_sum(ideal(R.poly_ring, rest), R.defining)
            if total.contains(kept[idx]):
                kept.pop(idx)
                changed = True
                break
    return tuple(kept)


def ub_koszul_trim(seq: Sequence[Poly], R: QuotientRing) -> BoundCertificate:
    kept = trim_koszul_sequence(seq, R)
    return BoundCertificate(
        kind="KOSZUL_TRIM",
        value=len(kept) + 1,
        is_lower=False,
        evidence={
            "kept": [str(f) for f in kept],
            "dropped_count": len(seq) - len(kept),
        },
    )


def level_interval(
    F: ChainComplex,
    I: Optional[IdealData] = None,
    label: str = "complex",
) -> LevelReport:
    """Certified interval for the level of F, optionally using I."""
    M = minimalize(F)
    certs = []
    if M.is_zero_complex():
        certs.append(ub_length(M))
        return LevelReport(label=label, lower=0, upper=0, exact=True, certificates=certs)
    if M.homology(0).is_zero:
        raise InternalInconsistencyError(
            "minimal nonzero complex with vanishing bottom homology"
        )
    certs.append(
        BoundCertificate(
            kind="NONZERO",
            value=1,
            is_lower=True,
            evidence={"nonzero_homology_degree": 0},
        )
    )
    gap = lb_gap(M)
    if gap is not None:
        certs.append(gap)
    if I is not None:
        td = check_torsion_dim(M, I)
        if td is not None:
            certs.append(td)
    if M.koszul is not None:
        seq = M.koszul.seq
        certs.append(lb_frank_koszul(seq, M.ring))
        certs.append(ub_edim_koszul(M.ring))
        certs.append(ub_koszul_trim(seq, M.ring))
    certs.append(ub_length(M))
    lower = max(c.value for c in certs if c.is_lower)
    upper = min(c.value for c in certs if not c.is_lower)
    if lower > upper:
        dump = json.dumps([c.as_dict() for c in certs], sort_keys=True)
        raise InternalInconsistencyError(
            f"certified lower bound {lower} exceeds upper bound {upper}: {dump}"
        )
    return LevelReport(
        label=label,
        lower=lower,
        upper=upper,
        exact=lower == upper,
        certificates=certs,
    )


# ---------------------------------------------------------------------------
# the factor-through-torsion example


@dataclass
class FactorizationReport:
    n: int
    checks: list
    passed: bool

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "checks": [{"name": k, "ok": v} for k, v in self.checks],
            "passed": self.passed,
        }


def verify_factorization_example(
    n: int,
    char: int = DEFAULT_CHAR,
    ring: Optional[QuotientRing] = None,
) -> FactorizationReport:
    """Check the multiplication-by-x1 factorization through K(x2..xn; R).

    Over R = k[x1..xn]/((x1) meet (x2..xn)) the maps alpha: R -> K
    (identity into degree 0) and beta: K -> R (x1 on degree 0) are chain
    maps whose composite is multiplication by x1, and the positive
    Koszul homology is (x2..xn)-power torsion.  Passing a ring overrides
    the quotient construction; over the plain polynomial ring the beta
    square fails, which is the point of the quotient.
    """
    if n < 3:
        raise UsageError("factorization example needs n >= 3")
    P = PolyRing(n, char)
    xs = P.variables()
    if ring is None:
        defining = ideal_intersection(ideal(P, [xs[0]]), ideal(P, list(xs[1:])))
        R = QuotientRing(defining)
    else:
        if ring.poly_ring != P:
            raise UsageError("supplied ring must live over the same polynomial ring")
        R = ring
    tail = ideal(P, list(xs[1:]))
    K = koszul_complex(list(xs[1:]), R)
    Rcx = single_module_complex(FreeModule(R, (0,)))
    one = P.one()
    alpha = ChainMap(
        Rcx, K, {0: ModMap(Rcx.modules[0], K.modules[0], [[one]])}
    )
    beta = ChainMap(
        K,
        Rcx,
        {0: ModMap(K.modules[0], Rcx.modules[0], [[xs[0]]], degree=1)},
        degree=1,
    )
    checks = [("alpha_chain_map", alpha.is_chain_map()), ("beta_chain_map", beta.is_chain_map())]
    composite = compose_chain_maps(beta, alpha)
    checks.append(("composite_is_x1", composite == scalar_chain_map(Rcx, xs[0])))
    torsion_ok = True
    for i in range(1, K.hi + 1):
        hd = K.homology(i)
        if hd.is_zero:
            continue
        if not is_power_torsion(hd.module, tail):
            torsion_ok = False
            break
    checks.append(("positive_homology_torsion", torsion_ok))
    return FactorizationReport(n=n, checks=checks, passed=all(v for _, v in checks))
