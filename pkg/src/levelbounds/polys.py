"""Dense multivariate polynomial arithmetic over a prime field.

Polynomials live in F_p[x1..xn] with p prime (default 101).  Exponent
vectors are plain int tuples and the graded reverse lexicographic order
is the ambient term order throughout the package.  Every Poly is kept in
canonical form: terms sorted strictly descending, no zero coefficients,
coefficients reduced to 0..p-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import UsageError

DEFAULT_CHAR = 101


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# monomials: exponent tuples


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """Quotient exponent of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


def drl_key(a: tuple) -> tuple:
    """Sort key realizing degrevlex: higher key means larger monomial.

    Ties in total degree are broken by the rightmost differing exponent,
    smaller exponent winning, which the negated reversed tuple encodes.
    """
    return (sum(a), tuple(-e for e in reversed(a)))


def mono_cmp(a: tuple, b: tuple) -> int:
    """Three-way degrevlex comparison; requires equal variable counts."""
    if len(a) != len(b):
        raise UsageError("cannot compare monomials in different variable counts")
    ka, kb = drl_key(a), drl_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


# ---------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolyRing:
    """The polynomial ring F_p[x1..xn]; cheap value object."""

    nvars: int
    char: int = DEFAULT_CHAR

    def __post_init__(self):
        if self.nvars < 0:
            raise UsageError("variable count must be nonnegative")
        if not _is_prime(self.char):
            raise UsageError(f"characteristic {self.char} is not prime")

    def zero(self) -> "Poly":
        return Poly(self, ())

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c %= self.char
        if c == 0:
            return Poly(self, ())
        return Poly(self, (((0,) * self.nvars, c),))

    def var(self, i: int) -> "Poly":
        """The variable x(i+1), zero-indexed."""
        if not 0 <= i < self.nvars:
            raise UsageError(f"variable index {i} out of range for {self.nvars} variables")
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, ((e, 1),))

    def variables(self) -> tuple:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "Poly":
        e = tuple(exps)
        if len(e) != self.nvars or any(x < 0 for x in e):
            raise UsageError("bad exponent vector")
        c = coeff % self.char
        if c == 0:
            return self.zero()
        return Poly(self, ((e, c),))

    def from_dict(self, d: dict) -> "Poly":
        terms = []
        for e, c in d.items():
            c %= self.char
            if c:
                terms.append((tuple(e), c))
        terms.sort(key=lambda t: drl_key(t[0]), reverse=True)
        return Poly(self, tuple(terms))

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


class Poly:
    """Immutable polynomial in canonical form.

    terms: tuple of (exponent tuple, coefficient) sorted strictly
    descending in degrevlex, coefficients in 1..p-1.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: tuple):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and mono_deg(self.terms[0][0]) == 0)

    def constant_coeff(self) -> int:
        for e, c in self.terms:
            if mono_deg(e) == 0:
                return c
        return 0

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = mono_deg(self.terms[0][0])
        return all(mono_deg(e) == d for e, _ in self.terms)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coeff(self) -> int:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        return self.terms[0][1]

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, tuple((e, c) for e, c in self.terms if mono_deg(e) == d))

    def as_dict(self) -> dict:
        return {e: c for e, c in self.terms}

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise UsageError(f"expected Poly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise UsageError("polynomials from different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        d = dict(self.terms)
        p = self.ring.char
        for e, c in other.terms:
            v = (d.get(e, 0) + c) % p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return self.ring.from_dict(d)

    def __neg__(self) -> "Poly":
        p = self.ring.char
        return Poly(self.ring, tuple((e, p - c) for e, c in self.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        p = self.ring.char
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = mono_mul(e1, e2)
                v = (d.get(e, 0) + c1 * c2) % p
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
        return self.ring.from_dict(d)

    def scale(self, c: int) -> "Poly":
        p = self.ring.char
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, tuple((e, (k * c) % p) for e, k in self.terms))

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = pow(self.terms[0][1], self.ring.char - 2, self.ring.char)
        return self.scale(inv)

    def shift_mono(self, exps: tuple, coeff: int = 1) -> "Poly":
        """Multiply by coeff * x^exps without building a Poly for it."""
        p = self.ring.char
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        return Poly(self.ring, tuple((mono_mul(e, exps), (c * coeff) % p) for e, c in self.terms))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise UsageError("negative powers are not defined")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


# ---------------------------------------------------------------------------
# text form: "3*x1^2*x2 + 100*x3^3", variables x1..xn, coefficients 0..p-1

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|(\+)|(-)|(\S))")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse the CLI polynomial syntax into a canonical Poly."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(7) is not None:
            raise UsageError(f"unexpected character {m.group(7)!r} in polynomial {text!r}")
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(2))))
        elif m.group(3):
            tokens.append(("pow", None))
        elif m.group(4):
            tokens.append(("mul", None))
        elif m.group(5):
            tokens.append(("plus", None))
        elif m.group(6):
            tokens.append(("minus", None))
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind):
        nonlocal pos
        if peek() != kind:
            raise UsageError(f"malformed polynomial {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok[1]

    def parse_factor() -> Poly:
        if peek() == "int":
            return ring.const(take("int"))
        if peek() == "var":
            idx = take("var")
            if not 1 <= idx <= ring.nvars:
                raise UsageError(f"variable x{idx} out of range, ring has {ring.nvars} variables")
            exp = 1
            if peek() == "pow":
                take("pow")
                exp = take("int")
                if exp < 0:
                    raise UsageError("negative exponent")
            e = tuple(exp if j == idx - 1 else 0 for j in range(ring.nvars))
            return Poly(ring, ((e, 1),))
        raise UsageError(f"malformed polynomial {text!r}")

    def parse_term() -> Poly:
        out = parse_factor()
        while peek() == "mul":
            take("mul")
            out = out * parse_factor()
        return out

    if not tokens:
        raise UsageError("empty polynomial text")
    sign = 1
    if peek() == "minus":
        take("minus")
        sign = -1
    elif peek() == "plus":
        take("plus")
    result = parse_term().scale(sign)
    while peek() in ("plus", "minus"):
        op = peek()
        take(op)
        result = result + parse_term().scale(1 if op == "plus" else -1)
    if pos != len(tokens):
        raise UsageError(f"trailing tokens in polynomial {text!r}")
    return result


def format_poly(f: Poly) -> str:
    """Canonical text form, inverse to parse_poly on canonical input."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.terms:
        factors = []
        if c != 1 or mono_deg(e) == 0:
            factors.append(str(c))
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i + 1}")
            elif k > 1:
                factors.append(f"x{i + 1}^{k}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def parse_poly_list(text: str, ring: PolyRing) -> tuple:
    """Comma separated polynomial list."""
    items = [s for s in (chunk.strip() for chunk in text.split(",")) if s]
    if not items:
        raise UsageError("empty polynomial list")
    return tuple(parse_poly(s, ring) for s in items)
