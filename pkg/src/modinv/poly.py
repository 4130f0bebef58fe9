"""Sparse polynomials over GF(q) in x1..xm, y1..ym.

A monomial is a plain tuple of 2m exponents ordered ``(x1, ..., xm, y1, ..., ym)``.
A :class:`Polynomial` maps monomials to nonzero integer-encoded field elements.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .errors import UsageError
from .field import FieldContext

Monomial = tuple  # tuple[int, ...] of length 2m

MAX_VARIABLES = 32
MAX_EXPONENT = 1 << 16


def monomial_degree(mon: Monomial) -> int:
    return sum(mon)


def monomial_key(mon: Monomial):
    """Sort key: total degree, then lex with x1 < ... < xm < y1 < ... < ym."""
    return (sum(mon), mon[::-1])


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([i + j for i, j in zip(a, b)])


class RingContext:
    """GF(q)[x1..xm, y1..ym]."""

    def __init__(self, field: FieldContext, m: int):
        if not isinstance(m, int) or m < 1:
            raise UsageError(f"m must be a positive integer, got {m!r}")
        if 2 * m > MAX_VARIABLES:
            raise UsageError(f"at most {MAX_VARIABLES // 2} vector copies supported")
        self.field = field
        self.m = m
        self.nvars = 2 * m
        self.names = tuple([f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)])
        self._name_index = {n: i for i, n in enumerate(self.names)}
        self._md_cache: dict[tuple, tuple] = {}
        self._deg_cache: dict[int, tuple] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, RingContext) and self.m == other.m and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.field, self.m))

    def __repr__(self) -> str:
        return f"{self.field!r}[{', '.join(self.names)}]"

    # element constructors -------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c = int(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, mon: Sequence[int], coeff: int = 1) -> "Polynomial":
        mon = tuple(mon)
        if len(mon) != self.nvars:
            raise UsageError(f"monomial needs {self.nvars} exponents")
        return Polynomial(self, {mon: coeff} if coeff else {})

    def var(self, index: int) -> "Polynomial":
        mon = [0] * self.nvars
        mon[index] = 1
        return Polynomial(self, {tuple(mon): 1})

    def x(self, i: int) -> "Polynomial":
        """x_i, 1-based."""
        return self.var(i - 1)

    def y(self, i: int) -> "Polynomial":
        return self.var(self.m + i - 1)

    def xy_monomial(self, alpha: Sequence[int], beta: Sequence[int]) -> Monomial:
        """x^alpha * y^beta as an exponent tuple."""
        if len(alpha) != self.m or len(beta) != self.m:
            raise UsageError(f"exponent vectors must have length {self.m}")
        return tuple(alpha) + tuple(beta)

    # monomial enumeration -------------------------------------------------------

    def monomials_of_degree(self, d: int) -> tuple:
        if d not in self._deg_cache:
            out = []
            for md in compositions(d, self.m):
                out.extend(self.monomials_of_multidegree(md))
            out.sort(key=monomial_key)
            self._deg_cache[d] = tuple(out)
        return self._deg_cache[d]

    def monomials_of_multidegree(self, md: Sequence[int]) -> tuple:
        """Monomials whose degree in the i-th copy (x_i and y_i together) is md[i]."""
        md = tuple(md)
        if md not in self._md_cache:
            out = []
            for xs in product(*(range(k + 1) for k in md)):
                out.append(tuple(xs) + tuple(k - a for k, a in zip(md, xs)))
            out.sort(key=monomial_key)
            self._md_cache[md] = tuple(out)
        return self._md_cache[md]

    def multidegree(self, mon: Monomial) -> tuple:
        m = self.m
        return tuple([mon[i] + mon[m + i] for i in range(m)])

    # text I/O ---------------------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


@lru_cache(maxsize=None)
def _compositions(n: int, k: int) -> tuple:
    if k == 1:
        return ((n,),)
    out = []
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            out.append((first,) + rest)
    return tuple(out)


def compositions(n: int, k: int) -> tuple:
    """All weak compositions of n into k nonnegative parts (lexicographically descending)."""
    if n < 0 or k < 1:
        return ()
    return _compositions(n, k)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # predicates -----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(mon) for mon in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(mon) for mon in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def multidegree(self) -> tuple | None:
        """The common multidegree of all terms, or None if not multihomogeneous (or zero)."""
        mds = {self.ring.multidegree(mon) for mon in self.terms}
        return mds.pop() if len(mds) == 1 else None

    def multihomogeneous_components(self) -> dict:
        out: dict[tuple, dict] = {}
        for mon, c in self.terms.items():
            out.setdefault(self.ring.multidegree(mon), {})[mon] = c
        return {md: Polynomial(self.ring, t) for md, t in out.items()}

    def coefficient(self, mon: Sequence[int]) -> int:
        return self.terms.get(tuple(mon), 0)

    # arithmetic -------------------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise UsageError("polynomials belong to different rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        if hasattr(other, "field") and hasattr(other, "value"):
            if other.field != self.ring.field:
                raise UsageError("scalar from a different field")
            return self.ring.const(other.value)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for mon, c in b.items():
            v = out.get(mon, 0) ^ c
            if v:
                out[mon] = v
            else:
                del out[mon]
        return Polynomial(self.ring, out)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        exp, log = F._exp, F._log
        out: dict = {}
        for m1, c1 in self.terms.items():
            l1 = log[c1]
            for m2, c2 in other.terms.items():
                mon = tuple([i + j for i, j in zip(m1, m2)])
                c = exp[l1 + log[c2]]
                v = out.get(mon, 0) ^ c
                if v:
                    out[mon] = v
                else:
                    out.pop(mon, None)
        res = Polynomial(self.ring, out)
        res._check_exponents()
        return res

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        c = int(c)
        if c == 0:
            return self.ring.zero()
        F = self.ring.field
        return Polynomial(self.ring, {mon: F.mul(v, c) for mon, v in self.terms.items()})

    def mul_monomial(self, mon: Monomial, c: int = 1) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        if c == 1:
            terms = {tuple([i + j for i, j in zip(k, mon)]): v for k, v in self.terms.items()}
        else:
            F = self.ring.field
            terms = {tuple([i + j for i, j in zip(k, mon)]): F.mul(v, c) for k, v in self.terms.items()}
        res = Polynomial(self.ring, terms)
        res._check_exponents()
        return res

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise UsageError("negative polynomial power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _check_exponents(self) -> None:
        for mon in self.terms:
            if max(mon, default=0) >= MAX_EXPONENT:
                raise OverflowError(f"exponent exceeds {MAX_EXPONENT - 1}")
            break

    def derivative(self, index: int) -> "Polynomial":
        """Partial derivative with respect to variable ``index`` (0-based)."""
        out = {}
        for mon, c in self.terms.items():
            e = mon[index]
            if e % 2 == 1:  # e*c vanishes for even e in characteristic 2
                new = list(mon)
                new[index] -= 1
                out[tuple(new)] = c
        return Polynomial(self.ring, out)

    # comparison -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self, descending: bool = True) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=descending)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(p: Polynomial) -> str:
    """Terms joined by ' + ', each 'c*x1^e1*...', unit coefficients and zero exponents omitted."""
    if not p.terms:
        return "0"
    names = p.ring.names
    parts = []
    for mon, c in p.sorted_terms():
        factors = []
        for name, e in zip(names, mon):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


_FACTOR = re.compile(r"^([A-Za-z]\w*)(?:\^(\d+))?$")


def parse_polynomial(ring: RingContext, text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial`; whitespace is ignored."""
    text = "".join(text.split())
    if not text:
        raise UsageError("empty polynomial text")
    if text == "0":
        return ring.zero()
    F = ring.field
    result = ring.zero()
    for term in text.split("+"):
        if not term:
            raise UsageError(f"empty term in {text!r}")
        coeff = 1
        mon = [0] * ring.nvars
        for factor in term.split("*"):
            if factor.isdigit():
                c = int(factor)
                if c >= F.q:
                    raise UsageError(f"coefficient {c} is not an element of GF({F.q})")
                coeff = F.mul(coeff, c)
                continue
            match = _FACTOR.match(factor)
            if not match or match.group(1) not in ring._name_index:
                raise UsageError(f"cannot parse factor {factor!r}")
            mon[ring._name_index[match.group(1)]] += int(match.group(2) or 1)
        result = result + ring.monomial(mon, coeff)
    return result


def poly_arith(p: Polynomial, r, kind: str) -> Polynomial:
    """``add``, ``mul`` or ``scale`` (r is then a field element or integer encoding)."""
    if kind == "add":
        return p + r
    if kind == "mul":
        if not isinstance(r, Polynomial):
            raise UsageError("mul expects a polynomial operand")
        return p * r
    if kind == "scale":
        value = getattr(r, "value", r)
        return p.scale(int(value))
    raise UsageError(f"unknown polynomial operation {kind!r}")


def graded_piece(p: Polynomial, d: int) -> Polynomial:
    return Polynomial(p.ring, {mon: c for mon, c in p.terms.items() if sum(mon) == d})


def monomials_of_degree(ctx: RingContext, d: int) -> tuple:
    return ctx.monomials_of_degree(d)


def expected_monomial_count(m: int, d: int) -> int:
    return comb(d + 2 * m - 1, 2 * m - 1)


def substitute_linear(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Apply the algebra endomorphism sending variable k to ``images[k]``.

    Every image must be homogeneous of degree 1. Images that are single terms
    take a fast path (generalized permutation of monomials).
    """
    ring = p.ring
    if len(images) != ring.nvars:
        raise UsageError(f"need {ring.nvars} images, got {len(images)}")
    for img in images:
        if not isinstance(img, Polynomial) or img.is_zero() or not img.is_homogeneous(1):
            raise UsageError("substitute_linear requires homogeneous linear images")
        p._check(img)
    if all(len(img.terms) == 1 for img in images):
        targets = []
        scalars = []
        for img in images:
            (mon, c), = img.terms.items()
            targets.append(mon.index(1))
            scalars.append(c)
        return _apply_monomial_map(p, targets, scalars)
    cache: list[dict[int, Polynomial]] = [dict() for _ in images]

    def power(k: int, e: int) -> Polynomial:
        got = cache[k].get(e)
        if got is None:
            got = images[k] ** e
            cache[k][e] = got
        return got

    out = ring.zero()
    for mon, c in p.terms.items():
        term = ring.const(c)
        for k, e in enumerate(mon):
            if e:
                term = term * power(k, e)
        out = out + term
    return out


def _apply_monomial_map(p: Polynomial, targets: Sequence[int], scalars: Sequence[int]) -> Polynomial:
    """Variable k -> scalars[k] * variable targets[k]."""
    F = p.ring.field
    log, exp, n1 = F._log, F._exp, F.q - 1
    logs = [log[c] for c in scalars]
    n = len(targets)
    out: dict = {}
    for mon, c in p.terms.items():
        new = [0] * n
        lg = log[c]
        for k, e in enumerate(mon):
            if e:
                new[targets[k]] += e
                lg += logs[k] * e
        key = tuple(new)
        v = out.get(key, 0) ^ exp[lg % n1]
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Polynomial(p.ring, out)


def linear_form(ring: RingContext, coeffs: Mapping[int, int]) -> Polynomial:
    """Sum of coeffs[k] * variable k."""
    out = ring.zero()
    for k, c in coeffs.items():
        if c:
            out = out + ring.var(k).scale(c)
    return out
