"""Exact arithmetic in GF(2^s).

Elements are encoded as integers ``sum(bit_i * 2**i)`` in the polynomial basis
``1, z, ..., z^(s-1)`` modulo an irreducible polynomial over GF(2). Hot loops
elsewhere in the package work directly on these integers through a
:class:`FieldContext`; :class:`FieldElement` is a thin operator-overloading
wrapper for interactive use and tests.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import FieldConstructionError, UsageError

MIN_EXPONENT = 2
MAX_EXPONENT = 16

_DEFAULT_MODULI = {2: 0b111, 3: 0b1011, 4: 0b10011}


def _deg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, b: int) -> int:
    """Remainder of carry-less division a mod b over GF(2)[z]."""
    db = _deg(b)
    while a and _deg(a) >= db:
        a ^= b << (_deg(a) - db)
    return a


def _clmul_mod(a: int, b: int, modulus: int, s: int) -> int:
    res = 0
    top = 1 << s
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return res


def find_factor(modulus: int) -> int | None:
    """Return a nontrivial factor of ``modulus`` over GF(2), or None if irreducible.

    Plain trial division by every polynomial of degree 1..deg/2.
    """
    n = _deg(modulus)
    if n < 1:
        return modulus
    for d in range(1, n // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _pmod(modulus, cand) == 0:
                return cand
    return None


def default_modulus(s: int) -> int:
    if s in _DEFAULT_MODULI:
        return _DEFAULT_MODULI[s]
    for cand in range((1 << s) + 1, 1 << (s + 1), 2):
        if find_factor(cand) is None:
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def modulus_from_exponents(exponents: Iterable[int]) -> int:
    """``[2, 1, 0]`` -> ``0b111`` (z^2 + z + 1)."""
    out = 0
    for e in exponents:
        e = int(e)
        if e < 0:
            raise UsageError(f"negative exponent {e} in modulus")
        out ^= 1 << e
    return out


def modulus_to_exponents(modulus: int) -> list[int]:
    return [i for i in range(_deg(modulus), -1, -1) if modulus >> i & 1]


def poly_text(p: int, var: str = "z") -> str:
    terms = []
    for e in modulus_to_exponents(p):
        terms.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
    return " + ".join(terms) if terms else "0"


class FieldContext:
    """The field GF(2^s) with a fixed modulus, primitive element and element ``w``.

    Immutable after construction. ``w`` is the least-encoded element of absolute
    trace 1, i.e. an element outside ``{x^2 + x}``.
    """

    __slots__ = ("s", "q", "modulus", "primitive", "w", "_exp", "_log", "_inv")

    def __init__(self, s: int, modulus: int):
        self.s = s
        self.q = 1 << s
        self.modulus = modulus
        self.primitive = self._find_primitive()
        exp = [0] * (2 * (self.q - 1))
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = _clmul_mod(x, self.primitive, modulus, s)
        for i in range(self.q - 1, 2 * (self.q - 1)):
            exp[i] = exp[i - (self.q - 1)]
        self._exp = exp
        self._log = log
        self._inv = [0] + [exp[(self.q - 1 - log[a]) % (self.q - 1)] for a in range(1, self.q)]
        self.w = self._find_w()

    def _find_primitive(self) -> int:
        n = self.q - 1
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = _clmul_mod(x, g, self.modulus, self.s)
                order += 1
            if order == n:
                return g
        if n == 1:  # pragma: no cover - excluded by s >= 2
            return 1
        raise AssertionError("unit group is not cyclic?")  # pragma: no cover

    def _find_w(self) -> int:
        w = next(a for a in range(self.q) if self.trace(a) == 1)
        if any(self.mul(x, x) ^ x == w for x in range(self.q)):
            raise AssertionError(f"trace-1 element {w} is of the form x^2 + x")
        return w

    # raw integer arithmetic -------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.s):
            t ^= x
            x = self.mul(x, x)
        return t

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    # enumeration ----------------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def __iter__(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, a) for a in range(self.q))

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldContext) and (self.s, self.modulus) == (other.s, other.modulus)

    def __hash__(self) -> int:
        return hash((self.s, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q}) mod {poly_text(self.modulus)}"

    def describe(self) -> dict:
        return {
            "q": self.q,
            "s": self.s,
            "modulus": modulus_to_exponents(self.modulus),
            "modulus_text": poly_text(self.modulus),
            "primitive": self.primitive,
            "w": self.w,
        }


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FieldContext, value: int):
        value = int(value)
        if not 0 <= value < field.q:
            value = _pmod(value, field.modulus) if value > 0 else -1
            if value < 0:
                raise UsageError("field elements are encoded by nonnegative integers")
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError("operands live in different fields")
            return other.value
        if isinstance(other, int):
            return FieldElement(self.field, other).value
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.value ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}"

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.value >> i & 1 for i in range(self.field.s))


def make_field(s: int, modulus: int | Sequence[int] | None = None) -> FieldContext:
    """Build GF(2^s), verifying irreducibility of the modulus.

    ``modulus`` may be a bit-encoded integer (``0b111`` for z^2+z+1) or a
    sequence of exponents (``[2, 1, 0]``).
    """
    if not isinstance(s, int) or not MIN_EXPONENT <= s <= MAX_EXPONENT:
        raise UsageError(f"field exponent s must satisfy {MIN_EXPONENT} <= s <= {MAX_EXPONENT}, got {s!r}")
    if modulus is None:
        mod = default_modulus(s)
    elif isinstance(modulus, int):
        mod = modulus
    else:
        mod = modulus_from_exponents(modulus)
    if _deg(mod) != s:
        raise UsageError(f"modulus {poly_text(mod)} has degree {_deg(mod)}, expected {s}")
    factor = find_factor(mod)
    if factor is not None:
        raise FieldConstructionError(
            f"modulus {poly_text(mod)} is reducible: divisible by {poly_text(factor)}", factor=factor
        )
    return FieldContext(s, mod)


def field_arith(a: FieldElement, b: FieldElement | int | None, kind: str) -> FieldElement:
    """Dispatch one of ``add``, ``mul``, ``inv``, ``pow``.

    For ``inv`` the second operand is ignored; for ``pow`` it is an integer exponent.
    """
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** int(b)
    raise UsageError(f"unknown field operation {kind!r}")


def sum_of_unit_powers(ctx: FieldContext, e: int) -> int:
    """Sum of ``a**e`` over all units, by direct summation."""
    total = 0
    for a in ctx.units():
        total ^= ctx.pow(a, e)
    return total
