"""Two-dimensional orthogonal groups in characteristic 2 and their action on GF(q)[mV].

Group elements act on the variables by ``g . x = x o g^-1``: the pair
``(x_i, y_i)`` is sent to the linear forms given by the rows of ``g^-1``. With
this rule the swap sends ``x_i -> y_i`` and ``diag(a, 1/a)`` sends
``x_i -> x_i / a``, ``y_i -> a y_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import IntegrityError, PreconditionError, UsageError
from .field import FieldContext
from .poly import Polynomial, RingContext, substitute_linear

KINDS = ("plus", "minus", "sylow")


@dataclass(frozen=True)
class Matrix2:
    """Row-major 2x2 matrix with integer-encoded GF(q) entries."""

    a: int
    b: int
    c: int
    d: int
    field: FieldContext = field(compare=False, repr=False)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        F = self.field
        m = F.mul
        return Matrix2(
            m(self.a, other.a) ^ m(self.b, other.c),
            m(self.a, other.b) ^ m(self.b, other.d),
            m(self.c, other.a) ^ m(self.d, other.c),
            m(self.c, other.b) ^ m(self.d, other.d),
            F,
        )

    def det(self) -> int:
        return self.field.mul(self.a, self.d) ^ self.field.mul(self.b, self.c)

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det == 0:
            raise UsageError(f"singular matrix {self.entries()}")
        k = self.field.inv(det)
        m = self.field.mul
        return Matrix2(m(k, self.d), m(k, self.b), m(k, self.c), m(k, self.a), self.field)

    def transpose(self) -> "Matrix2":
        return Matrix2(self.a, self.c, self.b, self.d, self.field)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_monomial(self) -> bool:
        """True for diagonal or anti-diagonal matrices (generalized permutations)."""
        return (self.b == 0 and self.c == 0) or (self.a == 0 and self.d == 0)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def identity(F: FieldContext) -> Matrix2:
    return Matrix2(1, 0, 0, 1, F)


def swap(F: FieldContext) -> Matrix2:
    return Matrix2(0, 1, 1, 0, F)


def torus(F: FieldContext, a: int) -> Matrix2:
    """diag(a, a^-1)."""
    return Matrix2(a, 0, 0, F.inv(a), F)


def gram_form(F: FieldContext, kind: str) -> Matrix2:
    if kind == "plus":
        return Matrix2(0, 1, 0, 0, F)
    if kind == "minus":
        return Matrix2(F.w, 1, 0, F.w, F)
    raise UsageError(f"no quadratic form for kind {kind!r}")


def is_alternate(M: Matrix2) -> bool:
    return M.a == 0 and M.d == 0 and M.b == M.c


def is_orthogonal(T: Matrix2, kind: str) -> bool:
    """T . O . T' - O is alternate (symmetric with zero diagonal)."""
    if T.det() == 0:
        raise UsageError(f"singular matrix {T.entries()}")
    O = gram_form(T.field, kind)
    P = T @ O @ T.transpose()
    diff = Matrix2(P.a ^ O.a, P.b ^ O.b, P.c ^ O.c, P.d ^ O.d, T.field)
    return is_alternate(diff)


@dataclass(frozen=True)
class GroupTable:
    kind: str
    field: FieldContext
    elements: tuple
    generators: tuple
    brute_force_count: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Matrix2) -> bool:
        return g in set(self.elements)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "expected_order": expected_order(self.field.q, self.kind),
            "brute_force_count": self.brute_force_count,
            "cross_validated": True,
            "generators": [str(g) for g in self.generators],
            "elements": [str(g) for g in self.elements],
        }


def expected_order(q: int, kind: str) -> int:
    return {"plus": 2 * (q - 1), "minus": 2 * (q + 1), "sylow": 2}[kind]


def _closure(gens: list[Matrix2]) -> list[Matrix2]:
    F = gens[0].field
    seen = {identity(F)}
    order = [identity(F)]
    frontier = [identity(F)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h @ g
                if k not in seen:
                    seen.add(k)
                    order.append(k)
                    nxt.append(k)
        frontier = nxt
    return order


def brute_force_orthogonal(F: FieldContext, kind: str) -> set:
    """Every invertible T with T O T' - O alternate, by exhaustive search.

    Row i of T must satisfy the diagonal condition r O r' = O_ii on its own,
    so candidate rows are filtered first; every surviving pair of rows is then
    tested with :func:`is_orthogonal`. No structure of the answer is assumed.
    """
    O = gram_form(F, kind)
    m = F.mul

    def qform(u: int, v: int) -> int:
        return m(m(u, u), O.a) ^ m(m(u, v), O.b ^ O.c) ^ m(m(v, v), O.d)

    rows1 = [(u, v) for u, v in product(range(F.q), repeat=2) if qform(u, v) == O.a]
    rows2 = [(u, v) for u, v in product(range(F.q), repeat=2) if qform(u, v) == O.d]
    out = set()
    for (a, b), (c, d) in product(rows1, rows2):
        T = Matrix2(a, b, c, d, F)
        if T.det() and is_orthogonal(T, kind):
            out.add(T)
    return out


def minus_rotations(F: FieldContext) -> list[Matrix2]:
    """The tau_a family of the minus type.

    a = 0 gives [[0,1],[1,1/w]]; for a != 0 every b with
    a^2 w + b^2 w + w + a b = 0 gives [[a,b],[b,a+b/w]]. All solutions are kept.
    """
    w, winv, m = F.w, F.inv(F.w), F.mul
    out = [Matrix2(0, 1, 1, winv, F)]
    for a in F.units():
        for b in F.elements():
            if m(m(a, a), w) ^ m(m(b, b), w) ^ w ^ m(a, b) == 0:
                out.append(Matrix2(a, b, b, a ^ m(b, winv), F))
    seen, uniq = set(), []
    for g in out:
        if g not in seen:
            seen.add(g)
            uniq.append(g)
    return uniq


def build_group(F: FieldContext, kind: str) -> GroupTable:
    """Enumerate the group and cross-validate it against brute-force congruence search."""
    if kind not in KINDS:
        raise UsageError(f"unknown group kind {kind!r}")
    sig = swap(F)
    if kind == "plus":
        gens = (sig, torus(F, F.primitive))
        elements = _closure(list(gens))
        brute = brute_force_orthogonal(F, "plus")
    elif kind == "minus":
        rot = minus_rotations(F)
        family = [identity(F), sig] + rot + [sig @ t for t in rot]
        seen, elements = set(), []
        for g in family:
            if g not in seen:
                seen.add(g)
                elements.append(g)
        gens = tuple(elements)
        brute = brute_force_orthogonal(F, "minus")
    else:
        gens = (sig,)
        elements = [identity(F), sig]
        plus = brute_force_orthogonal(F, "plus")
        two_part = len(plus) & -len(plus)
        if not set(elements) <= plus or len(elements) != two_part:
            raise IntegrityError(
                f"sylow subgroup of order {len(elements)} does not match the 2-part {two_part} of |O+|",
                expected=plus,
                found=set(elements),
            )
        brute = set(elements)
    if set(elements) != brute:
        raise IntegrityError(
            f"{kind} enumeration ({len(elements)} elements) disagrees with brute force ({len(brute)})",
            expected=brute,
            found=set(elements),
        )
    if not _is_closed(elements):
        raise IntegrityError(f"{kind} enumeration is not closed under multiplication")
    return GroupTable(kind, F, tuple(elements), tuple(gens), len(brute))


def _is_closed(elements: list[Matrix2]) -> bool:
    S = set(elements)
    return all((g @ h) in S for g in elements for h in elements)


# --- action on polynomials -------------------------------------------------------


def action_images(g: Matrix2, ring: RingContext) -> list[Polynomial]:
    """Images of x_1..x_m, y_1..y_m under g (rows of g^-1)."""
    if g.field != ring.field:
        raise UsageError("group element and ring are over different fields")
    h = g.inverse()
    m = ring.m
    xs, ys = [], []
    for i in range(1, m + 1):
        x, y = ring.x(i), ring.y(i)
        xs.append(x.scale(h.a) + y.scale(h.b))
        ys.append(x.scale(h.c) + y.scale(h.d))
    return xs + ys


def act(g: Matrix2, p: Polynomial) -> Polynomial:
    return substitute_linear(p, action_images(g, p.ring))


def relative_transfer(f: Polynomial, check: bool = True) -> Polynomial:
    """Sum of tau_a . f over the units a (index q-1 is odd, so no normalization).

    ``f`` must be fixed by the swap.
    """
    ring = f.ring
    F = ring.field
    if check and act(swap(F), f) != f:
        raise PreconditionError("relative transfer needs a swap-invariant input")
    out = ring.zero()
    for a in F.units():
        out = out + act(torus(F, a), f)
    return out


def full_transfer(f: Polynomial, table: GroupTable) -> Polynomial:
    out = f.ring.zero()
    for g in table.elements:
        out = out + act(g, f)
    return out


def is_invariant(f: Polynomial, table: GroupTable) -> bool:
    return all(act(g, f) == f for g in table.generators)
