"""Named generator families for the plus, Sylow and minus invariant rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import UsageError
from .groups import GroupTable, full_transfer
from .linalg import fixed_blocks
from .poly import Polynomial, RingContext, compositions

FAMILIES = ("N", "U", "B", "D", "L", "Bprime", "E", "Q")


@dataclass(frozen=True)
class Generator:
    label: str
    family: str
    poly: Polynomial

    @property
    def degree(self) -> int:
        return self.poly.degree()


@dataclass
class GeneratorSet:
    ring: RingContext
    group_kind: str
    items: list = field(default_factory=list)
    minimal_families: tuple = ()
    extras: dict = field(default_factory=dict)

    def add(self, label: str, family: str, poly: Polynomial) -> None:
        self.items.append(Generator(label, family, poly))

    def family(self, tag: str) -> list:
        return [g for g in self.items if g.family == tag]

    def distinct(self, families: Iterable[str] | None = None) -> list:
        """Items with pairwise different polynomials, first occurrence wins."""
        tags = set(families) if families is not None else None
        seen, out = set(), []
        for g in self.items:
            if tags is not None and g.family not in tags:
                continue
            if g.poly not in seen:
                seen.add(g.poly)
                out.append(g)
        return out

    def minimal(self) -> list:
        """The claimed minimal generating set (deduplicated)."""
        return self.distinct(self.minimal_families) if self.minimal_families else self.distinct()

    def polys(self) -> list:
        return [g.poly for g in self.distinct()]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def describe(self) -> list:
        return [{"label": g.label, "family": g.family, "degree": g.degree, "poly": str(g.poly)} for g in self.items]


def b_alpha(ring: RingContext, alpha: Sequence[int]) -> Polynomial:
    """x^alpha + y^alpha."""
    zero = (0,) * ring.m
    return ring.monomial(ring.xy_monomial(alpha, zero)) + ring.monomial(ring.xy_monomial(zero, alpha))


def _indicator(m: int, subset: Iterable[int]) -> list[int]:
    v = [0] * m
    for i in subset:
        v[i - 1] = 1
    return v


def build_d_general(
    ring: RingContext,
    I: Sequence[int],
    J: Sequence[int],
    alpha: Sequence[int] | None = None,
    beta: Sequence[int] | None = None,
) -> Polynomial:
    """x_I^alpha y_J^beta + y_I^alpha x_J^beta with 1-based index sets.

    ``alpha`` / ``beta`` are full length-m exponent vectors supported on I / J;
    omitted means all ones on the subset.
    """
    m = ring.m
    I, J = sorted(set(I)), sorted(set(J))
    if not I or not J:
        raise UsageError("I and J must be nonempty")
    if any(not 1 <= k <= m for k in I + J):
        raise UsageError(f"indices must lie in 1..{m}")
    alpha = list(alpha) if alpha is not None else _indicator(m, I)
    beta = list(beta) if beta is not None else _indicator(m, J)
    if len(alpha) != m or len(beta) != m:
        raise UsageError(f"exponent vectors must have length {m}")
    for vec, S in ((alpha, I), (beta, J)):
        for k in range(1, m + 1):
            e = vec[k - 1]
            if (k in S and e < 1) or (k not in S and e != 0):
                raise UsageError("exponents must be >= 1 on the subset and 0 off it")
    return ring.monomial(ring.xy_monomial(alpha, beta)) + ring.monomial(ring.xy_monomial(beta, alpha))


def d_pairs(m: int, q: int) -> list[tuple[tuple, tuple]]:
    """Nonempty I < J (max I < min J) with |J| - |I| in {0, q-1}."""
    out = []
    for split in range(1, m):
        for I in _subsets_with_max(split):
            for J in _nonempty_subsets(split + 1, m):
                if len(J) - len(I) in (0, q - 1):
                    out.append((I, J))
    return out


def _subsets_with_max(k: int) -> list[tuple]:
    """Subsets of {1..k} containing k."""
    out = []
    for r in range(0, k):
        for rest in combinations(range(1, k), r):
            out.append(rest + (k,))
    return out


def _nonempty_subsets(k: int, m: int) -> list[tuple]:
    """Nonempty subsets of {k..m}."""
    return [S for r in range(1, m - k + 2) for S in combinations(range(k, m + 1), r)]


def _set_label(S: Sequence[int]) -> str:
    return "{" + ",".join(map(str, S)) + "}"


def build_plus_generators(ring: RingContext) -> GeneratorSet:
    m, q = ring.m, ring.field.q
    gs = GeneratorSet(ring, "plus", minimal_families=("N", "B", "D"))
    for i in range(1, m + 1):
        gs.add(f"N{i}", "N", ring.x(i) * ring.y(i))
    for i, j in combinations(range(1, m + 1), 2):
        gs.add(f"U{i}{j}" if m < 10 else f"U{i},{j}", "U", ring.x(i) * ring.y(j) + ring.x(j) * ring.y(i))
    for alpha in compositions(q - 1, m):
        gs.add(f"B{list(alpha)}", "B", b_alpha(ring, alpha))
    for I, J in d_pairs(m, q):
        gs.add(f"d{_set_label(I)}{_set_label(J)}", "D", build_d_general(ring, I, J))
    return gs


def build_sylow_generators(ring: RingContext) -> GeneratorSet:
    """L, N, U and B' = {B_alpha : alpha in {0,1}^m, alpha != 0}.

    ``extras['minimal']`` lists the subfamily L, N, U, B'' with |alpha| >= 3.
    """
    m = ring.m
    gs = GeneratorSet(ring, "sylow")
    for i in range(1, m + 1):
        gs.add(f"L{i}", "L", ring.x(i) + ring.y(i))
    for i in range(1, m + 1):
        gs.add(f"N{i}", "N", ring.x(i) * ring.y(i))
    for i, j in combinations(range(1, m + 1), 2):
        gs.add(f"U{i}{j}", "U", ring.x(i) * ring.y(j) + ring.x(j) * ring.y(i))
    for r in range(1, m + 1):
        for S in combinations(range(1, m + 1), r):
            gs.add(f"B{_set_label(S)}", "Bprime", b_alpha(ring, _indicator(m, S)))
    minimal = [g for g in gs.items if g.family in ("L", "N", "U")]
    minimal += [g for g in gs.items if g.family == "Bprime" and g.degree >= 3]
    gs.extras["minimal"] = minimal
    return gs


def sylow_minimal(gs: GeneratorSet) -> list:
    return gs.extras["minimal"]


def build_minus_generators(ring: RingContext, table: GroupTable) -> GeneratorSet:
    """E = x y^q + x^q y and Q, the quadratic invariant of the minus type.

    The group average of x^2 vanishes in characteristic 2 (there is no linear
    invariant to square), so Q is taken as the unique degree-2 invariant
    normalized to x^2-coefficient 1. The literal transfer of x^2 is kept in
    ``extras['transfer_x2']``.
    """
    if ring.m != 1:
        raise UsageError("the E, Q pair is defined for m = 1")
    if table.kind != "minus" or table.field != ring.field:
        raise UsageError("need the minus-type table over the ring's field")
    q = ring.field.q
    x, y = ring.x(1), ring.y(1)
    E = x * y ** q + x ** q * y
    quad = fixed_blocks(ring, table.generators, 2).basis()
    if len(quad) != 1:
        raise UsageError(f"expected a one-dimensional space of quadratic invariants, got {len(quad)}")
    Q = quad[0]
    lead = Q.coefficient((2, 0))
    if lead:
        Q = Q.scale(ring.field.inv(lead))
    gs = GeneratorSet(ring, "minus")
    gs.add("E", "E", E)
    gs.add("Q", "Q", Q)
    gs.extras["u"] = Q.coefficient((1, 1))
    gs.extras["v"] = Q.coefficient((0, 2))
    gs.extras["x2_coefficient"] = Q.coefficient((2, 0))
    gs.extras["transfer_x2"] = full_transfer(x * x, table)
    return gs


def expected_b_count(q: int, m: int) -> int:
    return comb(q - 2 + m, m - 1)
