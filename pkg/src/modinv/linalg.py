"""Exact linear algebra over GF(2^s) on graded pieces of the polynomial ring.

Vectors are stored bit-sliced: a vector over GF(2^s) with n coordinates is a
list of s Python integers ("planes"), plane j holding bit j of every
coordinate. Addition is XOR of planes; scaling by a constant is a fixed GF(2)
linear map on the planes.

A :class:`Subspace` keeps a semi-echelon basis keyed by pivot column (the
lowest nonzero coordinate in the canonical monomial order). The fully reduced
echelon form is produced on demand by :meth:`Subspace.echelon`.

Everything the invariant engine builds is multihomogeneous (the groups act
diagonally on the copies of V), so :class:`BlockSpace` splits a graded piece
into one :class:`Subspace` per multidegree.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Sequence

from .errors import UsageError
from .field import FieldContext
from .poly import Polynomial, RingContext

_SCALE_CACHE: dict = {}


def _scale_table(F: FieldContext) -> list:
    """table[c][j] = input planes whose XOR gives output plane j of c*v."""
    key = (F.s, F.modulus)
    tab = _SCALE_CACHE.get(key)
    if tab is None:
        tab = [None]
        for c in range(1, F.q):
            images = [F.mul(c, 1 << i) for i in range(F.s)]
            tab.append([tuple(i for i in range(F.s) if images[i] >> j & 1) for j in range(F.s)])
        _SCALE_CACHE[key] = tab
    return tab


class Subspace:
    """A subspace of the span of ``coords`` (an ordered tuple of monomials)."""

    def __init__(self, ring: RingContext, coords: Sequence[tuple], degree: int | None = None):
        self.ring = ring
        self.field = ring.field
        self.coords = tuple(coords)
        self.index = {mon: i for i, mon in enumerate(self.coords)}
        if len(self.index) != len(self.coords):
            raise UsageError("duplicate coordinates")
        self.degree = degree
        self._s = self.field.s
        self._scale = _scale_table(self.field)
        self._rows: dict[int, list] = {}
        self._pivmask = 0
        self._kept: list[Polynomial] = []

    # encoding ---------------------------------------------------------------

    def encode(self, p: Polynomial) -> list:
        planes = [0] * self._s
        index = self.index
        for mon, c in p.terms.items():
            try:
                bit = 1 << index[mon]
            except KeyError:
                raise UsageError(f"monomial {mon} is not a coordinate of this subspace") from None
            j = 0
            while c:
                if c & 1:
                    planes[j] |= bit
                c >>= 1
                j += 1
        return planes

    def decode(self, planes: Sequence[int]) -> Polynomial:
        terms: dict = {}
        nz = 0
        for pl in planes:
            nz |= pl
        while nz:
            low = nz & -nz
            i = low.bit_length() - 1
            c = 0
            for j, pl in enumerate(planes):
                if pl & low:
                    c |= 1 << j
            terms[self.coords[i]] = c
            nz ^= low
        return Polynomial(self.ring, terms)

    # core reduction ---------------------------------------------------------------

    def _scaled(self, row: list, c: int) -> list:
        if c == 1:
            return row
        out = []
        for srcs in self._scale[c]:
            v = 0
            for i in srcs:
                v ^= row[i]
            out.append(v)
        return out

    def _reduce(self, v: list) -> list:
        rows, piv, s = self._rows, self._pivmask, self._s
        while True:
            nz = 0
            for pl in v:
                nz |= pl
            hits = nz & piv
            if not hits:
                return v
            low = hits & -hits
            c = 0
            for j in range(s):
                if v[j] & low:
                    c |= 1 << j
            row = self._scaled(rows[low.bit_length() - 1], c)
            v = [a ^ b for a, b in zip(v, row)]

    def _insert(self, v: list) -> int | None:
        """Insert a vector; returns its new pivot column or None if dependent."""
        v = self._reduce(v)
        nz = 0
        for pl in v:
            nz |= pl
        if not nz:
            return None
        low = nz & -nz
        c = 0
        for j in range(self._s):
            if v[j] & low:
                c |= 1 << j
        if c != 1:
            v = self._scaled(v, self.field.inv(c))
        col = low.bit_length() - 1
        self._rows[col] = v
        self._pivmask |= low
        return col

    # public API ---------------------------------------------------------------------

    def add(self, p: Polynomial) -> bool:
        """Add p to the spanning set; True if the rank grew."""
        if self._insert(self.encode(p)) is None:
            return False
        self._kept.append(p)
        return True

    def contains(self, p: Polynomial) -> bool:
        v = self._reduce(self.encode(p))
        return not any(v)

    def residual(self, p: Polynomial) -> Polynomial:
        return self.decode(self._reduce(self.encode(p)))

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self._rows)

    def is_full(self) -> bool:
        return len(self._rows) == len(self.coords)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[Polynomial]:
        """The inputs that increased the rank, in insertion order."""
        return list(self._kept)

    def echelon(self) -> list[Polynomial]:
        """Reduced row-echelon basis, ordered by increasing pivot column."""
        cols = sorted(self._rows)
        reduced: dict[int, list] = {}
        for col in reversed(cols):
            v = list(self._rows[col])
            bit = 1 << col
            # clear every later pivot column
            nz = 0
            for pl in v:
                nz |= pl
            hits = nz & self._pivmask & ~((bit << 1) - 1)
            while hits:
                low = hits & -hits
                c = 0
                for j in range(self._s):
                    if v[j] & low:
                        c |= 1 << j
                r = self._scaled(reduced[low.bit_length() - 1], c)
                v = [a ^ b for a, b in zip(v, r)]
                hits ^= low
            reduced[col] = v
        return [self.decode(reduced[c]) for c in cols]

    def copy(self) -> "Subspace":
        out = Subspace.__new__(Subspace)
        out.__dict__.update(self.__dict__)
        out._rows = dict(self._rows)
        out._kept = list(self._kept)
        return out

    def __repr__(self) -> str:
        return f"Subspace(degree={self.degree}, rank={self.rank}/{self.dim})"


def _check_homogeneous(p: Polynomial, d: int) -> None:
    if not p.is_homogeneous(d):
        raise UsageError(f"polynomial is not homogeneous of degree {d}: {p}")


def span(vectors: Iterable[Polynomial], d: int, ring: RingContext | None = None) -> Subspace:
    """Echelon basis of the span of homogeneous degree-d polynomials."""
    vectors = list(vectors)
    if ring is None:
        if not vectors:
            raise UsageError("span of an empty list needs an explicit ring")
        ring = vectors[0].ring
    S = Subspace(ring, ring.monomials_of_degree(d), degree=d)
    for v in vectors:
        _check_homogeneous(v, d)
        S.add(v)
    return S


def membership(S: Subspace, p: Polynomial) -> bool:
    if S.degree is not None:
        _check_homogeneous(p, S.degree)
    return S.contains(p)


class BlockSpace:
    """A multigraded subspace: one :class:`Subspace` per multidegree.

    ``coord_seed`` shuffles the coordinate order inside every block; verdicts
    and dimensions must not depend on it.
    """

    def __init__(self, ring: RingContext, degree: int | None = None, coord_seed: int | None = None):
        self.ring = ring
        self.degree = degree
        self.coord_seed = coord_seed
        self.blocks: dict[tuple, Subspace] = {}

    def _coords(self, md: tuple) -> tuple:
        coords = self.ring.monomials_of_multidegree(md)
        if self.coord_seed is not None:
            coords = list(coords)
            random.Random(hash((self.coord_seed, md))).shuffle(coords)
        return tuple(coords)

    def block(self, md: tuple) -> Subspace:
        S = self.blocks.get(md)
        if S is None:
            S = Subspace(self.ring, self._coords(md), degree=sum(md))
            self.blocks[md] = S
        return S

    def rank_of(self, md: tuple) -> int:
        S = self.blocks.get(md)
        return S.rank if S is not None else 0

    def add(self, p: Polynomial) -> bool:
        if p.is_zero():
            return False
        md = p.multidegree()
        if md is None:
            raise UsageError("BlockSpace.add needs a multihomogeneous polynomial")
        if self.degree is not None and sum(md) != self.degree:
            raise UsageError(f"degree {sum(md)} does not match {self.degree}")
        return self.block(md).add(p)

    def contains(self, p: Polynomial) -> bool:
        for md, part in p.multihomogeneous_components().items():
            S = self.blocks.get(md)
            if S is None or not S.contains(part):
                return False
        return True

    @property
    def rank(self) -> int:
        return sum(S.rank for S in self.blocks.values())

    def mds(self) -> list[tuple]:
        return sorted(self.blocks)

    def basis(self) -> list[Polynomial]:
        out = []
        for md in sorted(self.blocks):
            out.extend(self.blocks[md].basis())
        return out

    def copy(self) -> "BlockSpace":
        out = BlockSpace(self.ring, self.degree, self.coord_seed)
        out.blocks = {md: S.copy() for md, S in self.blocks.items()}
        return out

    def to_subspace(self) -> Subspace:
        if self.degree is None:
            raise UsageError("only single-degree block spaces convert to a Subspace")
        S = Subspace(self.ring, self.ring.monomials_of_degree(self.degree), degree=self.degree)
        for p in self.basis():
            S.add(p)
        return S

    def __repr__(self) -> str:
        return f"BlockSpace(degree={self.degree}, rank={self.rank}, blocks={len(self.blocks)})"


# --- fixed subspaces ------------------------------------------------------------------


def _monomial_map(g, ring: RingContext):
    """For a diagonal/anti-diagonal g: (targets, log-scalars) on variables."""
    from .groups import action_images

    targets, logs = [], []
    log = ring.field._log
    for img in action_images(g, ring):
        (mon, c), = img.terms.items()
        targets.append(mon.index(1))
        logs.append(log[c])
    return targets, logs


def _orbit_fixed(ring: RingContext, maps: list, coords: Sequence[tuple]) -> list[Polynomial]:
    F = ring.field
    exp, n1 = F._exp, F.q - 1
    nv = ring.nvars
    seen: set = set()
    out = []
    for root in coords:
        if root in seen:
            continue
        coeff_log = {root: 0}
        queue = deque([root])
        consistent = True
        while queue:
            mon = queue.popleft()
            base = coeff_log[mon]
            for targets, logs in maps:
                new = [0] * nv
                lg = base
                for k, e in enumerate(mon):
                    if e:
                        new[targets[k]] += e
                        lg += logs[k] * e
                new = tuple(new)
                lg %= n1
                got = coeff_log.get(new)
                if got is None:
                    coeff_log[new] = lg
                    queue.append(new)
                elif got != lg:
                    consistent = False
        seen.update(coeff_log)
        if consistent:
            out.append(Polynomial(ring, {mon: exp[lg] for mon, lg in coeff_log.items()}))
    return out


def _dense_fixed(ring: RingContext, generators: Sequence, coords: Sequence[tuple]) -> list[Polynomial]:
    """Kernel of the stacked maps (g - id) restricted to span(coords)."""
    from .groups import act

    n = len(coords)
    k = len(generators)
    index = {mon: i for i, mon in enumerate(coords)}
    # column j: [ (g_1 - id) e_j | ... | (g_k - id) e_j | e_j ]; the tag sits in the high bits
    big_coords = [("img", t, i) for t in range(k) for i in range(n)] + [("tag", i) for i in range(n)]
    work = _RawEchelon(ring.field, len(big_coords))
    for j, mon in enumerate(coords):
        planes = [0] * ring.field.s
        single = ring.monomial(mon)
        for t, g in enumerate(generators):
            diff = act(g, single) + single
            for m2, c in diff.terms.items():
                i = index.get(m2)
                if i is None:
                    raise UsageError("group action does not preserve the coordinate block")
                _set(planes, t * n + i, c)
        _set(planes, k * n + j, 1)
        work.insert(planes)
    out = []
    for col in sorted(work.rows):
        if col >= k * n:
            planes = work.rows[col]
            terms = {}
            for j in range(n):
                c = _get(planes, k * n + j)
                if c:
                    terms[coords[j]] = c
            out.append(Polynomial(ring, terms))
    return out


def _set(planes: list, pos: int, c: int) -> None:
    j = 0
    while c:
        if c & 1:
            planes[j] ^= 1 << pos
        c >>= 1
        j += 1


def _get(planes: Sequence[int], pos: int) -> int:
    c = 0
    for j, pl in enumerate(planes):
        if pl >> pos & 1:
            c |= 1 << j
    return c


class _RawEchelon(Subspace):
    """Subspace over anonymous coordinates, driven with raw bit planes."""

    def __init__(self, F: FieldContext, n: int):
        self.field = F
        self._s = F.s
        self._scale = _scale_table(F)
        self._rows = {}
        self._pivmask = 0
        self._kept = []
        self.coords = tuple(range(n))

    @property
    def rows(self) -> dict:
        return self._rows

    def insert(self, planes: list) -> int | None:
        return self._insert(planes)


def fixed_basis_block(ring: RingContext, generators: Sequence, md: tuple, method: str = "auto") -> list[Polynomial]:
    """Basis of the common fixed space of ``generators`` in the multidegree-md block."""
    coords = ring.monomials_of_multidegree(md)
    if method == "auto":
        method = "orbit" if all(g.is_monomial() for g in generators) else "dense"
    if method == "orbit":
        maps = [_monomial_map(g, ring) for g in generators]
        return _orbit_fixed(ring, maps, coords)
    if method == "dense":
        return _dense_fixed(ring, generators, coords)
    raise UsageError(f"unknown fixed-space method {method!r}")


def fixed_blocks(
    ring: RingContext, generators: Sequence, d: int, method: str = "auto", coord_seed: int | None = None
) -> BlockSpace:
    from .poly import compositions

    out = BlockSpace(ring, d, coord_seed)
    for md in sorted(compositions(d, ring.m)):
        S = out.block(md)
        for p in fixed_basis_block(ring, generators, md, method):
            S.add(p)
    return out


def fixed_subspace(generators: Sequence, d: int, ring: RingContext, method: str = "auto") -> Subspace:
    """Degree-d piece of the polynomials fixed by every matrix in ``generators``."""
    return fixed_blocks(ring, generators, d, method).to_subspace()
