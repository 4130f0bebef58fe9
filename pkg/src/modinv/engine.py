"""Graded verification core: invariant pieces, subalgebra closure, minimality.

Every computation is done degree by degree and, inside a degree, block by
block over multidegrees (see :class:`modinv.linalg.BlockSpace`). A closure or
decomposable block stops receiving products once its rank reaches the rank of
the invariant block it lives in; that is sound because all of them are
subspaces of the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PreconditionError
from .families import GeneratorSet
from .groups import GroupTable, is_invariant
from .linalg import BlockSpace, Subspace, fixed_basis_block, fixed_blocks
from .poly import Polynomial, RingContext

PASS, FAIL, REPORTED = "pass", "fail", "reported"


@dataclass
class CheckRecord:
    name: str
    anchor: str
    status: str
    degrees: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "degrees": self.degrees,
            "witnesses": [str(w) for w in self.witnesses],
            "details": self.details,
        }


@dataclass
class GradedReport:
    params: dict
    checks: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def check(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "GradedReport") -> "GradedReport":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        return {"params": self.params, "checks": [c.to_dict() for c in self.checks]}


class InvariantRing:
    """Lazily computed graded pieces of GF(q)[mV]^G for a group table."""

    def __init__(
        self,
        ring: RingContext,
        table: GroupTable,
        method: str = "auto",
        coord_seed: int | None = None,
    ):
        if table.field != ring.field:
            raise PreconditionError("group table and ring use different fields")
        self.ring = ring
        self.table = table
        self.method = method
        self.coord_seed = coord_seed
        self._pieces: dict[int, BlockSpace] = {}
        self._partial: dict[int, BlockSpace] = {}

    def block(self, md: tuple) -> Subspace:
        """The invariant block of one multidegree, computed on its own if needed."""
        d = sum(md)
        if d in self._pieces:
            return self._pieces[d].block(md)
        part = self._partial.setdefault(d, BlockSpace(self.ring, d, self.coord_seed))
        if md not in part.blocks:
            S = part.block(md)
            for p in fixed_basis_block(self.ring, self.table.generators, md, self.method):
                S.add(p)
        return part.block(md)

    def piece(self, d: int) -> BlockSpace:
        got = self._pieces.get(d)
        if got is None:
            got = fixed_blocks(self.ring, self.table.generators, d, self.method, self.coord_seed)
            self._pieces[d] = got
        return got

    def dim(self, d: int) -> int:
        return self.piece(d).rank

    def basis(self, d: int) -> list[Polynomial]:
        return self.piece(d).basis()


_RINGS: dict = {}


def invariant_ring(ring: RingContext, table: GroupTable) -> InvariantRing:
    """Process-wide memo of :class:`InvariantRing` objects."""
    key = (ring.field, ring.m, table.kind)
    inv = _RINGS.get(key)
    if inv is None:
        inv = InvariantRing(ring, table)
        _RINGS[key] = inv
    return inv


def _as_polys(gens) -> list[Polynomial]:
    if isinstance(gens, GeneratorSet):
        return gens.polys()
    out, seen = [], set()
    for g in gens:
        p = getattr(g, "poly", g)
        if p not in seen and not p.is_zero():
            seen.add(p)
            out.append(p)
    return out


def _add_md(a: tuple, b: tuple) -> tuple:
    return tuple([i + j for i, j in zip(a, b)])


def subalgebra_closure(
    gens: Sequence[Polynomial],
    D: int,
    inv: InvariantRing | None = None,
    ring: RingContext | None = None,
) -> list[BlockSpace]:
    """A_0 = constants, A_d = span(g * A_(d - deg g)) over the generators.

    With ``inv`` given, blocks already as large as the invariant block are
    skipped (the generators are then required to be invariant).
    """
    ring = ring or (inv.ring if inv else gens[0].ring)
    by_degree: dict[int, list] = {}
    for g in gens:
        if not g.is_homogeneous() or g.degree() < 1:
            raise PreconditionError(f"generator {g} must be homogeneous of positive degree")
        by_degree.setdefault(g.degree(), []).append((g, g.multidegree()))
    A0 = BlockSpace(ring, 0, inv.coord_seed if inv else None)
    A0.add(ring.one())
    levels = [A0]
    for d in range(1, D + 1):
        Ad = BlockSpace(ring, d, inv.coord_seed if inv else None)
        target = inv.piece(d) if inv else None
        for e in sorted(by_degree):
            if e > d:
                break
            lower = levels[d - e].basis()
            for g, gmd in by_degree[e]:
                for a in lower:
                    md = _add_md(gmd, a.multidegree())
                    if target is not None and Ad.rank_of(md) >= target.rank_of(md):
                        continue
                    Ad.add(g * a)
        levels.append(Ad)
    return levels


def _check_invariant(gens: Sequence[Polynomial], table: GroupTable) -> None:
    for g in gens:
        if not is_invariant(g, table):
            raise PreconditionError(f"generator {g} is not invariant under the {table.kind} group")


def generation_check(gens, table: GroupTable, D: int, inv: InvariantRing | None = None) -> GradedReport:
    """Compare the subalgebra generated by ``gens`` with the invariant ring up to degree D."""
    polys = _as_polys(gens)
    if not polys:
        raise PreconditionError("empty generator list")
    ring = polys[0].ring
    _check_invariant(polys, table)
    inv = inv or invariant_ring(ring, table)
    levels = subalgebra_closure(polys, D, inv)
    degrees, witnesses, first_fail = [], [], None
    for d in range(D + 1):
        dim_inv, dim_cl = inv.dim(d), levels[d].rank
        degrees.append({"d": d, "dim_invariants": dim_inv, "dim_closure": dim_cl})
        if dim_cl != dim_inv and first_fail is None:
            first_fail = d
            for h in inv.basis(d):
                if not levels[d].contains(h):
                    witnesses.append(h)
                    break
    rec = CheckRecord(
        name="generation",
        anchor=f"{table.kind}-type invariants generated by the listed families",
        status=PASS if first_fail is None else FAIL,
        degrees=degrees,
        witnesses=witnesses,
        details={"cutoff": D, "generators": len(polys), "first_failing_degree": first_fail},
    )
    params = {"q": ring.field.q, "m": ring.m, "group": table.kind, "cutoff": D}
    return GradedReport(params, [rec])


def decomposable_pieces(inv: InvariantRing, D: int) -> tuple[list[BlockSpace], list[list[Polynomial]]]:
    """Decomposables Dec_d and representatives of Inv_d / Dec_d for d <= D.

    Dec_d is spanned by rep * h with rep a representative in degree e < d and
    h an invariant basis element of degree d - e; this equals the span of all
    products Inv_e * Inv_(d-e) (induct on e, splitting Inv_e = reps + Dec_e).
    """
    ring = inv.ring
    decs: list[BlockSpace] = []
    reps: list[list[Polynomial]] = []
    for d in range(D + 1):
        Dec = BlockSpace(ring, d, inv.coord_seed)
        target = inv.piece(d)
        if d >= 2:
            for e in range(1, d):
                lower = [(h, h.multidegree()) for h in inv.basis(d - e)]
                for r in reps[e]:
                    rmd = r.multidegree()
                    for h, hmd in lower:
                        md = _add_md(rmd, hmd)
                        if Dec.rank_of(md) >= target.rank_of(md):
                            continue
                        Dec.add(r * h)
        new_reps = []
        if d >= 1:
            ext = Dec.copy()
            for h in inv.basis(d):
                if ext.add(h):
                    new_reps.append(h)
        decs.append(Dec)
        reps.append(new_reps)
    return decs, reps


def expected_noether_number(q: int, m: int, kind: str) -> int | None:
    return max(q - 1, m) if kind == "plus" else None


def minimality_report(
    gens,
    table: GroupTable,
    D: int,
    listed: Iterable | None = None,
    inv: InvariantRing | None = None,
    coord_seed: int | None = None,
    expected_total: int | None = None,
) -> GradedReport:
    """Minimal-generator counts per degree, indecomposability of ``listed``, Noether number.

    ``listed`` defaults to ``gens.minimal()`` for a GeneratorSet. Runs the
    generation check first; minimality is only meaningful once it passes.
    """
    polys = _as_polys(gens)
    ring = polys[0].ring if polys else None
    if listed is None and isinstance(gens, GeneratorSet):
        listed = gens.minimal()
    listed = _as_polys(listed or [])
    if ring is None:
        ring = listed[0].ring
    if inv is None:
        inv = InvariantRing(ring, table, coord_seed=coord_seed) if coord_seed is not None else invariant_ring(ring, table)
    report = GradedReport({"q": ring.field.q, "m": ring.m, "group": table.kind, "cutoff": D})
    if polys:
        report.extend(generation_check(polys, table, D, inv))
    decs, _ = decomposable_pieces(inv, D)
    by_deg: dict[int, list] = {}
    for p in listed:
        by_deg.setdefault(p.degree(), []).append(p)
    degrees, witnesses = [], []
    ok = True
    for d in range(D + 1):
        dim_inv = inv.dim(d)
        dim_dec = decs[d].rank if d >= 1 else 0
        count = dim_inv - dim_dec if d >= 1 else 0
        mine = by_deg.get(d, [])
        ext = decs[d].copy()
        indep = 0
        for p in mine:
            if decs[d].contains(p):
                witnesses.append(p)
                ok = False
            if ext.add(p):
                indep += 1
        spans = ext.rank == dim_inv
        if d >= 1 and (indep != len(mine) or len(mine) != count or not spans):
            ok = False
        degrees.append(
            {
                "d": d,
                "dim_invariants": dim_inv,
                "dim_decomposables": dim_dec,
                "minimal_count": count,
                "listed_count": len(mine),
            }
        )
    total = sum(r["minimal_count"] for r in degrees)
    if any(p.degree() > D for p in listed):
        ok = False
    if expected_total is not None and total != expected_total:
        ok = False
    report.checks.append(
        CheckRecord(
            name="minimality",
            anchor="listed families form a minimal generating set",
            status=PASS if ok and listed else (REPORTED if not listed else FAIL),
            degrees=degrees,
            witnesses=witnesses,
            details={"total_minimal": total, "listed_total": len(listed), "expected_total": expected_total},
        )
    )
    report.checks.append(noether_record(degrees, D, ring.field.q, ring.m, table.kind))
    return report


def noether_record(degrees: list[dict], D: int, q: int, m: int, kind: str) -> CheckRecord:
    """Largest degree with a minimal generator, qualified by the cutoff.

    The closed form is asserted only when D reaches it: the count must be
    positive there and zero on (expected, D]. Below that the record is
    ``reported``.
    """
    counts = {r["d"]: r["minimal_count"] for r in degrees}
    positive = [d for d, c in counts.items() if c > 0]
    beta = max(positive) if positive else 0
    exact = D >= beta + 1
    expected = expected_noether_number(q, m, kind)
    if expected is None or D < expected:
        status = REPORTED
    else:
        ok = counts.get(expected, 0) > 0 and all(counts.get(d, 0) == 0 for d in range(expected + 1, D + 1))
        status = PASS if ok else FAIL
    return CheckRecord(
        name="noether_number",
        anchor="Noether number max{q-1, m}" if kind == "plus" else "Noether number (no closed form claimed)",
        status=status,
        details={
            "noether_number": beta,
            "expected": expected,
            "qualifier": f"verified up to cutoff D={D}" if exact else f"cutoff-bounded: D={D} <= {beta}",
            "exact_within_cutoff": exact,
        },
    )


def default_cutoff(q: int, m: int) -> int:
    return max(2 * (q - 1) + 2, 2 * m)
