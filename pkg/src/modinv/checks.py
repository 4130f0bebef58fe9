"""Structural checks: free-module basis, Hilbert ideal, transfer lemmas, identities, minus type."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .engine import (
    FAIL,
    PASS,
    REPORTED,
    CheckRecord,
    GradedReport,
    InvariantRing,
    decomposable_pieces,
    generation_check,
    invariant_ring,
)
from .errors import PreconditionError
from .families import b_alpha, build_d_general, build_minus_generators, build_plus_generators
from .field import FieldContext
from .groups import build_group, is_invariant, relative_transfer
from .linalg import BlockSpace, Subspace
from .poly import Polynomial, RingContext, compositions
from .series import numerator_from_degrees, series_coefficients


def _sub(a: tuple, b: tuple) -> tuple | None:
    out = tuple(i - j for i, j in zip(a, b))
    return out if min(out) >= 0 else None


def _record(name, anchor, ok, **kw) -> CheckRecord:
    return CheckRecord(name=name, anchor=anchor, status=PASS if ok else FAIL, **kw)


# --- rank-2(q-1) free module over the product-group invariants ------------------------------


class ModuleSpan:
    """Graded pieces of sum_{f in M} R f with R = F_q[N1, N2, B_0, B_(q-1)] (m = 2)."""

    def __init__(self, ring: RingContext):
        if ring.m != 2:
            raise PreconditionError("the free-module basis is defined for m = 2")
        self.ring = ring
        q = ring.field.q
        self.q = q
        self.N1, self.N2 = ring.x(1) * ring.y(1), ring.x(2) * ring.y(2)
        self.U = ring.x(1) * ring.y(2) + ring.x(2) * ring.y(1)
        self.B = {k: bk(ring, k) for k in range(q)}
        self.basis = module_basis(ring)
        self._blocks: dict[tuple, tuple[Subspace, int]] = {}
        self._powers: dict = {}

    def _pow(self, p: Polynomial, e: int) -> Polynomial:
        key = (p, e)
        got = self._powers.get(key)
        if got is None:
            got = p ** e
            self._powers[key] = got
        return got

    def r_monomials(self, md: tuple) -> list[Polynomial]:
        """Products N1^a B_(q-1)^e N2^b B_0^c with multidegree md."""
        q1 = self.q - 1
        out = []
        lefts = [(a, e) for e in range(md[0] // q1 + 1) for a in [(md[0] - q1 * e)] if a % 2 == 0]
        rights = [(b, c) for c in range(md[1] // q1 + 1) for b in [(md[1] - q1 * c)] if b % 2 == 0]
        for (a, e), (b, c) in product(lefts, rights):
            out.append(
                self._pow(self.N1, a // 2) * self._pow(self.B[q1], e) * self._pow(self.N2, b // 2) * self._pow(self.B[0], c)
            )
        return out

    def block(self, md: tuple) -> tuple[Subspace, int]:
        """(span, number of products) in one multidegree."""
        got = self._blocks.get(md)
        if got is None:
            S = Subspace(self.ring, self.ring.monomials_of_multidegree(md), degree=sum(md))
            count = 0
            for _, f in self.basis:
                rest = _sub(md, f.multidegree())
                if rest is None:
                    continue
                for r in self.r_monomials(rest):
                    S.add(r * f)
                    count += 1
            got = (S, count)
            self._blocks[md] = got
        return got

    def contains(self, p: Polynomial) -> bool:
        return all(self.block(md)[0].contains(part) for md, part in p.multihomogeneous_components().items())


def bk(ring: RingContext, k: int) -> Polynomial:
    """B_k = x1^k x2^(q-1-k) + y1^k y2^(q-1-k) for m = 2."""
    return b_alpha(ring, (k, ring.field.q - 1 - k))


def module_basis(ring: RingContext) -> list[tuple[str, Polynomial]]:
    q = ring.field.q
    U = ring.x(1) * ring.y(2) + ring.x(2) * ring.y(1)
    out = [(f"U12^{i}", U ** i) for i in range(q // 2 + 1)]
    out += [(f"B{k}", bk(ring, k)) for k in range(1, q - 1)]
    out += [(f"B{i}*B{q - 1 - i}", bk(ring, i) * bk(ring, q - 1 - i)) for i in range(1, q - 1) if i < q - 1 - i]
    return out


def free_module_check(F: FieldContext, D: int, inv: InvariantRing | None = None) -> GradedReport:
    ring = RingContext(F, 2)
    q = F.q
    table = build_group(F, "plus")
    inv = inv or invariant_ring(ring, table)
    ms = ModuleSpan(ring)
    report = GradedReport({"q": q, "m": 2, "group": "plus", "cutoff": D})
    degs = sorted(f.degree() for _, f in ms.basis)
    bad = [label for label, f in ms.basis if not is_invariant(f, table)]
    report.checks.append(
        _record(
            "free_module.rank",
            "module basis M has 2(q-1) elements",
            len(ms.basis) == 2 * (q - 1) and not bad,
            details={"size": len(ms.basis), "expected": 2 * (q - 1), "degrees": degs, "non_invariant": bad},
        )
    )
    series = series_coefficients(numerator_from_degrees(degs), [2, 2, q - 1, q - 1], D + 1)
    span_rows, series_rows, span_ok, series_ok, free_ok = [], [], True, True, True
    for d in range(D + 1):
        dim_inv, dim_span, products = 0, 0, 0
        for md in compositions(d, 2):
            S, count = ms.block(md)
            dim_inv += inv.block(md).rank
            dim_span += S.rank
            products += count
        span_ok &= dim_span == dim_inv
        series_ok &= series[d] == dim_inv
        free_ok &= products == dim_span
        span_rows.append({"d": d, "dim_invariants": dim_inv, "dim_span": dim_span, "products": products})
        series_rows.append({"d": d, "dim_invariants": dim_inv, "series_coefficient": series[d]})
    report.checks.append(
        _record("free_module.span", "sum of R f over f in M equals the plus-type invariants", span_ok,
                degrees=span_rows, details={"products_independent": free_ok})
    )
    observed = [r["dim_invariants"] for r in series_rows]
    for k in (2, 2, q - 1, q - 1):
        observed = [observed[i] - (observed[i - k] if i >= k else 0) for i in range(len(observed))]
    report.checks.append(
        _record(
            "free_module.series",
            "Hilbert series sum t^deg f / ((1-t^2)^2 (1-t^(q-1))^2)",
            series_ok,
            degrees=series_rows,
            details={"observed_numerator_through_cutoff": {str(i): c for i, c in enumerate(observed) if c}},
        )
    )
    if q == 4:
        report.checks.append(cube_witness(ring))
    return report


def cube_witness(ring: RingContext) -> CheckRecord:
    """U12^3 = B0 B3 + B1 B2 over F_4, expanded on both sides."""
    U = ring.x(1) * ring.y(2) + ring.x(2) * ring.y(1)
    lhs = U ** 3
    rhs = bk(ring, 0) * bk(ring, 3) + bk(ring, 1) * bk(ring, 2)
    ms = ModuleSpan(ring)
    return CheckRecord(
        name="free_module.witness",
        anchor="U12^3 = B0*B3 + B1*B2",
        status=PASS if lhs == rhs and ms.contains(lhs) else FAIL,
        witnesses=[lhs],
        details={"identity": "U12^3 = B0*B3 + B1*B2", "lhs": str(lhs), "rhs": str(rhs), "in_module_span": ms.contains(lhs)},
    )


# --- Hilbert ideal ------------------------------------------------------------------------------


def _ideal_pieces(ring: RingContext, D: int, gens_by_degree) -> list[BlockSpace]:
    """I_d = sum_k var_k I_(d-1) + span(gens of degree d), block by block."""
    nvars = 2 * ring.m
    units = [tuple(1 if i == k else 0 for i in range(nvars)) for k in range(nvars)]
    levels = [BlockSpace(ring, 0)]
    for d in range(1, D + 1):
        Id = BlockSpace(ring, d)
        for p in levels[d - 1].basis():
            for u in units:
                r = p.mul_monomial(u)
                md = r.multidegree()
                S = Id.block(md)
                if S.rank < S.dim:
                    S.add(r)
        for g in gens_by_degree(d):
            md = g.multidegree()
            if md is None:
                for part in g.multihomogeneous_components().values():
                    Id.add(part)
            else:
                Id.add(g)
        levels.append(Id)
    return levels


def hilbert_ideal_check(F: FieldContext, m: int, D: int, inv: InvariantRing | None = None) -> GradedReport:
    ring = RingContext(F, m)
    q = F.q
    table = build_group(F, "plus")
    inv = inv or invariant_ring(ring, table)
    gs = build_plus_generators(ring)
    gens = [g.poly for g in gs.distinct(("N", "U", "B"))]
    for g in gens:
        if not is_invariant(g, table):
            raise PreconditionError(f"{g} is not invariant")
    by_deg: dict[int, list] = {}
    for g in gens:
        by_deg.setdefault(g.degree(), []).append(g)
    small = _ideal_pieces(ring, D, lambda d: by_deg.get(d, []))
    full = _ideal_pieces(ring, D, lambda d: inv.basis(d) if d >= 1 else [])
    rows, ok, witnesses = [], True, []
    for d in range(D + 1):
        a, b = small[d].rank, full[d].rank
        contained = all(full[d].contains(p) for p in small[d].basis())
        if a != b or not contained:
            ok = False
            if not witnesses:
                witnesses += [h for h in inv.basis(d) if not small[d].contains(h)][:1]
        rows.append({"d": d, "dim_generated": a, "dim_hilbert_ideal": b})
    max_deg = max(g.degree() for g in gens)
    report = GradedReport({"q": q, "m": m, "group": "plus", "cutoff": D})
    report.checks.append(
        _record("hilbert_ideal", "Hilbert ideal generated by N, U, B", ok, degrees=rows, witnesses=witnesses,
                details={"generator_degrees": sorted(g.degree() for g in gens)})
    )
    report.checks.append(
        _record("hilbert_ideal.degree_bound", "Hilbert ideal generated in degrees <= q-1", max_deg == q - 1,
                details={"max_generator_degree": max_deg, "bound": q - 1})
    )
    return report


# --- transfer lemmas in the Sylow invariant ring ---------------------------------------------


@dataclass
class TransferBounds:
    """Instance bounds: |alpha| <= max_alpha per exponent vector, e <= max_e, total degree <= max_degree."""

    max_alpha: int
    max_e: int = 4
    max_degree: int | None = None
    random_elements: int = 40
    seed: int = 0

    @classmethod
    def default(cls, q: int, m: int) -> "TransferBounds":
        return cls(max_alpha=2 * (q - 1))


class SylowIdeal:
    """J: the ideal generated by N, B, D inside the swap-invariant ring, block by block."""

    def __init__(self, ring: RingContext):
        self.ring = ring
        self.sylow = InvariantRing(ring, build_group(ring.field, "sylow"))
        gs = build_plus_generators(ring)
        self.S = [(g.poly, g.poly.multidegree()) for g in gs.distinct(("N", "B", "D"))]
        self._blocks: dict[tuple, Subspace] = {}

    def block(self, md: tuple) -> Subspace:
        got = self._blocks.get(md)
        if got is None:
            target = self.sylow.block(md)
            got = Subspace(self.ring, target.coords, degree=sum(md))
            for s, smd in self.S:
                if got.rank >= target.rank:
                    break
                rest = _sub(md, smd)
                if rest is None:
                    continue
                for h in self.sylow.block(rest).basis():
                    if got.rank >= target.rank:
                        break
                    got.add(s * h)
            self._blocks[md] = got
        return got

    def contains(self, p: Polynomial) -> bool:
        return all(self.block(md).contains(part) for md, part in p.multihomogeneous_components().items())

    def random_element(self, md: tuple, rng: random.Random) -> Polynomial:
        F = self.ring.field
        out = self.ring.zero()
        for b in self.block(md).basis():
            out = out + b.scale(rng.randrange(F.q))
        return out


def _vectors(m: int, lo: int, hi: int, positive: bool = False):
    for n in range(lo, hi + 1):
        for v in compositions(n, m):
            if positive and min(v) < 1:
                continue
            yield v


def _linear_power(ring: RingContext, alpha) -> Polynomial:
    out = ring.one()
    for i, a in enumerate(alpha, start=1):
        if a:
            out = out * (ring.x(i) + ring.y(i)) ** a
    return out


def transfer_membership_suite(F: FieldContext, m: int, bounds: TransferBounds | None = None) -> GradedReport:
    ring = RingContext(F, m)
    q = F.q
    bounds = bounds or TransferBounds.default(q, m)
    cap = bounds.max_degree if bounds.max_degree is not None else 10 ** 9
    J = SylowIdeal(ring)
    report = GradedReport({"q": q, "m": m, "group": "sylow", "bounds": vars(bounds)})
    zero = (0,) * m

    def run(name, anchor, instances):
        done, skipped, witnesses = 0, 0, []
        for label, f, expect in instances:
            if f.degree() > cap:
                skipped += 1
                continue
            done += 1
            ok = J.contains(f) and (expect is None or f == expect)
            if not ok and len(witnesses) < 3:
                witnesses.append(f)
        report.checks.append(
            _record(name, anchor, not witnesses, witnesses=witnesses, details={"instances": done, "skipped_over_degree_cap": skipped})
        )

    def b_instances():
        for a in _vectors(m, 1, bounds.max_alpha):
            B = b_alpha(ring, a)
            expect = B if sum(a) % (q - 1) == 0 else ring.zero()
            yield a, relative_transfer(B), expect

    def l_instances():
        for a in _vectors(m, 1, bounds.max_alpha):
            yield a, relative_transfer(_linear_power(ring, a)), None

    def lb_instances():
        for a in _vectors(m, 1, bounds.max_alpha):
            for b in _vectors(m, 1, bounds.max_alpha):
                if sum(a) + sum(b) > cap:
                    continue
                yield (a, b), relative_transfer(_linear_power(ring, a) * b_alpha(ring, b)), None

    def d_instances():
        subsets = [S for S in _vectors(m, 1, m) if max(S) == 1]
        for I, Jset in product(subsets, subsets):
            Iix = [k + 1 for k in range(m) if I[k]]
            Jix = [k + 1 for k in range(m) if Jset[k]]
            for a in _vectors(len(Iix), len(Iix), bounds.max_alpha, positive=True):
                for b in _vectors(len(Jix), len(Jix), bounds.max_alpha, positive=True):
                    if sum(a) + sum(b) > cap:
                        continue
                    alpha, beta = [0] * m, [0] * m
                    for k, e in zip(Iix, a):
                        alpha[k - 1] = e
                    for k, e in zip(Jix, b):
                        beta[k - 1] = e
                    f = build_d_general(ring, Iix, Jix, alpha, beta)
                    yield (Iix, Jix, a, b), relative_transfer(f), None

    def power_instances():
        for a in _vectors(m, 1, bounds.max_alpha):
            B = b_alpha(ring, a)
            for e in range(1, bounds.max_e + 1):
                if e * sum(a) > cap:
                    continue
                xa = ring.monomial(ring.xy_monomial(tuple(e * t for t in a), zero))
                ya = ring.monomial(ring.xy_monomial(zero, tuple(e * t for t in a)))
                yield (a, e), B ** e + xa + ya, None

    run("transfer.B", "relative transfer of B_alpha lies in J", b_instances())
    run("transfer.L", "relative transfer of L^alpha lies in J", l_instances())
    run("transfer.LB", "relative transfer of L^alpha B_beta lies in J", lb_instances())
    run("transfer.d", "relative transfer of d_IJ(alpha, beta) lies in J", d_instances())
    run("transfer.power", "B_alpha^e = (x^alpha)^e + (y^alpha)^e modulo J", power_instances())

    rng = random.Random(bounds.seed)
    mds = [md for md in _vectors(m, 2, min(bounds.max_alpha, cap))]
    bad, tried = [], 0
    for _ in range(bounds.random_elements):
        md = rng.choice(mds)
        f = J.random_element(md, rng)
        tried += 1
        r = relative_transfer(f)
        if not J.contains(r):
            bad.append(f)
    report.checks.append(
        _record("transfer.ideal_stable", "relative transfer maps J into J", not bad, witnesses=bad[:3],
                details={"random_elements": tried, "seed": bounds.seed})
    )
    return report


# --- identities for m = 2 ---------------------------------------------------------------------


def identity_suite(F: FieldContext) -> GradedReport:
    ring = RingContext(F, 2)
    q = F.q
    ms = ModuleSpan(ring)
    N1, N2, U = ms.N1, ms.N2, ms.U
    report = GradedReport({"q": q, "m": 2, "group": "plus"})

    bad = []
    for k in range(1, q - 1):
        lhs = bk(ring, k) * U
        rhs = N2 * bk(ring, k + 1) + N1 * bk(ring, k - 1)
        if lhs != rhs:
            bad.append(lhs + rhs)
    report.checks.append(
        _record("identity.BU", "B_k U12 = N2 B_(k+1) + N1 B_(k-1)", not bad, witnesses=bad, details={"k_range": [1, q - 2]})
    )

    top = U ** (q // 2 + 1)
    md = top.multidegree()
    rprime = Subspace(ring, ring.monomials_of_multidegree(md), degree=sum(md))
    for i in range(q // 2 + 1):
        for a in range(md[0] // 2 + 1):
            for b in range(md[1] // 2 + 1):
                if (2 * a + i, 2 * b + i) == md:
                    rprime.add(N1 ** a * N2 ** b * U ** i)
    in_rprime = rprime.contains(top)
    report.checks.append(
        CheckRecord(
            name="identity.U_power_Rprime",
            anchor="U12^(q/2+1) in sum_(i<=q/2) F_q[N1,N2] U12^i",
            status=REPORTED,
            witnesses=[top],
            details={"computed_membership": in_rprime, "rprime_rank": rprime.rank},
        )
    )
    report.checks.append(
        _record("identity.U_power_R", "U12^(q/2+1) in sum_(f in M) R f", ms.contains(top), witnesses=[] if ms.contains(top) else [top])
    )

    bad = []
    for n in range(1, q + 3):
        v = ring.y(1) ** n * ring.x(2) ** n + ring.x(1) ** n * ring.y(2) ** n
        if not ms.contains(v):
            bad.append(v)
    report.checks.append(
        _record("identity.v_n", "v_n = y1^n x2^n + x1^n y2^n lies in sum_(f in M) R f", not bad, witnesses=bad,
                details={"n_range": [1, q + 2]})
    )

    bad, pairs = [], 0
    for k in range(1, q - 1):
        for i in range(k, q - 1):
            pairs += 1
            p = bk(ring, k) * bk(ring, i)
            if not ms.contains(p):
                bad.append(p)
    report.checks.append(
        _record("identity.BB", "B_k B_i lies in sum_(f in M) R f", not bad, witnesses=bad, details={"pairs": pairs})
    )
    return report


# --- univariate and minus type -------------------------------------------------------------------


def jacobian(p: Polynomial, r: Polynomial) -> Polynomial:
    """det [[dp/dx, dp/dy], [dr/dx, dr/dy]] for m = 1 (signs vanish in characteristic 2)."""
    return p.derivative(0) * r.derivative(1) + p.derivative(1) * r.derivative(0)


def _series_record(name, anchor, inv: InvariantRing, denoms, D) -> CheckRecord:
    series = series_coefficients([1], denoms, D + 1)
    rows = [{"d": d, "dim_invariants": inv.dim(d), "series_coefficient": series[d]} for d in range(D + 1)]
    ok = all(r["dim_invariants"] == r["series_coefficient"] for r in rows)
    return _record(name, anchor, ok, degrees=rows)


def univariate_reports(F: FieldContext, D: int = 20, minus_cutoff: int | None = None, include_m2: bool = True) -> GradedReport:
    q = F.q
    ring = RingContext(F, 1)
    plus, minus = build_group(F, "plus"), build_group(F, "minus")
    inv_plus, inv_minus = invariant_ring(ring, plus), invariant_ring(ring, minus)
    report = GradedReport({"q": q, "m": 1, "cutoff": D})
    report.checks.append(_series_record("plus.series", "plus-type m=1 ring is F_q[xy, x^(q-1)+y^(q-1)]", inv_plus, [2, q - 1], D))
    report.checks.append(_series_record("minus.series", "minus-type m=1 series 1/((1-t^2)(1-t^(q+1)))", inv_minus, [2, q + 1], D))

    gs = build_minus_generators(ring, minus)
    E, Q = gs.family("E")[0].poly, gs.family("Q")[0].poly
    u = gs.extras["u"]
    report.checks.append(
        _record("minus.Q", "quadratic minus invariant Q = x^2 + u xy + v y^2 with u != 0", u != 0 and is_invariant(Q, minus),
                details={"Q": str(Q), "u": u, "v": gs.extras["v"]})
    )
    transfer = gs.extras["transfer_x2"]
    report.checks.append(
        CheckRecord(
            name="minus.transfer_x2",
            anchor="full transfer of x^2 over the minus group",
            status=REPORTED,
            details={"value": str(transfer), "vanishes": transfer.is_zero()},
        )
    )
    J = jacobian(E, Q)
    report.checks.append(
        _record("minus.jacobian", "Jacobian of (E, Q) equals u E != 0", J == E.scale(u) and not J.is_zero(),
                witnesses=[] if J == E.scale(u) else [J], details={"jacobian": str(J)})
    )
    gen = generation_check([E, Q], minus, D, inv_minus).checks[0]
    gen.name = "minus.generation"
    gen.anchor = "minus-type m=1 ring is F_q[E, Q]"
    report.checks.append(gen)
    if include_m2:
        report.checks.append(minus_m2_count(F, minus_cutoff))
    return report


def minus_m2_count(F: FieldContext, D: int | None = None) -> CheckRecord:
    q = F.q
    D = D if D is not None else q + 3
    ring = RingContext(F, 2)
    inv = invariant_ring(ring, build_group(F, "minus"))
    decs, reps = decomposable_pieces(inv, D)
    rows = []
    for d in range(D + 1):
        dim_inv = inv.dim(d)
        rows.append(
            {"d": d, "dim_invariants": dim_inv, "dim_decomposables": decs[d].rank, "minimal_count": len(reps[d])}
        )
    total = sum(r["minimal_count"] for r in rows)
    return CheckRecord(
        name="minus.m2_minimal_count",
        anchor="minus-type m=2 conjecturally generated by q+5 invariants",
        status=REPORTED,
        degrees=rows,
        details={"computed": total, "conjectured": q + 5, "agrees": total == q + 5, "cutoff": D},
    )
