from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modinv.errors import IntegrityError, PreconditionError, UsageError
from modinv.families import b_alpha
from modinv.field import make_field
from modinv.groups import (
    Matrix2,
    act,
    build_group,
    expected_order,
    full_transfer,
    identity,
    is_invariant,
    is_orthogonal,
    relative_transfer,
    swap,
    torus,
)
from modinv.poly import RingContext, compositions

from oracles import gf_mul


def oracle_group(F, kind):
    """All invertible T with T O T^t - O alternate, using only shift-and-add products."""
    mod, s = F.modulus, F.s
    mul = lambda a, b: gf_mul(a, b, mod, s)  # noqa: E731
    O = (0, 1, 0, 0) if kind == "plus" else (F.w, 1, 0, F.w)
    out = set()
    for a, b, c, d in product(range(F.q), repeat=4):
        if mul(a, d) ^ mul(b, c) == 0:
            continue
        # P = T O T^t
        t0 = (mul(a, O[0]) ^ mul(b, O[2]), mul(a, O[1]) ^ mul(b, O[3]))
        t1 = (mul(c, O[0]) ^ mul(d, O[2]), mul(c, O[1]) ^ mul(d, O[3]))
        P = (mul(t0[0], a) ^ mul(t0[1], b), mul(t0[0], c) ^ mul(t0[1], d),
             mul(t1[0], a) ^ mul(t1[1], b), mul(t1[0], c) ^ mul(t1[1], d))
        diff = [x ^ y for x, y in zip(P, O)]
        if diff[0] == 0 and diff[3] == 0 and diff[1] == diff[2]:
            out.add((a, b, c, d))
    return out


@pytest.mark.parametrize("s,kind,order", [(2, "plus", 6), (2, "minus", 10), (3, "plus", 14), (3, "minus", 18)])
def test_group_orders_match_exhaustive_oracle(s, kind, order, tables):
    T = tables(s, kind)
    assert T.order == order == expected_order(2 ** s, kind) == T.brute_force_count
    assert {g.entries() for g in T.elements} == oracle_group(T.field, kind)


def test_sixteen(tables):
    assert tables(4, "plus").order == 30
    assert tables(4, "minus").order == 34


def test_sylow_has_order_two(tables):
    T = tables(2, "sylow")
    assert T.order == 2 and set(T.elements) == {identity(T.field), swap(T.field)}


def test_alternate_modulus_groups():
    F = make_field(3, [3, 2, 0])
    assert build_group(F, "plus").order == 14
    assert build_group(F, "minus").order == 18


def test_unknown_kind(F4):
    with pytest.raises(UsageError):
        build_group(F4, "spin")


def test_is_orthogonal_examples(F4):
    assert is_orthogonal(swap(F4), "plus")
    assert is_orthogonal(identity(F4), "plus") and is_orthogonal(identity(F4), "minus")
    g = F4.primitive
    assert not is_orthogonal(Matrix2(g, 0, 0, g, F4), "plus")
    with pytest.raises(UsageError):
        is_orthogonal(Matrix2(1, 1, 1, 1, F4), "plus")


def test_matrix_inverse(F8):
    rng = random.Random(3)
    for _ in range(50):
        a, b, c, d = (rng.randrange(8) for _ in range(4))
        M = Matrix2(a, b, c, d, F8)
        if M.det():
            assert M @ M.inverse() == identity(F8)


def test_swap_action(F4, F8):
    for F in (F4, F8):
        R = RingContext(F, 2)
        q = F.q
        for k in range(q):
            mon = R.monomial(R.xy_monomial((k, q - 1 - k), (0, 0)))
            assert act(swap(F), mon) == R.monomial(R.xy_monomial((0, 0), (k, q - 1 - k)))


def test_torus_action_on_variables(F8):
    R = RingContext(F8, 1)
    a = F8.primitive
    assert act(torus(F8, a), R.x(1)) == R.x(1).scale(F8.inv(a))
    assert act(torus(F8, a), R.y(1)) == R.y(1).scale(a)


def test_torus_fixes_b_alpha_iff_divisible(F4):
    R = RingContext(F4, 2)
    t = torus(F4, F4.primitive)
    for n in range(1, 7):
        for alpha in compositions(n, 2):
            B = b_alpha(R, alpha)
            assert (act(t, B) == B) == (n % 3 == 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 9), st.integers(0, 2 ** 30))
def test_action_axioms(idx, seed):
    F = make_field(2)
    T = build_group(F, "minus")
    R = RingContext(F, 2)
    rng = random.Random(seed)
    p = R.zero()
    for _ in range(4):
        mon = tuple(rng.randrange(3) for _ in range(4))
        p = p + R.monomial(mon, rng.randrange(1, 4))
    g = T.elements[idx % T.order]
    h = T.elements[(idx * 7 + 3) % T.order]
    assert act(g, act(g.inverse(), p)) == p
    assert act(g, act(h, p)) == act(g @ h, p)


def test_relative_transfer_rules(F4):
    R = RingContext(F4, 2)
    for n in range(1, 7):
        for alpha in compositions(n, 2):
            B = b_alpha(R, alpha)
            assert relative_transfer(B) == (B if n % 3 == 0 else R.zero())
    N1 = R.x(1) * R.y(1)
    assert relative_transfer(N1) == N1
    with pytest.raises(PreconditionError):
        relative_transfer(R.x(1))


def test_relative_transfer_of_mixed_pairs(F4):
    """x_I y_J + y_I x_J is kept iff (q-1) divides |J| - |I|."""
    R = RingContext(F4, 4)
    for I, J in [((1,), (2,)), ((1,), (2, 3, 4)), ((1, 2), (3,)), ((1,), (2, 3))]:
        a = [1 if k + 1 in I else 0 for k in range(4)]
        b = [1 if k + 1 in J else 0 for k in range(4)]
        f = R.monomial(R.xy_monomial(a, b)) + R.monomial(R.xy_monomial(b, a))
        keep = (len(J) - len(I)) % 3 == 0
        assert relative_transfer(f) == (f if keep else R.zero())


def test_full_transfer_trivial_cases(tables):
    T = tables(2, "minus")
    R = RingContext(T.field, 1)
    assert full_transfer(R.zero(), T).is_zero()
    assert full_transfer(R.const(3), T).is_zero()


@pytest.mark.parametrize("s", [2, 3, 4])
def test_full_transfer_of_square_vanishes(s, tables):
    # oracle: (a x + b y)^2 = a^2 x^2 + b^2 y^2 in characteristic 2, so the
    # transfer is (sum a)^2 x^2 + (sum b)^2 y^2 with (a, b) the first row of g^-1
    T = tables(s, "minus")
    F = T.field
    R = RingContext(F, 1)
    sa = sb = 0
    for g in T.elements:
        h = g.inverse()
        sa ^= h.a
        sb ^= h.b
    expected = R.x(1).scale(F.mul(sa, sa)) * R.x(1) + R.y(1).scale(F.mul(sb, sb)) * R.y(1)
    got = full_transfer(R.x(1) * R.x(1), T)
    assert got == expected
    assert got.is_zero()


def test_is_invariant_examples(tables):
    T = tables(2, "plus")
    R = RingContext(T.field, 2)
    U = R.x(1) * R.y(2) + R.x(2) * R.y(1)
    assert is_invariant(U, T)
    assert not is_invariant(R.x(1), T)
    M = tables(2, "minus")
    R1 = RingContext(M.field, 1)
    E = R1.x(1) * R1.y(1) ** 4 + R1.x(1) ** 4 * R1.y(1)
    assert is_invariant(E, M)


def test_generators_generate(tables):
    for s in (2, 3):
        for kind in ("plus", "minus", "sylow"):
            T = tables(s, kind)
            closure = {identity(T.field)}
            frontier = list(closure)
            while frontier:
                new = []
                for h in frontier:
                    for g in T.generators:
                        k = h @ g
                        if k not in closure:
                            closure.add(k)
                            new.append(k)
                frontier = new
            assert closure == set(T.elements)


def test_integrity_error_carries_both_sides():
    err = IntegrityError("mismatch", expected={1}, found={2})
    assert err.expected == {1} and err.found == {2}
