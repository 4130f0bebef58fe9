"""Naive reference implementations used as test oracles.

Nothing here shares code with the package: field products use shift-and-add
with explicit reduction, polynomials are plain dicts, linear algebra is dense
Gaussian elimination on lists.
"""

from __future__ import annotations

from itertools import product


def gf_mul(a: int, b: int, modulus: int, s: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> s & 1:
            a ^= modulus
    return out


def gf_pow(a: int, e: int, modulus: int, s: int) -> int:
    out = 1
    for _ in range(e):
        out = gf_mul(out, a, modulus, s)
    return out


def gf_inv(a: int, modulus: int, s: int) -> int:
    for b in range(1, 1 << s):
        if gf_mul(a, b, modulus, s) == 1:
            return b
    raise ZeroDivisionError


def is_irreducible(modulus: int) -> bool:
    deg = modulus.bit_length() - 1
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            f = (1 << d) | low
            r = modulus
            while r.bit_length() >= f.bit_length():
                r ^= f << (r.bit_length() - f.bit_length())
            if r == 0:
                return False
    return True


class DictPoly:
    """Polynomial as {exponent tuple: coefficient} over GF(2^s)."""

    def __init__(self, nvars, modulus, s, terms=None):
        self.n, self.mod, self.s = nvars, modulus, s
        self.t = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, o):
        t = dict(self.t)
        for k, v in o.t.items():
            t[k] = t.get(k, 0) ^ v
        return DictPoly(self.n, self.mod, self.s, t)

    def __mul__(self, o):
        t = {}
        for (a, c), (b, d) in product(self.t.items(), o.t.items()):
            k = tuple(i + j for i, j in zip(a, b))
            t[k] = t.get(k, 0) ^ gf_mul(c, d, self.mod, self.s)
        return DictPoly(self.n, self.mod, self.s, t)

    def __pow__(self, e):
        out = DictPoly(self.n, self.mod, self.s, {(0,) * self.n: 1})
        for _ in range(e):
            out = out * self
        return out


def dense_rank(rows: list[list[int]], modulus: int, s: int) -> int:
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = gf_inv(rows[rank][col], modulus, s)
        rows[rank] = [gf_mul(inv, v, modulus, s) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a ^ gf_mul(f, b, modulus, s) for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def series(num: dict, denoms, n: int) -> list[int]:
    """Coefficients of num / prod(1 - t^k) by explicit convolution with geometric series."""
    out = [num.get(i, 0) for i in range(n)]
    for k in denoms:
        geo = [1 if i % k == 0 else 0 for i in range(n)]
        out = [sum(out[j] * geo[i - j] for j in range(i + 1)) for i in range(n)]
    return out
