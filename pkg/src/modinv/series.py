"""Truncated power series for Hilbert-series style dimension counts."""

from __future__ import annotations

from typing import Iterable, Sequence


def series_coefficients(numerator: Sequence[int] | dict, denominator_degrees: Iterable[int], n_terms: int) -> list[int]:
    """Coefficients of t^0..t^(n_terms-1) in numerator / prod(1 - t^k).

    ``numerator`` is either a coefficient list or a {degree: coefficient} map.
    """
    if isinstance(numerator, dict):
        coeffs = [0] * n_terms
        for deg, c in numerator.items():
            if deg < n_terms:
                coeffs[deg] += c
    else:
        coeffs = list(numerator[:n_terms]) + [0] * max(0, n_terms - len(numerator))
    for k in denominator_degrees:
        if k <= 0:
            raise ValueError("denominator factors must be 1 - t^k with k > 0")
        # multiply by 1/(1 - t^k) = 1 + t^k + t^2k + ...
        for i in range(k, n_terms):
            coeffs[i] += coeffs[i - k]
    return coeffs


def numerator_from_degrees(degrees: Iterable[int]) -> dict:
    out: dict[int, int] = {}
    for d in degrees:
        out[d] = out.get(d, 0) + 1
    return out
