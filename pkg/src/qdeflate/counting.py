"""Counting and enumerating the [[t, k']]_q prefix codes available to deflation."""

from __future__ import annotations

import itertools
import math
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded
from .fpla import DTYPE, coefficient_table
from .gf import FieldParams, is_prime, make_field
from .stabilizer import StabilizerCode, default_budget
from .symplectic import SympSubspace, gram


def _check_query(p: int, r: int, n: int, k: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if r < 1 or n < 0:
        raise ValueError(f"need r >= 1 and n >= 0, got r={r}, n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")


def _isotropic_count(p: int, r: int, n: int, k: int) -> int:
    m = r * (n - k)
    num = den = 1
    for i in range(m):
        num *= p ** (2 * r * n - i) - p**i
        den *= p**m - p**i
    quotient, rem = divmod(num, den)
    if rem:
        raise AssertionError(f"count for (p={p}, r={r}, n={n}, k={k}) is not an integer")
    return quotient


def count_stabilizers(p: int, r: int, n: int, k: int) -> int:
    """Number of [[n, k]]_q stabilizer codes with q = p^r, exactly.

    Ordered choices of r(n-k) independent, pairwise orthogonal vectors
    divided by the number of ordered bases of one such subspace.
    """
    _check_query(p, r, n, k)
    return _isotropic_count(p, r, n, k)


def count_punc_short(p: int, r: int, t: int, kp: int) -> int:
    """Ways to combine k' shortenings with t - k' puncturings on t positions."""
    _check_query(p, r, t, kp)
    return math.comb(t, kp) * _isotropic_count(p, r, t - kp, 0)


def round_sig(value: int, digits: int = 3) -> tuple[int, int]:
    """Round a positive integer to ``digits`` significant digits: (mantissa, exponent).

    The mantissa is an integer with ``digits`` digits; the value is about
    mantissa * 10**(exponent - digits + 1).
    """
    if value <= 0:
        raise ValueError("value must be positive")
    exp = len(str(value)) - 1
    shift = exp - digits + 1
    if shift <= 0:
        return value * 10 ** (-shift), exp
    mant, rem = divmod(value, 10**shift)
    if 2 * rem >= 10**shift:
        mant += 1
    if mant == 10**digits:
        mant //= 10
        exp += 1
    return mant, exp


def format_sig(value: int, digits: int = 3) -> str:
    """Render as ``4.89·10^17`` in the style of the comparison tables."""
    mant, exp = round_sig(value, digits)
    s = str(mant)
    return f"{s[0]}.{s[1:]}·10^{exp}" if digits > 1 else f"{s}·10^{exp}"


def format_count(value: int, limit: int = 10**15) -> str:
    return str(value) if value < limit else format_sig(value)


def _rref_candidates(pivot: int, others: list[int], width: int, p: int) -> np.ndarray:
    """All RREF rows with leading 1 at ``pivot`` and free entries in ``others``."""
    free = [c for c in range(pivot + 1, width) if c not in others]
    coeffs = coefficient_table(len(free), p)
    rows = np.zeros((coeffs.shape[0], width), dtype=DTYPE)
    rows[:, pivot] = 1
    if free:
        rows[:, free] = coeffs
    return rows


def _isotropic_rref(W: np.ndarray, p: int, width: int, m: int) -> Iterator[np.ndarray]:
    for pivots in itertools.combinations(range(width), m):
        cands = [_rref_candidates(c, list(pivots), width, p) for c in pivots]

        def extend(i: int, chosen: list[np.ndarray]) -> Iterator[np.ndarray]:
            if i == m:
                yield np.array(chosen, dtype=DTYPE).reshape(m, width)
                return
            rows = cands[i]
            if chosen:
                prev = np.array(chosen, dtype=DTYPE)
                ok = ~((rows @ W @ prev.T) % p).any(axis=1)
                rows = rows[ok]
            for row in rows:
                chosen.append(row)
                yield from extend(i + 1, chosen)
                chosen.pop()

        yield from extend(0, [])


def enumerate_prefix_codes(
    p: int, r: int, t: int, kp: int, *, field: FieldParams | None = None, budget: int | None = None
) -> Iterator[StabilizerCode]:
    """Every [[t, k']]_q stabilizer code exactly once, in canonical order.

    Codes are built directly in reduced row-echelon form (pivot set first,
    then free entries), pruning any partial basis that is not isotropic;
    the stream is sorted lexicographically by RREF basis.
    """
    _check_query(p, r, t, kp)
    budget = default_budget() if budget is None else budget
    size = p ** (2 * r * t)
    if size > budget:
        raise BudgetExceeded(size, budget, "prefix code enumeration")
    F = field if field is not None else make_field(p, r)
    if (F.p, F.r) != (p, r):
        raise ValueError(f"field {F} does not match p={p}, r={r}")
    width = 2 * r * t
    m = r * (t - kp)
    W = gram(F, t)
    found = list(_isotropic_rref(W, p, width, m))
    found.sort(key=lambda B: tuple(map(tuple, B.tolist())))
    for B in found:
        yield StabilizerCode(SympSubspace.from_rows(F, t, B))


def count_table(p: int, t: int, kp: int, rs: tuple[int, ...] = (1, 2, 3)) -> dict[str, list[int]]:
    """The two rows of a comparison table for fixed p, t, k' over several r."""
    return {
        "punc_short": [count_punc_short(p, r, t, kp) for r in rs],
        "deflation": [count_stabilizers(p, r, t, kp) for r in rs],
    }
