"""Finite field arithmetic for F_q with q = p^r.

Elements are packed integers: the coefficient vector (c_0, ..., c_{r-1}) of
the polynomial basis {1, x, ..., x^{r-1}} is stored as sum(c_i * p**i).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_ORDER = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num / den over F_p; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return [c % p for c in num[:dd]]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    r = len(poly) - 1
    if r < 1 or poly[-1] % p != 1:
        return False
    for deg in range(1, r // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, r: int) -> tuple[int, ...]:
    """Smallest irreducible monic polynomial of degree r, ordered by packed value."""
    for packed in range(p**r):
        low = [(packed // p**i) % p for i in range(r)]
        poly = tuple(low + [1])
        if r == 1 or is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {r} over F_{p}")


@dataclass(frozen=True, eq=False)
class FieldParams:
    """The field F_{p^r} with a fixed modulus polynomial.

    Use :func:`make_field` to build one; the lookup tables are filled at
    construction and never mutated afterwards.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    _exp: np.ndarray = field(repr=False)
    _log: np.ndarray = field(repr=False)
    _trace: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.r

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldParams):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    def __str__(self) -> str:
        return f"F_{self.q}"

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of {self}")
        return x

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.r == 1:
            return (x + y) % p
        out, scale = 0, 1
        for _ in range(self.r):
            out += ((x % p + y % p) % p) * scale
            x //= p
            y //= p
            scale *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if self.r == 1:
            return (-x) % p
        out, scale = 0, 1
        for _ in range(self.r):
            out += ((-(x % p)) % p) * scale
            x //= p
            scale *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self._exp[(self._log[x] + self._log[y]) % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return int(self._exp[(-self._log[x]) % (self.q - 1)])

    def trace(self, x: int) -> int:
        return int(self._trace[x])

    def to_fp_coords(self, x: int) -> tuple[int, ...]:
        self.check(x)
        return tuple((x // self.p**i) % self.p for i in range(self.r))

    def from_fp_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.r:
            raise ValueError(f"expected {self.r} coordinates, got {len(coords)}")
        out = 0
        for i, c in enumerate(coords):
            if not 0 <= c < self.p:
                raise ValueError(f"coordinate {c} out of range for F_{self.p}")
            out += c * self.p**i
        return out

    def trace_gram(self) -> np.ndarray:
        """r x r matrix of tr(x^i * x^j) over F_p, the flattened trace form."""
        basis = [self.p**i for i in range(self.r)]
        return np.array(
            [[self.trace(self.mul(u, v)) for v in basis] for u in basis], dtype=np.int64
        )

    def mul_matrix(self, c: int) -> np.ndarray:
        """Matrix M over F_p with coords(c * y) = coords(y) @ M."""
        rows = [self.to_fp_coords(self.mul(c, self.p**i)) for i in range(self.r)]
        return np.array(rows, dtype=np.int64).reshape(self.r, self.r)


def _poly_mulmod(u: list[int], v: list[int], modulus: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] += a * b
    return _poly_mod(prod, modulus, p)


def make_field(p: int, r: int = 1, modulus: Sequence[int] | None = None) -> FieldParams:
    """Validate parameters and build F_{p^r}.

    >>> F4 = make_field(2, 2)
    >>> F4.mul(2, 2)
    3
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if r < 1:
        raise ValueError(f"extension degree r={r} must be >= 1")
    q = p**r
    if q > MAX_ORDER:
        raise ValueError(f"q={q} exceeds the supported field size {MAX_ORDER}")
    if modulus is None:
        mod = default_modulus(p, r)
    else:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != r + 1:
            raise ValueError(f"modulus must have {r + 1} coefficients, got {len(mod)}")
        if any(not 0 <= c < p for c in mod):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if r > 1 and not is_irreducible(mod, p):
            raise ValueError(f"modulus {list(mod)} is reducible over F_{p}")

    # find a generator of the multiplicative group and tabulate its powers
    exp = np.zeros(q, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)

    def pack(coeffs: list[int]) -> int:
        return sum(c * p**i for i, c in enumerate(coeffs))

    def unpack(x: int) -> list[int]:
        return [(x // p**i) % p for i in range(r)]

    for g in range(1, q):
        if q == 2:
            exp[0] = 1
            break
        gc = unpack(g)
        cur = [1] + [0] * (r - 1)
        seen = 0
        ok = True
        for e in range(q - 1):
            x = pack(cur)
            if e > 0 and x == 1:
                ok = False
                break
            exp[e] = x
            seen += 1
            cur = _poly_mulmod(cur, gc, mod, p) if r > 1 else [(cur[0] * g) % p]
        if ok and seen == q - 1:
            break
    else:  # pragma: no cover
        raise AssertionError("multiplicative group has no generator")
    for e in range(q - 1):
        log[exp[e]] = e

    params = FieldParams(p, r, mod, exp, log, np.zeros(q, dtype=np.int64))
    # the trace is F_p-linear, so tabulate it on the polynomial basis only
    basis_trace = []
    for i in range(r):
        acc, power = 0, p**i
        for _ in range(r):
            acc = params.add(acc, power)
            power = _pow(params, power, p)
        if acc >= p:
            raise AssertionError(f"trace of x^{i} left the prime field")
        basis_trace.append(acc)
    digits = (np.arange(q)[:, None] // p ** np.arange(r)[None, :]) % p
    trace = (digits @ np.array(basis_trace, dtype=np.int64)) % p
    object.__setattr__(params, "_trace", trace)
    for table in (exp, log, trace):
        table.setflags(write=False)
    return params


def _pow(F: FieldParams, x: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = F.mul(out, x)
    return out


def field_arith(F: FieldParams, op: str, x: int, y: int = 0) -> int:
    """Dispatch one of add, sub, mul, inv, neg; unary ops ignore y."""
    F.check(x)
    F.check(y)
    if op == "add":
        return F.add(x, y)
    if op == "sub":
        return F.sub(x, y)
    if op == "mul":
        return F.mul(x, y)
    if op == "inv":
        return F.inv(x)
    if op == "neg":
        return F.neg(x)
    raise ValueError(f"unknown field operation {op!r}")
