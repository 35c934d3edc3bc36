"""Deflation of classical linear codes over F_q, for comparison with the quantum case.

A linear [n, k]_q code is stored as the F_p-subspace of its flattened
codewords (r digits per position). Its F_q-dimension is that F_p-dimension
divided by r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, UndefinedDistance
from .fpla import DTYPE, Subspace, enumerate_span, kernel, kernel_basis
from .gf import FieldParams
from .stabilizer import default_budget
from .symplectic import positions0


def _cols(r: int, pos0: Sequence[int]) -> list[int]:
    return [j * r + i for j in pos0 for i in range(r)]


class LinearCode:
    def __init__(self, field: FieldParams, n: int, flat: Subspace):
        if flat.ambient != field.r * n or flat.p != field.p:
            raise ValueError("flat subspace does not live in F_p^{rn}")
        if flat.dim % field.r:
            raise ValueError("subspace is not F_q-linear (dimension not a multiple of r)")
        self.field = field
        self.n = n
        self.flat = flat

    @classmethod
    def from_generator(cls, field: FieldParams, n: int, rows: Iterable[Sequence[int]]) -> LinearCode:
        """F_q-span of generator rows given as packed F_q entries."""
        flat_rows = []
        for row in rows:
            if len(row) != n:
                raise ValueError(f"generator row has {len(row)} entries, expected {n}")
            for i in range(field.r):
                scaled = [field.mul(field.p**i, field.check(int(x))) for x in row]
                flat_rows.append([c for x in scaled for c in field.to_fp_coords(x)])
        M = np.array(flat_rows, dtype=DTYPE).reshape(len(flat_rows), field.r * n)
        return cls(field, n, Subspace(M, field.p, field.r * n))

    @classmethod
    def zero(cls, field: FieldParams, n: int) -> LinearCode:
        return cls(field, n, Subspace.zero(field.p, field.r * n))

    @classmethod
    def full(cls, field: FieldParams, n: int) -> LinearCode:
        return cls(field, n, Subspace.full(field.p, field.r * n))

    @property
    def k(self) -> int:
        return self.flat.dim // self.field.r

    def generator(self) -> list[list[int]]:
        """An F_q-basis of the code as packed rows, chosen from the RREF rows."""
        picked: list[np.ndarray] = []
        span = Subspace.zero(self.field.p, self.flat.ambient)
        for row in self.flat.basis:
            if span.contains(row):
                continue
            picked.append(row)
            span = LinearCode.from_generator(self.field, self.n, [self._pack(r) for r in picked]).flat
        return [self._pack(r) for r in picked]

    def _pack(self, row: np.ndarray) -> list[int]:
        r = self.field.r
        return [self.field.from_fp_coords([int(c) for c in row[j * r : (j + 1) * r]]) for j in range(self.n)]

    def dual(self) -> LinearCode:
        """Euclidean dual; equals the dual under the trace of the dot product."""
        G = _euclid_gram(self.field, self.n)
        if self.flat.dim == 0:
            return LinearCode.full(self.field, self.n)
        return LinearCode(self.field, self.n, kernel((self.flat.basis @ G) % self.field.p, self.field.p))

    def restrict(self, pos0: Sequence[int]) -> Subspace:
        """F_p image of the code on the given 0-based positions."""
        r = self.field.r
        rows = self.flat.basis[:, _cols(r, pos0)] if self.flat.dim else np.zeros((0, r * len(pos0)), dtype=DTYPE)
        return Subspace(rows, self.field.p, r * len(pos0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.field, self.n, self.flat) == (other.field, other.n, other.flat)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.field.q})"


def _euclid_gram(field: FieldParams, n: int) -> np.ndarray:
    return np.kron(np.eye(n, dtype=DTYPE), field.trace_gram()) % field.p


def deflate_classical(C: LinearCode, Cp: LinearCode, I: Iterable[int]) -> LinearCode:
    """Codewords whose entries on I lie in C', with those entries deleted."""
    I = list(I)
    F = C.field
    pos = positions0(I, C.n)
    t = len(pos)
    if len(I) != t or Cp.n != t:
        raise ValueError(f"|I|={len(I)} does not match the length {Cp.n} of C'")
    if Cp.field != F:
        raise ValueError("C' is over a different field")
    keep = [j for j in range(C.n) if j not in set(pos)]
    out_width = F.r * len(keep)
    if C.flat.dim == 0:
        return LinearCode.zero(F, len(keep))
    B = Cp.dual().flat.basis
    kept = C.flat.basis
    if B.shape[0]:
        P = C.flat.basis[:, _cols(F.r, pos)]
        constraint = (P @ _euclid_gram(F, t) @ B.T) % F.p
        K = kernel_basis(constraint.T, F.p)
        kept = (K @ C.flat.basis) % F.p
    rows = kept[:, _cols(F.r, keep)].reshape(-1, out_width)
    return LinearCode(F, len(keep), Subspace(rows, F.p, out_width))


@dataclass(frozen=True)
class ClassicalDimension:
    value: int
    k: int
    projected_dim: int
    intersection_dim: int
    information_set: bool
    simplified: int | None
    collapsed: int = 0

    @property
    def deflated(self) -> int:
        """Dimension after deletion: the formula value minus codewords that vanish off I."""
        return self.value - self.collapsed


def classical_dimension(C: LinearCode, Cp: LinearCode, I: Iterable[int]) -> ClassicalDimension:
    """k - (dim C|_I - dim(C|_I meet C')), plus the information-set shortcut k + k' - t.

    The formula counts codewords whose prefix lies in C'. Deleting I loses
    the ones supported inside I, counted in ``collapsed``; that is zero
    whenever t < d(C).
    """
    I = list(I)
    F = C.field
    pos = positions0(I, C.n)
    t = len(pos)
    projected = C.restrict(pos)
    inter = projected.intersect(Cp.flat)
    value = C.k - (projected.dim - inter.dim) // F.r
    info = projected.dim == F.r * t
    simplified = None
    if info:
        simplified = C.k + Cp.k - t
        if simplified != value:
            raise AssertionError(f"information-set dimension {simplified} != formula {value}")
    collapsed = 0
    if C.flat.dim:
        keep = [j for j in range(C.n) if j not in set(pos)]
        B = C.flat.basis
        inside = B
        if keep:
            K = kernel_basis(B[:, _cols(F.r, keep)].T, F.p)
            inside = (K @ B) % F.p
        local = Subspace(inside[:, _cols(F.r, pos)].reshape(-1, F.r * t), F.p, F.r * t)
        collapsed = local.intersect(Cp.flat).dim // F.r
    return ClassicalDimension(value, C.k, projected.dim // F.r, inter.dim // F.r, info, simplified, collapsed)


def min_distance_classical(C: LinearCode, budget: int | None = None) -> int:
    """Minimum Hamming weight of a nonzero codeword, by enumeration."""
    if C.k == 0:
        raise UndefinedDistance("the zero code has no nonzero codewords")
    budget = default_budget() if budget is None else budget
    size = C.field.p**C.flat.dim
    if size > budget:
        raise BudgetExceeded(size, budget, "codeword enumeration")
    r = C.field.r
    best = C.n
    for block in enumerate_span(C.flat.basis, C.field.p):
        w = block.reshape(block.shape[0], C.n, r).any(axis=2).sum(axis=1)
        nz = w[w > 0]
        if nz.size:
            best = min(best, int(nz.min()))
    return best
