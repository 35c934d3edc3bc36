"""Symplectic vectors (a|b) in F_q^{2n} and their F_p-linear picture.

Every vector is flattened to F_p^{2rn}: the r digits of a_1, ..., a_n come
first, then those of b_1, ..., b_n. Subspace identity depends on this layout.
Position sets given by callers are 1-based; internal helpers use 0-based.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .fpla import DTYPE, Subspace, kernel
from .gf import FieldParams


@dataclass(frozen=True)
class SympVector:
    field: FieldParams
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError(f"|a|={len(self.a)} differs from |b|={len(self.b)}")
        for x in self.a + self.b:
            self.field.check(x)

    @classmethod
    def of(cls, field: FieldParams, a: Sequence[int], b: Sequence[int]) -> SympVector:
        return cls(field, tuple(int(x) for x in a), tuple(int(x) for x in b))

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return format_row(self.a, self.b)


def format_row(a: Sequence[int], b: Sequence[int]) -> str:
    return ",".join(map(str, a)) + "|" + ",".join(map(str, b))


def _check_positions(I: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a 1-based position set and return it sorted and 0-based."""
    idx = sorted(set(int(i) for i in I))
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"position {i} outside [1, {n}]")
    return tuple(i - 1 for i in idx)


def positions0(I: Iterable[int], n: int) -> tuple[int, ...]:
    return _check_positions(I, n)


def flatten(v: SympVector) -> np.ndarray:
    F = v.field
    digits = [F.to_fp_coords(x) for x in v.a + v.b]
    if not digits:
        return np.zeros(0, dtype=DTYPE)
    return np.array(digits, dtype=DTYPE).reshape(-1)


def unflatten(field: FieldParams, n: int, flat: Sequence[int] | np.ndarray) -> SympVector:
    flat = np.asarray(flat, dtype=DTYPE).reshape(-1)
    r = field.r
    if flat.size != 2 * r * n:
        raise ValueError(f"flat length {flat.size} != 2rn = {2 * r * n}")
    vals = [field.from_fp_coords([int(c) for c in flat[i * r : (i + 1) * r]]) for i in range(2 * n)]
    return SympVector(field, tuple(vals[:n]), tuple(vals[n:]))


@functools.lru_cache(maxsize=256)
def _omega(field: FieldParams, n: int) -> np.ndarray:
    T = np.kron(np.eye(n, dtype=DTYPE), field.trace_gram())
    Z = np.zeros_like(T)
    W = np.block([[Z, T], [(-T) % field.p, Z]]) % field.p
    W.setflags(write=False)
    return W


def gram(field: FieldParams, n: int) -> np.ndarray:
    """Matrix W with <u, v>_s = flat(u) W flat(v)^T over F_p."""
    return _omega(field, n)


def symp_product(u: SympVector, v: SympVector) -> int:
    """tr(<a, d> - <c, b>) for u = (a|b), v = (c|d)."""
    if u.field != v.field or u.n != v.n:
        raise ValueError("symplectic product needs vectors of the same field and length")
    F = u.field
    acc = 0
    for a, b, c, d in zip(u.a, u.b, v.a, v.b):
        acc = F.add(acc, F.sub(F.mul(a, d), F.mul(c, b)))
    return F.trace(acc)


def flat_products(field: FieldParams, n: int, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Matrix of symplectic products between the rows of U and V (flat form)."""
    U = np.atleast_2d(np.asarray(U, dtype=DTYPE))
    V = np.atleast_2d(np.asarray(V, dtype=DTYPE))
    return (U @ gram(field, n) @ V.T) % field.p


def symp_weight(v: SympVector) -> int:
    return sum(1 for x, y in zip(v.a, v.b) if x or y)


def support(field: FieldParams, n: int, X: np.ndarray) -> np.ndarray:
    """Boolean (rows x n) mask of touched positions for flat rows X."""
    X = np.atleast_2d(np.asarray(X))
    r = field.r
    a = X[:, : r * n].reshape(X.shape[0], n, r).any(axis=2)
    b = X[:, r * n :].reshape(X.shape[0], n, r).any(axis=2)
    return a | b


def weights(field: FieldParams, n: int, X: np.ndarray) -> np.ndarray:
    return support(field, n, X).sum(axis=1)


def flat_columns(field: FieldParams, n: int, pos0: Sequence[int]) -> list[int]:
    """Flat column indices of the given 0-based positions, a-part then b-part."""
    r = field.r
    cols = [j * r + i for j in pos0 for i in range(r)]
    return cols + [r * n + c for c in cols]


def complement(n: int, pos0: Sequence[int]) -> tuple[int, ...]:
    drop = set(pos0)
    return tuple(j for j in range(n) if j not in drop)


def project(v: SympVector, I: Iterable[int]) -> SympVector:
    """Delete the positions in I (1-based); the rest keep their order."""
    pos = set(_check_positions(I, v.n))
    keep = [j for j in range(v.n) if j not in pos]
    return SympVector(v.field, tuple(v.a[j] for j in keep), tuple(v.b[j] for j in keep))


def prefix(v: SympVector, I: Iterable[int]) -> SympVector:
    """Keep only the positions in I, in ascending order."""
    pos = _check_positions(I, v.n)
    return SympVector(v.field, tuple(v.a[j] for j in pos), tuple(v.b[j] for j in pos))


def project_rows(field: FieldParams, n: int, X: np.ndarray, pos0: Sequence[int]) -> np.ndarray:
    """Flat rows with the given 0-based positions deleted."""
    cols = flat_columns(field, n, complement(n, pos0))
    return np.atleast_2d(np.asarray(X, dtype=DTYPE))[:, cols]


def prefix_rows(field: FieldParams, n: int, X: np.ndarray, pos0: Sequence[int]) -> np.ndarray:
    """Flat rows restricted to the given 0-based positions (ascending)."""
    cols = flat_columns(field, n, sorted(pos0))
    return np.atleast_2d(np.asarray(X, dtype=DTYPE))[:, cols]


def sigma(A: Sequence[SympVector], I: Iterable[int], v: SympVector) -> tuple[int, ...]:
    """Symplectic products of the prefix of v (positions I) with each vector of A."""
    pos = _check_positions(I, v.n)
    t = len(pos)
    for alpha in A:
        if alpha.n != t:
            raise ValueError(f"prefix vectors must have length |I|={t}, got {alpha.n}")
    pre = prefix(v, [j + 1 for j in pos])
    return tuple(symp_product(pre, alpha) for alpha in A)


class SympSubspace:
    """An F_p-linear subspace of F_q^{2n}."""

    __slots__ = ("field", "n", "flat")

    def __init__(self, field: FieldParams, n: int, flat: Subspace):
        if flat.p != field.p or flat.ambient != 2 * field.r * n:
            raise ValueError("flat subspace does not live in F_p^{2rn}")
        self.field = field
        self.n = n
        self.flat = flat

    @classmethod
    def from_rows(cls, field: FieldParams, n: int, rows: np.ndarray | Sequence[Sequence[int]]) -> SympSubspace:
        return cls(field, n, Subspace(rows, field.p, 2 * field.r * n))

    @classmethod
    def from_vectors(cls, field: FieldParams, n: int, vectors: Iterable[SympVector]) -> SympSubspace:
        rows = []
        for v in vectors:
            if v.field != field or v.n != n:
                raise ValueError(f"vector {v} does not live in {field}^(2*{n})")
            rows.append(flatten(v))
        return cls.from_rows(field, n, np.array(rows, dtype=DTYPE).reshape(len(rows), 2 * field.r * n))

    @classmethod
    def zero(cls, field: FieldParams, n: int) -> SympSubspace:
        return cls(field, n, Subspace.zero(field.p, 2 * field.r * n))

    @classmethod
    def full(cls, field: FieldParams, n: int) -> SympSubspace:
        return cls(field, n, Subspace.full(field.p, 2 * field.r * n))

    @property
    def dim(self) -> int:
        return self.flat.dim

    @property
    def basis(self) -> np.ndarray:
        return self.flat.basis

    def vectors(self) -> list[SympVector]:
        return [unflatten(self.field, self.n, row) for row in self.flat.basis]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SympSubspace):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.flat == other.flat

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.flat))

    def __repr__(self) -> str:
        return f"SympSubspace(n={self.n}, dim={self.dim}, field={self.field})"

    def __contains__(self, v: SympVector | np.ndarray) -> bool:
        if isinstance(v, SympVector):
            v = flatten(v)
        return self.flat.contains(v)

    def contains(self, other: SympSubspace) -> bool:
        return self.flat.contains(other.flat)

    def is_isotropic(self) -> bool:
        if self.dim == 0:
            return True
        return not flat_products(self.field, self.n, self.basis, self.basis).any()

    def dual(self) -> SympSubspace:
        return symp_dual(self)

    def project(self, I: Iterable[int]) -> SympSubspace:
        """Image under deletion of the positions in I (1-based)."""
        pos = _check_positions(I, self.n)
        rows = project_rows(self.field, self.n, self.basis, pos) if self.dim else np.zeros((0, 0))
        m = self.n - len(pos)
        return SympSubspace.from_rows(self.field, m, rows.reshape(self.dim, 2 * self.field.r * m))

    def prefix(self, I: Iterable[int]) -> SympSubspace:
        """Image under restriction to the positions in I (1-based)."""
        pos = _check_positions(I, self.n)
        t = len(pos)
        rows = prefix_rows(self.field, self.n, self.basis, pos) if self.dim else np.zeros((0, 0))
        return SympSubspace.from_rows(self.field, t, rows.reshape(self.dim, 2 * self.field.r * t))


def symp_dual(V: SympSubspace) -> SympSubspace:
    """All w with <w, v>_s = 0 for every v in V."""
    width = 2 * V.field.r * V.n
    if V.dim == 0:
        return SympSubspace.full(V.field, V.n)
    constraints = (V.basis @ gram(V.field, V.n)) % V.field.p
    D = kernel(constraints.reshape(V.dim, width), V.field.p)
    return SympSubspace(V.field, V.n, D)
