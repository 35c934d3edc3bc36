"""Exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` integer arrays with entries in [0, p).
Subspaces are held in reduced row-echelon form, which makes equality of
subspaces an equality of arrays.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

DTYPE = np.int64


def as_matrix(rows: Iterable[Sequence[int]] | np.ndarray, p: int, cols: int | None = None) -> np.ndarray:
    M = np.array(rows, dtype=DTYPE)
    if M.ndim == 1:
        if M.size == 0:
            M = M.reshape(0, cols or 0)
        else:
            M = M.reshape(1, -1)
    if cols is not None and M.shape[1] != cols:
        if M.shape[0] == 0:
            M = M.reshape(0, cols)
        else:
            raise ValueError(f"expected {cols} columns, got {M.shape[1]}")
    return M % p


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns; zero rows are dropped."""
    A = np.array(M, dtype=DTYPE) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r] = (A[r] * inv) % p
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            A = (A - np.outer(factors, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank(M: np.ndarray, p: int) -> int:
    return len(rref(M, p)[1])


def kernel_basis(M: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {v : M v = 0}."""
    M = np.asarray(M, dtype=DTYPE)
    cols = M.shape[1]
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=DTYPE)
    for i, f in enumerate(free):
        K[i, f] = 1
        for row, pc in enumerate(pivots):
            K[i, pc] = (-R[row, f]) % p
    return K


def kernel(M: np.ndarray, p: int) -> Subspace:
    M = np.asarray(M, dtype=DTYPE)
    return Subspace(kernel_basis(M, p), p, M.shape[1])


def solve(A: np.ndarray, b: Sequence[int], p: int) -> np.ndarray | None:
    """One solution x of A x = b, or None when the system is inconsistent.

    Consistency is decided by the augmented matrix having no pivot in its
    last column.
    """
    A = np.asarray(A, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE).reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.size:
        raise ValueError(f"shape mismatch: A is {A.shape}, b has {b.size} entries")
    cols = A.shape[1]
    R, pivots = rref(np.hstack([A % p, (b % p)[:, None]]), p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=DTYPE)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, cols]
    return x


class Subspace:
    """A subspace of F_p^ambient stored by its canonical RREF basis."""

    __slots__ = ("p", "ambient", "basis", "pivots", "_key")

    def __init__(self, rows: Iterable[Sequence[int]] | np.ndarray, p: int, ambient: int):
        M = as_matrix(rows, p, ambient)
        R, piv = rref(M, p)
        R.setflags(write=False)
        self.p = p
        self.ambient = ambient
        self.basis = R
        self.pivots = piv
        self._key = (p, ambient, R.tobytes())

    @classmethod
    def zero(cls, p: int, ambient: int) -> Subspace:
        return cls(np.zeros((0, ambient), dtype=DTYPE), p, ambient)

    @classmethod
    def full(cls, p: int, ambient: int) -> Subspace:
        return cls(np.eye(ambient, dtype=DTYPE), p, ambient)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def _compatible(self, other: Subspace) -> None:
        if other.p != self.p or other.ambient != self.ambient:
            raise ValueError(
                f"ambient mismatch: F_{self.p}^{self.ambient} vs F_{other.p}^{other.ambient}"
            )

    def reduce(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        """Residue of v (or of each row of a 2-D array) after clearing pivot columns."""
        V = np.array(v, dtype=DTYPE) % self.p
        single = V.ndim == 1
        if single:
            V = V[None, :]
        if V.shape[-1] != self.ambient:
            raise ValueError(f"vector length {V.shape[-1]} != ambient {self.ambient}")
        if self.dim:
            coeffs = V[:, list(self.pivots)]
            V = (V - coeffs @ self.basis) % self.p
        return V[0] if single else V

    def contains(self, other: Subspace | Sequence[int] | np.ndarray) -> bool:
        if isinstance(other, Subspace):
            self._compatible(other)
            if other.dim == 0:
                return True
            return not self.reduce(other.basis).any()
        return not self.reduce(other).any()

    def contains_rows(self, V: np.ndarray) -> np.ndarray:
        """Boolean mask of which rows of V lie in the subspace."""
        V = np.asarray(V, dtype=DTYPE)
        if V.shape[0] == 0:
            return np.zeros(0, dtype=bool)
        return ~self.reduce(V).any(axis=1)

    def __contains__(self, v: Sequence[int] | np.ndarray) -> bool:
        return self.contains(v)

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def sum(self, other: Subspace) -> Subspace:
        self._compatible(other)
        return Subspace(np.vstack([self.basis, other.basis]), self.p, self.ambient)

    def __add__(self, other: Subspace) -> Subspace:
        return self.sum(other)

    def annihilator(self) -> Subspace:
        """Orthogonal complement under the standard dot product."""
        return kernel(self.basis if self.dim else np.zeros((0, self.ambient), dtype=DTYPE), self.p)

    def intersect(self, other: Subspace) -> Subspace:
        self._compatible(other)
        constraints = np.vstack([self.annihilator().basis, other.annihilator().basis])
        return kernel(constraints, self.p)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersect(other)

    def complement_in(self, larger: Subspace) -> np.ndarray:
        """Rows of ``larger``'s RREF basis that extend this subspace to ``larger``.

        Rows are taken greedily in RREF order, so the result is canonical.
        """
        self._compatible(larger)
        if not larger.contains(self):
            raise ValueError("subspace is not contained in the larger space")
        current = self
        picked = []
        for row in larger.basis:
            if not current.contains(row):
                picked.append(row)
                current = Subspace(np.vstack([current.basis, row]), self.p, self.ambient)
        return np.array(picked, dtype=DTYPE).reshape(len(picked), self.ambient)

    def elements(self) -> Iterator[np.ndarray]:
        """Every vector of the subspace, p**dim of them."""
        for block in enumerate_span(self.basis, self.p):
            yield from block

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self.basis)


def span(rows: Iterable[Sequence[int]] | np.ndarray, p: int, ambient: int) -> Subspace:
    return Subspace(rows, p, ambient)


def subspace_ops(op: str, U: Subspace, V: Subspace | Sequence[int]) -> Subspace | bool:
    """Lattice operations addressed by name: contains, equals, intersect, sum, membership."""
    if op == "membership":
        if isinstance(V, Subspace):
            raise TypeError("membership expects a vector")
        return U.contains(V)
    if not isinstance(V, Subspace):
        raise TypeError(f"{op} expects a subspace")
    U._compatible(V)
    if op == "contains":
        return U.contains(V)
    if op == "equals":
        return U == V
    if op == "intersect":
        return U.intersect(V)
    if op == "sum":
        return U.sum(V)
    raise ValueError(f"unknown subspace operation {op!r}")


def coefficient_table(m: int, p: int) -> np.ndarray:
    """All p**m coefficient vectors, first coordinate varying fastest."""
    if m == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    grids = np.indices((p,) * m, dtype=DTYPE).reshape(m, -1)
    return grids[::-1].T.copy()


def enumerate_span(
    basis: np.ndarray, p: int, block: int = 1 << 15
) -> Iterator[np.ndarray]:
    """Yield every F_p-combination of the basis rows in blocks of rows.

    The low-order coefficients are tabulated once; the remaining ones are
    walked in an outer loop that adds a fixed offset to the table.
    """
    for _, elems in enumerate_span_with_coeffs(basis, p, block):
        yield elems


def enumerate_span_with_coeffs(
    basis: np.ndarray, p: int, block: int = 1 << 15
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Like :func:`enumerate_span` but also yields the coefficient rows."""
    basis = np.asarray(basis, dtype=DTYPE)
    m, width = basis.shape
    inner = 0
    while inner < m and p ** (inner + 1) <= block:
        inner += 1
    inner_coeffs = coefficient_table(inner, p)
    inner_elems = (inner_coeffs @ basis[:inner]) % p if inner else np.zeros((1, width), dtype=DTYPE)
    outer = m - inner
    outer_coeffs = coefficient_table(outer, p)
    for oc in outer_coeffs:
        offset = (oc @ basis[inner:]) % p if outer else np.zeros(width, dtype=DTYPE)
        coeffs = np.hstack([inner_coeffs, np.broadcast_to(oc, (inner_coeffs.shape[0], outer))])
        yield coeffs, (inner_elems + offset) % p
