"""Stabilizer codes as isotropic F_p-subspaces of F_q^{2n}."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionError, IsotropyError, UndefinedDistance
from .fpla import DTYPE, Subspace, enumerate_span_with_coeffs
from .gf import FieldParams
from .symplectic import SympSubspace, SympVector, flat_products, flatten, symp_dual, weights

DEFAULT_BUDGET = 1 << 26


def default_budget() -> int:
    """Enumeration budget, overridable through ``QDEFLATE_BUDGET``."""
    env = os.environ.get("QDEFLATE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    q: int
    d: int | None = None
    pure: bool | None = None

    def __str__(self) -> str:
        inner = f"{self.n},{self.k}" + (f",{self.d}" if self.d is not None else "")
        return f"[[{inner}]]_{self.q}"


class StabilizerCode:
    """A validated stabilizer S_q together with its derived parameters.

    Build one with :func:`new_stabilizer` or :meth:`from_space`. The minimum
    distance is computed lazily and cached per instance.
    """

    def __init__(self, space: SympSubspace):
        F = space.field
        if space.dim % F.r:
            raise DimensionError(
                f"F_p-dimension {space.dim} is not a multiple of r={F.r}; no integer k"
            )
        if not space.is_isotropic():
            G = flat_products(F, space.n, space.basis, space.basis)
            i, j = (int(x) for x in np.argwhere(G)[0])
            raise IsotropyError(i + 1, j + 1, int(G[i, j]))
        self.space = space
        self._dual: SympSubspace | None = None
        self._d: int | None = None
        self._pure: bool | None = None

    @classmethod
    def from_space(cls, space: SympSubspace) -> StabilizerCode:
        return cls(space)

    @property
    def field(self) -> FieldParams:
        return self.space.field

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def k(self) -> int:
        return self.n - self.space.dim // self.field.r

    @property
    def dual(self) -> SympSubspace:
        if self._dual is None:
            self._dual = symp_dual(self.space)
        return self._dual

    def parameters(self, with_distance: bool = False, budget: int | None = None) -> CodeParameters:
        d = pure = None
        if with_distance and self.k > 0:
            d = min_distance(self, budget)
            pure = is_pure(self, d, budget)
        elif self._d is not None:
            d, pure = self._d, self._pure
        return CodeParameters(self.n, self.k, self.field.q, d, pure)

    def __repr__(self) -> str:
        return f"StabilizerCode({self.parameters()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabilizerCode):
            return NotImplemented
        return self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)


def new_stabilizer(
    field: FieldParams, n: int, generators: Sequence[SympVector] | np.ndarray
) -> StabilizerCode:
    """Validate generators and build the code they span.

    Generators may be :class:`SympVector` objects or flat F_p rows. A
    violating pair is reported with 1-based generator indices.
    """
    width = 2 * field.r * n
    if isinstance(generators, np.ndarray):
        rows = np.asarray(generators, dtype=DTYPE).reshape(-1, width) % field.p
    else:
        flat = []
        for g in generators:
            if isinstance(g, SympVector):
                if g.field != field or g.n != n:
                    raise ValueError(f"generator {g} does not live in {field}^(2*{n})")
                flat.append(flatten(g))
            else:
                flat.append(np.asarray(g, dtype=DTYPE))
        rows = np.array(flat, dtype=DTYPE).reshape(len(flat), width) % field.p
    if rows.shape[0]:
        G = flat_products(field, n, rows, rows)
        bad = np.argwhere(G)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            raise IsotropyError(i + 1, j + 1, int(G[i, j]))
    return StabilizerCode(SympSubspace.from_rows(field, n, rows))


def extended_matrix(S: StabilizerCode) -> np.ndarray:
    """Stabilizer basis followed by a canonical completion to the symplectic dual."""
    completion = S.space.flat.complement_in(S.dual.flat)
    return np.vstack([S.space.basis, completion]).astype(DTYPE)


def _check_budget(size: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if size > budget:
        raise BudgetExceeded(size, budget, what)


def scan_dual(
    S: StabilizerCode, budget: int | None = None
) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Walk all of S^perp in blocks: (flat elements, in-S mask, weights).

    Elements are spanned by the extended matrix; membership in S is read off
    the coefficients, since an element lies in S exactly when its completion
    coefficients vanish.
    """
    F = S.field
    E = extended_matrix(S)
    m = S.space.dim
    _check_budget(F.p ** E.shape[0], budget, "dual enumeration")
    for coeffs, elems in enumerate_span_with_coeffs(E, F.p):
        in_s = ~coeffs[:, m:].any(axis=1)
        yield elems, in_s, weights(F, S.n, elems)


def scan_space(
    V: SympSubspace, budget: int | None = None
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Walk all elements of V in blocks: (flat elements, weights)."""
    _check_budget(V.field.p ** V.dim, budget, "subspace enumeration")
    for _, elems in enumerate_span_with_coeffs(V.basis, V.field.p):
        yield elems, weights(V.field, V.n, elems)


def min_distance(S: StabilizerCode, budget: int | None = None) -> int:
    """Minimum symplectic weight over S^perp minus S, by full enumeration."""
    if S._d is not None:
        return S._d
    if S.k == 0:
        raise UndefinedDistance("k = 0: S^perp minus S is empty, distance is undefined")
    best = S.n + 1
    for _, in_s, w in scan_dual(S, budget):
        cand = w[~in_s]
        if cand.size:
            best = min(best, int(cand.min()))
            if best == 1:
                break
    S._d = best
    return best


def is_pure(S: StabilizerCode, d: int | None = None, budget: int | None = None) -> bool:
    """True when no nonzero element of S^perp has weight below d."""
    if d is None:
        d = min_distance(S, budget)
    if d <= 1:
        return True
    pure = True
    for _, _, w in scan_dual(S, budget):
        if ((w > 0) & (w < d)).any():
            pure = False
            break
    if d == S._d:
        S._pure = pure
    return pure


def min_stabilizer_weight(S: StabilizerCode, budget: int | None = None) -> int | None:
    """Smallest weight of a nonzero element of S, or None for S = {0}."""
    if S.space.dim == 0:
        return None
    best = S.n
    for _, w in scan_space(S.space, budget):
        nz = w[w > 0]
        if nz.size:
            best = min(best, int(nz.min()))
    return best


def code_from_flat(field: FieldParams, n: int, rows: np.ndarray) -> StabilizerCode:
    return StabilizerCode(SympSubspace.from_rows(field, n, rows))


def trivial_code(field: FieldParams, n: int) -> StabilizerCode:
    """The [[n, n]]_q code with S = {0}."""
    return StabilizerCode(SympSubspace.zero(field, n))


def dual_span_check(S: StabilizerCode, completion: np.ndarray) -> bool:
    """Whether S plus the given rows spans exactly S^perp."""
    rows = np.vstack([S.space.basis, np.asarray(completion, dtype=DTYPE).reshape(-1, S.space.flat.ambient)])
    return Subspace(rows, S.field.p, S.space.flat.ambient) == S.dual.flat
