"""Deflation of stabilizer codes, with shortening and puncturing as special cases.

Deflating S on the positions I with respect to a prefix code S' keeps the
elements of S whose restriction to I lies in S', then deletes the positions
in I. Dimensions are always measured from the computed basis; the theorem
predictions are attached to the report as cross-checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionError, QDeflateError
from .fpla import DTYPE, Subspace, kernel_basis
from .stabilizer import (
    CodeParameters,
    StabilizerCode,
    is_pure,
    min_distance,
    scan_space,
    trivial_code,
)
from .symplectic import (
    SympSubspace,
    SympVector,
    flatten,
    gram,
    positions0,
    prefix_rows,
    project_rows,
    symp_dual,
)

PrefixCode = StabilizerCode


def deflate_space(V: SympSubspace, Q: SympSubspace, pos0: Sequence[int]) -> SympSubspace:
    """Elements of V whose prefix on ``pos0`` lies in Q, with the prefix deleted.

    Works for any F_p-subspace V, isotropic or not; Q lives on len(pos0)
    positions. The prefix condition is imposed as the kernel of the products
    with a basis of Q's symplectic dual.
    """
    F, n = V.field, V.n
    t = len(pos0)
    if Q.n != t or Q.field != F:
        raise ValueError(f"prefix space has length {Q.n}, expected |I|={t}")
    width_out = 2 * F.r * (n - t)
    if V.dim == 0 or width_out == 0:
        return SympSubspace.zero(F, n - t)
    B = symp_dual(Q).basis
    if B.shape[0]:
        P = prefix_rows(F, n, V.basis, pos0)
        C = (P @ gram(F, t) @ B.T) % F.p
        K = kernel_basis(C.T, F.p)
        if K.shape[0] == 0:
            return SympSubspace.zero(F, n - t)
        kept = (K @ V.basis) % F.p
    else:
        kept = V.basis
    rows = project_rows(F, n, kept, pos0).reshape(-1, width_out)
    return SympSubspace.from_rows(F, n - t, rows)


@dataclass
class Prediction:
    t: int
    d: int | None
    pure: bool | None
    t_below_d: bool | None
    theorem1_applicable: bool
    theorem2_applicable: bool
    predicted_k: int | None
    predicted_d_lower_bound: int | None
    prefix_weight_condition: bool | None
    inclusions: dict[str, bool]


@dataclass
class DeflationReport:
    input: CodeParameters
    prefix: CodeParameters
    positions: tuple[int, ...]
    space: SympSubspace
    code: StabilizerCode | None
    measured: CodeParameters | None
    prediction: Prediction | None = None
    improvement_criterion_holds: bool | None = None
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def theorem1_applicable(self) -> bool:
        return bool(self.prediction and self.prediction.theorem1_applicable)

    @property
    def theorem2_applicable(self) -> bool:
        return bool(self.prediction and self.prediction.theorem2_applicable)

    @property
    def predicted_k(self) -> int | None:
        return self.prediction.predicted_k if self.prediction else None

    @property
    def predicted_d_lower_bound(self) -> int | None:
        return self.prediction.predicted_d_lower_bound if self.prediction else None

    def prediction_holds(self) -> bool | None:
        """Whether the measured parameters meet the attached prediction."""
        pred = self.prediction
        if pred is None or pred.predicted_k is None or self.measured is None:
            return None
        ok = self.measured.k == pred.predicted_k
        if pred.predicted_d_lower_bound is not None and self.measured.d is not None:
            ok = ok and self.measured.d >= pred.predicted_d_lower_bound
        return ok

    def to_dict(self) -> dict[str, Any]:
        from .stabfile import format_flat_row

        F = self.space.field
        out: dict[str, Any] = {
            "input": _params_dict(self.input),
            "prefix": _params_dict(self.prefix),
            "positions": list(self.positions),
            "output": _params_dict(self.measured) if self.measured else None,
            "output_dim_fp": self.space.dim,
            "rows": [format_flat_row(F, self.space.n, row) for row in self.space.basis],
        }
        if self.prediction is not None:
            pred = self.prediction
            out["theorems"] = {
                "t_below_d": pred.t_below_d,
                "theorem1_applicable": pred.theorem1_applicable,
                "theorem2_applicable": pred.theorem2_applicable,
                "predicted_k": pred.predicted_k,
                "predicted_d_lower_bound": pred.predicted_d_lower_bound,
                "prefix_weight_condition": pred.prefix_weight_condition,
                "inclusions": pred.inclusions,
                "prediction_holds": self.prediction_holds(),
            }
        out["improvement_criterion_holds"] = self.improvement_criterion_holds
        out["seconds"] = round(self.seconds, 6)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _params_dict(P: CodeParameters) -> dict[str, Any]:
    return {"n": P.n, "k": P.k, "d": P.d, "q": P.q, "pure": P.pure, "label": str(P)}


def _measure(code: StabilizerCode, budget: int | None, notes: list[str]) -> CodeParameters:
    d = pure = None
    if code.k > 0:
        try:
            d = min_distance(code, budget)
            pure = is_pure(code, d, budget)
        except BudgetExceeded as exc:
            notes.append(f"distance not measured: {exc}")
    return CodeParameters(code.n, code.k, code.field.q, d, pure)


def deflate(
    S: StabilizerCode,
    Sp: PrefixCode,
    I: Iterable[int],
    *,
    measure: bool = True,
    predict: bool = True,
    budget: int | None = None,
) -> DeflationReport:
    """Deflate S on the 1-based positions I with respect to the prefix code Sp.

    Prefix coordinates follow the ascending order of I.
    """
    start = time.perf_counter()
    I = list(I)
    pos = positions0(I, S.n)
    if len(pos) != len(I):
        raise ValueError(f"repeated positions in {I}")
    if len(pos) != Sp.n:
        raise ValueError(f"|I|={len(pos)} but the prefix code has length {Sp.n}")
    if Sp.field != S.field:
        raise ValueError("prefix code is over a different field")
    space = deflate_space(S.space, Sp.space, pos)
    if not space.is_isotropic():
        raise AssertionError("deflated subspace is not isotropic")
    notes: list[str] = []
    code = measured = None
    try:
        code = StabilizerCode(space)
    except DimensionError as exc:
        notes.append(str(exc))
    if code is not None:
        measured = _measure(code, budget, notes) if measure else code.parameters()
    prediction = None
    if predict:
        try:
            prediction = theorem_bounds(S, Sp, I, budget=budget)
        except BudgetExceeded as exc:
            notes.append(f"theorem checks skipped: {exc}")
    report = DeflationReport(
        input=S.parameters(),
        prefix=Sp.parameters(),
        positions=tuple(p + 1 for p in pos),
        space=space,
        code=code,
        measured=measured,
        prediction=prediction,
        notes=notes,
    )
    report.input = _known_params(S)
    report.seconds = time.perf_counter() - start
    return report


def _known_params(S: StabilizerCode) -> CodeParameters:
    return CodeParameters(S.n, S.k, S.field.q, S._d, S._pure)


def shorten(S: StabilizerCode, I: Iterable[int], **kwargs: Any) -> DeflationReport:
    """Deflation with the zero prefix code: keep elements vanishing on I."""
    I = list(I)
    return deflate(S, trivial_code(S.field, len(set(I))), I, **kwargs)


def puncture_prefix_code(
    S: StabilizerCode, I: Sequence[int], local_spans: Sequence[Sequence[SympVector]]
) -> PrefixCode:
    """The [[t, 0]] prefix code spanned by the block-diagonal local vectors.

    ``local_spans[i]`` belongs to position ``I[i]``; the blocks are placed by
    the ascending order of I.
    """
    F = S.field
    if len(local_spans) != len(I):
        raise ValueError(f"{len(local_spans)} local spans for {len(I)} positions")
    order = sorted(range(len(I)), key=lambda i: I[i])
    t = len(I)
    rows = []
    for slot, i in enumerate(order):
        vecs = local_spans[i]
        if len(vecs) != F.r:
            raise ValueError(f"position {I[i]} needs {F.r} local vectors, got {len(vecs)}")
        local = np.array([flatten(v) for v in vecs], dtype=DTYPE)
        if any(v.n != 1 or v.field != F for v in vecs):
            raise ValueError("local vectors must be single-position vectors over the code's field")
        if Subspace(local, F.p, 2 * F.r).dim != F.r:
            raise QDeflateError(f"local vectors at position {I[i]} are F_p-dependent")
        for row in local:
            full = np.zeros(2 * F.r * t, dtype=DTYPE)
            full[slot * F.r : (slot + 1) * F.r] = row[: F.r]
            full[F.r * t + slot * F.r : F.r * t + (slot + 1) * F.r] = row[F.r :]
            rows.append(full)
    space = SympSubspace.from_rows(F, t, np.array(rows, dtype=DTYPE).reshape(len(rows), 2 * F.r * t))
    return StabilizerCode(space)


def puncture(
    S: StabilizerCode,
    I: Sequence[int],
    local_spans: Sequence[Sequence[SympVector]],
    **kwargs: Any,
) -> DeflationReport:
    """Deflation with the block-diagonal span of per-position local vectors."""
    return deflate(S, puncture_prefix_code(S, I, local_spans), I, **kwargs)


def inclusion_diagnostic(S: StabilizerCode, Sp: PrefixCode, I: Iterable[int]) -> dict[str, bool]:
    """Which links of the chain (pi S)^perp <= S' <= S'^perp <= pi S hold.

    ``pi S`` here is the restriction of S to the positions in I.
    """
    projected = S.space.prefix(I)
    projected_dual = symp_dual(projected)
    prefix_dual = symp_dual(Sp.space)
    return {
        "projected_dual_in_prefix": Sp.space.contains(projected_dual),
        "prefix_in_prefix_dual": prefix_dual.contains(Sp.space),
        "prefix_dual_in_projected": projected.contains(prefix_dual),
        "projected_dual_in_projected": projected.contains(projected_dual),
    }


def prefix_weight_condition(
    S: StabilizerCode, Sp: PrefixCode, I: Iterable[int], d: int, budget: int | None = None
) -> bool:
    """Every element of S whose prefix is in S'^perp but not S' has weight >= d."""
    F = S.field
    pos = positions0(I, S.n)
    prefix_dual = symp_dual(Sp.space).flat
    for elems, w in scan_space(S.space, budget):
        pre = prefix_rows(F, S.n, elems, pos)
        bad = prefix_dual.contains_rows(pre) & ~Sp.space.flat.contains_rows(pre)
        if (w[bad] < d).any():
            return False
    return True


def theorem_bounds(
    S: StabilizerCode, Sp: PrefixCode, I: Iterable[int], budget: int | None = None
) -> Prediction:
    """Check the hypotheses of both parameter theorems and attach their predictions."""
    I = list(I)
    F = S.field
    t = len(set(I))
    d = pure = t_below_d = None
    if S.k > 0:
        d = min_distance(S, budget)
        pure = is_pure(S, d, budget)
        t_below_d = t < d
    projected = S.space.prefix(I)
    theorem1 = bool(pure and t_below_d)
    if theorem1 and projected.dim != 2 * F.r * t:
        raise AssertionError(
            f"pure code with t < d but the restriction to I has dimension {projected.dim} != {2 * F.r * t}"
        )
    theorem2 = projected.contains(symp_dual(Sp.space))
    predicted_k = S.k + Sp.k if (theorem1 or theorem2) else None
    cond = None
    bound = None
    if theorem1:
        bound = d - t
    if theorem2 and d is not None:
        cond = prefix_weight_condition(S, Sp, I, d, budget)
        if cond:
            bound = d - t
    return Prediction(
        t=t,
        d=d,
        pure=pure,
        t_below_d=t_below_d,
        theorem1_applicable=theorem1,
        theorem2_applicable=theorem2,
        predicted_k=predicted_k,
        predicted_d_lower_bound=bound,
        prefix_weight_condition=cond,
        inclusions=inclusion_diagnostic(S, Sp, I),
    )


def dual_commutation_check(
    S: StabilizerCode, Sp: PrefixCode, I: Iterable[int], budget: int | None = None
) -> bool:
    """Compare the dual of the deflated code with the deflation of the dual.

    The second side deflates S^perp with respect to S'^perp. Requires t < d.
    """
    I = list(I)
    pos = positions0(I, S.n)
    d = min_distance(S, budget)
    if len(pos) >= d:
        raise ValueError(f"dual commutation needs t < d, got t={len(pos)}, d={d}")
    left = symp_dual(deflate_space(S.space, Sp.space, pos))
    right = deflate_space(S.dual, symp_dual(Sp.space), pos)
    return left == right
