"""Search over prefix codes for deflations that beat the generic d - t bound.

Low-suffix-weight vectors of S^perp \\ S and of S are collected once per
position set; a prefix code passes the filter when none of their prefixes
land in the forbidden parts of its dual. Passing is only sufficient for
d~ >= d - t + 1, so every evaluated candidate is also measured directly.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Literal

import numpy as np

from .deflate import DeflationReport, PrefixCode, deflate
from .fpla import DTYPE
from .stabilizer import StabilizerCode, min_distance, scan_dual
from .stabfile import format_flat_row
from .symplectic import SympVector, positions0, prefix_rows, project_rows, symp_dual, unflatten, weights


@dataclass
class MSet:
    source: Literal["dual_minus_stab", "stab"]
    t: int
    bound: int
    n: int
    elements: np.ndarray  # flat rows over n positions

    def __len__(self) -> int:
        return self.elements.shape[0]

    def vectors(self, field) -> list[SympVector]:
        return [unflatten(field, self.n, row) for row in self.elements]


def build_m_sets(
    S: StabilizerCode, I: Iterable[int], d: int | None = None, budget: int | None = None
) -> tuple[MSet, MSet]:
    """Elements of S^perp \\ S and of S whose weight outside I is at most d - t."""
    F = S.field
    pos = positions0(I, S.n)
    t = len(pos)
    true_d = min_distance(S, budget) if S.k > 0 else None
    if d is None:
        d = true_d
    bound = d - t
    width = 2 * F.r * S.n
    dual_rows: list[np.ndarray] = []
    stab_rows: list[np.ndarray] = []
    if bound >= 0:
        for elems, in_s, w in scan_dual(S, budget):
            suffix_w = weights(F, S.n - t, project_rows(F, S.n, elems, pos))
            low = suffix_w <= bound
            dual_rows.append(elems[low & ~in_s])
            stab_rows.append(elems[low & in_s])
            if d == true_d:
                assert (w[low & ~in_s] == d).all(), "low-suffix dual element without weight d"
    dual_m = np.vstack(dual_rows) if dual_rows else np.zeros((0, width), dtype=DTYPE)
    stab_m = np.vstack(stab_rows) if stab_rows else np.zeros((0, width), dtype=DTYPE)
    return (
        MSet("dual_minus_stab", t, bound, S.n, dual_m),
        MSet("stab", t, bound, S.n, stab_m),
    )


def improvement_criterion(
    S: StabilizerCode, Sp: PrefixCode, I: Iterable[int], m_sets: tuple[MSet, MSet]
) -> bool:
    """True when no flagged prefix falls where it would drag the distance to d - t.

    Prefixes of the dual set must avoid S'^perp entirely; prefixes of the
    stabilizer set must avoid S'^perp \\ S'.
    """
    F = S.field
    pos = positions0(I, S.n)
    dual_m, stab_m = m_sets
    prefix_dual = symp_dual(Sp.space).flat
    if len(dual_m):
        pre = prefix_rows(F, S.n, dual_m.elements, pos)
        if prefix_dual.contains_rows(pre).any():
            return False
    if len(stab_m):
        pre = prefix_rows(F, S.n, stab_m.elements, pos)
        if (prefix_dual.contains_rows(pre) & ~Sp.space.flat.contains_rows(pre)).any():
            return False
    return True


@dataclass
class Candidate:
    index: int
    prefix: PrefixCode
    criterion: bool
    report: DeflationReport | None

    @property
    def distance(self) -> int | None:
        if self.report is None or self.report.measured is None:
            return None
        return self.report.measured.d

    def to_dict(self) -> dict[str, Any]:
        F = self.prefix.field
        return {
            "index": self.index,
            "prefix_rows": [format_flat_row(F, self.prefix.n, row) for row in self.prefix.space.basis],
            "criterion": self.criterion,
            "evaluated": self.report is not None,
            "report": self.report.to_dict() if self.report is not None else None,
        }


@dataclass
class SearchResult:
    ranked: list[Candidate]
    examined: int = 0
    criterion_passes: int = 0
    distance_computations: int = 0
    soundness_violations: list[int] = field(default_factory=list)
    partial: bool = False
    seconds: float = 0.0

    @property
    def best(self) -> Candidate | None:
        return self.ranked[0] if self.ranked else None

    def stats(self) -> dict[str, Any]:
        return {
            "examined": self.examined,
            "criterion_passes": self.criterion_passes,
            "distance_computations": self.distance_computations,
            "soundness_violations": list(self.soundness_violations),
            "partial": self.partial,
            "seconds": round(self.seconds, 6),
        }


def _evaluate(args: tuple) -> Candidate:
    index, S, Sp, I, m_sets, mode, budget = args
    crit = improvement_criterion(S, Sp, I, m_sets)
    report = None
    if mode == "exhaustive" or crit:
        report = deflate(S, Sp, I, budget=budget)
        report.improvement_criterion_holds = crit
    return Candidate(index, Sp, crit, report)


def _rank_key(c: Candidate) -> tuple[int, int]:
    d = c.distance
    return (-(d if d is not None else -1), c.index)


def search_deflations(
    S: StabilizerCode,
    I: Iterable[int],
    kp: int,
    mode: Literal["criterion_filter", "exhaustive"] = "exhaustive",
    *,
    jobs: int = 1,
    budget: int | None = None,
    limit: int | None = None,
) -> SearchResult:
    """Try every [[t, k']] prefix code on the positions I.

    ``limit`` caps the number of candidates; hitting it marks the result
    partial. Output does not depend on ``jobs``.
    """
    from .counting import enumerate_prefix_codes

    if mode not in ("criterion_filter", "exhaustive"):
        raise ValueError(f"unknown search mode {mode!r}")
    start = time.perf_counter()
    I = list(I)
    F = S.field
    t = len(positions0(I, S.n))
    d = min_distance(S, budget)
    m_sets = build_m_sets(S, I, d, budget)
    prefixes = enumerate_prefix_codes(F.p, F.r, t, kp, field=F, budget=budget)
    tasks = []
    partial = False
    for index, Sp in enumerate(prefixes):
        if limit is not None and index >= limit:
            partial = True
            break
        tasks.append((index, S, Sp, I, m_sets, mode, budget))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            candidates = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        candidates = [_evaluate(task) for task in tasks]

    result = SearchResult(ranked=[], partial=partial)
    result.examined = len(candidates)
    for c in candidates:
        result.criterion_passes += c.criterion
        if c.report is not None and c.report.measured is not None and c.report.measured.d is not None:
            result.distance_computations += 1
        rep = c.report
        if (
            c.criterion
            and rep is not None
            and (rep.theorem1_applicable or rep.theorem2_applicable)
            and c.distance is not None
            and c.distance < d - t + 1
        ):
            result.soundness_violations.append(c.index)
    result.ranked = sorted((c for c in candidates if c.report is not None), key=_rank_key)
    result.seconds = time.perf_counter() - start
    return result
