import itertools

import numpy as np
import pytest

from codegen import F2, F3, F4, ex1_code, five_qubit, random_code
from qdeflate.errors import BudgetExceeded, DimensionError, IsotropyError, UndefinedDistance
from qdeflate.stabilizer import (
    StabilizerCode,
    dual_span_check,
    extended_matrix,
    is_pure,
    min_distance,
    min_stabilizer_weight,
    new_stabilizer,
    trivial_code,
)
from qdeflate.symplectic import SympSubspace, SympVector


def oracle_distance(S):
    """Brute force over F_2^{2n}: commuting, outside S, smallest weight. Also purity."""
    n = S.n
    basis = S.space.basis
    members = {
        tuple(np.array(c) @ basis % 2) for c in itertools.product(range(2), repeat=basis.shape[0])
    }
    best = n + 1
    low_dual = n + 1
    for v in itertools.product(range(2), repeat=2 * n):
        v = np.array(v)
        a, b = v[:n], v[n:]
        if any((a @ g[n:] + b @ g[:n]) % 2 for g in basis):
            continue
        w = int(np.count_nonzero(a | b))
        if w and w < low_dual:
            low_dual = w
        if tuple(v) not in members:
            best = min(best, w)
    return best, low_dual >= best


def test_new_stabilizer_examples():
    S = new_stabilizer(F2, 2, [SympVector.of(F2, (1, 1), (0, 0)), SympVector.of(F2, (0, 0), (1, 1))])
    assert (S.n, S.k) == (2, 0)
    with pytest.raises(IsotropyError) as err:
        new_stabilizer(F2, 1, [SympVector.of(F2, (1,), (0,)), SympVector.of(F2, (0,), (1,))])
    assert err.value.pair == (1, 2)
    S3 = new_stabilizer(F3, 1, [SympVector.of(F3, (1,), (1,))])
    assert S3.k == 0 and S3.space.dim == 1


def test_f4_dimension_must_be_multiple_of_r():
    with pytest.raises(DimensionError):
        new_stabilizer(F4, 1, [SympVector.of(F4, (1,), (0,))])
    S = new_stabilizer(F4, 1, [SympVector.of(F4, (1,), (0,)), SympVector.of(F4, (2,), (0,))])
    assert S.k == 0


def test_example1_code():
    S = ex1_code()
    assert str(S.parameters(with_distance=True)) == "[[8,1,2]]_2"
    assert is_pure(S)


def test_five_qubit_code():
    S = five_qubit()
    assert min_distance(S) == 3 and is_pure(S)
    assert oracle_distance(S) == (3, True)


def test_distance_examples():
    rep = new_stabilizer(
        F2, 3, [SympVector.of(F2, (0, 0, 0), (1, 1, 0)), SympVector.of(F2, (0, 0, 0), (0, 1, 1))]
    )
    assert min_distance(rep) == 1
    assert min_distance(trivial_code(F2, 2)) == 1
    with pytest.raises(UndefinedDistance):
        min_distance(new_stabilizer(F2, 1, [SympVector.of(F2, (1,), (0,))]))


def test_distance_matches_oracle_on_random_codes():
    rng = np.random.default_rng(2024)
    for _ in range(60):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, n + 1))
        S = random_code(rng, F2, n, k)
        d = min_distance(S)
        assert (d, is_pure(S, d)) == oracle_distance(S)


def test_extended_matrix_spans_dual():
    rng = np.random.default_rng(8)
    for F in (F2, F3, F4):
        S = random_code(rng, F, 3, 1)
        E = extended_matrix(S)
        assert E.shape[0] == S.dual.dim
        assert dual_span_check(S, E[S.space.dim :])
        assert not dual_span_check(S, E[S.space.dim + 1 :])


def test_budget_is_enforced(monkeypatch):
    S = ex1_code()
    fresh = StabilizerCode(S.space)
    with pytest.raises(BudgetExceeded):
        min_distance(fresh, budget=10)
    monkeypatch.setenv("QDEFLATE_BUDGET", "4")
    with pytest.raises(BudgetExceeded):
        min_distance(StabilizerCode(S.space))


def test_min_stabilizer_weight():
    assert min_stabilizer_weight(five_qubit()) == 4
    assert min_stabilizer_weight(trivial_code(F2, 3)) is None


def test_nonbinary_distance_against_enumeration():
    rng = np.random.default_rng(99)
    for F, n in [(F3, 3), (F4, 2)]:
        for _ in range(5):
            S = random_code(rng, F, n, 1)
            dual = S.dual
            best = n + 1
            for e in dual.flat.elements():
                if not S.space.flat.contains(e):
                    v = SympSubspace.from_rows(F, n, e[None, :]).vectors()[0]
                    best = min(best, sum(1 for x, y in zip(v.a, v.b) if x or y))
            assert min_distance(S) == best
