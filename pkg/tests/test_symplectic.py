import itertools

import numpy as np
import pytest

from codegen import F2, F3, F4, random_isotropic, random_subspace
from qdeflate.deflate import deflate_space
from qdeflate.symplectic import (
    SympSubspace,
    SympVector,
    flat_products,
    flatten,
    prefix_rows,
    project_rows,
    project,
    sigma,
    symp_dual,
    symp_product,
    symp_weight,
    unflatten,
)


def V(F, a, b):
    return SympVector.of(F, a, b)


def test_product_examples():
    assert symp_product(V(F2, (1, 0), (0, 0)), V(F2, (0, 0), (1, 0))) == 1
    assert symp_product(V(F2, (1, 1), (1, 1)), V(F2, (1, 0), (1, 0))) == 0
    v = V(F4, (2, 3), (1, 2))
    assert symp_product(v, v) == 0


def test_weight_examples():
    assert symp_weight(V(F2, (1, 0, 1), (0, 1, 1))) == 3
    assert symp_weight(V(F2, (0, 0), (0, 0))) == 0
    assert symp_weight(V(F4, (0, 2), (0, 3))) == 1


def test_project_examples():
    v = V(F3, (1, 2, 0), (2, 1, 1))
    assert project(v, {1, 2}) == V(F3, (0,), (1,))
    assert project(v, set()) == v
    assert project(V(F2, (1, 1), (0, 1)), {2}) == V(F2, (1,), (0,))
    with pytest.raises(ValueError):
        project(v, {4})


def test_sigma_examples():
    A = [V(F2, (1,), (1,))]
    assert sigma(A, {2}, V(F2, (1, 1), (0, 0))) == (1,)
    assert sigma(A, {2}, V(F2, (1, 1), (0, 1))) == (0,)
    assert sigma(A, {1}, V(F2, (0, 1), (0, 1))) == (0,)


def test_flatten_examples():
    assert flatten(V(F2, (1, 0), (0, 1))).tolist() == [1, 0, 0, 1]
    assert flatten(V(F4, (2,), (0,))).tolist() == [0, 1, 0, 0]


def test_dual_of_example_prefix():
    S = SympSubspace.from_vectors(F2, 2, [V(F2, (1, 1), (1, 1))])
    expected = SympSubspace.from_vectors(
        F2, 2, [V(F2, (1, 1), (1, 1)), V(F2, (1, 0), (1, 0)), V(F2, (1, 1), (0, 0))]
    )
    assert symp_dual(S) == expected
    assert symp_dual(SympSubspace.zero(F2, 2)) == SympSubspace.full(F2, 2)


@pytest.mark.parametrize("F, n", [(F2, 2), (F3, 1), (F4, 1), (F4, 2)])
def test_dual_against_enumeration(F, n):
    rng = np.random.default_rng(3)
    elems = list(itertools.product(range(F.q), repeat=2 * n))
    for dim in range(0, 2 * F.r * n + 1, max(1, F.r)):
        U = SympSubspace(F, n, random_subspace(rng, F.p, 2 * F.r * n, dim))
        gens = U.vectors()
        members = [
            e for e in elems if all(symp_product(V(F, e[:n], e[n:]), g) == 0 for g in gens)
        ]
        D = symp_dual(U)
        assert len(members) == F.p**D.dim
        assert all(flatten(V(F, e[:n], e[n:])) in D.flat for e in members)


@pytest.mark.parametrize("F, n", [(F2, 3), (F3, 2), (F4, 2)])
def test_flat_form_matches_product(F, n):
    rng = np.random.default_rng(7)
    for _ in range(50):
        u = V(F, rng.integers(0, F.q, n), rng.integers(0, F.q, n))
        w = V(F, rng.integers(0, F.q, n), rng.integers(0, F.q, n))
        assert unflatten(F, n, flatten(u)) == u
        assert flat_products(F, n, flatten(u), flatten(w))[0, 0] == symp_product(u, w)


def test_deflate_space_against_enumeration():
    rng = np.random.default_rng(21)
    for F, n, t in [(F2, 3, 2), (F3, 3, 1), (F4, 2, 1)]:
        for _ in range(5):
            width = 2 * F.r * n
            Vs = SympSubspace(F, n, random_subspace(rng, F.p, width, int(rng.integers(0, width + 1))))
            Q = SympSubspace(F, t, random_subspace(rng, F.p, 2 * F.r * t, int(rng.integers(0, 2 * F.r * t + 1))))
            I = sorted(rng.choice(n, t, replace=False).tolist())
            kept = [
                project_rows(F, n, e[None, :], I)[0]
                for e in Vs.flat.elements()
                if Q.flat.contains(prefix_rows(F, n, e[None, :], I)[0])
            ]
            out = deflate_space(Vs, Q, I)
            assert SympSubspace.from_rows(F, n - t, np.array(kept).reshape(-1, 2 * F.r * (n - t))) == out


def test_isotropic_generator_is_isotropic():
    rng = np.random.default_rng(1)
    for F in (F2, F3, F4):
        S = random_isotropic(rng, F, 3, 3 * F.r - 1)
        assert S.is_isotropic()
        assert S.dim + symp_dual(S).dim == 2 * F.r * 3
