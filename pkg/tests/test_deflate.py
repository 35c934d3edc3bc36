import numpy as np
import pytest

from codegen import F2, F3, F4, ex1_code, five_qubit, random_code, random_isotropic
from qdeflate.counting import enumerate_prefix_codes
from qdeflate.deflate import (
    deflate,
    dual_commutation_check,
    inclusion_diagnostic,
    puncture,
    puncture_prefix_code,
    shorten,
)
from qdeflate.errors import QDeflateError
from qdeflate.stabilizer import StabilizerCode, min_distance, new_stabilizer, trivial_code
from qdeflate.symplectic import SympVector, prefix_rows, project_rows


def V(F, a, b):
    return SympVector.of(F, a, b)


def span(F, n, *vecs):
    return new_stabilizer(F, n, [V(F, a, b) for a, b in vecs])


def test_example1_best_prefix():
    S = ex1_code()
    rep = deflate(S, span(F2, 2, ((1, 1), (1, 1))), [1, 2])
    assert str(rep.measured) == "[[6,2,2]]_2"
    assert rep.code.space.is_isotropic()


@pytest.mark.parametrize(
    "a, b", [((0, 0), (0, 1)), ((0, 1), (0, 0)), ((0, 1), (0, 1)), ((0, 0), (1, 0)), ((1, 0), (0, 0)), ((1, 0), (1, 0))]
)
def test_example1_punc_short_prefixes(a, b):
    rep = deflate(ex1_code(), span(F2, 2, (a, b)), [1, 2])
    assert str(rep.measured) == "[[6,2,1]]_2"


def test_example1_all_prefixes_distance_profile():
    S = ex1_code()
    good = []
    for Sp in enumerate_prefix_codes(2, 1, 2, 1):
        rep = deflate(S, Sp, [1, 2], predict=False)
        assert (rep.measured.n, rep.measured.k) == (6, 2)
        if rep.measured.d == 2:
            good.append(str(Sp.space.vectors()[0]))
    assert sorted(good) == ["0,0|1,1", "0,1|1,1", "1,0|1,1", "1,1|1,1"]


def test_shorten_and_puncture_five_qubit():
    S = five_qubit()
    assert str(shorten(S, [1]).measured) == "[[4,2,2]]_2"
    assert str(puncture(S, [1], [[V(F2, (1,), (0,))]]).measured) == "[[4,1,2]]_2"


def test_deflate_rejects_bad_inputs():
    S = five_qubit()
    with pytest.raises(ValueError):
        deflate(S, trivial_code(F2, 2), [1])
    with pytest.raises(ValueError):
        deflate(S, trivial_code(F2, 2), [1, 1])
    with pytest.raises(ValueError):
        deflate(S, trivial_code(F2, 1), [6])
    with pytest.raises(ValueError):
        deflate(S, trivial_code(F3, 1), [1])


def test_puncture_local_span_checks():
    S = five_qubit()
    with pytest.raises(ValueError):
        puncture_prefix_code(S, [1], [[V(F2, (1,), (0,)), V(F2, (0,), (1,))]])
    S4 = random_code(np.random.default_rng(0), F4, 3, 1)
    with pytest.raises(QDeflateError):
        puncture_prefix_code(S4, [1], [[V(F4, (1,), (0,)), V(F4, (1,), (0,))]])
    # tr(1 * w) = 1, so (1|0) and (0|w) do not commute
    with pytest.raises(QDeflateError):
        puncture_prefix_code(S4, [1], [[V(F4, (1,), (0,)), V(F4, (0,), (2,))]])
    assert puncture_prefix_code(S4, [1], [[V(F4, (1,), (0,)), V(F4, (0,), (1,))]]).k == 0


def test_deflation_matches_definition_by_enumeration():
    rng = np.random.default_rng(17)
    for F, n in [(F2, 5), (F3, 3), (F4, 3)]:
        for _ in range(4):
            S = random_code(rng, F, n, 1)
            t = 2
            I = sorted((rng.choice(n, t, replace=False) + 1).tolist())
            pos = [i - 1 for i in I]
            Sp = StabilizerCode(random_isotropic(rng, F, t, F.r * int(rng.integers(0, t + 1))))
            out = deflate(S, Sp, I, measure=False, predict=False).space
            members = set()
            for e in S.space.flat.elements():
                if Sp.space.flat.contains(prefix_rows(F, n, e[None], pos)[0]):
                    members.add(tuple(project_rows(F, n, e[None], pos)[0]))
            assert len(members) == F.p**out.dim
            assert all(out.flat.contains(np.array(m)) for m in members)


def test_theorem2_counterexample_without_t_below_d():
    # hypothesis S'^perp <= pi(S) holds, but XX restricted by X on position 1 leaves X on position 2
    S = span(F2, 2, ((1, 1), (0, 0)))
    Sp = span(F2, 1, ((1,), (0,)))
    rep = deflate(S, Sp, [1])
    assert rep.theorem2_applicable and not rep.theorem1_applicable
    assert rep.prediction.t_below_d is False
    assert rep.predicted_k == 1 and rep.measured.k == 0
    assert rep.prediction_holds() is False


def test_theorem1_prediction_five_qubit():
    S = five_qubit()
    for Sp in enumerate_prefix_codes(2, 1, 2, 1):
        rep = deflate(S, Sp, [2, 4])
        assert rep.theorem1_applicable
        assert (rep.measured.n, rep.measured.k) == (3, 2)
        assert rep.measured.d >= 1
        assert rep.prediction_holds()


def test_inclusion_diagnostic_chain():
    S = five_qubit()
    Sp = span(F2, 1, ((1,), (0,)))
    diag = inclusion_diagnostic(S, Sp, [1])
    assert all(diag.values())


def test_dual_commutation_requires_t_below_d():
    with pytest.raises(ValueError):
        dual_commutation_check(ex1_code(), trivial_code(F2, 2), [1, 2])


def test_dual_commutation_on_five_qubit():
    S = five_qubit()
    for kp in (0, 1, 2):
        for Sp in enumerate_prefix_codes(2, 1, 2, kp):
            assert dual_commutation_check(S, Sp, [1, 3])


def test_report_json_round_trip():
    import json

    rep = deflate(ex1_code(), span(F2, 2, ((1, 1), (1, 1))), [1, 2])
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["positions"] == [1, 2]
    assert min_distance(rep.code) == 2


def test_theorem2_prediction_holds_when_t_below_d():
    rng = np.random.default_rng(44)
    applicable = 0
    for _ in range(300):
        n = int(rng.integers(3, 7))
        S = random_code(rng, F2, n, int(rng.integers(1, n)))
        d = min_distance(S)
        if d < 2:
            continue
        t = int(rng.integers(1, d))
        I = sorted((rng.choice(n, t, replace=False) + 1).tolist())
        for Sp in enumerate_prefix_codes(2, 1, t, int(rng.integers(0, t + 1))):
            rep = deflate(S, Sp, I)
            if rep.theorem2_applicable:
                applicable += 1
                assert rep.measured.k == rep.predicted_k
                assert rep.prediction_holds()
    assert applicable > 20
