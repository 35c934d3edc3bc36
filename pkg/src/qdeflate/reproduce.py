"""Reproduction of the worked [[8,1,2]]_2 example and the prefix-count tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from .counting import count_punc_short, count_stabilizers, enumerate_prefix_codes
from .deflate import deflate
from .stabfile import bundled_path, parse_stab
from .stabilizer import StabilizerCode, new_stabilizer
from .symplectic import SympSubspace, SympVector

# prefixes reachable by one puncturing and one shortening on two qubits
PUNC_SHORT_PREFIXES = [
    ((0, 0), (0, 1)),
    ((0, 1), (0, 0)),
    ((0, 1), (0, 1)),
    ((0, 0), (1, 0)),
    ((1, 0), (0, 0)),
    ((1, 0), (1, 0)),
]
BEST_PREFIX = ((1, 1), (1, 1))

TABLE_T2 = {
    "punc_short": {2: [6, 30, 270], 3: [8, 80, 2240]},
    "deflation": {2: [15, 5355, 50868675], 3: [40, 298480, 494845859200]},
}
TABLE_T3 = {
    "punc_short": {2: [45, 6885, 14768325], 3: [120, 275520, 49075622400]},
    "deflation": {2: [315, 213648435, "4.89·10^17"], 3: [3640, 4503097318720, "2.80·10^27"]},
}


def example1_code() -> StabilizerCode:
    S, _ = parse_stab(bundled_path("ex1.stab").read_text())
    return S


def prefix_code(S: StabilizerCode, a: tuple[int, ...], b: tuple[int, ...]) -> StabilizerCode:
    return new_stabilizer(S.field, len(a), [SympVector.of(S.field, a, b)])


@dataclass
class Example1Result:
    outcomes: dict[str, str] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_example1() -> Example1Result:
    """Run all 15 [[2,1]] deflations of the [[8,1,2]] code on positions 1, 2."""
    S = example1_code()
    out = Example1Result()
    if str(S.parameters(with_distance=True)) != "[[8,1,2]]_2":
        out.failures.append(f"input code is {S.parameters(with_distance=True)}, expected [[8,1,2]]_2")
    expected = {}
    for a, b in PUNC_SHORT_PREFIXES:
        expected[SympSubspace.from_vectors(S.field, 2, [SympVector.of(S.field, a, b)])] = "[[6,2,1]]_2"
    expected[SympSubspace.from_vectors(S.field, 2, [SympVector.of(S.field, *BEST_PREFIX)])] = "[[6,2,2]]_2"
    seen = 0
    for Sp in enumerate_prefix_codes(2, 1, 2, 1, field=S.field):
        seen += 1
        rep = deflate(S, Sp, [1, 2], predict=False)
        label = str(rep.measured)
        name = str(Sp.space.vectors()[0])
        out.outcomes[name] = label
        want = expected.get(Sp.space)
        if want is not None and label != want:
            out.failures.append(f"prefix {name}: measured {label}, expected {want}")
    if seen != 15:
        out.failures.append(f"enumerated {seen} prefix codes, expected 15")
    return out


def table_values(p: int, t: int, kp: int = 1) -> dict[str, list[int]]:
    return {
        "punc_short": [count_punc_short(p, r, t, kp) for r in (1, 2, 3)],
        "deflation": [count_stabilizers(p, r, t, kp) for r in (1, 2, 3)],
    }
