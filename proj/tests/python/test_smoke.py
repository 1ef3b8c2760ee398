import json
import pathlib
from fractions import Fraction
from math import comb, factorial

import pytest

import bagchain

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "tests" / "fixtures"


def stirling_closed(n, k):
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def test_worked_example():
    entries = dict((tuple(map(tuple, blocks)), mult) for blocks, mult in bagchain.partitions([2, 1], 2))
    assert entries == {((1, 1), (1, 0)): 2, ((2, 0), (0, 1)): 1}
    assert bagchain.partition_counts([2, 1], 2) == {"distinct": 2, "cardinality": 3, "stirling2": 3}


def test_generators_and_counts():
    for alpha in ([3, 1], [1, 1, 1], [2, 2], [4]):
        n = sum(alpha)
        for k in range(1, n + 1):
            direct = bagchain.partitions(alpha, k)
            assert direct == bagchain.partitions(alpha, k, generator="projection")
            assert sum(m for _, m in direct) == stirling_closed(n, k)
    assert bagchain.bell(26) == 49631246523618756274
    assert bagchain.stirling2(30, 7) == stirling_closed(30, 7)


def test_extend_partitions():
    alpha = [1, 1]
    lower = bagchain.partitions(alpha, 1)
    upper = bagchain.partitions(alpha, 2)
    extended = bagchain.extend_partitions(1, alpha, 2, lower, upper)
    assert extended == bagchain.partitions([2, 1], 2)


def test_expand_golden():
    golden = (ROOT / "tests" / "golden" / "expand_order3.txt").read_text(encoding="utf-8")
    assert bagchain.expand([1, 1, 1], 3) == golden
    terms = json.loads(bagchain.expand([1, 1], 2, format="json"))["terms"]
    assert all(t["coefficient"] == "1" for t in terms)


def test_faa_table():
    rows = bagchain.faa_di_bruno_1d(4)
    assert len(rows) == 5
    assert sum(c for _, _, c in rows) == 15


def test_compose_fixture():
    f = json.loads((FIXTURES / "square_f.json").read_text())
    g = json.loads((FIXTURES / "cube_g.json").read_text())
    out = bagchain.compose(f, g, 2)
    values = {tuple(e["index"]): Fraction(e["value"]) for e in out["entries"]}
    assert values[(2,)] == 30


def test_errors():
    with pytest.raises(bagchain.DimensionMismatch):
        bagchain.compose((FIXTURES / "plane_f.json").read_text(), (FIXTURES / "cube_g.json").read_text(), 2)
    with pytest.raises(bagchain.ParseError):
        bagchain.verify_composition("(tan x1)", ["x1"], ["1"], 2)


def test_oracle_and_verify():
    report = bagchain.verify_composition("(sin (+ u1 u2))", ["(* x1 x2)", "(+ x1 x2)"], ["1/2", "1/3"], 4)
    assert report["mode"] == "float" and report["all_agree"]
    assert report["max_relative_error"] <= 1e-9
    exact = bagchain.verify_composition("(* u1 u1)", ["(^ x1 3)"], ["1"], 3)
    assert exact["mode"] == "rational" and exact["max_relative_error"] == 0
    assert issubclass(bagchain.ParseError, ValueError)
    summary = bagchain.verify(trials=5, max_order=3, max_cardinality=4, dims=(2, 2))
    assert summary["passed"]
