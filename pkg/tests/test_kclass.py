from __future__ import annotations

import pytest

from kmob.bruhat import schubert_universe
from kmob.kclass import (
    KClassExpansion, closure_support, enumerate_antichains, format_expansion,
    inclusion_exclusion_kclass, mobius_kclass, normalize_components, verify_expansion,
)
from kmob.universe import (
    ClosureError, CoordinateUniverse, UniverseError, maximal_elements, read_universe,
)

S3_EXPANSION = {"231": 1, "312": 1, "213": -1, "132": -1, "123": 1}
# Gr(2,4): (2) = 1423, (1,1) = 2314, (1) = 1324, () = 1234
GR24 = (4, {1, 3})
GR24_EXPANSION = {"1423": 1, "2314": 1, "1324": -1, "1234": 0}


@pytest.fixture
def cubic(data_dir):
    return read_universe(data_dir / "cubic.universe")


@pytest.fixture(scope="module")
def s3():
    return schubert_universe(3)


def test_expansion_arithmetic():
    a = KClassExpansion({"x": 1, "y": 2})
    b = KClassExpansion({"y": 2, "z": 0})
    assert (a - b).coefficients == {"x": 1, "y": 0, "z": 0}
    assert a - b == KClassExpansion.unit("x")
    assert (a + b)["y"] == 4
    assert a["missing"] == 0


def test_normalize_components(s3):
    assert normalize_components(s3, ["231"]).components == {"231"}
    assert not normalize_components(s3, ["231"]).changed
    norm = normalize_components(s3, ["231", "213"])
    assert norm.components == {"231"} and norm.dropped == ("213",)
    assert not normalize_components(s3, ["231", "312"]).changed
    assert normalize_components(s3, ["231", "231"]).dropped == ("231",)
    with pytest.raises(UniverseError, match="no components"):
        normalize_components(s3, [])


def test_mobius_kclass(s3):
    assert mobius_kclass(s3, {"231"}).nonzero() == {"231": 1}
    assert mobius_kclass(s3, {"231", "312"}).coefficients == S3_EXPANSION
    E = mobius_kclass(schubert_universe(*GR24), {"1423", "2314"})
    assert E.coefficients == GR24_EXPANSION
    assert "1234" in E.coefficients  # zero retained
    with pytest.raises(UniverseError, match="antichain"):
        mobius_kclass(s3, {"231", "213"})
    with pytest.raises(ClosureError):
        mobius_kclass(s3, {"231", "312"}, ceiling=4)


def test_inclusion_exclusion_kclass(s3, cubic):
    assert inclusion_exclusion_kclass(s3, {"321"}).coefficients == {"321": 1}
    assert inclusion_exclusion_kclass(cubic, {"A", "B"}).nonzero() == {
        "A": 1, "B": 1, "C": -1, "D": -1, "0": 1}
    assert inclusion_exclusion_kclass(s3, {"231", "312"}) == KClassExpansion(S3_EXPANSION)
    assert inclusion_exclusion_kclass(s3, {"231", "312"}, reverse=True) == KClassExpansion(S3_EXPANSION)


def test_closure_support(s3, cubic):
    assert closure_support(s3, {"231"}) == {"231"}
    assert closure_support(cubic, {"A", "B"}) == {"A", "B", "C", "D", "0"}
    assert closure_support(schubert_universe(*GR24), {"1423", "2314"}) == {"1423", "2314", "1324"}


def test_verify_expansion(s3, cubic):
    report = verify_expansion(s3, {"231", "312"})
    assert report.passed and report.checks == {"equal": True, "vanishing": True, "restriction": True}
    assert verify_expansion(s3, {"123"}).passed
    G = schubert_universe(*GR24)
    chains = list(enumerate_antichains(G))
    assert len(chains) == 7  # six singletons and {(2),(1,1)}
    assert all(verify_expansion(G, D).passed for D in chains)


def test_verify_flags_corrupted_meet(cubic):
    bad = cubic.with_meet("C", "D", [])
    report = verify_expansion(bad, {"A", "B"})
    assert not report.passed
    assert report.checks == {"equal": False, "vanishing": False, "restriction": True}
    assert "coefficient of 0: mobius 1 vs inclusion-exclusion 0" in report.messages


def brute_antichains(U):
    labs = sorted(U.labels())
    out = set()
    for mask in range(1, 1 << len(labs)):
        S = {a for i, a in enumerate(labs) if mask >> i & 1}
        if maximal_elements(U, S) == S:
            out.add(frozenset(S))
    return out


@pytest.mark.parametrize("U", [schubert_universe(3), schubert_universe(*GR24),
                               schubert_universe(4, {2}), CoordinateUniverse(3)],
                         ids=["S3", "Gr24", "S4/P2", "coord3"])
def test_enumerate_antichains_matches_brute_force(U):
    found = list(enumerate_antichains(U))
    assert len(found) == len(set(found))
    assert set(found) == brute_antichains(U)


def test_top_coefficients_and_coordinate_universe():
    U = CoordinateUniverse(4)
    for D in enumerate_antichains(U):
        if len(D) > 3:
            continue
        report = verify_expansion(U, D)
        assert report.passed
        assert all(report.mobius[d] == 1 for d in D)


def test_format_expansion():
    text = format_expansion(KClassExpansion(GR24_EXPANSION))
    assert text == "1234\t0\n1324\t-1\n1423\t1\n2314\t1\n# support=4 nonzero=3\n"
