import pytest

from gradreg.models import (Bounds, ExtendedDegree, RegStatus, RegValue, Verdict, compare,
                            degree_max)

E = ExtendedDegree


def test_arithmetic_on_exact_and_censored():
    assert E.exact(2) + 3 == E.exact(5)
    assert E.at_least(1) + E.exact(2) == E.at_least(3)
    assert -E.at_least(4) == E.at_most(-4)
    assert E.plus_inf() + E.exact(7) == E.plus_inf()
    assert E.plus_inf() + E.minus_inf() is None


def test_degree_max():
    assert degree_max(E.exact(1), E.exact(3)) == E.exact(3)
    assert degree_max(E.exact(5), E.at_most(2)) == E.exact(5)
    assert degree_max(E.exact(1), E.at_least(0)) == E.at_least(1)
    assert degree_max(E.exact(1), None) is None


@pytest.mark.parametrize("lhs, op, rhs, verdict", [
    (E.exact(1), "<=", E.exact(2), Verdict.HOLDS),
    (E.exact(3), "<=", E.exact(2), Verdict.FAILS),
    (E.exact(2), "==", E.exact(2), Verdict.HOLDS),
    (E.exact(2), ">=", E.exact(3), Verdict.FAILS),
    (E.at_most(1), "<=", E.exact(2), Verdict.HOLDS),
    (E.at_least(3), "<=", E.exact(2), Verdict.INCONCLUSIVE),
    (E.exact(3), "<=", E.at_most(2), Verdict.INCONCLUSIVE),
    (E.minus_inf(), "<=", E.exact(-100), Verdict.HOLDS),
    (None, "<=", E.exact(0), Verdict.INCONCLUSIVE),
])
def test_compare(lhs, op, rhs, verdict):
    assert compare(lhs, op, rhs) == verdict


def test_censored_never_fails():
    censored = [E.at_least(0), E.at_most(0), None]
    exact = [E.exact(-3), E.exact(0), E.exact(3), E.plus_inf(), E.minus_inf()]
    for a in censored:
        for b in exact + censored:
            for op in ("<=", ">=", "=="):
                assert compare(a, op, b) != Verdict.FAILS
                assert compare(b, op, a) != Verdict.FAILS


def test_reg_value_status():
    assert RegValue.from_degree(E.exact(1), (0, 1)).status == RegStatus.EXACT
    censored = RegValue.from_degree(E.at_least(1), (0, 1))
    assert censored.status == RegStatus.CENSORED
    assert censored.witness is None
    assert RegValue.from_degree(None).to_json()["value"] == {"kind": "unknown"}


def test_json_round_trip_of_degree():
    for d in (E.exact(-2), E.at_most(4), E.plus_inf()):
        assert E.from_json(d.to_json()) == d


def test_bounds_defaults():
    b = Bounds()
    assert (b.H, b.N, b.n_limit) == (8, 12, 24)
    assert b.cm_top == 8
    assert Bounds(N=10, n_max=15).n_limit == 15
