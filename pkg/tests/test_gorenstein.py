import pytest

from gradreg.algebra import endo_twist, hilbert
from gradreg.catalog import get_entry, load_catalog
from gradreg.errors import BadInput, MissingGorensteinData
from gradreg.gmod import free_module
from gradreg.gorenstein import (ASGorensteinData, Equalized, Infeasible, cmreg_duality,
                                equalize_parameters, verify_gorenstein)
from gradreg.models import ExtendedDegree


def test_equalize_swapped_vertices():
    result = equalize_parameters((1, 3), (1, 0), [[0, 2], [1, 0]])
    assert isinstance(result, Equalized)
    assert result.p == (0, 1)
    assert result.ell == (2, 2)
    assert result.m == ((0, 1), (2, 0))


def test_equalize_identity_with_unequal_parameters():
    result = equalize_parameters((1, 3), (0, 1), [[0, 1], [None, 0]])
    assert isinstance(result, Infeasible)
    assert result.cycle == (0,)


def test_equalize_already_equal():
    result = equalize_parameters((2, 2), (0, 1), [[0, 1], [None, 0]])
    assert isinstance(result, Equalized)
    assert result.p == (0, 0)


def test_equalize_positivity_violated_in_orbit():
    # p_1 = p_0 + 1 迫使 m(0, 1) + p_0 - p_1 = 0
    result = equalize_parameters((1, 3), (1, 0), [[0, 1], [1, 0]])
    assert isinstance(result, Infeasible)


@pytest.mark.parametrize("ell, sigma", [((1, 2), (0, 1)), ((1, 1), (0, 0)), ((), ())])
def test_equalize_bad_input(ell, sigma):
    with pytest.raises(BadInput):
        equalize_parameters(ell, sigma, [[0, 1], [1, 0]][:len(ell)])


def test_data_validation():
    G = ASGorensteinData(2, (2,), (0,))
    assert G.validate(1).r == (1,)
    assert G.equal_parameters
    with pytest.raises(BadInput):
        ASGorensteinData(2, (2, 2), (0, 0)).validate(2)
    with pytest.raises(BadInput):
        ASGorensteinData.from_json({"d": 1})


_WITH_AS_DATA = sorted(name for name, entry in load_catalog().items() if entry.gorenstein is not None)


@pytest.mark.parametrize("name", _WITH_AS_DATA)
def test_catalog_data_verifies(build, small_bounds, name):
    G = get_entry(name).gorenstein
    checked = verify_gorenstein(build(name, 8), G, small_bounds)
    assert checked.verified
    assert checked.equal_parameters


def test_every_regular_entry_has_as_data():
    assert {"poly1", "poly2", "poly3", "qplane", "jordan", "ext2", "dualnum"} <= set(_WITH_AS_DATA)


def test_wrong_data_is_not_verified(build, small_bounds):
    G = ASGorensteinData(0, (-2,), (0,))
    assert not verify_gorenstein(build("dualnum", 8), G, small_bounds).verified


def test_duality_on_dual_numbers(build, small_bounds):
    A = build("dualnum", 8)
    cm, lc = cmreg_duality(free_module(A), get_entry("dualnum").gorenstein, small_bounds)
    assert cm.value == ExtendedDegree.exact(1)
    assert lc.value == ExtendedDegree.exact(0)


def test_duality_requires_data(build, small_bounds):
    with pytest.raises(MissingGorensteinData):
        cmreg_duality(free_module(build("poly1", 6)), None, small_bounds)


def test_twist_keeps_hilbert_series_when_trivial(build):
    A = build("poly2", 5)
    assert hilbert(endo_twist(A, [0])).totals == hilbert(A).totals
