import pytest

from gradreg.catalog import get_entry
from gradreg.errors import BadInput, NotBasic
from gradreg.gmod import free_module, top_module, truncate_below
from gradreg.models import Bounds, ExtendedDegree, RegStatus, Verdict
from gradreg.regularity import (asreg, cm_regularities, cmreg_limit, homogeneity_check,
                                regs_of_module, torreg_from_betti)
from gradreg.resolve import betti, minimal_resolution

E = ExtendedDegree


def test_torreg_of_k_over_plane(build):
    B = betti(minimal_resolution(top_module(build("poly2", 8)), 4))
    Torreg, torreg = torreg_from_betti(B, a0_semisimple=True)
    assert Torreg.value == E.exact(0)
    assert torreg.value == E.exact(0)
    assert Torreg.status == RegStatus.EXACT


def test_torreg_of_non_linear_quotient(build, cyclic):
    A = build("poly2", 8)
    B = betti(minimal_resolution(cyclic(A, ("x", "x")), 3))
    Torreg, torreg = torreg_from_betti(B, a0_semisimple=True)
    # β(1, 2) 给出 u_1 - 1 = 1
    assert Torreg.value == E.exact(1)
    assert Torreg.witness == (1, 2)
    assert torreg.value == E.exact(0)


def test_torreg_of_periodic_resolution(build):
    B = betti(minimal_resolution(top_module(build("dualnum", 10)), 5))
    Torreg, torreg = torreg_from_betti(B, a0_semisimple=True)
    assert Torreg.value == E.exact(0)
    assert torreg.value == E.exact(0)


def test_cmreg_limit_of_dual_numbers(build, small_bounds):
    cm, lc, stab = cmreg_limit(free_module(build("dualnum", 8)), small_bounds)
    assert cm.value == E.exact(1)
    assert lc.value == E.exact(0)
    assert stab.clamped
    assert stab.n_eff == 6


def test_cmreg_limit_of_polynomial_plane(build):
    bounds = Bounds(H=3, N=8)
    cm, lc, _ = cmreg_limit(free_module(build("poly2", 8)), bounds)
    assert cm.value == E.exact(0)
    assert lc.status == RegStatus.CENSORED


def test_report_of_dual_numbers(build, small_bounds):
    A = build("dualnum", 8)
    report = regs_of_module(free_module(A), small_bounds)
    assert report.degree("CMreg") == E.exact(1)
    assert report.degree("exreg") == E.exact(-1)
    assert report.degree("pdim") == E.exact(0)
    assert report.degree("depth") == E.exact(0)


def test_report_of_k_over_dual_numbers(build, small_bounds):
    A = build("dualnum", 8)
    report = regs_of_module(top_module(A), small_bounds)
    for name in ("Torreg", "torreg", "Extreg", "extreg", "CMreg"):
        assert report.degree(name) == E.exact(0), name
    assert report.degree("pdim") == E.plus_inf()
    assert not report.notes


def test_report_of_k_over_plane(build, small_bounds):
    A = build("poly2", 8)
    report = regs_of_module(top_module(A), small_bounds)
    assert report.degree("Torreg") == E.exact(0)
    assert report.degree("extreg") == E.exact(0)
    assert report.degree("Exreg") == E.exact(0)
    assert report.degree("pdim") == E.exact(2)
    assert report.degree("depth") == E.exact(0)


def test_zero_module_is_degenerate(build, small_bounds, cyclic):
    A = build("poly1", 8)
    Z = truncate_below(cyclic(A, ("x",)), 1)
    report = regs_of_module(Z, small_bounds)
    assert report.degenerate
    assert report["CMreg"].status == RegStatus.DEGENERATE
    assert report.degree("depth") == E.plus_inf()


@pytest.mark.parametrize("name, cm, lc", [("dualnum", 1, 0), ("ext2", 2, 0)])
def test_duality_agrees_with_limit(build, small_bounds, name, cm, lc):
    A = build(name, 8)
    G = get_entry(name).gorenstein
    limit = cm_regularities(free_module(A), small_bounds, "limit")
    duality = cm_regularities(free_module(A), small_bounds, "duality", G)
    assert [v.value for v in limit] == [v.value for v in duality] == [E.exact(cm), E.exact(lc)]


def test_unknown_strategy(build, small_bounds):
    with pytest.raises(BadInput):
        cm_regularities(free_module(build("poly1", 8)), small_bounds, "guess")


def test_asreg_of_dual_numbers(build, small_bounds):
    result = asreg(build("dualnum", 8), small_bounds)
    assert result.ASreg.value == E.exact(1)
    assert result.asreg.value == E.exact(0)
    assert result.Torreg_S.value == E.exact(0)


def test_asreg_of_polynomial_plane(build):
    result = asreg(build("poly2", 8), Bounds(H=3, N=8), both_sides=True)
    assert result.ASreg.value == E.exact(0)
    assert set(result.right) == {"CMreg", "cmreg", "Torreg_S"}
    assert result.right["Torreg_S"].value == E.exact(0)


def test_homogeneity_of_single_vertex_algebra(build, small_bounds):
    result = homogeneity_check(build("dualnum", 8), small_bounds)
    assert result.flags == {"leftCM": Verdict.HOLDS, "leftEx": Verdict.HOLDS,
                            "rightCM": Verdict.HOLDS, "rightEx": Verdict.HOLDS}
    assert len(result.values["left_CMreg"]) == 2


def test_homogeneity_needs_basic_a0(build, small_bounds):
    with pytest.raises(NotBasic):
        homogeneity_check(build("a0loop", 6), small_bounds)
