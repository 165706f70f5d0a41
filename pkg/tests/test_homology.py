from gradreg.gmod import free_module, matlis_dual, top_module
from gradreg.homology import Region, ext_table, tor_table
from gradreg.models import ExtendedDegree


def test_ext_of_k_into_dual_numbers(build):
    A = build("dualnum", 10)
    T = ext_table(top_module(A), free_module(A), 4)
    assert T.nonzero() == [(0, 1, 1)]
    assert T.beyond == Region.PERIODIC
    ex = T.extremes()
    assert ex.ideg == ExtendedDegree.exact(1)
    assert ex.sdeg == ExtendedDegree.exact(1)
    assert ex.ideg_witness == (0, 1)


def test_ext_of_k_into_polynomial_line(build):
    A = build("poly1", 8)
    T = ext_table(top_module(A), free_module(A), 3)
    # Ext^1(k, A) = k(1)，集中在 j = -1
    assert T.nonzero() == [(1, -1, 1)]
    assert T.beyond == Region.ZERO
    assert T.value(0, 0) == 0
    assert T.value(1, -1) == 1
    assert T.extremes().sdeg == ExtendedDegree.exact(0)


def test_ext_of_k_into_k_over_plane(build):
    A = build("poly2", 8)
    S = top_module(A)
    T = ext_table(S, S, 3)
    assert T.nonzero() == [(0, 0, 1), (1, -1, 2), (2, -2, 1)]
    ex = T.extremes()
    assert ex.sdeg == ExtendedDegree.exact(0)
    assert ex.ideg == ExtendedDegree.exact(0)


def test_tor_of_k_with_k_over_plane(build):
    A = build("poly2", 8)
    T = tor_table(top_module(A.opposite()), top_module(A), 3)
    assert T.nonzero() == [(0, 0, 1), (1, 1, 2), (2, 2, 1)]
    ex = T.extremes()
    assert ex.sdeg == ExtendedDegree.exact(0)
    assert ex.ideg == ExtendedDegree.exact(0)


def test_tor_with_free_module_is_the_module(build):
    A = build("poly1", 8)
    T = tor_table(free_module(A.opposite()), top_module(A), 2)
    assert T.nonzero() == [(0, 0, 1)]


def test_unknown_cells_censor_extremes(build):
    A = build("poly1", 6)
    T = ext_table(top_module(A), free_module(A), 2)
    # A 不是有限维的：行顶端之外只能靠边距约定
    for m in range(3):
        assert T.above[m] in (Region.ASSUMED, Region.UNKNOWN)
    assert T.extremes().ideg is not None


def test_matlis_dual_turns_ext_into_tor(build):
    # dim Tor_m(D(A), S)_j = dim Ext^m(S, A)_{-j}
    A = build("ext2", 6)
    S = top_module(A)
    Ext = ext_table(S, free_module(A), 2)
    Tor = tor_table(matlis_dual(free_module(A)), S, 2)
    assert Ext.nonzero() == [(0, 2, 1)]
    assert Tor.nonzero() == [(0, -2, 1)]
    compared = 0
    for m in range(3):
        for j in range(Tor.j_lo, Tor.j_hi + 1):
            tor, ext = Tor.value(m, j), Ext.value(m, -j)
            if tor is not None and ext is not None:
                assert tor == ext, (m, j)
                compared += 1
    assert compared >= 3
