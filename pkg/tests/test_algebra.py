import pytest

from gradreg.algebra import a0_structure, build_truncated, endo_twist, hilbert
from gradreg.catalog import get_entry
from gradreg.errors import BadInput, CapExceeded, NotBasic, NotNNGraded


@pytest.mark.parametrize("name, N, totals", [
    ("poly2", 4, (1, 2, 3, 4, 5)),
    ("qplane", 3, (1, 2, 3, 4)),
    ("jordan", 3, (1, 2, 3, 4)),
    ("poly3", 3, (1, 3, 6, 10)),
    ("dualnum", 4, (1, 1, 0, 0, 0)),
    ("ext2", 4, (1, 2, 1, 0, 0)),
    ("kron2", 3, (2, 2, 0, 0)),
    ("tri2", 3, (2, 3, 3, 3)),
    ("a0loop", 3, (2, 2, 2, 2)),
])
def test_hilbert_totals(build, name, N, totals):
    assert hilbert(build(name, N)).totals == totals


def test_hilbert_blocks_of_kronecker(build):
    H = hilbert(build("kron2", 3))
    assert H.blocks[(0, 1)] == (0, 2, 0, 0)
    assert H.blocks[(1, 0)] == (0, 0, 0, 0)
    assert H.to_json()["blocks"]["1,2"] == [0, 2, 0, 0]


def test_products_are_associative(build):
    A = build("jordan", 4)
    for a in range(3):
        for b in range(3 - a):
            for c in range(4 - a - b):
                for i in range(A.dim(a)):
                    for j in range(A.dim(b)):
                        for k in range(A.dim(c)):
                            left = A.multiply(a + b, A.mul(a, i, b, j), c, {k: A.K.one})
                            right = A.multiply(a, {i: A.K.one}, b + c, A.mul(b, j, c, k))
                            assert left == right


def test_finite_algebras_are_certified(build):
    assert build("dualnum", 6).finite_top == 1
    assert build("ext2", 6).finite_top == 2
    assert build("poly2", 6).finite_top is None


def test_opposite_is_an_involution(build):
    A = build("kron2", 4)
    Ao = A.opposite()
    assert Ao.opposite() is A
    assert A.min_degree_matrix() == [[0, 1], [None, 0]]
    assert Ao.min_degree_matrix() == [[0, None], [1, 0]]
    assert hilbert(Ao).totals == hilbert(A).totals


def test_opposite_reverses_products(build):
    A = build("jordan", 3)
    Ao = A.opposite()
    for i in range(A.dim(1)):
        for j in range(A.dim(1)):
            assert Ao.mul(1, i, 1, j) == A.mul(1, j, 1, i)


def test_a0_structure(build):
    semisimple = a0_structure(build("kron2", 3))
    assert semisimple.semisimple and semisimple.basic
    assert semisimple.r == (1, 1)
    loop = a0_structure(build("a0loop", 3))
    assert not loop.semisimple
    assert len(loop.radical_basis) == 1
    assert loop.r == (1,)


def test_generators_and_gmax(build):
    A = build("poly2", 4)
    assert len(A.generators(1)) == 2
    assert A.generators(2) == []
    assert A.gmax == 1


def test_cap_exceeded():
    P = get_entry("poly3").presentation()
    with pytest.raises(CapExceeded):
        build_truncated(P, 6, cap=20)


def test_negative_truncation_rejected():
    with pytest.raises(BadInput):
        build_truncated(get_entry("poly1").presentation(), -1)


def test_twist_by_zero_is_identity(build):
    A = build("kron2", 4)
    B = endo_twist(A, [0, 0])
    assert hilbert(B).totals == hilbert(A).totals
    assert hilbert(B).blocks == hilbert(A).blocks


def test_twist_moves_blocks(build):
    A = build("kron2", 4)
    B = endo_twist(A, [1, 0])
    assert B.N == 3
    assert hilbert(B).blocks[(0, 1)] == (0, 0, 2, 0)
    down = endo_twist(A, [0, 1])
    assert hilbert(down).blocks[(0, 1)][0] == 2


def test_twist_rejects_negative_degrees(build):
    with pytest.raises(NotNNGraded):
        endo_twist(build("kron2", 4), [0, 2])


def test_twist_requires_basic_semisimple_a0(build):
    with pytest.raises(NotBasic):
        endo_twist(build("a0loop", 3), [0])


def test_twist_checks_vector_length(build):
    with pytest.raises(BadInput):
        endo_twist(build("kron2", 3), [0])
