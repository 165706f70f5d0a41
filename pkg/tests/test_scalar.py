import random

import pytest

from gradreg.errors import BadInput
from gradreg.scalar import FieldSpec, Subspace, add_scaled, left_kernel, matrix, rank, rref


def _q(*rows):
    K = FieldSpec.rationals().domain
    return matrix([{c: K(x) for c, x in enumerate(row) if x} for row in rows], len(rows[0]), K)


def test_rref_rank_one_over_q():
    result = rref(_q([1, 2], [2, 4]))
    K = FieldSpec.rationals().domain
    assert result.rank == 1
    assert result.pivots == (0,)
    assert result.kernel_basis == ({0: K(-2), 1: K(1)},)


def test_rref_identity_over_f5():
    K = FieldSpec(5).domain
    m = matrix([{0: K(1)}, {1: K(1)}, {2: K(1)}], 3, K)
    result = rref(m)
    assert result.rank == 3
    assert result.pivots == (0, 1, 2)
    assert result.kernel_basis == ()


def test_rref_empty_and_zero_matrices():
    K = FieldSpec.default().domain
    assert rref(matrix([], 4, K)).rank == 0
    zero = rref(matrix([{}, {}], 3, K))
    assert zero.rank == 0
    assert len(zero.kernel_basis) == 3


def test_rank_mod_p_differs_from_q():
    # det = 5
    rows = [[1, 2], [3, 11]]
    Kq = FieldSpec.rationals().domain
    K5 = FieldSpec(5).domain
    assert rank([{c: Kq(x) for c, x in enumerate(r)} for r in rows], 2, Kq) == 2
    assert rank([{c: K5(x) for c, x in enumerate(r)} for r in rows], 2, K5) == 1


def test_left_kernel_is_annihilated():
    K = FieldSpec.rationals().domain
    m = _q([1, 1], [1, 1], [0, 1])
    kernel = left_kernel(m)
    assert len(kernel) == 1
    (v,) = kernel
    image = {}
    for r, c in v.items():
        add_scaled(image, dict(m.get(r, {})), c)
    assert image == {}


def test_field_spec_parse():
    assert FieldSpec.parse("Q").is_rational
    assert FieldSpec.parse({"Fp": 7}).characteristic == 7
    assert FieldSpec.parse("F_11").modulus == 11
    assert FieldSpec.parse(None) == FieldSpec.default()
    with pytest.raises(BadInput):
        FieldSpec.parse(8)
    with pytest.raises(BadInput):
        FieldSpec.parse({"p": 7})


def test_field_element_rejects_non_invertible_denominator():
    F7 = FieldSpec(7)
    assert F7.element("1/2") * F7.element(2) == F7.domain.one
    with pytest.raises(BadInput):
        F7.element("1/7")


def test_random_element_is_seeded():
    F = FieldSpec.default()
    a = [F.random_element(random.Random(3)) for _ in range(2)]
    assert a[0] == a[1]
    assert F.random_element(random.Random(5), nonzero=True)


def test_subspace_reduce_and_complement():
    K = FieldSpec.rationals().domain
    S = Subspace.span([{0: K(1), 1: K(1)}, {1: K(1), 2: K(1)}], 3, K)
    assert S.dim == 2
    assert S.contains({0: K(1), 2: K(-1)})
    assert not S.contains({0: K(1)})
    assert len(S.complement()) == 1
    assert S.extend({2: K(1)})
    assert S.dim == 3
    assert not S.extend({0: K(5)})
