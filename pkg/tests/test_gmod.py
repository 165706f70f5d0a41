import pytest

from gradreg.errors import NotFiniteDimensional, WindowTooSmall
from gradreg.gmod import (FreeGradedModule, GradedMap, direct_sum, free_module,
                          kernel, matlis_dual, sdeg_ideg, shift, simple_module, top_module,
                          truncate_above, truncate_below)
from gradreg.models import ExtendedDegree


def _arrow(A, name):
    return next(k for k, b in enumerate(A.basis[1]) if b.label == name)


def _dims(M, upto):
    return tuple(M.dim(d) for d in range(upto + 1))


def test_cokernel_of_x_squared(build, cyclic):
    A = build("poly2", 6)
    M = cyclic(A, ("x", "x"))
    assert _dims(M, 6) == (1, 2, 2, 2, 2, 2, 2)
    assert M.finite_top is None


def test_cokernel_of_x_over_polynomial_line(build, cyclic):
    A = build("poly1", 6)
    M = cyclic(A, ("x",))
    assert _dims(M, 6) == (1, 0, 0, 0, 0, 0, 0)
    assert M.finite_top == 0
    assert sdeg_ideg(M) == (ExtendedDegree.exact(0), ExtendedDegree.exact(0))


def test_cokernel_action_is_a_module(build, cyclic):
    A = build("qplane", 5)
    M = cyclic(A, ("x", "y"))
    assert M.check_associativity()


def test_kernel_of_x_on_dual_numbers(build):
    A = build("dualnum", 6)
    source = FreeGradedModule(A, [(0, 1)], 6)
    target = free_module(A, 6)
    f = GradedMap.from_images(source, target, [{target.position(1, 0, _arrow(A, "x")): A.K.one}])
    assert f.check_commutes()
    K = kernel(f)
    assert {d: n for d, n in K.dims().items() if n} == {2: 1}
    assert K.finite_top is not None


def test_truncate_below(build):
    A = build("poly1", 6)
    T = truncate_below(free_module(A), 2)
    assert T.lo == 2
    assert T.dim(1) == 0
    assert T.dim(2) == 1
    _, ideg = sdeg_ideg(T)
    assert ideg == ExtendedDegree.exact(2)


def test_truncate_above_is_finite(build):
    A = build("poly2", 6)
    Q = truncate_above(free_module(A), 3)
    assert _dims(Q, 4) == (1, 2, 3, 0, 0)
    assert Q.finite_top == 2


def test_shift_moves_support(build):
    A = build("poly2", 6)
    S3 = shift(top_module(A), 3)
    assert S3.support() == [-3]
    assert sdeg_ideg(S3) == (ExtendedDegree.exact(-3), ExtendedDegree.exact(-3))
    assert shift(S3, -3).support() == [0]


def test_sdeg_of_unbounded_module_is_censored(build):
    A = build("poly1", 6)
    sdeg, ideg = sdeg_ideg(free_module(A))
    assert sdeg == ExtendedDegree.at_least(6)
    assert ideg == ExtendedDegree.exact(0)


def test_zero_module_extremes(build, cyclic):
    A = build("poly1", 6)
    Z = cyclic(A, ("x",))
    Z = truncate_below(Z, 1)
    assert Z.certified_zero
    assert sdeg_ideg(Z) == (ExtendedDegree.minus_inf(), ExtendedDegree.plus_inf())


def test_matlis_dual_of_dual_numbers(build):
    A = build("dualnum", 4)
    D = matlis_dual(free_module(A))
    assert D.algebra is A.opposite()
    assert D.support() == [-1, 0]
    assert D.finite_top == 0
    assert D.check_associativity()


def test_matlis_dual_needs_finite_module(build):
    with pytest.raises(NotFiniteDimensional):
        matlis_dual(free_module(build("poly1", 4)))


def test_simple_modules_of_kronecker(build):
    A = build("kron2", 4)
    S = top_module(A)
    assert S.dim(0) == 2
    assert direct_sum(simple_module(A, 0), simple_module(A, 1)).dims() == S.dims()


def test_free_module_window_too_wide(build):
    A = build("poly1", 4)
    with pytest.raises(WindowTooSmall):
        FreeGradedModule(A, [(0, 0)], 5)
