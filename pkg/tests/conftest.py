import pytest

from gradreg.catalog import get_entry
from gradreg.gmod import FreeGradedModule, GradedMap, cokernel_module, free_module
from gradreg.models import Bounds


@pytest.fixture(scope="session")
def build():
    """按名称构造目录中的代数，同一 (名称, N) 只构造一次"""
    cache = {}

    def _build(name, N=8):
        key = (name, N)
        if key not in cache:
            cache[key] = get_entry(name).build(N)
        return cache[key]

    return _build


@pytest.fixture
def small_bounds():
    return Bounds(H=4, N=8)


def _arrow(A, name):
    return next(k for k, b in enumerate(A.basis[1]) if b.label == name)


def _word(A, *names):
    v = {_arrow(A, names[0]): A.K.one}
    for d, name in enumerate(names[1:], start=1):
        v = A.multiply(d, v, 1, {_arrow(A, name): A.K.one})
    return v


@pytest.fixture(scope="session")
def cyclic():
    """A/(A·w_1 + ... + A·w_r)，w 为单顶点代数中次数 1 箭头的词"""

    def _cyclic(A, *words):
        F0 = free_module(A)
        F1 = FreeGradedModule(A, [(0, len(w)) for w in words], A.N)
        images = [{F0.position(len(w), 0, u): c for u, c in _word(A, *w).items()} for w in words]
        return cokernel_module(GradedMap.from_images(F1, F0, images))

    return _cyclic
