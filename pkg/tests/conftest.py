import numpy as np
import pytest

from baerkit import make_field, make_product, make_upper_triangular, make_zmod
from baerkit.construct import make_skew_triangular


@pytest.fixture(scope="session")
def z6():
    return make_zmod(6)


@pytest.fixture(scope="session")
def z4():
    return make_zmod(4)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def ut2_z2():
    return make_upper_triangular(make_zmod(2), 2)


@pytest.fixture(scope="session")
def z2xz2():
    z2 = make_zmod(2)
    return make_product(z2, z2)


@pytest.fixture(scope="session")
def t2_z2():
    base = make_zmod(2)
    return make_skew_triangular(base, 2, np.arange(2), "T")


def small_ring_pool():
    """Rings of order <= 16 used for brute-force oracle comparisons."""
    z2 = make_zmod(2)
    return [
        make_zmod(2), make_zmod(3), make_zmod(4), make_zmod(6), make_zmod(8),
        make_zmod(12), make_field(2, 2), make_field(3, 2), make_field(2, 3),
        make_product(z2, make_zmod(3)), make_product(z2, z2),
        make_upper_triangular(z2, 2),
        make_skew_triangular(z2, 2, np.arange(2), "T"),
        make_skew_triangular(make_zmod(4), 2, np.arange(4), "T"),
        make_skew_triangular(z2, 3, np.arange(2), "S"),
    ]
