import pytest

from maclane import rings


@pytest.fixture(scope="session")
def z2():
    R = rings.make_zn(2)
    M = rings.make_bimodule_via_hom(R, 2, [0, 1], label="Z/2")
    return R, M


@pytest.fixture(scope="session")
def z3():
    R = rings.make_zn(3)
    M = rings.make_bimodule_via_hom(R, 3, [0, 1, 2], label="Z/3")
    return R, M


@pytest.fixture(scope="session")
def z4_z2():
    R = rings.make_zn(4)
    M = rings.make_bimodule_via_hom(R, 2, [0, 1, 0, 1], label="Z/2")
    return R, M


@pytest.fixture(scope="session")
def dual_z2():
    """(Z/2)[e] acting on Z/2 through a + be -> a."""
    R = rings.make_dual_numbers(rings.make_zn(2))
    M = rings.make_bimodule_via_hom(R, 2, [0, 0, 1, 1], label="Z/2 via a")
    return R, M


@pytest.fixture(scope="session")
def gf4():
    """GF(4) acting on itself; module index = ring element index."""
    add = [[a ^ b for b in range(4)] for a in range(4)]
    mul = [[0] * 4 for _ in range(4)]
    for a in range(4):
        mul[1][a] = mul[a][1] = a
    mul[2][2] = 3
    mul[2][3] = mul[3][2] = 1
    mul[3][3] = 2
    R = rings.make_ring_from_tables(add, mul, 0, 1, label="GF(4)",
                                    names=("0", "1", "w", "w+1"))

    def coords(x):
        return (x >> 1, x & 1)

    left = tuple(tuple(coords(mul[r][g]) for g in (2, 1)) for r in range(4))
    right = tuple(tuple(coords(mul[g][r]) for r in range(4)) for g in (2, 1))
    M = rings.make_bimodule_from_tables(R, (2, 2), left, right, label="GF(4)")
    return R, M
