import pytest

from maclane import rings
from maclane.rings import ShapeError


def test_zn_tables():
    R = rings.make_zn(6)
    assert R.order == 6 and R.zero == 0 and R.one == 1
    assert R.add[4][5] == 3 and R.mul[4][5] == 2
    assert R.neg[2] == 4
    assert R.sub(1, 5) == 2
    assert rings.validate_ring(R) == []


def test_zero_ring():
    R = rings.make_zn(1)
    assert R.zero == R.one == 0
    assert rings.validate_ring(R) == []


def test_dual_numbers_multiplication():
    R = rings.make_dual_numbers(rings.make_zn(3))
    # (a1 + b1 e)(a2 + b2 e) = a1 a2 + (a1 b2 + b1 a2) e
    enc = lambda a, b: a * 3 + b
    assert R.mul[enc(1, 1)][enc(1, 1)] == enc(1, 2)
    assert R.mul[enc(0, 1)][enc(0, 1)] == enc(0, 0)  # e^2 = 0
    assert R.one == enc(1, 0)
    assert rings.validate_ring(R) == []
    assert R.label == "Z/3[e]"


def test_product_ring():
    R = rings.make_product(rings.make_zn(2), rings.make_zn(3))
    assert R.order == 6
    assert rings.validate_ring(R) == []
    # (1,2)*(1,2) = (1,1)
    assert R.mul[1 * 3 + 2][1 * 3 + 2] == 1 * 3 + 1


def test_ring_from_tables_rejects_nonring():
    add = [[(x + y) % 3 for y in range(3)] for x in range(3)]
    mul = [[1] * 3 for _ in range(3)]  # not distributive, no zero absorption
    r = rings.make_ring_from_tables(add, mul, 0, 1)
    assert rings.validate_ring(r) != []


def test_ring_from_tables_shape_errors():
    with pytest.raises(ShapeError):
        rings.make_ring_from_tables([[0]], [[0], [0]], 0, 0)
    with pytest.raises(ShapeError):
        rings.FiniteRing(2, ((0, 1), (1, 0)), ((0, 0), (0, 5)), 0, 1)


def test_gf4_is_a_ring(gf4):
    R, M = gf4
    assert rings.validate_ring(R) == []
    assert rings.validate_bimodule(M) == []
    # Frobenius squares: w^2 = w+1, (w+1)^2 = w
    assert R.mul[2][2] == 3 and R.mul[3][3] == 2


def test_bimodule_index_coords_roundtrip():
    R = rings.make_zn(2)
    M = rings.make_bimodule_from_tables(
        R, (2, 4),
        left_gen=tuple((((r % 2), 0), (0, 0)) for r in range(2)),
        right_gen=(tuple(((r % 2), 0) for r in range(2)),
                   tuple((0, 0) for r in range(2))),
    )
    assert M.size == 8
    for m in range(8):
        assert M.index(M.coords(m)) == m
    # last coordinate varies fastest
    assert M.coords(1) == (0, 1)
    assert M.coords(4) == (1, 0)


def test_bimodule_via_hom_checks_hom():
    R = rings.make_zn(4)
    with pytest.raises(ValueError):
        rings.make_bimodule_via_hom(R, 2, [0, 1, 1, 1])
    M = rings.make_bimodule_via_hom(R, 2, [0, 1, 0, 1])
    assert rings.validate_bimodule(M) == []
    assert M.lact[3][1] == 1 and M.lact[2][1] == 0


def test_bimodule_group_ops():
    R = rings.make_zn(2)
    M = rings.make_bimodule_from_tables(
        R, (2, 3),
        left_gen=((((0, 0)), (0, 0)), ((1, 0), (0, 0))),
        right_gen=(((0, 0), (1, 0)), ((0, 0), (0, 0))),
    )
    assert M.exponent == 6
    a = M.index((1, 2))
    b = M.index((1, 1))
    assert M.add(a, b) == M.index((0, 0))
    assert M.neg(a) == M.index((1, 1))
    assert M.smul(3, M.index((0, 1))) == M.index((0, 0))
    assert M.smul(7, a) == a


def test_validate_bimodule_catches_bad_action():
    R = rings.make_zn(2)
    # right action of 1 is not the identity
    M = rings.make_bimodule_from_tables(
        R, (2,), left_gen=(((0,),), ((1,),)),
        right_gen=((((0,)), (0,)),),
    )
    errs = rings.validate_bimodule(M)
    assert any("right unit" in e[0] for e in errs)
