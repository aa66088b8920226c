"""Hom pairs, functor data, obstruction classes, homotopy, transport."""

import random

import pytest

from maclane import (
    BudgetError,
    Cochain1,
    Cochain2,
    DifferentTypeError,
    FunctorTriple,
    HomPair,
    MacLane3Cochain,
    ShapeError,
    check_functor,
    cochains,
    cohomology,
    count_hom_classes_bruteforce,
    d1,
    d2,
    engine,
    homotopic,
    identity_pair,
    is_coboundary3,
    is_cocycle3,
    obstruction,
    prestick_invariant,
    pullback,
    pushforward,
    random_cochain,
    restrict_bimodule,
    rings,
)


@pytest.fixture(scope="module")
def proj_pair(z4_z2, z2):
    """Reduction Z/4 -> Z/2 with the identity on the common coefficients."""
    R, M = z4_z2
    R2, M2 = z2
    return HomPair(R, M, R2, M2, (0, 1, 0, 1), (0, 1))


@pytest.fixture(scope="module")
def frobenius(gf4):
    R, M = gf4
    return HomPair(R, M, R, M, (0, 1, 3, 2), (0, 1, 3, 2))


def test_restrict_bimodule(z2):
    R2, M2 = z2
    R = rings.make_zn(4)
    Mres = restrict_bimodule(M2, (0, 1, 0, 1), R)
    assert Mres.ring is R
    assert Mres.lact[3][1] == 1  # 3 acts through p(3) = 1
    assert Mres.lact[2][1] == 0
    assert rings.validate_bimodule(Mres) == []


def test_hom_pair_validation(z4_z2, z2):
    R, M = z4_z2
    R2, M2 = z2
    with pytest.raises(ShapeError):
        HomPair(R, M, R2, M2, (0, 1), (0, 1))
    with pytest.raises(ValueError, match="not multiplicative|p\\(1\\)"):
        HomPair(R, M, R2, M2, (0, 0, 0, 0), (0, 1))
    with pytest.raises(ValueError, match="q not additive|q\\("):
        HomPair(R, M, R2, M2, (0, 1, 0, 1), (1, 0))
    pair = HomPair(R, M, R2, M2, (0, 1, 0, 1), (0, 1))
    assert pair.defects() == []
    assert not pair.is_isomorphism()


def test_identity_pair_restriction(z3):
    R, M = z3
    pair = identity_pair(R, M)
    assert pair.restricted() is M
    assert pair.is_isomorphism()


def test_projection_restriction(proj_pair, z4_z2):
    Mres = proj_pair.restricted()
    assert Mres.ring is proj_pair.R
    # structurally the same actions as the direct Z/4-on-Z/2 module
    _, M = z4_z2
    assert (Mres.orders, Mres.lact, Mres.ract) == (M.orders, M.lact, M.ract)


def test_pushforward_pullback_types(proj_pair, z2):
    R2, M2 = z2
    g2 = Cochain2.zero(R2, M2)
    with pytest.raises(TypeError):
        pushforward(proj_pair, g2)
    with pytest.raises(TypeError):
        pullback(proj_pair, Cochain2.zero(proj_pair.R, proj_pair.M))


def test_pushforward_naturality(proj_pair):
    """q_* commutes with both coboundaries."""
    R, M = proj_pair.R, proj_pair.M
    rng = random.Random(0)
    for _ in range(3):
        t = random_cochain(R, M, "c1", rng)
        assert pushforward(proj_pair, d1(t)) == d1(pushforward(proj_pair, t))
        g = random_cochain(R, M, "c2", rng)
        assert pushforward(proj_pair, d2(g)) == d2(pushforward(proj_pair, g))


def test_pullback_naturality(proj_pair, z2):
    R2, M2 = z2
    rng = random.Random(1)
    for _ in range(3):
        t = random_cochain(R2, M2, "c1", rng)
        assert pullback(proj_pair, d1(t)) == d1(pullback(proj_pair, t))
        g = random_cochain(R2, M2, "c2", rng)
        assert pullback(proj_pair, d2(g)) == d2(pullback(proj_pair, g))


def test_transport_preserves_cocycles(proj_pair, z2):
    R2, M2 = z2
    c2 = cohomology(R2, M2, 3).representatives[0]
    pulled = pullback(proj_pair, c2)
    assert is_cocycle3(pulled) == []
    R, M = proj_pair.R, proj_pair.M
    c = cohomology(R, M, 3).representatives[1]
    pushed = pushforward(proj_pair, c)
    assert is_cocycle3(pushed) == []


def test_functor_triple_rebases_structural_module(proj_pair, z4_z2):
    _, M = z4_z2
    g = Cochain2.zero(proj_pair.R, M)  # equal tables, different object
    t = FunctorTriple(proj_pair, g)
    assert t.g.M is proj_pair.restricted()
    with pytest.raises(TypeError):
        FunctorTriple(proj_pair, Cochain2.zero(rings.make_zn(4), M))


def test_obstruction_identity_vanishes(z3):
    R, M = z3
    pair = identity_pair(R, M)
    h = cochains.AnnStructure.zero(R, M)
    rep = obstruction(h, h, pair)
    assert rep.vanishes and rep.witness is not None
    assert not any(any(tab) for tab in rep.k.tables.values())
    assert rep.hom_class_group.order == cohomology(R, M, 2).order == 3


def test_obstruction_nonvanishing(z4_z2):
    R, M = z4_z2
    pair = identity_pair(R, M)
    hot = cohomology(R, M, 3).representatives[1]
    zero = MacLane3Cochain.zero(R, M)
    rep = obstruction(hot, zero, pair)
    assert not rep.vanishes
    assert rep.witness is None and rep.hom_class_group is None
    assert rep.k == hot


def test_obstruction_accepts_structures(z3):
    R, M = z3
    pair = identity_pair(R, M)
    h = cochains.enumerate_structures(R, M)[7]
    rep = obstruction(h, h, pair)
    assert rep.vanishes


def test_obstruction_rejects_junk(z3):
    R, M = z3
    pair = identity_pair(R, M)
    junk = random_cochain(R, M, "maclane3", random.Random(2))
    with pytest.raises(ValueError, match="not a 3-cocycle"):
        obstruction(junk, junk, pair)
    with pytest.raises(TypeError):
        obstruction(Cochain2.zero(R, M), junk, pair)


def test_frobenius_pair(frobenius):
    R = frobenius.R
    assert frobenius.is_isomorphism()
    assert frobenius.p != tuple(range(R.order))  # genuinely nontrivial
    Mres = frobenius.restricted()
    assert Mres is not frobenius.M2
    res2 = cohomology(R, Mres, 2)
    assert res2.order == 4 and res2.invariant_factors == (2, 2)
    rep = obstruction(MacLane3Cochain.zero(R, frobenius.M),
                      MacLane3Cochain.zero(R, frobenius.M2), frobenius)
    assert rep.vanishes and rep.hom_class_group.order == 4


def test_check_functor_accepts_witness(z3):
    R, M = z3
    pair = identity_pair(R, M)
    hs = cochains.enumerate_structures(R, M)
    rep = obstruction(hs[5], hs[11], pair)
    assert rep.vanishes
    t = FunctorTriple(pair, rep.witness)
    assert check_functor(t, hs[5], hs[11]) == []


def test_check_functor_counts_defects(z3):
    R, M = z3
    pair = identity_pair(R, M)
    h = cochains.AnnStructure.zero(R, M)
    g = random_cochain(R, M, "c2", random.Random(3))
    viol = check_functor(FunctorTriple(pair, g), h, h)
    want = sum(1 for tab in d2(g).tables.values() for v in tab if v)
    assert len(viol) == want


def test_homotopic(z3):
    R, M = z3
    pair = identity_pair(R, M)
    rng = random.Random(4)
    g = random_cochain(R, M, "c2", rng)
    t = random_cochain(R, M, "c1", rng)
    t1 = FunctorTriple(pair, g)
    t2 = FunctorTriple(pair, g + d1(t))
    w = homotopic(t1, t2)
    assert w is not None and d1(w) == d1(t)
    assert homotopic(t1, t1) == Cochain1.zero(R, M)


def test_homotopic_distinguishes_classes(dual_z2):
    R, M = dual_z2
    pair = identity_pair(R, M)
    reps = cohomology(R, M, 2).representatives
    assert homotopic(FunctorTriple(pair, reps[0]),
                     FunctorTriple(pair, reps[1])) is None


def test_homotopic_rejects_different_type(frobenius, gf4):
    R, M = gf4
    t1 = FunctorTriple(identity_pair(R, M), Cochain2.zero(R, M))
    t2 = FunctorTriple(frobenius, Cochain2.zero(R, frobenius.restricted()))
    with pytest.raises(DifferentTypeError):
        homotopic(t1, t2)


def test_hom_class_count(z3):
    R, M = z3
    pair = identity_pair(R, M)
    h = cochains.AnnStructure.zero(R, M)
    assert count_hom_classes_bruteforce(pair, h, h) == 3
    with pytest.raises(BudgetError):
        count_hom_classes_bruteforce(pair, h, h, enum_bits=4)


def test_prestick_requires_isomorphism(proj_pair, z4_z2):
    R, M = z4_z2
    with pytest.raises(ValueError, match="bijective"):
        prestick_invariant(MacLane3Cochain.zero(R, M), proj_pair)


def test_prestick_transport_frobenius(frobenius, gf4):
    R, M = gf4
    rng = random.Random(5)
    g = random_cochain(R, M, "c2", rng)
    c = d2(g)
    moved = prestick_invariant(c, frobenius)
    assert moved.M is M
    assert is_cocycle3(moved) == []
    # Frobenius is an involution, so transporting twice returns the cocycle
    assert prestick_invariant(moved, frobenius) == c
    assert is_coboundary3(moved) is not None


@pytest.mark.slow
def test_prestick_dual_numbers_automorphism():
    """Transport along a + be -> a + 2be on (Z/3)[e], with coefficients in
    Z/3 through the projection; verdicts must agree with the original.

    The order-9 ring makes the full M1-M8 scan (inside is_coboundary3) the
    dominant cost; a nine-figure kernel enumeration is deliberately not
    attempted here.
    """
    base = rings.make_zn(3)
    R = rings.make_dual_numbers(base)
    M = rings.make_bimodule_via_hom(R, 3, [r // 3 for r in range(9)],
                                    label="Z/3 via a")
    p = tuple((r // 3) * 3 + (2 * (r % 3)) % 3 for r in range(9))
    pair = HomPair(R, M, R, M, p, (0, 1, 2))
    assert pair.is_isomorphism()
    g = random_cochain(R, M, "c2", random.Random(10))
    c = d2(g)
    moved = prestick_invariant(c, pair)
    assert moved is not c and moved.M is M
    # the automorphism is an involution on the b coordinate
    assert prestick_invariant(moved, pair) == c
    # is_coboundary3 revalidates its input over every tuple of the
    # nine-element ring, so these two calls are the full-scan checks
    w = is_coboundary3(c)
    assert w is not None and d2(w) == c
    w2 = is_coboundary3(moved)
    assert w2 is not None and d2(w2) == moved
