"""The term tables are the single authoritative copy of every identity, so
these tests pin their shape and the reference evaluator's behavior."""

from maclane import equations as eq
from maclane import rings


def test_system_inventory():
    assert [e.name for e in eq.SYSTEMS["ann3"]] == [f"A{i}" for i in range(1, 13)]
    assert [e.name for e in eq.SYSTEMS["maclane3"]] == [f"M{i}" for i in range(1, 9)]
    assert [e.name for e in eq.SYSTEMS["catring"]] == [f"R{i}" for i in range(1, 6)]


def test_m8_has_eight_variables():
    m8 = eq.SYSTEMS["maclane3"][-1]
    assert m8.nvars == 8


def test_expression_evaluator():
    R = rings.make_zn(5)
    e = eq.P(eq.T(eq.V(0), eq.V(1)), eq.ONE)  # x*y + 1
    assert eq.ev(e, (3, 4), R) == 3
    assert eq.ev(eq.ZERO, (), R) == 0


def test_terms_reference_evaluator():
    R = rings.make_zn(3)
    M = rings.make_bimodule_via_hom(R, 3, [0, 1, 2])
    # single term: x . t(y), with t the identity-ish table
    terms = ((1, ("L", eq.V(0)), "t", (eq.V(1),)),)
    tables = {"t": [0, 1, 2]}
    assert eq.eval_terms(terms, (2, 2), R, M, tables) == 1
    # sign and right action
    terms = ((-1, ("R", eq.V(0)), "t", (eq.V(1),)),)
    assert eq.eval_terms(terms, (2, 2), R, M, tables) == 2


def test_catring_r3_is_left_unit_slot():
    r3 = eq.SYSTEMS["catring"][2]
    assert r3.name == "R3" and r3.nvars == 2
    (sign, action, table, args), = r3.terms
    assert sign == 1 and action is None and table == "lam"
    assert args[0] == eq.ONE


def test_conversion_defs_target_the_right_tables():
    assert eq.XI_OF_COCYCLE.table == "xi"
    assert eq.ETA_OF_COCYCLE.table == "eta"
    assert eq.SIGMA_OF_STRUCTURE.table == "sigma"
    assert [d.table for d in eq.D1_DEF] == ["tau", "nu"]
    assert [d.table for d in eq.D2_DEF] == ["sigma", "alpha", "lam", "rho"]
    assert [d.table for d in eq.ANN_SHIFT_DEF] == ["xi", "eta", "alpha",
                                                   "lam", "rho"]


def test_xi_of_cocycle_is_interchange_slice():
    # xi(x, y, z) reads sigma at (x, y, 0, z) with a sign
    (sign, action, table, args), = eq.XI_OF_COCYCLE.terms
    assert table == "sigma" and action is None and sign == -1
    assert args == (eq.V(0), eq.V(1), eq.ZERO, eq.V(2))
