"""Term tables for every identity in the library.

Each equation or table definition is a list of *terms* evaluated over ring
element tuples.  A term is

    (sign, action, table, args)

with sign in {+1, -1}, action None or ("L", expr) / ("R", expr) for the left
or right module action by the ring element expr evaluates to, table the name
of a cochain table, and args a tuple of ring expressions.

Ring expressions are a tiny tuple language:

    ("v", i)        variable i of the equation
    ("+", a, b)     ring addition
    ("*", a, b)     ring multiplication
    ("0",) / ("1",) the ring constants

Everything downstream (the checkers, the coboundary operators, the constraint
matrices, both evaluation kernels) consumes these tables, so the whole
library has a single authoritative copy of each identity.
"""

from __future__ import annotations

from typing import NamedTuple


class Equation(NamedTuple):
    name: str
    nvars: int
    terms: tuple


class TableDef(NamedTuple):
    """Defines an output table slot-by-slot: out(x1..xk) = sum of terms."""

    table: str
    nvars: int
    terms: tuple


def V(i):
    return ("v", i)


def P(a, b):
    return ("+", a, b)


def T(a, b):
    return ("*", a, b)


ZERO = ("0",)
ONE = ("1",)

x, y, z, t, r, s, u, v, w = (V(i) for i in range(9))


def ev(expr, vals, R):
    """Reference evaluator for ring expressions."""
    k = expr[0]
    if k == "v":
        return vals[expr[1]]
    if k == "0":
        return R.zero
    if k == "1":
        return R.one
    a = ev(expr[1], vals, R)
    b = ev(expr[2], vals, R)
    return R.add[a][b] if k == "+" else R.mul[a][b]


def eval_terms(terms, vals, R, M, tables):
    """Reference evaluator: sum of the terms at one variable assignment.

    tables maps table name -> dict or flat list keyed by the argument tuple.
    Used for cross-checking the compiled kernels and for tiny instances.
    """
    acc = 0
    for sign, action, tname, args in terms:
        tab = tables[tname]
        key = tuple(ev(a, vals, R) for a in args)
        val = tab[key] if isinstance(tab, dict) else tab[flat_index(key, R.order)]
        if action is not None:
            actor = ev(action[1], vals, R)
            val = M.lact[actor][val] if action[0] == "L" else M.ract[actor][val]
        acc = M.add(acc, val) if sign > 0 else M.sub(acc, val)
    return acc


def flat_index(args, n):
    i = 0
    for a in args:
        i = i * n + a
    return i


# --- the structure equations (checker for the quintuple (xi,eta,alpha,lam,rho))

A_SYSTEM = (
    Equation("A1", 4, (
        (+1, None, "xi", (y, z, t)),
        (-1, None, "xi", (P(x, y), z, t)),
        (+1, None, "xi", (x, P(y, z), t)),
        (-1, None, "xi", (x, y, P(z, t))),
        (+1, None, "xi", (x, y, z)),
    )),
    Equation("A2", 3, (
        (+1, None, "xi", (x, y, z)),
        (-1, None, "xi", (x, z, y)),
        (+1, None, "xi", (z, x, y)),
        (+1, None, "eta", (P(x, y), z)),
        (-1, None, "eta", (x, z)),
        (-1, None, "eta", (y, z)),
    )),
    Equation("A3", 2, (
        (+1, None, "eta", (x, y)),
        (+1, None, "eta", (y, x)),
    )),
    Equation("A4", 3, (
        (+1, ("L", x), "eta", (y, z)),
        (-1, None, "eta", (T(x, y), T(x, z))),
        (-1, None, "lam", (x, y, z)),
        (+1, None, "lam", (x, z, y)),
    )),
    Equation("A5", 3, (
        (+1, ("R", z), "eta", (x, y)),
        (-1, None, "eta", (T(x, z), T(y, z))),
        (-1, None, "rho", (x, y, z)),
        (+1, None, "rho", (y, x, z)),
    )),
    Equation("A6", 4, (
        (+1, ("L", x), "xi", (y, z, t)),
        (-1, None, "xi", (T(x, y), T(x, z), T(x, t))),
        (-1, None, "lam", (x, z, t)),
        (+1, None, "lam", (x, P(y, z), t)),
        (-1, None, "lam", (x, y, P(z, t))),
        (+1, None, "lam", (x, y, z)),
    )),
    Equation("A7", 4, (
        (+1, ("R", t), "xi", (x, y, z)),
        (-1, None, "xi", (T(x, t), T(y, t), T(z, t))),
        (-1, None, "rho", (y, z, t)),
        (+1, None, "rho", (P(x, y), z, t)),
        (-1, None, "rho", (x, P(y, z), t)),
        (+1, None, "rho", (x, y, t)),
    )),
    Equation("A8", 4, (
        (-1, None, "lam", (x, z, t)),
        (-1, None, "lam", (y, z, t)),
        (+1, None, "lam", (P(x, y), z, t)),
        (+1, None, "rho", (x, y, z)),
        (+1, None, "rho", (x, y, t)),
        (-1, None, "rho", (x, y, P(z, t))),
        (-1, None, "xi", (P(T(x, z), T(x, t)), T(y, z), T(y, t))),
        (+1, None, "xi", (T(x, z), T(x, t), T(y, z))),
        (-1, None, "eta", (T(x, t), T(y, z))),
        (-1, None, "xi", (T(x, z), T(y, z), T(x, t))),
        (+1, None, "xi", (P(T(x, z), T(y, z)), T(x, t), T(y, t))),
    )),
    Equation("A9", 4, (
        (+1, None, "alpha", (x, y, P(z, t))),
        (-1, None, "alpha", (x, y, z)),
        (-1, None, "alpha", (x, y, t)),
        (-1, ("L", x), "lam", (y, z, t)),
        (-1, None, "lam", (x, T(y, z), T(y, t))),
        (+1, None, "lam", (T(x, y), z, t)),
    )),
    Equation("A10", 4, (
        (+1, None, "alpha", (x, P(y, z), t)),
        (-1, None, "alpha", (x, y, t)),
        (-1, None, "alpha", (x, z, t)),
        (-1, ("L", x), "rho", (y, z, t)),
        (+1, None, "rho", (T(x, y), T(x, z), t)),
        (-1, None, "lam", (x, T(y, t), T(z, t))),
        (+1, ("R", t), "lam", (x, y, z)),
    )),
    Equation("A11", 4, (
        (+1, None, "alpha", (P(x, y), z, t)),
        (-1, None, "alpha", (x, z, t)),
        (-1, None, "alpha", (y, z, t)),
        (+1, None, "rho", (T(x, z), T(y, z), t)),
        (-1, None, "rho", (x, y, T(z, t))),
        (+1, ("R", t), "rho", (x, y, z)),
    )),
    Equation("A12", 4, (
        (+1, ("L", x), "alpha", (y, z, t)),
        (-1, None, "alpha", (T(x, y), z, t)),
        (+1, None, "alpha", (x, T(y, z), t)),
        (-1, None, "alpha", (x, y, T(z, t))),
        (+1, ("R", t), "alpha", (x, y, z)),
    )),
)


# --- the 3-cocycle equations (checker for the quadruple (sigma,alpha,lam,rho))

M_SYSTEM = (
    Equation("M1", 4, (
        (+1, ("L", x), "alpha", (y, z, t)),
        (-1, None, "alpha", (T(x, y), z, t)),
        (+1, None, "alpha", (x, T(y, z), t)),
        (-1, None, "alpha", (x, y, T(z, t))),
        (+1, ("R", t), "alpha", (x, y, z)),
    )),
    Equation("M2", 4, (
        (+1, None, "alpha", (P(x, y), z, t)),
        (-1, None, "alpha", (x, z, t)),
        (-1, None, "alpha", (y, z, t)),
        (+1, None, "rho", (T(x, z), T(y, z), t)),
        (-1, None, "rho", (x, y, T(z, t))),
        (+1, ("R", t), "rho", (x, y, z)),
    )),
    Equation("M3", 4, (
        (+1, None, "alpha", (x, P(y, z), t)),
        (-1, None, "alpha", (x, y, t)),
        (-1, None, "alpha", (x, z, t)),
        (-1, ("L", x), "rho", (y, z, t)),
        (+1, None, "rho", (T(x, y), T(x, z), t)),
        (-1, None, "lam", (x, T(y, t), T(z, t))),
        (+1, ("R", t), "lam", (x, y, z)),
    )),
    Equation("M4", 4, (
        (+1, None, "alpha", (x, y, z)),
        (+1, None, "alpha", (x, y, t)),
        (-1, None, "alpha", (x, y, P(z, t))),
        (+1, ("L", x), "lam", (y, z, t)),
        (-1, None, "lam", (T(x, y), z, t)),
        (+1, None, "lam", (x, T(y, z), T(y, t))),
    )),
    Equation("M5", 4, (
        (-1, None, "lam", (x, z, t)),
        (-1, None, "lam", (y, z, t)),
        (+1, None, "lam", (P(x, y), z, t)),
        (+1, None, "rho", (x, y, z)),
        (+1, None, "rho", (x, y, t)),
        (-1, None, "rho", (x, y, P(z, t))),
        (-1, None, "sigma", (T(x, z), T(x, t), T(y, z), T(y, t))),
    )),
    Equation("M6", 5, (
        (+1, None, "lam", (r, x, y)),
        (+1, None, "lam", (r, z, t)),
        (-1, None, "lam", (r, P(x, z), P(y, t))),
        (-1, None, "lam", (r, x, z)),
        (-1, None, "lam", (r, y, t)),
        (+1, None, "lam", (r, P(x, y), P(z, t))),
        (-1, ("L", r), "sigma", (x, y, z, t)),
        (+1, None, "sigma", (T(r, x), T(r, y), T(r, z), T(r, t))),
    )),
    Equation("M7", 5, (
        (-1, None, "rho", (x, y, r)),
        (-1, None, "rho", (z, t, r)),
        (+1, None, "rho", (P(x, z), P(y, t), r)),
        (+1, None, "rho", (x, z, r)),
        (+1, None, "rho", (y, t, r)),
        (-1, None, "rho", (P(x, y), P(z, t), r)),
        (-1, None, "sigma", (T(x, r), T(y, r), T(z, r), T(t, r))),
        (+1, ("R", r), "sigma", (x, y, z, t)),
    )),
    Equation("M8", 8, (
        (-1, None, "sigma", (r, s, u, v)),
        (-1, None, "sigma", (x, y, z, t)),
        (+1, None, "sigma", (P(r, x), P(s, y), P(u, z), P(v, t))),
        (+1, None, "sigma", (r, s, x, y)),
        (+1, None, "sigma", (u, v, z, t)),
        (-1, None, "sigma", (P(r, u), P(s, v), P(x, z), P(y, t))),
        (-1, None, "sigma", (r, u, x, z)),
        (-1, None, "sigma", (s, v, y, t)),
        (+1, None, "sigma", (P(r, s), P(u, v), P(x, y), P(z, t))),
    )),
)


# --- the categorical-ring equations for a bare left-distributivity table

R_SYSTEM = (
    Equation("R1", 4, (
        (+1, ("L", x), "lam", (y, z, t)),
        (-1, None, "lam", (T(x, y), z, t)),
        (+1, None, "lam", (x, T(y, z), T(y, t))),
    )),
    Equation("R2", 4, (
        (+1, ("R", t), "lam", (x, y, z)),
        (-1, None, "lam", (x, T(y, t), T(z, t))),
    )),
    Equation("R3", 2, (
        (+1, None, "lam", (ONE, x, y)),
    )),
    Equation("R4", 5, (
        (+1, None, "lam", (r, P(x, z), P(y, t))),
        (+1, None, "lam", (r, x, y)),
        (+1, None, "lam", (r, z, t)),
        (-1, None, "lam", (r, P(x, y), P(z, t))),
        (-1, None, "lam", (r, x, z)),
        (-1, None, "lam", (r, y, t)),
    )),
    Equation("R5", 4, (
        (+1, None, "lam", (P(x, y), z, t)),
        (-1, None, "lam", (x, z, t)),
        (-1, None, "lam", (y, z, t)),
    )),
)


# --- coboundary of a 1-cochain t: the pair (tau, nu)

D1_DEF = (
    TableDef("tau", 2, (
        (+1, None, "t", (y,)),
        (-1, None, "t", (P(x, y),)),
        (+1, None, "t", (x,)),
    )),
    TableDef("nu", 2, (
        (+1, ("L", x), "t", (y,)),
        (-1, None, "t", (T(x, y),)),
        (+1, ("R", y), "t", (x,)),
    )),
)


# --- coboundary of a 2-cochain (tau, nu): the quadruple (sigma,alpha,lam,rho)

D2_DEF = (
    TableDef("sigma", 4, (
        (+1, None, "tau", (x, y)),
        (+1, None, "tau", (z, t)),
        (-1, None, "tau", (P(x, z), P(y, t))),
        (-1, None, "tau", (x, z)),
        (-1, None, "tau", (y, t)),
        (+1, None, "tau", (P(x, y), P(z, t))),
    )),
    TableDef("alpha", 3, (
        (+1, ("L", x), "nu", (y, z)),
        (-1, None, "nu", (T(x, y), z)),
        (+1, None, "nu", (x, T(y, z))),
        (-1, ("R", z), "nu", (x, y)),
    )),
    TableDef("lam", 3, (
        (+1, None, "nu", (x, P(y, z))),
        (-1, None, "nu", (x, y)),
        (-1, None, "nu", (x, z)),
        (+1, ("L", x), "tau", (y, z)),
        (-1, None, "tau", (T(x, y), T(x, z))),
    )),
    TableDef("rho", 3, (
        (+1, None, "nu", (P(x, y), z)),
        (-1, None, "nu", (x, z)),
        (-1, None, "nu", (y, z)),
        (+1, ("R", z), "tau", (x, y)),
        (-1, None, "tau", (T(x, z), T(y, z))),
    )),
)


# --- the same action written on structures: shift of (tau, nu) as a quintuple

ANN_SHIFT_DEF = (
    TableDef("xi", 3, (
        (+1, None, "tau", (y, z)),
        (-1, None, "tau", (P(x, y), z)),
        (+1, None, "tau", (x, P(y, z))),
        (-1, None, "tau", (x, y)),
    )),
    TableDef("eta", 2, (
        (+1, None, "tau", (x, y)),
        (-1, None, "tau", (y, x)),
    )),
) + D2_DEF[1:]


# --- conversions between the quintuple and quadruple presentations

SIGMA_OF_STRUCTURE = TableDef("sigma", 4, (
    (+1, None, "xi", (P(x, y), z, t)),
    (-1, None, "xi", (x, y, z)),
    (+1, None, "eta", (y, z)),
    (+1, None, "xi", (x, z, y)),
    (-1, None, "xi", (P(x, z), y, t)),
))

XI_OF_COCYCLE = TableDef("xi", 3, (
    (-1, None, "sigma", (x, y, ZERO, z)),
))

ETA_OF_COCYCLE = TableDef("eta", 2, (
    (+1, None, "sigma", (ZERO, x, y, ZERO)),
))


SYSTEMS = {"ann3": A_SYSTEM, "maclane3": M_SYSTEM, "catring": R_SYSTEM}
