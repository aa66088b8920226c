"""Normalized cochains in degrees 1-3 and the operators between them.

Two presentations exist in degree 3 and both are first-class here:

  * the quadruple (sigma, alpha, lam, rho) with the eight cocycle equations
    M1-M8 (`MacLane3Cochain`, checked by `is_cocycle3`), and
  * the quintuple (xi, eta, alpha, lam, rho) with the twelve structure
    equations A1-A12 (`AnnStructure`, checked by `is_structure`).

`structure_to_cocycle` / `cocycle_to_structure` translate between them, and
the translation identities sigma(x,y,0,z) = -xi(x,y,z), sigma(0,x,y,0) =
eta(x,y) make the round trip from the structure side exact.

Normalization: alpha vanishes whenever an argument is 0 or 1; lam on a zero
argument or first argument 1; rho on a zero argument or third argument 1;
xi, eta, tau on any zero argument; nu on any 0/1 argument; t at 0 and 1;
sigma on the five patterns (.,.,0,0), (0,0,.,.), (.,0,.,0), (0,.,0,.),
(.,0,0,.).  Forced slots are excluded from every enumeration and matrix.
"""

from __future__ import annotations

from typing import NamedTuple

from . import equations as eqs
from . import kernels
from .rings import FiniteBimodule, FiniteRing


class Violation(NamedTuple):
    equation: str
    args: tuple
    defect: int  # flat module element index, left minus right


class BudgetError(RuntimeError):
    """A configured enumeration budget would be exceeded."""


# --- normalization -----------------------------------------------------------

TABLE_ARITY = {"t": 1, "tau": 2, "nu": 2, "xi": 3, "eta": 2,
               "sigma": 4, "alpha": 3, "lam": 3, "rho": 3}

SHAPE_TABLES = {
    "c1": ("t",),
    "c2": ("tau", "nu"),
    "maclane3": ("sigma", "alpha", "lam", "rho"),
    "ann3": ("xi", "eta", "alpha", "lam", "rho"),
    "lambda-only": ("lam",),
}


def forced_zero(shape, table, args, R) -> bool:
    """Is this slot pinned to 0 by the normalization of the given shape?"""
    if shape == "lambda-only":
        return False
    z, o = R.zero, R.one
    if table == "t":
        return args[0] in (z, o)
    if table in ("tau", "xi", "eta"):
        return z in args
    if table == "nu":
        return any(a in (z, o) for a in args)
    if table == "alpha":
        return any(a in (z, o) for a in args)
    if table == "lam":
        return z in args or args[0] == o
    if table == "rho":
        return z in args or args[2] == o
    if table == "sigma":
        r, s, u, v = args
        return ((u == z and v == z) or (r == z and s == z) or
                (s == z and v == z) or (r == z and u == z) or
                (s == z and u == z))
    raise KeyError(table)


def iter_args(n, arity):
    """All argument tuples in lexicographic = flat-index order."""
    total = n ** arity
    for i in range(total):
        out = []
        for _ in range(arity):
            out.append(0)
        j = i
        for k in range(arity - 1, -1, -1):
            out[k] = j % n
            j //= n
        yield tuple(out)


def _flat(args, n):
    i = 0
    for a in args:
        i = i * n + a
    return i


# --- cochain containers ------------------------------------------------------

class Cochain:
    """Shared container: immutable flat tables of module element indices."""

    shape: str = ""

    def __init__(self, R: FiniteRing, M: FiniteBimodule, tables, check=True):
        self.R = R
        self.M = M
        n = R.order
        self.tables = {}
        for name in SHAPE_TABLES[self.shape]:
            tab = tuple(tables[name])
            want = n ** TABLE_ARITY[name]
            if len(tab) != want:
                raise ValueError(f"{name} table must have {want} entries")
            if any(not (0 <= v < M.size) for v in tab):
                raise ValueError(f"{name} entry out of module range")
            self.tables[name] = tab
        if check:
            bad = self.normalization_violations()
            if bad:
                v = bad[0]
                raise ValueError(
                    f"not normalized: {v.equation} at {v.args} = {v.defect}")

    def normalization_violations(self):
        n = self.R.order
        out = []
        for name in SHAPE_TABLES[self.shape]:
            tab = self.tables[name]
            for args in iter_args(n, TABLE_ARITY[name]):
                val = tab[_flat(args, n)]
                if val and forced_zero(self.shape, name, args, self.R):
                    out.append(Violation("N", (name,) + args, val))
        return out

    def value(self, name, *args):
        return self.tables[name][_flat(args, self.R.order)]

    @classmethod
    def zero(cls, R, M):
        tabs = {nm: (0,) * (R.order ** TABLE_ARITY[nm])
                for nm in SHAPE_TABLES[cls.shape]}
        return cls(R, M, tabs, check=False)

    def _binop(self, other, fn):
        if not isinstance(other, type(self)) or other.R is not self.R:
            raise TypeError("mismatched cochains")
        tabs = {nm: tuple(fn(a, b) for a, b in zip(self.tables[nm], other.tables[nm]))
                for nm in self.tables}
        return type(self)(self.R, self.M, tabs, check=False)

    def __add__(self, other):
        return self._binop(other, self.M.add)

    def __sub__(self, other):
        return self._binop(other, self.M.sub)

    def __neg__(self):
        tabs = {nm: tuple(self.M.neg(v) for v in tab)
                for nm, tab in self.tables.items()}
        return type(self)(self.R, self.M, tabs, check=False)

    def __eq__(self, other):
        return (type(other) is type(self) and other.R is self.R
                and other.tables == self.tables)

    def __hash__(self):
        return hash((self.shape, tuple(sorted(self.tables.items()))))

    def __repr__(self):
        nz = sum(1 for tab in self.tables.values() for v in tab if v)
        return f"<{type(self).__name__} over {self.R.label}, {nz} nonzero entries>"


class Cochain1(Cochain):
    shape = "c1"


class Cochain2(Cochain):
    shape = "c2"


class MacLane3Cochain(Cochain):
    shape = "maclane3"


class AnnStructure(Cochain):
    shape = "ann3"


SHAPE_CLASS = {c.shape: c for c in (Cochain1, Cochain2, MacLane3Cochain, AnnStructure)}


def random_cochain(R, M, shape, rng):
    """Uniformly random normalized cochain of the given shape."""
    cls = SHAPE_CLASS[shape]
    n = R.order
    tabs = {}
    for name in SHAPE_TABLES[shape]:
        tabs[name] = tuple(
            0 if forced_zero(shape, name, args, R) else rng.randrange(M.size)
            for args in iter_args(n, TABLE_ARITY[name])
        )
    return cls(R, M, tabs)


# --- coboundaries ------------------------------------------------------------

def d1(t: Cochain1) -> Cochain2:
    """tau(x,y) = t(y) - t(x+y) + t(x); nu(x,y) = x.t(y) - t(xy) + t(x).y."""
    out = kernels.eval_defs(eqs.D1_DEF, t.R, t.M, t.tables)
    return Cochain2(t.R, t.M, out)


def d2(g: Cochain2) -> MacLane3Cochain:
    out = kernels.eval_defs(eqs.D2_DEF, g.R, g.M, g.tables)
    return MacLane3Cochain(g.R, g.M, out)


def structure_coboundary(g: Cochain2) -> AnnStructure:
    """The quintuple by which (tau, nu) shifts a structure inside its class."""
    out = kernels.eval_defs(eqs.ANN_SHIFT_DEF, g.R, g.M, g.tables)
    return AnnStructure(g.R, g.M, out)


# --- checkers ----------------------------------------------------------------

def is_cocycle3(c: MacLane3Cochain, jobs=1):
    """All M1-M8 defects (plus any normalization breaks, tagged "N")."""
    out = list(c.normalization_violations())
    out += [Violation(*v) for v in
            kernels.check_system(eqs.M_SYSTEM, c.R, c.M, c.tables, jobs=jobs)]
    return out


def is_structure(h: AnnStructure, jobs=1):
    """All A1-A12 defects (plus any normalization breaks, tagged "N")."""
    out = list(h.normalization_violations())
    out += [Violation(*v) for v in
            kernels.check_system(eqs.A_SYSTEM, h.R, h.M, h.tables, jobs=jobs)]
    return out


# --- degree-3 conversions ----------------------------------------------------

def structure_to_cocycle(h: AnnStructure, checked=True) -> MacLane3Cochain:
    """sigma(x,y,z,t) = xi(x+y,z,t) - xi(x,y,z) + eta(y,z) + xi(x,z,y)
    - xi(x+z,y,t); alpha, lam, rho carried over."""
    if checked:
        bad = is_structure(h)
        if bad:
            raise ValueError(f"not a structure: {bad[0]}")
    out = kernels.eval_defs((eqs.SIGMA_OF_STRUCTURE,), h.R, h.M, h.tables)
    tabs = {"sigma": out["sigma"], "alpha": h.tables["alpha"],
            "lam": h.tables["lam"], "rho": h.tables["rho"]}
    return MacLane3Cochain(h.R, h.M, tabs)


def cocycle_to_structure(c: MacLane3Cochain, checked=True) -> AnnStructure:
    """xi(x,y,z) = -sigma(x,y,0,z); eta(x,y) = sigma(0,x,y,0)."""
    if checked:
        bad = is_cocycle3(c)
        if bad:
            raise ValueError(f"not a cocycle: {bad[0]}")
    out = kernels.eval_defs((eqs.XI_OF_COCYCLE, eqs.ETA_OF_COCYCLE),
                            c.R, c.M, c.tables)
    tabs = {"xi": out["xi"], "eta": out["eta"], "alpha": c.tables["alpha"],
            "lam": c.tables["lam"], "rho": c.tables["rho"]}
    return AnnStructure(c.R, c.M, tabs)


# --- the remaining structure-level operators ---------------------------------

def inner_derivation(M: FiniteBimodule, a) -> Cochain1:
    """t(x) = a.x - x.a for a module element a (flat index or coords)."""
    if not isinstance(a, int):
        a = M.index(a)
    R = M.ring
    tab = tuple(M.sub(M.ract[x][a], M.lact[x][a]) for x in range(R.order))
    return Cochain1(R, M, {"t": tab})


def is_regular(h: AnnStructure) -> bool:
    """eta(x, x) = 0 for every x."""
    return all(h.value("eta", x, x) == 0 for x in h.R.elements)


def cohomologous_structures(h: AnnStructure, h2: AnnStructure):
    """A witness (tau, nu) shifting h onto h2, or None.

    Solved as a linear system over the slot groups (degree-2 solver on the
    difference).
    """
    if h.R is not h2.R or h.M is not h2.M:
        raise ValueError("structures live over different (R, M)")
    from . import engine

    return engine.solve_structure_shift(h2 - h)


def enumerate_structures(R, M, enum_bits: int = 24, bruteforce=False):
    """Every structure on (R, M), as a list closed under addition.

    The structure group is the kernel of the (linear) A-system, so the
    enumeration walks that kernel.  Refuses (BudgetError) if the group would
    exceed 2**enum_bits elements; bruteforce=True instead tries all
    assignments of the free slots (budget: slots x log2|M| <= enum_bits) and
    filters by the checker, as an independent oracle for tiny instances.
    """
    from . import engine

    if bruteforce:
        return engine.enumerate_structures_bruteforce(R, M, enum_bits)
    return engine.enumerate_structures_kernel(R, M, enum_bits)
