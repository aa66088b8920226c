"""Type-(p, q) homomorphism pairs, pullback/pushforward of cochains, the
obstruction class of a would-be functor datum, and homotopy classification.

Conventions: a pair (p, q) maps (R, M) to (R2, M2) with p a unital ring
homomorphism and q additive and compatible with both actions.  All derived
cochains live over M2 restricted along p (r.m = p(r).m), so every H^2/H^3
question about the pair is asked over (R, restricted M2).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cochains, engine
from .cochains import (BudgetError, Cochain2, MacLane3Cochain,
                       AnnStructure, SHAPE_TABLES, TABLE_ARITY, Violation)
from .rings import FiniteBimodule, FiniteRing, ShapeError


class DifferentTypeError(ValueError):
    """Raised when two functor triples do not share the same (p, q)."""


def restrict_bimodule(M2: FiniteBimodule, p, R: FiniteRing) -> FiniteBimodule:
    """M2 as an (R, R)-bimodule through p: r.m = p(r).m, m.r = m.p(r)."""
    left = tuple(M2.left_gen[p[r]] for r in range(R.order))
    right = tuple(tuple(M2.right_gen[i][p[r]] for r in range(R.order))
                  for i in range(len(M2.orders)))
    return FiniteBimodule(R, M2.orders, left, right,
                          label=f"{M2.label} along p")


@dataclass(frozen=True)
class HomPair:
    """p: R -> R2 (unital ring hom), q: M -> M2 (additive, action
    compatible on both sides), given as index tables."""

    R: FiniteRing
    M: FiniteBimodule
    R2: FiniteRing
    M2: FiniteBimodule
    p: tuple
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "q", tuple(self.q))
        p, q = self.p, self.q
        R, M, R2, M2 = self.R, self.M, self.R2, self.M2
        if len(p) != R.order or any(not 0 <= x < R2.order for x in p):
            raise ShapeError("p must map every element of R into R2")
        if len(q) != M.size or any(not 0 <= x < M2.size for x in q):
            raise ShapeError("q must map every element of M into M2")
        errs = self.defects()
        if errs:
            raise ValueError(f"invalid hom pair: {errs[0]}"
                             + (f" (+{len(errs)-1} more)" if len(errs) > 1 else ""))

    def defects(self):
        p, q = self.p, self.q
        R, M, R2, M2 = self.R, self.M, self.R2, self.M2
        out = []
        if p[R.zero] != R2.zero:
            out.append("p(0) != 0")
        if p[R.one] != R2.one:
            out.append("p(1) != 1")
        for x in range(R.order):
            for y in range(R.order):
                if p[R.add[x][y]] != R2.add[p[x]][p[y]]:
                    out.append(f"p not additive at ({x},{y})")
                if p[R.mul[x][y]] != R2.mul[p[x]][p[y]]:
                    out.append(f"p not multiplicative at ({x},{y})")
        for a in range(M.size):
            for b in range(M.size):
                if q[M.add(a, b)] != M2.add(q[a], q[b]):
                    out.append(f"q not additive at ({a},{b})")
        for x in range(R.order):
            for a in range(M.size):
                if q[M.lact[x][a]] != M2.lact[p[x]][q[a]]:
                    out.append(f"q(x.a) != p(x).q(a) at ({x},{a})")
                if q[M.ract[x][a]] != M2.ract[p[x]][q[a]]:
                    out.append(f"q(a.x) != q(a).p(x) at ({x},{a})")
        return out

    def restricted(self) -> FiniteBimodule:
        if "restricted" not in _pair_cache(self):
            if self.R is self.R2 and self.p == tuple(range(self.R.order)):
                res = self.M2
            else:
                res = restrict_bimodule(self.M2, self.p, self.R)
            _pair_cache(self)["restricted"] = res
        return _pair_cache(self)["restricted"]

    def is_isomorphism(self) -> bool:
        return (len(set(self.p)) == self.R.order == self.R2.order
                and len(set(self.q)) == self.M.size == self.M2.size)


_PAIR_CACHE: dict = {}


def _pair_cache(pair: HomPair) -> dict:
    key = id(pair)
    hit = _PAIR_CACHE.get(key)
    if hit is not None and hit[0] is pair:
        return hit[1]
    while len(_PAIR_CACHE) > 4096:
        _PAIR_CACHE.pop(next(iter(_PAIR_CACHE)))
    entry = (pair, {})
    _PAIR_CACHE[key] = entry
    return entry[1]


def identity_pair(R: FiniteRing, M: FiniteBimodule) -> HomPair:
    return HomPair(R, M, R, M, tuple(range(R.order)), tuple(range(M.size)))


def pushforward(pair: HomPair, c):
    """Apply q to every table value: (q*c)(args) = q(c(args)).

    The result lives over (R, M2 restricted along p).
    """
    if c.R is not pair.R or c.M is not pair.M:
        raise TypeError("cochain is not over the pair's source (R, M)")
    Mres = pair.restricted()
    q = pair.q
    tables = {name: tuple(q[v] for v in tab) for name, tab in c.tables.items()}
    return type(c)(pair.R, Mres, tables)


def pullback(pair: HomPair, c2):
    """Precompose every argument with p: (p^*c)(args) = c(p(args))."""
    if c2.R is not pair.R2 or c2.M is not pair.M2:
        raise TypeError("cochain is not over the pair's target (R2, M2)")
    Mres = pair.restricted()
    p = pair.p
    n, n2 = pair.R.order, pair.R2.order
    tables = {}
    for name, tab in c2.tables.items():
        arity = TABLE_ARITY[name]
        out = []
        for args in cochains.iter_args(n, arity):
            i2 = 0
            for a in args:
                i2 = i2 * n2 + p[a]
            out.append(tab[i2])
        tables[name] = tuple(out)
    return type(c2)(pair.R, Mres, tables)


def _as_cocycle(h, where):
    if isinstance(h, AnnStructure):
        return cochains.structure_to_cocycle(h)
    if isinstance(h, MacLane3Cochain):
        viol = cochains.is_cocycle3(h)
        if viol:
            raise ValueError(f"{where} is not a 3-cocycle: {viol[0]}")
        return h
    raise TypeError(f"{where} must be an AnnStructure or MacLane3Cochain")


@dataclass(frozen=True)
class FunctorTriple:
    """A candidate functor datum: the pair plus its 2-cochain g over
    (R, restricted M2)."""

    pair: HomPair
    g: Cochain2

    def __post_init__(self):
        res = self.pair.restricted()
        g = self.g
        if g.R is not self.pair.R:
            raise TypeError("g must live over the pair's source ring")
        if g.M is not res:
            if (g.M.orders, g.M.lact, g.M.ract) != (res.orders, res.lact,
                                                    res.ract):
                raise TypeError("g must live over (R, M2 restricted along p)")
            object.__setattr__(self, "g", Cochain2(self.pair.R, res, g.tables))


@dataclass(frozen=True)
class ObstructionReport:
    k: MacLane3Cochain
    vanishes: bool
    witness: object            # Cochain2 or None
    hom_class_group: object    # CohomologyResult or None


def obstruction(h, h2, pair: HomPair) -> ObstructionReport:
    """The obstruction k = q*h - p^*h2 of the pair, with vanishing verdict.

    h lives over the source (R, M), h2 over the target (R2, M2); structures
    are converted to their cocycles first.  A functor datum g of type (p, q)
    exists iff k is a coboundary; in that case the homotopy classes of valid
    g biject with H^2(R, restricted M2).
    """
    hc = _as_cocycle(h, "h")
    hc2 = _as_cocycle(h2, "h2")
    k = pushforward(pair, hc) - pullback(pair, hc2)
    witness = engine.is_coboundary3(k)
    group = None
    if witness is not None:
        group = engine.cohomology(pair.R, pair.restricted(), 2)
    return ObstructionReport(k, witness is not None, witness, group)


def check_functor(t: FunctorTriple, h, h2):
    """Defects of q*h - p^*h2 - d2(g); empty iff the triple is a functor
    datum for (h, h2)."""
    hc = _as_cocycle(h, "h")
    hc2 = _as_cocycle(h2, "h2")
    diff = pushforward(t.pair, hc) - pullback(t.pair, hc2) - cochains.d2(t.g)
    n = t.pair.R.order
    out = []
    for name in SHAPE_TABLES[diff.shape]:
        tab = diff.tables[name]
        for i, args in enumerate(cochains.iter_args(n, TABLE_ARITY[name])):
            if tab[i]:
                out.append(Violation(name, args, tab[i]))
    return out


def homotopic(t1: FunctorTriple, t2: FunctorTriple):
    """A 1-cochain t with d1(t) = g2 - g1, or None.

    Triples of different type (p, q) are never homotopic; that case raises
    DifferentTypeError rather than reporting an absent witness.
    """
    if t1.pair.p != t2.pair.p or t1.pair.q != t2.pair.q or \
            t1.pair.R is not t2.pair.R or t1.pair.R2 is not t2.pair.R2:
        raise DifferentTypeError("triples are not of the same type (p, q)")
    g2 = t2.g
    if g2.M is not t1.g.M:
        # equal pairs held as distinct objects: rebase onto t1's module
        g2 = Cochain2(t1.g.R, t1.g.M, g2.tables)
    diff = g2 - t1.g
    return engine.is_coboundary2(diff)


def count_hom_classes_bruteforce(pair: HomPair, h, h2,
                                 enum_bits: int = engine.ENUM_BITS_DEFAULT) -> int:
    """Number of valid g modulo g ~ g + d1(t), by enumerating every
    normalized 2-cochain over (R, restricted M2).

    Equals |H^2(R, restricted M2)| when the obstruction vanishes and 0
    otherwise; this is the enumeration side of that bijection.
    """
    hc = _as_cocycle(h, "h")
    hc2 = _as_cocycle(h2, "h2")
    Mres = pair.restricted()
    R = pair.R
    k = pushforward(pair, hc) - pullback(pair, hc2)
    basis = engine.slot_basis(R, Mres, "c2")
    bits = sum((d - 1).bit_length() for d in basis.orders)
    if bits > enum_bits:
        raise BudgetError(f"{len(basis.slots)} 2-cochain slots need {bits} "
                          f"bits, over the 2^{enum_bits} budget")
    zero3 = MacLane3Cochain.zero(R, Mres)
    valid = []
    m = len(basis.slots)
    vec = [0] * m
    while True:
        g = basis.cochain_of(tuple(vec))
        if cochains.d2(g) - k == zero3:
            valid.append(tuple(vec))
        i = m - 1
        while i >= 0:
            vec[i] += 1
            if vec[i] < basis.orders[i]:
                break
            vec[i] = 0
            i -= 1
        if i < 0:
            break
    if not valid:
        return 0
    sol = engine._solver(R, Mres, "d1")
    reps = []
    for v in valid:
        if not any(sol.solve(tuple((a - b) % d for a, b, d in
                                   zip(v, r, basis.orders))) is not None
                   for r in reps):
            reps.append(v)
    return len(reps)


def prestick_invariant(h, pair: HomPair) -> MacLane3Cochain:
    """Transport of a degree-3 class along an isomorphism pair: the cocycle
    q^{-1}_*(p^* h) over the source (R, M).

    h lives over the target (R2, M2); p and q must be bijective.
    """
    if not pair.is_isomorphism():
        raise ValueError("prestick transport needs bijective p and q")
    hc = _as_cocycle(h, "h")
    pulled = pullback(pair, hc)
    qinv = [0] * pair.M.size
    for a, b in enumerate(pair.q):
        qinv[b] = a
    tables = {name: tuple(qinv[v] for v in tab)
              for name, tab in pulled.tables.items()}
    return MacLane3Cochain(pair.R, pair.M, tables)
