"""Finite unital rings and finite bimodules over them.

Everything downstream (cochains, constraint systems, cohomology) works over a
pair (R, M) built here.  Rings are given by full addition/multiplication
tables on element indices; bimodules are finite abelian groups presented as a
product of cyclic factors, with the two ring actions stored on the cyclic
generators and extended additively.

Module elements are handled as flat mixed-radix indices internally; the
``coords``/``index`` helpers translate to coordinate tuples at the edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm, prod


class ShapeError(ValueError):
    """Raised when an input table has the wrong dimensions or range."""


@dataclass(frozen=True)
class FiniteRing:
    order: int
    add: tuple  # add[x][y] -> index
    mul: tuple  # mul[x][y] -> index
    zero: int
    one: int
    label: str = "R"
    names: tuple = ()
    neg: tuple = field(init=False, repr=False)

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise ShapeError("ring order must be >= 1")
        for tag, tab in (("add", self.add), ("mul", self.mul)):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise ShapeError(f"{tag} table is not {n}x{n}")
            if any(not (0 <= v < n) for row in tab for v in row):
                raise ShapeError(f"{tag} table entry out of range")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise ShapeError("zero/one index out of range")
        neg = [None] * n
        for x in range(n):
            for y in range(n):
                if self.add[x][y] == self.zero:
                    neg[x] = y
        if any(v is None for v in neg):
            raise ShapeError("some element has no additive inverse")
        object.__setattr__(self, "neg", tuple(neg))
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(n)))

    @property
    def elements(self):
        return range(self.order)

    def sub(self, x, y):
        return self.add[x][self.neg[y]]


def make_zn(n: int) -> FiniteRing:
    """Z/n with the usual modular tables (n = 1 gives the zero ring)."""
    if n < 1:
        raise ShapeError("n must be >= 1")
    add = tuple(tuple((x + y) % n for y in range(n)) for x in range(n))
    mul = tuple(tuple((x * y) % n for y in range(n)) for x in range(n))
    return FiniteRing(n, add, mul, 0, 1 % n, label=f"Z/{n}")


def make_dual_numbers(base: FiniteRing) -> FiniteRing:
    """Dual numbers base[eps], eps^2 = 0.

    Element a + b*eps is the index a*base.order + b.
    """
    n = base.order
    o = n * n

    def enc(a, b):
        return a * n + b

    add = [[0] * o for _ in range(o)]
    mul = [[0] * o for _ in range(o)]
    names = []
    for a1 in range(n):
        for b1 in range(n):
            i = enc(a1, b1)
            na, nb = base.names[a1], base.names[b1]
            names.append(na if b1 == base.zero else f"{na}+{nb}e")
            for a2 in range(n):
                for b2 in range(n):
                    j = enc(a2, b2)
                    add[i][j] = enc(base.add[a1][a2], base.add[b1][b2])
                    mul[i][j] = enc(
                        base.mul[a1][a2],
                        base.add[base.mul[a1][b2]][base.mul[b1][a2]],
                    )
    return FiniteRing(
        o,
        tuple(map(tuple, add)),
        tuple(map(tuple, mul)),
        enc(base.zero, base.zero),
        enc(base.one, base.zero),
        label=f"{base.label}[e]",
        names=tuple(names),
    )


def make_product(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    """Componentwise product ring on index pairs (i, j) -> i*|r2| + j."""
    n1, n2 = r1.order, r2.order
    o = n1 * n2

    def enc(i, j):
        return i * n2 + j

    add = [[0] * o for _ in range(o)]
    mul = [[0] * o for _ in range(o)]
    names = []
    for i in range(n1):
        for j in range(n2):
            names.append(f"({r1.names[i]},{r2.names[j]})")
            for k in range(n1):
                for l in range(n2):
                    add[enc(i, j)][enc(k, l)] = enc(r1.add[i][k], r2.add[j][l])
                    mul[enc(i, j)][enc(k, l)] = enc(r1.mul[i][k], r2.mul[j][l])
    return FiniteRing(
        o,
        tuple(map(tuple, add)),
        tuple(map(tuple, mul)),
        enc(r1.zero, r2.zero),
        enc(r1.one, r2.one),
        label=f"{r1.label} x {r2.label}",
        names=tuple(names),
    )


def make_ring_from_tables(add, mul, zero, one, label="R", names=()) -> FiniteRing:
    """Ring straight from user tables (validated for shape only; run
    validate_ring for the axioms)."""
    add = tuple(tuple(row) for row in add)
    mul = tuple(tuple(row) for row in mul)
    return FiniteRing(len(add), add, mul, zero, one, label=label, names=tuple(names))


def validate_ring(r: FiniteRing):
    """Exhaustive axiom check. Returns a list of (axiom tag, witness tuple);
    empty means valid."""
    out = []
    n = r.order
    add, mul = r.add, r.mul
    for x in range(n):
        if add[x][r.zero] != x:
            out.append(("zero identity", (x,)))
        if mul[x][r.one] != x or mul[r.one][x] != x:
            out.append(("one identity", (x,)))
        for y in range(n):
            if add[x][y] != add[y][x]:
                out.append(("addition not commutative", (x, y)))
            for z in range(n):
                if add[add[x][y]][z] != add[x][add[y][z]]:
                    out.append(("addition not associative", (x, y, z)))
                if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                    out.append(("multiplication not associative", (x, y, z)))
                if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                    out.append(("left distributivity", (x, y, z)))
                if mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]:
                    out.append(("right distributivity", (x, y, z)))
    return out


@dataclass(frozen=True)
class FiniteBimodule:
    """Finite (R, R)-bimodule: product of cyclic groups Z/d_1 x ... x Z/d_k
    with ring actions given on the generators e_i.

    left_gen[r][i] and right_gen[i][r] are coordinate tuples for r.e_i and
    e_i.r.  Full element-level tables (flat mixed-radix indices) are
    precomputed: add_el, neg_el, lact[r][m], ract[r][m] (= m.r).
    """

    ring: FiniteRing
    orders: tuple
    left_gen: tuple  # [r][i] -> coords
    right_gen: tuple  # [i][r] -> coords
    label: str = "M"
    size: int = field(init=False, repr=False)
    add_el: tuple = field(init=False, repr=False)
    neg_el: tuple = field(init=False, repr=False)
    lact: tuple = field(init=False, repr=False)
    ract: tuple = field(init=False, repr=False)

    def __post_init__(self):
        k = len(self.orders)
        n = self.ring.order
        if any(d < 1 for d in self.orders):
            raise ShapeError("cyclic orders must be >= 1")
        if len(self.left_gen) != n or any(len(row) != k for row in self.left_gen):
            raise ShapeError("left_gen is not |R| x k")
        if len(self.right_gen) != k or any(len(row) != n for row in self.right_gen):
            raise ShapeError("right_gen is not k x |R|")
        for tab in (self.left_gen, self.right_gen):
            for row in tab:
                for c in row:
                    if len(c) != k or any(
                        not (0 <= v < d) for v, d in zip(c, self.orders)
                    ):
                        raise ShapeError("generator action coords out of range")
        size = prod(self.orders)
        object.__setattr__(self, "size", size)

        add_el = tuple(
            tuple(
                self.index(
                    tuple((a + b) % d for a, b, d in zip(x, y, self.orders))
                )
                for y in (self.coords(j) for j in range(size))
            )
            for x in (self.coords(i) for i in range(size))
        )
        neg_el = tuple(
            self.index(tuple((-a) % d for a, d in zip(self.coords(i), self.orders)))
            for i in range(size)
        )
        object.__setattr__(self, "add_el", add_el)
        object.__setattr__(self, "neg_el", neg_el)

        # extend generator actions additively to all of M
        lact = []
        ract = []
        for r in range(n):
            lrow = []
            rrow = []
            for m in range(size):
                cs = self.coords(m)
                lv = 0
                rv = 0
                for i, c in enumerate(cs):
                    gl = self.index(self.left_gen[r][i])
                    gr = self.index(self.right_gen[i][r])
                    for _ in range(c):
                        lv = add_el[lv][gl]
                        rv = add_el[rv][gr]
                lrow.append(lv)
                rrow.append(rv)
            lact.append(tuple(lrow))
            ract.append(tuple(rrow))
        object.__setattr__(self, "lact", tuple(lact))
        object.__setattr__(self, "ract", tuple(ract))

    # mixed radix: last coordinate varies fastest
    def index(self, coords) -> int:
        v = 0
        for c, d in zip(coords, self.orders):
            v = v * d + c
        return v

    def coords(self, m: int):
        out = []
        for d in reversed(self.orders):
            out.append(m % d)
            m //= d
        return tuple(reversed(out))

    @property
    def elements(self):
        return range(self.size)

    def add(self, a, b):
        return self.add_el[a][b]

    def neg(self, a):
        return self.neg_el[a]

    def sub(self, a, b):
        return self.add_el[a][self.neg_el[b]]

    def smul(self, c: int, a: int) -> int:
        """Integer scalar multiple c.a in the abelian group."""
        v = 0
        for _ in range(c % self.exponent):
            v = self.add_el[v][a]
        return v

    @property
    def exponent(self):
        return lcm(*self.orders) if self.orders else 1


def make_bimodule_via_hom(R: FiniteRing, m: int, phi, label=None) -> FiniteBimodule:
    """M = Z/m with both actions through a unital ring hom phi: R -> Z/m.

    phi is a list of residues indexed by ring element. Rejected if phi is not
    a homomorphism.
    """
    if m < 1:
        raise ShapeError("m must be >= 1")
    phi = [v % m for v in phi]
    if len(phi) != R.order:
        raise ShapeError("phi must have one entry per ring element")
    if phi[R.zero] != 0:
        raise ValueError(f"phi(0) = {phi[R.zero]} != 0")
    if phi[R.one] != 1 % m:
        raise ValueError(f"phi(1) = {phi[R.one]} != 1")
    for x in range(R.order):
        for y in range(R.order):
            if phi[R.add[x][y]] != (phi[x] + phi[y]) % m:
                raise ValueError(f"phi not additive at ({x},{y})")
            if phi[R.mul[x][y]] != (phi[x] * phi[y]) % m:
                raise ValueError(f"phi not multiplicative at ({x},{y})")
    left = tuple(((phi[r] % m,),) for r in range(R.order))
    right = (tuple((phi[r] % m,) for r in range(R.order)),)
    return FiniteBimodule(
        R, (m,), left, right, label=label or f"Z/{m}-via-hom"
    )


def make_bimodule_from_tables(R, orders, left_gen, right_gen, label="M"):
    left = tuple(tuple(tuple(c) for c in row) for row in left_gen)
    right = tuple(tuple(tuple(c) for c in row) for row in right_gen)
    return FiniteBimodule(R, tuple(orders), left, right, label=label)


def validate_bimodule(M: FiniteBimodule):
    """Exhaustive bimodule axiom check over all elements."""
    out = []
    R = M.ring
    n = R.order
    for i, d in enumerate(M.orders):
        for r in range(n):
            if M.smul(d, M.index(M.left_gen[r][i])) != 0:
                out.append(("left action breaks generator order", (r, i)))
            if M.smul(d, M.index(M.right_gen[i][r])) != 0:
                out.append(("right action breaks generator order", (r, i)))
    for r in range(n):
        for m in range(M.size):
            if M.lact[R.one][m] != m:
                out.append(("left unit", (m,)))
            if M.ract[R.one][m] != m:
                out.append(("right unit", (m,)))
            if M.lact[R.zero][m] != 0 or M.ract[R.zero][m] != 0:
                out.append(("zero action", (m,)))
            for s in range(n):
                if M.lact[R.mul[r][s]][m] != M.lact[r][M.lact[s][m]]:
                    out.append(("left action not associative", (r, s, m)))
                if M.ract[R.mul[r][s]][m] != M.ract[s][M.ract[r][m]]:
                    out.append(("right action not associative", (r, s, m)))
                if M.ract[s][M.lact[r][m]] != M.lact[r][M.ract[s][m]]:
                    out.append(("actions do not commute", (r, s, m)))
                if M.lact[R.add[r][s]][m] != M.add(M.lact[r][m], M.lact[s][m]):
                    out.append(("left action not additive in ring", (r, s, m)))
                if M.ract[R.add[r][s]][m] != M.add(M.ract[r][m], M.ract[s][m]):
                    out.append(("right action not additive in ring", (r, s, m)))
    # deduplicate repeated unit/zero findings picked up once per r
    seen = set()
    uniq = []
    for item in out:
        if item not in seen:
            seen.add(item)
            uniq.append(item)
    return uniq
