"""Linear-algebra engine: slot bases, boundary matrices, cocycle groups,
cohomology with representatives, and coboundary witness solvers.

Everything lives in finite products of cyclic groups.  A cochain group is
coordinatized by its slot basis (one Z/d coordinate per non-forced table
entry and module generator); the product embeds in (Z/e)^m, e the lcm of the
orders, by scaling coordinate j with e/d_j.  Subgroups are row spans mod e
held in echelon form, quotients are presented by small relation matrices
handed to exact Smith reduction, and every kernel generator the reducer
produces is re-verified by evaluating the defining equations through the
table evaluator, which shares no code with the row reduction.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import gcd, lcm

from . import cochains, kernels
from .cochains import BudgetError, SHAPE_CLASS, SHAPE_TABLES, TABLE_ARITY, forced_zero
from .equations import SYSTEMS, ev
from .kernels import impl as _b
from .linalg import gcdext, smith_normal_form, smith_with_inverses, unit_to_gcd

REPR_ORDER_DEFAULT = 4096
ENUM_BITS_DEFAULT = 24


# ---------------------------------------------------------------------------
# slot bases

@dataclass(frozen=True)
class SlotBasis:
    """Coordinates for one cochain shape over a fixed (R, M).

    slots[p] = (table, args, gen): the gen-th module coordinate of the table
    entry at args.  Forced-zero entries and generators of order 1 carry no
    information and get no slot.  Order: tables as declared for the shape,
    argument tuples lexicographic, generators ascending.
    """

    R: object
    M: object
    shape: str
    slots: tuple
    orders: tuple

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def vector_of(self, c) -> tuple:
        out = []
        last = None
        for table, args, gen in self.slots:
            if last is None or last[0] is not table or last[1] != args:
                v = c.value(table, *args)
                coords = self.M.coords(v)
                last = (table, args, coords)
            out.append(last[2][gen])
        return tuple(out)

    def cochain_of(self, vec):
        M = self.M
        n = self.R.order
        acc = {}
        for (table, args, gen), v in zip(self.slots, vec):
            acc.setdefault((table, args), [0] * len(M.orders))[gen] = v
        tables = {}
        for table in SHAPE_TABLES[self.shape]:
            size = n ** TABLE_ARITY[table]
            flat = [0] * size
            tables[table] = flat
        for (table, args), coords in acc.items():
            i = 0
            for a in args:
                i = i * n + a
            tables[table][i] = M.index(coords)
        cls = SHAPE_CLASS[self.shape]
        return cls(self.R, self.M, {k: tuple(v) for k, v in tables.items()})

    def basis_cochain(self, pos):
        vec = [0] * len(self.slots)
        vec[pos] = 1
        return self.cochain_of(vec)


def _live_gens(M):
    return [i for i, d in enumerate(M.orders) if d > 1]


def slot_basis(R, M, shape: str) -> SlotBasis:
    key = ("basis", shape)
    cache = _cache(R, M)
    if key not in cache:
        gens = _live_gens(M)
        slots = []
        orders = []
        for table in SHAPE_TABLES[shape]:
            arity = TABLE_ARITY[table]
            for args in cochains.iter_args(R.order, arity):
                if forced_zero(shape, table, args, R):
                    continue
                for g in gens:
                    slots.append((table, args, g))
                    orders.append(M.orders[g])
        cache[key] = SlotBasis(R, M, shape, tuple(slots), tuple(orders))
    return cache[key]


def defect_basis(R, M, system_name: str) -> SlotBasis:
    """Target coordinates of an equation system: one Z/d per
    (equation, variable tuple, module generator)."""
    key = ("defects", system_name)
    cache = _cache(R, M)
    if key not in cache:
        gens = _live_gens(M)
        slots = []
        orders = []
        for eqn in SYSTEMS[system_name]:
            for args in cochains.iter_args(R.order, eqn.nvars):
                for g in gens:
                    slots.append((eqn.name, args, g))
                    orders.append(M.orders[g])
        cache[key] = SlotBasis(R, M, "defects:" + system_name,
                               tuple(slots), tuple(orders))
    return cache[key]


# ---------------------------------------------------------------------------
# echelon form over Z/e (for row spans of subgroups)

class Echelon:
    """Row echelon basis over Z/e, one pivot per column, with an optional
    coefficient tail tracking each row's expression in the inserted rows.

    The head entries of a pivot row are zero left of the pivot, and the pivot
    entry divides e.  Whenever a pivot with entry g > 1 is created, the
    annihilator multiple (e/g) * row is reinserted, which closes the stored
    span under leading-zero truncation; that property is what makes
    membership decidable by straight reduction and makes the tails of
    fully-reduced rows generate all relations of the inserted generators.
    """

    def __init__(self, width: int, e: int, tail: int = 0):
        self.width = width
        self.e = e
        self.tail = tail
        self.total = width + tail
        self.piv = {}
        self.zero_tails = []

    def insert(self, head, tail_unit=None):
        row = array("i", [0] * self.total)
        for i, v in enumerate(head):
            row[i] = v % self.e
        if tail_unit is not None:
            row[self.width + tail_unit] = 1 % self.e
        self._insert(row, 0)

    def _insert(self, row, c0):
        e, w, total = self.e, self.width, self.total
        stack = [(row, c0)]
        while stack:
            row, c = stack.pop()
            while True:
                c = _b.row_first_nonzero(row, c, w)
                if c < 0:
                    if self.tail and _b.row_first_nonzero(row, w, total) >= 0:
                        self.zero_tails.append(row[w:])
                    break
                v = row[c]
                p = self.piv.get(c)
                if p is None:
                    g = gcd(v, e)
                    if v != g:
                        _b.row_scale_mod(row, unit_to_gcd(v, e), c, total, e)
                    self.piv[c] = row
                    if g != 1:
                        extra = array("i", row)
                        _b.row_scale_mod(extra, (e // g) % e, c, total, e)
                        stack.append((extra, c + 1))
                    break
                pc = p[c]
                if v % pc == 0:
                    _b.row_axpy_mod(row, p, (v // pc) % e, c, total, e)
                    continue
                g, a, bb = gcdext(pc, v)
                new = array("i", [0] * total)
                _b.row_combine_mod(new, a % e, p, bb % e, row, c, total, e)
                self.piv[c] = new
                _b.row_axpy_mod(p, new, (pc // g) % e, c, total, e)
                _b.row_axpy_mod(row, new, (v // g) % e, c, total, e)
                if g != 1:
                    extra = array("i", new)
                    _b.row_scale_mod(extra, (e // g) % e, c, total, e)
                    stack.append((extra, c + 1))
                stack.append((p, c + 1))

    def reduce_head(self, row):
        """Reduce row (length total) against the pivots; returns the first
        head column that could not be cleared, or -1."""
        e, w, total = self.e, self.width, self.total
        c = 0
        while True:
            c = _b.row_first_nonzero(row, c, w)
            if c < 0:
                return -1
            p = self.piv.get(c)
            if p is None or row[c] % p[c]:
                return c
            _b.row_axpy_mod(row, p, (row[c] // p[c]) % e, c, total, e)

    def contains(self, head) -> bool:
        row = array("i", [0] * self.total)
        for i, v in enumerate(head):
            row[i] = v % self.e
        return self.reduce_head(row) < 0

    def express(self, head):
        """Coefficients c (mod e) with head = sum c_i * (i-th tailed row),
        modulo untailed rows; None if head is not in the span."""
        row = array("i", [0] * self.total)
        for i, v in enumerate(head):
            row[i] = v % self.e
        if self.reduce_head(row) >= 0:
            return None
        e = self.e
        return [(-row[self.width + i]) % e for i in range(self.tail)]

    def pivot_rows(self):
        return [self.piv[c] for c in sorted(self.piv)]


def _embed(vec, orders, e):
    return [v * (e // d) % e for v, d in zip(vec, orders)]


def _syzygies(rows, ncols, e):
    """Generators of {c in (Z/e)^ncols : sum c_j * col_j = 0} where col_j
    are the columns of the given rows."""
    nrows = len(rows)
    ech = Echelon(nrows, e, tail=ncols)
    for j in range(ncols):
        head = [rows[i][j] for i in range(nrows)]
        row = array("i", [0] * ech.total)
        for i, v in enumerate(head):
            row[i] = v % e
        row[nrows + j] = 1 % e
        ech._insert(row, 0)
    return ech.zero_tails


# ---------------------------------------------------------------------------
# finite abelian quotients

class AbelianQuotient:
    """The quotient of the subgroup generated by gens (inside prod Z/d_j) by
    the subgroup generated by subgens; both given as coordinate vectors.

    Presents the quotient as prod Z/s_t via Smith reduction of the relation
    matrix: factors lists the s_t > 1, class_key maps a vector to its class,
    and diagonal_gens are vectors whose classes have exactly those orders.
    """

    def __init__(self, orders, gens, subgens=()):
        self.orders = tuple(orders)
        self.gens = [tuple(g) for g in gens]
        m = len(self.orders)
        e = lcm(*self.orders) if self.orders else 1
        self.e = e
        r = len(self.gens)
        if e == 1 or r == 0:
            self.factors = ()
            self.order = 1
            self.diagonal_gens = ()
            self._keyrows = ()
            self._ech = None
            return
        ech = Echelon(m, e, tail=r)
        for s in subgens:
            ech.insert(_embed(s, self.orders, e))
        for i, g in enumerate(self.gens):
            ech.insert(_embed(g, self.orders, e), tail_unit=i)
        self._ech = ech
        rels = ech.zero_tails
        A = [[rels[k][i] for k in range(len(rels))] + [e if j == i else 0 for j in range(r)]
             for i in range(r)]
        U, S, V, Ui, Vi = smith_with_inverses(A)
        diag = [S[t][t] for t in range(r)]
        self.order = 1
        for d in diag:
            self.order *= d
        factors = []
        dgens = []
        keyrows = []
        for t in range(r):
            if diag[t] > 1:
                factors.append(diag[t])
                vec = [0] * m
                for i in range(r):
                    u = Ui[i][t]
                    if u:
                        gi = self.gens[i]
                        for j in range(m):
                            vec[j] += u * gi[j]
                dgens.append(tuple(v % d for v, d in zip(vec, self.orders)))
                keyrows.append((tuple(U[t]), diag[t]))
        self.factors = tuple(factors)
        self.diagonal_gens = tuple(dgens)
        self._keyrows = tuple(keyrows)

    def class_key(self, vec) -> tuple:
        if not self._keyrows:
            if self._ech is not None:
                c = self._ech.express(_embed(vec, self.orders, self.e))
                if c is None:
                    raise ValueError("vector not in the group")
            elif any(vec):
                raise ValueError("vector not in the group")
            return ()
        c = self._ech.express(_embed(vec, self.orders, self.e))
        if c is None:
            raise ValueError("vector not in the group")
        return tuple(sum(u * ci for u, ci in zip(urow, c)) % d
                     for urow, d in self._keyrows)

    def key_index(self, key) -> int:
        idx = 0
        for k, d in zip(key, self.factors):
            idx = idx * d + k
        return idx

    def elements(self, limit=None):
        """All element vectors, ordered so that position == key_index(key)."""
        if limit is not None and self.order > limit:
            raise BudgetError(
                f"group of order {self.order} exceeds budget {limit}")
        m = len(self.orders)
        elems = [tuple([0] * m)]
        for g, d in zip(self.diagonal_gens, self.factors):
            cur = elems
            elems = []
            for base in cur:
                x = base
                for _ in range(d):
                    elems.append(x)
                    x = tuple((a + b) % dd for a, b, dd in
                              zip(x, g, self.orders))
        return elems


# ---------------------------------------------------------------------------
# additive maps between slot bases

@dataclass
class AdditiveMap:
    """Integer matrix of an additive map between two slot bases.

    columns[j] is the image vector of the j-th source basis generator.  A
    matrix is well defined iff d_j * columns[j] vanishes in the target for
    every j; construction checks this.
    """

    source: SlotBasis
    target: SlotBasis
    columns: tuple

    def __post_init__(self):
        tno = self.target.orders
        for j, col in enumerate(self.columns):
            dj = self.source.orders[j]
            for i, a in enumerate(col):
                if a * dj % tno[i]:
                    raise ValueError(
                        f"map not well defined at column {j}, row {i}")

    @property
    def rows(self):
        if not hasattr(self, "_rows"):
            m = len(self.target.orders)
            rows = [[] for _ in range(m)]
            for j, col in enumerate(self.columns):
                for i, a in enumerate(col):
                    if a:
                        rows[i].append((j, a))
            self._rows = rows
        return self._rows

    def apply(self, vec):
        tno = self.target.orders
        out = [0] * len(tno)
        for j, v in enumerate(vec):
            if v:
                col = self.columns[j]
                for i in range(len(out)):
                    if col[i]:
                        out[i] = (out[i] + v * col[i]) % tno[i]
        return tuple(out)

    def dense(self):
        return [list(r) for r in zip(*self.columns)] if self.columns else []


def _matrix_of(fn, src: SlotBasis, tgt: SlotBasis) -> AdditiveMap:
    cols = []
    for p in range(len(src.slots)):
        img = fn(src.basis_cochain(p))
        cols.append(tgt.vector_of(img))
    return AdditiveMap(src, tgt, tuple(cols))


def matrix_of_d1(R, M) -> AdditiveMap:
    cache = _cache(R, M)
    if "d1map" not in cache:
        cache["d1map"] = _matrix_of(cochains.d1, slot_basis(R, M, "c1"),
                                    slot_basis(R, M, "c2"))
    return cache["d1map"]


def matrix_of_d2(R, M) -> AdditiveMap:
    cache = _cache(R, M)
    if "d2map" not in cache:
        cache["d2map"] = _matrix_of(cochains.d2, slot_basis(R, M, "c2"),
                                    slot_basis(R, M, "maclane3"))
    return cache["d2map"]


def matrix_of_structure_shift(R, M) -> AdditiveMap:
    cache = _cache(R, M)
    if "shiftmap" not in cache:
        cache["shiftmap"] = _matrix_of(cochains.structure_coboundary,
                                       slot_basis(R, M, "c2"),
                                       slot_basis(R, M, "ann3"))
    return cache["shiftmap"]


def _inner_derivation_map(R, M) -> AdditiveMap:
    cache = _cache(R, M)
    if "innermap" not in cache:
        c1 = slot_basis(R, M, "c1")
        gens = _live_gens(M)
        src = SlotBasis(R, M, "module", tuple(("a", (), g) for g in gens),
                        tuple(M.orders[g] for g in gens))
        cols = []
        for g in gens:
            coords = [0] * len(M.orders)
            coords[g] = 1
            t = cochains.inner_derivation(M, M.index(coords))
            cols.append(c1.vector_of(t))
        cache["innermap"] = AdditiveMap(src, c1, tuple(cols))
    return cache["innermap"]


# ---------------------------------------------------------------------------
# constraint-row assembly for equation systems

def _action_coord_tables(R, M):
    """lmat[r][j] = coords of r . u_j, rmat[r][j] = coords of u_j . r, for
    live generators u_j."""
    cache = _cache(R, M)
    if "actcoords" not in cache:
        gens = _live_gens(M)
        units = []
        for g in gens:
            coords = [0] * len(M.orders)
            coords[g] = 1
            units.append(M.index(coords))
        lmat = []
        rmat = []
        for r in range(R.order):
            lmat.append([M.coords(M.lact[r][u]) for u in units])
            rmat.append([M.coords(M.ract[r][u]) for u in units])
        cache["actcoords"] = (lmat, rmat)
    return cache["actcoords"]


def _slot_positions(basis: SlotBasis):
    """pos[(table, flat args)] = slot index of the first live generator."""
    pos = {}
    n = basis.R.order
    for p, (table, args, _gen) in enumerate(basis.slots):
        i = 0
        for a in args:
            i = i * n + a
        pos.setdefault((table, i), p)
    return pos


def matrix_of_z3_constraints(R, M, shape: str = "maclane3") -> AdditiveMap:
    """Full constraint matrix whose kernel is the degree-3 cocycle group
    (shape maclane3) or the structure group (shape ann3).

    Rows are assembled symbolically from the equation term tables with the
    expression interpreter; nothing is shared with the table evaluator, so
    comparing this matrix against direct defect evaluation is a genuine
    cross-check.
    """
    basis = slot_basis(R, M, shape)
    tgt = defect_basis(R, M, shape)
    n = R.order
    m = len(basis.slots)
    gens = _live_gens(M)
    k = len(gens)
    cols = [[0] * len(tgt.slots) for _ in range(m)]
    base = 0
    for eqn in SYSTEMS[shape]:
        count = n ** eqn.nvars
        gen_rows = _assemble_rows_indexed(shape, R, M, basis, eqn.name,
                                          0, count, use_reference=True)
        for idx, i, row in gen_rows:
            t = base + idx * k + i
            for col, coeff in row.items():
                cols[col][t] = coeff % M.orders[gens[i]]
        base += count * k
    return AdditiveMap(basis, tgt, tuple(tuple(c) for c in cols))


def _assemble_rows_indexed(system_name, R, M, basis, eqname, start, stop,
                           use_reference=False):
    """Like _assemble_rows but yields (tuple index - start, gen index, row)."""
    system = SYSTEMS[system_name]
    eqn = next(E for E in system if E.name == eqname)
    n = R.order
    gens = _live_gens(M)
    k = len(gens)
    lmat, rmat = _action_coord_tables(R, M)
    pos = _slot_positions(basis)
    if use_reference:
        argvals = None
    else:
        ctx = kernels.context(R, M)
        compiled = ctx.programs(("sys", system_name), system)
        cterms = next(cts for nm, _nv, cts in compiled if nm == eqn.name)
        argvals = [ctx.term_arrays(("sys", system_name), eqn.name, ti, ct,
                                   eqn.nvars, start, stop)
                   for ti, ct in enumerate(cterms)]
    for idx in range(start, stop):
        rowacc = [dict() for _ in range(k)]
        vals = None
        for ti, term in enumerate(eqn.terms):
            sign, action, table, args = term
            if use_reference:
                if vals is None:
                    vals = []
                    i = idx
                    for _ in range(eqn.nvars):
                        vals.append(i % n)
                        i //= n
                    vals.reverse()
                flat = 0
                for aexpr in args:
                    flat = flat * n + ev(aexpr, vals, R)
                actor = ev(action[1], vals, R) if action else None
            else:
                offs, actors = argvals[ti]
                flat = offs[idx - start]
                actor = actors[idx - start] if actors is not None else None
            base = pos.get((table, flat))
            if base is None:
                continue
            if action is None:
                for j in range(k):
                    d = rowacc[j]
                    col = base + j
                    d[col] = d.get(col, 0) + sign
            else:
                amat = lmat if action[0] == "L" else rmat
                acts = amat[actor]
                for j in range(k):
                    col = base + j
                    coords = acts[j]
                    for i in range(k):
                        c = coords[gens[i]]
                        if c:
                            d = rowacc[i]
                            d[col] = d.get(col, 0) + sign * c
        for i in range(k):
            if rowacc[i]:
                yield idx - start, i, rowacc[i]


# ---------------------------------------------------------------------------
# kernels of maps and of equation systems

def _kernel_of_map(amap: AdditiveMap):
    """Generators of {x : amap(x) = 0}, as vectors in the source orders."""
    src = amap.source
    m = len(src.orders)
    e = lcm(src.exponent, amap.target.exponent) if m else 1
    if m == 0 or e == 1:
        return []
    ech = Echelon(m, e)
    tno = amap.target.orders
    for i, row in enumerate(amap.rows):
        scale = e // tno[i]
        dense = [0] * m
        for j, a in row:
            dense[j] = a * scale % e
        ech.insert(dense)
    gens = _kernel_from_echelon(ech, src.orders, e)
    zero = tuple([0] * len(amap.target.orders))
    for g in gens:
        if amap.apply(g) != zero:
            raise AssertionError("kernel generator fails the map")
    return gens


def _kernel_from_echelon(ech: Echelon, orders, e):
    m = len(orders)
    rows = ech.pivot_rows()
    tails = _syzygies(rows, m, e)
    gens = []
    seen = set()
    for t in tails:
        vec = tuple(t[j] % orders[j] for j in range(m))
        if any(vec) and vec not in seen:
            seen.add(vec)
            gens.append(vec)
    return gens


def _system_kernel(R, M, shape: str, jobs: int = 1):
    """Generators of the solution group of an equation system (maclane3 ->
    degree-3 cocycles, ann3 -> structures), verified against the evaluator.

    Seeds the echelon with a spread of constraint rows, computes the kernel,
    then checks every generator by full defect evaluation; any violated
    tuple contributes its rows and the kernel is recomputed.  The result is
    exact regardless of seeding: the loop only terminates when every
    generator passes every equation at every tuple.
    """
    cache = _cache(R, M)
    key = ("syskernel", shape)
    if key in cache:
        return cache[key]
    system_name = shape
    system = SYSTEMS[system_name]
    basis = slot_basis(R, M, shape)
    m = len(basis.slots)
    e = basis.exponent
    if m == 0 or e == 1:
        cache[key] = []
        return []
    n = R.order
    gens = _live_gens(M)
    ech = Echelon(m, e)
    seen = set()

    def insert_range(eqname, start, stop):
        fresh = 0
        for i, gi, row in _assemble_rows_indexed(system_name, R, M, basis,
                                                 eqname, start, stop):
            d = M.orders[gens[gi]]
            items = tuple(sorted((c, v % d) for c, v in row.items()
                                 if v % d))
            if not items or items in seen:
                continue
            seen.add(items)
            fresh += 1
            scale = e // d
            dense = [0] * m
            for c, v in items:
                dense[c] = v * scale % e
            ech.insert(dense)
        return fresh

    budget = 4 * m + 64
    for eqn in system:
        count = n ** eqn.nvars
        if count <= budget:
            insert_range(eqn.name, 0, count)
        else:
            stride = count // budget
            for s in range(0, count, stride):
                insert_range(eqn.name, s, s + 1)

    for _round in range(200):
        kgens = _kernel_from_echelon(ech, basis.orders, e)
        bad = []
        for kv in kgens:
            c = basis.cochain_of(kv)
            viol = kernels.check_system(system, R, M, c.tables, jobs=jobs)
            if viol:
                bad.extend(viol)
                if len(bad) > 4 * m:
                    break
        if not bad:
            cache[key] = kgens
            return kgens
        added = 0
        done = set()
        for eqname, args, _defect in bad:
            flat = 0
            for a in args:
                flat = flat * n + a
            if (eqname, flat) in done:
                continue
            done.add((eqname, flat))
            added += insert_range(eqname, flat, flat + 1)
        if not added:
            raise AssertionError("constraint rows exhausted but kernel "
                                 "generators still violate the system")
    raise AssertionError("kernel refinement did not stabilize")


# ---------------------------------------------------------------------------
# cohomology

@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    invariant_factors: tuple
    order: int
    representatives: object  # list of cochains, or None past the budget


def _zb_data(R, M, degree: int, jobs: int = 1):
    if degree == 1:
        basis = slot_basis(R, M, "c1")
        zgens = _kernel_of_map(matrix_of_d1(R, M))
        bcols = _inner_derivation_map(R, M).columns
    elif degree == 2:
        basis = slot_basis(R, M, "c2")
        zgens = _kernel_of_map(matrix_of_d2(R, M))
        bcols = matrix_of_d1(R, M).columns
    elif degree == 3:
        basis = slot_basis(R, M, "maclane3")
        zgens = _system_kernel(R, M, "maclane3", jobs=jobs)
        bcols = matrix_of_d2(R, M).columns
    else:
        raise ValueError("degree must be 1, 2 or 3")
    return basis, zgens, list(bcols)


def cohomology(R, M, degree: int, repr_order: int = REPR_ORDER_DEFAULT,
               jobs: int = 1) -> CohomologyResult:
    cache = _cache(R, M)
    key = ("cohomology", degree, repr_order)
    if key in cache:
        return cache[key]
    basis, zgens, bcols = _zb_data(R, M, degree, jobs=jobs)
    H = AbelianQuotient(basis.orders, zgens, bcols)
    reps = None
    Z = AbelianQuotient(basis.orders, zgens)
    if Z.order <= repr_order:
        keys = [H.class_key(g) for g in Z.diagonal_gens]
        best = {}
        elems = [tuple([0] * len(basis.orders))]
        elem_keys = [tuple([0] * len(H.factors))]
        for g, d, gk in zip(Z.diagonal_gens, Z.factors, keys):
            cur = list(zip(elems, elem_keys))
            elems, elem_keys = [], []
            for base, bk in cur:
                x, k = base, bk
                for _ in range(d):
                    elems.append(x)
                    elem_keys.append(k)
                    x = tuple((a + b) % dd for a, b, dd in
                              zip(x, g, basis.orders))
                    k = tuple((a + b) % dd for a, b, dd in
                              zip(k, gk, H.factors))
        for x, k in zip(elems, elem_keys):
            cur = best.get(k)
            if cur is None or x < cur:
                best[k] = x
        if len(best) != H.order:
            raise AssertionError("class count disagrees with quotient order")
        reps = [basis.cochain_of(best[k])
                for k in sorted(best, key=H.key_index)]
    result = CohomologyResult(degree, H.factors, H.order, reps)
    cache[key] = result
    return result


# ---------------------------------------------------------------------------
# witness solvers

class _ImageSolver:
    """Decides membership in the image of an additive map and produces a
    preimage vector when one exists."""

    def __init__(self, amap: AdditiveMap):
        self.amap = amap
        tgt = amap.target
        self.torders = tgt.orders
        m = len(self.torders)
        e = lcm(tgt.exponent, amap.source.exponent) if m else 1
        self.e = e
        r = len(amap.columns)
        self.r = r
        self.ech = Echelon(m, e, tail=r) if m and e > 1 else None
        if self.ech is not None:
            for i, col in enumerate(amap.columns):
                self.ech.insert(_embed(col, self.torders, e), tail_unit=i)

    def solve(self, tvec):
        if self.ech is None:
            return None if any(tvec) else tuple([0] * self.r)
        c = self.ech.express(_embed(tvec, self.torders, self.e))
        if c is None:
            return None
        src = self.amap.source.orders
        g = tuple(ci % d for ci, d in zip(c, src))
        if self.amap.apply(g) != tuple(v % d for v, d in
                                       zip(tvec, self.torders)):
            raise AssertionError("image solver produced a bad witness")
        return g


def _solver(R, M, which: str) -> _ImageSolver:
    cache = _cache(R, M)
    key = ("solver", which)
    if key not in cache:
        amap = {"d1": matrix_of_d1, "d2": matrix_of_d2,
                "shift": matrix_of_structure_shift}[which](R, M)
        cache[key] = _ImageSolver(amap)
    return cache[key]


def is_coboundary2(c, jobs: int = 1):
    """A 1-cochain t with d1(t) = c, or None; c must be a 2-cocycle."""
    R, M = c.R, c.M
    if cochains.d2(c) != cochains.MacLane3Cochain.zero(R, M):
        raise ValueError("not a 2-cocycle")
    sol = _solver(R, M, "d1")
    vec = slot_basis(R, M, "c2").vector_of(c)
    g = sol.solve(vec)
    if g is None:
        return None
    return slot_basis(R, M, "c1").cochain_of(g)


def is_coboundary3(c, jobs: int = 1):
    """A 2-cochain g with d2(g) = c, or None; c must be a 3-cocycle."""
    R, M = c.R, c.M
    viol = cochains.is_cocycle3(c, jobs=jobs)
    if viol:
        raise ValueError(f"not a 3-cocycle: first violation {viol[0]}")
    sol = _solver(R, M, "d2")
    vec = slot_basis(R, M, "maclane3").vector_of(c)
    g = sol.solve(vec)
    if g is None:
        return None
    return slot_basis(R, M, "c2").cochain_of(g)


def solve_structure_shift(delta):
    """A 2-cochain g whose structure coboundary equals delta, or None."""
    R, M = delta.R, delta.M
    sol = _solver(R, M, "shift")
    vec = slot_basis(R, M, "ann3").vector_of(delta)
    g = sol.solve(vec)
    if g is None:
        return None
    return slot_basis(R, M, "c2").cochain_of(g)


# ---------------------------------------------------------------------------
# structure enumeration

def enumerate_structures_kernel(R, M, enum_bits: int = ENUM_BITS_DEFAULT,
                                jobs: int = 1):
    basis = slot_basis(R, M, "ann3")
    zgens = _system_kernel(R, M, "ann3", jobs=jobs)
    Z = AbelianQuotient(basis.orders, zgens)
    if Z.order > (1 << enum_bits):
        raise BudgetError(f"structure group has order {Z.order}, "
                          f"over the 2^{enum_bits} budget")
    out = [basis.cochain_of(v) for v in Z.elements()]
    out.sort(key=lambda h: tuple(h.tables[t] for t in SHAPE_TABLES["ann3"]))
    return out


def enumerate_structures_bruteforce(R, M, enum_bits: int = ENUM_BITS_DEFAULT):
    basis = slot_basis(R, M, "ann3")
    total_bits = 0
    for d in basis.orders:
        total_bits += (d - 1).bit_length()
    if total_bits > enum_bits:
        raise BudgetError(f"{len(basis.slots)} slots need {total_bits} bits, "
                          f"over the 2^{enum_bits} budget")
    m = len(basis.slots)
    out = []
    vec = [0] * m
    while True:
        h = basis.cochain_of(tuple(vec))
        if not cochains.is_structure(h):
            out.append(h)
        i = m - 1
        while i >= 0:
            vec[i] += 1
            if vec[i] < basis.orders[i]:
                break
            vec[i] = 0
            i -= 1
        if i < 0:
            break
    out.sort(key=lambda h: tuple(h.tables[t] for t in SHAPE_TABLES["ann3"]))
    return out


# ---------------------------------------------------------------------------
# per-(R, M) cache

_CACHE: dict = {}


def _cache(R, M) -> dict:
    key = (id(R), id(M))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is R and hit[1] is M:
        return hit[2]
    if len(_CACHE) > 64:
        _CACHE.clear()
    entry = (R, M, {})
    _CACHE[key] = entry
    return entry[2]
