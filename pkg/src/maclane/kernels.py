"""Evaluation driver: compiles equation term tables to flat postfix programs
and runs them over all variable tuples through the active backend.

The backend (compiled `_speedups` if built, `_pure` otherwise, overridable
with MACLANE_PURE_PYTHON=1) only sees flat integer arrays, so both produce
bit-identical results; tuple ranges are processed in fixed-size chunks in
index order, which keeps output deterministic for any --jobs setting.
"""

from __future__ import annotations

import os
from array import array
from concurrent.futures import ThreadPoolExecutor

from . import equations as eq

if os.environ.get("MACLANE_PURE_PYTHON"):
    from . import _pure as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as impl

BACKEND = impl.BACKEND_NAME

CHUNK = 1 << 15
_OFFSET_CACHE_LIMIT = 1 << 21  # max cached offsets (ints) per equation


def _compile_expr(expr, out, R):
    kind = expr[0]
    if kind == "v":
        out.extend((impl.OP_VAR, expr[1]))
    elif kind == "0":
        out.extend((impl.OP_CONST, R.zero))
    elif kind == "1":
        out.extend((impl.OP_CONST, R.one))
    else:
        _compile_expr(expr[1], out, R)
        _compile_expr(expr[2], out, R)
        out.append(impl.OP_ADD if kind == "+" else impl.OP_MUL)
        out.append(0)


class CompiledTerm:
    __slots__ = ("sign", "kind", "act_prog", "table", "prog", "bounds", "arity")

    def __init__(self, term, R):
        sign, action, table, args = term
        self.sign = sign
        self.table = table
        self.arity = len(args)
        if action is None:
            self.kind = 0
            self.act_prog = None
        else:
            self.kind = 1 if action[0] == "L" else 2
            ap = []
            _compile_expr(action[1], ap, R)
            self.act_prog = array("h", ap)
        prog = []
        bounds = [0]
        for a in args:
            _compile_expr(a, prog, R)
            bounds.append(len(prog))
        self.prog = array("h", prog)
        self.bounds = array("i", bounds)


class ComputeContext:
    """Per-(R, M) flat tables plus compiled-program and offset caches."""

    def __init__(self, R, M):
        self.R = R
        self.M = M
        n = R.order
        self.n = n
        self.msize = M.size
        self.add_flat = array("h", [R.add[i][j] for i in range(n) for j in range(n)])
        self.mul_flat = array("h", [R.mul[i][j] for i in range(n) for j in range(n)])
        sz = M.size
        self.madd_flat = array("h", [M.add_el[i][j] for i in range(sz) for j in range(sz)])
        self.mneg = array("h", M.neg_el)
        self.lact_flat = array("h", [M.lact[r][m] for r in range(n) for m in range(sz)])
        self.ract_flat = array("h", [M.ract[r][m] for r in range(n) for m in range(sz)])
        self._programs = {}
        self._offsets = {}

    def programs(self, key, items):
        """items: iterable of (name, nvars, terms)."""
        hit = self._programs.get(key)
        if hit is None or hit[0] is not items:
            hit = (items, [
                (name, nvars, [CompiledTerm(t, self.R) for t in terms])
                for name, nvars, terms in items
            ])
            self._programs[key] = hit
        return hit[1]

    def term_arrays(self, key, eqname, termidx, cterm, nvars, start, stop):
        """Offsets/actors for one term over [start, stop); cached whole when
        the tuple count is small enough."""
        total = self.n ** nvars
        ck = (key, eqname, termidx)
        if total <= _OFFSET_CACHE_LIMIT:
            hit = self._offsets.get(ck)
            if hit is None:
                offs = array("i", bytes(4 * total))
                actors = array("h", bytes(2 * total)) if cterm.kind else None
                impl.fill_term_arrays(
                    cterm.prog, cterm.bounds, cterm.act_prog, nvars, self.n,
                    self.add_flat, self.mul_flat, 0, total, offs, actors,
                )
                hit = (offs, actors)
                self._offsets[ck] = hit
            offs, actors = hit
            if start == 0 and stop == total:
                return offs, actors
            return offs[start:stop], actors[start:stop] if actors else None
        offs = array("i", bytes(4 * (stop - start)))
        actors = array("h", bytes(2 * (stop - start))) if cterm.kind else None
        impl.fill_term_arrays(
            cterm.prog, cterm.bounds, cterm.act_prog, nvars, self.n,
            self.add_flat, self.mul_flat, start, stop, offs, actors,
        )
        return offs, actors


_context_cache: dict = {}


def context(R, M) -> ComputeContext:
    key = (id(R), id(M))
    ctx = _context_cache.get(key)
    if ctx is None or ctx.R is not R or ctx.M is not M:
        ctx = ComputeContext(R, M)
        _context_cache[key] = ctx
        if len(_context_cache) > 64:
            _context_cache.pop(next(iter(_context_cache)))
    return ctx


def _as_flat(table):
    return table if isinstance(table, array) else array("h", table)


def _decode_tuple(i, nvars, n):
    out = [0] * nvars
    for k in range(nvars - 1, -1, -1):
        out[k] = i % n
        i //= n
    return tuple(out)


def _run_equation(ctx, key, name, nvars, cterms, tables, start, stop, collect):
    count = stop - start
    acc = array("h", bytes(2 * count))
    for ti, ct in enumerate(cterms):
        offs, actors = ctx.term_arrays(key, name, ti, ct, nvars, start, stop)
        impl.acc_term(
            acc, tables[ct.table], offs, actors, ct.sign, ct.kind, ctx.msize,
            ctx.madd_flat, ctx.mneg, ctx.lact_flat, ctx.ract_flat, count,
        )
    bad = impl.nonzero_indices(acc, count)
    if collect == "count":
        return len(bad)
    return [(start + i, acc[i]) for i in bad]


def check_system(system, R, M, tables, collect="all", jobs=1):
    """Evaluate every equation of `system` at every variable tuple.

    tables: name -> flat table (sequence of module element indices, row-major
    over the ring arguments).  Returns a list of (equation name, args tuple,
    defect) in (equation, lexicographic tuple) order, or a total count when
    collect="count".
    """
    ctx = context(R, M)
    key = id(system)
    progs = ctx.programs(key, system)
    flat = {nm: _as_flat(tb) for nm, tb in tables.items()}
    n = R.order

    work = []
    for name, nvars, cterms in progs:
        total = n ** nvars
        for s in range(0, total, CHUNK):
            work.append((name, nvars, cterms, s, min(s + CHUNK, total)))

    def job(w):
        name, nvars, cterms, s, e = w
        return _run_equation(ctx, key, name, nvars, cterms, flat, s, e, collect)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(job, work))
    else:
        results = [job(w) for w in work]

    if collect == "count":
        return sum(results)
    out = []
    for w, res in zip(work, results):
        name, nvars = w[0], w[1]
        for idx, defect in res:
            out.append((name, _decode_tuple(idx, nvars, n), defect))
    return out


def eval_defs(defs, R, M, tables, jobs=1):
    """Build output tables from TableDef entries (coboundaries, conversions).

    Returns name -> flat array("h") of module element indices.
    """
    ctx = context(R, M)
    key = id(defs)
    progs = ctx.programs(key, defs)
    flat = {nm: _as_flat(tb) for nm, tb in tables.items()}
    out = {}
    for name, nvars, cterms in progs:
        total = R.order ** nvars
        acc = array("h", bytes(2 * total))
        for s in range(0, total, CHUNK):
            e = min(s + CHUNK, total)
            chunk = acc[s:e] if (s, e) != (0, total) else acc
            for ti, ct in enumerate(cterms):
                offs, actors = ctx.term_arrays(key, name, ti, ct, nvars, s, e)
                impl.acc_term(
                    chunk, flat[ct.table], offs, actors, ct.sign, ct.kind,
                    ctx.msize, ctx.madd_flat, ctx.mneg, ctx.lact_flat,
                    ctx.ract_flat, e - s,
                )
            if chunk is not acc:
                acc[s:e] = chunk
        out[name] = acc
    return out


def eval_at(terms, vals, R, M, tables):
    """Single-tuple reference evaluation (tree-walking, no compilation)."""
    return eq.eval_terms(terms, vals, R, M, tables)
