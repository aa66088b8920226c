"""Backend equivalence: the compiled module and the pure fallback must be
bit-identical on every primitive, and the driver must be deterministic
across chunking and --jobs settings."""

import random
from array import array

import pytest

from maclane import _pure, equations, kernels, rings


@pytest.fixture(scope="module")
def compiled():
    try:
        from maclane import _speedups
    except ImportError:
        pytest.skip("compiled backend not built")
    return _speedups


@pytest.fixture(scope="module")
def ctx():
    R = rings.make_dual_numbers(rings.make_zn(2))
    M = rings.make_bimodule_via_hom(R, 2, [0, 0, 1, 1])
    return kernels.ComputeContext(R, M)


def test_backend_names(compiled):
    assert _pure.BACKEND_NAME == "pure"
    assert compiled.BACKEND_NAME == "compiled"
    assert kernels.BACKEND in ("pure", "compiled")


def test_opcodes_match(compiled):
    for op in ("OP_VAR", "OP_CONST", "OP_ADD", "OP_MUL"):
        assert getattr(_pure, op) == getattr(compiled, op)


def test_fill_term_arrays_equivalent_on_real_programs(compiled, ctx):
    R = ctx.R
    for system in equations.SYSTEMS.values():
        for name, nvars, terms in system:
            total = R.order ** nvars
            for t in terms:
                ct = kernels.CompiledTerm(t, R)
                for s, e in ((0, min(total, 600)), (7, min(total, 130))):
                    res = []
                    for impl in (_pure, compiled):
                        offs = array("i", bytes(4 * (e - s)))
                        actors = (array("h", bytes(2 * (e - s)))
                                  if ct.kind else None)
                        impl.fill_term_arrays(
                            ct.prog, ct.bounds, ct.act_prog, nvars, R.order,
                            ctx.add_flat, ctx.mul_flat, s, e, offs, actors)
                        res.append((offs, actors))
                    assert res[0] == res[1], (name, t)


def test_acc_term_and_scan_equivalent(compiled, ctx):
    rng = random.Random(42)
    msize = ctx.msize
    for _ in range(200):
        count = rng.randrange(1, 80)
        tabsize = rng.randrange(1, 100)
        table = array("h", [rng.randrange(msize) for _ in range(tabsize)])
        offs = array("i", [rng.randrange(tabsize) for _ in range(count)])
        kind = rng.choice([0, 1, 2])
        actors = (array("h", [rng.randrange(ctx.n) for _ in range(count)])
                  if kind else None)
        sign = rng.choice([1, -1])
        acc1 = array("h", [rng.randrange(msize) for _ in range(count)])
        acc2 = array("h", acc1)
        for impl, acc in ((_pure, acc1), (compiled, acc2)):
            impl.acc_term(acc, table, offs, actors, sign, kind, msize,
                          ctx.madd_flat, ctx.mneg, ctx.lact_flat,
                          ctx.ract_flat, count)
        assert acc1 == acc2
        assert (_pure.nonzero_indices(acc1, count)
                == compiled.nonzero_indices(acc2, count))


def test_row_ops_equivalent(compiled):
    rng = random.Random(7)
    for _ in range(300):
        e = rng.choice([2, 3, 4, 6, 12, 30, 64, 255, 4096])
        w = rng.randrange(1, 60)
        start = rng.randrange(w)
        row = array("i", [rng.randrange(e) for _ in range(w)])
        piv = array("i", [rng.randrange(e) for _ in range(w)])
        assert (_pure.row_first_nonzero(row, start, w)
                == compiled.row_first_nonzero(row, start, w))
        u = rng.randrange(e)
        s1, s2 = array("i", row), array("i", row)
        _pure.row_scale_mod(s1, u, start, w, e)
        compiled.row_scale_mod(s2, u, start, w, e)
        assert s1 == s2
        k = rng.randrange(e)
        a1, a2 = array("i", row), array("i", row)
        _pure.row_axpy_mod(a1, piv, k, start, w, e)
        compiled.row_axpy_mod(a2, piv, k, start, w, e)
        assert a1 == a2
        a, b = rng.randrange(e), rng.randrange(e)
        d1, d2 = array("i", [0] * w), array("i", [0] * w)
        _pure.row_combine_mod(d1, a, piv, b, row, start, w, e)
        compiled.row_combine_mod(d2, a, piv, b, row, start, w, e)
        assert d1 == d2


def test_check_system_matches_reference_evaluator(z3):
    """The compiled path must agree with tree-walking eval_terms."""
    R, M = z3
    rng = random.Random(3)
    system = equations.SYSTEMS["ann3"]
    tables = {}
    for t in ("xi", "eta", "alpha", "lam", "rho"):
        arity = 3 if t != "eta" else 2
        tables[t] = [rng.randrange(3) for _ in range(R.order ** arity)]
    got = kernels.check_system(system, R, M, tables)
    want = []
    for eqn in system:
        for idx in range(R.order ** eqn.nvars):
            vals = kernels._decode_tuple(idx, eqn.nvars, R.order)
            d = equations.eval_terms(eqn.terms, vals, R, M, tables)
            if d:
                want.append((eqn.name, vals, d))
    assert got == want


def test_jobs_do_not_change_output(z4_z2):
    R, M = z4_z2
    rng = random.Random(11)
    tables = {"lam": [rng.randrange(2) for _ in range(R.order ** 3)]}
    a = kernels.check_system(equations.SYSTEMS["catring"], R, M, tables, jobs=1)
    b = kernels.check_system(equations.SYSTEMS["catring"], R, M, tables, jobs=4)
    assert a == b
    assert kernels.check_system(equations.SYSTEMS["catring"], R, M, tables,
                                collect="count") == len(a)


def test_eval_defs_matches_reference(z3):
    R, M = z3
    rng = random.Random(5)
    t = {"t": [0] + [rng.randrange(3) for _ in range(R.order - 1)]}
    out = kernels.eval_defs(equations.D1_DEF, R, M, t)
    for d in equations.D1_DEF:
        for idx in range(R.order ** d.nvars):
            vals = kernels._decode_tuple(idx, d.nvars, R.order)
            assert out[d.table][idx] == equations.eval_terms(d.terms, vals,
                                                             R, M, t)


def test_programs_cache_invalidated_by_identity(ctx):
    items1 = [("X", 1, ((1, None, "t", (equations.V(0),)),))]
    p1 = ctx.programs(id(items1), items1)
    items2 = [("X", 1, ((-1, None, "t", (equations.V(0),)),))]
    p2 = ctx.programs(id(items2), items2)  # id may collide, identity must not
    assert p1[0][2][0].sign == 1
    assert p2[0][2][0].sign == -1
