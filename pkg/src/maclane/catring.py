"""Categorical-ring data with one nontrivial left-distributivity constraint.

The object of interest is a table lam: R^3 -> M subject to the five axioms
R1-R5 and deliberately NOT subject to the normalization that every structure
table in this package otherwise carries.  The dual-number family
appendix_lambda(n) satisfies R1-R5 yet fails normalization, separating
categorical rings from the normalized structures.
"""

from __future__ import annotations

import random

from . import cochains, rings
from .cochains import Cochain, SHAPE_CLASS, Violation, iter_args
from .equations import SYSTEMS
from . import kernels


class LeftDistLambda(Cochain):
    shape = "lambda-only"


SHAPE_CLASS.setdefault("lambda-only", LeftDistLambda)


def check_R1_R5(R, M, lam: LeftDistLambda, jobs: int = 1):
    """Defects of the five categorical-ring equations at every tuple."""
    res = kernels.check_system(SYSTEMS["catring"], R, M, lam.tables, jobs=jobs)
    return [Violation(*v) for v in res]


def appendix_lambda(n: int):
    """The dual-number example over (Z/n)[e]: M = Z/n through a + be -> a,
    lam(r, s, t) = b_r * (a_s + a_t).

    Returns (R, M, lam).  lam satisfies R1-R5 but is not normalized:
    lam(r, 0, t) can be nonzero.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    base = rings.make_zn(n)
    R = rings.make_dual_numbers(base)
    phi = [r // n for r in range(n * n)]  # a + be -> a
    M = rings.make_bimodule_via_hom(R, n, phi, label=f"Z/{n} via a")
    tab = []
    for r, s, t in iter_args(R.order, 3):
        br = r % n
        as_, at = s // n, t // n
        tab.append(br * (as_ + at) % n)
    lam = LeftDistLambda(R, M, {"lam": tuple(tab)})
    return R, M, lam


def is_ann_normalized(lam: LeftDistLambda):
    """Nonzero values at the normalization slots lam(1,y,z), lam(0,y,z),
    lam(x,0,z), lam(x,y,0)."""
    R = lam.R
    tab = lam.tables["lam"]
    n = R.order
    out = []
    for i, (x, y, z) in enumerate(iter_args(n, 3)):
        if tab[i] and (x == R.zero or x == R.one or y == R.zero or z == R.zero):
            out.append(Violation("normalization", ("lam", x, y, z), tab[i]))
    return out


# --- integer-sampled check of the symbolic formula over Z ---------------

def _zpair_add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _zpair_mul(u, v):
    return (u[0] * v[0], u[0] * v[1] + u[1] * v[0])


def _zeval(expr, vals):
    kind = expr[0]
    if kind == "v":
        return vals[expr[1]]
    if kind == "0":
        return (0, 0)
    if kind == "1":
        return (1, 0)
    a = _zeval(expr[1], vals)
    b = _zeval(expr[2], vals)
    return _zpair_add(a, b) if kind == "+" else _zpair_mul(a, b)


def _zlam(r, s, t):
    return r[1] * (s[0] + t[0])


def _zcheck_tuple(vals):
    """Integer defects of R1..R5 at one tuple of Z[e] elements; the module
    is Z with both actions through the a-coordinate."""
    out = []
    for eqn in SYSTEMS["catring"]:
        acc = 0
        for sign, action, _table, args in eqn.terms:
            v = _zlam(*(_zeval(a, vals) for a in args))
            if action is not None:
                v *= _zeval(action[1], vals)[0]
            acc += sign * v
        out.append(acc)
    return out


def sample_integer_defects(n_samples: int = 500, bound: int = 10,
                           seed: int = 0):
    """Evaluate R1-R5 for the symbolic lambda over Z[e] on pseudo-random
    tuples with |a|, |b| <= bound; returns the number of nonzero defects."""
    rng = random.Random(seed)
    nvars = max(eqn.nvars for eqn in SYSTEMS["catring"])
    bad = 0
    for _ in range(n_samples):
        vals = [(rng.randint(-bound, bound), rng.randint(-bound, bound))
                for _ in range(nvars)]
        if any(_zcheck_tuple(vals)):
            bad += 1
    return bad


def counterexample_report(n: int, seed: int = 0, samples: int = 500) -> dict:
    """Everything the separation needs in one report: R1-R5 defects (none),
    normalization witnesses (some), and the integer-sampled phase."""
    R, M, lam = appendix_lambda(n)
    r_defects = check_R1_R5(R, M, lam)
    norm = is_ann_normalized(lam)
    sampled_bad = sample_integer_defects(samples, 10, seed)
    witness = None
    if norm:
        v = norm[0]
        witness = {"slot": list(v.args), "value": v.defect}
    # A normalized lambda could try to embed as a structure with
    # xi = eta = alpha = rho = 0; record that check, or null when the
    # normalization already failed (the whole point here).
    embedding = None
    if not norm:
        n3, n2 = R.order ** 3, R.order ** 2
        s = cochains.AnnStructure(R, M, {
            "xi": (0,) * n3, "eta": (0,) * n2, "alpha": (0,) * n3,
            "lam": lam.tables["lam"], "rho": (0,) * n3,
        })
        embedding = len(cochains.is_structure(s))
    return {
        "n": n,
        "ring": R.label,
        "r1_r5_defects": len(r_defects),
        "normalization_violations": len(norm),
        "first_witness": witness,
        "integer_samples": {"count": samples, "seed": seed,
                            "defects": sampled_bad},
        "categorical_ring": not r_defects,
        "ann_normalized": not norm,
        "ann_embedding_defects": embedding,
    }
