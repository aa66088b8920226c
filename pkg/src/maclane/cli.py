"""Command-line front end.

Every command reads a workspace file, runs one library operation, and prints
one JSON report.  Exit codes: 0 = computed and the checked property holds,
1 = computed but the property fails, 2 = parse error, 3 = validation error,
4 = budget refusal.  Reports are byte-identical across runs and --jobs
settings.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import catring, cochains, engine, functors, workspace
from .cochains import BudgetError
from .kernels import BACKEND
from .workspace import (ParseError, SCHEMA, ValidationError, encode_cochain,
                        parse_workspace)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4

MAX_LISTED_VIOLATIONS = 32
MAX_LISTED_STRUCTURES = 64


def _render_json(node, indent=0) -> str:
    """sort_keys JSON with short arrays kept on one line."""
    compact = json.dumps(node, sort_keys=True, separators=(",", ":"))
    if len(compact) + indent <= 76 or not isinstance(node, (dict, list)):
        return compact
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(node, dict):
        parts = [f"{inner}{json.dumps(k)}: {_render_json(v, indent + 2)}"
                 for k, v in sorted(node.items())]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    parts = [f"{inner}{_render_json(v, indent + 2)}" for v in node]
    return "[\n" + ",\n".join(parts) + "\n" + pad + "]"


def emit(report: dict, code: int):
    report = {"schema": SCHEMA, **report}
    click.echo(_render_json(report))
    sys.exit(code)


def fail(kind: str, message: str, code: int):
    emit({"error": {"kind": kind, "message": message}}, code)


def with_workspace(fn):
    """Load -w/--workspace and map the error taxonomy onto exit codes."""

    @click.option("--workspace", "-w", "ws_path", required=True,
                  type=click.Path(), help="Workspace JSON file.")
    @click.option("--jobs", default=1, show_default=True,
                  help="Worker threads for defect scans.")
    @functools.wraps(fn)
    def wrapper(ws_path, jobs, **kw):
        try:
            ws = parse_workspace(ws_path)
            return fn(ws=ws, jobs=jobs, **kw)
        except ParseError as exc:
            fail("parse", str(exc), EXIT_PARSE)
        except ValidationError as exc:
            fail("validation", str(exc), EXIT_VALIDATION)
        except BudgetError as exc:
            fail("budget", str(exc), EXIT_BUDGET)

    return wrapper


def _violation_block(viols):
    listed = [{"equation": v.equation, "args": list(v.args),
               "defect": v.defect} for v in viols[:MAX_LISTED_VIOLATIONS]]
    return {"count": len(viols), "violations": listed,
            "truncated": len(viols) > MAX_LISTED_VIOLATIONS}


def _group_block(H: engine.CohomologyResult):
    return {"order": H.order,
            "invariant_factors": list(H.invariant_factors)}


@click.group()
@click.version_option(package_name="maclane-coh")
def main():
    """Exact Mac Lane cohomology, Ann-category structures, functor
    obstructions, and the categorical-ring separation example."""


@main.command()
@with_workspace
def validate(ws, jobs):
    """Parse and validate a workspace; report what it defines."""
    report = {"command": "validate", "ok": True,
              "ring": {"label": ws.R.label, "order": ws.R.order},
              "bimodule": None, "cochains": {}, "hom_pairs": [],
              "budgets": ws.budgets}
    if ws.M is not None:
        report["bimodule"] = {"label": ws.M.label,
                              "orders": list(ws.M.orders), "size": ws.M.size}
    for name in ws.cochain_names:
        report["cochains"][name] = ws.cochain(name).shape
    for name in ws.hom_pair_names:
        ws.hom_pair(name)
        report["hom_pairs"].append(name)
    emit(report, EXIT_HOLDS)


@main.group()
def check():
    """Evaluate an identity system on a named cochain."""


def _check_command(kind, expected_shape, runner):
    @check.command(name=kind)
    @click.argument("name")
    @with_workspace
    def cmd(ws, jobs, name):
        c = ws.cochain(name)
        if c.shape != expected_shape:
            raise ValidationError(f"cochain {name!r} has shape {c.shape!r}; "
                                  f"'check {kind}' needs {expected_shape!r}")
        viols = runner(ws, c, jobs)
        report = {"command": f"check {kind}", "name": name,
                  "holds": not viols, **_violation_block(viols)}
        emit(report, EXIT_HOLDS if not viols else EXIT_FAILS)
    return cmd


_check_command("cocycle3", "maclane3",
               lambda ws, c, jobs: cochains.is_cocycle3(c, jobs=jobs))
_check_command("structure", "ann3",
               lambda ws, c, jobs: cochains.is_structure(c, jobs=jobs))
_check_command("catring", "lambda-only",
               lambda ws, c, jobs: catring.check_R1_R5(ws.R, ws.M, c,
                                                       jobs=jobs))


@main.group()
def convert():
    """Move between structure and cocycle presentations."""


@convert.command(name="struct-to-cocycle")
@click.argument("name")
@with_workspace
def struct_to_cocycle(ws, jobs, name):
    h = ws.cochain(name)
    if h.shape != "ann3":
        raise ValidationError(f"cochain {name!r} has shape {h.shape!r}; "
                              f"expected 'ann3'")
    bad = cochains.is_structure(h, jobs=jobs)
    if bad:
        report = {"command": "convert struct-to-cocycle", "name": name,
                  "holds": False, **_violation_block(bad)}
        emit(report, EXIT_FAILS)
    c = cochains.structure_to_cocycle(h, checked=False)
    emit({"command": "convert struct-to-cocycle", "name": name,
          "holds": True, "result": encode_cochain(c)}, EXIT_HOLDS)


@convert.command(name="cocycle-to-struct")
@click.argument("name")
@with_workspace
def cocycle_to_struct(ws, jobs, name):
    c = ws.cochain(name)
    if c.shape != "maclane3":
        raise ValidationError(f"cochain {name!r} has shape {c.shape!r}; "
                              f"expected 'maclane3'")
    bad = cochains.is_cocycle3(c, jobs=jobs)
    if bad:
        report = {"command": "convert cocycle-to-struct", "name": name,
                  "holds": False, **_violation_block(bad)}
        emit(report, EXIT_FAILS)
    h = cochains.cocycle_to_structure(c, checked=False)
    emit({"command": "convert cocycle-to-struct", "name": name,
          "holds": True, "result": encode_cochain(h)}, EXIT_HOLDS)


@main.command()
@click.option("--degree", type=click.IntRange(1, 3), required=True)
@click.option("--representatives", is_flag=True,
              help="List one representative cocycle per class.")
@with_workspace
def cohomology(ws, jobs, degree, representatives):
    """Invariant factors and order of H^degree(R, M)."""
    M = ws.require_bimodule()
    H = engine.cohomology(ws.R, M, degree,
                          repr_order=ws.budgets["repr_order"], jobs=jobs)
    report = {"command": "cohomology", "degree": degree, **_group_block(H)}
    if representatives:
        if H.representatives is None:
            raise BudgetError(
                f"repr_order budget {ws.budgets['repr_order']} refuses "
                f"representative enumeration")
        report["representatives"] = [encode_cochain(c)
                                     for c in H.representatives]
    emit(report, EXIT_HOLDS)


@main.command()
@click.argument("name1")
@click.argument("name2")
@with_workspace
def cohomologous(ws, jobs, name1, name2):
    """Are two structures related by a normalized (tau, nu) shift?"""
    h1, h2 = ws.cochain(name1), ws.cochain(name2)
    if h1.shape != "ann3" or h2.shape != "ann3":
        raise ValidationError("cohomologous needs two 'ann3' cochains")
    g = cochains.cohomologous_structures(h1, h2)
    report = {"command": "cohomologous", "names": [name1, name2],
              "cohomologous": g is not None,
              "witness": None if g is None else encode_cochain(g)}
    emit(report, EXIT_HOLDS if g is not None else EXIT_FAILS)


@main.command()
@click.option("--degree", type=click.IntRange(2, 3), required=True)
@click.argument("name")
@with_workspace
def coboundary(ws, jobs, degree, name):
    """Is a cocycle a coboundary?  Reports a preimage witness if so."""
    c = ws.cochain(name)
    want = "c2" if degree == 2 else "maclane3"
    if c.shape != want:
        raise ValidationError(f"cochain {name!r} has shape {c.shape!r}; "
                              f"degree {degree} needs {want!r}")
    try:
        w = (engine.is_coboundary2 if degree == 2 else
             engine.is_coboundary3)(c, jobs=jobs)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    report = {"command": "coboundary", "degree": degree, "name": name,
              "is_coboundary": w is not None,
              "witness": None if w is None else encode_cochain(w)}
    emit(report, EXIT_HOLDS if w is not None else EXIT_FAILS)


def _as_cocycle_named(ws, name):
    c = ws.cochain(name)
    if c.shape == "ann3":
        bad = cochains.is_structure(c)
        if bad:
            raise ValidationError(f"{name!r} is not a structure: "
                                  f"{bad[0]}")
        return cochains.structure_to_cocycle(c, checked=False)
    if c.shape == "maclane3":
        bad = cochains.is_cocycle3(c)
        if bad:
            raise ValidationError(f"{name!r} is not a 3-cocycle: {bad[0]}")
        return c
    raise ValidationError(f"{name!r} has shape {c.shape!r}; expected "
                          f"'ann3' or 'maclane3'")


@main.command()
@click.option("--pair", "pair_name", required=True)
@click.option("--source", "source_name", required=True,
              help="Structure/cocycle over the pair's (R, M).")
@click.option("--target", "target_name", required=True,
              help="Structure/cocycle over the pair's (R2, M2), resolved "
                   "in the pair's target workspace.")
@with_workspace
def obstruction(ws, jobs, pair_name, source_name, target_name):
    """Obstruction class of a type-(p, q) functor datum."""
    pair = ws.hom_pair(pair_name)
    h = _as_cocycle_named(ws, source_name)
    h2 = _as_cocycle_named(ws.hom_pair_target(pair_name), target_name)
    rep = functors.obstruction(h, h2, pair)
    report = {"command": "obstruction", "pair": pair_name,
              "source": source_name, "target": target_name,
              "vanishes": rep.vanishes, "k": encode_cochain(rep.k),
              "witness": None if rep.witness is None
              else encode_cochain(rep.witness),
              "hom_class_group": None if rep.hom_class_group is None
              else _group_block(rep.hom_class_group)}
    emit(report, EXIT_HOLDS if rep.vanishes else EXIT_FAILS)


@main.command(name="hom-classes")
@click.option("--pair", "pair_name", required=True)
@click.option("--source", "source_name", required=True)
@click.option("--target", "target_name", required=True)
@with_workspace
def hom_classes(ws, jobs, pair_name, source_name, target_name):
    """Count type-(p, q) functor data g up to coboundary, two ways."""
    pair = ws.hom_pair(pair_name)
    h = _as_cocycle_named(ws, source_name)
    h2 = _as_cocycle_named(ws.hom_pair_target(pair_name), target_name)
    count = functors.count_hom_classes_bruteforce(
        pair, h, h2, enum_bits=ws.budgets["enum_bits"])
    rep = functors.obstruction(h, h2, pair)
    expected = rep.hom_class_group.order if rep.vanishes else 0
    report = {"command": "hom-classes", "pair": pair_name,
              "source": source_name, "target": target_name,
              "count": count, "obstruction_vanishes": rep.vanishes,
              "expected": expected, "match": count == expected}
    emit(report, EXIT_HOLDS if count == expected else EXIT_FAILS)


@main.group(name="enumerate")
def enumerate_group():
    """Exhaustive listings (budget-guarded)."""


@enumerate_group.command(name="structures")
@with_workspace
def enumerate_structures(ws, jobs):
    """All Ann-structures on (R, M), by kernel enumeration."""
    M = ws.require_bimodule()
    structs = engine.enumerate_structures_kernel(
        ws.R, M, enum_bits=ws.budgets["enum_bits"], jobs=jobs)
    nreg = sum(1 for h in structs if cochains.is_regular(h))
    report = {"command": "enumerate structures", "count": len(structs),
              "regular_count": nreg,
              "structures": [encode_cochain(h) for h in structs]
              if len(structs) <= MAX_LISTED_STRUCTURES else None,
              "truncated": len(structs) > MAX_LISTED_STRUCTURES}
    emit(report, EXIT_HOLDS)


@main.command()
@click.option("--n", type=click.IntRange(min=2), required=True)
@click.option("--seed", default=0, show_default=True,
              help="Seed for the integer-sampling phase.")
def counterexample(n, seed):
    """The dual-number categorical ring that is not an Ann-category."""
    report = catring.counterexample_report(n, seed=seed)
    ok = report["categorical_ring"] and not report["ann_normalized"]
    emit({"command": "counterexample", **report},
         EXIT_HOLDS if ok else EXIT_FAILS)


@main.command()
def backend():
    """Which evaluation backend is active."""
    emit({"command": "backend", "backend": BACKEND}, EXIT_HOLDS)


if __name__ == "__main__":
    main()
