"""Workspace files: a JSON document naming one (ring, bimodule) pair plus
cochains and hom pairs, with explicit budgets.

Schema (top-level key "schema" must equal SCHEMA):

  ring      {"kind": "zn", "n": 4}
            {"kind": "dual", "base": <ring>}
            {"kind": "product", "factors": [<ring>, <ring>]}
            {"kind": "tables", "add": [[..]], "mul": [[..]],
             "zero": 0, "one": 1, "names": [..]?, "label": "R"?}
  bimodule  {"kind": "via-hom", "m": 2, "phi": [..], "label": "M"?}
            {"kind": "tables", "orders": [..], "left": [[[c]..]..],
             "right": [[[c]..]..], "label": "M"?}
  cochains  name -> {"shape": "c1"|"c2"|"maclane3"|"ann3"|"lambda-only",
                     "tables": {table -> nested value array}}
  hom_pairs name -> {"p": [..], "q": [..], "target": {"path": "w.json"}
                     or inline {"ring":..,"bimodule":..} or absent (self)}
  budgets   {"enum_bits": 24, "repr_order": 4096}

Module elements are written as coordinate arrays (one integer per cyclic
factor of M); a cochain table of arity k is a depth-k nested array of such
leaves, indexed by ring element in table order.
"""

from __future__ import annotations

import json
import os

from . import cochains, rings
from .cochains import SHAPE_CLASS, SHAPE_TABLES, TABLE_ARITY
from .rings import FiniteBimodule, FiniteRing, ShapeError

SCHEMA = "maclane-coh/1"

ENUM_BITS_DEFAULT = 24
REPR_ORDER_DEFAULT = 4096


class ParseError(ValueError):
    """Syntactic problem: bad JSON, wrong schema tag, wrong node types."""


class ValidationError(ValueError):
    """Well-formed JSON that fails semantic validation."""


class Workspace:
    def __init__(self, R, M, cochain_specs, hom_pair_specs, budgets, base_dir):
        self.R: FiniteRing = R
        self.M: FiniteBimodule = M
        self._cochain_specs = cochain_specs
        self._hom_pair_specs = hom_pair_specs
        self.budgets: dict = budgets
        self._base_dir = base_dir
        self._cochains: dict = {}
        self._pairs: dict = {}

    @property
    def cochain_names(self):
        return sorted(self._cochain_specs)

    @property
    def hom_pair_names(self):
        return sorted(self._hom_pair_specs)

    def require_bimodule(self) -> FiniteBimodule:
        if self.M is None:
            raise ValidationError("workspace defines no bimodule")
        return self.M

    def cochain(self, name: str):
        if name not in self._cochains:
            spec = self._cochain_specs.get(name)
            if spec is None:
                raise ValidationError(f"cochain {name!r} is not defined "
                                      f"(have: {', '.join(self.cochain_names) or 'none'})")
            self._cochains[name] = _build_cochain(self.R, self.require_bimodule(),
                                                  name, spec)
        return self._cochains[name]

    def hom_pair(self, name: str):
        return self._pair_entry(name)[0]

    def hom_pair_target(self, name: str) -> "Workspace":
        """The workspace holding the pair's target data (self for
        endomorphism pairs)."""
        return self._pair_entry(name)[1]

    def _pair_entry(self, name: str):
        from . import functors
        if name not in self._pairs:
            spec = self._hom_pair_specs.get(name)
            if spec is None:
                raise ValidationError(f"hom pair {name!r} is not defined "
                                      f"(have: {', '.join(self.hom_pair_names) or 'none'})")
            target = spec.get("target")
            if target is None:
                tws = self
            elif "path" in target:
                tws = parse_workspace(os.path.join(self._base_dir,
                                                   target["path"]))
            else:
                tws = load_document({"schema": SCHEMA, **target},
                                    base_dir=self._base_dir)
            try:
                pair = functors.HomPair(self.R, self.require_bimodule(),
                                        tws.R, tws.require_bimodule(),
                                        tuple(spec["p"]), tuple(spec["q"]))
            except (ShapeError, ValueError) as exc:
                raise ValidationError(f"hom pair {name!r}: {exc}") from exc
            self._pairs[name] = (pair, tws)
        return self._pairs[name]


# --- element / table codecs ---------------------------------------------

def encode_value(M: FiniteBimodule, v: int) -> list:
    return list(M.coords(v))


def decode_value(M: FiniteBimodule, node, where: str) -> int:
    k = len(M.orders)
    if (not isinstance(node, list) or len(node) != k
            or not all(isinstance(x, int) for x in node)):
        raise ValidationError(f"{where}: expected a coordinate array of "
                              f"length {k}")
    if any(not 0 <= x < d for x, d in zip(node, M.orders)):
        raise ValidationError(f"{where}: coordinates {node} out of range "
                              f"for orders {list(M.orders)}")
    return M.index(tuple(node))


def encode_table(M: FiniteBimodule, flat, n: int, arity: int):
    """Flat table -> depth-`arity` nested array of coordinate leaves."""
    def build(level, base):
        if level == arity:
            return encode_value(M, flat[base])
        return [build(level + 1, base * n + i) for i in range(n)]
    if arity == 0:
        return encode_value(M, flat[0])
    return [build(1, i) for i in range(n)]


def decode_table(M: FiniteBimodule, node, n: int, arity: int, where: str):
    out = []

    def walk(nd, level, path):
        if level == arity:
            out.append(decode_value(M, nd, f"{where}[{','.join(map(str, path))}]"))
            return
        if not isinstance(nd, list) or len(nd) != n:
            raise ValidationError(f"{where}: level-{level} node must be an "
                                  f"array of length {n}")
        for i, sub in enumerate(nd):
            walk(sub, level + 1, path + [i])

    walk(node, 0, [])
    return tuple(out)


def encode_cochain(c) -> dict:
    n = c.R.order
    return {"shape": c.shape,
            "tables": {t: encode_table(c.M, c.tables[t], n, TABLE_ARITY[t])
                       for t in SHAPE_TABLES[c.shape]}}


def _build_cochain(R, M, name, spec):
    where = f"cochains.{name}"
    if not isinstance(spec, dict):
        raise ParseError(f"{where}: must be an object")
    shape = spec.get("shape")
    if shape not in SHAPE_TABLES:
        raise ValidationError(f"{where}.shape: unknown shape {shape!r}")
    tables_node = spec.get("tables")
    if not isinstance(tables_node, dict):
        raise ValidationError(f"{where}.tables: must be an object")
    want = set(SHAPE_TABLES[shape])
    have = set(tables_node)
    if want != have:
        raise ValidationError(f"{where}.tables: shape {shape!r} needs tables "
                              f"{sorted(want)}, got {sorted(have)}")
    tables = {}
    for t in SHAPE_TABLES[shape]:
        tables[t] = decode_table(M, tables_node[t], R.order, TABLE_ARITY[t],
                                 f"{where}.tables.{t}")
    try:
        return SHAPE_CLASS[shape](R, M, tables)
    except (ShapeError, ValueError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


# --- ring / bimodule builders --------------------------------------------

def _need(node, key, types, where):
    if not isinstance(node, dict) or key not in node:
        raise ParseError(f"{where}: missing key {key!r}")
    v = node[key]
    if not isinstance(v, types):
        raise ParseError(f"{where}.{key}: wrong type")
    return v


def _build_ring(node, where="ring"):
    if node is None:
        raise ParseError(f"{where}: missing")
    kind = _need(node, "kind", str, where)
    try:
        if kind == "zn":
            return rings.make_zn(_need(node, "n", int, where))
        if kind == "dual":
            return rings.make_dual_numbers(_build_ring(node.get("base"),
                                                       where + ".base"))
        if kind == "product":
            factors = _need(node, "factors", list, where)
            if len(factors) != 2:
                raise ValidationError(f"{where}.factors: need exactly 2")
            return rings.make_product(_build_ring(factors[0], where + ".factors[0]"),
                                      _build_ring(factors[1], where + ".factors[1]"))
        if kind == "tables":
            r = rings.make_ring_from_tables(
                _need(node, "add", list, where), _need(node, "mul", list, where),
                _need(node, "zero", int, where), _need(node, "one", int, where),
                label=node.get("label", "R"), names=tuple(node.get("names", ())))
            errs = rings.validate_ring(r)
            if errs:
                raise ValidationError(f"{where}: not a ring: {errs[0]}")
            return r
    except (ParseError, ValidationError):
        raise
    except (ShapeError, ValueError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    raise ValidationError(f"{where}.kind: unknown kind {kind!r}")


def _build_bimodule(R, node, where="bimodule"):
    if node is None:
        raise ParseError(f"{where}: missing")
    kind = _need(node, "kind", str, where)
    try:
        if kind == "via-hom":
            return rings.make_bimodule_via_hom(
                R, _need(node, "m", int, where), _need(node, "phi", list, where),
                label=node.get("label"))
        if kind == "tables":
            orders = tuple(_need(node, "orders", list, where))
            left = _nested_tuple(_need(node, "left", list, where))
            right = _nested_tuple(_need(node, "right", list, where))
            M = rings.make_bimodule_from_tables(R, orders, left, right,
                                                label=node.get("label", "M"))
            errs = rings.validate_bimodule(M)
            if errs:
                raise ValidationError(f"{where}: not a bimodule: {errs[0]}")
            return M
    except (ParseError, ValidationError):
        raise
    except (ShapeError, ValueError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    raise ValidationError(f"{where}.kind: unknown kind {kind!r}")


def _nested_tuple(x):
    return tuple(_nested_tuple(v) for v in x) if isinstance(x, list) else x


# --- document parsing -----------------------------------------------------

def parse_workspace(path: str) -> Workspace:
    try:
        with open(path, "rb") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc
    return load_document(doc, base_dir=os.path.dirname(os.path.abspath(path)))


def load_document(doc, base_dir: str = ".") -> Workspace:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise ParseError(f"schema: expected {SCHEMA!r}, got {schema!r}")
    unknown = set(doc) - {"schema", "ring", "bimodule", "cochains",
                          "hom_pairs", "budgets"}
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")
    R = _build_ring(doc.get("ring"))
    bnode = doc.get("bimodule")
    M = None if bnode is None else _build_bimodule(R, bnode)
    cspecs = doc.get("cochains", {})
    if not isinstance(cspecs, dict):
        raise ParseError("cochains: must be an object")
    pspecs = doc.get("hom_pairs", {})
    if not isinstance(pspecs, dict):
        raise ParseError("hom_pairs: must be an object")
    for name, spec in pspecs.items():
        if not isinstance(spec, dict) or "p" not in spec or "q" not in spec:
            raise ParseError(f"hom_pairs.{name}: must be an object with "
                             f"'p' and 'q'")
    budgets = dict(doc.get("budgets", {}))
    unknown = set(budgets) - {"enum_bits", "repr_order"}
    if unknown:
        raise ParseError(f"budgets: unknown keys {sorted(unknown)}")
    budgets.setdefault("enum_bits", ENUM_BITS_DEFAULT)
    budgets.setdefault("repr_order", REPR_ORDER_DEFAULT)
    ws = Workspace(R, M, cspecs, pspecs, budgets, base_dir)
    # eagerly validate every named cochain so `validate` reports all tables
    for name in ws.cochain_names:
        ws.cochain(name)
    return ws
