"""Workspace documents: parsing, the two-level error taxonomy, codecs,
hom pair target resolution."""

import json

import pytest

from maclane import rings, workspace
from maclane.workspace import (
    ParseError,
    SCHEMA,
    ValidationError,
    decode_table,
    decode_value,
    encode_cochain,
    encode_table,
    encode_value,
    load_document,
    parse_workspace,
)


def doc(**kw):
    base = {"schema": SCHEMA, "ring": {"kind": "zn", "n": 2},
            "bimodule": {"kind": "via-hom", "m": 2, "phi": [0, 1]}}
    base.update(kw)
    return base


def test_minimal_document():
    ws = load_document({"schema": SCHEMA, "ring": {"kind": "zn", "n": 2}})
    assert ws.R.order == 2
    assert ws.M is None
    with pytest.raises(ValidationError, match="no bimodule"):
        ws.require_bimodule()
    assert ws.budgets == {"enum_bits": 24, "repr_order": 4096}


def test_document_must_be_object():
    with pytest.raises(ParseError, match="top level"):
        load_document([1, 2])


def test_schema_checked():
    with pytest.raises(ParseError, match="schema"):
        load_document({"schema": "maclane-coh/2", "ring": {"kind": "zn", "n": 2}})
    with pytest.raises(ParseError, match="schema"):
        load_document({"ring": {"kind": "zn", "n": 2}})


def test_unknown_keys_rejected():
    with pytest.raises(ParseError, match="unknown top-level"):
        load_document(doc(extra=1))
    with pytest.raises(ParseError, match="budgets"):
        load_document(doc(budgets={"enum_bits": 8, "nope": 1}))


def test_ring_kinds():
    ws = load_document({"schema": SCHEMA,
                        "ring": {"kind": "dual", "base": {"kind": "zn", "n": 3}}})
    assert ws.R.order == 9 and ws.R.label == "Z/3[e]"
    ws = load_document({"schema": SCHEMA,
                        "ring": {"kind": "product",
                                 "factors": [{"kind": "zn", "n": 2},
                                             {"kind": "zn", "n": 3}]}})
    assert ws.R.order == 6
    tables = {"kind": "tables", "add": [[0, 1], [1, 0]],
              "mul": [[0, 0], [0, 1]], "zero": 0, "one": 1, "label": "F2"}
    ws = load_document({"schema": SCHEMA, "ring": tables})
    assert ws.R.label == "F2"


def test_ring_errors():
    with pytest.raises(ParseError, match="ring: missing"):
        load_document({"schema": SCHEMA})
    with pytest.raises(ValidationError, match="unknown kind"):
        load_document({"schema": SCHEMA, "ring": {"kind": "field"}})
    with pytest.raises(ParseError, match="missing key 'n'"):
        load_document({"schema": SCHEMA, "ring": {"kind": "zn"}})
    bad = {"kind": "tables", "add": [[0, 1], [1, 0]],
           "mul": [[0, 1], [0, 1]], "zero": 0, "one": 1}
    with pytest.raises(ValidationError, match="not a ring"):
        load_document({"schema": SCHEMA, "ring": bad})


def test_bimodule_errors():
    with pytest.raises(ValidationError, match="phi"):
        load_document(doc(bimodule={"kind": "via-hom", "m": 2, "phi": [0, 0]}))
    with pytest.raises(ValidationError, match="unknown kind"):
        load_document(doc(bimodule={"kind": "mystery"}))


def test_value_codec(z4_z2, gf4):
    _, M = z4_z2
    assert encode_value(M, 1) == [1]
    assert decode_value(M, [1], "x") == 1
    R4, M4 = gf4
    for v in range(4):
        assert decode_value(M4, encode_value(M4, v), "x") == v
    with pytest.raises(ValidationError, match="length 2"):
        decode_value(M4, [1], "x")
    with pytest.raises(ValidationError, match="out of range"):
        decode_value(M4, [2, 0], "x")


def test_table_codec(gf4):
    R, M = gf4
    flat = tuple(range(4)) + tuple(3 - i for i in range(4)) + (0,) * 8
    node = encode_table(M, flat, 4, 2)
    assert len(node) == 4 and len(node[0]) == 4
    assert node[1][0] == [1, 1]  # coords of element 3
    assert decode_table(M, node, 4, 2, "t") == flat


def test_table_codec_errors(z2):
    _, M = z2
    with pytest.raises(ValidationError, match="level-0"):
        decode_table(M, [[0]], 2, 1, "t")
    with pytest.raises(ValidationError, match=r"t\[1,0\]"):
        decode_table(M, [[[0], [0]], [[2], [0]]], 2, 2, "t")


def test_cochain_round_trip():
    ws = load_document(doc(cochains={
        "g": {"shape": "c2",
              "tables": {"tau": [[[0], [0]], [[0], [1]]],
                         "nu": [[[0], [0]], [[0], [0]]]}}}))
    g = ws.cochain("g")
    assert g.shape == "c2" and g.value("tau", 1, 1) == 1
    enc = encode_cochain(g)
    assert enc["tables"]["tau"][1][1] == [1]
    # a reloaded workspace builds a fresh ring, so compare tables
    ws2 = load_document(doc(cochains={"g": enc}))
    assert ws2.cochain("g").tables == g.tables
    assert ws.cochain_names == ["g"]


def test_cochain_errors():
    with pytest.raises(ValidationError, match="unknown shape"):
        load_document(doc(cochains={"c": {"shape": "c9", "tables": {}}}))
    with pytest.raises(ValidationError, match="needs tables"):
        load_document(doc(cochains={"c": {"shape": "c1", "tables": {}}}))
    with pytest.raises(ValidationError, match="not normalized"):
        load_document(doc(cochains={
            "c": {"shape": "c1", "tables": {"t": [[1], [0]]}}}))
    ws = load_document(doc())
    with pytest.raises(ValidationError, match="not defined"):
        ws.cochain("ghost")


def test_lambda_only_cochain():
    ws = load_document({
        "schema": SCHEMA,
        "ring": {"kind": "dual", "base": {"kind": "zn", "n": 2}},
        "bimodule": {"kind": "via-hom", "m": 2, "phi": [0, 0, 1, 1]},
        "cochains": {"lam": {"shape": "lambda-only", "tables": {
            "lam": [[[[1]] * 4] * 4] * 4}}}})
    lam = ws.cochain("lam")
    assert lam.shape == "lambda-only"
    assert lam.value("lam", 0, 0, 0) == 1  # no normalization pinning


def test_hom_pair_self_target():
    ws = load_document(doc(hom_pairs={"id": {"p": [0, 1], "q": [0, 1]}}))
    pair = ws.hom_pair("id")
    assert pair.R is pair.R2 is ws.R
    assert ws.hom_pair_target("id") is ws
    assert ws.hom_pair_names == ["id"]


def test_hom_pair_inline_target():
    ws = load_document({
        "schema": SCHEMA, "ring": {"kind": "zn", "n": 4},
        "bimodule": {"kind": "via-hom", "m": 2, "phi": [0, 1, 0, 1]},
        "hom_pairs": {"red": {
            "p": [0, 1, 0, 1], "q": [0, 1],
            "target": {"ring": {"kind": "zn", "n": 2},
                       "bimodule": {"kind": "via-hom", "m": 2,
                                    "phi": [0, 1]}}}}})
    pair = ws.hom_pair("red")
    assert pair.R2.order == 2
    tws = ws.hom_pair_target("red")
    assert tws is not ws and tws.R is pair.R2


def test_hom_pair_path_target(tmp_path):
    target = {"schema": SCHEMA, "ring": {"kind": "zn", "n": 2},
              "bimodule": {"kind": "via-hom", "m": 2, "phi": [0, 1]}}
    (tmp_path / "target.json").write_text(json.dumps(target))
    source = {"schema": SCHEMA, "ring": {"kind": "zn", "n": 4},
              "bimodule": {"kind": "via-hom", "m": 2, "phi": [0, 1, 0, 1]},
              "hom_pairs": {"red": {"p": [0, 1, 0, 1], "q": [0, 1],
                                    "target": {"path": "target.json"}}}}
    (tmp_path / "source.json").write_text(json.dumps(source))
    ws = parse_workspace(str(tmp_path / "source.json"))
    pair = ws.hom_pair("red")
    assert pair.R2.order == 2
    assert pair.defects() == []


def test_hom_pair_errors():
    with pytest.raises(ParseError, match="'p' and 'q'"):
        load_document(doc(hom_pairs={"x": {"p": [0, 1]}}))
    ws = load_document(doc(hom_pairs={"x": {"p": [0, 1], "q": [1, 0]}}))
    with pytest.raises(ValidationError, match="hom pair 'x'"):
        ws.hom_pair("x")
    ws = load_document(doc())
    with pytest.raises(ValidationError, match="not defined"):
        ws.hom_pair("ghost")


def test_parse_errors(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        parse_workspace(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "maclane-coh/1",}')
    with pytest.raises(ParseError, match="line 1"):
        parse_workspace(str(bad))


def test_budget_passthrough():
    ws = load_document(doc(budgets={"enum_bits": 8}))
    assert ws.budgets == {"enum_bits": 8, "repr_order": 4096}


def test_error_classes_are_value_errors():
    assert issubclass(ParseError, ValueError)
    assert issubclass(ValidationError, ValueError)
