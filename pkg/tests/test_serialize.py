from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from affine_hecke.calibration import build_graph
from affine_hecke.hecke import principal_series
from affine_hecke.roots import build_root_system
from affine_hecke.serialize import (
    SchemaError,
    dumps,
    field_from_json,
    field_to_json,
    graph_to_json,
    loads,
    rep_to_json,
    root_system_to_json,
    skew_to_json,
    weight_document,
)
from affine_hecke.skew import build_skew_module, g2_case2_block
from affine_hecke.weights import real_weight

A2 = build_root_system("A2")


def test_skew_module_round_trip():
    mod = g2_case2_block().module
    text = dumps(skew_to_json(mod))
    back = loads(text)
    assert back.rep.T == mod.rep.T and back.rep.X == mod.rep.X
    assert back.tableaux == mod.tableaux
    assert dumps(skew_to_json(back)) == text


def test_weight_round_trip():
    t = real_weight(A2, (F(2, 3), F(1, 3)))
    back = loads(dumps(weight_document(t)))
    assert back.gamma == t.gamma and back == t


def test_principal_series_round_trip():
    M = principal_series(A2, real_weight(A2, (F(1, 5), F(1, 7))))
    back = loads(dumps(rep_to_json(M)))
    assert back.T == M.T and back.X == M.X and back.labels == M.labels


def test_field_round_trip():
    q = real_weight(A2, (F(1, 5), F(1, 7))).ctx.q()
    x = (q - 1 / q) / (3 - q**2)
    assert field_from_json(field_to_json(x)) == x
    assert field_from_json("3/4") == F(3, 4)


def test_bad_inputs():
    with pytest.raises(ValueError, match="zero denominator"):
        field_from_json("2/0")
    with pytest.raises(SchemaError):
        loads(json.dumps({"kind": "weight", "schema": 99}))
    with pytest.raises(SchemaError):
        loads(json.dumps({"schema": 1}))
    with pytest.raises(SchemaError):
        field_from_json({"D": 0, "num": [], "den": []})


def test_deterministic_output():
    t = real_weight(A2, (F(1, 2), 0))
    a = dumps(graph_to_json(build_graph(A2, t)))
    b = dumps(graph_to_json(build_graph(A2, real_weight(A2, (F(1, 2), 0)))))
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"weight", "vertices", "edges", "components", "component_J", "consistent"}


def test_root_system_document():
    doc = root_system_to_json(build_root_system("G2"))
    assert doc["braid_orders"] == [[1, 6], [6, 1]]
    assert [r["length"] for r in doc["positive_roots"][:2]] == ["short", "long"]


def test_skew_document_words_are_zero_based():
    mod = build_skew_module(A2, real_weight(A2, (F(1, 5), F(1, 7))), [])
    doc = skew_to_json(mod)
    assert doc["tableaux"][:3] == [[], [0], [1]]
