"""Versioned JSON encoding of the domain objects.

Rationals are strings ``"p/q"``, field elements are ``{D, num, den}`` with
``[exponent of u, coefficient]`` pairs, matrices are dense row-major lists and
Weyl group elements are reduced words (0-based index arrays).  Output is
deterministic: keys are sorted and every list has a fixed order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .calibration import CalibrationGraph, components_and_shapes, root_set_label
from .hecke import Check, MatrixRep, RelationReport
from .linalg import Matrix
from .roots import RootSystem, braid_order, build_root_system
from .scalars import FieldElem, LaurentPoly, format_rational, parse_rational
from .skew import SkewModule
from .weights import PlacedShape, Weight
from .weyl import WeylElement

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def loads(text: str) -> Any:
    data = json.loads(text)
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError("top-level object must carry a 'kind'")
    if data.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"schema version {data.get('schema')!r} is not {SCHEMA_VERSION}")
    kind = data["kind"]
    if kind == "weight":
        return weight_from_json(data["weight"])
    if kind == "module":
        return rep_from_json(data)
    if kind == "skew-module":
        return skew_from_json(data)
    raise SchemaError(f"unknown kind {kind!r}")


def _envelope(kind: str, body: dict) -> dict:
    out = {"schema": SCHEMA_VERSION, "kind": kind}
    out.update(body)
    return out


# ---- scalars ----------------------------------------------------------
def _terms_to_json(p: LaurentPoly) -> list:
    return [[e, format_rational(c)] for e, c in sorted(p.terms().items())]


def _terms_from_json(items) -> LaurentPoly:
    try:
        return LaurentPoly({int(e): parse_rational(c) for e, c in items})
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed polynomial terms: {exc}") from None


def field_to_json(x) -> Any:
    if isinstance(x, Fraction):
        return format_rational(x)
    return {"D": x.D, "num": _terms_to_json(x.num), "den": _terms_to_json(x.den)}


def field_from_json(d) -> Any:
    if isinstance(d, str):
        return parse_rational(d)
    try:
        D = int(d["D"])
        num, den = d["num"], d["den"]
    except (KeyError, TypeError, ValueError):
        raise SchemaError(f"malformed field element {d!r}") from None
    if D < 1:
        raise SchemaError("field element context must be positive")
    return FieldElem.from_laurent(D, _terms_from_json(num), _terms_from_json(den))


# ---- roots, weights, words -------------------------------------------
def root_system_to_json(rs: RootSystem) -> dict:
    n = rs.rank
    return {
        "type": str(rs.kind),
        "cartan": [list(r) for r in rs.cartan],
        "braid_orders": [[braid_order(rs, i, j) if i != j else 1 for j in range(n)] for i in range(n)],
        "positive_roots": [
            {
                "index": r.index,
                "label": rs.label(r.index),
                "simple": list(r.simple),
                "omega": list(r.omega),
                "length": "long" if r.long else "short",
            }
            for r in rs.positive_roots
        ],
    }


def weight_to_json(t: Weight) -> dict:
    out: dict = {"type": str(t.rs.kind)}
    if t.is_real:
        out["gamma"] = [format_rational(g) for g in t.gamma]
    else:
        out["values"] = [field_to_json(v) for v in t.values]
    return out


def weight_from_json(d: dict) -> Weight:
    from .weights import real_weight

    try:
        rs = build_root_system(d["type"])
    except KeyError:
        raise SchemaError("weight needs a 'type'") from None
    if "gamma" in d:
        return real_weight(rs, [parse_rational(g) for g in d["gamma"]])
    if "values" in d:
        return Weight(rs, [field_from_json(v) for v in d["values"]])
    raise SchemaError("weight needs 'gamma' or 'values'")


def word_of(w: WeylElement) -> list[int]:
    return list(w.word)


def element_from_word(rs: RootSystem, word) -> WeylElement:
    try:
        word = [int(i) for i in word]
    except (TypeError, ValueError):
        raise SchemaError(f"malformed word {word!r}") from None
    if any(not 0 <= i < rs.rank for i in word):
        raise SchemaError(f"word {word} has an index out of range")
    return WeylElement.from_word(rs, word)


# ---- matrices and modules ---------------------------------------------
def matrix_to_json(m: Matrix) -> list:
    return [[field_to_json(x) for x in row] for row in m.to_dense()]


def matrix_from_json(rows, one) -> Matrix:
    try:
        return Matrix.from_dense([[field_from_json(x) for x in r] for r in rows], one)
    except (TypeError, IndexError):
        raise SchemaError("malformed matrix") from None


def _label_to_json(x):
    if isinstance(x, WeylElement):
        return word_of(x)
    return str(x)


def report_to_json(r: RelationReport) -> list:
    return [
        {"check": c.name, "passed": c.passed, **({"status": "undefined"} if c.skipped else {})}
        for c in r.checks
    ]


def report_from_json(items) -> RelationReport:
    return RelationReport([Check(d["check"], bool(d["passed"]), skipped=d.get("status") == "undefined") for d in items])


def _generators_to_json(M: MatrixRep) -> dict:
    gens = {f"T{i + 1}": matrix_to_json(m) for i, m in enumerate(M.T)}
    gens.update({f"X_omega{k + 1}": matrix_to_json(m) for k, m in enumerate(M.X)})
    return gens


def _generators_from_json(rs: RootSystem, gens: dict, one) -> tuple[list[Matrix], list[Matrix]]:
    try:
        T = [matrix_from_json(gens[f"T{i + 1}"], one) for i in range(rs.rank)]
        X = [matrix_from_json(gens[f"X_omega{k + 1}"], one) for k in range(rs.rank)]
    except KeyError as exc:
        raise SchemaError(f"missing generator {exc}") from None
    return T, X


def rep_to_json(M: MatrixRep) -> dict:
    body = {
        "type": str(M.rs.kind),
        "module_kind": M.kind,
        "dim": M.dim,
        "q": field_to_json(M.q),
        "basis": [_label_to_json(x) for x in M.labels],
        "generators": _generators_to_json(M),
    }
    if M.weights is not None:
        body["weights"] = [weight_to_json(s) for s in M.weights]
    return _envelope("module", body)


def rep_from_json(d: dict) -> MatrixRep:
    rs = build_root_system(d["type"])
    q = field_from_json(d["q"])
    one = q / q
    T, X = _generators_from_json(rs, d["generators"], one)
    labels = [element_from_word(rs, b) if isinstance(b, list) else b for b in d["basis"]]
    weights = [weight_from_json(s) for s in d["weights"]] if "weights" in d else None
    cands = list(dict.fromkeys(weights)) if weights is not None else None
    return MatrixRep(rs, labels, T, X, q, weights=weights, candidates=cands, kind=d.get("module_kind", "module"))


def skew_to_json(S: SkewModule) -> dict:
    rs = S.rep.rs
    return _envelope(
        "skew-module",
        {
            "type": str(rs.kind),
            "weight": weight_to_json(S.shape.weight),
            "J": [rs.label(k) for k in sorted(S.shape.J)],
            "dim": S.dim,
            "tableaux": [word_of(w) for w in S.tableaux],
            "generators": _generators_to_json(S.rep),
            "report": report_to_json(S.report),
        },
    )


def skew_from_json(d: dict) -> SkewModule:
    from .hecke import MatrixRep as _Rep
    from .weights import weyl_act

    rs = build_root_system(d["type"])
    t = weight_from_json(d["weight"])
    J = frozenset(rs.parse_label(x) for x in d["J"])
    F = tuple(element_from_word(rs, w) for w in d["tableaux"])
    ctx = t.ctx
    T, X = _generators_from_json(rs, d["generators"], ctx.one())
    wts = [weyl_act(w, t) for w in F]
    rep = _Rep(rs, list(F), T, X, ctx.q(), weights=wts, candidates=list(dict.fromkeys(wts)), kind="skew")
    return SkewModule(rep, PlacedShape(t, J, F), dict(zip(F, wts)), report_from_json(d.get("report", [])))


def weight_document(t: Weight) -> dict:
    return _envelope("weight", {"weight": weight_to_json(t)})


# ---- graphs and shapes ------------------------------------------------
def graph_to_json(g: CalibrationGraph) -> dict:
    rep = components_and_shapes(g)
    _, p = g.weight.masks()
    rs = g.rs
    verts = []
    for w, _ in g.vertices:
        J = [r for r in range(rs.n_positive) if (w.inversion_mask() & p) >> r & 1]
        verts.append({"word": word_of(w), "J": [rs.label(k) for k in J]})
    return {
        "weight": weight_to_json(g.weight),
        "vertices": verts,
        "edges": [{"source": a, "target": b, "simple": i + 1} for a, b, i in g.edges],
        "components": rep.components,
        "component_J": [[rs.label(k) for k in sorted(J)] for J in rep.J],
        "consistent": rep.consistent,
    }


def shape_to_json(rs: RootSystem, sh: PlacedShape) -> dict:
    return {
        "J": [rs.label(k) for k in sorted(sh.J)],
        "J_set": root_set_label(rs, sh.J),
        "dim": sh.dim,
        "tableaux": [word_of(w) for w in sh.tableaux],
    }
