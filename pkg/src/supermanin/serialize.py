"""JSON encoding of presentations, idempotents, matrices and modules.

Rationals are written as strings ``"p/q"`` (or ``"p"``) and parsed from either
strings or integers.  Output is canonical: relations are the RREF basis and
keys are sorted by the caller's ``json.dumps(sort_keys=True)``.
"""

from __future__ import annotations

from fractions import Fraction

import jsonschema

from .algebra import (
    Idempotent,
    QuadraticSuperAlgebra,
    algebra_from_terms,
)
from .errors import SuperManinError
from .linalg import Matrix, to_fraction
from .manin import AlgebraMatrix, ManinVerdict, scalar_matrix
from .quantum import BialgebraPresentation, ClassicalModule


class ParseError(SuperManinError):
    """Input could not be parsed or failed schema validation."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.detail = message


RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"},
    ]
}
FORMAT = {"type": "array", "items": {"enum": [0, 1]}}

PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["generators"],
    "properties": {
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["parity"],
                "properties": {"name": {"type": "string"}, "parity": {"enum": [0, 1]}},
                "additionalProperties": False,
            },
        },
        "relations": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["coeff", "mono"],
                    "properties": {
                        "coeff": RATIONAL,
                        "mono": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                    "additionalProperties": False,
                },
            },
        },
    },
}

IDEMPOTENT_SCHEMA = {
    "type": "object",
    "required": ["format", "matrix"],
    "properties": {
        "format": FORMAT,
        "matrix": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
    "additionalProperties": False,
}

MODULE_SCHEMA = {
    "type": "object",
    "required": ["structure_constants", "unit", "parities", "action"],
    "properties": {
        "structure_constants": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        },
        "unit": {"type": "array", "items": RATIONAL},
        "parities": FORMAT,
        "space_format": FORMAT,
        "action": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        },
    },
    "additionalProperties": False,
}


def validate(obj, schema, path: str = ""):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path)
        raise ParseError(e.message, "/".join(x for x in (path, where) if x)) from None


def rational(x) -> Fraction:
    return to_fraction(x)


def rational_str(x) -> str:
    return str(Fraction(x))


# --------------------------------------------------------------------------
# presentations


def algebra_to_json(a: QuadraticSuperAlgebra) -> dict:
    return {
        "generators": [
            {"name": n, "parity": p} for n, p in zip(a.generator_names, a.format)
        ],
        "relations": [
            [{"coeff": rational_str(c), "mono": [i, j]} for c, (i, j) in rel]
            for rel in a.relation_terms()
        ],
    }


def algebra_from_json(obj, path: str = "") -> QuadraticSuperAlgebra:
    validate(obj, PRESENTATION_SCHEMA, path)
    gens = obj["generators"]
    fmt = [g["parity"] for g in gens]
    names = [g.get("name", f"x{i + 1}") for i, g in enumerate(gens)]
    if len(set(names)) != len(names):
        raise ParseError("generator names must be unique", f"{path}/generators".lstrip("/"))
    d = len(gens)
    rels = []
    for r, rel in enumerate(obj.get("relations", [])):
        terms = []
        for t, term in enumerate(rel):
            i, j = term["mono"]
            if i >= d or j >= d:
                raise ParseError(
                    f"monomial {term['mono']} refers to a missing generator",
                    f"{path}/relations/{r}/{t}/mono".lstrip("/"),
                )
            terms.append((rational(term["coeff"]), (i, j)))
        rels.append(terms)
    try:
        return algebra_from_terms(fmt, rels, names)
    except SuperManinError as e:
        raise ParseError(str(e), f"{path}/relations".lstrip("/")) from None


# --------------------------------------------------------------------------
# idempotents and matrices


def idempotent_to_json(B: Idempotent) -> dict:
    return {
        "format": list(B.format),
        "matrix": [[rational_str(x) for x in row] for row in B.matrix.data],
    }


def idempotent_from_json(obj, path: str = "") -> Idempotent:
    validate(obj, IDEMPOTENT_SCHEMA, path)
    n = len(obj["format"]) ** 2
    rows = obj["matrix"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"matrix must be {n}x{n}", f"{path}/matrix".lstrip("/"))
    try:
        return Idempotent(tuple(obj["format"]), Matrix.from_rows(
            [[rational(x) for x in r] for r in rows], cols=n))
    except SuperManinError as e:
        raise ParseError(str(e), path) from None


def matrix_to_json(m: AlgebraMatrix) -> dict:
    out = {"row_format": list(m.row_format), "col_format": list(m.col_format)}
    if m.degree == 0:
        out["ambient"] = "scalar"
        out["entries"] = [[rational_str(e[0]) for e in row] for row in m.entries]
    else:
        names = m.ambient.generator_names
        out["ambient"] = algebra_to_json(m.ambient)
        out["entries"] = [
            [{names[p]: rational_str(x) for p, x in enumerate(e) if x} for e in row]
            for row in m.entries
        ]
    return out


def matrix_from_json(obj, ambient: QuadraticSuperAlgebra | None, path: str = "") -> AlgebraMatrix:
    """Entries are ``{generator name: coeff}`` dicts, or rationals for scalars."""
    for key in ("row_format", "col_format", "entries"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", path)
    validate(obj["row_format"], FORMAT, f"{path}/row_format".lstrip("/"))
    validate(obj["col_format"], FORMAT, f"{path}/col_format".lstrip("/"))
    entries = obj["entries"]
    try:
        if ambient is None:
            return scalar_matrix(obj["row_format"], obj["col_format"],
                                 [[rational(x) for x in row] for row in entries])
        index = {n: p for p, n in enumerate(ambient.generator_names)}
        rows = []
        for i, row in enumerate(entries):
            out_row = []
            for a, e in enumerate(row):
                if not isinstance(e, dict):
                    raise ParseError("entry must map generator names to coefficients",
                                     f"{path}/entries/{i}/{a}".lstrip("/"))
                v = [Fraction(0)] * ambient.dim
                for name, c in e.items():
                    if name not in index:
                        raise ParseError(f"unknown generator {name!r}",
                                         f"{path}/entries/{i}/{a}".lstrip("/"))
                    validate(c, RATIONAL, f"{path}/entries/{i}/{a}/{name}".lstrip("/"))
                    v[index[name]] += rational(c)
                out_row.append(tuple(v))
            rows.append(out_row)
        return AlgebraMatrix(obj["row_format"], obj["col_format"], ambient, rows)
    except ParseError:
        raise
    except (SuperManinError, TypeError, ValueError) as e:
        raise ParseError(str(e), path) from None


def verdict_to_json(v: ManinVerdict) -> dict:
    return v.to_json()


# --------------------------------------------------------------------------
# bialgebras and modules


def bialgebra_from_json(obj, algebra: QuadraticSuperAlgebra, path: str = "") -> BialgebraPresentation:
    """``{"comult": {gen: [{"coeff", "pair": [g1, g2]}]}, "counit": {gen: coeff}}``."""
    names = algebra.generator_names
    index = {n: p for p, n in enumerate(names)}
    m = algebra.dim
    cols = [[Fraction(0)] * (m * m) for _ in range(m)]
    comult = obj.get("comult", {})
    if not isinstance(comult, dict):
        raise ParseError("comult must be an object keyed by generator", f"{path}/comult".lstrip("/"))
    for g, terms in comult.items():
        if g not in index:
            raise ParseError(f"unknown generator {g!r}", f"{path}/comult".lstrip("/"))
        for t, term in enumerate(terms):
            where = f"{path}/comult/{g}/{t}".lstrip("/")
            try:
                p, q = (index[x] for x in term["pair"])
                cols[index[g]][p * m + q] += rational(term["coeff"])
            except (KeyError, TypeError, ValueError):
                raise ParseError("term must be {\"coeff\": c, \"pair\": [gen, gen]}", where) from None
    eps = [Fraction(0)] * m
    for g, c in obj.get("counit", {}).items():
        if g not in index:
            raise ParseError(f"unknown generator {g!r}", f"{path}/counit".lstrip("/"))
        eps[index[g]] = rational(c)
    return BialgebraPresentation(algebra, Matrix.from_columns(cols, m * m) if m else Matrix(0, 0, ()), eps)


def bialgebra_to_json(h: BialgebraPresentation) -> dict:
    names = h.algebra.generator_names
    m = h.algebra.dim
    comult = {}
    for g in range(m):
        terms = []
        for k in range(m * m):
            x = h.comult.data[k][g]
            if x:
                p, q = divmod(k, m)
                terms.append({"coeff": rational_str(x), "pair": [names[p], names[q]]})
        comult[names[g]] = terms
    return {
        "algebra": algebra_to_json(h.algebra),
        "comult": comult,
        "counit": {names[g]: rational_str(x) for g, x in enumerate(h.counit)},
    }


def module_from_json(obj, path: str = "", check: bool = True) -> ClassicalModule:
    validate(obj, MODULE_SCHEMA, path)
    try:
        return ClassicalModule(
            [[[rational(x) for x in r] for r in m] for m in obj["structure_constants"]],
            [rational(x) for x in obj["unit"]],
            tuple(obj["parities"]),
            [[[rational(x) for x in r] for r in m] for m in obj["action"]],
            tuple(obj.get("space_format", ())),
            check=check,
        )
    except SuperManinError:
        raise
    except (TypeError, ValueError, IndexError) as e:
        raise ParseError(str(e), path) from None


def module_to_json(mod: ClassicalModule) -> dict:
    return {
        "structure_constants": [
            [[rational_str(x) for x in r] for r in m] for m in mod.structure_constants
        ],
        "unit": [rational_str(x) for x in mod.unit],
        "parities": list(mod.parities),
        "space_format": list(mod.space_format),
        "action": [[[rational_str(x) for x in r] for r in m.data] for m in mod.action],
    }
