"""Command-line interface.

Inputs are JSON workspace files::

    {"version": 1, "algebras": {...}, "idempotents": {...},
     "matrices": {...}, "bialgebras": {...}, "modules": {...}}

A file holding a single presentation (it has "generators") or a single
idempotent (it has "format" and "matrix") is read as a workspace with that
object under the name "main".

Exit status: 0 on success, 1 on domain errors and failed checks, 2 on
unparsable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra as alg
from .errors import SuperManinError
from .manin import (
    coend,
    cohom_bullet,
    cohom_preimage,
    is_manin,
    universal_manin_algebra,
)
from .quantum import (
    BialgebraPresentation,
    check_multiplicative,
    coend_bialgebra,
    lift_classical_module,
)
from .serialize import (
    ParseError,
    algebra_from_json,
    algebra_to_json,
    bialgebra_from_json,
    bialgebra_to_json,
    idempotent_from_json,
    matrix_from_json,
    matrix_to_json,
    module_from_json,
)
from .verify import run_verification

SECTIONS = ("algebras", "idempotents", "matrices", "bialgebras", "modules")
PRODUCTS = {
    "tensor": alg.tensor,
    "gtensor": alg.graded_tensor,
    "white": alg.white,
    "black": alg.black,
    "coproduct": alg.coproduct,
}
BUILDERS = {"S": alg.build_S, "Lambda": alg.build_Lambda, "T": alg.build_T}
UNITS = {"K": alg.unit_K, "K[u]": alg.unit_polynomial, "K[e]": alg.unit_dual_numbers}


class CheckFailed(Exception):
    """A check ran to completion and answered no."""


class Workspace:
    """Named objects with lazily resolved cross-references."""

    def __init__(self, doc: dict):
        if not isinstance(doc, dict):
            raise ParseError("top level must be a JSON object")
        if "generators" in doc:
            doc = {"version": 1, "algebras": {"main": doc}}
        elif "format" in doc and "matrix" in doc:
            doc = {"version": 1, "idempotents": {"main": doc}}
        if doc.get("version", 1) != 1:
            raise ParseError(f"unsupported version {doc.get('version')!r}", "version")
        unknown = set(doc) - set(SECTIONS) - {"version"}
        if unknown:
            raise ParseError(f"unknown sections {sorted(unknown)}")
        self.raw = {s: doc.get(s, {}) for s in SECTIONS}
        for s in SECTIONS:
            if not isinstance(self.raw[s], dict):
                raise ParseError("section must be an object keyed by name", s)
        self.cache: dict[tuple[str, str], object] = {}
        self.resolving: set[tuple[str, str]] = set()

    def _get(self, section: str, name: str, build):
        key = (section, name)
        if key in self.cache:
            return self.cache[key]
        if name not in self.raw[section]:
            raise ParseError(f"no {section[:-1]} named {name!r}", section)
        if key in self.resolving:
            raise ParseError(f"circular reference through {name!r}", f"{section}/{name}")
        self.resolving.add(key)
        try:
            value = build(self.raw[section][name], f"{section}/{name}")
        finally:
            self.resolving.discard(key)
        self.cache[key] = value
        return value

    def default(self, section: str) -> str:
        names = list(self.raw[section])
        if "main" in names:
            return "main"
        if len(names) == 1:
            return names[0]
        raise ParseError(f"name required: {section} has {len(names)} entries", section)

    # algebras -------------------------------------------------------------

    def algebra(self, ref, path: str = "") -> alg.QuadraticSuperAlgebra:
        if isinstance(ref, str):
            return self._get("algebras", ref, self._build_algebra)
        return self._build_algebra(ref, path)

    def _build_algebra(self, obj, path):
        if not isinstance(obj, dict):
            raise ParseError("algebra must be an object or a name", path)
        if "generators" in obj:
            return algebra_from_json(obj, path)
        if "build" in obj:
            kind = obj["build"]
            if kind not in BUILDERS:
                raise ParseError(f"unknown builder {kind!r}", f"{path}/build")
            try:
                return BUILDERS[kind](obj.get("format", []))
            except SuperManinError as e:
                raise ParseError(str(e), f"{path}/format") from None
        if "unit" in obj:
            if obj["unit"] not in UNITS:
                raise ParseError(f"unknown unit {obj['unit']!r}", f"{path}/unit")
            return UNITS[obj["unit"]]()
        if "from_idempotent" in obj:
            B = self.idempotent(obj["from_idempotent"])
            side = obj.get("side", "X")
            if side not in ("X", "Xi"):
                raise ParseError("side must be 'X' or 'Xi'", f"{path}/side")
            return alg.algebra_X(B) if side == "X" else alg.algebra_Xi(B)
        if "universal" in obj:
            B, Bt = self._idempotent_pair(obj["universal"], f"{path}/universal")
            return universal_manin_algebra(B, Bt).algebra
        if "product" in obj:
            op = obj["product"]
            args = obj.get("args")
            if op not in PRODUCTS or not isinstance(args, list) or len(args) != 2:
                raise ParseError("product needs a known op and two args", path)
            return PRODUCTS[op](self.algebra(args[0], f"{path}/args/0"),
                                self.algebra(args[1], f"{path}/args/1"))
        if "dual" in obj:
            return alg.koszul_dual(self.algebra(obj["dual"], f"{path}/dual"))
        raise ParseError("unrecognised algebra definition", path)

    # idempotents ----------------------------------------------------------

    def idempotent(self, ref, path: str = "") -> alg.Idempotent:
        if isinstance(ref, str):
            return self._get("idempotents", ref, self._build_idempotent)
        return self._build_idempotent(ref, path)

    def _build_idempotent(self, obj, path):
        if isinstance(obj, dict) and "antisymmetrizer" in obj:
            return alg.antisymmetrizer_idempotent(obj["antisymmetrizer"])
        if isinstance(obj, dict) and "symmetrizer" in obj:
            return alg.symmetrizer_idempotent(obj["symmetrizer"])
        return idempotent_from_json(obj, path)

    def _idempotent_pair(self, ref, path):
        if isinstance(ref, dict):
            ref = [ref.get("B"), ref.get("Bt", ref.get("B"))]
        if not isinstance(ref, list) or len(ref) != 2:
            raise ParseError("expected [B, Bt]", path)
        return self.idempotent(ref[0], f"{path}/0"), self.idempotent(ref[1], f"{path}/1")

    # matrices -------------------------------------------------------------

    def matrix(self, name: str, B=None, Bt=None):
        """Resolve a matrix and the idempotents it is checked against."""
        obj = self.raw["matrices"].get(name)
        if obj is None:
            raise ParseError(f"no matrix named {name!r}", "matrices")
        path = f"matrices/{name}"
        if B is None and "B" in obj:
            B = obj["B"]
        if Bt is None:
            Bt = obj.get("Bt", B)
        B = self.idempotent(B, f"{path}/B") if B is not None else None
        Bt = self.idempotent(Bt, f"{path}/Bt") if Bt is not None else None
        amb = obj.get("ambient", "scalar")
        if amb == "universal":
            if B is None:
                raise ParseError("a universal matrix needs idempotents", path)
            return universal_manin_algebra(B, Bt).matrix(), B, Bt
        if amb == "coend":
            if B is None:
                raise ParseError("a coend matrix needs an idempotent", path)
            return coend(B).universal.matrix(), B, B
        ambient = None if amb == "scalar" else self.algebra(amb, f"{path}/ambient")
        return matrix_from_json(obj, ambient, path), B, Bt

    # bialgebras and modules ----------------------------------------------

    def bialgebra(self, name: str) -> BialgebraPresentation:
        return self._get("bialgebras", name, self._build_bialgebra)

    def _build_bialgebra(self, obj, path):
        if not isinstance(obj, dict):
            raise ParseError("bialgebra must be an object", path)
        if "coend" in obj:
            return coend_bialgebra(coend(self.idempotent(obj["coend"], f"{path}/coend")))
        if "lift" in obj:
            mod = self.module(obj["lift"])
            return lift_classical_module(mod, obj.get("through", "S"), check=False).host
        if "algebra" not in obj:
            raise ParseError("bialgebra needs an algebra", path)
        return bialgebra_from_json(obj, self.algebra(obj["algebra"], f"{path}/algebra"), path)

    def module(self, name: str):
        return self._get("modules", name, lambda obj, path: module_from_json(obj, path))


# --------------------------------------------------------------------------
# output


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _parity_word(p: int) -> str:
    return "odd" if p else "even"


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "s")


def summary(a: alg.QuadraticSuperAlgebra) -> str:
    gens = _plural(a.dim, "generator")
    if 0 < a.dim <= 3:
        gens += " (" + ", ".join(_parity_word(p) for p in a.format) + ")"
    return f"{gens}, {_plural(a.relations.dim, 'relation')}"


def relation_strings(a: alg.QuadraticSuperAlgebra) -> list[str]:
    names = a.generator_names
    out = []
    for rel in a.relation_terms():
        text = ""
        for n, (c, (i, j)) in enumerate(rel):
            mono = f"{names[i]} {names[j]}" if abs(c) == 1 else f"{abs(c)} {names[i]} {names[j]}"
            if n == 0:
                text = ("-" if c < 0 else "") + mono
            else:
                text += (" - " if c < 0 else " + ") + mono
        out.append(text)
    return out


def algebra_text(a: alg.QuadraticSuperAlgebra) -> str:
    lines = [summary(a)]
    names = a.generator_names
    if a.dim:
        lines.append("generators: " + ", ".join(
            f"{n} ({_parity_word(p)})" for n, p in zip(names, a.format)))
    lines += [f"  {r} = 0" for r in relation_strings(a)]
    return "\n".join(lines) + "\n"


def emit(args, json_obj, text: str):
    sys.stdout.write(_dump(json_obj) if args.output == "json" else text)


# --------------------------------------------------------------------------
# commands


def _load(args) -> Workspace:
    if args.input is None:
        raise ParseError("this command needs --input FILE")
    try:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            doc = json.loads(Path(args.input).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} at line {e.lineno}, column {e.colno}") from None
    except OSError as e:
        raise ParseError(f"cannot read {args.input}: {e.strerror}") from None
    return Workspace(doc)


def _algebra_arg(ws: Workspace, name):
    return ws.algebra(name if name is not None else ws.default("algebras"))


def cmd_info(args):
    ws = _load(args)
    if args.name is None and not ws.raw["algebras"] and ws.raw["idempotents"]:
        args.kind = "idempotent"
    if args.kind == "idempotent":
        name = args.name or ws.default("idempotents")
        B = ws.idempotent(name)
        x, xi = alg.algebra_X(B), alg.algebra_Xi(B)
        data = {
            "format": list(B.format),
            "X": {"summary": summary(x), "presentation": algebra_to_json(x)},
            "Xi": {"summary": summary(xi), "presentation": algebra_to_json(xi)},
        }
        text = f"idempotent on format {list(B.format)}\nX side: {summary(x)}\nXi side: {summary(xi)}\n"
        emit(args, data, text)
        return
    a = _algebra_arg(ws, args.name)
    data = {
        "summary": summary(a),
        "format": list(a.format),
        "relation_dim": a.relations.dim,
        "presentation": algebra_to_json(a),
    }
    emit(args, data, algebra_text(a))


def cmd_hilbert(args):
    ws = _load(args)
    a = _algebra_arg(ws, args.name)
    h = alg.hilbert(a, args.max_degree, args.size_cap)
    emit(args, h, " ".join(str(x) for x in h) + "\n")


def cmd_product(args):
    ws = _load(args)
    out = PRODUCTS[args.op](ws.algebra(args.left), ws.algebra(args.right))
    emit(args, algebra_to_json(out), algebra_text(out))


def cmd_dual(args):
    ws = _load(args)
    out = alg.koszul_dual(_algebra_arg(ws, args.name))
    emit(args, algebra_to_json(out), algebra_text(out))


def cmd_cohom(args):
    ws = _load(args)
    b, a = ws.algebra(args.b), ws.algebra(args.a)
    if args.method == "bullet":
        out = cohom_bullet(b, a)
    elif args.method == "preimage":
        out = cohom_preimage(b, a)
    else:
        out = cohom_bullet(b, a)
        if cohom_preimage(b, a) != out:
            raise CheckFailed("cohom constructions disagree")
    emit(args, algebra_to_json(out), algebra_text(out))


def cmd_universal(args):
    ws = _load(args)
    B = ws.idempotent(args.B)
    Bt = ws.idempotent(args.Bt if args.Bt is not None else args.B)
    out = universal_manin_algebra(B, Bt).algebra
    emit(args, algebra_to_json(out), algebra_text(out))


def cmd_check_manin(args):
    ws = _load(args)
    M, B, Bt = ws.matrix(args.matrix, args.B, args.Bt)
    if B is None or Bt is None:
        raise ParseError("idempotents required: give --B/--Bt or put them in the matrix")
    v = is_manin(M, B, Bt)
    if v.manin:
        text = "Manin: yes\n"
    else:
        w = v.violation
        text = (f"Manin: no\nfirst violation at (s,t,c,d) = ({w['s']},{w['t']},{w['c']},{w['d']})\n"
                f"residue: {[str(x) for x in w['residue']]}\n")
    emit(args, v.to_json(), text)
    if not v.manin:
        raise CheckFailed("matrix is not Manin")


def cmd_check_mult(args):
    ws = _load(args)
    host = ws.bialgebra(args.host)
    obj = ws.raw["matrices"].get(args.matrix)
    if obj is None:
        raise ParseError(f"no matrix named {args.matrix!r}", "matrices")
    if obj.get("ambient") in ("universal", "coend"):
        M, _, _ = ws.matrix(args.matrix)
    else:
        M = matrix_from_json(obj, None if obj.get("ambient", "scalar") == "scalar" else host.algebra,
                             f"matrices/{args.matrix}")
    if M.ambient != host.algebra:
        raise SuperManinError("matrix and bialgebra live over different algebras")
    ok = check_multiplicative(M, host)
    emit(args, {"multiplicative": ok}, f"multiplicative: {'yes' if ok else 'no'}\n")
    if not ok:
        raise CheckFailed("matrix is not multiplicative")


def cmd_lift(args):
    ws = _load(args)
    mod = ws.module(args.module)
    rep = lift_classical_module(mod, args.through, check=False)
    report = rep.validate()
    data = {"host": bialgebra_to_json(rep.host), "matrix": matrix_to_json(rep.M), **report}
    text = "".join(f"{k}: {'yes' if v else 'no'}\n" for k, v in report.items())
    emit(args, data, text)
    if not all(report.values()):
        raise CheckFailed("lifted module is not a quantum representation")


def cmd_verify(args):
    r = run_verification(args.seed, args.fixtures, args.max_dim)
    lines = [f"seed {r['seed']}, {r['fixtures']} fixtures, dims <= {r['max_dim']}"]
    for name, res in r["identities"].items():
        status = "PASS" if res["failed"] == 0 else "FAIL"
        lines.append(f"{status} {name}: {res['passed']} passed, {res['failed']} failed")
    emit(args, r, "\n".join(lines) + "\n")
    if not r["ok"]:
        raise CheckFailed("verification failed")


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="workspace or presentation JSON ('-' for stdin)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--max-degree", type=int, default=4)
    common.add_argument("--size-cap", type=int, default=alg.DEFAULT_SIZE_CAP)

    p = argparse.ArgumentParser(prog="supermanin", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="summarise an algebra or idempotent")
    s.add_argument("name", nargs="?")
    s.add_argument("--kind", choices=("algebra", "idempotent"), default="algebra")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("hilbert", parents=[common], help="dimensions of graded components")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("product", parents=[common], help="binary product of two algebras")
    s.add_argument("op", choices=sorted(PRODUCTS))
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("dual", parents=[common], help="Koszul dual")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("cohom", parents=[common], help="internal cohom(B, A)")
    s.add_argument("b")
    s.add_argument("a")
    s.add_argument("--method", choices=("bullet", "preimage", "both"), default="bullet")
    s.set_defaults(func=cmd_cohom)

    s = sub.add_parser("universal", parents=[common], help="universal Manin-matrix algebra")
    s.add_argument("B")
    s.add_argument("Bt", nargs="?")
    s.set_defaults(func=cmd_universal)

    s = sub.add_parser("check-manin", parents=[common], help="test the (B, B~)-Manin condition")
    s.add_argument("matrix")
    s.add_argument("--B")
    s.add_argument("--Bt")
    s.set_defaults(func=cmd_check_manin)

    s = sub.add_parser("check-mult", parents=[common], help="test multiplicativity over a bialgebra")
    s.add_argument("matrix")
    s.add_argument("host")
    s.set_defaults(func=cmd_check_mult)

    s = sub.add_parser("lift", parents=[common], help="lift a classical module")
    s.add_argument("module")
    s.add_argument("--through", choices=("S", "T"), default="S")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("verify", parents=[common], help="run the identity suites on random fixtures")
    s.add_argument("--fixtures", type=int, default=50)
    s.add_argument("--max-dim", type=int, default=2)
    s.set_defaults(func=cmd_verify)
    return p


def _error(kind: str, exc: Exception, code: int) -> int:
    body = {"error": kind, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.path:
        body["path"] = exc.path
        body["message"] = exc.detail
    sys.stderr.write(_dump(body))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ParseError as e:
        return _error("parse", e, 2)
    except CheckFailed as e:
        return _error("check", e, 1)
    except SuperManinError as e:
        return _error("domain", e, 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
