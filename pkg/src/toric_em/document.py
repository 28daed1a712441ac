"""Polytope documents (JSON), the polynomial input grammar and run reports."""

from __future__ import annotations

import ast
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ToricError
from .fan import check_refines, make_summand
from .kernel.poly import LaurentPoly
from .kernel.ypoly import YPoly
from .polytope import LatticePolytope, build_polytope


class DocumentError(ToricError):
    """Malformed input document or polynomial text."""


@dataclass
class PolytopeDocument:
    name: str
    lattice_dim: int
    vertices: list
    facets: list | None = None
    summand: list | None = None
    tags: list = field(default_factory=list)

    def polytope(self) -> LatticePolytope:
        facets = None
        if self.facets is not None:
            facets = [(tuple(f["normal"]), f["offset"]) for f in self.facets]
        P = build_polytope([tuple(v) for v in self.vertices], facets, name=self.name)
        if self.summand is not None:
            check_refines(P, self.summand_polytope())
        return P

    def summand_polytope(self):
        return make_summand([tuple(q) for q in self.summand]) if self.summand else None

    def to_dict(self) -> dict:
        out = {"name": self.name, "lattice_dim": self.lattice_dim, "vertices": [list(v) for v in self.vertices]}
        if self.facets is not None:
            out["facets"] = self.facets
        if self.summand is not None:
            out["summand"] = [list(q) for q in self.summand]
        if self.tags:
            out["tags"] = list(self.tags)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _int_vector(v, n, what):
    if not isinstance(v, list) or len(v) != n or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise DocumentError(f"{what} must be a list of {n} integers, got {v!r}")
    return [int(a) for a in v]


def parse_document(text: str) -> PolytopeDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not a JSON document: {exc}") from None
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(raw) - {"name", "lattice_dim", "vertices", "facets", "summand", "tags"}
    if unknown:
        raise DocumentError(f"unknown fields {sorted(unknown)}")
    n = raw.get("lattice_dim")
    if not isinstance(n, int) or n < 1:
        raise DocumentError("lattice_dim must be a positive integer")
    verts = raw.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise DocumentError("vertices must be a non-empty list")
    verts = [_int_vector(v, n, "vertex") for v in verts]
    facets = raw.get("facets")
    if facets is not None:
        if not isinstance(facets, list):
            raise DocumentError("facets must be a list")
        clean = []
        for f in facets:
            if not isinstance(f, dict) or set(f) != {"normal", "offset"} or not isinstance(f["offset"], int):
                raise DocumentError(f"facet must be {{normal, offset}}, got {f!r}")
            clean.append({"normal": _int_vector(f["normal"], n, "facet normal"), "offset": f["offset"]})
        facets = clean
    summand = raw.get("summand")
    if summand is not None:
        if not isinstance(summand, list) or not summand:
            raise DocumentError("summand must be a non-empty list of points")
        summand = [_int_vector(q, n, "summand point") for q in summand]
    tags = raw.get("tags", [])
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise DocumentError("tags must be a list of strings")
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name must be a string")
    return PolytopeDocument(name, n, verts, facets, summand, tags)


def document_from_polytope(P: LatticePolytope, name=None, with_facets: bool = True) -> PolytopeDocument:
    facets = [{"normal": list(f.normal), "offset": int(f.offset)} for f in P.facets] if with_facets else None
    return PolytopeDocument(name if name is not None else P.name, P.dim, [list(v) for v in P.vertices], facets)


# -- polynomial grammar ----------------------------------------------------

def parse_polynomial(text: str, nvars: int) -> LaurentPoly:
    """Polynomials in ``x1..xn`` with integer or rational coefficients.

    Allowed: ``+ - * ^`` (``**`` too), parentheses, nonnegative integer
    exponents; ``/`` only between integer literals (a rational constant).
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError:
        raise DocumentError(f"cannot parse polynomial {text!r}") from None

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return LaurentPoly.const(nvars, node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if name.startswith("x") and name[1:].isdigit():
                i = int(name[1:])
                if 1 <= i <= nvars:
                    return LaurentPoly.variable(nvars, i - 1)
            raise DocumentError(f"unknown variable {name!r} (use x1..x{nvars})")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = ev(node.operand)
            return v if isinstance(node.op, ast.UAdd) else -v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Div):
                a, b = node.left, node.right
                if all(isinstance(t, ast.Constant) and type(t.value) is int for t in (a, b)) and b.value != 0:
                    return LaurentPoly.const(nvars, Fraction(a.value, b.value))
                raise DocumentError("division is only allowed between integer literals")
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and type(e.value) is int and 0 <= e.value <= 64):
                    raise DocumentError("exponents must be integer literals in 0..64")
                return ev(node.left) ** e.value
            ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b, ast.Mult: lambda a, b: a * b}
            for kind, fn in ops.items():
                if isinstance(node.op, kind):
                    return fn(ev(node.left), ev(node.right))
        raise DocumentError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree.body)


# -- reports ---------------------------------------------------------------

def exact_text(v) -> str:
    if isinstance(v, YPoly):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


@dataclass
class CheckRecord:
    name: str
    left: str
    right: str
    verdict: str  # "OK", "MISMATCH" or "SKIPPED"
    detail: dict = field(default_factory=dict)
    timing: float | None = None

    def to_dict(self, timing: bool) -> dict:
        d = {"name": self.name, "left": self.left, "right": self.right, "verdict": self.verdict}
        if self.detail:
            d["detail"] = self.detail
        if timing and self.timing is not None:
            d["timing"] = round(self.timing, 6)
        return d


@dataclass
class RunReport:
    command: str
    inputs: list  # document texts, in input order
    records: list = field(default_factory=list)

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        for text in self.inputs:
            h.update(text.encode())
        return h.hexdigest()

    @property
    def ok(self) -> bool:
        return all(r.verdict != "MISMATCH" for r in self.records)

    @property
    def status(self) -> str:
        return "OK" if self.ok else "MISMATCH"

    def to_json(self, timing: bool = False) -> str:
        doc = {
            "command": self.command,
            "inputs_digest": self.digest,
            "records": [r.to_dict(timing) for r in self.records],
            "status": self.status,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
