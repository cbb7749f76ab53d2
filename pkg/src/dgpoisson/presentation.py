"""JSON presentation format.

Every document is a UTF-8 JSON object with ``"schema": "dgpoisson/1"`` and a
``"kind"``.  Scalars are strings ("3/4", "2 mod 5"); tables are sparse,
omitted entries mean zero:

* bilinear tables: ``[[x, y, {z: c, ...}], ...]``
* linear tables:   ``[[x, {z: c, ...}], ...]``

Kinds: ``dg-poisson`` (optionally with a ``module`` section), ``dg-lie``,
``dg-space``, ``deformation``, ``dg-poisson-module``, ``ue-window``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .construct import DeformationData, DGVectorSpaceData
from .core import BilinearOp, Element, Field, GradedLinearMap, GradedSpace
from .structures import DGAlgebraData, DGLieData, DGPoissonData, DGPoissonModuleData
from .ue.truncation import UETruncation
from .ue.words import parse_word, word_str

SCHEMA = "dgpoisson/1"


class PresentationError(ValueError):
    """Malformed document; the message names the line or field."""


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------

def _vec(e: Element) -> dict:
    f = e.space.field
    return {k: f.format(v) for k, v in e.coeffs.items()}


def _bil(op: BilinearOp) -> list:
    return [[x, y, _vec(v)] for (x, y), v in op.table.items()]


def _lin(m: GradedLinearMap) -> list:
    return [[x, _vec(v)] for x, v in m.table.items()]


def _basis(S: GradedSpace) -> list:
    return [[n, S.degree(n)] for n in S]


def dump_poisson(A: DGPoissonData) -> dict:
    return {"schema": SCHEMA, "kind": "dg-poisson", "field": A.field.spec(), "p": A.p,
            "unit": A.unit, "commutative": A.commutative, "basis": _basis(A.space),
            "product": _bil(A.product), "bracket": _bil(A.bracket),
            "differential": _lin(A.differential)}


def dump_lie(L: DGLieData) -> dict:
    return {"schema": SCHEMA, "kind": "dg-lie", "field": L.space.field.spec(),
            "p": L.bracket_degree, "basis": _basis(L.space), "bracket": _bil(L.bracket),
            "differential": _lin(L.differential)}


def dump_space(V: DGVectorSpaceData) -> dict:
    return {"schema": SCHEMA, "kind": "dg-space", "field": V.space.field.spec(),
            "basis": _basis(V.space), "differential": _lin(V.differential)}


def dump_deformation(D: DeformationData) -> dict:
    A = D.algebra
    return {"schema": SCHEMA, "kind": "deformation", "field": A.space.field.spec(),
            "unit": A.unit, "basis": _basis(A.space), "product": _bil(A.product),
            "differential": _lin(A.differential),
            "coefficients": [_bil(B) for B in D.coefficients]}


def _module_body(Mod: DGPoissonModuleData) -> dict:
    return {"basis": _basis(Mod.space), "right": Mod.right, "action": _bil(Mod.action),
            "lie_action": _bil(Mod.lie_action), "differential": _lin(Mod.differential)}


def dump_module(Mod: DGPoissonModuleData, embed_algebra: bool = False) -> dict:
    out = {"schema": SCHEMA, "kind": "dg-poisson-module", "field": Mod.space.field.spec(),
           **_module_body(Mod)}
    if embed_algebra:
        out["algebra"] = dump_poisson(Mod.algebra)
    return out


def _poly(poly: dict, f: Field) -> list:
    return [[word_str(w), f.format(c)] for w, c in poly.items()]


def dump_ue(U: UETruncation) -> dict:
    f = U.space.field
    return {
        "schema": SCHEMA, "kind": "ue-window", "field": f.spec(), "L": U.L,
        "provenance": U.provenance, "stable": U.stable,
        "basis": [[n, U.space.degree(n), U.levels[n]] for n in U.labels],
        "preimages": {n: _poly(U.preimages[n], f) for n in U.labels},
        "product": [[u, v, _vec(e)] for (u, v), e in U.product.items()],
        "differential": _lin(U.differential),
        "generators": [[k, a, _vec(e)] for (k, a), e in U.generators.items()],
        "notes": list(U.notes),
        "algebra": dump_poisson(U.algebra),
    }


def dump(obj) -> dict:
    if isinstance(obj, DGPoissonData):
        return dump_poisson(obj)
    if isinstance(obj, DGLieData):
        return dump_lie(obj)
    if isinstance(obj, DGVectorSpaceData):
        return dump_space(obj)
    if isinstance(obj, DeformationData):
        return dump_deformation(obj)
    if isinstance(obj, DGPoissonModuleData):
        return dump_module(obj)
    if isinstance(obj, UETruncation):
        return dump_ue(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _compact(value, indent: str) -> str:
    """Objects and lists of lists open one level; everything else on one line."""
    one = lambda v: json.dumps(v, ensure_ascii=False)
    inner = indent + " "
    if isinstance(value, dict) and value and indent == "":
        body = ",\n".join(f"{inner}{one(k)}: {_compact(v, inner)}" for k, v in value.items())
        return "{\n" + body + "\n" + indent + "}"
    if isinstance(value, dict) and value and any(isinstance(v, (list, dict)) for v in value.values()):
        body = ",\n".join(f"{inner}{one(k)}: {one(v)}" for k, v in value.items())
        return "{\n" + body + "\n" + indent + "}"
    if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
        body = ",\n".join(inner + one(v) for v in value)
        return "[\n" + body + "\n" + indent + "]"
    return one(value)


def to_json(obj) -> str:
    return _compact(dump(obj), "")


def write(obj, path) -> None:
    Path(path).write_text(to_json(obj) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# reading
# ---------------------------------------------------------------------------

class _Reader:
    """Parses one document, prefixing errors with the field being read."""

    def __init__(self, doc: dict, where: str = ""):
        if not isinstance(doc, dict):
            raise PresentationError(f"{where or 'document'}: expected a JSON object")
        self.doc = doc
        self.where = where

    def loc(self, key):
        return f"{self.where}.{key}" if self.where else key

    def get(self, key, default=...):
        if key not in self.doc:
            if default is ...:
                raise PresentationError(f"{self.loc(key)}: missing field")
            return default
        return self.doc[key]

    def field(self) -> Field:
        try:
            return Field.from_spec(self.get("field", "Q"))
        except (ValueError, TypeError) as e:
            raise PresentationError(f"{self.loc('field')}: {e}") from None

    def space(self, F: Field, key="basis") -> GradedSpace:
        raw = self.get(key)
        try:
            return GradedSpace([(str(n), int(d)) for n, d, *_ in raw], F)
        except (TypeError, ValueError) as e:
            raise PresentationError(f"{self.loc(key)}: {e}") from None

    def vector(self, S: GradedSpace, raw, where) -> Element:
        if not isinstance(raw, dict):
            raise PresentationError(f"{where}: expected an object of coefficients")
        out = {}
        for k, v in raw.items():
            if k not in S:
                raise PresentationError(f"{where}: unknown basis symbol {k!r}")
            try:
                out[k] = S.field.parse(str(v))
            except (ValueError, ZeroDivisionError) as e:
                raise PresentationError(f"{where}: bad scalar {v!r} ({e})") from None
        return Element(S, out)

    def bilinear(self, key, degree, left, right=None, target=None) -> BilinearOp:
        right = right or left
        target = target or right
        table = {}
        for i, row in enumerate(self.get(key, [])):
            where = f"{self.loc(key)}[{i}]"
            if not (isinstance(row, list) and len(row) == 3):
                raise PresentationError(f"{where}: expected [x, y, {{z: c}}]")
            x, y, v = row
            if x not in left or y not in right:
                raise PresentationError(f"{where}: unknown symbol in ({x!r}, {y!r})")
            if (x, y) in table:
                raise PresentationError(f"{where}: duplicate entry ({x}, {y})")
            table[(x, y)] = self.vector(target, v, where)
        try:
            return BilinearOp(degree, table, left, right, target)
        except ValueError as e:
            raise PresentationError(f"{self.loc(key)}: {e}") from None

    def linear(self, key, S, T=None, degree=1) -> GradedLinearMap:
        T = T or S
        table = {}
        for i, row in enumerate(self.get(key, [])):
            where = f"{self.loc(key)}[{i}]"
            if not (isinstance(row, list) and len(row) == 2):
                raise PresentationError(f"{where}: expected [x, {{z: c}}]")
            x, v = row
            if x not in S:
                raise PresentationError(f"{where}: unknown symbol {x!r}")
            table[x] = self.vector(T, v, where)
        try:
            return GradedLinearMap(S, T, degree, table)
        except ValueError as e:
            raise PresentationError(f"{self.loc(key)}: {e}") from None

    def int(self, key, default=...):
        v = self.get(key, default)
        if not isinstance(v, int) or isinstance(v, bool):
            raise PresentationError(f"{self.loc(key)}: expected an integer")
        return v


def _structure(thunk, where):
    try:
        return thunk()
    except PresentationError:
        raise
    except (ValueError, KeyError) as e:
        raise PresentationError(f"{where}: {e}") from None


def load_poisson(doc: dict, where: str = "") -> DGPoissonData:
    r = _Reader(doc, where)
    F = r.field()
    S = r.space(F)
    p = r.int("p")
    return _structure(lambda: DGPoissonData.build(
        S, r.bilinear("product", 0, S), r.bilinear("bracket", p, S), p,
        r.linear("differential", S), str(r.get("unit", "1")),
        bool(r.get("commutative", True))), where or "document")


def load_lie(doc: dict, where: str = "") -> DGLieData:
    r = _Reader(doc, where)
    F = r.field()
    S = r.space(F)
    p = r.int("p", 0)
    return _structure(lambda: DGLieData(S, r.bilinear("bracket", p, S), p,
                                        r.linear("differential", S)), where or "document")


def load_space(doc: dict, where: str = "") -> DGVectorSpaceData:
    r = _Reader(doc, where)
    S = r.space(r.field())
    return _structure(lambda: DGVectorSpaceData(S, r.linear("differential", S)),
                      where or "document")


def load_deformation(doc: dict, where: str = "") -> DeformationData:
    r = _Reader(doc, where)
    S = r.space(r.field())
    A = _structure(lambda: DGAlgebraData(S, r.bilinear("product", 0, S),
                                         str(r.get("unit", "1")),
                                         r.linear("differential", S), True), where or "document")
    coeffs = []
    for i, _ in enumerate(r.get("coefficients")):
        sub = _Reader({"c": r.doc["coefficients"][i]}, r.loc(f"coefficients[{i}]"))
        coeffs.append(sub.bilinear("c", 0, S))
    return DeformationData(A, tuple(coeffs))


def load_module(doc: dict, A: DGPoissonData | None = None, where: str = "") -> DGPoissonModuleData:
    r = _Reader(doc, where)
    if A is None:
        if "algebra" not in doc:
            raise PresentationError(f"{r.loc('algebra')}: module needs an algebra")
        A = load_poisson(doc["algebra"], r.loc("algebra"))
    S = r.space(A.field)
    right = bool(r.get("right", False))
    if right:
        act = r.bilinear("action", 0, S, A.space, S)
        lact = r.bilinear("lie_action", A.p, S, A.space, S)
    else:
        act = r.bilinear("action", 0, A.space, S, S)
        lact = r.bilinear("lie_action", A.p, A.space, S, S)
    return _structure(lambda: DGPoissonModuleData(A, S, act, lact,
                                                  r.linear("differential", S), right),
                      where or "document")


def load_ue(doc: dict) -> UETruncation:
    r = _Reader(doc)
    A = load_poisson(r.get("algebra"), "algebra")
    F = A.field
    raw = r.get("basis")
    S = r.space(F)
    levels = {str(n): int(lev) for n, _, lev in raw}
    pre = {}
    for n, terms in r.get("preimages").items():
        pre[n] = {parse_word(w): F.parse(c) for w, c in terms}
    product = {}
    for i, (u, v, vec) in enumerate(r.get("product")):
        product[(u, v)] = r.vector(S, vec, f"product[{i}]")
    gens = {}
    for i, (k, a, vec) in enumerate(r.get("generators", [])):
        gens[(k, a)] = r.vector(S, vec, f"generators[{i}]")
    return UETruncation(algebra=A, L=r.int("L"), provenance=str(r.get("provenance")),
                        space=S, levels=levels, preimages=pre, product=product,
                        differential=r.linear("differential", S), stable=r.get("stable", None),
                        notes=list(r.get("notes", [])), generators=gens)


LOADERS = {
    "dg-poisson": load_poisson,
    "dg-lie": load_lie,
    "dg-space": load_space,
    "deformation": load_deformation,
    "dg-poisson-module": load_module,
    "ue-window": load_ue,
}


def parse_text(text: str, source: str = "<string>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise PresentationError(f"{source}: top level must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise PresentationError(f"{source}: schema: expected {SCHEMA!r}, got {doc.get('schema')!r}")
    if doc.get("kind") not in LOADERS:
        raise PresentationError(f"{source}: kind: unknown kind {doc.get('kind')!r}")
    return doc


def load(doc: dict):
    return LOADERS[doc["kind"]](doc)


def from_json(text: str, source: str = "<string>"):
    return load(parse_text(text, source))


def read(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise PresentationError(f"{path}: {e.strerror}") from None
    doc = parse_text(text, str(path))
    try:
        return load(doc)
    except PresentationError as e:
        raise PresentationError(f"{path}: {e}") from None
