"""JSON instance files: parsing with positioned diagnostics, canonical serialization.

Every file is an object with a ``kind`` field (algebra, lie, superalgebra,
representation, hopf, rmatrix, connection, basis, grassmann).  Scalars are
strings "p/q" or "p/q+r/s*i"; plain integers are accepted on input.
Serialization is canonical: ``dumps(serialize(parse(text))) == text`` for any
file written by :func:`dumps`.
"""

import json
import os
from importlib import resources

import jsonschema

from .scalar import Scalar, as_scalar, format_scalar, parse_scalar
from .algebra import FDAlgebra
from .lie import JacobiError, LieAlgebra, Representation
from .graded import LieSuperalgebra, GrassmannElement
from .hopf import HopfAlgebra
from .groups import FiniteGroup

__all__ = [
    "ParseError",
    "DATA_ENV",
    "data_dir",
    "resolve",
    "shipped_instances",
    "load_schema",
    "read_document",
    "parse_document",
    "load",
    "serialize",
    "dumps",
    "scalar_in",
    "scalar_out",
]

DATA_ENV = "ALGCALC_DATA"
KINDS = ("algebra", "lie", "superalgebra", "representation", "hopf", "rmatrix", "pairing",
         "connection", "basis", "grassmann")


class ParseError(ValueError):
    """Unreadable or malformed input; ``position`` is a line/column or a JSON path."""

    def __init__(self, message, position=None, path=None):
        self.position = position
        self.path = path
        where = f"{path}: " if path else ""
        at = f" at {position}" if position else ""
        super().__init__(f"{where}{message}{at}")


# locations ----------------------------------------------------------------------------

def data_dir():
    override = os.environ.get(DATA_ENV)
    if override:
        return override
    return str(resources.files("algcalc") / "data")


def resolve(ref):
    """A filesystem path, or a shipped instance name such as ``m2``."""
    if os.path.isfile(ref):
        return ref
    cand = os.path.join(data_dir(), ref if ref.endswith(".json") else ref + ".json")
    if os.path.isfile(cand):
        return cand
    raise ParseError(f"no such file or shipped instance: {ref!r}")


def shipped_instances():
    d = data_dir()
    return sorted(f[:-5] for f in os.listdir(d) if f.endswith(".json"))


def load_schema(kind):
    text = (resources.files("algcalc") / "schemas" / f"{kind}.schema.json").read_text()
    return json.loads(text)


# scalars --------------------------------------------------------------------------

def scalar_in(x, where="value"):
    if isinstance(x, bool):
        raise ParseError(f"boolean is not a scalar", where)
    if isinstance(x, int):
        return Scalar(x)
    if isinstance(x, str):
        try:
            return parse_scalar(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {x!r} ({exc})", where) from None
    raise ParseError(f"expected a scalar string, got {type(x).__name__}", where)


def scalar_out(x):
    return format_scalar(as_scalar(x))


def _matrix_in(m, where):
    return [[scalar_in(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(m)]


def _matrix_out(m):
    return [[scalar_out(x) for x in row] for row in m]


# reading ---------------------------------------------------------------------------

def read_document(path):
    """Read and schema-validate a JSON file; returns the raw dict."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file ({exc.strerror})", path=path) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}", path) from None
    validate(doc, path)
    return doc


def validate(doc, path=None):
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object", "$", path)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown or missing kind {kind!r}", "$.kind", path)
    try:
        jsonschema.validate(doc, load_schema(kind))
    except jsonschema.ValidationError as exc:
        raise ParseError(exc.message, exc.json_path, path) from None


def _algebra_in(doc, check):
    n = doc["dim"]
    names = doc["basis"]
    if len(names) != n or len(doc["unit"]) != n:
        raise ParseError(f"basis and unit must have length dim={n}", "$.basis")
    mult = {}
    for idx, (i, j, k, c) in enumerate(doc["mult"]):
        for t in (i, j, k):
            if not 0 <= t < n:
                raise ParseError(f"index {t} out of range 0..{n - 1}", f"$.mult[{idx}]")
        mult.setdefault((i, j), []).append((k, scalar_in(c, f"$.mult[{idx}][3]")))
    unit = [scalar_in(x, f"$.unit[{i}]") for i, x in enumerate(doc["unit"])]
    metadata = {}
    if "group" in doc:
        metadata["group"] = _group_in(doc["group"])
        metadata["kind"] = doc.get("group_kind", "group")
    return FDAlgebra(names, mult, unit, check=check, name=doc.get("name"), metadata=metadata)


def _group_in(g):
    try:
        return FiniteGroup(g["elements"], g["table"])
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad group table ({exc})", "$.group") from None


def _bracket_in(doc, n):
    out = {}
    for idx, (i, j, k, c) in enumerate(doc["bracket"]):
        for t in (i, j, k):
            if not 0 <= t < n:
                raise ParseError(f"index {t} out of range 0..{n - 1}", f"$.bracket[{idx}]")
        out.setdefault((i, j), []).append((k, scalar_in(c, f"$.bracket[{idx}][3]")))
    return out


def parse_document(doc, check=True, base=None):
    """Build the domain object for a validated document.

    With ``check=False`` algebra-level invariants are left for the caller to test.
    """
    kind = doc["kind"]
    if kind == "algebra":
        return _algebra_in(doc, check)
    if kind == "lie":
        n = doc["dim"]
        if len(doc["basis"]) != n:
            raise ParseError(f"basis must have length dim={n}", "$.basis")
        return LieAlgebra(doc["basis"], _bracket_in(doc, n), name=doc.get("name"), check=check)
    if kind == "superalgebra":
        names, par = doc["basis"], doc["parity"]
        if len(names) != doc["dim"] or len(par) != doc["dim"]:
            raise ParseError("basis and parity must have length dim", "$.parity")
        if par != sorted(par):
            raise ParseError("even basis elements must precede odd ones", "$.parity")
        r = par.count(0)
        return LieSuperalgebra(names[:r], names[r:], _bracket_in(doc, doc["dim"]), name=doc.get("name"),
                               check=check)
    if kind == "representation":
        lie = load(_relative(doc["lie"], base), check=check)
        mats = [_matrix_in(m, f"$.matrices[{i}]") for i, m in enumerate(doc["matrices"])]
        return Representation(lie, mats, check=check, name=doc.get("name"))
    if kind == "hopf":
        alg = _algebra_in(doc["algebra"], check)
        n = alg.dim
        comul = {}
        for idx, (i, j, k, c) in enumerate(doc["comul"]):
            for t in (i, j, k):
                if not 0 <= t < n:
                    raise ParseError(f"index {t} out of range 0..{n - 1}", f"$.comul[{idx}]")
            comul.setdefault(i, []).append((j, k, scalar_in(c, f"$.comul[{idx}][3]")))
        counit = [scalar_in(x, f"$.counit[{i}]") for i, x in enumerate(doc["counit"])]
        S = _matrix_in(doc["antipode"], "$.antipode")
        try:
            return HopfAlgebra(alg, comul, counit, S, name=doc.get("name"))
        except ValueError as exc:
            raise ParseError(str(exc), "$") from None
    if kind == "rmatrix":
        return {"hopf": doc.get("hopf"),
                "coords": [scalar_in(x, f"$.coords[{i}]") for i, x in enumerate(doc["coords"])]}
    if kind == "pairing":
        return _matrix_in(doc["matrix"], "$.matrix")
    if kind == "connection":
        return {"n": doc["n"], "omega": [_matrix_in(m, f"$.omega[{p}]") for p, m in enumerate(doc["omega"])]}
    if kind == "basis":
        return {"n": doc["n"], "epsilon": [_matrix_in(m, f"$.epsilon[{i}]") for i, m in enumerate(doc["epsilon"])]}
    if kind == "grassmann":
        terms = {}
        for idx, (subset, c) in enumerate(doc["terms"]):
            terms[tuple(subset)] = terms.get(tuple(subset), Scalar(0)) + scalar_in(c, f"$.terms[{idx}][1]")
        try:
            return GrassmannElement(doc["rank"], terms)
        except ValueError as exc:
            raise ParseError(str(exc), "$.terms") from None
    raise ParseError(f"unknown kind {kind!r}", "$.kind")


def _relative(ref, base):
    if base and not os.path.isabs(ref):
        cand = os.path.join(os.path.dirname(base), ref)
        if os.path.isfile(cand):
            return cand
    return resolve(ref)


def load(ref, check=True):
    path = resolve(ref)
    doc = read_document(path)
    try:
        return parse_document(doc, check=check, base=path)
    except ParseError as exc:
        if exc.path is None:
            raise ParseError(str(exc), path=path) from None
        raise
    except JacobiError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), path=path) from None


# writing ---------------------------------------------------------------------------

def _algebra_out(alg):
    doc = {"kind": "algebra"}
    if alg.name:
        doc["name"] = alg.name
    doc["dim"] = alg.dim
    doc["basis"] = list(alg.basis_names)
    doc["unit"] = [scalar_out(x) for x in alg.unit]
    doc["mult"] = [[i, j, k, scalar_out(c)] for (i, j), terms in sorted(alg.mult.items()) for k, c in terms]
    group = alg.metadata.get("group")
    if group is not None:
        doc["group"] = {"elements": list(group.names), "table": [list(r) for r in group.table]}
        doc["group_kind"] = alg.metadata.get("kind", "group")
    return doc


def _bracket_out(g):
    """Brackets for i < j only; antisymmetry fills in the rest on input."""
    rows = []
    for i in range(g.dim):
        for j in range(i, g.dim):
            for k, c in g.bracket_terms(i, j):
                if i < j or c:
                    rows.append([i, j, k, scalar_out(c)])
    return rows


def serialize(obj):
    """Canonical JSON-ready dict for a domain object."""
    if isinstance(obj, HopfAlgebra):
        doc = {"kind": "hopf"}
        if obj.name:
            doc["name"] = obj.name
        block = _algebra_out(obj.algebra)
        del block["kind"]
        doc["algebra"] = block
        doc["comul"] = [[i, j, k, scalar_out(c)] for i in range(obj.dim) for (j, k), c in sorted(obj.comul[i].items())]
        doc["counit"] = [scalar_out(x) for x in obj.counit]
        doc["antipode"] = _matrix_out(obj.antipode)
        return doc
    if isinstance(obj, FDAlgebra):
        return _algebra_out(obj)
    if isinstance(obj, LieSuperalgebra):
        doc = {"kind": "superalgebra"}
        if obj.name:
            doc["name"] = obj.name
        doc["dim"] = obj.dim
        doc["basis"] = list(obj.basis_names)
        doc["parity"] = list(obj.parities)
        doc["bracket"] = _bracket_out(obj)
        return doc
    if isinstance(obj, LieAlgebra):
        doc = {"kind": "lie"}
        if obj.name:
            doc["name"] = obj.name
        doc["dim"] = obj.dim
        doc["basis"] = list(obj.basis_names)
        doc["bracket"] = _bracket_out(obj)
        return doc
    if isinstance(obj, GrassmannElement):
        return {"kind": "grassmann", "rank": obj.rank,
                "terms": [[list(k), scalar_out(c)] for k, c in sorted(obj.terms.items(), key=lambda t: (len(t[0]), t[0]))]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _render(x, depth):
    pad = " " * depth
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad} {json.dumps(k)}: {_render(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(x, list) and any(isinstance(y, (list, dict)) for y in x):
        items = [f"{pad} {_render(y, depth + 1)}" for y in x]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return json.dumps(x, ensure_ascii=False)


def dumps(doc):
    """Canonical text: one line per innermost array."""
    return _render(doc, 0) + "\n"
