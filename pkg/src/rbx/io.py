"""Canonical JSON-shaped file formats for every domain type.

Scalars are serialized as exact text ("n" or "n/d" over the rationals, a
decimal residue over a prime field); keys are emitted sorted and indentation
is fixed, so saving a loaded file is byte-identical after one normalization
pass.  Parsing checks shapes and cross-field consistency and reports the file
and JSON location of the first offending value; deep structural validation
(Jacobi, operator identities, cocycle conditions, exactness) is a separate
step so callers can distinguish malformed input from a well-formed structure
that fails its axioms.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .abelian import AbelianExtensionView
from .cohomology import Cochain
from .errors import InvalidStructure, ParseError, RbxError
from .inducibility import AutomorphismPair
from .liealg import (
    LieAlgebra,
    RBLieAlgebra,
    check_jacobi,
    check_rota_baxter,
)
from .linalg import Field, Matrix
from .nonabelian import (
    Extension,
    NonAbelianCocycle,
    is_section,
    validate_cocycle,
    validate_extension,
)
from .reps import Representation, check_representation
from .results import CheckReport


# ---------------------------------------------------------------------------
# canonical emission
# ---------------------------------------------------------------------------

def canonical_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save(path, payload) -> None:
    Path(path).write_text(canonical_dumps(payload), encoding="utf-8")


# ---------------------------------------------------------------------------
# scalar / matrix / field codecs
# ---------------------------------------------------------------------------

def field_to_data(f: Field) -> dict:
    if f.modulus is None:
        return {"kind": "rationals"}
    return {"kind": "prime_field", "modulus": f.modulus}


def parse_field(data, loc: str, source: Optional[str] = None) -> Field:
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("field descriptor must be an object with a 'kind'",
                         source=source, location=loc)
    kind = data["kind"]
    if kind == "rationals":
        if "modulus" in data:
            raise ParseError("the rationals carry no modulus", source=source, location=loc)
        return Field()
    if kind == "prime_field":
        modulus = data.get("modulus")
        if not isinstance(modulus, int):
            raise ParseError("prime_field needs an integer 'modulus'",
                             source=source, location=loc)
        try:
            return Field(modulus)
        except InvalidStructure as exc:
            raise ParseError(str(exc), source=source, location=f"{loc}.modulus") from None
    raise ParseError(f"unknown field kind {kind!r}", source=source, location=loc)


def parse_scalar(field: Field, data, loc: str, source: Optional[str] = None):
    try:
        return field.parse(data)
    except InvalidStructure as exc:
        raise ParseError(str(exc), source=source, location=loc) from None


def matrix_to_data(m: Matrix) -> list:
    return [[m.field.format(x) for x in row] for row in m.entries]


def parse_matrix(data, field: Field, rows: int, cols: int, loc: str,
                 source: Optional[str] = None) -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise ParseError(f"expected {rows} rows", source=source, location=loc)
    grid = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"expected {cols} columns", source=source, location=f"{loc}[{r}]")
        grid.append([
            parse_scalar(field, x, f"{loc}[{r}][{c}]", source) for c, x in enumerate(row)
        ])
    return Matrix.from_rows(field, grid, cols=cols)


def vector_to_data(field: Field, vec) -> list:
    return [field.format(x) for x in vec]


# ---------------------------------------------------------------------------
# algebra files
# ---------------------------------------------------------------------------

def algebra_to_data(a: RBLieAlgebra) -> dict:
    bracket = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            vec = a.lie.bracket_basis(i, j)
            if any(vec):
                bracket.append([i, j, vector_to_data(a.field, vec)])
    return {
        "field": field_to_data(a.field),
        "dim": a.dim,
        "bracket": bracket,
        "op": matrix_to_data(a.op),
    }


def parse_algebra(data, loc: str = "algebra", source: Optional[str] = None) -> RBLieAlgebra:
    if not isinstance(data, dict):
        raise ParseError("algebra must be an object", source=source, location=loc)
    for key in ("field", "dim", "bracket", "op"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", source=source, location=loc)
    field = parse_field(data["field"], f"{loc}.field", source)
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("dim must be a nonnegative integer", source=source, location=f"{loc}.dim")
    if not isinstance(data["bracket"], list):
        raise ParseError("bracket must be a list", source=source, location=f"{loc}.bracket")
    pairs = {}
    for k, item in enumerate(data["bracket"]):
        where = f"{loc}.bracket[{k}]"
        if (not isinstance(item, list) or len(item) != 3
                or not isinstance(item[0], int) or not isinstance(item[1], int)
                or not isinstance(item[2], list)):
            raise ParseError("bracket entries are [i, j, coefficients]",
                             source=source, location=where)
        i, j, coeffs = item
        if not (0 <= i < j < dim):
            raise ParseError(f"pair ({i}, {j}) must satisfy 0 <= i < j < dim",
                             source=source, location=where)
        if (i, j) in pairs:
            raise ParseError(f"duplicate pair ({i}, {j})", source=source, location=where)
        if len(coeffs) != dim:
            raise ParseError(f"expected {dim} coefficients", source=source, location=where)
        pairs[(i, j)] = tuple(
            parse_scalar(field, x, f"{where}[2][{c}]", source) for c, x in enumerate(coeffs)
        )
    lie = LieAlgebra.from_pairs(field, dim, pairs)
    op = parse_matrix(data["op"], field, dim, dim, f"{loc}.op", source)
    return RBLieAlgebra(lie, op)


# ---------------------------------------------------------------------------
# representation files
# ---------------------------------------------------------------------------

def representation_to_data(r: Representation) -> dict:
    data = {
        "base": algebra_to_data(r.base),
        "hdim": r.hdim,
        "action": [matrix_to_data(a) for a in r.action],
        "S": matrix_to_data(r.s_op),
    }
    if r.h_bracket is not None:
        bracket = []
        for i in range(r.hdim):
            for j in range(i + 1, r.hdim):
                vec = r.h_bracket.bracket_basis(i, j)
                if any(vec):
                    bracket.append([i, j, vector_to_data(r.field, vec)])
        data["hbracket"] = bracket
    return data


def parse_representation(data, loc: str = "representation",
                         source: Optional[str] = None,
                         base_dir: Optional[Path] = None) -> Representation:
    if not isinstance(data, dict):
        raise ParseError("representation must be an object", source=source, location=loc)
    for key in ("base", "hdim", "action", "S"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", source=source, location=loc)
    base_data = data["base"]
    if isinstance(base_data, str):
        base_path = (base_dir or Path(".")) / base_data
        base = load_algebra(base_path)
    else:
        base = parse_algebra(base_data, f"{loc}.base", source)
    hdim = data["hdim"]
    if not isinstance(hdim, int) or hdim < 0:
        raise ParseError("hdim must be a nonnegative integer",
                         source=source, location=f"{loc}.hdim")
    if not isinstance(data["action"], list) or len(data["action"]) != base.dim:
        raise ParseError(f"need one action matrix per basis vector ({base.dim})",
                         source=source, location=f"{loc}.action")
    action = tuple(
        parse_matrix(m, base.field, hdim, hdim, f"{loc}.action[{k}]", source)
        for k, m in enumerate(data["action"])
    )
    s_op = parse_matrix(data["S"], base.field, hdim, hdim, f"{loc}.S", source)
    h_bracket = None
    if "hbracket" in data:
        pairs = {}
        for k, item in enumerate(data["hbracket"]):
            where = f"{loc}.hbracket[{k}]"
            if not isinstance(item, list) or len(item) != 3:
                raise ParseError("bracket entries are [i, j, coefficients]",
                                 source=source, location=where)
            i, j, coeffs = item
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < hdim):
                raise ParseError(f"pair ({i}, {j}) must satisfy 0 <= i < j < hdim",
                                 source=source, location=where)
            if (i, j) in pairs:
                raise ParseError(f"duplicate pair ({i}, {j})", source=source, location=where)
            pairs[(i, j)] = tuple(
                parse_scalar(base.field, x, f"{where}[2][{c}]", source)
                for c, x in enumerate(coeffs)
            )
        h_bracket = LieAlgebra.from_pairs(base.field, hdim, pairs)
    return Representation(base=base, hdim=hdim, action=action, s_op=s_op, h_bracket=h_bracket)


# ---------------------------------------------------------------------------
# cochain / cocycle files
# ---------------------------------------------------------------------------

def cochain_to_data(c: Cochain) -> dict:
    return {
        "degree": c.degree,
        "values": {
            ",".join(str(i) for i in key): vector_to_data(c.field, vec)
            for key, vec in c.items
        },
    }


def parse_cochain(data, field: Field, gdim: int, hdim: int, loc: str,
                  source: Optional[str] = None, degree: Optional[int] = None) -> Cochain:
    if not isinstance(data, dict) or "degree" not in data or "values" not in data:
        raise ParseError("cochain needs 'degree' and 'values'", source=source, location=loc)
    deg = data["degree"]
    if not isinstance(deg, int) or deg < 0:
        raise ParseError("degree must be a nonnegative integer",
                         source=source, location=f"{loc}.degree")
    if degree is not None and deg != degree:
        raise ParseError(f"expected degree {degree}", source=source, location=f"{loc}.degree")
    values = {}
    if not isinstance(data["values"], dict):
        raise ParseError("values must map index tuples to vectors",
                         source=source, location=f"{loc}.values")
    for key_text, vec in data["values"].items():
        where = f"{loc}.values[{key_text!r}]"
        try:
            key = tuple(int(part) for part in key_text.split(",")) if key_text else ()
        except ValueError:
            raise ParseError("keys are comma-separated indices",
                             source=source, location=where) from None
        if not isinstance(vec, list) or len(vec) != hdim:
            raise ParseError(f"expected {hdim} coefficients", source=source, location=where)
        values[key] = tuple(
            parse_scalar(field, x, f"{where}[{c}]", source) for c, x in enumerate(vec)
        )
    try:
        return Cochain.build(field, gdim, hdim, deg, values)
    except RbxError as exc:
        raise ParseError(str(exc), source=source, location=f"{loc}.values") from None


def cocycle_to_data(c: NonAbelianCocycle) -> dict:
    return {
        "g": algebra_to_data(c.g),
        "h": algebra_to_data(c.h),
        "chi": cochain_to_data(c.chi),
        "psi": [matrix_to_data(m) for m in c.psi],
        "phi": matrix_to_data(c.phi),
    }


def parse_cocycle(data, loc: str = "cocycle", source: Optional[str] = None) -> NonAbelianCocycle:
    if not isinstance(data, dict):
        raise ParseError("cocycle must be an object", source=source, location=loc)
    for key in ("g", "h", "chi", "psi", "phi"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", source=source, location=loc)
    g = parse_algebra(data["g"], f"{loc}.g", source)
    h = parse_algebra(data["h"], f"{loc}.h", source)
    if g.field != h.field:
        raise ParseError("the two algebras must share a field", source=source, location=loc)
    chi = parse_cochain(data["chi"], g.field, g.dim, h.dim, f"{loc}.chi", source, degree=2)
    if not isinstance(data["psi"], list) or len(data["psi"]) != g.dim:
        raise ParseError(f"need one action matrix per basis vector ({g.dim})",
                         source=source, location=f"{loc}.psi")
    psi = tuple(
        parse_matrix(m, g.field, h.dim, h.dim, f"{loc}.psi[{k}]", source)
        for k, m in enumerate(data["psi"])
    )
    phi = parse_matrix(data["phi"], g.field, h.dim, g.dim, f"{loc}.phi", source)
    return NonAbelianCocycle(g=g, h=h, chi=chi, psi=psi, phi=phi)


# ---------------------------------------------------------------------------
# extension / pair / section / witness files
# ---------------------------------------------------------------------------

def extension_to_data(x: Extension) -> dict:
    return {
        "e": algebra_to_data(x.e),
        "i": matrix_to_data(x.i),
        "p": matrix_to_data(x.p),
        "g": algebra_to_data(x.g),
        "h": algebra_to_data(x.h),
    }


def parse_extension(data, loc: str = "extension", source: Optional[str] = None) -> Extension:
    if not isinstance(data, dict):
        raise ParseError("extension must be an object", source=source, location=loc)
    for key in ("e", "i", "p", "g", "h"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", source=source, location=loc)
    e = parse_algebra(data["e"], f"{loc}.e", source)
    g = parse_algebra(data["g"], f"{loc}.g", source)
    h = parse_algebra(data["h"], f"{loc}.h", source)
    if not (e.field == g.field == h.field):
        raise ParseError("all three algebras must share a field", source=source, location=loc)
    i = parse_matrix(data["i"], e.field, e.dim, h.dim, f"{loc}.i", source)
    p = parse_matrix(data["p"], e.field, g.dim, e.dim, f"{loc}.p", source)
    return Extension(e=e, i=i, p=p, g=g, h=h)


def pair_to_data(pair: AutomorphismPair) -> dict:
    return {"beta": matrix_to_data(pair.beta), "alpha": matrix_to_data(pair.alpha)}


def parse_pair(data, x: Extension, loc: str = "pair", source: Optional[str] = None) -> AutomorphismPair:
    if not isinstance(data, dict) or "beta" not in data or "alpha" not in data:
        raise ParseError("pair needs 'beta' and 'alpha'", source=source, location=loc)
    beta = parse_matrix(data["beta"], x.e.field, x.h.dim, x.h.dim, f"{loc}.beta", source)
    alpha = parse_matrix(data["alpha"], x.e.field, x.g.dim, x.g.dim, f"{loc}.alpha", source)
    return AutomorphismPair(beta, alpha)


def parse_section(data, x: Extension, loc: str = "section", source: Optional[str] = None) -> Matrix:
    if not isinstance(data, dict) or "s" not in data:
        raise ParseError("section needs 's'", source=source, location=loc)
    s = parse_matrix(data["s"], x.e.field, x.e.dim, x.g.dim, f"{loc}.s", source)
    if not is_section(x, s):
        raise ParseError("matrix is not a right inverse of the projection",
                         source=source, location=f"{loc}.s")
    return s


def parse_witness(data, x: Extension, loc: str = "witness", source: Optional[str] = None) -> Matrix:
    if not isinstance(data, dict) or "lambda" not in data:
        raise ParseError("witness needs 'lambda'", source=source, location=loc)
    return parse_matrix(data["lambda"], x.e.field, x.h.dim, x.g.dim, f"{loc}.lambda", source)


# ---------------------------------------------------------------------------
# kind detection and file loading
# ---------------------------------------------------------------------------

_KIND_KEYS = (
    ("extension", {"e", "i", "p", "g", "h"}),
    ("cocycle", {"g", "h", "chi", "psi", "phi"}),
    ("representation", {"base", "hdim", "action", "S"}),
    ("algebra", {"field", "dim", "bracket", "op"}),
    ("pair", {"beta", "alpha"}),
)


def detect_kind(data) -> str:
    if isinstance(data, dict):
        keys = set(data)
        for kind, required in _KIND_KEYS:
            if required <= keys:
                return kind
    raise ParseError("unrecognized file shape")


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", source=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", source=str(path)) from None


def load_algebra(path, deep: bool = True) -> RBLieAlgebra:
    data = load_json(path)
    a = parse_algebra(data, "algebra", str(path))
    if deep:
        _deep_validate("algebra", a, str(path))
    return a


def load_representation(path, deep: bool = True) -> Representation:
    data = load_json(path)
    r = parse_representation(data, "representation", str(path), base_dir=Path(path).parent)
    if deep:
        _deep_validate("representation", r, str(path))
    return r


def load_cocycle(path, deep: bool = True) -> NonAbelianCocycle:
    data = load_json(path)
    c = parse_cocycle(data, "cocycle", str(path))
    if deep:
        _deep_validate("cocycle", c, str(path))
    return c


def load_extension(path, deep: bool = True) -> Extension:
    data = load_json(path)
    x = parse_extension(data, "extension", str(path))
    if deep:
        _deep_validate("extension", x, str(path))
    return x


def _deep_validate(kind: str, obj, source: str) -> None:
    """Structural-axiom validation at load time for commands that require valid inputs."""
    if kind == "algebra":
        if not check_jacobi(obj.lie):
            raise InvalidStructure(f"{source}: structure constants violate the Jacobi identity")
        if not check_rota_baxter(obj.lie, obj.op):
            raise InvalidStructure(f"{source}: operator fails the Rota-Baxter identity")
    elif kind == "representation":
        _deep_validate("algebra", obj.base, source)
        if not check_representation(obj):
            raise InvalidStructure(f"{source}: action fails the representation axioms")
    elif kind == "cocycle":
        _deep_validate("algebra", obj.g, source)
        _deep_validate("algebra", obj.h, source)
        report = validate_cocycle(obj)
        if not report.ok:
            raise InvalidStructure(f"{source}: {report.first_failure}")
    elif kind == "extension":
        report = validate_extension(obj)
        if not report.ok:
            raise InvalidStructure(f"{source}: {report.first_failure}")


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------

def report_to_data(report: CheckReport, field: Field) -> dict:
    listings = {}
    for label, items in report.listings:
        rendered = []
        for item in items:
            if isinstance(item, AutomorphismPair):
                rendered.append(pair_to_data(item))
            elif isinstance(item, Matrix):
                rendered.append(matrix_to_data(item))
            else:
                rendered.append(item)
        listings[label] = rendered
    return {
        "name": report.name,
        "ok": report.ok,
        "orders": {label: value for label, value in report.orders},
        "assertions": [
            {"name": label, "passed": passed, "detail": detail}
            for label, passed, detail in report.assertions
        ],
        "listings": listings,
    }
