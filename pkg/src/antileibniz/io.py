"""JSON workspace documents: parsing, validation and canonical serialization.

A document names a field and declares algebras, linear maps and
representations by string identifier.  Every scalar is a string (``"4"``,
``"-3/7"``); JSON numbers are accepted only as integers, never as floats.
Serialization is canonical, so serializing a parsed document reproduces
the same bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np

from .core import (
    ACTION_KINDS,
    ALGEBRA_CLASSES,
    REP_KINDS,
    AlgebraBundle,
    DimensionError,
    LinearMap,
    RepBundle,
    StructureTensor,
    default_basis,
)
from .fields import FieldError, FieldSpec


class WorkspaceError(ValueError):
    """Malformed workspace document; the message names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class Workspace:
    field: FieldSpec
    spaces: dict[str, int] = dc_field(default_factory=dict)
    algebras: dict[str, AlgebraBundle] = dc_field(default_factory=dict)
    maps: dict[str, LinearMap] = dc_field(default_factory=dict)
    representations: dict[str, RepBundle] = dc_field(default_factory=dict)

    def ids(self) -> set[str]:
        return set(self.spaces) | set(self.algebras) | set(self.maps) | set(self.representations)

    def dim_of(self, ident: str) -> int:
        """Dimension of the space an identifier denotes (a rep denotes its carrier)."""
        if ident in self.spaces:
            return self.spaces[ident]
        if ident in self.algebras:
            return self.algebras[ident].dim
        if ident in self.representations:
            return self.representations[ident].carrier_dim
        raise KeyError(ident)

    def algebra(self, ident: str) -> AlgebraBundle:
        try:
            return self.algebras[ident]
        except KeyError:
            raise WorkspaceError("", f"no algebra named {ident!r}") from None

    def map(self, ident: str) -> LinearMap:
        try:
            return self.maps[ident]
        except KeyError:
            raise WorkspaceError("", f"no map named {ident!r}") from None

    def representation(self, ident: str) -> RepBundle:
        try:
            return self.representations[ident]
        except KeyError:
            raise WorkspaceError("", f"no representation named {ident!r}") from None


# -- parsing ---------------------------------------------------------------------


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise WorkspaceError("", f"duplicate key {k!r}")
        out[k] = v
    return out


def _reject_float(text):
    raise WorkspaceError("", f"float literal {text} is not an exact scalar")


def load_json(text: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"line {e.lineno}", e.msg) from None


def _expect(obj, kind, where: str):
    if not isinstance(obj, kind):
        name = {dict: "an object", list: "a list", str: "a string", int: "an integer"}.get(kind, str(kind))
        raise WorkspaceError(where, f"expected {name}")
    return obj


def _keys(obj: Mapping, where: str, required: set[str], optional: set[str] = frozenset()):
    missing = required - set(obj)
    if missing:
        raise WorkspaceError(where, f"missing field {sorted(missing)[0]!r}")
    extra = set(obj) - required - optional
    if extra:
        raise WorkspaceError(where, f"unknown field {sorted(extra)[0]!r}")


def _scalar(f: FieldSpec, value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise WorkspaceError(where, f"scalar must be a string, got {value!r}")
    try:
        return f(value)
    except FieldError as e:
        raise WorkspaceError(where, str(e)) from None


def parse_field(obj, where: str = "field") -> FieldSpec:
    if obj == "rational":
        return FieldSpec()
    if isinstance(obj, dict) and set(obj) == {"prime"}:
        p = obj["prime"]
        if isinstance(p, bool) or not isinstance(p, int):
            raise WorkspaceError(where, f"modulus must be an integer, got {p!r}")
        try:
            return FieldSpec(p)
        except FieldError as e:
            raise WorkspaceError(where, str(e)) from None
    raise WorkspaceError(where, f"unknown field kind {obj!r}")


def _basis(obj, dim: int, where: str, prefix: str = "e") -> tuple[str, ...]:
    if obj is None:
        return default_basis(dim, prefix)
    labels = _expect(obj, list, where)
    if len(labels) != dim or not all(isinstance(x, str) for x in labels):
        raise WorkspaceError(where, f"expected {dim} string labels")
    if len(set(labels)) != dim:
        raise WorkspaceError(where, "duplicate basis label")
    return tuple(labels)


def _dim(obj, where: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int) or obj < 1:
        raise WorkspaceError(where, f"dimension must be a positive integer, got {obj!r}")
    return obj


def parse_product(f: FieldSpec, entries, basis: tuple[str, ...], where: str) -> StructureTensor:
    n = len(basis)
    index = {b: i for i, b in enumerate(basis)}
    c = f.zeros((n, n, n))
    seen = set()
    for k, entry in enumerate(_expect(entries, list, where)):
        w = f"{where}[{k}]"
        _expect(entry, dict, w)
        _keys(entry, w, {"i", "j", "out"})
        try:
            i, j = index[entry["i"]], index[entry["j"]]
        except (KeyError, TypeError):
            raise WorkspaceError(w, f"unknown basis label in ({entry['i']!r}, {entry['j']!r})") from None
        if (i, j) in seen:
            raise WorkspaceError(w, f"pair ({entry['i']}, {entry['j']}) given twice")
        seen.add((i, j))
        for label, v in _expect(entry["out"], dict, f"{w}.out").items():
            if label not in index:
                raise WorkspaceError(f"{w}.out", f"unknown basis label {label!r}")
            c[i, j, index[label]] = _scalar(f, v, f"{w}.out.{label}")
    return StructureTensor(f, c)


def parse_matrix(f: FieldSpec, rows, shape: tuple[int, int], where: str) -> np.ndarray:
    _expect(rows, list, where)
    if len(rows) != shape[0]:
        raise WorkspaceError(where, f"expected {shape[0]} rows, got {len(rows)}")
    out = f.zeros(shape)
    for r, row in enumerate(rows):
        _expect(row, list, f"{where}[{r}]")
        if len(row) != shape[1]:
            raise WorkspaceError(f"{where}[{r}]", f"expected {shape[1]} entries, got {len(row)}")
        for c, v in enumerate(row):
            out[r, c] = _scalar(f, v, f"{where}[{r}][{c}]")
    return out


def _parse_algebra(f: FieldSpec, ident: str, obj) -> AlgebraBundle:
    where = f"algebras.{ident}"
    _expect(obj, dict, where)
    _keys(obj, where, {"dim", "products"}, {"basis", "class"})
    dim = _dim(obj["dim"], f"{where}.dim")
    basis = _basis(obj.get("basis"), dim, f"{where}.basis")
    cls = obj.get("class", "raw")
    if cls not in ALGEBRA_CLASSES:
        raise WorkspaceError(f"{where}.class", f"unknown algebra class {cls!r}")
    names = ALGEBRA_CLASSES[cls] or ("mul",)
    given = _expect(obj["products"], dict, f"{where}.products")
    unknown = set(given) - set(names)
    if unknown:
        raise WorkspaceError(f"{where}.products", f"{cls} has no product {sorted(unknown)[0]!r}")
    # an omitted product (or an empty list) is the zero product
    products = {name: parse_product(f, given.get(name, []), basis, f"{where}.products.{name}")
                for name in names}
    return AlgebraBundle(f, dim, basis, products, cls)


def _parse_rep(f: FieldSpec, ident: str, obj, algebras: Mapping[str, AlgebraBundle]) -> RepBundle:
    where = f"representations.{ident}"
    _expect(obj, dict, where)
    _keys(obj, where, {"algebra", "kind", "maps"}, {"carrier_dim", "carrier_basis", "carrier_product"})
    alg_id = obj["algebra"]
    if alg_id not in algebras:
        raise WorkspaceError(f"{where}.algebra", f"dangling reference {alg_id!r}")
    alg = algebras[alg_id]
    kind = obj["kind"]
    if kind not in REP_KINDS:
        raise WorkspaceError(f"{where}.kind", f"unknown representation kind {kind!r}")
    if obj["maps"] == "adjoint":
        if "carrier_product" in obj or "carrier_dim" in obj and obj["carrier_dim"] != alg.dim:
            raise WorkspaceError(where, "an adjoint representation takes its carrier from the algebra")
        from .functors import adjoint
        return adjoint(alg, kind)
    m = _dim(obj.get("carrier_dim"), f"{where}.carrier_dim")
    cbasis = _basis(obj.get("carrier_basis"), m, f"{where}.carrier_basis", "v")
    given = _expect(obj["maps"], dict, f"{where}.maps")
    if set(given) != set(REP_KINDS[kind]):
        raise WorkspaceError(f"{where}.maps", f"{kind} expects maps {list(REP_KINDS[kind])}")
    maps = {}
    for name in REP_KINDS[kind]:
        mats = _expect(given[name], list, f"{where}.maps.{name}")
        if len(mats) != alg.dim:
            raise WorkspaceError(f"{where}.maps.{name}", f"expected {alg.dim} matrices, one per basis element")
        maps[name] = np.array([parse_matrix(f, mat, (m, m), f"{where}.maps.{name}[{i}]")
                               for i, mat in enumerate(mats)], dtype=object).reshape(alg.dim, m, m)
    carrier = None
    if "carrier_product" in obj:
        carrier = parse_product(f, obj["carrier_product"], cbasis, f"{where}.carrier_product")
    elif kind in ACTION_KINDS:
        raise WorkspaceError(where, f"{kind} needs a carrier_product")
    try:
        return RepBundle(alg, m, kind, maps, carrier, cbasis)
    except (ValueError, DimensionError) as e:
        raise WorkspaceError(where, str(e)) from None


def parse_workspace(source: Union[str, Path, Mapping]) -> Workspace:
    """Parse and validate a document given as a path, JSON text or decoded object."""
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    obj = load_json(source) if isinstance(source, str) else source
    _expect(obj, dict, "")
    _keys(obj, "", {"field"}, {"spaces", "algebras", "maps", "representations"})
    f = parse_field(obj["field"])
    ws = Workspace(f)
    seen: set[str] = set()

    def claim(ident: str, where: str):
        if ident in seen:
            raise WorkspaceError(where, f"duplicate identifier {ident!r}")
        seen.add(ident)

    for ident, dim in _expect(obj.get("spaces", {}), dict, "spaces").items():
        claim(ident, f"spaces.{ident}")
        if isinstance(dim, dict):
            _keys(dim, f"spaces.{ident}", {"dim"})
            dim = dim["dim"]
        ws.spaces[ident] = _dim(dim, f"spaces.{ident}")
    for ident, a in _expect(obj.get("algebras", {}), dict, "algebras").items():
        claim(ident, f"algebras.{ident}")
        ws.algebras[ident] = _parse_algebra(f, ident, a)
    for ident, r in _expect(obj.get("representations", {}), dict, "representations").items():
        claim(ident, f"representations.{ident}")
        ws.representations[ident] = _parse_rep(f, ident, r, ws.algebras)
    for ident, mp in _expect(obj.get("maps", {}), dict, "maps").items():
        where = f"maps.{ident}"
        claim(ident, where)
        _expect(mp, dict, where)
        _keys(mp, where, {"source", "target", "matrix"})
        ends = []
        for end in ("source", "target"):
            ref = mp[end]
            try:
                ends.append(ws.dim_of(ref))
            except (KeyError, TypeError):
                raise WorkspaceError(f"{where}.{end}", f"dangling reference {ref!r}") from None
        matrix = parse_matrix(f, mp["matrix"], (ends[1], ends[0]), f"{where}.matrix")
        ws.maps[ident] = LinearMap(f, matrix, source=mp["source"], target=mp["target"])
    return ws


# -- serialization ------------------------------------------------------------------


def format_field(f: FieldSpec):
    return "rational" if f.p is None else {"prime": f.p}


def product_entries(t: StructureTensor, basis: tuple[str, ...]) -> list[dict]:
    f, n = t.field, t.dim
    out = []
    for i in range(n):
        for j in range(n):
            coeffs = {basis[k]: f.format(t.coeffs[i, j, k]) for k in range(n) if t.coeffs[i, j, k] != 0}
            if coeffs:
                out.append({"i": basis[i], "j": basis[j], "out": coeffs})
    return out


def format_matrix(f: FieldSpec, m: np.ndarray) -> list[list[str]]:
    return [[f.format(v) for v in row] for row in m]


def algebra_to_obj(a: AlgebraBundle) -> dict:
    return {
        "dim": a.dim,
        "basis": list(a.basis),
        "class": a.claimed_class,
        # the class fixes the product order, whatever order they were built in
        "products": {name: product_entries(a.products[name], a.basis) for name in _product_order(a)},
    }


def _product_order(a: AlgebraBundle) -> list[str]:
    names = ALGEBRA_CLASSES.get(a.claimed_class) or ()
    return [n for n in names if n in a.products] + sorted(set(a.products) - set(names))


def rep_to_obj(r: RepBundle, algebra_id: str) -> dict:
    f = r.field
    obj = {
        "algebra": algebra_id,
        "carrier_dim": r.carrier_dim,
        "carrier_basis": list(r.carrier_basis),
        "kind": r.kind,
        "maps": {name: [format_matrix(f, P) for P in r[name]] for name in REP_KINDS[r.kind]},
    }
    if r.carrier_product is not None:
        obj["carrier_product"] = product_entries(r.carrier_product, r.carrier_basis)
    return obj


def map_to_obj(m: LinearMap) -> dict:
    return {"source": m.source, "target": m.target, "matrix": format_matrix(m.field, m.matrix)}


def workspace_to_obj(ws: Workspace) -> dict:
    obj: dict[str, Any] = {"field": format_field(ws.field)}
    if ws.spaces:
        obj["spaces"] = {k: {"dim": v} for k, v in ws.spaces.items()}
    if ws.algebras:
        obj["algebras"] = {k: algebra_to_obj(a) for k, a in ws.algebras.items()}
    if ws.representations:
        ids = {id(a): k for k, a in ws.algebras.items()}
        reps = {}
        for k, r in ws.representations.items():
            alg_id = ids.get(id(r.algebra)) or next(
                (name for name, a in ws.algebras.items() if a == r.algebra), None)
            if alg_id is None:
                raise WorkspaceError(f"representations.{k}", "its algebra is not in the workspace")
            reps[k] = rep_to_obj(r, alg_id)
        obj["representations"] = reps
    if ws.maps:
        obj["maps"] = {k: map_to_obj(m) for k, m in ws.maps.items()}
    return obj


def dumps(obj) -> str:
    """Canonical JSON text: fixed indentation, UTF-8, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def serialize_workspace(ws: Workspace) -> str:
    return dumps(workspace_to_obj(ws))


def bundle_workspace(*, algebras: Mapping[str, AlgebraBundle] = (), reps: Mapping[str, RepBundle] = (),
                     maps: Mapping[str, LinearMap] = ()) -> Workspace:
    """A workspace holding the given objects plus any algebra a representation needs."""
    algebras, reps, maps = dict(algebras), dict(reps), dict(maps)
    fields = {x.field for x in (*algebras.values(), *reps.values(), *maps.values())}
    if len(fields) != 1:
        raise ValueError("a workspace holds objects over exactly one field")
    for k, r in reps.items():
        if not any(a == r.algebra for a in algebras.values()):
            name = f"{k}_algebra"
            algebras[name] = r.algebra
    return Workspace(fields.pop(), {}, algebras, maps, reps)
