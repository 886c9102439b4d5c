"""BGGX: a versioned JSON interchange format for complexes and two-row diagrams.

A complex document::

    {
      "format": "BGGX",
      "version": 1,
      "kind": "complex",
      "name": "CIRCLE3",
      "lo": 0,
      "dims": [3, 3],
      "diffs": [
        [["-1", "1", "0"], ...]          # d^lo, d^(lo+1), ...; one row per line
      ],
      "meta": {}
    }

A diagram document carries ``"A"`` and ``"B"`` complex bodies (``lo``,
``dims``, ``diffs``, ``name``) and ``"S": {"shift": 1, "comps": {"i": matrix}}``
listing the nonzero components ``S^i: A^i -> B^(i+1)``.  Rationals are the
strings ``"p"`` or ``"p/q"``.  ``emit_bggx`` writes a canonical layout, so
``emit(parse(emit(x))) == emit(x)`` byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Union

from .complexes import ChainMap, CochainComplex, ComplexError, validate_complex
from .exactfield import Matrix, parse_rational
from .generators import TwoRowDiagram

FORMAT = "BGGX"
VERSION = 1


class BGGXError(ValueError):
    """Malformed BGGX text; the message names the line or field."""


@dataclass(frozen=True, eq=False)
class BGGXDocument:
    kind: str
    body: Union[CochainComplex, TwoRowDiagram]
    meta: dict = field(default_factory=dict)

    @property
    def complex(self) -> CochainComplex:
        if self.kind != "complex":
            raise BGGXError(f"document holds a {self.kind}, not a complex")
        return self.body

    @property
    def diagram(self) -> TwoRowDiagram:
        if self.kind != "diagram":
            raise BGGXError(f"document holds a {self.kind}, not a diagram")
        return self.body


def document(obj: Union[CochainComplex, TwoRowDiagram], meta: dict | None = None) -> BGGXDocument:
    kind = "diagram" if isinstance(obj, TwoRowDiagram) else "complex"
    return BGGXDocument(kind, obj, dict(meta or {}))


# emitting ---------------------------------------------------------------------

def _matrix_json(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def _complex_json(c: CochainComplex) -> dict:
    return {
        "name": c.name,
        "lo": c.lo,
        "dims": list(c.dims),
        "diffs": [_matrix_json(d) for d in c.diffs],
    }


def to_json(doc: BGGXDocument) -> dict:
    out: dict[str, Any] = {"format": FORMAT, "version": VERSION, "kind": doc.kind}
    if doc.kind == "complex":
        out.update(_complex_json(doc.body))
    else:
        d = doc.body
        out["A"] = _complex_json(d.A)
        out["B"] = _complex_json(d.B)
        out["S"] = {
            "shift": d.S.shift,
            "comps": {str(i): _matrix_json(d.S.comps[i]) for i in sorted(d.S.comps)},
        }
    out["meta"] = doc.meta
    return out


def _is_row(x) -> bool:
    return isinstance(x, list) and all(not isinstance(v, (list, dict)) for v in x)


def _dump(x, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if _is_row(x):
            return "[" + ", ".join(json.dumps(v) for v in x) + "]"
        items = [inner + _dump(v, indent + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(x)


def dumps_canonical(x) -> str:
    """JSON with flat lists on one line and a trailing newline."""
    return _dump(x, 0) + "\n"


def emit_bggx(doc: BGGXDocument | CochainComplex | TwoRowDiagram) -> str:
    if not isinstance(doc, BGGXDocument):
        doc = document(doc)
    return dumps_canonical(to_json(doc))


# parsing ----------------------------------------------------------------------

def _need(obj: dict, key: str, kind, path: str):
    if not isinstance(obj, dict):
        raise BGGXError(f"{path}: expected an object")
    if key not in obj:
        raise BGGXError(f"{path}.{key}: missing field")
    v = obj[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise BGGXError(f"{path}.{key}: expected an integer, got {v!r}")
    if kind is not int and not isinstance(v, kind):
        raise BGGXError(f"{path}.{key}: expected {kind.__name__}, got {type(v).__name__}")
    return v


def _parse_matrix(raw, rows: int, cols: int, path: str) -> Matrix:
    if not isinstance(raw, list):
        raise BGGXError(f"{path}: expected a list of rows")
    if len(raw) != rows:
        raise BGGXError(f"{path}: {len(raw)} rows, expected {rows}")
    entries = []
    for r, row in enumerate(raw):
        if not isinstance(row, list):
            raise BGGXError(f"{path} row {r}: expected a list")
        if len(row) != cols:
            raise BGGXError(f"{path} row {r}: {len(row)} entries, expected {cols}")
        parsed = []
        for c, v in enumerate(row):
            if not isinstance(v, str):
                raise BGGXError(f"{path}[{r}][{c}]: rationals are strings, got {v!r}")
            try:
                parsed.append(parse_rational(v))
            except (ValueError, ZeroDivisionError) as exc:
                raise BGGXError(f"{path}[{r}][{c}]: {exc}") from None
        entries.append(parsed)
    return Matrix(entries, shape=(rows, cols))


def _parse_complex(obj: dict, path: str) -> CochainComplex:
    lo = _need(obj, "lo", int, path)
    dims = _need(obj, "dims", list, path)
    for k, n in enumerate(dims):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise BGGXError(f"{path}.dims[{k}]: expected a nonnegative integer, got {n!r}")
    diffs = _need(obj, "diffs", list, path)
    expected = max(len(dims) - 1, 0)
    if len(diffs) != expected:
        raise BGGXError(f"{path}.diffs: {len(diffs)} differentials for {len(dims)} degrees, expected {expected}")
    mats = [
        _parse_matrix(raw, dims[k + 1], dims[k], f"{path}.diffs[{k}] (degree {lo + k})")
        for k, raw in enumerate(diffs)
    ]
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise BGGXError(f"{path}.name: expected a string")
    try:
        return CochainComplex(lo, tuple(dims), tuple(mats), name)
    except ComplexError as exc:
        raise BGGXError(f"{path}: {exc}") from None


def _parse_map(obj: dict, A: CochainComplex, B: CochainComplex, path: str) -> ChainMap:
    shift = _need(obj, "shift", int, path)
    if shift != 1:
        raise BGGXError(f"{path}.shift: diagrams need shift 1, got {shift}")
    comps_raw = _need(obj, "comps", dict, path)
    comps = {}
    for key, raw in comps_raw.items():
        try:
            i = int(key)
        except ValueError:
            raise BGGXError(f"{path}.comps[{key!r}]: degree must be an integer") from None
        comps[i] = _parse_matrix(raw, B.dim(i + 1), A.dim(i), f"{path}.comps[{key}] (degree {i})")
    try:
        return ChainMap(A, B, shift, comps)
    except ComplexError as exc:
        raise BGGXError(f"{path}: {exc}") from None


def from_json(obj) -> BGGXDocument:
    if not isinstance(obj, dict):
        raise BGGXError("top level: expected an object")
    if obj.get("format") != FORMAT:
        raise BGGXError(f"format: expected {FORMAT!r}, got {obj.get('format')!r}")
    version = _need(obj, "version", int, "top level")
    if version != VERSION:
        raise BGGXError(f"version: unsupported version {version}")
    kind = _need(obj, "kind", str, "top level")
    meta = obj.get("meta", {})
    if not isinstance(meta, dict):
        raise BGGXError("meta: expected an object")
    if kind == "complex":
        return BGGXDocument(kind, _parse_complex(obj, "complex"), meta)
    if kind == "diagram":
        A = _parse_complex(_need(obj, "A", dict, "diagram"), "A")
        B = _parse_complex(_need(obj, "B", dict, "diagram"), "B")
        S = _parse_map(_need(obj, "S", dict, "diagram"), A, B, "S")
        return BGGXDocument(kind, TwoRowDiagram(A, B, S), meta)
    raise BGGXError(f"kind: unknown kind {kind!r} (expected 'complex' or 'diagram')")


def parse_bggx(text: str) -> BGGXDocument:
    """Parse BGGX text.  Structure is checked; mathematical validity is not."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BGGXError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(obj)


def validity_errors(doc: BGGXDocument) -> list[str]:
    """Failures of ``d∘d = 0`` and of the commuting square, by degree."""
    out = []
    if doc.kind == "complex":
        out += [f"d^{i + 1} d^{i} != 0" for i in validate_complex(doc.body).degrees()]
    else:
        d = doc.body
        for label, c in (("A", d.A), ("B", d.B)):
            out += [f"{label}: d^{i + 1} d^{i} != 0" for i in validate_complex(c).degrees()]
        out += [f"S: d_B S^{i} != S^{i + 1} d_A" for i in d.S.degrees() if not d.S.residual(i).is_zero()]
    return out
