"""Structured reports for the command-line front end.

``build_report(command, text)`` parses BGGX text, runs the matching module
operations and returns a plain dict; ``render`` turns it into either the
canonical JSON (``machine``) or ``path: value`` lines (``text``) carrying the
same data.  Reports contain no timestamps or paths, so identical input gives
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional, Sequence

from .bgg_pattern import build_output_complex, corollary_check, detect_pattern, merged_les
from .bgg_reduction import bgg_reduce, identities, reduced_complex, seam_map, verify_quasi_iso
from .bggx import BGGXDocument, dumps_canonical, parse_bggx, validity_errors
from .complexes import (
    CochainComplex,
    betti_mod_p,
    cohomology,
    induced_on_cohomology,
)
from .cones import cone_ses, connecting_morphism, flatness, long_exact_sequence, mapping_cone
from .exactfield import Matrix
from .generators import TwoRowDiagram
from .spectral import analyze, knight_move_phi

COMMANDS = ("validate", "cohomology", "cone", "les", "bgg-pattern", "bgg-reduce", "spectral")


class ReportError(ValueError):
    """The input does not fit the command (for example a complex given to ``cone``)."""


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _table(values: dict[int, int], degree_range: Optional[tuple[int, int]]) -> dict[str, int]:
    lo, hi = degree_range if degree_range else (min(values, default=0), max(values, default=-1))
    return {str(i): v for i, v in sorted(values.items()) if lo <= i <= hi}


def _betti(c: CochainComplex, rng) -> dict[str, int]:
    h = cohomology(c)
    return _table({i: h.betti(i) for i in c.degrees}, rng)


def _matrix(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def _need_diagram(doc: BGGXDocument, command: str) -> TwoRowDiagram:
    if doc.kind != "diagram":
        raise ReportError(f"{command} needs a diagram, got a {doc.kind}")
    return doc.body


def _need_valid(doc: BGGXDocument, command: str) -> None:
    errors = validity_errors(doc)
    if errors:
        raise ReportError(f"{command} needs a valid input: {'; '.join(errors)}")


# commands -----------------------------------------------------------------------

def _validate(doc, rng):
    errors = validity_errors(doc)
    return {"kind": doc.kind, "failures": errors, "valid": not errors}, not errors


def _cohomology(doc, rng):
    _need_valid(doc, "cohomology")
    if doc.kind == "complex":
        c = doc.body
        h = cohomology(c).betti_numbers()
        shadow = betti_mod_p(c)
        chi = sum((-1) ** i * h[k] for k, i in enumerate(c.degrees))
        res = {
            "betti": _betti(c, rng),
            "euler_characteristic": c.euler_characteristic(),
            "euler_check": chi == c.euler_characteristic(),
            "mod_p_agrees": shadow == h,
        }
        return res, res["euler_check"] and res["mod_p_agrees"]
    d = doc.body
    hA, hB = cohomology(d.A), cohomology(d.B)
    St = induced_on_cohomology(d.S, hA, hB)
    res = {
        "betti_A": _betti(d.A, rng),
        "betti_B": _betti(d.B, rng),
        "induced_S_ranks": _table({i: St.rank(i) for i in St.maps}, rng),
        "induced_S_zero": St.is_zero(),
    }
    return res, True


def _cone(doc, rng):
    d = _need_diagram(doc, "cone")
    for c in (d.A, d.B):
        _need_valid(BGGXDocument("complex", c), "cone")
    rep = flatness(d)
    res = {
        "flat": rep.flat,
        "commuting": rep.commuting,
        "flatness_equivalence": rep.flat == rep.commuting,
        "defect_degrees": [i for i, m in sorted(rep.residual.items()) if not m.is_zero()],
    }
    if not rep.commuting:
        return res, False
    Z = mapping_cone(d).Z
    hA, hB = cohomology(d.A), cohomology(d.B)
    St = induced_on_cohomology(d.S, hA, hB)
    res["betti_cone"] = _betti(Z, rng)
    res["betti_A_plus_B"] = _table({i: hA.betti(i) + hB.betti(i) for i in Z.degrees}, rng)
    res["induced_S_zero"] = St.is_zero()
    if St.is_zero():
        res["split"] = res["betti_cone"] == res["betti_A_plus_B"]
    return res, rep.flat == rep.commuting and res.get("split", True)


def _les(doc, rng):
    d = _need_diagram(doc, "les")
    _need_valid(doc, "les")
    ses = cone_ses(mapping_cone(d))
    bad = ses.verify()
    les = long_exact_sequence(ses)
    hA, hB = cohomology(d.A), cohomology(d.B)
    delta = connecting_morphism(ses, hB, cohomology(ses.right))
    induced = induced_on_cohomology(d.S, hA, hB)
    res = {
        "short_exact": not bad,
        "sequence": les.as_dict(),
        "connecting_equals_induced_S": delta == induced,
        "connecting": {str(i): _matrix(m) for i, m in sorted(delta.maps.items()) if m.rows and m.cols},
    }
    return res, not bad and les.exact and delta == induced


def _pattern(doc, rng):
    d = _need_diagram(doc, "bgg-pattern")
    _need_valid(doc, "bgg-pattern")
    cert = detect_pattern(d)
    res = {"certificate": cert.as_dict()}
    if not cert.accepted:
        return res, False
    out = build_output_complex(d, cert)
    les = merged_les(d, cert, out)
    verdicts = corollary_check(d, cert, out, les)
    res["output"] = {
        "lo": out.C.lo,
        "dims": list(out.C.dims),
        "tags": {str(i): t for i, t in sorted(out.tags.items())},
        "seam_operator": _matrix(out.D),
        "betti": _betti(out.C, rng),
    }
    res["merged_sequence"] = les.report.as_dict()
    res["short_exact_pieces"] = {
        str(v.degree): {"betti_C": v.betti_C, "coker": v.coker_dim, "ker": v.ker_dim, "ok": v.ok}
        for v in verdicts
    }
    ok = les.report.exact and all(v.ok for v in verdicts)
    return res, ok


def _reduce(doc, rng):
    d = _need_diagram(doc, "bgg-reduce")
    _need_valid(doc, "bgg-reduce")
    r = bgg_reduce(d)
    ids = identities(r)
    q = verify_quasi_iso(r)
    red = reduced_complex(r)
    Phi = seam_map(r)
    res = {
        "identities": ids,
        "pseudoinverses": {str(i): _matrix(t) for i, t in sorted(r.T.items()) if t.rows and t.cols},
        "reduced": {"lo": red.lo, "dims": list(red.dims), "betti": _betti(red, rng)},
        "betti_cone": _betti(r.cone.Z, rng),
        "seam_block": {str(i): _matrix(m) for i, m in sorted(Phi.comps.items())},
        "quasi_isomorphism": q.as_dict(),
    }
    return res, all(ids.values()) and q.ok


def _spectral(doc, rng):
    d = _need_diagram(doc, "spectral")
    _need_valid(doc, "spectral")
    a = analyze(d)
    shifted = knight_move_phi(d, lift="shifted")
    lift_free = all(shifted.matrix(i) == a.phi.matrix(i) for i in a.vertical.degrees)
    res = {
        "vertical_first": a.vertical.as_dict(),
        "horizontal_first": a.horizontal.as_dict(),
        "knight_moves": {str(i): _matrix(m) for i, m in sorted(a.phi.maps.items())},
        "knight_moves_lift_independent": lift_free,
        "betti_Y_phi": _betti(a.Y, rng),
        "convergence": a.certificate.as_dict(),
    }
    return res, a.certificate.ok and lift_free


_HANDLERS = {
    "validate": _validate,
    "cohomology": _cohomology,
    "cone": _cone,
    "les": _les,
    "bgg-pattern": _pattern,
    "bgg-reduce": _reduce,
    "spectral": _spectral,
}


def build_report(command: str, text: str, argv: Sequence[str] = (),
                 degree_range: Optional[tuple[int, int]] = None) -> dict:
    """Run ``command`` on BGGX ``text``.  Raises BGGXError / ReportError on bad input."""
    if command not in _HANDLERS:
        raise ReportError(f"unknown command {command!r}")
    doc = parse_bggx(text)
    results, ok = _HANDLERS[command](doc, degree_range)
    return {
        "command": " ".join(["bggkit", *argv]),
        "input": {"sha256": digest(text), "kind": doc.kind},
        "results": results,
        "status": "ok" if ok else "failed",
    }


def _flatten(x, prefix: str, out: list[str]) -> None:
    if isinstance(x, dict) and x:
        for k, v in x.items():
            _flatten(v, f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(x, list) and x and any(isinstance(v, (dict, list)) for v in x):
        for k, v in enumerate(x):
            _flatten(v, f"{prefix}[{k}]", out)
    else:
        out.append(f"{prefix}: {json.dumps(x, ensure_ascii=False)}")


def render(report: dict, fmt: str = "text") -> str:
    if fmt == "machine":
        return dumps_canonical(report)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines: list[str] = []
    _flatten(report, "", lines)
    return "\n".join(lines) + "\n"
