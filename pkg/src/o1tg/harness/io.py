"""Instance files: "rot v1" text with a provenance sidecar, and "o1t v1" JSON."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from ..embedded_map import build_from_rotation, canonical_rotation, dumps_rot, parse_rot_lines
from ..errors import NotQuadrangulation, O1TError, ParseError
from ..o1t import OptimalOneEmbedding, build_o1t
from ..quad_torus import Quadrangulation

O1T_FORMAT = "o1t v1"
ROT_SUFFIX = ".rot"
O1T_SUFFIX = ".o1t.json"
PROV_SUFFIX = ".prov.json"

PathLike = Union[str, Path]


def canonical_face(face: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Rotate a face walk so its smallest vertex comes first, keeping direction."""
    k = face.index(min(face))
    return tuple(face[k:]) + tuple(face[:k])


def dumps_o1t(g: OptimalOneEmbedding) -> str:
    rot = canonical_rotation(g.quad.map)
    doc = {
        "format": O1T_FORMAT,
        "n": len(rot),
        "rotation": [list(rot[v]) for v in sorted(rot)],
        "crossing_pairs": sorted(list(canonical_face(f)) for f in g.crossing_pairs),
        "provenance": g.quad.provenance,
    }
    return json.dumps(doc, indent=1) + "\n"


def _quad_from_rotation(rot: dict[int, tuple[int, ...]], provenance: dict[str, Any]) -> Quadrangulation:
    try:
        m = build_from_rotation(rot)
        return Quadrangulation(m, provenance)
    except (O1TError, NotQuadrangulation) as exc:
        raise ParseError(f"not a valid toroidal quadrangulation: {exc}") from exc


def loads_o1t(text: str) -> OptimalOneEmbedding:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != O1T_FORMAT:
        raise ParseError(f"expected an object with format {O1T_FORMAT!r}")
    try:
        rows = doc["rotation"]
        rot = {v: tuple(int(x) for x in row) for v, row in enumerate(rows)}
        pairs = {canonical_face([int(x) for x in f]) for f in doc["crossing_pairs"]}
        n = int(doc.get("n", len(rows)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed o1t document: {exc}") from None
    if n != len(rot):
        raise ParseError(f"n = {n} but {len(rot)} rotation rows")
    qd = _quad_from_rotation(rot, doc.get("provenance") or {})
    g = _build(qd)
    if {canonical_face(f) for f in g.crossing_pairs} != pairs:
        raise ParseError("crossing_pairs do not match the faces of the rotation")
    return g


def _build(qd: Quadrangulation) -> OptimalOneEmbedding:
    try:
        return build_o1t(qd)
    except O1TError as exc:
        raise ParseError(f"quadrangulation does not give a simple O1TG: {exc}") from exc


def dumps_quad(qd: Quadrangulation) -> str:
    return dumps_rot(qd.map)


def sidecar_path(path: PathLike) -> Path:
    p = Path(path)
    name = p.name[: -len(ROT_SUFFIX)] if p.name.endswith(ROT_SUFFIX) else p.name
    return p.with_name(name + PROV_SUFFIX)


def write_instance(path: PathLike, g: OptimalOneEmbedding, fmt: str = "rot") -> list[Path]:
    """Write ``g`` as rot v1 (plus provenance sidecar) or o1t v1; returns paths written."""
    p = Path(path)
    if fmt == "o1t":
        p.write_text(dumps_o1t(g))
        return [p]
    if fmt != "rot":
        raise ValueError(f"unknown format {fmt!r}")
    p.write_text(dumps_quad(g.quad))
    side = sidecar_path(p)
    side.write_text(json.dumps(g.quad.provenance, indent=1) + "\n")
    return [p, side]


def loads_instance(text: str, provenance: Optional[dict[str, Any]] = None) -> OptimalOneEmbedding:
    """Parse either format, detected from the first significant character."""
    if text.lstrip().startswith("{"):
        return loads_o1t(text)
    rot = parse_rot_lines(text.splitlines())
    return _build(_quad_from_rotation(rot, provenance or {}))


def read_instance(path: PathLike) -> OptimalOneEmbedding:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from None
    prov = None
    side = sidecar_path(p)
    if not text.lstrip().startswith("{") and side.exists():
        try:
            prov = json.loads(side.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad provenance sidecar {side}: {exc}") from None
    return loads_instance(text, prov)


def instance_files(directory: PathLike) -> list[Path]:
    """Instance files in ``directory`` (sidecars excluded), sorted by name."""
    d = Path(directory)
    out = [p for p in d.iterdir() if p.is_file() and (p.name.endswith(ROT_SUFFIX) or p.name.endswith(O1T_SUFFIX))]
    return sorted(out)


def instance_id(path: PathLike) -> str:
    name = Path(path).name
    for suf in (O1T_SUFFIX, ROT_SUFFIX):
        if name.endswith(suf):
            return name[: -len(suf)]
    return name
