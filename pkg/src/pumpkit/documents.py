"""JSON document formats for tile systems, paths and assemblies.

All documents are human-editable JSON with a versioned header::

    {"format": "pumpkit-tileset", "version": 1, ...}

A tileset document declares a glue table (label -> strength), a tile list
(id plus up to four glue labels) and the seed placements.  Sides without a
glue are omitted or set to ``null``.  Glue labels are non-empty strings and
a label carries a single strength; the in-memory model is more general but
everything needed by the bundled fixtures round-trips exactly.

Path and assembly documents list ``(x, y, tile-id)`` placements and resolve
tile ids against a tile system on load.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from .core import (
    Assembly,
    Glue,
    PathAssembly,
    PlacedTile,
    PumpkitError,
    Side,
    TileSystem,
    TileType,
    is_stable,
)

TILESET_FORMAT = "pumpkit-tileset"
PATH_FORMAT = "pumpkit-path"
ASSEMBLY_FORMAT = "pumpkit-assembly"
CELLS_FORMAT = "pumpkit-cells"
FORMAT_VERSION = 1

_SIDE_KEYS = ("north", "east", "south", "west")


class SchemaError(PumpkitError):
    """The document does not follow the schema.

    Carries the source line for JSON syntax errors and a document path
    (like ``tiles[3].north``) for semantic ones.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif path:
            where = f" (at {path})"
        super().__init__(message + where)
        self.line = line
        self.path = path


class DanglingReference(PumpkitError):
    """A document references a glue or tile id that is not defined."""


class SeedNotStable(PumpkitError):
    """The declared seed is not a connected, 1-stable assembly."""


def _decode(raw: bytes | str, expected_format: str) -> dict[str, Any]:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg}", line=e.lineno) from None
    if not isinstance(doc, dict):
        raise SchemaError("top-level value must be an object")
    if doc.get("format") != expected_format:
        raise SchemaError(
            f"expected format {expected_format!r}, got {doc.get('format')!r}",
            path="format",
        )
    if doc.get("version") != FORMAT_VERSION:
        raise SchemaError(f"unsupported version {doc.get('version')!r}", path="version")
    return doc


def _placement(entry: Any, where: str) -> tuple[int, int, str]:
    if not isinstance(entry, dict):
        raise SchemaError("placement must be an object", path=where)
    try:
        x, y, tile = entry["x"], entry["y"], entry["tile"]
    except KeyError as e:
        raise SchemaError(f"placement missing key {e.args[0]!r}", path=where) from None
    if not isinstance(x, int) or not isinstance(y, int) or not isinstance(tile, str):
        raise SchemaError("placement fields must be (int, int, str)", path=where)
    return x, y, tile


# ---------------------------------------------------------------------------
# tilesets


def parse_tileset(raw: bytes | str) -> TileSystem:
    """Parse and validate a tileset document into a ``TileSystem``."""
    doc = _decode(raw, TILESET_FORMAT)

    glues = doc.get("glues")
    if not isinstance(glues, dict):
        raise SchemaError("'glues' must be an object of label -> strength", path="glues")
    glue_table: dict[str, Glue] = {}
    for label, strength in glues.items():
        if not label:
            raise SchemaError("glue labels must be non-empty", path="glues")
        if not isinstance(strength, int) or strength < 0:
            raise SchemaError(
                f"glue strength must be a nonnegative integer, got {strength!r}",
                path=f"glues.{label}",
            )
        glue_table[label] = Glue(label, strength)

    tiles_doc = doc.get("tiles")
    if not isinstance(tiles_doc, list) or not tiles_doc:
        raise SchemaError("'tiles' must be a non-empty list", path="tiles")
    by_id: dict[str, TileType] = {}
    for i, entry in enumerate(tiles_doc):
        where = f"tiles[{i}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise SchemaError("tile entry needs a string 'id'", path=where)
        tile_id = entry["id"]
        if tile_id in by_id:
            raise SchemaError(f"duplicate tile id {tile_id!r}", path=where)
        sides = {}
        for key in _SIDE_KEYS:
            ref = entry.get(key)
            if ref is None:
                continue
            if not isinstance(ref, str):
                raise SchemaError("glue reference must be a string", path=f"{where}.{key}")
            if ref not in glue_table:
                raise DanglingReference(f"tile {tile_id!r} references undefined glue {ref!r}")
            sides[key] = glue_table[ref]
        by_id[tile_id] = TileType(id=tile_id, **sides)

    seed_doc = doc.get("seed")
    if not isinstance(seed_doc, list) or not seed_doc:
        raise SchemaError("'seed' must be a non-empty list of placements", path="seed")
    placements: dict[tuple[int, int], TileType] = {}
    for i, entry in enumerate(seed_doc):
        x, y, tile_id = _placement(entry, f"seed[{i}]")
        if tile_id not in by_id:
            raise DanglingReference(f"seed references undefined tile {tile_id!r}")
        if (x, y) in placements:
            raise SchemaError(f"duplicate seed position ({x}, {y})", path=f"seed[{i}]")
        placements[(x, y)] = by_id[tile_id]
    try:
        seed = Assembly(placements)
    except ValueError as e:
        raise SeedNotStable(str(e)) from None
    if not is_stable(seed):
        raise SeedNotStable("seed binding graph is not connected")

    return TileSystem(by_id.values(), seed)


def serialize_tileset(sys: TileSystem, description: str = "") -> bytes:
    """Serialize a tile system to canonical bytes (stable across runs)."""
    glue_table: dict[str, int] = {}

    def note(g: Glue) -> str | None:
        if g.label == "" and g.strength == 0:
            return None
        if not g.label:
            raise ValueError("document glue labels must be non-empty")
        if glue_table.setdefault(g.label, g.strength) != g.strength:
            raise ValueError(f"glue label {g.label!r} used with two strengths")
        return g.label

    tiles = []
    for t in sorted(sys.tiles, key=lambda t: t.id):
        entry: dict[str, Any] = {"id": t.id}
        for key, side in zip(_SIDE_KEYS, (Side.NORTH, Side.EAST, Side.SOUTH, Side.WEST)):
            ref = note(t.glue(side))
            if ref is not None:
                entry[key] = ref
        tiles.append(entry)

    seed = [
        {"x": p[0], "y": p[1], "tile": t.id}
        for p, t in sorted(sys.seed.items())
    ]
    doc: dict[str, Any] = {"format": TILESET_FORMAT, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc.update(glues=dict(sorted(glue_table.items())), tiles=tiles, seed=seed)
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# paths and assemblies


def _resolve(entries: list[Any], sys: TileSystem, section: str) -> list[PlacedTile]:
    placed = []
    by_id = {t.id: t for t in sys.tiles}
    for p, t in sys.seed.items():
        by_id.setdefault(t.id, t)
    for i, entry in enumerate(entries):
        x, y, tile_id = _placement(entry, f"{section}[{i}]")
        ty = by_id.get(tile_id)
        if ty is None:
            raise DanglingReference(f"{section}[{i}] references undefined tile {tile_id!r}")
        placed.append(PlacedTile((x, y), ty))
    return placed


def parse_path(raw: bytes | str, sys: TileSystem) -> PathAssembly:
    """Parse a path document, resolving tile ids against ``sys``."""
    doc = _decode(raw, PATH_FORMAT)
    entries = doc.get("tiles")
    if not isinstance(entries, list) or not entries:
        raise SchemaError("'tiles' must be a non-empty list", path="tiles")
    return PathAssembly(_resolve(entries, sys, "tiles"))


def serialize_path(path: PathAssembly, description: str = "") -> bytes:
    doc: dict[str, Any] = {"format": PATH_FORMAT, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc["tiles"] = [{"x": t.x, "y": t.y, "tile": t.ty.id} for t in path]
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def parse_cells(raw: bytes | str) -> tuple[tuple[int, int], ...]:
    """Parse a bare lattice-path document (positions only, no tiles)."""
    doc = _decode(raw, CELLS_FORMAT)
    entries = doc.get("cells")
    if not isinstance(entries, list) or not entries:
        raise SchemaError("'cells' must be a non-empty list", path="cells")
    out = []
    for i, entry in enumerate(entries):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, int) for v in entry)
        ):
            raise SchemaError("cell must be [x, y]", path=f"cells[{i}]")
        out.append((entry[0], entry[1]))
    return tuple(out)


def serialize_cells(cells: Any, description: str = "") -> bytes:
    doc: dict[str, Any] = {"format": CELLS_FORMAT, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc["cells"] = [[int(x), int(y)] for x, y in cells]
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def parse_assembly(raw: bytes | str, sys: TileSystem) -> Assembly:
    """Parse an assembly document, resolving tile ids against ``sys``."""
    doc = _decode(raw, ASSEMBLY_FORMAT)
    entries = doc.get("tiles")
    if not isinstance(entries, list) or not entries:
        raise SchemaError("'tiles' must be a non-empty list", path="tiles")
    placements: dict[tuple[int, int], TileType] = {}
    for t in _resolve(entries, sys, "tiles"):
        if t.pos in placements:
            raise SchemaError(f"duplicate position {t.pos}")
        placements[t.pos] = t.ty
    try:
        return Assembly(placements)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def serialize_assembly(asm: Assembly, description: str = "") -> bytes:
    doc: dict[str, Any] = {"format": ASSEMBLY_FORMAT, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc["tiles"] = [
        {"x": p[0], "y": p[1], "tile": t.id} for p, t in sorted(asm.items())
    ]
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# bundled example data


def bundled(name: str) -> bytes:
    """Read a data file shipped with the package (e.g. ``"t17.tiles.json"``)."""
    return resources.files("pumpkit").joinpath("data", name).read_bytes()
