"""Regenerate the bundled example documents under src/pumpkit/data/.

Run from the repository root:  python scripts/make_fixtures.py
"""

from __future__ import annotations

import pathlib
import re
from collections import Counter

from pumpkit.core import Assembly, PathAssembly, PlacedTile, TileSystem, is_producible_path
from pumpkit.documents import serialize_cells, serialize_path, serialize_tileset

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "pumpkit" / "data"


# ---------------------------------------------------------------------------
# Region-outline decoding.  The two big geometry fixtures are drawn as
# rectilinear outlines around unit cells: a chain of corners joined by "-|"
# (horizontal then vertical) or "|-" (vertical then horizontal) connectors.
# Cells inside the outline (even/odd parity; retraced double walls cancel)
# form the path; two cells are consecutive iff they are 4-adjacent and no
# wall was drawn between them.  Double walls separate parallel runs while
# cancelling out of the parity fill.


def _outline_walls(outline: str) -> tuple[Counter, Counter]:
    """Wall multiset of a closed outline.  Vertical wall (x, y) separates
    cells (x-1, y) | (x, y); horizontal wall (x, y) separates (x, y-1) | (x, y)."""
    tokens = re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)|(\|-|-\|)", outline)
    corners: list[tuple[int, int]] = []
    connectors: list[str] = []
    for x, y, conn in tokens:
        if conn:
            connectors.append(conn)
        else:
            corners.append((int(x), int(y)))
    if len(connectors) != len(corners) - 1:
        raise ValueError("outline must alternate corners and connectors")
    vert: Counter = Counter()
    horiz: Counter = Counter()
    cur = corners[0]
    for conn, nxt in zip(connectors, corners[1:]):
        mid = (nxt[0], cur[1]) if conn == "-|" else (cur[0], nxt[1])
        for a, b in ((cur, mid), (mid, nxt)):
            if a[1] == b[1]:
                for x in range(min(a[0], b[0]), max(a[0], b[0])):
                    horiz[(x, a[1])] += 1
            else:
                for y in range(min(a[1], b[1]), max(a[1], b[1])):
                    vert[(a[0], y)] += 1
        cur = nxt
    if cur != corners[0]:
        raise ValueError("outline does not close")
    return vert, horiz


def decode_outline(outline: str, first: tuple[int, int]) -> list[tuple[int, int]]:
    """Cells of a closed rectilinear outline, ordered as the simple path they
    trace, starting from ``first``."""
    vert, horiz = _outline_walls(outline)
    cells: set[tuple[int, int]] = set()
    ys = [y for _, y in vert]
    for y in range(min(ys), max(ys) + 1):
        row = sorted(x for (x, yy), n in vert.items() if yy == y and n % 2)
        if len(row) % 2:
            raise ValueError(f"unbalanced walls in row {y}")
        for i in range(0, len(row), 2):
            cells.update((x, y) for x in range(row[i], row[i + 1]))

    def linked(a: tuple[int, int], b: tuple[int, int]) -> bool:
        if a[0] == b[0]:
            return horiz[(a[0], max(a[1], b[1]))] == 0
        return vert[(max(a[0], b[0]), a[1])] == 0

    nbrs = {
        c: [
            o
            for d in ((1, 0), (-1, 0), (0, 1), (0, -1))
            if (o := (c[0] + d[0], c[1] + d[1])) in cells and linked(c, o)
        ]
        for c in cells
    }
    ends = [c for c, ns in nbrs.items() if len(ns) == 1]
    if len(ends) != 2 or any(len(ns) > 2 for ns in nbrs.values()):
        raise ValueError("outline region is not a simple open path")
    path = [min(ends)]
    prev: tuple[int, int] | None = None
    while len(path) < len(cells):
        step = next(c for c in nbrs[path[-1]] if c != prev)
        prev = path[-1]
        path.append(step)
    if path[0] != first:
        path.reverse()
    if path[0] != first:
        raise ValueError(f"neither endpoint equals {first}")
    return path


# 105-cell simple path whose first cell is visible from the west and last
# cell from the east; doubles as the window of a visible-extremity cut.
V105_OUTLINE = (
    "(7,12) -| (9,6) -| (7,1) -| (17,14) -| (11,20) -| (16,14) -| (22,20)"
    " -| (18,25) -| (26,11) -| (27,26) -| (17,19) -| (21,15) -| (17,21)"
    " -| (10,13) -| (16,2) -| (8,5) -| (10,13) -| (7,12)"
)

# 196-cell simple path over that window; its decomposition into extremum
# arcs of the left side has nine arcs with sign pattern -+++++--- and two
# width-zero arcs, and is a counter-example to decomposition positivity.
D196_OUTLINE = (
    "(9,12) |- (1,17) |- (4,12) |- (6,14) |- (12,9) |- (4,4) |- (8,5)"
    " |- (1,8) |- (7,1) |- (15,-1) |- (27,3) |- (13,12) |- (15,13)"
    " |- (33,17) |- (15,25) |- (30,22) |- (26,20) |- (31,19) |- (16,23)"
    " |- (32,24) |- (14,18) |- (12,14) |- (26,11) |- (14,4) |- (8,0)"
    " |- (2,2) |- (7,7) |- (3,6) |- (13,3) |- (7,10) |- (3,15) |- (2,13)"
    " |- (8,16) |- (9,12)"
)


def t17_system() -> TileSystem:
    """A 17-type system whose single-seed growth exhibits pumpable segments,
    a first-conflict extension and a fragility witness."""
    spec = {
        # id: (north, east, south, west)
        "S": (None, None, "A", None),
        "1": ("A", "B", None, None),
        "2": (None, None, "C", "B"),
        "3": ("C", None, "D", None),
        "4": ("D", "E", None, "M"),
        "5": (None, "F", None, "E"),
        "6": ("G", "M", None, "F"),
        "7": (None, None, "G", "H"),
        "8": ("I", "H", None, None),
        "9": ("J", None, "I", None),
        "10": (None, "K", "J", "E"),
        "11": ("G", "B", "G", "K"),
        "12": (None, "M", None, None),
        "13": (None, None, None, "H"),
        "14": (None, None, None, "B"),
        "15": (None, None, "G", None),
        "16": (None, "K", None, None),
    }
    from pumpkit.core import Glue, TileType

    glues = {lab: Glue(lab, 1) for lab in "ABCDEFGHIJKM"}
    tiles = []
    for tid, (n, e, s, w) in spec.items():
        kw = {}
        for key, lab in zip(("north", "east", "south", "west"), (n, e, s, w)):
            if lab is not None:
                kw[key] = glues[lab]
        tiles.append(TileType(id=tid, **kw))
    seed = Assembly({(0, 0): tiles[0]})
    return TileSystem(tiles, seed)


def path_from(sys: TileSystem, triples: list[tuple[int, int, str]]) -> PathAssembly:
    by_id = {t.id: t for t in sys.tiles}
    return PathAssembly(PlacedTile((x, y), by_id[tid]) for x, y, tid in triples)


P25 = [
    (0, 0, "S"), (0, -1, "1"), (1, -1, "2"), (1, -2, "3"), (1, -3, "4"),
    (2, -3, "5"), (3, -3, "6"), (3, -2, "7"), (2, -2, "8"), (2, -1, "9"),
    (2, 0, "10"), (3, 0, "11"), (3, -1, "11"), (4, -1, "2"), (4, -2, "3"),
    (4, -3, "4"), (5, -3, "5"), (6, -3, "6"), (6, -2, "7"), (5, -2, "8"),
    (5, -1, "9"), (5, 0, "10"), (6, 0, "11"), (6, -1, "11"), (7, -1, "14"),
]

Q23 = [
    (0, 0, "S"), (0, -1, "1"), (1, -1, "2"), (1, -2, "3"), (1, -3, "4"),
    (2, -3, "5"), (3, -3, "6"), (3, -2, "7"), (2, -2, "8"), (2, -1, "9"),
    (2, 0, "10"), (3, 0, "11"), (3, 1, "11"), (3, 2, "11"), (4, 2, "2"),
    (4, 1, "3"), (4, 0, "4"), (5, 0, "5"), (6, 0, "6"), (6, 1, "7"),
    (5, 1, "8"), (5, 2, "9"), (5, 3, "10"),
]

R25 = [
    (0, 0, "S"), (0, -1, "1"), (1, -1, "2"), (1, -2, "3"), (1, -3, "4"),
    (2, -3, "10"), (3, -3, "11"), (3, -2, "11"), (3, -1, "11"), (4, -1, "2"),
    (4, -2, "3"), (4, -3, "4"), (5, -3, "5"), (6, -3, "6"), (7, -3, "4"),
    (8, -3, "10"), (9, -3, "11"), (9, -2, "11"), (9, -1, "11"), (8, -1, "10"),
    (7, -1, "4"), (7, 0, "3"), (7, 1, "2"), (6, 1, "11"), (6, 2, "11"),
]


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    sys17 = t17_system()
    (DATA / "t17.tiles.json").write_bytes(
        serialize_tileset(
            sys17,
            "17-type tile system with a single-tile seed; host system of the "
            "bundled pumping, first-conflict and fragility example paths",
        )
    )

    p25 = path_from(sys17, P25)
    assert is_producible_path(sys17, p25) and p25.is_simple
    (DATA / "p25.path.json").write_bytes(
        serialize_path(
            p25,
            "25-tile simple producible path; segment [3,14] pumps forward "
            "(direction (3,0)), segment [12,13] pumps in reverse (direction (0,-1))",
        )
    )

    q23 = path_from(sys17, Q23)
    assert is_producible_path(sys17, q23) and q23.is_simple
    (DATA / "q23.path.json").write_bytes(
        serialize_path(
            q23,
            "23-tile producible path conflicting with the 25-tile example at "
            "(5,0) and (6,0); a fragility witness",
        )
    )

    r25 = path_from(sys17, R25)
    assert is_producible_path(sys17, r25) and r25.is_simple
    (DATA / "r25.path.json").write_bytes(
        serialize_path(
            r25,
            "25-tile simple producible path whose segment [9,25] (direction "
            "(3,3)) is a candidate but not good; its forward extension first "
            "conflicts at extension index 3, position (7,1)",
        )
    )

    v105 = decode_outline(V105_OUTLINE, (7, 12))
    assert len(v105) == 105 and v105[-1] == (26, 11)
    (DATA / "v105.cells.json").write_bytes(
        serialize_cells(
            v105,
            "105-cell simple path with visible extremities (first cell "
            "westmost on its row, last cell eastmost); window fixture for "
            "visible-path cuts",
        )
    )

    d196 = decode_outline(D196_OUTLINE, (8, 12))
    assert len(d196) == 196 and d196[-1] == (26, 19)
    (DATA / "d196.cells.json").write_bytes(
        serialize_cells(
            d196,
            "196-cell simple path over the 105-cell visible window; left-side "
            "decomposition has nine extremum arcs, signs -+++++---, two of "
            "width zero",
        )
    )

    print(f"wrote fixtures to {DATA}")


if __name__ == "__main__":
    main()
