"""Temperature-1 tile assembly fundamentals.

Tiles carry one glue per side; two abutting tiles interact when the facing
glue labels are equal and both strengths are positive.  At temperature 1 a
single interaction suffices for attachment, which makes producibility a
connectivity question rather than a search problem: an assembly containing
the seed is producible if and only if its binding graph is connected.

Conventions used throughout the package:

* positions are ``(x, y)`` integer pairs, x grows east, y grows north;
* the grid graph uses 4-adjacency; distances use the Chebyshev (max) norm;
* tiles along a path are numbered starting at 1 (``path.tile(1)`` is the
  first tile).  ``PathAssembly`` also supports the standard 0-based Python
  sequence protocol for iteration.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Pos = tuple[int, int]
Vec = tuple[int, int]


# ---------------------------------------------------------------------------
# errors


class PumpkitError(Exception):
    """Base class for all domain errors raised by this package."""


class Occupied(PumpkitError):
    """Attachment attempted at a position that already holds a tile."""


class NoBond(PumpkitError):
    """Attachment attempted with no interacting neighbour."""


class UnknownTile(PumpkitError):
    """A tile type does not belong to the system's tile set."""


class SeedConflict(PumpkitError):
    """An assembly disagrees with the seed on a shared position."""


class EndpointMismatch(PumpkitError):
    """Concatenation endpoints do not share position and type."""


class Conflict(PumpkitError):
    """Two partial tilings disagree at a position.

    Attributes
    ----------
    position:
        The first offending position (scan order of the second operand).
    """

    def __init__(self, position: Pos, message: str | None = None):
        super().__init__(message or f"conflicting tile types at {position}")
        self.position = position


class MalformedPath(PumpkitError):
    """A tile sequence violates the path-assembly invariants."""


# ---------------------------------------------------------------------------
# vector helpers


def add(a: Pos, b: Vec) -> Pos:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Pos, b: Pos) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


def scale(k: int, v: Vec) -> Vec:
    return (k * v[0], k * v[1])


def chebyshev_distance(a: Pos, b: Pos) -> int:
    """Max-norm distance between two lattice positions."""
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def neighbors4(p: Pos) -> tuple[Pos, Pos, Pos, Pos]:
    x, y = p
    return ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y))


class Side(enum.Enum):
    """One of the four sides of a unit tile."""

    NORTH = (0, 1)
    EAST = (1, 0)
    SOUTH = (0, -1)
    WEST = (-1, 0)

    @property
    def vector(self) -> Vec:
        return self.value

    @property
    def opposite(self) -> "Side":
        return _OPPOSITE[self]


_OPPOSITE = {
    Side.NORTH: Side.SOUTH,
    Side.SOUTH: Side.NORTH,
    Side.EAST: Side.WEST,
    Side.WEST: Side.EAST,
}

_SIDE_BY_VECTOR = {s.value: s for s in Side}


def side_towards(a: Pos, b: Pos) -> Side:
    """The side of a tile at ``a`` that faces the adjacent position ``b``."""
    v = sub(b, a)
    try:
        return _SIDE_BY_VECTOR[v]
    except KeyError:
        raise ValueError(f"positions {a} and {b} are not 4-adjacent") from None


# ---------------------------------------------------------------------------
# tiles and glues


@dataclass(frozen=True)
class Glue:
    """A glue label together with a nonnegative integer strength.

    Strength 0 means the side can never bond; the conventional "absent"
    glue is ``NULL_GLUE`` (empty label, strength 0).
    """

    label: str
    strength: int = 1

    def __post_init__(self) -> None:
        if self.strength < 0:
            raise ValueError(f"glue strength must be nonnegative, got {self.strength}")


NULL_GLUE = Glue("", 0)


@dataclass(frozen=True)
class TileType:
    """A unit square with a glue on each side and an identifying symbol.

    Two tile types are equal only if the id *and* all four glues agree;
    distinct ids with identical glues are distinct types.
    """

    id: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE

    def glue(self, side: Side) -> Glue:
        if side is Side.NORTH:
            return self.north
        if side is Side.EAST:
            return self.east
        if side is Side.SOUTH:
            return self.south
        return self.west


def glues_interact(a: Glue, b: Glue) -> bool:
    return a.label == b.label and a.strength > 0 and b.strength > 0


@dataclass(frozen=True)
class PlacedTile:
    """A tile type at a lattice position."""

    pos: Pos
    ty: TileType

    @property
    def x(self) -> int:
        return self.pos[0]

    @property
    def y(self) -> int:
        return self.pos[1]

    def translate(self, v: Vec) -> "PlacedTile":
        return PlacedTile(add(self.pos, v), self.ty)


def interacts(a: PlacedTile, b: PlacedTile) -> bool:
    """Whether two placed tiles are adjacent and bond across the shared edge."""
    if chebyshev_distance(a.pos, b.pos) != 1 or (
        a.pos[0] != b.pos[0] and a.pos[1] != b.pos[1]
    ):
        return False
    side = side_towards(a.pos, b.pos)
    return glues_interact(a.ty.glue(side), b.ty.glue(side.opposite))


# ---------------------------------------------------------------------------
# assemblies


def _connected(domain: frozenset[Pos]) -> bool:
    if not domain:
        return False
    start = next(iter(domain))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in neighbors4(p):
            if q in domain and q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) == len(domain)


class Assembly:
    """An immutable partial map from positions to tile types.

    The domain must be non-empty and connected under 4-adjacency.
    """

    __slots__ = ("_placements", "_hash")

    def __init__(self, placements: Mapping[Pos, TileType] | Iterable[tuple[Pos, TileType]]):
        items = dict(placements)
        if not items:
            raise ValueError("an assembly must contain at least one tile")
        if not _connected(frozenset(items)):
            raise ValueError("assembly domain must be 4-connected")
        object.__setattr__(self, "_placements", items)
        object.__setattr__(self, "_hash", None)

    # mapping-ish surface -------------------------------------------------
    def __contains__(self, pos: Pos) -> bool:
        return pos in self._placements

    def __getitem__(self, pos: Pos) -> TileType:
        return self._placements[pos]

    def get(self, pos: Pos) -> TileType | None:
        return self._placements.get(pos)

    def __len__(self) -> int:
        return len(self._placements)

    def __iter__(self) -> Iterator[Pos]:
        return iter(self._placements)

    def items(self) -> Iterable[tuple[Pos, TileType]]:
        return self._placements.items()

    @property
    def domain(self) -> frozenset[Pos]:
        return frozenset(self._placements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assembly):
            return NotImplemented
        return self._placements == other._placements

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._placements.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Assembly({len(self)} tiles)"

    # operations -----------------------------------------------------------
    def agrees_with(self, other: "Assembly") -> bool:
        small, large = sorted((self, other), key=len)
        return all(large.get(p) in (None, t) for p, t in small.items())

    def first_disagreement(self, other: Mapping[Pos, TileType]) -> Pos | None:
        for p, t in sorted(other.items()):
            mine = self._placements.get(p)
            if mine is not None and mine != t:
                return p
        return None

    def union(self, other: "Assembly") -> "Assembly":
        """Merge two agreeing assemblies into one.

        Raises ``Conflict`` at the first disagreeing position and
        ``ValueError`` if the merged domain is not connected.
        """
        bad = self.first_disagreement(other._placements)
        if bad is not None:
            raise Conflict(bad)
        merged = dict(self._placements)
        merged.update(other._placements)
        return Assembly(merged)

    def translate(self, v: Vec) -> "Assembly":
        return Assembly({add(p, v): t for p, t in self._placements.items()})

    def placed_tiles(self) -> list[PlacedTile]:
        return [PlacedTile(p, t) for p, t in sorted(self._placements.items())]


def binding_adjacency(asm: Assembly) -> dict[Pos, list[Pos]]:
    """Adjacency lists of the binding graph (bonded neighbour pairs only)."""
    adj: dict[Pos, list[Pos]] = {p: [] for p in asm}
    for p in asm:
        a = PlacedTile(p, asm[p])
        for q in neighbors4(p):
            if q in asm and interacts(a, PlacedTile(q, asm[q])):
                adj[p].append(q)
    return adj


def is_stable(asm: Assembly) -> bool:
    """Whether the binding graph of the assembly is connected (1-stable)."""
    adj = binding_adjacency(asm)
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in adj[p]:
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) == len(adj)


class TileSystem:
    """A finite tile set and a seed assembly, at temperature 1.

    The seed must be 1-stable; its tile types need not belong to the tile
    set (growth away from the seed does).
    """

    __slots__ = ("tiles", "seed")

    temperature = 1

    def __init__(self, tiles: Iterable[TileType], seed: Assembly):
        tile_set = frozenset(tiles)
        if not tile_set:
            raise ValueError("a tile system needs at least one tile type")
        if not is_stable(seed):
            raise ValueError("seed assembly must be 1-stable")
        object.__setattr__(self, "tiles", tile_set)
        object.__setattr__(self, "seed", seed)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("TileSystem is immutable")

    def tile_by_id(self, tile_id: str) -> TileType:
        for t in self.tiles:
            if t.id == tile_id:
                return t
        raise UnknownTile(tile_id)

    def __repr__(self) -> str:
        return f"TileSystem({len(self.tiles)} tile types, seed of {len(self.seed)})"


# ---------------------------------------------------------------------------
# path assemblies


class PathAssembly(Sequence[PlacedTile]):
    """A finite tile sequence whose positions walk the grid with bonds.

    Consecutive tiles occupy 4-adjacent positions and interact across the
    shared edge.  The sequence need not be simple, but a revisited position
    must carry the same tile type and an immediate backtrack
    (``pos(P_{i-1}) == pos(P_{i+1})``) is rejected.
    """

    __slots__ = ("_tiles", "_domain")

    def __init__(self, tiles: Iterable[PlacedTile]):
        seq = tuple(tiles)
        if not seq:
            raise MalformedPath("a path assembly contains at least one tile")
        domain: dict[Pos, TileType] = {seq[0].pos: seq[0].ty}
        for i in range(1, len(seq)):
            prev, cur = seq[i - 1], seq[i]
            if not interacts(prev, cur):
                raise MalformedPath(
                    f"tiles {i} and {i + 1} do not bond ({prev.pos} -> {cur.pos})"
                )
            if i >= 2 and seq[i - 2].pos == cur.pos:
                raise MalformedPath(f"immediate backtrack at tile {i + 1}")
            known = domain.get(cur.pos)
            if known is None:
                domain[cur.pos] = cur.ty
            elif known != cur.ty:
                raise MalformedPath(
                    f"position {cur.pos} revisited with a different tile type"
                )
        self._tiles = seq
        self._domain = domain

    # sequence protocol (0-based) ------------------------------------------
    def __len__(self) -> int:
        return len(self._tiles)

    def __getitem__(self, i):
        return self._tiles[i]

    def __iter__(self) -> Iterator[PlacedTile]:
        return iter(self._tiles)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathAssembly):
            return NotImplemented
        return self._tiles == other._tiles

    def __hash__(self) -> int:
        return hash(self._tiles)

    def __repr__(self) -> str:
        head = self._tiles[0]
        return f"PathAssembly({len(self)} tiles from {head.ty.id}@{head.pos})"

    # 1-based accessors matching the usual on-paper numbering ---------------
    def tile(self, i: int) -> PlacedTile:
        """The i-th tile, 1-based (``tile(1)`` … ``tile(len(p))``)."""
        if not 1 <= i <= len(self._tiles):
            raise IndexError(f"tile index {i} out of range 1..{len(self._tiles)}")
        return self._tiles[i - 1]

    def segment(self, i: int, j: int) -> "PathAssembly":
        """The inclusive sub-path from tile i to tile j (1-based)."""
        if not 1 <= i <= j <= len(self._tiles):
            raise IndexError(f"segment [{i},{j}] out of range 1..{len(self._tiles)}")
        return PathAssembly(self._tiles[i - 1 : j])

    def prefix(self, i: int) -> "PathAssembly":
        return self.segment(1, i)

    def suffix(self, i: int) -> "PathAssembly":
        return self.segment(i, len(self._tiles))

    # derived views ----------------------------------------------------------
    @property
    def positions(self) -> tuple[Pos, ...]:
        return tuple(t.pos for t in self._tiles)

    @property
    def domain(self) -> frozenset[Pos]:
        return frozenset(self._domain)

    def domain_map(self) -> dict[Pos, TileType]:
        return dict(self._domain)

    @property
    def is_simple(self) -> bool:
        return len(self._domain) == len(self._tiles)

    def translate(self, v: Vec) -> "PathAssembly":
        return PathAssembly(t.translate(v) for t in self._tiles)

    def reverse(self) -> "PathAssembly":
        return PathAssembly(reversed(self._tiles))

    def first_disagreement(self, other: Mapping[Pos, TileType]) -> Pos | None:
        for p, t in sorted(other.items()):
            mine = self._domain.get(p)
            if mine is not None and mine != t:
                return p
        return None

    def to_assembly(self) -> Assembly:
        return Assembly(self._domain)

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(min x, min y, max x, max y) over the path domain."""
        xs = [p[0] for p in self._domain]
        ys = [p[1] for p in self._domain]
        return (min(xs), min(ys), max(xs), max(ys))


def concat(p: PathAssembly, q: PathAssembly) -> PathAssembly:
    """Concatenate two path assemblies sharing an endpoint tile.

    The shared tile must agree in position and type; if instead the *last*
    tiles coincide, ``q`` is traversed in reverse.  Any revisited position
    must agree in type, otherwise ``Conflict`` is raised.
    """
    if p[-1] == q[0]:
        tail = q
    elif p[-1] == q[-1]:
        tail = q.reverse()
    else:
        raise EndpointMismatch(
            f"paths do not share an endpoint tile: {p[-1]} vs {q[0]}/{q[-1]}"
        )
    known = p.domain_map()
    for t in tail:
        ty = known.get(t.pos)
        if ty is not None and ty != t.ty:
            raise Conflict(t.pos)
        known[t.pos] = t.ty
    return PathAssembly(p._tiles + tail._tiles[1:])


# ---------------------------------------------------------------------------
# growth


def attach(asm: Assembly, t: PlacedTile, sys: TileSystem) -> Assembly:
    """Attach one tile to an assembly at temperature 1.

    The position must be free, the tile type must belong to the system,
    and the tile must interact with at least one neighbour already present.
    """
    if t.pos in asm:
        raise Occupied(f"position {t.pos} already holds a tile")
    if t.ty not in sys.tiles:
        raise UnknownTile(f"tile type {t.ty.id!r} is not in the system")
    for q in neighbors4(t.pos):
        ty = asm.get(q)
        if ty is not None and interacts(t, PlacedTile(q, ty)):
            merged = dict(asm.items())
            merged[t.pos] = t.ty
            return Assembly(merged)
    raise NoBond(f"tile at {t.pos} has no interacting neighbour")


def is_producible_assembly(sys: TileSystem, asm: Assembly) -> bool:
    """Producibility of an assembly at temperature 1.

    An assembly containing the seed is producible exactly when its binding
    graph is connected: any connected bonded structure can be grown one
    tile at a time from the seed, since single bonds suffice.
    """
    seed = sys.seed
    for p, t in asm.items():
        st = seed.get(p)
        if st is not None and st != t:
            raise SeedConflict(f"assembly disagrees with the seed at {p}")
    if not all(p in asm for p in seed.domain):
        return False
    if any(t not in sys.tiles for p, t in asm.items() if p not in seed):
        return False
    return is_stable(asm)


def is_producible_path(sys: TileSystem, p: PathAssembly) -> bool:
    """Producibility of a path assembly.

    True iff the path starts on a seed position with the seed's tile type,
    never disagrees with the seed, and uses only system tile types away
    from the seed.  Consecutive bonds are guaranteed by construction.
    """
    seed = sys.seed
    if seed.get(p.tile(1).pos) != p.tile(1).ty:
        return False
    for t in p:
        st = seed.get(t.pos)
        if st is not None:
            if st != t.ty:
                return False
        elif t.ty not in sys.tiles:
            return False
    return True


def path_to_seed_distance(p: PathAssembly, seed: Assembly) -> int:
    """How far the path reaches from the seed, in Chebyshev distance.

    The maximum over path positions of the distance to the nearest seed
    position.
    """
    return max(
        min(chebyshev_distance(a, b) for b in seed.domain) for a in p.positions
    )


# ---------------------------------------------------------------------------
# the eight symmetries of the square


class DihedralTransform(enum.Enum):
    """The eight symmetries of the square lattice, as 2x2 integer maps.

    Acting on a tile system permutes each tile's glue sides consistently
    with the geometric action, so producibility is preserved when a system
    and a path are transformed together.
    """

    IDENTITY = (1, 0, 0, 1)
    ROT90 = (0, -1, 1, 0)
    ROT180 = (-1, 0, 0, -1)
    ROT270 = (0, 1, -1, 0)
    MIRROR_X = (1, 0, 0, -1)
    MIRROR_Y = (-1, 0, 0, 1)
    TRANSPOSE = (0, 1, 1, 0)
    ANTITRANSPOSE = (0, -1, -1, 0)

    def apply(self, p: Pos) -> Pos:
        a, b, c, d = self.value
        return (a * p[0] + b * p[1], c * p[0] + d * p[1])

    @property
    def inverse(self) -> "DihedralTransform":
        a, b, c, d = self.value
        det = a * d - b * c  # always +-1
        inv = (d * det, -b * det, -c * det, a * det)
        return _BY_MATRIX[inv]

    def compose(self, other: "DihedralTransform") -> "DihedralTransform":
        """The transform ``self after other``."""
        a, b, c, d = self.value
        e, f, g, h = other.value
        return _BY_MATRIX[(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)]


_BY_MATRIX = {t.value: t for t in DihedralTransform}


def _transform_tile_type(ty: TileType, d: DihedralTransform) -> TileType:
    glues = {}
    for side in Side:
        image = _SIDE_BY_VECTOR[d.apply(side.vector)]
        glues[image] = ty.glue(side)
    return TileType(
        id=ty.id,
        north=glues[Side.NORTH],
        east=glues[Side.EAST],
        south=glues[Side.SOUTH],
        west=glues[Side.WEST],
    )


def transform(x, d: DihedralTransform):
    """Apply a square symmetry to a system, assembly, path or placed tile."""
    if isinstance(x, TileSystem):
        return TileSystem(
            (_transform_tile_type(t, d) for t in x.tiles),
            transform(x.seed, d),
        )
    if isinstance(x, Assembly):
        return Assembly(
            {d.apply(p): _transform_tile_type(t, d) for p, t in x.items()}
        )
    if isinstance(x, PathAssembly):
        return PathAssembly(
            PlacedTile(d.apply(t.pos), _transform_tile_type(t.ty, d)) for t in x
        )
    if isinstance(x, PlacedTile):
        return PlacedTile(d.apply(x.pos), _transform_tile_type(x.ty, d))
    raise TypeError(f"cannot transform {type(x).__name__}")
