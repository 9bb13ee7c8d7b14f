"""Cuts of the square grid, window decompositions, and shrink surgery.

The grid graph has a vertex at every integer position and an edge between
4-adjacent positions.  A *window* is a simple cycle or a simple bi-infinite
path of positions; cutting the grid along a window yields two connected
subgraphs that overlap exactly on the window.  The two sides are named
``LEFT`` and ``RIGHT`` for the direction of travel along increasing window
indices.

Everything in this module is geometric: paths are tuples of positions, and
the "good path" notion used by :func:`split_cut` and :func:`shrink_to_split`
is the geometric one (simple, nonzero direction ``v``, and the path meets
its own ``v``-translate in exactly one vertex).  Tile-level checks live in
:mod:`pumpkit.pump`.

Supported windows (see :func:`build_cut`):

* ``Cycle`` -- a finite simple cycle; LEFT is the enclosed interior.
* ``Line`` -- the staircase band of heights ``[h, h + x_v + y_v)`` for a
  first-quadrant direction; LEFT is the upper part (heights above the band).
* ``GoodPathExtension`` -- the bi-infinite extension of a good path; LEFT is
  the upper part relative to the path's direction.
* ``VisiblePath`` -- a path with visible extremities completed by two
  horizontal rays; LEFT is the north side.

Side classification is Jordan-parity based: a query vertex is compared with
a reference vertex of known side by counting how many window edges an
L-shaped lattice path between them crosses.  The reference is bootstrapped
from the quarter-turn rule that also classifies edges whose endpoints both
lie on the window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence, Union

from .core import Pos, PumpkitError, Vec

__all__ = [
    "SideTag",
    "EdgeClass",
    "Orientation",
    "RayTail",
    "PeriodicTail",
    "Window",
    "GridCut",
    "Cycle",
    "Line",
    "GoodPathExtension",
    "VisiblePath",
    "build_cut",
    "height",
    "side_of",
    "Arc",
    "WindowSegment",
    "DualSegment",
    "ExtremumDecomposition",
    "decompose_extremum_arcs",
    "orientation",
    "Interior",
    "interior",
    "CutSplit",
    "split_cut",
    "ElementaryDecomposition",
    "decompose_elementary_arcs",
    "shrink_basic_path",
    "ExtensionFits",
    "Replacement",
    "shrink_to_split",
    "decomposition_report",
    "GridError",
    "NonSimpleCycle",
    "NotGoodPath",
    "ExtremityNotVisible",
    "PathTouchesWindowNowhere",
    "NotExtremum",
    "NotPositive",
    "NotBasic",
    "PathLeavesSide",
    "MultipleWindowHits",
    "PreconditionViolated",
]


class GridError(PumpkitError):
    """Base class for errors raised by the grid toolbox."""


class NonSimpleCycle(GridError):
    """The vertex list does not describe a simple cycle."""


class NotGoodPath(GridError):
    """The path is not good: not simple, zero direction, or bad overlap."""


class ExtremityNotVisible(GridError):
    """An endpoint of the path is hidden by the path on its own row."""


class PathTouchesWindowNowhere(GridError):
    """The path to decompose has no vertex on the window."""


class NotExtremum(GridError):
    """The arc is not extremum (its endpoints are not its extreme hits)."""


class NotPositive(GridError):
    """The arc is negative where a positive arc is required."""


class NotBasic(GridError):
    """The path violates a precondition of the basic-path shrink step."""


class PathLeavesSide(GridError):
    """The periodic extension leaves the side it was supposed to split."""


class MultipleWindowHits(GridError):
    """The splitting path meets the window in more than one vertex."""


class PreconditionViolated(GridError):
    """An input of the shrink surgery violates its stated preconditions."""


# ---------------------------------------------------------------------------
# Vector helpers


def _add(a: Pos, b: Vec) -> Pos:
    return (a[0] + b[0], a[1] + b[1])


def _sub(a: Pos, b: Pos) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def _neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


def _mul(v: Vec, k: int) -> Vec:
    return (v[0] * k, v[1] * k)


def rot_ccw(v: Vec) -> Vec:
    """Rotate a vector by a quarter turn counterclockwise."""
    return (-v[1], v[0])


def rot_cw(v: Vec) -> Vec:
    """Rotate a vector by a quarter turn clockwise."""
    return (v[1], -v[0])


def _adjacent(a: Pos, b: Pos) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def _as_positions(path: object) -> tuple[Pos, ...]:
    """Accept a raw position sequence or anything exposing ``.positions``."""
    positions = getattr(path, "positions", path)
    out = tuple((int(p[0]), int(p[1])) for p in positions)  # type: ignore[union-attr]
    return out


def _check_lattice_path(path: Sequence[Pos], what: str = "path") -> None:
    if not path:
        raise GridError(f"{what} is empty")
    for a, b in zip(path, path[1:]):
        if not _adjacent(a, b):
            raise GridError(f"{what} is not a lattice path: {a} !~ {b}")


def _is_simple(path: Sequence[Pos]) -> bool:
    return len(set(path)) == len(path)


def _bbox(cells: Iterable[Pos]) -> tuple[int, int, int, int]:
    xs, ys = zip(*cells)
    return (min(xs), min(ys), max(xs), max(ys))


def height(v: Vec, p: Pos) -> int:
    """Height of position ``p`` relative to direction ``v``.

    This is the cross product ``x_v * y_p - x_p * y_v``; it is invariant
    under translation by ``v`` and increases toward the left of ``v``.
    """
    return v[0] * p[1] - p[0] * v[1]


def _normalized(v: Vec) -> bool:
    return v[1] >= 1 or (v[1] == 0 and v[0] > 0)


# ---------------------------------------------------------------------------
# Windows


class SideTag(Enum):
    LEFT = "left"
    RIGHT = "right"
    ON_WINDOW = "on-window"

    @property
    def opposite(self) -> "SideTag":
        if self is SideTag.LEFT:
            return SideTag.RIGHT
        if self is SideTag.RIGHT:
            return SideTag.LEFT
        raise ValueError("ON_WINDOW has no opposite side")


class EdgeClass(Enum):
    LEFT_ONLY = "left-only"
    RIGHT_ONLY = "right-only"
    WINDOW_EDGE = "window-edge"


_SIDE_TO_EDGE = {SideTag.LEFT: EdgeClass.LEFT_ONLY, SideTag.RIGHT: EdgeClass.RIGHT_ONLY}
_EDGE_TO_SIDE = {EdgeClass.LEFT_ONLY: SideTag.LEFT, EdgeClass.RIGHT_ONLY: SideTag.RIGHT}


class Orientation(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def opposite(self) -> "Orientation":
        return Orientation.NEGATIVE if self is Orientation.POSITIVE else Orientation.POSITIVE


@dataclass(frozen=True)
class RayTail:
    """Horizontal ray continuation of a window core (one cell per index)."""

    step: Vec

    def __post_init__(self) -> None:
        if self.step not in ((1, 0), (-1, 0)):
            raise GridError(f"ray tails must be horizontal unit steps, got {self.step}")


@dataclass(frozen=True)
class PeriodicTail:
    """Periodic continuation: every ``period`` indices shift by ``shift``."""

    shift: Vec
    period: int

    def __post_init__(self) -> None:
        if self.period < 1:
            raise GridError("periodic tail needs period >= 1")
        if self.shift == (0, 0):
            raise GridError("periodic tail needs a nonzero shift")


Tail = Union[RayTail, PeriodicTail]

_MISS = object()


class Window:
    """Lazy window: finite cyclic core, or a core with two infinite tails.

    ``eval(i)`` maps a window index to a position; ``index_of(pos)`` inverts
    it.  Indices run over all integers for bi-infinite windows and are taken
    modulo the length for cycles.  ``core[0]`` has index ``start``.
    """

    __slots__ = ("core", "start", "west", "east", "cyclic", "_index", "_tail_cache")

    def __init__(
        self,
        core: Sequence[Pos],
        *,
        start: int = 0,
        west: Tail | None = None,
        east: Tail | None = None,
        cyclic: bool = False,
    ) -> None:
        self.core = tuple(core)
        self.start = start
        self.west = west
        self.east = east
        self.cyclic = cyclic
        self._validate()
        self._index = {pos: start + k for k, pos in enumerate(self.core)}
        self._tail_cache: dict[Pos, int | None] = {}

    # -- construction checks ------------------------------------------------

    def _validate(self) -> None:
        core = self.core
        if not core:
            raise GridError("window core is empty")
        if not _is_simple(core):
            raise GridError("window core repeats a position")
        _check_lattice_path(core, "window core")
        if self.cyclic:
            if self.west is not None or self.east is not None:
                raise GridError("cyclic windows take no tails")
            if len(core) < 4:
                raise GridError("a simple cycle needs at least 4 vertices")
            if not _adjacent(core[-1], core[0]):
                raise GridError("cycle does not close up")
            return
        if self.west is None or self.east is None:
            raise GridError("bi-infinite windows need both tails")
        n = len(core)
        for tail, is_west in ((self.west, True), (self.east, False)):
            if isinstance(tail, PeriodicTail):
                if n < tail.period + 1:
                    raise GridError("core shorter than one tail period")
                if is_west:
                    if core[tail.period] != _sub(core[0], tail.shift):
                        raise GridError("west tail shift disagrees with core")
                    seam = _add(core[tail.period - 1], tail.shift)
                    if not _adjacent(seam, core[0]):
                        raise GridError("west tail does not join the core")
                else:
                    if core[n - 1 - tail.period] != _sub(core[-1], tail.shift):
                        raise GridError("east tail shift disagrees with core")
                    seam = _add(core[n - tail.period], tail.shift)
                    if not _adjacent(core[-1], seam):
                        raise GridError("east tail does not join the core")
        # Guard check: the first stretch of each tail must not collide with
        # the core or with the other tail.  Global injectivity is supplied by
        # the constructing cut (band uniqueness, goodness, visibility).
        guard: set[Pos] = set(core)
        for i in range(self.start - 1, self.start - 2 * self._west_span() - 2, -1):
            pos = self.eval(i)
            if pos in guard:
                raise GridError(f"window is not simple near the west tail: {pos}")
            guard.add(pos)
        end = self.start + len(core)
        for i in range(end, end + 2 * self._east_span() + 1):
            pos = self.eval(i)
            if pos in guard:
                raise GridError(f"window is not simple near the east tail: {pos}")
            guard.add(pos)

    def _west_span(self) -> int:
        tail = self.west
        return tail.period if isinstance(tail, PeriodicTail) else max(8, len(self.core))

    def _east_span(self) -> int:
        tail = self.east
        return tail.period if isinstance(tail, PeriodicTail) else max(8, len(self.core))

    # -- evaluation ----------------------------------------------------------

    def eval(self, i: int) -> Pos:
        core = self.core
        n = len(core)
        k = i - self.start
        if self.cyclic:
            return core[k % n]
        if 0 <= k < n:
            return core[k]
        if k < 0:
            tail = self.west
            if isinstance(tail, RayTail):
                return _add(core[0], _mul(tail.step, -k))
            t = (-k + tail.period - 1) // tail.period
            return _add(core[k + t * tail.period], _mul(tail.shift, t))
        tail = self.east
        if isinstance(tail, RayTail):
            return _add(core[-1], _mul(tail.step, k - (n - 1)))
        t = (k - n + tail.period) // tail.period
        return _add(core[k - t * tail.period], _mul(tail.shift, t))

    def index_of(self, pos: Pos) -> int | None:
        hit = self._index.get(pos)
        if hit is not None:
            return hit
        if self.cyclic:
            return None
        cached = self._tail_cache.get(pos, _MISS)
        if cached is not _MISS:
            return cached  # type: ignore[return-value]
        found = self._west_lookup(pos)
        if found is None:
            found = self._east_lookup(pos)
        if len(self._tail_cache) > (1 << 18):
            self._tail_cache.clear()
        self._tail_cache[pos] = found
        return found

    def _west_lookup(self, pos: Pos) -> int | None:
        tail = self.west
        anchor = self.core[0]
        if isinstance(tail, RayTail):
            if pos[1] != anchor[1]:
                return None
            k = (pos[0] - anchor[0]) * tail.step[0]
            return self.start - k if k > 0 else None
        for j in range(tail.period):
            t = _solve_multiple(_sub(pos, self.core[j]), tail.shift)
            if t is not None and t >= 1:
                return self.start + j - t * tail.period
        return None

    def _east_lookup(self, pos: Pos) -> int | None:
        tail = self.east
        n = len(self.core)
        anchor = self.core[-1]
        if isinstance(tail, RayTail):
            if pos[1] != anchor[1]:
                return None
            k = (pos[0] - anchor[0]) * tail.step[0]
            return self.start + n - 1 + k if k > 0 else None
        for j in range(n - tail.period, n):
            t = _solve_multiple(_sub(pos, self.core[j]), tail.shift)
            if t is not None and t >= 1:
                return self.start + j + t * tail.period
        return None

    # -- structure -----------------------------------------------------------

    def is_window_edge(self, a: Pos, b: Pos) -> bool:
        ia = self.index_of(a)
        if ia is None:
            return False
        ib = self.index_of(b)
        if ib is None:
            return False
        if self.cyclic:
            return (ia - ib) % len(self.core) in (1, len(self.core) - 1)
        return abs(ia - ib) == 1

    def stretch(self, lo: int, hi: int) -> tuple[Pos, ...]:
        """Window vertices from index ``lo`` to ``hi`` inclusive."""
        if lo > hi:
            raise GridError("stretch wants lo <= hi")
        return tuple(self.eval(i) for i in range(lo, hi + 1))

    @property
    def core_start(self) -> int:
        return self.start

    @property
    def core_end(self) -> int:
        return self.start + len(self.core) - 1

    def y_range(self) -> tuple[int, int]:
        ys = [p[1] for p in self.core]
        return min(ys), max(ys)


def _solve_multiple(d: Vec, shift: Vec) -> int | None:
    """Return integer ``t`` with ``d == t * shift``, if any."""
    sx, sy = shift
    if sx:
        if d[0] % sx:
            return None
        t = d[0] // sx
        return t if t * sy == d[1] else None
    if d[0] != 0:
        return None
    if d[1] % sy:
        return None
    return d[1] // sy


# ---------------------------------------------------------------------------
# Cuts


def _free_edge_side(d: Vec, e: Vec, u: Vec) -> SideTag:
    """Side of a non-window edge leaving a window vertex, by the quarter-turn
    rule.

    ``d`` is the incoming window direction at the vertex, ``e`` the outgoing
    one and ``u`` the direction of the free edge.
    """
    if e == d:
        if u == rot_ccw(d):
            return SideTag.LEFT
        if u == rot_cw(d):
            return SideTag.RIGHT
        raise GridError("free edge parallel to a straight window")
    if e == rot_ccw(d):
        return SideTag.RIGHT
    if e == rot_cw(d):
        return SideTag.LEFT
    raise GridError("window backtracks")


class GridCut:
    """One of the four supported cuts of the grid.

    ``classify_vertex`` maps a position to LEFT / RIGHT / ON_WINDOW and
    ``classify_edge`` maps an edge to LEFT_ONLY / RIGHT_ONLY / WINDOW_EDGE.
    The meaning of LEFT per window kind is recorded in ``left_label``.
    """

    __slots__ = ("window", "kind", "spec", "left_label", "_ref", "_trivial")

    def __init__(
        self,
        window: Window,
        *,
        kind: str,
        spec: object = None,
        left_label: str = "",
        trivial_side: Callable[[tuple[int, int, int, int]], SideTag | None] | None = None,
    ) -> None:
        self.window = window
        self.kind = kind
        self.spec = spec
        self.left_label = left_label
        self._ref: tuple[Pos, SideTag] | None = None
        self._trivial = trivial_side

    # -- reference bootstrap --------------------------------------------------

    def _reference(self) -> tuple[Pos, SideTag]:
        if self._ref is not None:
            return self._ref
        win = self.window
        mid = win.core_start + len(win.core) // 2
        for d in range(4 * len(win.core) + 16):
            for i in (mid + d, mid - d) if d else (mid,):
                prev, here, nxt = win.eval(i - 1), win.eval(i), win.eval(i + 1)
                din, dout = _sub(here, prev), _sub(nxt, here)
                if dout == din:
                    candidates = (rot_ccw(din), rot_cw(din))
                else:
                    candidates = (din, _neg(dout))
                for u in candidates:
                    cell = _add(here, u)
                    if win.index_of(cell) is None:
                        self._ref = (cell, _free_edge_side(din, dout, u))
                        return self._ref
        raise GridError("could not bootstrap a reference cell off the window")

    # -- parity classification -------------------------------------------------

    def _crossings(self, q: Pos, r: Pos) -> int:
        """Window edges crossed by the canonical L-path from ``q`` to ``r``.

        The path runs vertically in column ``q.x`` then horizontally in row
        ``r.y``, with both legs perturbed a hair to the south-west so that
        every crossing is transversal.  Both endpoints must be off-window.
        """
        win = self.window
        qx, qy = q
        rx, ry = r
        total = 0
        ys = range(qy + 1, ry) if ry > qy else range(ry, qy)
        for y in ys:
            if win.is_window_edge((qx - 1, y), (qx, y)):
                total += 1
        xs = range(qx, rx) if rx > qx else range(rx + 1, qx)
        for x in xs:
            if win.is_window_edge((x, ry - 1), (x, ry)):
                total += 1
        return total

    def classify_vertex(self, pos: Pos) -> SideTag:
        if self.window.index_of(pos) is not None:
            return SideTag.ON_WINDOW
        if self._trivial is not None:
            quick = self._trivial((pos[0], pos[1], pos[0], pos[1]))
            if quick is not None:
                return quick
        ref, ref_side = self._reference()
        if pos == ref:
            return ref_side
        return ref_side if self._crossings(pos, ref) % 2 == 0 else ref_side.opposite

    def classify_edge(self, a: Pos, b: Pos) -> EdgeClass:
        if not _adjacent(a, b):
            raise GridError(f"not a grid edge: {a} -- {b}")
        win = self.window
        ia, ib = win.index_of(a), win.index_of(b)
        if ia is not None and ib is not None:
            if win.is_window_edge(a, b):
                return EdgeClass.WINDOW_EDGE
            side = self._window_edge_side(ia, _sub(b, a))
            other = self._window_edge_side(ib, _sub(a, b))
            if side is not other:
                raise GridError("inconsistent side for a doubly-anchored edge")
            return _SIDE_TO_EDGE[side]
        if ia is not None:
            return _SIDE_TO_EDGE[self.classify_vertex(b)]
        return _SIDE_TO_EDGE[self.classify_vertex(a)]

    def _window_edge_side(self, i: int, u: Vec) -> SideTag:
        win = self.window
        here = win.eval(i)
        din = _sub(here, win.eval(i - 1))
        dout = _sub(win.eval(i + 1), here)
        return _free_edge_side(din, dout, u)

    # -- convenience -----------------------------------------------------------

    def side_of(self, x: Pos | tuple[Pos, Pos]) -> SideTag | EdgeClass:
        if len(x) == 2 and isinstance(x[0], tuple):
            return self.classify_edge(*x)  # type: ignore[arg-type]
        return self.classify_vertex(x)  # type: ignore[arg-type]

    def vertex_on_side(self, pos: Pos, side: SideTag) -> bool:
        """Vertex membership in the closed side (window vertices count)."""
        tag = self.classify_vertex(pos)
        return tag is SideTag.ON_WINDOW or tag is side

    def edge_on_side(self, a: Pos, b: Pos, side: SideTag) -> bool:
        """Edge membership in the side subgraph (window edges count)."""
        tag = self.classify_edge(a, b)
        return tag is EdgeClass.WINDOW_EDGE or tag is _SIDE_TO_EDGE[side]

    def path_in_side(self, path: Sequence[Pos], side: SideTag) -> bool:
        return all(self.edge_on_side(a, b, side) for a, b in zip(path, path[1:]))

    def trivially_side(self, box: tuple[int, int, int, int]) -> SideTag | None:
        """Cheap absorbing test: the whole box lies strictly on one side and
        every translate of it further in the same direction stays there."""
        return self._trivial(box) if self._trivial is not None else None


def side_of(cut: GridCut, x: Pos | tuple[Pos, Pos]) -> SideTag | EdgeClass:
    """Classify a position or an edge against a cut."""
    return cut.side_of(x)


# ---------------------------------------------------------------------------
# The four cut constructors


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[Pos, ...]

    def __init__(self, vertices: object) -> None:
        object.__setattr__(self, "vertices", _as_positions(vertices))


@dataclass(frozen=True)
class Line:
    v: Vec
    h: int


@dataclass(frozen=True)
class GoodPathExtension:
    path: tuple[Pos, ...]

    def __init__(self, path: object) -> None:
        object.__setattr__(self, "path", _as_positions(path))


@dataclass(frozen=True)
class VisiblePath:
    path: tuple[Pos, ...]

    def __init__(self, path: object) -> None:
        object.__setattr__(self, "path", _as_positions(path))


CutSpec = Union[Cycle, Line, GoodPathExtension, VisiblePath]


def _signed_area2(cycle: Sequence[Pos]) -> int:
    total = 0
    for a, b in zip(cycle, cycle[1:] + type(cycle)([cycle[0]])):
        total += a[0] * b[1] - b[0] * a[1]
    return total


def _build_cycle_cut(spec: Cycle) -> GridCut:
    cells = spec.vertices
    if len(cells) < 4 or not _is_simple(cells):
        raise NonSimpleCycle("need at least 4 distinct vertices")
    for a, b in zip(cells, cells[1:] + (cells[0],)):
        if not _adjacent(a, b):
            raise NonSimpleCycle(f"cycle is not a lattice cycle: {a} !~ {b}")
    if _signed_area2(list(cells)) < 0:
        cells = (cells[0],) + tuple(reversed(cells[1:]))
    window = Window(cells, cyclic=True)
    x0, y0, x1, y1 = _bbox(cells)

    def trivial(box: tuple[int, int, int, int]) -> SideTag | None:
        if box[0] > x1 or box[2] < x0 or box[1] > y1 or box[3] < y0:
            return SideTag.RIGHT
        return None

    return GridCut(window, kind="cycle", spec=spec, left_label="enclosed interior", trivial_side=trivial)


def _line_cell(v: Vec, h: int, s: int) -> Pos:
    # The unique band cell on antidiagonal x + y = s.
    p = v[0] + v[1]
    x = (v[0] * s - h) // p
    return (x, s - x)


def _build_line_cut(spec: Line) -> GridCut:
    v, h = spec.v, spec.h
    if v == (0, 0):
        raise GridError("line direction must be nonzero")
    if not _normalized(v):
        raise GridError(f"line direction {v} is not normalized (want y>=1, or y==0 and x>0)")
    if v[0] < 0:
        raise GridError(
            f"line direction {v} points out of the first quadrant; "
            "reflect the instance before cutting"
        )
    p = v[0] + v[1]
    core = tuple(_line_cell(v, h, s) for s in range(0, p + 1))
    window = Window(
        core,
        start=0,
        west=PeriodicTail(shift=_neg(v), period=p),
        east=PeriodicTail(shift=v, period=p),
    )
    band_lo, band_hi = h, h + p  # window heights live in [band_lo, band_hi)

    def trivial(box: tuple[int, int, int, int]) -> SideTag | None:
        corners = [(box[0], box[1]), (box[0], box[3]), (box[2], box[1]), (box[2], box[3])]
        hs = [height(v, c) for c in corners]
        if min(hs) >= band_hi:
            return SideTag.LEFT
        if max(hs) < band_lo:
            return SideTag.RIGHT
        return None

    cut = GridCut(window, kind="line", spec=spec, left_label="upper part", trivial_side=trivial)
    return cut


def _extension_positions(path: Sequence[Pos], v: Vec, lo: int, hi: int) -> list[Pos]:
    """Vertices of the bi-infinite extension for indices in ``[lo, hi]``.

    Index ``0`` is ``path[0]`` and index ``len(path) - 1`` is ``path[-1]``;
    the pattern repeats with period ``len(path) - 1`` and shift ``v``.
    """
    ell = len(path) - 1
    out = []
    for i in range(lo, hi + 1):
        block, off = divmod(i, ell)
        out.append(_add(path[off], _mul(v, block)))
    return out


def _good_direction(path: Sequence[Pos], *, error: type[GridError] = NotGoodPath) -> Vec:
    """Validate geometric goodness and return the direction."""
    if len(path) < 2:
        raise error("a good path has at least two vertices")
    _check_lattice_path(path, "good path")
    if not _is_simple(path):
        raise error("good path must be simple")
    v = _sub(path[-1], path[0])
    if v == (0, 0):
        raise error("good path needs a nonzero direction")
    dom = set(path)
    overlap = dom & {_add(q, v) for q in path}
    if overlap != {path[-1]}:
        raise error(f"bad overlap with the translate: {sorted(overlap)}")
    # Farther translates must be disjoint; only finitely many can touch.
    x0, y0, x1, y1 = _bbox(path)
    span = max(x1 - x0, y1 - y0, 1)
    step = max(abs(v[0]), abs(v[1]))
    for k in range(2, span // step + 2):
        if dom & {_add(q, _mul(v, k)) for q in path}:
            raise error(f"extension self-intersects at translate {k}")
    return v


def _build_good_path_cut(spec: GoodPathExtension) -> GridCut:
    path = spec.path
    v = _good_direction(path)
    if not _normalized(v):
        path = tuple(reversed(path))
        v = _neg(v)
    ell = len(path) - 1
    core = tuple(_extension_positions(path, v, -ell, 2 * ell))
    window = Window(
        core,
        start=-ell,
        west=PeriodicTail(shift=_neg(v), period=ell),
        east=PeriodicTail(shift=v, period=ell),
    )
    hs = [height(v, q) for q in path]
    band_lo, band_hi = min(hs), max(hs)

    def trivial(box: tuple[int, int, int, int]) -> SideTag | None:
        corners = [(box[0], box[1]), (box[0], box[3]), (box[2], box[1]), (box[2], box[3])]
        bh = [height(v, c) for c in corners]
        if min(bh) > band_hi:
            return SideTag.LEFT
        if max(bh) < band_lo:
            return SideTag.RIGHT
        return None

    return GridCut(window, kind="good-path", spec=spec, left_label="upper part", trivial_side=trivial)


def _west_visible(path: Sequence[Pos]) -> bool:
    x0, y0 = path[0]
    return not any(q[1] == y0 and q[0] < x0 for q in path[1:])


def _east_visible(path: Sequence[Pos]) -> bool:
    x1, y1 = path[-1]
    return not any(q[1] == y1 and q[0] > x1 for q in path[:-1])


def _build_visible_cut(spec: VisiblePath) -> GridCut:
    path = spec.path
    if len(path) < 1:
        raise GridError("empty path")
    _check_lattice_path(path, "visible path")
    if not _is_simple(path):
        raise GridError("visible path must be simple")
    if not _west_visible(path):
        raise ExtremityNotVisible(f"first vertex {path[0]} is not west-visible")
    if not _east_visible(path):
        raise ExtremityNotVisible(f"last vertex {path[-1]} is not east-visible")
    window = Window(path, start=0, west=RayTail((-1, 0)), east=RayTail((1, 0)))
    wy0, wy1 = window.y_range()
    wx0 = min(q[0] for q in path)
    wx1 = max(q[0] for q in path)
    y_west, y_east = path[0][1], path[-1][1]

    def trivial(box: tuple[int, int, int, int]) -> SideTag | None:
        if box[1] > wy1:
            return SideTag.LEFT
        if box[3] < wy0:
            return SideTag.RIGHT
        if box[0] > wx1:
            if box[1] > y_east:
                return SideTag.LEFT
            if box[3] < y_east:
                return SideTag.RIGHT
        if box[2] < wx0:
            if box[1] > y_west:
                return SideTag.LEFT
            if box[3] < y_west:
                return SideTag.RIGHT
        return None

    return GridCut(window, kind="visible", spec=spec, left_label="north side", trivial_side=trivial)


def build_cut(spec: CutSpec) -> GridCut:
    """Cut the grid along one of the four supported windows."""
    if isinstance(spec, Cycle):
        return _build_cycle_cut(spec)
    if isinstance(spec, Line):
        return _build_line_cut(spec)
    if isinstance(spec, GoodPathExtension):
        return _build_good_path_cut(spec)
    if isinstance(spec, VisiblePath):
        return _build_visible_cut(spec)
    raise GridError(f"unknown cut spec: {spec!r}")


# ---------------------------------------------------------------------------
# Arcs and decompositions


@dataclass(frozen=True)
class Arc:
    """A subpath whose edges all lie on one side of a cut.

    ``path`` runs in the order of the decomposed path.  ``start_index`` and
    ``end_index`` are the extreme window indices met by the arc, so
    ``width == end_index - start_index >= 0``.
    """

    path: tuple[Pos, ...]
    side: SideTag
    start_index: int
    end_index: int
    p_range: tuple[int, int]
    orientation: Orientation | None
    extremum: bool
    basic: bool
    elementary: bool

    @property
    def width(self) -> int:
        return self.end_index - self.start_index

    @property
    def first(self) -> Pos:
        return self.path[0]

    @property
    def last(self) -> Pos:
        return self.path[-1]


@dataclass(frozen=True)
class WindowSegment:
    """The window stretch spanned by one arc: ``W[lo..hi]``."""

    lo: int
    hi: int
    vertices: tuple[Pos, ...]


@dataclass(frozen=True)
class DualSegment:
    """A window piece between consecutive arcs; the two outermost are rays.

    ``lo is None`` encodes the west-infinite dual and ``hi is None`` the
    east-infinite one.
    """

    lo: int | None
    hi: int | None
    orientation: Orientation | None

    @property
    def infinite(self) -> bool:
        return self.lo is None or self.hi is None


class ExtremumDecomposition:
    """Decomposition of a path into extremum arcs against one side of a cut."""

    def __init__(
        self,
        cut: GridCut,
        path: tuple[Pos, ...],
        side: SideTag,
        arcs: tuple[Arc, ...],
        segments: tuple[WindowSegment, ...],
        duals: tuple[DualSegment, ...],
        effective: tuple[int, int],
    ) -> None:
        self.cut = cut
        self.path = path
        self.side = side
        self.arcs = arcs
        self.segments = segments
        self.duals = duals
        self.effective = effective
        self._associated: GridCut | None = None

    def __len__(self) -> int:
        return len(self.arcs)

    def dual_vertices(self, i: int, *, pad: int = 0) -> tuple[Pos, ...]:
        """Vertices of dual ``i``; infinite duals are truncated after ``pad``
        extra cells beyond their finite endpoint."""
        d = self.duals[i]
        win = self.cut.window
        lo = d.lo if d.lo is not None else d.hi - pad
        hi = d.hi if d.hi is not None else d.lo + pad
        return win.stretch(lo, hi)

    @property
    def associated_cut(self) -> GridCut:
        """Cut along the window with every arc segment replaced by its arc."""
        if self._associated is None:
            replacements = []
            for arc, seg in zip(self.arcs, self.segments):
                cells = arc.path
                if arc.orientation is Orientation.NEGATIVE:
                    cells = tuple(reversed(cells))
                replacements.append((seg.lo, seg.hi, cells))
            window = _window_from_base(self.cut.window, replacements)
            self._associated = GridCut(
                window,
                kind=f"{self.cut.kind}+arcs",
                spec=self.cut.spec,
                left_label=self.cut.left_label,
            )
        return self._associated

    def is_positive(self) -> bool:
        """Index ordering of a positive decomposition: the traversal of every
        arc from low to high window index follows the path order, block by
        block."""
        last = -1
        index_of = {pos: i for i, pos in enumerate(self.path)}
        for arc in self.arcs:
            cells = arc.path
            if arc.orientation is Orientation.NEGATIVE:
                return False
            for pos in cells:
                i = index_of[pos]
                if i <= last:
                    return False
                last = i
        return True

    def reconstructs(self, *, margin: int = 4) -> bool:
        """Bit-exact window reconstruction ``W = D0 . (S1 u D1) ...`` over the
        finite stretch covered by the decomposition plus ``margin``."""
        win = self.cut.window
        lo = self.segments[0].lo - margin
        hi = self.segments[-1].hi + margin
        expect = win.stretch(lo, hi)
        got: list[Pos] = list(win.stretch(lo, self.segments[0].lo))
        for i, seg in enumerate(self.segments):
            got.extend(seg.vertices[1:])
            nxt = self.segments[i + 1].lo if i + 1 < len(self.segments) else hi
            got.extend(win.stretch(seg.hi, nxt)[1:])
        return tuple(got) == expect


def _side_edge_runs(cut: GridCut, path: Sequence[Pos], side: SideTag) -> list[tuple[int, int]]:
    """Maximal runs of path edges on the given side, as (first, last) vertex
    index pairs, plus singleton runs for covered but isolated vertices."""
    n = len(path)
    on_side_edge = [cut.edge_on_side(path[i], path[i + 1], side) for i in range(n - 1)]
    runs: list[tuple[int, int]] = []
    i = 0
    while i < n - 1:
        if on_side_edge[i]:
            j = i
            while j < n - 1 and on_side_edge[j]:
                j += 1
            runs.append((i, j))
            i = j
        else:
            i += 1
    covered = set()
    for a, b in runs:
        covered.update(range(a, b + 1))
    for i in range(n):
        if i in covered:
            continue
        if cut.window.index_of(path[i]) is not None:
            runs.append((i, i))
    runs.sort()
    return runs


def _extract_extremum(
    cut: GridCut, path: Sequence[Pos], run: tuple[int, int], side: SideTag
) -> tuple[int, int, int, int]:
    """From a run, the extremum sub-range: (p_lo, p_hi, w_start, w_end)."""
    win = cut.window
    hits = [(win.index_of(path[t]), t) for t in range(run[0], run[1] + 1)]
    hits = [(w, t) for w, t in hits if w is not None]
    if not hits:
        raise GridError("side run without window contact")
    w_start, t_start = min(hits)
    w_end, t_end = max(hits)
    return (min(t_start, t_end), max(t_start, t_end), w_start, w_end)


def _forbidden_orientation(
    win: Window, path: Sequence[Pos], t: int, idx: int
) -> Orientation | None:
    """Orientation of a width-zero arc (a single window vertex of the path)."""
    n = len(path)
    if n == 1:
        return None
    if t == 0:
        nxt = next(i for i in range(1, n) if win.index_of(path[i]) is not None)
        j = win.index_of(path[nxt])
        return Orientation.POSITIVE if j > idx else Orientation.NEGATIVE
    if t == n - 1:
        prv = next(i for i in range(n - 2, -1, -1) if win.index_of(path[i]) is not None)
        j = win.index_of(path[prv])
        return Orientation.NEGATIVE if j > idx else Orientation.POSITIVE
    a = _sub(win.eval(idx + 1), win.eval(idx))
    b = _sub(win.eval(idx - 1), win.eval(idx))
    c = _sub(path[t + 1], path[t])
    d = _sub(path[t - 1], path[t])
    negative = b == rot_ccw(a) and c == _neg(a) and d == _neg(b)
    return Orientation.NEGATIVE if negative else Orientation.POSITIVE


def _arc_flags(cut: GridCut, cells: Sequence[Pos], w_start: int, w_end: int) -> tuple[bool, bool]:
    """(basic, elementary) for an arc spanning window indices [w_start, w_end]."""
    win = cut.window
    hits = sum(1 for q in cells if win.index_of(q) is not None)
    elementary = hits == (2 if len(cells) > 1 else 1)
    cellset = set(cells)
    between = sum(1 for i in range(w_start, w_end + 1) if win.eval(i) in cellset)
    basic = between == (2 if w_start != w_end else 1)
    return basic, elementary


def path_orientation(cut: GridCut, path: object) -> Orientation:
    """Sign of a path touching the window: POSITIVE when the contact of
    lowest window index comes before the contact of highest index in path
    order.  Undefined (PreconditionViolated) for paths of width zero."""
    p = _as_positions(path)
    _check_lattice_path(p)
    win = cut.window
    hits = [(w, t) for t, q in enumerate(p) if (w := win.index_of(q)) is not None]
    if not hits:
        raise PathTouchesWindowNowhere("path never touches the window")
    (w_lo, t_lo), (w_hi, t_hi) = min(hits), max(hits)
    if w_lo == w_hi:
        raise PreconditionViolated("orientation undefined for width-zero paths")
    return Orientation.POSITIVE if t_lo < t_hi else Orientation.NEGATIVE


def decompose_extremum_arcs(
    cut: GridCut, path: object, side: SideTag = SideTag.LEFT
) -> ExtremumDecomposition:
    """Unique decomposition of a simple path into extremum arcs of one side.

    The path is first trimmed to the stretch between its first and last
    window contact; arcs are maximal side-edge runs (window edges belong to
    both sides) reduced to the stretch between their extreme window indices,
    with nested arcs removed.  The remaining arcs are strictly consecutive.
    """
    if side is SideTag.ON_WINDOW:
        raise GridError("decompose against LEFT or RIGHT")
    if cut.window.cyclic:
        raise GridError("decomposition needs a bi-infinite window")
    p = _as_positions(path)
    _check_lattice_path(p)
    if not _is_simple(p):
        raise GridError("decomposition wants a simple path")
    win = cut.window
    hit_ts = [t for t, q in enumerate(p) if win.index_of(q) is not None]
    if not hit_ts:
        raise PathTouchesWindowNowhere("no vertex of the path lies on the window")
    lo, hi = hit_ts[0], hit_ts[-1]
    peff = p[lo : hi + 1]

    runs = _side_edge_runs(cut, peff, side)
    extracted = [_extract_extremum(cut, peff, run, side) for run in runs]
    # Drop arcs dominated by another (nested window-index ranges).
    kept = []
    for i, (_, _, s, e) in enumerate(extracted):
        dominated = any(
            (s2 <= s and e <= e2) for j, (_, _, s2, e2) in enumerate(extracted) if j != i
        )
        if not dominated:
            kept.append(extracted[i])
    kept.sort(key=lambda r: r[2])

    arcs: list[Arc] = []
    segments: list[WindowSegment] = []
    for p_lo, p_hi, w_start, w_end in kept:
        cells = peff[p_lo : p_hi + 1]
        if w_start == w_end:
            orient = _forbidden_orientation(win, peff, p_lo, w_start)
        else:
            t_start = peff.index(win.eval(w_start), p_lo, p_hi + 1)
            t_end = peff.index(win.eval(w_end), p_lo, p_hi + 1)
            orient = Orientation.POSITIVE if t_start < t_end else Orientation.NEGATIVE
        basic, elem = _arc_flags(cut, cells, w_start, w_end)
        arcs.append(
            Arc(
                path=cells,
                side=side,
                start_index=w_start,
                end_index=w_end,
                p_range=(lo + p_lo, lo + p_hi),
                orientation=orient,
                extremum=True,
                basic=basic,
                elementary=elem,
            )
        )
        segments.append(WindowSegment(w_start, w_end, win.stretch(w_start, w_end)))

    index_in_p = {pos: t for t, pos in enumerate(peff)}
    duals: list[DualSegment] = [DualSegment(None, arcs[0].start_index, None)]
    for a, b in zip(arcs, arcs[1:]):
        pa = index_in_p[win.eval(a.end_index)]
        pb = index_in_p[win.eval(b.start_index)]
        duals.append(
            DualSegment(
                a.end_index,
                b.start_index,
                Orientation.POSITIVE if pa < pb else Orientation.NEGATIVE,
            )
        )
    duals.append(DualSegment(arcs[-1].end_index, None, None))
    return ExtremumDecomposition(
        cut=cut,
        path=p,
        side=side,
        arcs=tuple(arcs),
        segments=tuple(segments),
        duals=tuple(duals),
        effective=(lo, hi),
    )


def orientation(item: Arc | DualSegment, context: ExtremumDecomposition | None = None) -> Orientation:
    """Orientation of an arc or dual segment from a decomposition."""
    if item.orientation is None:
        raise PreconditionViolated(
            "orientation undefined here (outer dual or unoriented width-zero arc)"
        )
    return item.orientation


def _window_from_base(
    base: Window, replacements: Sequence[tuple[int, int, tuple[Pos, ...]]]
) -> Window:
    """Copy of ``base`` with index stretches ``[lo, hi]`` replaced by paths.

    Replacement paths must connect ``base.eval(lo)`` to ``base.eval(hi)``.
    Tails are inherited; the result is re-indexed so the west ends agree.
    """
    if base.cyclic:
        raise GridError("cannot rebuild a cyclic window")
    reps = sorted(replacements)
    for (l1, h1, _), (l2, h2, _) in zip(reps, reps[1:]):
        if h1 >= l2:
            raise GridError("replacement stretches overlap")
    for lo, hi, cells in reps:
        if cells[0] != base.eval(lo) or cells[-1] != base.eval(hi):
            raise GridError("replacement does not join the window")
    pad_w = base.west.period if isinstance(base.west, PeriodicTail) else 0
    pad_e = base.east.period if isinstance(base.east, PeriodicTail) else 0
    a = min(base.core_start, reps[0][0]) - pad_w
    b = max(base.core_end, reps[-1][1]) + pad_e
    cells_out: list[Pos] = []
    i = a
    rep_iter = iter(reps)
    nxt = next(rep_iter, None)
    while i <= b:
        if nxt is not None and i == nxt[0]:
            cells_out.extend(nxt[2])
            i = nxt[1] + 1
            nxt = next(rep_iter, None)
        else:
            cells_out.append(base.eval(i))
            i += 1
    return Window(cells_out, start=a, west=base.west, east=base.east)


# ---------------------------------------------------------------------------
# Interiors


@dataclass(frozen=True)
class Interior:
    """Vertex region bounded by an arc/dual and its window counterpart.

    ``vertices`` is None for the two infinite outer duals, whose interior is
    the whole far side of the path-associated cut; ``contains`` works for
    both shapes.
    """

    finite: bool
    vertices: frozenset[Pos] | None
    _predicate: Callable[[Pos], bool] | None = field(default=None, repr=False)

    def contains(self, pos: Pos) -> bool:
        if self.vertices is not None:
            return pos in self.vertices
        assert self._predicate is not None
        return self._predicate(pos)

    def __contains__(self, pos: Pos) -> bool:
        return self.contains(pos)


def _curve_edge_counts(curve: Sequence[Pos]) -> tuple[dict, dict]:
    """Multiset of closed-curve edges: horizontal keyed by west cell,
    vertical keyed by south cell.  Doubled edges count twice and therefore
    drop out of crossing parity, as they should."""
    horiz: dict[Pos, int] = {}
    vert: dict[Pos, int] = {}
    for a, b in zip(curve, list(curve[1:]) + [curve[0]]):
        if a[1] == b[1]:
            key = a if a[0] < b[0] else b
            horiz[key] = horiz.get(key, 0) + 1
        else:
            key = a if a[1] < b[1] else b
            vert[key] = vert.get(key, 0) + 1
    return horiz, vert


def _curve_crossings(q: Pos, r: Pos, horiz: dict, vert: dict) -> int:
    """Curve edges crossed by the canonical L-path between two cells.

    Unlike window classification, the endpoints here may lie on the curve
    (they are used as pass-through parity accumulators), so the ranges keep
    the endpoint dominoes: with both legs nudged to the south-west, the leg
    from ``q`` up to ``r`` already crosses the domino at ``q``'s own row.
    """
    qx, qy = q
    rx, ry = r
    total = 0
    ys = range(qy, ry) if ry > qy else range(ry, qy)
    for y in ys:
        total += horiz.get((qx - 1, y), 0)
    xs = range(qx, rx) if rx > qx else range(rx, qx)
    for x in xs:
        total += vert.get((x, ry - 1), 0)
    return total


def _enclosed_cells(curve: Sequence[Pos]) -> set[Pos]:
    """Cells strictly enclosed by a closed lattice curve (may repeat edges)."""
    horiz, vert = _curve_edge_counts(curve)
    on_curve = set(curve)
    x0, y0, x1, y1 = _bbox(curve)
    out: set[Pos] = set()
    for x in range(x0, x1 + 1):
        # The cell just above the bounding box is outside; march south down
        # the column, flipping parity at every horizontal curve domino.
        parity = 0
        for y in range(y1, y0 - 1, -1):
            step = horiz.get((x - 1, y), 0)
            parity ^= step & 1
            if (x, y) not in on_curve and parity:
                out.add((x, y))
    return out


def _segment_between(win: Window, i: int, j: int) -> tuple[Pos, ...]:
    lo, hi = (i, j) if i <= j else (j, i)
    cells = win.stretch(lo, hi)
    return cells if i <= j else tuple(reversed(cells))


def _lens_interior(win: Window, arc_cells: Sequence[Pos], w_start: int, w_end: int) -> frozenset[Pos]:
    """Interior of an extremum arc: cells enclosed between the arc and its
    window segment, plus both boundaries."""
    seg = win.stretch(w_start, w_end)
    first, last = arc_cells[0], arc_cells[-1]
    if first == seg[0] and last == seg[-1]:
        back = tuple(reversed(seg))
    elif first == seg[-1] and last == seg[0]:
        back = seg
    else:
        raise GridError("arc does not join its window segment")
    curve = tuple(arc_cells) + back[1:-1]
    if len(curve) < 2:
        return frozenset(arc_cells)
    enclosed = _enclosed_cells(curve)
    return frozenset(enclosed | set(arc_cells) | set(seg))


def _restrained_interior(cycle_a: Sequence[Pos], cycle_b: Sequence[Pos]) -> frozenset[Pos]:
    """Enclosed cells plus boundary of the simple cycle ``a . reversed(b)``.

    Both pieces share their two endpoints and are otherwise disjoint.
    """
    if cycle_a[0] != cycle_b[0] or cycle_a[-1] != cycle_b[-1]:
        raise GridError("pieces do not share endpoints")
    curve = tuple(cycle_a) + tuple(reversed(cycle_b))[1:-1]
    enclosed = _enclosed_cells(curve)
    return frozenset(enclosed | set(cycle_a) | set(cycle_b))


def _path_associated_cut(dec: ExtremumDecomposition) -> GridCut:
    """Cut along the window with the whole extremum path of ``dec.path``
    spliced in (used for the two infinite dual interiors)."""
    win = dec.cut.window
    lo_t, hi_t = dec.effective
    peff = dec.path[lo_t : hi_t + 1]
    hits = [(win.index_of(q), t) for t, q in enumerate(peff) if win.index_of(q) is not None]
    w_lo, t_lo = min(hits)
    w_hi, t_hi = max(hits)
    a, b = (t_lo, t_hi) if t_lo <= t_hi else (t_hi, t_lo)
    cells = peff[a : b + 1]
    if t_lo > t_hi:
        cells = tuple(reversed(cells))
    window = _window_from_base(win, [(w_lo, w_hi, tuple(cells))])
    return GridCut(window, kind=f"{dec.cut.kind}+path", spec=dec.cut.spec, left_label=dec.cut.left_label)


def interior(
    cut: GridCut, owner: Arc | DualSegment, decomposition: ExtremumDecomposition
) -> Interior:
    """Interior of an extremum arc or of a dual segment of a decomposition.

    Arc interiors and inner dual interiors are finite vertex sets; the two
    outer duals share the far side of the path-associated cut, which is
    infinite and exposed through ``contains`` only.
    """
    win = cut.window
    if isinstance(owner, Arc):
        if not owner.extremum:
            raise NotExtremum("interior is defined for extremum arcs")
        return Interior(True, _lens_interior(win, owner.path, owner.start_index, owner.end_index))
    if not isinstance(owner, DualSegment):
        raise GridError(f"no interior for {owner!r}")
    if owner.infinite:
        far = _path_associated_cut(decomposition)

        def predicate(pos: Pos) -> bool:
            return far.classify_vertex(pos) is not SideTag.LEFT

        return Interior(False, None, predicate)
    # Inner dual: restrained interior of the path stretch joining its ends.
    index_in_p = {pos: t for t, pos in enumerate(decomposition.path)}
    d_cells = win.stretch(owner.lo, owner.hi)
    ta = index_in_p.get(d_cells[0])
    tb = index_in_p.get(d_cells[-1])
    if ta is None or tb is None:
        raise GridError("dual endpoints are not on the path")
    a, b = (ta, tb) if ta <= tb else (tb, ta)
    stretch = decomposition.path[a : b + 1]
    if stretch[0] != d_cells[0]:
        d_cells = tuple(reversed(d_cells))
    return Interior(True, _restrained_interior(stretch, d_cells))


# ---------------------------------------------------------------------------
# Splitting one side with a periodic ray


def _extension_walker(path: Sequence[Pos], v: Vec) -> Iterator[tuple[int, tuple[Pos, ...]]]:
    """Translate copies of the path: yields (k, path + k*v) for k = 0, 1, ..."""
    for k in itertools.count():
        yield k, tuple(_add(q, _mul(v, k)) for q in path)


_SPLIT_CAP = 4096


@dataclass(frozen=True)
class SplitPart:
    """One of the two pieces of a split side, as a lazy vertex/edge region."""

    cut: GridCut
    label: str

    def contains(self, pos: Pos) -> bool:
        return self.cut.classify_vertex(pos) is not SideTag.RIGHT

    def contains_edge(self, a: Pos, b: Pos) -> bool:
        return self.cut.classify_edge(a, b) is not EdgeClass.RIGHT_ONLY

    def path_inside(self, path: Sequence[Pos]) -> bool:
        if len(path) == 1:
            return self.contains(path[0])
        return all(self.contains_edge(a, b) for a, b in zip(path, path[1:]))


class CutSplit:
    """The two pieces obtained by splitting one side with a periodic ray."""

    def __init__(
        self,
        cut: GridCut,
        side: SideTag,
        path: tuple[Pos, ...],
        v: Vec,
        at: int,
        minus: SplitPart,
        plus: SplitPart,
    ) -> None:
        self.cut = cut
        self.side = side
        self.path = path
        self.v = v
        self.at = at
        self.minus = minus
        self.plus = plus

    def __iter__(self) -> Iterator[SplitPart]:
        return iter((self.minus, self.plus))


def _split_window_plus(base: Window, ext: Sequence[Pos], at: int, period: int, v: Vec) -> Window:
    """Boundary of the plus piece: down the extension, then east along W."""
    pad_e = base.east.period + 1 if isinstance(base.east, PeriodicTail) else 1
    east_hi = max(base.core_end, at + 1) + pad_e
    core = tuple(reversed(ext[: period + 1])) + tuple(
        base.eval(i) for i in range(at + 1, east_hi + 1)
    )
    return Window(core, start=-period, west=PeriodicTail(shift=v, period=period), east=base.east)


def _split_window_minus(base: Window, ext: Sequence[Pos], at: int, period: int, v: Vec) -> Window:
    """Boundary of the minus piece: west along W, then up the extension."""
    pad_w = base.west.period + 1 if isinstance(base.west, PeriodicTail) else 1
    west_lo = min(base.core_start, at - 1) - pad_w
    core = tuple(base.eval(i) for i in range(west_lo, at)) + tuple(ext[: period + 1])
    return Window(core, start=west_lo, west=base.west, east=PeriodicTail(shift=v, period=period))


def split_cut(cut: GridCut, c: object, at: int | None = None, side: SideTag = SideTag.LEFT) -> CutSplit:
    """Split one side of a cut along the forward extension of a good path.

    The path must start on the window (at index ``at``, checked when given)
    and its extension must stay inside the side, meeting the window only at
    that one start vertex.  The minus piece keeps ``W`` below ``at``, the
    plus piece keeps ``W`` above; both contain the extension.
    """
    cpos = _as_positions(c)
    v = _good_direction(cpos, error=PreconditionViolated)
    win = cut.window
    at_found = win.index_of(cpos[0])
    if at_found is None:
        raise MultipleWindowHits("splitting path must start on the window")
    if at is not None and at != at_found:
        raise MultipleWindowHits(f"path starts at window index {at_found}, not {at}")
    at = at_found
    hits = [q for q in cpos if win.index_of(q) is not None]
    if hits != [cpos[0]]:
        raise MultipleWindowHits(f"path meets the window at {hits}")
    if win.cyclic:
        raise GridError("splitting needs a bi-infinite window")

    period = len(cpos) - 1
    for k, copy in _extension_walker(cpos, v):
        if k > _SPLIT_CAP:
            raise GridError("split validation did not stabilize")
        box = _bbox(copy)
        if k > 0 and cut.trivially_side(box) is side:
            break
        start = 1 if k > 0 else 0
        for i in range(start, len(copy)):
            q = copy[i]
            tag = cut.classify_vertex(q)
            if tag is SideTag.ON_WINDOW:
                if k == 0 and i == 0:
                    continue
                raise MultipleWindowHits(f"extension meets the window again at {q}")
            if tag is not side:
                raise PathLeavesSide(f"extension leaves the side at {q}")
        for a, b in zip(copy, copy[1:]):
            if not cut.edge_on_side(a, b, side):
                raise PathLeavesSide(f"extension edge {a} -- {b} leaves the side")

    ext = _extension_positions(cpos, v, 0, 3 * period)
    plus_win = _split_window_plus(win, ext, at, period, v)
    minus_win = _split_window_minus(win, ext, at, period, v)
    plus_cut = GridCut(plus_win, kind="split-plus", spec=cut.spec, left_label="plus pocket")
    minus_cut = GridCut(minus_win, kind="split-minus", spec=cut.spec, left_label="minus pocket")
    return CutSplit(
        cut,
        side,
        cpos,
        v,
        at,
        SplitPart(minus_cut, "minus"),
        SplitPart(plus_cut, "plus"),
    )


# ---------------------------------------------------------------------------
# Elementary decomposition of a positive extremum arc


@dataclass(frozen=True)
class ElementaryDecomposition:
    """A positive extremum arc as window stretches glued to elementary arcs.

    ``arc == leading . A1 . D1 . A2 ... A_ell . trailing`` where the duals
    and the outer stretches all run along the window.
    """

    arcs: tuple[Arc, ...]
    duals: tuple[tuple[Pos, ...], ...]
    leading: tuple[Pos, ...]
    trailing: tuple[Pos, ...]

    def reconstruct(self) -> tuple[Pos, ...]:
        out: list[Pos] = list(self.leading)
        for i, arc in enumerate(self.arcs):
            out.extend(arc.path[1:])
            if i < len(self.duals):
                out.extend(self.duals[i][1:])
        out.extend(self.trailing[1:])
        return tuple(out)


def _arc_input(cut: GridCut, a: object, side: SideTag | None) -> tuple[tuple[Pos, ...], SideTag]:
    if isinstance(a, Arc):
        return a.path, a.side
    cells = _as_positions(a)
    if side is None:
        for q, r in zip(cells, cells[1:]):
            tag = cut.classify_edge(q, r)
            if tag is not EdgeClass.WINDOW_EDGE:
                side = _EDGE_TO_SIDE[tag]
                break
        else:
            side = SideTag.LEFT
    return cells, side


def decompose_elementary_arcs(
    cut: GridCut, a: object, side: SideTag | None = None
) -> ElementaryDecomposition:
    """Split a positive extremum arc into positive elementary arcs.

    Walk the arc; each departure from the window opens an elementary arc
    that closes at the next return.  What lies between two elementary arcs
    is a window stretch (possibly a single shared vertex).
    """
    cells, side = _arc_input(cut, a, side)
    win = cut.window
    _check_lattice_path(cells, "arc")
    if not _is_simple(cells):
        raise GridError("arc must be simple")
    for q, r in zip(cells, cells[1:]):
        if not cut.edge_on_side(q, r, side):
            raise GridError("input is not an arc of the requested side")
    idx_first = win.index_of(cells[0])
    idx_last = win.index_of(cells[-1])
    if idx_first is None or idx_last is None:
        raise NotExtremum("arc endpoints must lie on the window")
    hit_idx = [win.index_of(q) for q in cells]
    known = [i for i in hit_idx if i is not None]
    if min(known) != min(idx_first, idx_last) or max(known) != max(idx_first, idx_last):
        raise NotExtremum("arc endpoints are not its extreme window indices")
    if idx_first > idx_last:
        raise NotPositive("arc runs from high window index to low")
    if idx_first == idx_last:
        raise NotExtremum("width-zero arc has no elementary decomposition")

    n = len(cells)
    departures = [
        j
        for j in range(n - 1)
        if hit_idx[j] is not None and not win.is_window_edge(cells[j], cells[j + 1])
    ]
    if not departures:
        return ElementaryDecomposition(arcs=(), duals=(), leading=tuple(cells), trailing=(cells[-1],))
    arcs: list[Arc] = []
    duals: list[tuple[Pos, ...]] = []
    j_prev_end: int | None = None
    for j_start in departures:
        j_end = next(j for j in range(j_start + 1, n) if hit_idx[j] is not None)
        piece = cells[j_start : j_end + 1]
        w_lo, w_hi = hit_idx[j_start], hit_idx[j_end]
        if w_lo >= w_hi:
            raise NotPositive("elementary piece runs backwards along the window")
        basic, elem = _arc_flags(cut, piece, w_lo, w_hi)
        arcs.append(
            Arc(
                path=tuple(piece),
                side=side,
                start_index=w_lo,
                end_index=w_hi,
                p_range=(j_start, j_end),
                orientation=Orientation.POSITIVE,
                extremum=True,
                basic=basic,
                elementary=True,
            )
        )
        if j_prev_end is not None:
            duals.append(tuple(cells[j_prev_end : j_start + 1]))
        j_prev_end = j_end
    leading = tuple(cells[: departures[0] + 1])
    trailing = tuple(cells[j_prev_end:])
    dec = ElementaryDecomposition(arcs=tuple(arcs), duals=tuple(duals), leading=leading, trailing=trailing)
    if dec.reconstruct() != tuple(cells):
        raise GridError("elementary decomposition failed to reconstruct the arc")
    return dec


# ---------------------------------------------------------------------------
# Shrinking


def _interior_edge_count(region: frozenset[Pos]) -> int:
    total = 0
    for x, y in region:
        if (x + 1, y) in region:
            total += 1
        if (x, y + 1) in region:
            total += 1
    return total


def shrink_basic_path(cut: GridCut, p: object, side: SideTag | None = None) -> Arc:
    """Replace a basic path by a basic arc with a smaller restrained interior.

    The path must run from the higher to the lower of its two extreme window
    indices (every other window contact lies beyond the start index) and its
    last edge must lie on the target side.  When the path is not already an
    arc, the result additionally meets the window strictly beyond the start
    index.
    """
    cells = _as_positions(p)
    _check_lattice_path(cells, "basic path")
    if not _is_simple(cells):
        raise NotBasic("path must be simple")
    win = cut.window
    i1 = win.index_of(cells[0])
    i2 = win.index_of(cells[-1])
    if i1 is None or i2 is None:
        raise NotBasic("path endpoints must lie on the window")
    if i2 >= i1:
        raise NotBasic("path must end at its minimal window index")
    hits = [(t, win.index_of(q)) for t, q in enumerate(cells) if win.index_of(q) is not None]
    for t, w in hits:
        if t not in (0, len(cells) - 1) and w <= i1:
            raise NotBasic(f"window contact at index {w} inside the spanned stretch")
    if any(w < i2 for _, w in hits):
        raise NotBasic("a window contact lies below the final index")
    last_edge = cut.classify_edge(cells[-2], cells[-1])
    if side is None:
        if last_edge is EdgeClass.WINDOW_EDGE:
            raise NotBasic("last edge lies on the window; pass the side explicitly")
        side = _EDGE_TO_SIDE[last_edge]
    elif not (last_edge is EdgeClass.WINDOW_EDGE or _EDGE_TO_SIDE.get(last_edge) is side):
        raise NotBasic("last edge does not lie on the target side")

    n = len(cells)
    i4 = max(t for t, _ in hits if t < n - 1)
    tail = cells[i4:]
    if i4 == 0:
        return _as_basic_arc(cut, cells, side)
    dec = decompose_extremum_arcs(cut, cells[: i4 + 1], side)
    j = next(
        (k for k, arc in enumerate(dec.arcs) if arc.path[-1] == cells[i4]),
        None,
    )
    if j is None:
        raise NotBasic("no extremum arc ends at the last interior window contact")
    if j == 0:
        return _as_basic_arc(cut, cells, side)
    out: list[Pos] = []
    for k in range(j):
        arc = dec.arcs[k]
        if arc.orientation is not Orientation.POSITIVE:
            raise NotBasic("leading arcs of the shrink input must be positive")
        out.extend(arc.path if not out else arc.path[1:])
        d = dec.duals[k + 1]
        out.extend(win.stretch(d.lo, d.hi)[1:])
    if dec.arcs[j].orientation is Orientation.POSITIVE:
        out.extend(dec.arcs[j].path[1:])
    if out[-1] != tail[0]:
        raise NotBasic("shrink pieces do not join up")
    out.extend(tail[1:])
    return _as_basic_arc(cut, tuple(out), side)


def _as_basic_arc(cut: GridCut, cells: Sequence[Pos], side: SideTag) -> Arc:
    _check_lattice_path(cells, "arc")
    if not _is_simple(cells):
        raise GridError("shrink produced a non-simple path")
    win = cut.window
    for q, r in zip(cells, cells[1:]):
        if not cut.edge_on_side(q, r, side):
            raise GridError("shrink produced an off-side edge")
    idx = [win.index_of(q) for q in cells]
    w0, w1 = idx[0], idx[-1]
    known = [i for i in idx if i is not None]
    lo, hi = min(w0, w1), max(w0, w1)
    basic, elem = _arc_flags(cut, cells, lo, hi)
    return Arc(
        path=tuple(cells),
        side=side,
        start_index=min(known),
        end_index=max(known),
        p_range=(0, len(cells) - 1),
        orientation=Orientation.POSITIVE if idx[0] == min(known) and w0 != w1 else None,
        extremum=(min(known), max(known)) == (min(w0, w1), max(w0, w1)),
        basic=basic,
        elementary=elem,
    )


@dataclass(frozen=True)
class ExtensionFits:
    """Every translate of the arc stays inside the plus piece."""


@dataclass(frozen=True)
class Replacement:
    """A rebuilt good path whose extension fits the plus piece.

    ``new_index`` is a base-window index beyond the split point met by the
    extension at or after one full period, at the position
    ``new_height_witness``.
    """

    path: tuple[Pos, ...]
    new_index: int
    new_height_witness: Pos


def _min_y(cells: Iterable[Pos]) -> int:
    return min(q[1] for q in cells)


def _wleg_y_top(win: Window, at: int) -> int | None:
    """Max ``y`` over window cells at indices ``>= at``, or None if unbounded.

    Above this row the pocket boundary reduces to the extension alone, so a
    translate living strictly higher is inside the pocket iff it is on the
    right of the extension window -- which is translation invariant.
    """
    hi = win.core_end
    ys = [win.eval(i)[1] for i in range(min(at, hi), hi + 1)]
    tail = win.east
    if isinstance(tail, RayTail):
        ys.append(win.eval(hi + 1)[1])
    else:
        if tail.shift[1] > 0:
            return None
        ys.extend(win.eval(i)[1] for i in range(hi + 1, hi + tail.period + 1))
    return max(ys)


def _translate_fits(
    part: SplitPart,
    ext_cut: GridCut,
    piece: Sequence[Pos],
    v: Vec,
    y_top: int | None,
) -> int | None:
    """Smallest k >= 0 for which ``piece + k*v`` leaves the plus piece, or
    None when every translate fits.

    The extension-window side of the piece is translation invariant, so once
    a translate rises strictly above every pocket cell of the base window the
    remaining translates fit automatically.
    """
    if not ext_cut.path_in_side(piece, SideTag.RIGHT):
        return 0
    for k, copy in _extension_walker(piece, v):
        if k > _SPLIT_CAP:
            raise GridError("translate check did not stabilize")
        if y_top is not None and _min_y(copy) > y_top:
            return None
        if not part.path_inside(copy):
            return k
    return None


def _restrained_of(cut_k: GridCut, cells: Sequence[Pos]) -> frozenset[Pos]:
    """Restrained interior of a basic path against its own window stretch."""
    win = cut_k.window
    i0 = win.index_of(cells[0])
    i1 = win.index_of(cells[-1])
    if i0 is None or i1 is None:
        raise GridError("restrained interior wants both endpoints on the window")
    seg = win.stretch(min(i0, i1), max(i0, i1))
    if seg[0] != cells[0]:
        seg = tuple(reversed(seg))
    return _restrained_interior(cells, seg)


def shrink_to_split(cut: GridCut, split: CutSplit, c: object, a: object) -> ExtensionFits | Replacement:
    """Rebuild a good arc of the plus piece so its extension fits inside.

    ``c`` is the good path whose extension produced the split; ``a`` is a
    good arc of the plus piece with the same endpoints and direction.  Each
    elementary piece of ``a`` relative to the extension window is shrunk
    until all its translates fit, and the pieces are reassembled.  If
    nothing had to shrink, the extension of ``a`` already fits.
    """
    cpos = _as_positions(c)
    apos = _as_positions(a)
    if cpos != split.path:
        raise PreconditionViolated("split was built from a different path")
    v = split.v
    if v[1] < 1:
        raise PreconditionViolated("shrink surgery needs a rising direction")
    va = _good_direction(apos, error=PreconditionViolated)
    if va != v:
        raise PreconditionViolated(f"arc direction {va} differs from split direction {v}")
    if apos[0] != cpos[0] or apos[-1] != cpos[-1]:
        raise PreconditionViolated("arc must share both endpoints with the split path")
    if not split.plus.path_inside(apos):
        raise PreconditionViolated("arc is not a subgraph of the plus piece")

    ext_cut = build_cut(GoodPathExtension(cpos))
    ext_win = ext_cut.window
    period = len(cpos) - 1
    if ext_win.index_of(apos[0]) != 0 or ext_win.index_of(apos[-1]) != period:
        raise PreconditionViolated("extension window indexing is off")
    try:
        elem = decompose_elementary_arcs(ext_cut, apos, SideTag.RIGHT)
    except (NotExtremum, NotPositive, GridError) as exc:
        raise PreconditionViolated(f"arc does not decompose against the extension: {exc}") from exc

    base_win = cut.window
    y_top = _wleg_y_top(base_win, split.at)
    floor = min(_min_y(cpos), _min_y(apos))

    shrunk = False
    new_arcs: list[tuple[Pos, ...]] = []
    for piece_arc in elem.arcs:
        piece = piece_arc.path
        while True:
            k = _translate_fits(split.plus, ext_cut, piece, v, y_top)
            if k is None:
                break
            if k == 0:
                raise PreconditionViolated("elementary piece leaves the plus piece untranslated")
            moved = tuple(_add(q, _mul(v, k)) for q in piece)
            arc_k = shrink_basic_path(split.plus.cut, moved, SideTag.LEFT)
            before = _restrained_of(split.plus.cut, moved)
            after = _restrained_of(split.plus.cut, arc_k.path)
            if (_interior_edge_count(after), len(after)) >= (
                _interior_edge_count(before),
                len(before),
            ):
                raise GridError("shrink step did not make progress")
            back = tuple(_add(q, _mul(v, -k)) for q in arc_k.path)
            if not ext_cut.path_in_side(back, SideTag.RIGHT):
                raise GridError("shrunk piece left the extension side")
            piece = back
            shrunk = True
        new_arcs.append(piece)

    if not shrunk:
        return ExtensionFits()

    out: list[Pos] = list(elem.leading)
    for i, piece in enumerate(new_arcs):
        out.extend(piece[1:])
        if i < len(elem.duals):
            out.extend(elem.duals[i][1:])
    out.extend(elem.trailing[1:])
    r = tuple(out)
    _good_direction(r, error=PreconditionViolated)
    if not split.plus.path_inside(r):
        raise GridError("rebuilt path left the plus piece")

    # Locate the promised fresh window contact of the extension of R: a base
    # index beyond the split point, met at or after one full period of R, at
    # least one step of rise above the lowest row of the inputs.
    at = split.at
    for k, copy in _extension_walker(r, v):
        if k > _SPLIT_CAP:
            raise GridError("no fresh window contact found")
        if k == 0:
            continue
        if cut.trivially_side(_bbox(copy)) is split.side:
            raise GridError("extension escaped without a fresh window contact")
        for j, q in enumerate(copy):
            w = base_win.index_of(q)
            if w is not None and w > at and q[1] >= floor + v[1]:
                return Replacement(path=r, new_index=w, new_height_witness=q)
    raise GridError("unreachable")


# ---------------------------------------------------------------------------
# Reports


def decomposition_report(dec: ExtremumDecomposition) -> list[str]:
    """Flat ``KEY=VALUE`` lines describing a decomposition."""
    sign = {Orientation.POSITIVE: "+", Orientation.NEGATIVE: "-", None: "?"}
    lines = [
        f"WINDOW={dec.cut.kind}",
        f"SIDE={dec.side.value}",
        f"ARCS={len(dec.arcs)}",
    ]
    for i, arc in enumerate(dec.arcs, start=1):
        lines.append(
            f"ARC{i}={arc.start_index}..{arc.end_index}"
            f",sign={sign[arc.orientation]},len={len(arc.path)}"
        )
    for i, d in enumerate(dec.duals):
        lo = "-inf" if d.lo is None else str(d.lo)
        hi = "+inf" if d.hi is None else str(d.hi)
        lines.append(f"DUAL{i}={lo}..{hi},sign={sign[d.orientation]}")
    lines.append(f"POSITIVE={'yes' if dec.is_positive() else 'no'}")
    return lines
