"""Pumpability analysis for producible path assemblies.

A segment ``P_[i1,i2]`` of a path assembly is *candidate* when its two end
tiles have the same type and its direction ``v = pos(P_i2) - pos(P_i1)`` is
non-null.  A candidate segment can then be repeated forever, one translate
by ``v`` (or ``-v``) at a time; the segment is *pumpable* when one of these
two infinite continuations grows from the path prefix without ever
contradicting the seed, the prefix, or itself.

This module provides the segment bookkeeping (:class:`SegmentRef`), the five
lazy periodic extensions (:class:`PeriodicExtension`), pumpability verdicts
with first-conflict localization (:func:`check_pumpable`,
:func:`first_conflict`), and a bounded exhaustive search for fragility
witnesses (:func:`find_fragility_witness`): a producible path that conflicts
with the analysed one, which proves the analysed path is omitted by at least
one terminal assembly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .core import (
    Assembly,
    Conflict,
    PathAssembly,
    PlacedTile,
    Pos,
    PumpkitError,
    Side,
    TileSystem,
    TileType,
    UnknownTile,
    Vec,
    add,
    glues_interact,
    sub,
)

__all__ = [
    "Collision",
    "ExtensionKind",
    "FirstConflict",
    "FragileWitness",
    "IsPumpable",
    "NotCandidate",
    "PeriodicExtension",
    "Pumpable",
    "PumpableSegment",
    "PumpVerdict",
    "SegmentRef",
    "Unknown",
    "WitnessSearch",
    "candidate_segments",
    "check_pumpable",
    "classify_pumpable_or_fragile",
    "extension",
    "find_fragility_witness",
    "first_conflict",
    "materialize_pump",
    "search_fragility_witness",
    "simulate_extension",
    "verdict_report",
]


class NotCandidate(PumpkitError):
    """The segment's end types differ or its direction is null."""


class IsPumpable(PumpkitError):
    """A first conflict was requested for a forward-pumpable segment."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _tile_sort_key(t: TileType):
    return (
        t.id,
        t.north.label,
        t.north.strength,
        t.east.label,
        t.east.strength,
        t.south.label,
        t.south.strength,
        t.west.label,
        t.west.strength,
    )


# ---------------------------------------------------------------------------
# segments


@dataclass(frozen=True)
class SegmentRef:
    """The segment ``P_[i1,i2]`` of a path assembly, with ``1 <= i1 < i2``.

    Indices are 1-based, and length-1 segments (``i1 == i2``) are excluded:
    they can occasionally be pumped but are never needed.
    """

    path: PathAssembly
    i1: int
    i2: int

    def __post_init__(self) -> None:
        if not 1 <= self.i1 < self.i2 <= len(self.path):
            raise ValueError(
                f"need 1 <= i1 < i2 <= {len(self.path)}, got ({self.i1}, {self.i2})"
            )

    @property
    def v(self) -> Vec:
        """Direction of the segment: ``pos(P_i2) - pos(P_i1)``."""
        return sub(self.path.tile(self.i2).pos, self.path.tile(self.i1).pos)

    @property
    def period(self) -> int:
        return self.i2 - self.i1

    @property
    def segment(self) -> PathAssembly:
        return self.path.segment(self.i1, self.i2)

    def is_candidate(self) -> bool:
        """Equal end types and a non-null direction."""
        return self.v != (0, 0) and (
            self.path.tile(self.i1).ty == self.path.tile(self.i2).ty
        )

    def is_good(self) -> bool:
        """Candidate, simple, and overlapping its own translate only at the end.

        Good segments have simple extensions, so pumping them can only fail
        against the seed or the strict path prefix ``P_[1,i1-1]``.
        """
        if not self.is_candidate():
            return False
        seg = self.segment
        if not seg.is_simple:
            return False
        dom = seg.domain
        shifted = {add(p, self.v) for p in dom}
        return dom & shifted == {self.path.tile(self.i2).pos}


def candidate_segments(path: PathAssembly) -> Iterator[SegmentRef]:
    """All candidate segments of ``path``, ordered by (i1 asc, i2 asc)."""
    for i1 in range(1, len(path)):
        for i2 in range(i1 + 1, len(path) + 1):
            seg = SegmentRef(path, i1, i2)
            if seg.is_candidate():
                yield seg


# ---------------------------------------------------------------------------
# periodic extensions


class ExtensionKind(enum.Enum):
    """The five periodic continuations of a candidate segment ``S``.

    ``FORWARD`` is ``S · (S+v) · (S+2v) · ...``; the strict variant drops the
    base copy and starts with ``S+v``.  The backward kinds stack translates
    by ``-v`` instead, and ``BIINFINITE`` extends both ways.
    """

    FORWARD = "omega+"
    FORWARD_STRICT = "omega+*"
    BACKWARD = "omega-"
    BACKWARD_STRICT = "omega-*"
    BIINFINITE = "omega"


# Index ranges for each kind, under the shared indexing where the defining
# segment occupies 1..period+1 (None = unbounded on that side).
_KIND_RANGE: dict[ExtensionKind, tuple[Optional[int], Optional[int]]] = {
    ExtensionKind.FORWARD: (1, None),
    ExtensionKind.FORWARD_STRICT: (None, None),  # low bound depends on period
    ExtensionKind.BACKWARD: (None, None),  # high bound depends on period
    ExtensionKind.BACKWARD_STRICT: (None, 1),
    ExtensionKind.BIINFINITE: (None, None),
}


@dataclass(frozen=True)
class PeriodicExtension:
    """A lazy periodic continuation of a candidate segment.

    All five kinds share one periodic indexing in which the defining segment
    occupies indices ``1 .. period+1``; each kind restricts it to its own
    range.  For every index ``i`` where both sides are defined,
    ``tile(i + period) == tile(i)`` translated by ``v``.
    """

    pattern: PathAssembly
    v: Vec
    kind: ExtensionKind

    @property
    def period(self) -> int:
        return len(self.pattern) - 1

    def _bounds(self) -> tuple[Optional[int], Optional[int]]:
        low, high = _KIND_RANGE[self.kind]
        if self.kind is ExtensionKind.FORWARD_STRICT:
            low = self.period + 1
        elif self.kind is ExtensionKind.BACKWARD:
            high = self.period + 1
        return low, high

    def tile(self, i: int) -> PlacedTile:
        """Element at index ``i`` of this extension."""
        low, high = self._bounds()
        if (low is not None and i < low) or (high is not None and i > high):
            raise IndexError(f"index {i} outside {self.kind.value} extension")
        q, r = divmod(i - 1, self.period)
        base = self.pattern.tile(r + 1)
        return base.translate((q * self.v[0], q * self.v[1]))

    def walk(self) -> Iterator[PlacedTile]:
        """Elements in growth order, starting at the junction with the path.

        Forward kinds walk indices upward, backward kinds downward; the first
        yielded element always coincides with an element of the original path
        (``P_i1`` or ``P_i2``), so genuinely new tiles start at step 2.
        """
        if self.kind is ExtensionKind.BIINFINITE:
            raise ValueError("a bi-infinite extension has no growth order")
        low, high = self._bounds()
        if low is not None:
            i, step = low, 1
        else:
            assert high is not None
            i, step = high, -1
        while True:
            yield self.tile(i)
            i += step

    def materialize(self, n: int) -> PathAssembly:
        """The first ``n`` walk elements as a path assembly.

        Raises :class:`MalformedPath` if the walk revisits a position with a
        different type, which cannot happen when the segment is good.
        """
        out = []
        for tile_, _ in zip(self.walk(), range(n)):
            out.append(tile_)
        return PathAssembly(out)


def extension(seg: SegmentRef, kind: ExtensionKind) -> PeriodicExtension:
    """The periodic extension of a candidate segment.

    Raises :class:`NotCandidate` when the segment's end types differ or its
    direction is null, since the translates would not chain up.
    """
    if not seg.is_candidate():
        raise NotCandidate(
            f"segment ({seg.i1}, {seg.i2}) is not candidate: "
            "equal end types and a non-null direction are required"
        )
    return PeriodicExtension(seg.segment, seg.v, kind)


# ---------------------------------------------------------------------------
# pumpability verdicts


@dataclass(frozen=True)
class Pumpable:
    """The segment pumps cleanly in the given direction."""

    direction: str  # "forward" | "reverse"


class Collision(enum.Enum):
    """What the first conflicting extension tile disagreed with."""

    SEED = "seed"
    PATH_PREFIX = "path-prefix"
    SELF = "self"


@dataclass(frozen=True)
class FirstConflict:
    """First extension step whose addition breaks producibility.

    ``ext_index`` counts walk elements from the junction (which is index 1
    and always agrees), so a conflict always has ``ext_index >= 2``.
    """

    ext_index: int
    position: Pos
    collided_with: Collision


PumpVerdict = Union[Pumpable, FirstConflict]


def _walk_budget(sys: TileSystem, seg: SegmentRef) -> int:
    """Number of walk elements after which escape is certain.

    Once every tile of a repetition lies strictly outside the bounding box of
    seed, path and one translate of the segment, periodicity guarantees that
    no later repetition can conflict with anything: conflicts with the fixed
    part need the translate to meet the box, and self-conflicts between two
    repetitions only depend on their index gap, and every achievable gap has
    occurred inside the box.
    """
    v = seg.v
    step = max(abs(v[0]), abs(v[1]))
    seg_positions = seg.segment.positions
    sbox = _bbox(seg_positions)
    span = max(sbox[2] - sbox[0], sbox[3] - sbox[1])
    positions = set(sys.seed.domain) | set(seg.path.domain)
    positions.update(add(p, v) for p in seg_positions)
    positions.update(sub(p, v) for p in seg_positions)
    box = _bbox(positions)
    diam = max(box[2] - box[0], box[3] - box[1])
    reps = _ceil_div(diam + span, step) + 1
    return (reps + 1) * seg.period + 1


def _bbox(positions) -> tuple[int, int, int, int]:
    xs = [p[0] for p in positions]
    ys = [p[1] for p in positions]
    return min(xs), min(ys), max(xs), max(ys)


def simulate_extension(
    sys: TileSystem, seg: SegmentRef, direction: str
) -> Optional[FirstConflict]:
    """Grow one periodic extension until it conflicts or provably escapes.

    ``direction`` is ``"forward"`` (continue past ``P_i2`` by ``+v``) or
    ``"reverse"`` (continue past ``P_i1`` by ``-v``, walking the segment
    backwards).  Returns ``None`` when the extension is producible, else the
    first conflict.  Raises :class:`UnknownTile` if the extension needs to
    place a tile type absent from the tile set (possible only when the
    segment crosses the seed and uses a seed-only type).
    """
    if not seg.is_candidate():
        raise NotCandidate(f"segment ({seg.i1}, {seg.i2}) is not candidate")
    if direction == "forward":
        cut = seg.i2
        ext = extension(seg, ExtensionKind.FORWARD_STRICT)
    elif direction == "reverse":
        cut = seg.i1
        ext = extension(seg, ExtensionKind.BACKWARD_STRICT)
    else:
        raise ValueError(f"direction must be 'forward' or 'reverse', got {direction!r}")

    state: dict[Pos, TileType] = {pos: ty for pos, ty in sys.seed.items()}
    seed_dom = sys.seed.domain
    prefix_dom: set[Pos] = set()
    for k in range(1, cut + 1):
        e = seg.path.tile(k)
        prev = state.get(e.pos)
        if prev is not None and prev != e.ty:
            raise ValueError("path assembly conflicts with the seed; not producible")
        state[e.pos] = e.ty
        prefix_dom.add(e.pos)

    budget = _walk_budget(sys, seg)
    for ext_index, e in zip(range(1, budget + 1), ext.walk()):
        prev = state.get(e.pos)
        if prev is not None:
            if prev == e.ty:
                continue
            if e.pos in seed_dom:
                kind = Collision.SEED
            elif e.pos in prefix_dom:
                kind = Collision.PATH_PREFIX
            else:
                kind = Collision.SELF
            return FirstConflict(ext_index, e.pos, kind)
        if e.ty not in sys.tiles:
            raise UnknownTile(
                f"extension places tile type {e.ty.id!r} outside the tile set"
            )
        state[e.pos] = e.ty
    return None


def check_pumpable(sys: TileSystem, seg: SegmentRef) -> PumpVerdict:
    """Decide pumpability of a candidate segment of a producible path.

    Tries the forward extension first; reverse pumping is attempted only
    when forward fails.  When neither direction works, the returned
    :class:`FirstConflict` describes the forward extension's first conflict,
    which is the canonical one used by the structure lemmas.
    """
    forward = simulate_extension(sys, seg, "forward")
    if forward is None:
        return Pumpable("forward")
    if simulate_extension(sys, seg, "reverse") is None:
        return Pumpable("reverse")
    return forward


def first_conflict(sys: TileSystem, seg: SegmentRef) -> FirstConflict:
    """The forward extension's first conflict.

    The conflict position always lies in ``dom(seed ∪ P_[1,i2])``; when the
    segment is good it lies in ``dom(seed ∪ P_[1,i1-1])``.  Raises
    :class:`IsPumpable` when the forward extension never conflicts.
    """
    fc = simulate_extension(sys, seg, "forward")
    if fc is None:
        raise IsPumpable(f"segment ({seg.i1}, {seg.i2}) pumps forward cleanly")
    return fc


def materialize_pump(
    sys: TileSystem, seg: SegmentRef, direction: str, repetitions: int
) -> Assembly:
    """Seed, path prefix, and ``repetitions`` pumped periods as one assembly.

    Only meaningful for segments whose extension does not conflict within
    the requested horizon; a disagreement raises :class:`Conflict`.
    """
    if direction == "forward":
        cut = seg.i2
        ext = extension(seg, ExtensionKind.FORWARD_STRICT)
    else:
        cut = seg.i1
        ext = extension(seg, ExtensionKind.BACKWARD_STRICT)
    placements: dict[Pos, TileType] = {pos: ty for pos, ty in sys.seed.items()}
    for k in range(1, cut + 1):
        e = seg.path.tile(k)
        placements[e.pos] = e.ty
    n = repetitions * seg.period + 1
    for e, _ in zip(ext.walk(), range(n)):
        prev = placements.get(e.pos)
        if prev is not None and prev != e.ty:
            raise Conflict(e.pos, "pumped tiles disagree with the assembly")
        placements[e.pos] = e.ty
    return Assembly(placements)


# ---------------------------------------------------------------------------
# fragility witnesses


@dataclass(frozen=True)
class WitnessSearch:
    """Outcome of a bounded fragility-witness search."""

    witness: Optional[PathAssembly]
    nodes: int
    budget_exceeded: bool


_SCAN_SIDES = (Side.NORTH, Side.EAST, Side.SOUTH, Side.WEST)


def search_fragility_witness(
    sys: TileSystem,
    p: PathAssembly,
    max_len: int,
    *,
    max_nodes: Optional[int] = None,
) -> WitnessSearch:
    """Search for a producible path that conflicts with ``p``.

    Enumerates simple producible paths anchored on the seed, in depth-first
    order (anchors by position, then north/east/south/west, then tile id),
    up to ``max_len`` tiles, and returns the first one whose last tile
    disagrees with ``p`` at its position.  Restricting to simple paths loses
    no witnesses: any producible assembly conflicting with ``p`` contains a
    simple binding path from the seed to the conflicting position.

    ``max_nodes``, when given, caps the number of enumerated path elements;
    hitting the cap sets ``budget_exceeded`` so that a ``None`` witness can
    be reported as "ran out of budget" rather than "none within length".
    """
    target = p.domain_map()
    seed = sys.seed
    tiles_sorted = sorted(sys.tiles, key=_tile_sort_key)
    nodes = 0
    exceeded = False

    def extend(sequence: list[PlacedTile], used: set[Pos]) -> Optional[list[PlacedTile]]:
        nonlocal nodes, exceeded
        last = sequence[-1]
        for side in _SCAN_SIDES:
            npos = add(last.pos, side.vector)
            if npos in used:
                continue
            out_glue = last.ty.glue(side)
            if npos in seed:
                # walking onto the seed is allowed only with agreement and a bond
                choices = [
                    t
                    for t in (seed[npos],)
                    if glues_interact(out_glue, t.glue(side.opposite))
                ]
            else:
                choices = [
                    t
                    for t in tiles_sorted
                    if glues_interact(out_glue, t.glue(side.opposite))
                ]
            for ty in choices:
                if max_nodes is not None and nodes >= max_nodes:
                    exceeded = True
                    return None
                nodes += 1
                e = PlacedTile(npos, ty)
                hit = target.get(npos)
                if hit is not None and hit != ty:
                    return sequence + [e]
                if len(sequence) + 1 < max_len:
                    sequence.append(e)
                    used.add(npos)
                    found = extend(sequence, used)
                    if found is not None or exceeded:
                        return found
                    used.discard(npos)
                    sequence.pop()
        return None

    for anchor in sorted(seed.domain):
        if max_len < 2:
            break
        start = PlacedTile(anchor, seed[anchor])
        found = extend([start], {anchor})
        if found is not None:
            return WitnessSearch(PathAssembly(found), nodes, False)
        if exceeded:
            break
    return WitnessSearch(None, nodes, exceeded)


def find_fragility_witness(
    sys: TileSystem,
    p: PathAssembly,
    max_len: int,
    *,
    max_nodes: Optional[int] = None,
) -> Optional[PathAssembly]:
    """A producible path conflicting with ``p``, or ``None`` within budget.

    ``None`` means "no witness of length at most ``max_len``", not "``p`` is
    not fragile".
    """
    return search_fragility_witness(sys, p, max_len, max_nodes=max_nodes).witness


# ---------------------------------------------------------------------------
# path classification


@dataclass(frozen=True)
class PumpableSegment:
    """A pumpable segment found while scanning a path."""

    i1: int
    i2: int
    direction: str


@dataclass(frozen=True)
class FragileWitness:
    """A producible path conflicting with the scanned one."""

    witness: PathAssembly


@dataclass(frozen=True)
class Unknown:
    """Neither a pumpable segment nor a witness within budget."""

    budget_exceeded: bool = False


Classification = Union[PumpableSegment, FragileWitness, Unknown]


def classify_pumpable_or_fragile(
    sys: TileSystem, p: PathAssembly, budget: int
) -> Classification:
    """Scan for a pumpable segment, then fall back to witness search.

    Candidate segments are scanned by (i1 ascending, i2 ascending) and the
    first pumpable one wins, so results are deterministic.  ``budget`` is the
    maximum witness length for the fragility fallback.
    """
    for seg in candidate_segments(p):
        try:
            verdict = check_pumpable(sys, seg)
        except UnknownTile:
            continue  # segment uses a seed-only type; it can never pump
        if isinstance(verdict, Pumpable):
            return PumpableSegment(seg.i1, seg.i2, verdict.direction)
    result = search_fragility_witness(sys, p, budget)
    if result.witness is not None:
        return FragileWitness(result.witness)
    return Unknown(budget_exceeded=result.budget_exceeded)


def verdict_report(verdict: PumpVerdict) -> list[str]:
    """Line-oriented report for a pump verdict (consumed by the CLI)."""
    if isinstance(verdict, Pumpable):
        return ["VERDICT=pumpable", f"DIRECTION={verdict.direction}"]
    return [
        "VERDICT=first-conflict",
        f"EXT_INDEX={verdict.ext_index}",
        f"POSITION={verdict.position[0]},{verdict.position[1]}",
        f"COLLIDED_WITH={verdict.collided_with.value}",
    ]
