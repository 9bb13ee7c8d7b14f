"""Shared builders for randomized suites.

The workhorse is ``chain_system``: given any lattice walk it synthesizes a
tile system with one unique glue per step, so the walk itself becomes a
producible path assembly.  This turns "generate a random path" into
"generate a random walk", which hypothesis is good at.
"""

from __future__ import annotations

import random
from typing import Sequence

from pumpkit.core import (
    Assembly,
    Glue,
    NULL_GLUE,
    PathAssembly,
    PlacedTile,
    Pos,
    Side,
    TileSystem,
    TileType,
    add,
    glues_interact,
    is_stable,
    scale,
    side_towards,
)

STEPS: dict[str, tuple[int, int]] = {
    "N": (0, 1),
    "E": (1, 0),
    "S": (0, -1),
    "W": (-1, 0),
}

CHAR_SIDE: dict[str, Side] = {
    "N": Side.NORTH,
    "E": Side.EAST,
    "S": Side.SOUTH,
    "W": Side.WEST,
}


def make_tile(
    tid: str,
    n: str | None = None,
    e: str | None = None,
    s: str | None = None,
    w: str | None = None,
) -> TileType:
    """Tile type from glue labels; ``None`` leaves the side inert."""

    def g(label: str | None) -> Glue:
        return Glue(label, 1) if label is not None else NULL_GLUE

    return TileType(id=tid, north=g(n), east=g(e), south=g(s), west=g(w))


def walk_positions(start: Pos, moves: Sequence[str]) -> list[Pos]:
    out = [start]
    for m in moves:
        dx, dy = STEPS[m]
        out.append((out[-1][0] + dx, out[-1][1] + dy))
    return out


def is_self_avoiding(positions: Sequence[Pos]) -> bool:
    return len(set(positions)) == len(positions)


def chain_system(
    positions: Sequence[Pos],
    glue_names: Sequence[str] | None = None,
    tag: str = "c",
) -> tuple[TileSystem, PathAssembly]:
    """Build a system whose only producible growth follows ``positions``.

    Step ``i`` of the walk gets glue ``glue_names[i]`` (default: a unique
    label per step), so consecutive walk tiles bond and nothing else does.
    The first position is the single-tile seed.
    """
    n = len(positions)
    if n == 0:
        raise ValueError("empty walk")
    if glue_names is None:
        glue_names = [f"{tag}{i}" for i in range(n - 1)]
    sides: list[dict[str, Glue]] = [{} for _ in range(n)]
    for i in range(n - 1):
        a, b = positions[i], positions[i + 1]
        g = Glue(glue_names[i], 1)
        out_side = side_towards(a, b)
        sides[i][out_side.name.lower()] = g
        sides[i + 1][out_side.opposite.name.lower()] = g
    tiles = [TileType(id=f"{tag}{i}", **kw) for i, kw in enumerate(sides)]
    seed = Assembly({positions[0]: tiles[0]})
    system = TileSystem(tiles, seed)
    path = PathAssembly(PlacedTile(p, t) for p, t in zip(positions, tiles))
    return system, path


def good_motif(moves: Sequence[str]) -> bool:
    """Whether a motif walk yields a good (simply extendable) segment.

    The walk must be self-avoiding with a non-null displacement ``v``, and
    its point set may meet its own translate by ``v`` only at the endpoint.
    """
    pts = walk_positions((0, 0), moves)
    if not is_self_avoiding(pts):
        return False
    v = pts[-1]
    if v == (0, 0):
        return False
    dom = set(pts)
    return dom & {add(p, v) for p in dom} == {v}


def periodic_system(
    moves: Sequence[str], copies: int = 3, tag: str = "t"
) -> tuple[TileSystem, PathAssembly, int]:
    """A path built by repeating a motif walk, plus a system that grows it.

    The motif is a good walk of ``ell = len(moves)`` steps from the origin;
    tile type ``i`` carries an outgoing glue on the side of move ``i`` and an
    incoming glue opposite move ``i-1`` (wrapping), so consecutive copies
    chain up.  Returns ``(system, path, ell)`` where the path holds
    ``copies`` motif repetitions and ``path[1..ell+1]`` spans one period.
    """
    if not good_motif(moves):
        raise ValueError(f"motif {moves!r} is not good")
    ell = len(moves)
    pts = walk_positions((0, 0), moves)
    v = pts[-1]
    out_sides = [CHAR_SIDE[c] for c in moves]
    tiles = []
    for i in range(ell):
        out_side = out_sides[i]
        in_side = out_sides[(i - 1) % ell].opposite
        if out_side is in_side:
            raise ValueError("motif backtracks across the period junction")
        kwargs = {
            out_side.name.lower(): Glue(f"{tag}w{i}", 1),
            in_side.name.lower(): Glue(f"{tag}w{(i - 1) % ell}", 1),
        }
        tiles.append(TileType(id=f"{tag}{i}", **kwargs))
    elements = []
    for j in range(copies * ell + 1):
        pos = add(pts[j % ell], scale(j // ell, v))
        elements.append(PlacedTile(pos, tiles[j % ell]))
    seed = Assembly({(0, 0): tiles[0]})
    return TileSystem(tiles, seed), PathAssembly(elements), ell


def random_system(
    rng: random.Random,
    max_tiles: int = 4,
    max_seed: int = 3,
    glue_alphabet: Sequence[str] = ("a", "b", "c"),
) -> TileSystem:
    """A small random system: 2..max_tiles tiles, a stable 1..max_seed seed."""
    while True:
        tiles = []
        for i in range(rng.randint(2, max_tiles)):
            labels = [
                rng.choice(glue_alphabet) if rng.random() > 0.35 else None
                for _ in range(4)
            ]
            tiles.append(make_tile(f"t{i}", *labels))
        placements: dict[Pos, TileType] = {(0, 0): rng.choice(tiles)}
        want = rng.randint(1, max_seed)
        for _ in range(16):
            if len(placements) >= want:
                break
            base = rng.choice(sorted(placements))
            q = add(base, rng.choice(list(STEPS.values())))
            if q not in placements:
                placements[q] = rng.choice(tiles)
        seed = Assembly(placements)
        if is_stable(seed):
            return TileSystem(tiles, seed)


def random_producible_path(
    rng: random.Random, system: TileSystem, max_len: int
) -> PathAssembly:
    """A random simple producible path grown greedily from the seed."""
    seed = system.seed
    anchor = rng.choice(sorted(seed.domain))
    sequence = [PlacedTile(anchor, seed[anchor])]
    used = {anchor}
    tiles_sorted = sorted(system.tiles, key=lambda t: t.id)
    while len(sequence) < max_len:
        last = sequence[-1]
        options = []
        for side in (Side.NORTH, Side.EAST, Side.SOUTH, Side.WEST):
            q = add(last.pos, side.vector)
            if q in used:
                continue
            pool = [seed[q]] if q in seed else tiles_sorted
            for t in pool:
                if glues_interact(last.ty.glue(side), t.glue(side.opposite)):
                    options.append(PlacedTile(q, t))
        if not options:
            break
        sequence.append(rng.choice(options))
        used.add(sequence[-1].pos)
    return PathAssembly(sequence)


def random_self_avoiding_walk(
    rng: random.Random, length: int, start: Pos = (0, 0)
) -> list[Pos]:
    """A uniform-ish self-avoiding walk grown by rejection of dead ends."""
    while True:
        positions = [start]
        seen = {start}
        ok = True
        for _ in range(length - 1):
            options = []
            x, y = positions[-1]
            for dx, dy in STEPS.values():
                q = (x + dx, y + dy)
                if q not in seen:
                    options.append(q)
            if not options:
                ok = False
                break
            q = rng.choice(options)
            positions.append(q)
            seen.add(q)
        if ok:
            return positions
