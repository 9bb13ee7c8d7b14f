import pytest
from hypothesis import given, strategies as st

from pumpkit.core import (
    Assembly,
    Conflict,
    DihedralTransform,
    EndpointMismatch,
    Glue,
    MalformedPath,
    NoBond,
    Occupied,
    PathAssembly,
    PlacedTile,
    SeedConflict,
    TileSystem,
    TileType,
    UnknownTile,
    attach,
    binding_adjacency,
    chebyshev_distance,
    concat,
    is_producible_assembly,
    is_producible_path,
    is_stable,
    path_to_seed_distance,
    transform,
)

from helpers import chain_system, walk_positions


class TestChebyshev:
    def test_zero(self):
        assert chebyshev_distance((0, 0), (0, 0)) == 0

    def test_axis_dominates(self):
        assert chebyshev_distance((0, 0), (3, 1)) == 3

    def test_negative_coordinates(self):
        assert chebyshev_distance((2, -5), (-1, -1)) == 4


class TestAttach:
    def test_first_attachment_to_seed(self, t17):
        one = t17.tile_by_id("1")
        asm = attach(t17.seed, PlacedTile((0, -1), one), t17)
        assert len(asm) == 2
        assert asm[(0, -1)] == one

    def test_occupied_position(self, t17):
        with pytest.raises(Occupied):
            attach(t17.seed, PlacedTile((0, 0), t17.tile_by_id("1")), t17)

    def test_no_bond(self, t17):
        # tile 12 only has an east glue; north of the seed nothing matches
        with pytest.raises(NoBond):
            attach(t17.seed, PlacedTile((0, 1), t17.tile_by_id("12")), t17)

    def test_strength_zero_sides_never_bond(self, t17):
        dud = TileType(id="dud")
        sys2 = TileSystem(list(t17.tiles) + [dud], t17.seed)
        with pytest.raises(NoBond):
            attach(sys2.seed, PlacedTile((0, -1), dud), sys2)

    def test_unknown_tile(self, t17):
        foreign = TileType(id="foreign", north=Glue("A"))
        with pytest.raises(UnknownTile):
            attach(t17.seed, PlacedTile((0, -1), foreign), t17)


class TestProducibleAssembly:
    def test_seed_alone(self, t17):
        assert is_producible_assembly(t17, t17.seed)

    def test_full_path_domain(self, t17, p25):
        assert is_producible_assembly(t17, p25.to_assembly())

    def test_disconnected_binding_graph(self, t17):
        # (1,0) touches the seed but no glue faces it: connected domain,
        # two binding components.
        asm = Assembly({(0, 0): t17.seed[(0, 0)], (1, 0): t17.tile_by_id("13")})
        assert not is_producible_assembly(t17, asm)

    def test_missing_seed(self, t17):
        asm = Assembly({(5, 5): t17.tile_by_id("1")})
        assert not is_producible_assembly(t17, asm)

    def test_seed_conflict(self, t17):
        with pytest.raises(SeedConflict):
            is_producible_assembly(t17, Assembly({(0, 0): t17.tile_by_id("1")}))

    def test_attachment_order_exists(self, t17, p25):
        """Every accepted assembly grows by some legal attach sequence."""
        target = p25.to_assembly()
        assert is_producible_assembly(t17, target)
        asm = t17.seed
        remaining = {p: t for p, t in target.items() if p not in t17.seed}
        while remaining:
            for pos in sorted(remaining):
                try:
                    asm = attach(asm, PlacedTile(pos, remaining[pos]), t17)
                except NoBond:
                    continue
                del remaining[pos]
                break
            else:
                pytest.fail("no attachable tile found; assembly not growable")
        assert asm == target


class TestProduciblePath:
    def test_fixture_path(self, t17, p25):
        assert is_producible_path(t17, p25)

    def test_anchor_off_seed(self, t17, p25):
        moved = p25.translate((0, 1))
        assert not is_producible_path(t17, moved)

    def test_broken_bond_rejected_at_construction(self, t17, p25):
        tiles = list(p25)
        tiles[2] = PlacedTile(tiles[2].pos, t17.tile_by_id("14"))
        with pytest.raises(MalformedPath):
            PathAssembly(tiles)

    def test_prefix_closure(self, t17, p25):
        for i in range(1, len(p25) + 1):
            assert is_producible_path(t17, p25.prefix(i))

    def test_foreign_tile_type_not_producible(self, t17):
        # a one-tile path on the seed with the seed's type is producible,
        # even though the seed type also belongs to the tile set here
        seed_tile = PlacedTile((0, 0), t17.seed[(0, 0)])
        assert is_producible_path(t17, PathAssembly([seed_tile]))


class TestPathAssembly:
    def test_segment_indexing_is_one_based(self, p25):
        assert p25.tile(1).pos == (0, 0)
        assert p25.tile(25).pos == (7, -1)
        seg = p25.segment(3, 14)
        assert len(seg) == 12
        assert seg.tile(1) == p25.tile(3)

    def test_simple_flag(self, p25):
        assert p25.is_simple

    def test_revisit_with_same_type_allowed(self, t17):
        # build S, 1, 2 then walk back: 2, 1 is a backtrack -> rejected;
        # instead check a genuine loop via concat elsewhere. Here: repeated
        # position with different type is rejected.
        s = t17.seed[(0, 0)]
        one = t17.tile_by_id("1")
        with pytest.raises(MalformedPath):
            PathAssembly(
                [
                    PlacedTile((0, 0), s),
                    PlacedTile((0, -1), one),
                    PlacedTile((0, 0), one),  # revisit, wrong type (also backtrack)
                ]
            )

    def test_non_adjacent_rejected(self, t17):
        s = t17.seed[(0, 0)]
        with pytest.raises(MalformedPath):
            PathAssembly([PlacedTile((0, 0), s), PlacedTile((2, 0), s)])

    def test_bounding_box(self, p25):
        assert p25.bounding_box() == (0, -3, 7, 0)


class TestConcat:
    def test_shared_endpoint(self, t17, p25):
        left = p25.segment(1, 10)
        right = p25.segment(10, 25)
        assert concat(left, right) == p25

    def test_reversed_glueing(self, t17, p25):
        left = p25.segment(1, 10)
        right = p25.segment(10, 25).reverse()
        assert concat(left, right) == p25

    def test_single_tile_identity(self, p25):
        last = PathAssembly([p25.tile(25)])
        assert concat(p25, last) == p25

    def test_endpoint_mismatch(self, p25):
        with pytest.raises(EndpointMismatch):
            concat(p25.segment(1, 5), p25.segment(10, 12))

    def test_conflicting_overlap_position_reported(self):
        # p walks east then north; q continues west then south back onto
        # p's start with a different tile type -> Conflict((0,0))
        a = TileType(id="a", east=Glue("ab"))
        b = TileType(id="b", west=Glue("ab"), north=Glue("bc"))
        c = TileType(id="c", south=Glue("bc"), west=Glue("cd"))
        d = TileType(id="d", east=Glue("cd"), south=Glue("de"))
        e = TileType(id="e", north=Glue("de"))
        p = PathAssembly([PlacedTile((0, 0), a), PlacedTile((1, 0), b), PlacedTile((1, 1), c)])
        q = PathAssembly([PlacedTile((1, 1), c), PlacedTile((0, 1), d), PlacedTile((0, 0), e)])
        with pytest.raises(Conflict) as exc:
            concat(p, q)
        assert exc.value.position == (0, 0)

    def test_agreeing_overlap_is_allowed(self):
        # same loop, but the returning tile agrees with p's start
        a = TileType(id="a", east=Glue("ab"), north=Glue("de"))
        b = TileType(id="b", west=Glue("ab"), north=Glue("bc"))
        c = TileType(id="c", south=Glue("bc"), west=Glue("cd"))
        d = TileType(id="d", east=Glue("cd"), south=Glue("de"))
        p = PathAssembly([PlacedTile((0, 0), a), PlacedTile((1, 0), b), PlacedTile((1, 1), c)])
        q = PathAssembly([PlacedTile((1, 1), c), PlacedTile((0, 1), d), PlacedTile((0, 0), a)])
        joined = concat(p, q)
        assert len(joined) == 5
        assert not joined.is_simple


class TestStability:
    def test_seed_stable(self, t17):
        assert is_stable(t17.seed)

    def test_binding_adjacency_matches_path(self, t17, p25):
        adj = binding_adjacency(p25.to_assembly())
        # every consecutive pair of the path is an edge
        for i in range(1, len(p25)):
            a, b = p25.tile(i).pos, p25.tile(i + 1).pos
            assert b in adj[a] and a in adj[b]


class TestTransforms:
    @pytest.mark.parametrize("d", list(DihedralTransform))
    def test_round_trip(self, t17, p25, d):
        assert transform(transform(p25, d), d.inverse) == p25
        back = transform(transform(t17, d), d.inverse)
        assert back.tiles == t17.tiles and back.seed == t17.seed

    @pytest.mark.parametrize("d", list(DihedralTransform))
    def test_producibility_preserved(self, t17, p25, d):
        assert is_producible_path(transform(t17, d), transform(p25, d))

    def test_mirror_x_swaps_north_south(self):
        ty = TileType(id="t", north=Glue("n"), south=Glue("s"))
        out = transform(PlacedTile((2, 3), ty), DihedralTransform.MIRROR_X)
        assert out.pos == (2, -3)
        assert out.ty.north == Glue("s") and out.ty.south == Glue("n")

    def test_mirror_x_is_involution(self):
        d = DihedralTransform.MIRROR_X
        assert d.compose(d) is DihedralTransform.IDENTITY


class TestSeedDistance:
    def test_p25_reach(self, t17, p25):
        assert path_to_seed_distance(p25, t17.seed) == 7


# ---------------------------------------------------------------------------
# property tests


moves = st.lists(st.sampled_from("NESW"), min_size=1, max_size=30)


@given(moves)
def test_chain_walks_form_producible_paths(ms):
    positions = walk_positions((0, 0), ms)
    if len(set(positions)) != len(positions):
        return  # only self-avoiding walks make simple chains
    system, path = chain_system(positions)
    assert is_producible_path(system, path)
    assert path.is_simple
    assert is_producible_assembly(system, path.to_assembly())


@given(moves, st.sampled_from(list(DihedralTransform)))
def test_transform_preserves_chain_producibility(ms, d):
    positions = walk_positions((0, 0), ms)
    if len(set(positions)) != len(positions):
        return
    system, path = chain_system(positions)
    assert is_producible_path(transform(system, d), transform(path, d))


@given(moves)
def test_translation_moves_domain(ms):
    positions = walk_positions((0, 0), ms)
    if len(set(positions)) != len(positions):
        return
    _, path = chain_system(positions)
    shifted = path.translate((5, -7))
    assert shifted.domain == {(x + 5, y - 7) for x, y in path.domain}


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_chebyshev_is_a_metric(x1, y1, x2, y2):
    a, b = (x1, y1), (x2, y2)
    assert chebyshev_distance(a, b) == chebyshev_distance(b, a) >= 0
    assert (chebyshev_distance(a, b) == 0) == (a == b)
    c = (0, 0)
    assert chebyshev_distance(a, b) <= chebyshev_distance(a, c) + chebyshev_distance(c, b)
