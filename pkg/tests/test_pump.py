"""Pump-engine suite: extensions, verdicts, first conflicts, fragility."""

from __future__ import annotations

import random

import pytest
from hypothesis import example, given, strategies as st

from pumpkit.core import (
    Assembly,
    PathAssembly,
    PlacedTile,
    TileSystem,
    UnknownTile,
    is_producible_assembly,
    is_producible_path,
)
from pumpkit.pump import (
    Collision,
    ExtensionKind,
    FirstConflict,
    FragileWitness,
    IsPumpable,
    NotCandidate,
    Pumpable,
    PumpableSegment,
    SegmentRef,
    Unknown,
    candidate_segments,
    check_pumpable,
    classify_pumpable_or_fragile,
    extension,
    find_fragility_witness,
    first_conflict,
    materialize_pump,
    search_fragility_witness,
    simulate_extension,
    verdict_report,
)

from conftest import SEED
from helpers import (
    good_motif,
    make_tile,
    periodic_system,
    random_producible_path,
    random_system,
)


# ---------------------------------------------------------------------------
# segment classification


class TestSegmentRef:
    def test_rejects_bad_indices(self, p25):
        with pytest.raises(ValueError):
            SegmentRef(p25, 3, 3)
        with pytest.raises(ValueError):
            SegmentRef(p25, 0, 5)
        with pytest.raises(ValueError):
            SegmentRef(p25, 5, 26)

    def test_candidate_needs_equal_end_types(self, p25):
        assert not SegmentRef(p25, 1, 2).is_candidate()
        assert SegmentRef(p25, 3, 14).is_candidate()

    def test_direction(self, p25):
        assert SegmentRef(p25, 3, 14).v == (3, 0)
        assert SegmentRef(p25, 12, 13).v == (0, -1)

    def test_goodness(self, p25, r25):
        assert SegmentRef(p25, 3, 14).is_good()
        assert SegmentRef(p25, 12, 13).is_good()
        # the long candidate segment of R overlaps its translate in 3 cells
        assert SegmentRef(r25, 9, 25).is_candidate()
        assert not SegmentRef(r25, 9, 25).is_good()

    def test_scan_order(self, p25):
        found = [(s.i1, s.i2) for s in candidate_segments(p25)]
        assert found == sorted(found)
        assert found[0] == (3, 14)


# ---------------------------------------------------------------------------
# periodic extensions


class TestExtensions:
    def test_not_candidate_rejected(self, p25):
        with pytest.raises(NotCandidate):
            extension(SegmentRef(p25, 1, 2), ExtensionKind.FORWARD)

    def test_forward_repeats_eastward(self, p25):
        ext = extension(SegmentRef(p25, 3, 14), ExtensionKind.FORWARD)
        assert ext.period == 11
        assert ext.tile(1) == p25.tile(3)
        assert ext.tile(12) == p25.tile(14)
        # one full period ahead, shifted by exactly v
        for i in range(1, 40):
            assert ext.tile(i + 11) == ext.tile(i).translate((3, 0))

    def test_kind_domains(self, p25):
        seg = SegmentRef(p25, 3, 14)
        fwd = extension(seg, ExtensionKind.FORWARD)
        strict = extension(seg, ExtensionKind.FORWARD_STRICT)
        back = extension(seg, ExtensionKind.BACKWARD)
        back_strict = extension(seg, ExtensionKind.BACKWARD_STRICT)
        bi = extension(seg, ExtensionKind.BIINFINITE)
        with pytest.raises(IndexError):
            fwd.tile(0)
        with pytest.raises(IndexError):
            strict.tile(11)
        with pytest.raises(IndexError):
            back.tile(13)
        with pytest.raises(IndexError):
            back_strict.tile(2)
        assert bi.tile(-10) == bi.tile(-10 + 11).translate((-3, 0))

    def test_walk_starts_at_junction(self, p25):
        seg = SegmentRef(p25, 3, 14)
        strict = extension(seg, ExtensionKind.FORWARD_STRICT)
        first = next(strict.walk())
        assert first == p25.tile(14)
        back_strict = extension(seg, ExtensionKind.BACKWARD_STRICT)
        assert next(back_strict.walk()) == p25.tile(3)

    def test_biinfinite_has_no_walk(self, p25):
        bi = extension(SegmentRef(p25, 3, 14), ExtensionKind.BIINFINITE)
        with pytest.raises(ValueError):
            next(bi.walk())

    def test_materialized_prefix_of_good_segment_is_simple(self, p25):
        ext = extension(SegmentRef(p25, 3, 14), ExtensionKind.FORWARD)
        long_prefix = ext.materialize(100)
        assert long_prefix.is_simple


# ---------------------------------------------------------------------------
# verdicts on the bundled fixtures


class TestFixtureVerdicts:
    def test_forward_pumpable(self, t17, p25):
        assert check_pumpable(t17, SegmentRef(p25, 3, 14)) == Pumpable("forward")

    def test_reverse_pumpable(self, t17, p25):
        assert check_pumpable(t17, SegmentRef(p25, 12, 13)) == Pumpable("reverse")

    def test_reverse_fixture_forward_conflict(self, t17, p25):
        fc = first_conflict(t17, SegmentRef(p25, 12, 13))
        assert fc == FirstConflict(2, (3, -2), Collision.PATH_PREFIX)

    def test_conflict_fixture(self, t17, r25):
        verdict = check_pumpable(t17, SegmentRef(r25, 9, 25))
        assert verdict == FirstConflict(3, (7, 1), Collision.PATH_PREFIX)
        # the clash is with the 23rd tile of the path itself
        assert r25.tile(23).pos == (7, 1)

    def test_first_conflict_raises_when_pumpable(self, t17, p25):
        with pytest.raises(IsPumpable):
            first_conflict(t17, SegmentRef(p25, 3, 14))

    def test_not_candidate_verdict_rejected(self, t17, p25):
        with pytest.raises(NotCandidate):
            check_pumpable(t17, SegmentRef(p25, 1, 2))

    def test_pumped_assembly_is_producible(self, t17, p25):
        # oracle agreement: five repetitions of the pumped segment
        asm = materialize_pump(t17, SegmentRef(p25, 3, 14), "forward", 5)
        assert is_producible_assembly(t17, asm)

    def test_reverse_pumped_assembly_is_producible(self, t17, p25):
        asm = materialize_pump(t17, SegmentRef(p25, 12, 13), "reverse", 5)
        assert is_producible_assembly(t17, asm)

    def test_verdict_reports(self, t17, p25, r25):
        assert verdict_report(check_pumpable(t17, SegmentRef(p25, 3, 14))) == [
            "VERDICT=pumpable",
            "DIRECTION=forward",
        ]
        assert verdict_report(check_pumpable(t17, SegmentRef(r25, 9, 25))) == [
            "VERDICT=first-conflict",
            "EXT_INDEX=3",
            "POSITION=7,1",
            "COLLIDED_WITH=path-prefix",
        ]


# ---------------------------------------------------------------------------
# constructed seed collisions


def bar_seed_system() -> tuple[TileSystem, PathAssembly]:
    """A path climbing off a seed bar whose pump line dives back into it."""
    s = make_tile("s", n="g1", e="sb", w="sb")
    u = make_tile("u", n="g2", s="g1")
    a = make_tile("a", n="g4", e="g3", s="g2")
    b = make_tile("b", s="g4", w="g3")
    seed = Assembly({(x, 0): s for x in range(5)})
    system = TileSystem([s, u, a, b], seed)
    path = PathAssembly(
        [
            PlacedTile((0, 0), s),
            PlacedTile((0, 1), u),
            PlacedTile((0, 2), a),
            PlacedTile((1, 2), b),
            PlacedTile((1, 1), a),
        ]
    )
    assert is_producible_path(system, path)
    return system, path


class TestSeedCollision:
    def test_pump_line_reenters_the_seed(self):
        system, path = bar_seed_system()
        seg = SegmentRef(path, 3, 5)
        assert seg.is_good()
        fc = first_conflict(system, seg)
        assert fc == FirstConflict(3, (2, 0), Collision.SEED)

    def test_good_segment_conflict_is_before_the_segment(self):
        # for a good segment the collision sits in dom(seed ∪ P_[1,i1-1])
        system, path = bar_seed_system()
        fc = first_conflict(system, SegmentRef(path, 3, 5))
        early = set(system.seed.domain) | set(path.prefix(2).domain)
        assert fc.position in early

    def test_seed_only_tile_type_cannot_pump(self):
        z = make_tile("z", e="g", w="g")
        r = make_tile("r", n="h", s="h")
        seed = Assembly({(0, 0): z, (1, 0): z})
        system = TileSystem([r], seed)
        path = PathAssembly([PlacedTile((0, 0), z), PlacedTile((1, 0), z)])
        assert is_producible_path(system, path)
        with pytest.raises(UnknownTile):
            check_pumpable(system, SegmentRef(path, 1, 2))


# ---------------------------------------------------------------------------
# periodic staircases: pumping must succeed in both directions


MOTIFS = st.lists(
    st.sampled_from("NESW"), min_size=2, max_size=6
).filter(good_motif)


class TestPeriodicFamilies:
    @given(MOTIFS)
    @example(["E", "E"])
    @example(["N", "E", "S", "E"])
    @example(["N", "N", "E"])
    def test_one_period_segment_pumps_forward(self, moves):
        system, path, ell = periodic_system(moves, copies=3)
        seg = SegmentRef(path, 1, ell + 1)
        assert seg.is_good()
        assert check_pumpable(system, seg) == Pumpable("forward")

    @given(MOTIFS)
    @example(["N", "E", "S", "E"])
    def test_last_period_segment_pumps_both_ways(self, moves):
        system, path, ell = periodic_system(moves, copies=3)
        seg = SegmentRef(path, len(path) - ell, len(path))
        assert simulate_extension(system, seg, "forward") is None
        assert simulate_extension(system, seg, "reverse") is None
        assert check_pumpable(system, seg) == Pumpable("forward")

    @given(MOTIFS)
    @example(["N", "E", "S", "E"])
    def test_pumped_prefixes_simple_and_producible(self, moves):
        system, path, ell = periodic_system(moves, copies=2)
        seg = SegmentRef(path, 1, ell + 1)
        ext = extension(seg, ExtensionKind.FORWARD)
        assert ext.materialize(6 * ell + 1).is_simple
        asm = materialize_pump(system, seg, "forward", 5)
        assert is_producible_assembly(system, asm)

    @given(MOTIFS, st.integers(min_value=1, max_value=30))
    def test_extension_periodicity(self, moves, i):
        _, path, ell = periodic_system(moves, copies=2)
        ext = extension(SegmentRef(path, 1, ell + 1), ExtensionKind.FORWARD)
        v = ext.v
        assert ext.tile(i + ell) == ext.tile(i).translate(v)


# ---------------------------------------------------------------------------
# randomized first-conflict containment


def collect_random_conflicts(n_systems: int, path_len: int = 20):
    rng = random.Random(SEED)
    seen = []
    for _ in range(n_systems):
        system = random_system(rng)
        path = random_producible_path(rng, system, path_len)
        if len(path) < 2:
            continue
        for seg in candidate_segments(path):
            verdict = check_pumpable(system, seg)
            seen.append((system, path, seg, verdict))
    return seen


class TestRandomizedConflicts:
    def test_first_conflict_containment(self):
        outcomes = collect_random_conflicts(60)
        conflicts = [o for o in outcomes if isinstance(o[3], FirstConflict)]
        assert conflicts, "expected some non-pumpable segments"
        for system, path, seg, fc in conflicts:
            reachable = set(system.seed.domain) | set(path.prefix(seg.i2).domain)
            assert fc.position in reachable
            if seg.is_good():
                early = set(system.seed.domain)
                if seg.i1 > 1:
                    early |= set(path.prefix(seg.i1 - 1).domain)
                assert fc.position in early

    def test_pumpable_verdicts_agree_with_oracle(self):
        outcomes = collect_random_conflicts(40)
        pumped = [o for o in outcomes if isinstance(o[3], Pumpable)]
        assert pumped, "expected some pumpable segments"
        for system, path, seg, verdict in pumped[:80]:
            asm = materialize_pump(system, seg, verdict.direction, 5)
            assert is_producible_assembly(system, asm)

    def test_verdicts_are_deterministic(self):
        first = [
            (s.i1, s.i2, v)
            for _, _, s, v in collect_random_conflicts(15)
        ]
        second = [
            (s.i1, s.i2, v)
            for _, _, s, v in collect_random_conflicts(15)
        ]
        assert first == second


# ---------------------------------------------------------------------------
# fragility witnesses and classification


class TestFragility:
    def test_witness_for_the_pumpable_path(self, t17, p25):
        w = find_fragility_witness(t17, p25, 25)
        assert w is not None
        assert is_producible_path(t17, w)
        conflicts = {
            pos
            for pos, ty in w.domain_map().items()
            if pos in p25.domain and p25.domain_map()[pos] != ty
        }
        assert conflicts

    def test_witness_for_the_conflict_path(self, t17, r25):
        w = find_fragility_witness(t17, r25, 30)
        assert w is not None
        assert is_producible_path(t17, w)
        assert any(
            pos in r25.domain and r25.domain_map()[pos] != ty
            for pos, ty in w.domain_map().items()
        )

    def test_witness_search_is_deterministic(self, t17, p25):
        assert find_fragility_witness(t17, p25, 25) == find_fragility_witness(
            t17, p25, 25
        )

    def test_deterministic_ray_has_no_witness(self):
        r = make_tile("r", e="g", w="g")
        system = TileSystem([r], Assembly({(0, 0): r}))
        path = PathAssembly([PlacedTile((x, 0), r) for x in range(4)])
        assert is_producible_path(system, path)
        assert find_fragility_witness(system, path, 8) is None

    def test_node_budget_reports_exhaustion(self):
        r = make_tile("r", e="g", w="g")
        system = TileSystem([r], Assembly({(0, 0): r}))
        path = PathAssembly([PlacedTile((x, 0), r) for x in range(4)])
        report = search_fragility_witness(system, path, 8, max_nodes=3)
        assert report.witness is None
        assert report.budget_exceeded
        assert report.nodes == 3

    def test_classify_pumpable(self, t17, p25):
        assert classify_pumpable_or_fragile(t17, p25, 12) == PumpableSegment(
            3, 14, "forward"
        )

    def test_classify_prefers_early_pumpable_segment(self, t17, r25):
        # the conflict path still has a pumpable segment (2 → 2 eastward),
        # found before the witness fallback triggers
        outcome = classify_pumpable_or_fragile(t17, r25, 30)
        assert outcome == PumpableSegment(3, 10, "forward")

    def test_classify_fragile(self):
        # a corridor between two seed walls: every candidate segment slams
        # into a wall both ways, but a seed tile can grow into the corridor
        k = make_tile("k", n="kk", e="kk", s="kk", w="kk")
        m = make_tile("m", e="kk", w="kk")
        seed_cells = {(x, -1): k for x in range(-2, 5)}
        seed_cells[(-2, 0)] = k
        seed_cells[(4, 0)] = k
        system = TileSystem([k, m], Assembly(seed_cells))
        path = PathAssembly(
            [PlacedTile((-2, 0), k)]
            + [PlacedTile((x, 0), m) for x in range(-1, 2)]
        )
        assert is_producible_path(system, path)
        for seg in candidate_segments(path):
            if seg.path.tile(seg.i1).ty == m:
                assert isinstance(check_pumpable(system, seg), FirstConflict)
        outcome = classify_pumpable_or_fragile(system, path, 6)
        assert isinstance(outcome, FragileWitness)
        assert is_producible_path(system, outcome.witness)
        assert any(
            pos in path.domain and path.domain_map()[pos] != ty
            for pos, ty in outcome.witness.domain_map().items()
        )

    def test_classify_unknown_on_tiny_budget(self, t17):
        single = PathAssembly([PlacedTile((0, 0), t17.tile_by_id("S"))])
        assert classify_pumpable_or_fragile(t17, single, 0) == Unknown()
