import json
from collections import deque

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from railcount.atam import (
    LHS,
    NULL,
    RHS,
    Bundle,
    CurveError,
    CurveOffAssembly,
    Glue,
    GlueCurve,
    NonConfinedGrowth,
    NotDirected,
    NotValidReport,
    NTooSmall,
    Region,
    RegionOverflow,
    SeedMismatch,
    TileSystem,
    TileType,
    assemble,
    attachable,
    bits_along_curve,
    check_layer_computes,
    compile_to_railway,
    is_connected,
    iterate_layers,
)
from railcount.atam.layer import CompileError, output_sides
from railcount.exemplars import build_copy


# --- glues and attachment

def test_glue_rules():
    a = Glue("a", 1, 0)
    assert a.binds(Glue("a", 1, 0))
    assert not a.binds(Glue("a", 2, 0))
    assert not a.binds(Glue("b", 1, 0))
    assert not NULL.binds(NULL)
    with pytest.raises(ValueError):
        Glue("", 1)
    with pytest.raises(ValueError):
        Glue("a", 1, 2)


def test_attach_strength_two():
    g = Glue("g", 2)
    seed = {(0, 0): TileType("s", east=g)}
    t = TileType("t", west=g)
    sys = TileSystem([t], seed, 2)
    ps = attachable(sys, seed)
    assert len(ps) == 1
    assert ps[0].pos == (1, 0) and ps[0].inputs == frozenset({"W"})


def test_single_weak_glue_does_not_attach():
    g = Glue("g", 1)
    seed = {(0, 0): TileType("s", east=g)}
    sys = TileSystem([TileType("t", west=g)], seed, 2)
    assert attachable(sys, seed) == []


def test_cooperative_attachment():
    a, b = Glue("a", 1), Glue("b", 1)
    seed = {(0, 1): TileType("w", east=a), (0, 0): TileType("c"), (1, 0): TileType("s", north=b)}
    sys = TileSystem([TileType("t", west=a, south=b)], seed, 2)
    ps = attachable(sys, seed)
    assert [(p.pos, p.inputs) for p in ps] == [((1, 1), frozenset({"W", "S"}))]


def test_seed_only_system_is_terminal():
    seed = {(0, 0): TileType("s", east=Glue("g", 2))}
    res = assemble(TileSystem([TileType("t", west=Glue("h", 2))], seed, 2))
    assert res.assembly == seed and res.deterministic and res.sequence == []


def test_ambiguity_is_flagged():
    g = Glue("g", 2)
    seed = {(0, 0): TileType("s", east=g)}
    res = assemble(TileSystem([TileType("t1", west=g), TileType("t2", west=g)], seed, 2))
    assert not res.deterministic


def test_region_overflow_and_clip():
    g = Glue("g", 2)
    seed = {(0, 0): TileType("s", east=g)}
    sys = TileSystem([TileType("t", west=g, east=g)], seed, 2)
    with pytest.raises(RegionOverflow):
        assemble(sys, region=Region(0, 0, 5, 0))
    res = assemble(sys, region=Region(0, 0, 5, 0), clip=True)
    assert sorted(res.assembly) == [(x, 0) for x in range(6)]
    assert is_connected(res.assembly)
    with pytest.raises(RegionOverflow):
        assemble(sys, max_tiles=20)


def test_tile_names_unique():
    with pytest.raises(ValueError):
        TileSystem([TileType("t"), TileType("t")], {(0, 0): TileType("s")}, 2)


# --- curves

def vertical(x=0.5, ys=(0,)):
    return GlueCurve((x, y) for y in ys)


def test_side_examples():
    c = vertical()
    assert c.side((0, 0)) == LHS
    assert c.side((1, 0)) == RHS
    assert c.translate((2, 0)).side((1, 0)) == LHS
    assert c.side((0, 100)) == LHS and c.side((3, -100)) == RHS


def test_curve_validation():
    with pytest.raises(CurveError):
        GlueCurve([])
    with pytest.raises(CurveError):
        GlueCurve([(0, 0.5)])  # lone horizontal segment
    with pytest.raises(CurveError):
        GlueCurve([(0.5, 0), (0.5, 2)])  # gap
    with pytest.raises(CurveError):
        GlueCurve([(0.25, 0)])
    with pytest.raises(CurveError):
        GlueCurve([(0, 0)])  # a lattice point, not an edge midpoint
    # goes up, east, then back down: the south ray would hit it
    with pytest.raises(CurveError):
        GlueCurve([(0.5, 0), (1, 0.5), (1.5, 0), (1.5, -1), (1.5, -2)])


def test_curve_json_round_trip():
    c = GlueCurve([(2.5, -2), (2, -1.5), (1.5, -1)])
    text = c.to_json()
    assert json.loads(text) == {"midpoints": [[2.5, -2], [2, -1.5], [1.5, -1]]}
    assert GlueCurve.from_json(text) == c
    assert GlueCurve.from_json(text).to_json() == text


@st.composite
def staircases(draw):
    """Simple curves built from north runs and non-reversing horizontal runs."""
    X, Y = 2 * draw(st.integers(-3, 3)) + 1, 2 * draw(st.integers(-3, 3)) + 1
    mids = []
    runs = draw(st.lists(st.tuples(st.integers(1, 3), st.sampled_from([-1, 0, 1]), st.integers(1, 3)),
                         min_size=1, max_size=4))
    for up, direction, length in runs:
        for _ in range(up):
            mids.append((X, Y + 1))
            Y += 2
        if direction:
            for _ in range(length):
                mids.append((X + direction, Y))
                X += 2 * direction
    return GlueCurve((mx / 2, my / 2) for mx, my in mids)


def flood_rhs(c, box):
    """Cells reachable from the far east without crossing the curve."""
    x0, y0, x1, y1 = box
    blocked = set()
    for X, Y in c.mids:
        if X % 2:
            blocked.add(((X - 1) // 2, Y // 2, "h"))  # between (x, y) and (x+1, y)
        else:
            blocked.add((X // 2, (Y - 1) // 2, "v"))  # between (x, y) and (x, y+1)
    xs, ys = c.vertices[0]
    xe, ye = c.vertices[-1]
    for y in range(y0, y1 + 1):
        if 2 * y < ys:
            blocked.add(((xs - 1) // 2, y, "h"))
        if 2 * y > ye:
            blocked.add(((xe - 1) // 2, y, "h"))
    start = (x1, y0)
    seen = {start}
    todo = deque([start])
    while todo:
        x, y = todo.popleft()
        for nx, ny, key in ((x + 1, y, (x, y, "h")), (x - 1, y, (x - 1, y, "h")),
                            (x, y + 1, (x, y, "v")), (x, y - 1, (x, y - 1, "v"))):
            if x0 <= nx <= x1 and y0 <= ny <= y1 and key not in blocked and (nx, ny) not in seen:
                seen.add((nx, ny))
                todo.append((nx, ny))
    return seen


@settings(max_examples=60)
@given(staircases())
def test_side_agrees_with_flood_fill(c):
    xs = [v[0] // 2 for v in c.vertices]
    ys = [v[1] // 2 for v in c.vertices]
    box = (min(xs) - 2, min(ys) - 2, max(xs) + 2, max(ys) + 2)
    rhs = flood_rhs(c, box)
    sides = set()
    for x in range(box[0], box[2] + 1):
        for y in range(box[1], box[3] + 1):
            s = c.side((x, y))
            sides.add(s)
            assert (s == RHS) == ((x, y) in rhs)
    assert sides == {LHS, RHS}


@settings(max_examples=40)
@given(staircases(), st.integers(-4, 4), st.integers(-4, 4))
def test_side_translation(c, dx, dy):
    c2 = c.translate((dx, dy))
    for x in range(-6, 7):
        for y in range(-6, 7):
            assert c2.side((x, y)) == c.side((x - dx, y - dy))


@settings(max_examples=40)
@given(staircases())
def test_curve_meets_itself_but_not_far_translates(c):
    assert c.crosses(c)
    width = max(v[0] for v in c.vertices) - min(v[0] for v in c.vertices)
    assert not c.crosses(c.translate((width // 2 + 1, 0)))


def test_bits_along_curve():
    b = build_copy(3)
    assert bits_along_curve(b.seeds[5], b.curve) == "101"
    assert bits_along_curve(b.seeds[0], b.curve) == "000"
    eps_only = {(0, 0): TileType("e", east=Glue("e", 1))}
    assert bits_along_curve(eps_only, vertical()) == ""
    with pytest.raises(CurveOffAssembly):
        bits_along_curve(eps_only, vertical(ys=(0, 1)))


def test_reading_prefers_left_tile():
    c = vertical()
    a = {(0, 0): TileType("l", east=Glue("x", 1, 1)), (1, 0): TileType("r", west=Glue("y", 1, 0))}
    assert bits_along_curve(a, c) == "1"
    assert bits_along_curve({(1, 0): a[(1, 0)]}, c) == "0"


# --- layer checks on small systems

def test_copy_layer_report():
    b = build_copy(3)
    rep = check_layer_computes(b.tiles, b.temperature, b.curve, b.v, b.seeds, 3)
    assert rep.valid
    assert rep.f.table == tuple(range(8))
    assert len(rep.order) == 5
    assert [rep.arity[z] for z in rep.order] == [0, 1, 1, 1, 0]
    c = compile_to_railway(rep)
    assert c.k == 5
    assert all(g.fn.table == tuple(range(1 << g.width)) for g in c.gates)


def test_iterate_copy():
    b = build_copy(3)
    assert iterate_layers(b.tiles, 2, b.curve, b.v, b.seeds[5], 4) == ["101"] * 4


def test_seed_mismatch():
    b = build_copy(3)
    seeds = dict(b.seeds)
    seeds[1], seeds[2] = seeds[2], seeds[1]
    with pytest.raises(SeedMismatch):
        check_layer_computes(b.tiles, 2, b.curve, b.v, seeds, 3)
    with pytest.raises(SeedMismatch):
        check_layer_computes(b.tiles, 2, b.curve, b.v, {0: b.seeds[0]}, 3)


def test_vector_must_point_east():
    b = build_copy(3)
    with pytest.raises(CurveError):
        check_layer_computes(b.tiles, 2, b.curve, (0, 2), b.seeds, 3)


def test_not_directed():
    b = build_copy(3)
    extra = TileType("rogue", west=Glue("cp.b", 2))
    with pytest.raises(NotDirected):
        check_layer_computes(b.tiles + (extra,), 2, b.curve, b.v, b.seeds, 3)


def test_non_confined_growth():
    a, bb, c, d = (Glue(k, 2) for k in "abcd")
    seed = {(0, 0): TileType("s", east=a)}
    tiles = [
        TileType("t1", west=a, east=bb),
        TileType("t2", west=bb, north=c),  # lands right of c+v
        TileType("t3", south=c, west=d),
        TileType("t4", east=d),  # comes back left of c+v
    ]
    with pytest.raises(NonConfinedGrowth):
        check_layer_computes(tiles, 2, vertical(), (1, 0), {0: seed}, 0)


def test_compile_guards():
    b = build_copy(3)
    rep = check_layer_computes(b.tiles, 2, b.curve, b.v, b.seeds, 3)
    rep.problems = [(0, rep.order[0], "forced")]
    with pytest.raises(NotValidReport):
        compile_to_railway(rep)
    b2 = build_copy(2)
    rep2 = check_layer_computes(b2.tiles, 2, b2.curve, b2.v, b2.seeds, 2)
    with pytest.raises(NTooSmall):
        compile_to_railway(rep2)


def test_output_side_order():
    assert output_sides({"W", "S"}) == ["E", "N"]
    assert output_sides({"N", "W"}) == ["S", "E"]
    assert output_sides({"W"}) == ["S", "E", "N"]
    with pytest.raises(CompileError):
        output_sides({"N", "S"})


def test_bundle_round_trip_bytes():
    b = build_copy(3)
    text = b.to_json()
    again = Bundle.from_json(text)
    assert again.to_json() == text
    assert again.seeds == b.seeds and again.curve == b.curve and again.v == b.v


def test_bundle_rejects_conflicting_glue_names():
    b = Bundle((TileType("a", east=Glue("g", 1, 0)), TileType("b", west=Glue("g", 2, 0))), 2)
    with pytest.raises(ValueError):
        b.to_json()
