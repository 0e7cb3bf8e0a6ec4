"""Layer computation: checking that a tile set computes f between c and c+v,
compiling such a tile set to a local railway circuit, and iterating layers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from ..permfn import FiniteFunction
from ..railway import GateFunction, Gate, RailwayCircuit, circuit_function
from .curve import GlueCurve, CurveError, bit_locations, bits_along_curve
from .model import (
    DELTA,
    E,
    N,
    S,
    SIDES,
    W,
    OPPOSITE,
    Placement,
    Pos,
    Region,
    TileSystem,
    assemble,
    neighbor,
)


class LayerError(ValueError):
    pass


class SeedMismatch(LayerError):
    pass


class NonConfinedGrowth(LayerError):
    pass


class NotDirected(LayerError):
    pass


class Unclean(LayerError):
    def __init__(self, problems, report=None):
        self.problems = problems
        self.report = report
        msg = "; ".join(f"z{i} at {z}: {why}" for i, z, why in problems)
        super().__init__(f"layer does not map cleanly to gates: {msg}")

    @property
    def indices(self) -> list:
        return sorted({i for i, _, _ in self.problems})


class NotValidReport(ValueError):
    pass


class NTooSmall(ValueError):
    pass


class CompileError(ValueError):
    pass


class ReadMismatch(AssertionError):
    pass


# Sides in counter-clockwise order, used to order a tile's outputs.
CCW = (E, N, W, S)


def side_midpoint(z: Pos, side: str):
    dx, dy = DELTA[side]
    return (2 * z[0] + dx, 2 * z[1] + dy)


def bit_arity(p) -> tuple:
    """(input bits, output bits) of a placement."""
    k_in = k_out = 0
    for side in SIDES:
        if p.tile.glue(side).bit is None:
            continue
        if side in p.inputs:
            k_in += 1
        else:
            k_out += 1
    return k_in, k_out


def output_sides(inputs) -> list:
    """Non-input sides, counter-clockwise from the end of the contiguous input arc."""
    k = len(inputs)
    for r in range(4):
        rot = CCW[r:] + CCW[:r]
        if set(rot[:k]) == set(inputs):
            return list(rot[k:])
    raise CompileError(f"input sides {sorted(inputs)} are not contiguous")


@dataclass
class LayerReport:
    n: int
    f: FiniteFunction
    order: list
    placements: Dict[Pos, dict]  # z -> {x: Placement}
    arity: Dict[Pos, Optional[int]]
    problems: list
    curve: GlueCurve
    v: tuple
    in_locations: list
    out_locations: list
    seeds: dict = field(repr=False, default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.problems


def _replay(sys: TileSystem, base, alpha, order, temperature):
    beta = dict(base)
    out = []
    for z in order:
        t = alpha[z]
        ins = []
        total = 0
        for side in SIDES:
            nb = beta.get(neighbor(z, side))
            if nb is not None and t.glue(side).binds(nb.glue(OPPOSITE[side])):
                ins.append(side)
                total += t.glue(side).strength
        if total < temperature:
            raise LayerError(f"tile at {z} cannot attach in the canonical position order")
        out.append(Placement(t, z, frozenset(ins)))
        beta[z] = t
    return out


def _cleanliness(order, placements) -> tuple:
    problems = []
    arity = {}
    for idx, z in enumerate(order):
        ps = list(placements[z].values())
        ar = {bit_arity(p) for p in ps}
        k = None
        if len(ar) != 1:
            problems.append((idx, z, f"arity differs across inputs: {sorted(ar)}"))
        else:
            k_in, k_out = ar.pop()
            if k_in != k_out:
                problems.append((idx, z, f"fanin {k_in} != fanout {k_out}"))
            elif k_in > 2:
                problems.append((idx, z, f"arity {k_in} > 2"))
            else:
                k = k_in
        arity[z] = k
        for side in SIDES:
            gl = [p.tile.glue(side) for p in ps]
            if any(g.bit is None for g in gl) and len(set(gl)) > 1:
                problems.append((idx, z, f"non-bit glue on side {side} varies with the input"))
    return problems, arity


def check_layer_computes(
    tiles,
    temperature: int,
    curve: GlueCurve,
    v,
    seeds: Dict[int, dict],
    n: int,
    region: Optional[Region] = None,
    raise_unclean: bool = True,
    max_tiles: int = 100_000,
) -> LayerReport:
    """Verify that the tile set computes some f on n bits between curve and curve + v.

    seeds maps every state x in 0..2^n-1 to its seed assembly.
    """
    v = tuple(v)
    if v[0] <= 0:
        raise CurveError("the translation vector needs a positive x component")
    c2 = curve.translate(v)
    if curve.crosses(c2):
        raise CurveError("curve and its translate intersect")
    missing = [x for x in range(1 << n) if x not in seeds]
    if missing:
        raise SeedMismatch(f"no seed for inputs {missing[:5]}")
    c3 = curve.translate((2 * v[0], 2 * v[1]))
    sys = TileSystem(tiles, seeds[0], temperature)

    table = []
    alphas = {}
    layer_pos = {}
    in_locs = out_locs = None
    for x in range(1 << n):
        seed = seeds[x]
        want = format(x, f"0{n}b") if n else ""
        if any(not curve.is_lhs(z) for z in seed):
            raise SeedMismatch(f"seed for {want} has tiles right of the curve")
        got = bits_along_curve(seed, curve)
        if got != want:
            raise SeedMismatch(f"seed for {want} reads {got!r} along the curve")
        locs = [m for m, _ in bit_locations(seed, curve)]
        if in_locs is None:
            in_locs = locs
        elif locs != in_locs:
            raise SeedMismatch("bit glue locations along the curve vary with the input")

        sx = sys.with_seed(seed)
        res = assemble(sx, region=region, allowed=c2.is_lhs, max_tiles=max_tiles)
        if not res.deterministic:
            raise NotDirected(f"more than one tile type competes for a position (input {want})")
        alpha = res.assembly
        more = assemble(sx, region=region, allowed=c3.is_lhs, clip=True,
                        max_tiles=max_tiles, start=alpha)
        extra = [z for z in more.assembly if z not in alpha and c2.is_lhs(z)]
        if extra:
            raise NonConfinedGrowth(f"tiles reach {sorted(extra)[:3]} left of c+v only after crossing it")

        out = bits_along_curve(alpha, c2)
        if len(out) != n:
            raise LayerError(f"input {want} gives {len(out)} output bits, expected {n}")
        olocs = [m for m, _ in bit_locations(alpha, c2)]
        if out_locs is None:
            out_locs = olocs
        elif olocs != out_locs:
            raise LayerError("bit glue locations along c+v vary with the input")
        table.append(int(out, 2) if n else 0)
        alphas[x] = (res, seed)
        layer_pos[x] = [p.pos for p in res.sequence if not curve.is_lhs(p.pos)]

    problems = []
    ref_order = layer_pos[0]
    ref_set = set(ref_order)
    placements = {z: {} for z in ref_order}
    for x in range(1 << n):
        res, seed = alphas[x]
        here = set(layer_pos[x])
        if here != ref_set:
            diff = sorted(here ^ ref_set, key=lambda z: (z[1], z[0]))
            idx = ref_order.index(diff[0]) if diff[0] in ref_set else len(ref_order)
            problems.append((idx, diff[0], f"position occupied for some inputs only (input {x})"))
            continue
        base = {z: t for z, t in res.assembly.items() if z not in ref_set}
        for p in _replay(sys, base, res.assembly, ref_order, temperature):
            placements[p.pos][x] = p

    arity = {}
    if not problems:
        problems, arity = _cleanliness(ref_order, placements)
    report = LayerReport(
        n=n,
        f=FiniteFunction(table),
        order=ref_order,
        placements=placements,
        arity=arity,
        problems=problems,
        curve=curve,
        v=v,
        in_locations=in_locs,
        out_locations=out_locs,
        seeds=seeds,
    )
    if problems and raise_unclean:
        raise Unclean(problems, report)
    return report


def compile_to_railway(report: LayerReport, verify: bool = True) -> RailwayCircuit:
    """One section per layer position, in the canonical order."""
    if not report.valid:
        raise NotValidReport("report has cleanliness problems")
    n = report.n
    if n < 3:
        raise NTooSmall("compilation needs n >= 3")
    inputs = range(1 << n)
    where = {x: list(report.in_locations) for x in inputs}
    gates = []
    for s, z in enumerate(report.order):
        k = report.arity[z]
        if k == 0:
            gates.append(Gate(s, 0, 0, GateFunction.identity(1)))
            continue
        span = None
        table = {}
        for x in inputs:
            p = report.placements[z][x]
            loc = where[x]
            in_sides = [d for d in SIDES if d in p.inputs and p.tile.glue(d).bit is not None]
            wires = []
            for d in in_sides:
                m = side_midpoint(z, d)
                if m not in loc:
                    raise CompileError(f"z{s}: input glue at {m} is not on a tracked wire")
                wires.append((loc.index(m), d))
            wires.sort()
            lo, hi = wires[0][0], wires[-1][0]
            if hi - lo + 1 != len(wires):
                raise CompileError(f"z{s}: input wires {[w for w, _ in wires]} are not adjacent")
            if span is None:
                span = (lo, hi)
            elif span != (lo, hi):
                raise CompileError(f"z{s}: input wires depend on the input")
            outs = [d for d in output_sides(p.inputs) if p.tile.glue(d).bit is not None]
            key = 0
            for _, d in wires:
                key = (key << 1) | p.tile.glue(d).bit
            val = 0
            for d in outs:
                val = (val << 1) | p.tile.glue(d).bit
            if table.setdefault(key, val) != val:
                raise CompileError(f"z{s}: same input bits give different outputs")
            for w, d in zip(range(lo, hi + 1), outs):
                loc[w] = side_midpoint(z, d)
        lo, hi = span
        full = [table.get(i, i) for i in range(1 << (hi - lo + 1))]
        gates.append(Gate(s, lo, hi, GateFunction(hi - lo + 1, full)))
    for x in inputs:
        if where[x] != list(report.out_locations):
            raise CompileError("tracked wires do not end on the bit glues of c+v")
    circuit = RailwayCircuit(n, gates)
    if verify and circuit_function(circuit) != report.f:
        raise CompileError("compiled circuit disagrees with the layer function")
    return circuit


def iterate_layers(
    tiles,
    temperature: int,
    curve: GlueCurve,
    v,
    seed: dict,
    k: int,
    region: Optional[Region] = None,
    expected: Optional[list] = None,
    clip: bool = False,
    max_tiles: int = 1_000_000,
) -> list:
    """Bit strings read along c, c+v, ..., c+(k-1)v after growing k-1 layers."""
    if k < 1:
        raise ValueError("need at least one layer")
    cuts = [curve.translate((i * v[0], i * v[1])) for i in range(k)]
    for i in range(1, k):
        if curve.crosses(cuts[i]):
            raise CurveError(f"curve meets its translate by {i}v")
    last = cuts[-1]
    sys = TileSystem(tiles, seed, temperature)
    res = assemble(sys, region=region, allowed=last.is_lhs, clip=clip, max_tiles=max_tiles)
    readings = [bits_along_curve(res.assembly, c) for c in cuts]
    if expected is not None:
        for i, (got, want) in enumerate(zip(readings, expected)):
            if got != want:
                raise ReadMismatch(f"cut {i} reads {got}, expected {want}")
    return readings


def iterate_assembly(tiles, temperature, curve, v, seed, k, region=None, clip=False):
    """The assembly grown by iterate_layers, for rendering."""
    last = curve.translate(((k - 1) * v[0], (k - 1) * v[1]))
    sys = TileSystem(tiles, seed, temperature)
    return assemble(sys, region=region, allowed=last.is_lhs, clip=clip).assembly
