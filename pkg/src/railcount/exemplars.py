"""Builders for reference tile systems: a copy layer, iterated Boolean circuits
(IBC), and the zig-zig and zig-zag binary counters.

Every builder returns an atam Bundle holding the tile set, one seed per input
state, the input curve c, the translation v and the bit width n. All systems
run at temperature 2.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from .atam.curve import GlueCurve
from .atam.io import Bundle
from .atam.model import NULL, Glue, TileType
from .railway import RailwayCircuit

TEMPERATURE = 2


class InvalidSpec(ValueError):
    pass


class UnknownInterpretation(ValueError):
    pass


def _bits(x: int, n: int) -> list:
    return [(x >> (n - 1 - k)) & 1 for k in range(n)]


# ---------------------------------------------------------------- copy layer

def build_copy(n: int = 3) -> Bundle:
    """A one-column layer that copies n bits, with an eps seam at each end."""
    b2 = Glue("cp.b", 2)
    top = Glue("cp.t", 1)

    def row(r, b):
        return Glue(f"cp.r{r}.{b}", 1, b)

    def up(r):
        return Glue(f"cp.u{r}", 1)

    tiles = [TileType("cp.bottom", north=up(0), east=b2, west=b2)]
    for r in range(1, n + 1):
        for b in (0, 1):
            tiles.append(TileType(f"cp.row{r}.{b}", north=up(r), east=row(r, b), south=up(r - 1), west=row(r, b)))
    tiles.append(TileType("cp.top", east=top, south=up(n), west=top))

    seed_tiles = [TileType("cp.seed.bottom", east=b2), TileType("cp.seed.top", east=top)]
    seed_tiles += [TileType(f"cp.seed.r{r}.{b}", east=row(r, b)) for r in range(1, n + 1) for b in (0, 1)]
    by_name = {t.name: t for t in seed_tiles}
    seeds = {}
    for x in range(1 << n):
        a = {(0, 0): by_name["cp.seed.bottom"], (0, n + 1): by_name["cp.seed.top"]}
        for r, b in enumerate(_bits(x, n), start=1):
            a[(0, r)] = by_name[f"cp.seed.r{r}.{b}"]
        seeds[x] = a
    curve = GlueCurve((0.5, r) for r in range(n + 2))
    return Bundle(tuple(tiles), TEMPERATURE, tuple(seed_tiles), seeds, curve, (1, 0), n,
                  {"exemplar": "copy"})


# ---------------------------------------------------------------------- IBC

@dataclass(frozen=True)
class IbcSpec:
    """Gate tables for an n-bit IBC with `layers` rows of gates per layer.

    gates[q] lists the n+1 tables of row q: first the upper half-row (one-bit
    gate on wire 0, two-bit gates on wires (1,2), (3,4), ..., one-bit gate on
    wire n-1), then the lower half-row (two-bit gates on (0,1), (2,3), ...).
    Two-bit tables are indexed by (lower wire bit << 1) | higher wire bit.
    """

    n: int
    layers: int
    gates: tuple

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise InvalidSpec(f"IBC width must be even and >= 2, got {self.n}")
        if self.layers < 1:
            raise InvalidSpec("need at least one layer")
        if len(self.gates) != self.layers:
            raise InvalidSpec(f"expected {self.layers} rows of gates, got {len(self.gates)}")
        for row in self.gates:
            if len(row) != self.n + 1:
                raise InvalidSpec(f"each row needs {self.n + 1} gates")
            for k, t in enumerate(row):
                size = 1 << len(ibc_shape(self.n)[k])
                if len(t) != size or any(not 0 <= v < size for v in t):
                    raise InvalidSpec(f"gate {k} needs {size} entries in 0..{size - 1}")

    @classmethod
    def identity(cls, n: int, layers: int = 1) -> "IbcSpec":
        row = tuple(tuple(range(1 << len(w))) for w in ibc_shape(n))
        return cls(n, layers, (row,) * layers)

    @classmethod
    def random(cls, n: int, layers: int, rng: random.Random) -> "IbcSpec":
        rows = []
        for _ in range(layers):
            row = []
            for w in ibc_shape(n):
                size = 1 << len(w)
                row.append(tuple(rng.randrange(size) for _ in range(size)))
            rows.append(tuple(row))
        return cls(n, layers, tuple(rows))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "layers": self.layers,
                           "gates": [[list(t) for t in row] for row in self.gates]})

    @classmethod
    def from_json(cls, text: str) -> "IbcSpec":
        d = json.loads(text)
        return cls(d["n"], d["layers"], tuple(tuple(tuple(t) for t in row) for row in d["gates"]))


def ibc_shape(n: int) -> list:
    """Wire tuples of the n+1 gates of one IBC row, in IbcSpec order."""
    upper = [(0,)] + [(2 * j + 1, 2 * j + 2) for j in range(n // 2 - 1)] + [(n - 1,)]
    lower = [(2 * j, 2 * j + 1) for j in range(n // 2)]
    return upper + lower


def ibc_circuit(spec: IbcSpec) -> RailwayCircuit:
    """The railway circuit an IBC layer is meant to compute, one gate per section."""
    specs = []
    for row in spec.gates:
        for wires, table in zip(ibc_shape(spec.n), row):
            specs.append((wires[0], wires[-1], table))
    return RailwayCircuit.from_ranges(spec.n, specs)


def _ibc_d0(n: int) -> int:
    return -2 * ((n // 2 - 1) // 2)


def _pos(s: int, d: int):
    # s = x + y, d = y - x
    return ((s - d) // 2, (s + d) // 2)


def build_ibc(spec: IbcSpec) -> Bundle:
    """IBC tiles laid out along diagonals.

    Row q of gates sits on two anti-diagonals: the upper half-row at
    x + y = 2L - 1 and the lower one at x + y = 2L, where L = q + 1 (mod the
    layer count). Tiles read their inputs from W and S and write to E and N.
    Seam tiles at both ends carry no bits and bind with strength 2.
    """
    n, ell = spec.n, spec.layers
    d0 = _ibc_d0(n)
    a_low, a_high = d0 - 1, d0 + n - 1
    a_two = list(range(d0 + 1, d0 + n - 2, 2))
    b_two = list(range(d0, d0 + n - 1, 2))
    seam_low, seam_high = d0 - 2, d0 + n

    def out(q, kind, d, side, b=None, strength=1):
        name = f"ibc{q}.{kind}{d}{side}" + ("" if b is None else f".{b}")
        return Glue(name, strength, b)

    tiles = []
    for q in range(ell):
        p = (q - 1) % ell  # row feeding the upper half-row
        row = spec.gates[q]
        upper = row[: n // 2 + 1]
        lower = row[n // 2 + 1:]
        # upper half-row, one-bit ends
        for b in (0, 1):
            y = upper[0][b]
            tiles.append(TileType(
                f"ibc{q}.a{a_low}.{b}",
                west=out(p, "b", a_low + 1, "E", b),
                south=out(p, "b", seam_low, "N"),
                north=out(q, "a", a_low, "N", y),
                east=out(q, "a", a_low, "E", strength=2),
            ))
            y = upper[-1][b]
            tiles.append(TileType(
                f"ibc{q}.a{a_high}.{b}",
                west=out(p, "b", seam_high, "E"),
                south=out(p, "b", a_high - 1, "N", b),
                east=out(q, "a", a_high, "E", y),
                north=out(q, "a", a_high, "N", strength=2),
            ))
        # upper half-row, two-bit gates
        for d, table in zip(a_two, upper[1:-1]):
            for key in range(4):
                lo, hi = key >> 1, key & 1
                y = table[key]
                tiles.append(TileType(
                    f"ibc{q}.a{d}.{lo}{hi}",
                    south=out(p, "b", d - 1, "N", lo),
                    west=out(p, "b", d + 1, "E", hi),
                    east=out(q, "a", d, "E", y >> 1),
                    north=out(q, "a", d, "N", y & 1),
                ))
        # lower half-row
        for d, table in zip(b_two, lower):
            for key in range(4):
                lo, hi = key >> 1, key & 1
                y = table[key]
                tiles.append(TileType(
                    f"ibc{q}.b{d}.{lo}{hi}",
                    south=out(q, "a", d - 1, "N", lo),
                    west=out(q, "a", d + 1, "E", hi),
                    east=out(q, "b", d, "E", y >> 1),
                    north=out(q, "b", d, "N", y & 1),
                ))
        tiles.append(TileType(f"ibc{q}.b{seam_low}",
                              west=out(q, "a", a_low, "E", strength=2),
                              north=out(q, "b", seam_low, "N")))
        tiles.append(TileType(f"ibc{q}.b{seam_high}",
                              south=out(q, "a", a_high, "N", strength=2),
                              east=out(q, "b", seam_high, "E")))

    # seed: one lower half-row at x + y = 0 emitting row ell-1 glues, held
    # together by glue-less tiles at x + y = -1
    q = ell - 1
    seed_tiles = [TileType("ibc.seed.filler")]
    seed_tiles.append(TileType("ibc.seed.low", north=out(q, "b", seam_low, "N")))
    seed_tiles.append(TileType("ibc.seed.high", east=out(q, "b", seam_high, "E")))
    for d in b_two:
        for key in range(4):
            seed_tiles.append(TileType(f"ibc.seed.b{d}.{key >> 1}{key & 1}",
                                       east=out(q, "b", d, "E", key >> 1),
                                       north=out(q, "b", d, "N", key & 1)))
    by_name = {t.name: t for t in seed_tiles}
    seeds = {}
    for x in range(1 << n):
        bits = _bits(x, n)
        a = {_pos(0, seam_low): by_name["ibc.seed.low"], _pos(0, seam_high): by_name["ibc.seed.high"]}
        for j, d in enumerate(b_two):
            a[_pos(0, d)] = by_name[f"ibc.seed.b{d}.{bits[2 * j]}{bits[2 * j + 1]}"]
        for d in range(seam_low + 1, seam_high, 2):
            a[_pos(-1, d)] = by_name["ibc.seed.filler"]
        seeds[x] = a

    mids = []
    for d in [seam_low] + b_two + [seam_high]:
        x, y = _pos(0, d)
        mids.append((x + 0.5, y))
        if d != seam_high:
            mids.append((x, y + 0.5))
    curve = GlueCurve(mids)
    meta = {"exemplar": "ibc", "spec": json.loads(spec.to_json())}
    return Bundle(tuple(tiles), TEMPERATURE, tuple(seed_tiles), seeds, curve, (ell, ell), n, meta)


def load_ibc6_counter() -> IbcSpec:
    """A 6-bit, one-row gate assignment found by search with a long trace."""
    text = resources.files("railcount").joinpath("data/ibc6_counter.json").read_text()
    return IbcSpec.from_json(text)


def search_ibc_counter(n: int, seed: int, restarts: int = 20, steps: int = 2000):
    """Hill-climb over one-row IBC gate tables to maximise the counter value.

    Returns (best value, best spec). Used offline to produce the shipped
    assignment; the result depends only on the arguments.
    """
    from .railway import circuit_function, counter_of_function

    rng = random.Random(seed)
    shape = ibc_shape(n)

    def score(rows):
        spec = IbcSpec(n, 1, (tuple(rows),))
        return counter_of_function(circuit_function(ibc_circuit(spec)))[0]

    best_val, best = 0, None
    for _ in range(restarts):
        rows = list(IbcSpec.random(n, 1, rng).gates[0])
        val = score(rows)
        for _ in range(steps):
            k = rng.randrange(len(rows))
            size = 1 << len(shape[k])
            t = list(rows[k])
            t[rng.randrange(size)] = rng.randrange(size)
            trial = rows[:k] + [tuple(t)] + rows[k + 1:]
            v = score(trial)
            if v >= val:
                rows, val = trial, v
        if val > best_val:
            best_val, best = val, IbcSpec(n, 1, (tuple(rows),))
    return best_val, best


# ------------------------------------------------------------------ zig-zig

ZIGZIG_INTERPRETATIONS = ("carry-bits", "carry-eps")


def build_zigzig(n: int = 3, interp: str = "carry-bits") -> Bundle:
    """Binary increment, one column per step, each column growing top-down.

    Row 0 holds the most significant bit; the cap tile on row n injects the
    +1 carry into row n-1. Under "carry-bits" the vertical carry glues encode
    bits, under "carry-eps" they do not.
    """
    if n < 2:
        raise InvalidSpec("zig-zig needs n >= 2")
    if interp not in ZIGZIG_INTERPRETATIONS:
        raise UnknownInterpretation(interp)
    carry_bit = interp == "carry-bits"

    def bit(r, b):
        return Glue(f"zz.b{r}.{b}", 1, b)

    def carry(r, c):
        return Glue(f"zz.c{r}.{c}", 1, c if carry_bit else None)

    cap = Glue("zz.cap", 2)
    tiles = [TileType("zz.cap", east=cap, west=cap, south=carry(n - 1, 1))]
    for r in range(n):
        for b in (0, 1):
            for c in (0, 1):
                tiles.append(TileType(
                    f"zz.r{r}.{b}{c}",
                    west=bit(r, b),
                    north=carry(r, c),
                    east=bit(r, b ^ c),
                    south=carry(r - 1, b & c) if r > 0 else NULL,
                ))
    seed_tiles = [TileType("zz.seed.cap", east=cap)]
    seed_tiles += [TileType(f"zz.seed.r{r}.{b}", east=bit(r, b)) for r in range(n) for b in (0, 1)]
    by_name = {t.name: t for t in seed_tiles}
    seeds = {}
    for x in range(1 << n):
        a = {(0, n): by_name["zz.seed.cap"]}
        for r, b in enumerate(_bits(x, n)):
            a[(0, r)] = by_name[f"zz.seed.r{r}.{b}"]
        seeds[x] = a
    curve = GlueCurve((0.5, r) for r in range(n + 1))
    return Bundle(tuple(tiles), TEMPERATURE, tuple(seed_tiles), seeds, curve, (1, 0), n,
                  {"exemplar": "zigzig", "interp": interp})


# ------------------------------------------------------------------ zig-zag

ZIGZAG_INTERPRETATIONS = ("all-bits", "eps-top")


def _zigzag_interp(interp: str) -> str:
    key = interp.lower().replace("_", "-")
    key = {"allbits": "all-bits", "epstop": "eps-top"}.get(key, key)
    if key not in ZIGZAG_INTERPRETATIONS:
        raise UnknownInterpretation(interp)
    return key


def build_zigzag(n: int = 6, interp: str = "all-bits") -> Bundle:
    """Counter whose layers are an increment column followed by a copy column.

    Columns have n+1 rows. Row 0 carries the bit x0 between layers, rows
    1..n-1 the counter value (row 1 least significant) and row n turns the
    carry from the increment column into the copy column. The increment
    column starts from a constant carry of 1; the copy column folds its
    carry-out into the top counter bit, clears it, and writes x0 = 1.

    Under "all-bits" every glue on the cuts encodes a bit and the layer maps
    n bits to n bits. Under "eps-top" the x0 glue and the carry-out glue
    encode nothing, leaving the n-1 counter bits.
    """
    if n < 3:
        raise InvalidSpec("zig-zag needs n >= 3")
    interp = _zigzag_interp(interp)
    eps = interp == "eps-top"
    top = n

    def s_glue(b):
        return Glue(f"zg.s.{b}", 2, None if eps else b)

    def co(c):
        return Glue(f"zg.co.{c}", 2, None if eps else c)

    def data_in(r, b):  # copy column -> increment column
        return Glue(f"zg.d{r}.{b}", 1, b)

    def data_out(r, b):  # increment column -> copy column
        return Glue(f"zg.e{r}.{b}", 1, b)

    def up(r, c):
        return Glue(f"zg.k{r}.{c}", 1, c)

    def down(r, c):
        return Glue(f"zg.q{r}.{c}", 1, c)

    turn = Glue("zg.top", 1)
    bottom = Glue("zg.bot", 1)

    tiles = []
    for b in (0, 1):
        tiles.append(TileType(f"zg.zig0.{b}", west=s_glue(b), north=up(1, 1), east=bottom))
    for r in range(1, top):
        for d in (0, 1):
            for c in (0, 1):
                tiles.append(TileType(f"zg.zig{r}.{d}{c}", west=data_in(r, d), south=up(r, c),
                                      east=data_out(r, d ^ c), north=up(r + 1, d & c)))
    for c in (0, 1):
        tiles.append(TileType(f"zg.zig{top}.{c}", west=turn, south=up(top, c), east=co(c)))
        tiles.append(TileType(f"zg.zag{top}.{c}", west=co(c), south=down(top, c), east=turn))
    for r in range(top - 1, 0, -1):
        for d in (0, 1):
            for c in (0, 1):
                tiles.append(TileType(f"zg.zag{r}.{d}{c}", north=down(r + 1, c), west=data_out(r, d),
                                      east=data_in(r, d ^ c), south=down(r, 0)))
    for c in (0, 1):
        tiles.append(TileType(f"zg.zag0.{c}", north=down(1, c), west=bottom, east=s_glue(1 - c)))

    seed_tiles = [TileType("zg.seed.top", east=turn)]
    seed_tiles += [TileType(f"zg.seed.s.{b}", east=s_glue(b)) for b in (0, 1)]
    seed_tiles += [TileType(f"zg.seed.r{r}.{b}", east=data_in(r, b)) for r in range(1, top) for b in (0, 1)]
    by_name = {t.name: t for t in seed_tiles}

    def seed_for(x0, data_bits):
        a = {(0, 0): by_name[f"zg.seed.s.{x0}"], (0, top): by_name["zg.seed.top"]}
        for r, b in enumerate(data_bits, start=1):
            a[(0, r)] = by_name[f"zg.seed.r{r}.{b}"]
        return a

    seeds = {}
    if eps:
        width = n - 1
        for x in range(1 << width):
            seeds[x] = seed_for(1, _bits(x, width))
    else:
        width = n
        for x in range(1 << n):
            bits = _bits(x, n)
            seeds[x] = seed_for(bits[0], bits[1:])
    curve = GlueCurve((0.5, r) for r in range(top + 1))
    return Bundle(tuple(tiles), TEMPERATURE, tuple(seed_tiles), seeds, curve, (2, 0), width,
                  {"exemplar": "zigzag", "interp": interp})


def zigzag_eps_positions(n: int = 6) -> list:
    """Canonical layer indices whose tiles consume or produce the x0 or carry-out glue."""
    # increment column rows 0..n are z0..zn, copy column rows n..0 follow
    return [0, n, n + 1, 2 * n + 1]
