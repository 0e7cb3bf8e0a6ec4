"""Tiles, glues and assembly under the abstract Tile Assembly Model."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Tuple

Pos = Tuple[int, int]

N, E, S, W = "N", "E", "S", "W"
SIDES = (N, E, S, W)
DELTA = {N: (0, 1), E: (1, 0), S: (0, -1), W: (-1, 0)}
OPPOSITE = {N: S, S: N, E: W, W: E}


class RegionOverflow(RuntimeError):
    pass


@dataclass(frozen=True)
class Glue:
    """A glue type. bit is 0, 1 or None for a glue that encodes no bit."""

    name: str
    strength: int
    bit: Optional[int] = None

    def __post_init__(self):
        if self.strength < 0:
            raise ValueError("glue strength must be nonnegative")
        if self.bit not in (0, 1, None):
            raise ValueError(f"glue bit must be 0, 1 or None, got {self.bit!r}")
        if self.strength > 0 and not self.name:
            raise ValueError("a binding glue needs a name")

    @property
    def is_null(self) -> bool:
        return self.strength == 0

    def binds(self, other: "Glue") -> bool:
        return self.strength > 0 and self.name == other.name and self.strength == other.strength


NULL = Glue("", 0, None)


@dataclass(frozen=True)
class TileType:
    name: str
    north: Glue = NULL
    east: Glue = NULL
    south: Glue = NULL
    west: Glue = NULL

    def glue(self, side: str) -> Glue:
        return {N: self.north, E: self.east, S: self.south, W: self.west}[side]


def neighbor(z: Pos, side: str) -> Pos:
    dx, dy = DELTA[side]
    return (z[0] + dx, z[1] + dy)


@dataclass(frozen=True)
class Placement:
    tile: TileType
    pos: Pos
    inputs: frozenset


@dataclass(frozen=True)
class Region:
    """Inclusive bounding box."""

    xmin: int
    ymin: int
    xmax: int
    ymax: int

    def __contains__(self, z) -> bool:
        return self.xmin <= z[0] <= self.xmax and self.ymin <= z[1] <= self.ymax


class TileSystem:
    def __init__(self, tiles: Iterable[TileType], seed: Dict[Pos, TileType], temperature: int):
        if temperature < 1:
            raise ValueError("temperature must be positive")
        if not seed:
            raise ValueError("seed must be nonempty")
        self.tiles = tuple(tiles)
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise ValueError("tile type names must be unique")
        self.seed = dict(seed)
        self.temperature = temperature
        self._index = defaultdict(list)
        for t in self.tiles:
            for side in SIDES:
                g = t.glue(side)
                if not g.is_null:
                    self._index[(side, g)].append(t)

    def with_seed(self, seed: Dict[Pos, TileType]) -> "TileSystem":
        if not seed:
            raise ValueError("seed must be nonempty")
        other = object.__new__(TileSystem)
        other.__dict__.update(self.__dict__)
        other.seed = dict(seed)
        return other

    def placements_at(self, a: Dict[Pos, TileType], z: Pos) -> list:
        """All tile types that can stick at the empty position z."""
        cands = {}
        for side in SIDES:
            nb = a.get(neighbor(z, side))
            if nb is None:
                continue
            g = nb.glue(OPPOSITE[side])
            if g.is_null:
                continue
            for t in self._index.get((side, g), ()):
                cands[t.name] = t
        out = []
        for t in cands.values():
            total = 0
            ins = []
            for side in SIDES:
                nb = a.get(neighbor(z, side))
                if nb is not None and t.glue(side).binds(nb.glue(OPPOSITE[side])):
                    total += t.glue(side).strength
                    ins.append(side)
            if total >= self.temperature:
                out.append(Placement(t, z, frozenset(ins)))
        out.sort(key=lambda p: p.tile.name)
        return out


def is_connected(a: Dict[Pos, TileType]) -> bool:
    if not a:
        return True
    start = next(iter(a))
    seen = {start}
    stack = [start]
    while stack:
        z = stack.pop()
        for side in SIDES:
            y = neighbor(z, side)
            if y in a and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(a)


def frontier(a: Dict[Pos, TileType]) -> set:
    out = set()
    for z in a:
        for side in SIDES:
            y = neighbor(z, side)
            if y not in a:
                out.add(y)
    return out


def attachable(sys: TileSystem, a: Dict[Pos, TileType]) -> list:
    """Every placement that can stick to a, in canonical (y, x) order."""
    out = []
    for z in sorted(frontier(a), key=lambda p: (p[1], p[0])):
        out.extend(sys.placements_at(a, z))
    return out


@dataclass
class AssemblyResult:
    assembly: Dict[Pos, TileType]
    sequence: list
    deterministic: bool


def canonical_key(z: Pos):
    return (z[1], z[0])


def assemble(
    sys: TileSystem,
    region: Optional[Region] = None,
    allowed: Optional[Callable[[Pos], bool]] = None,
    clip: bool = False,
    order: str = "canonical",
    max_tiles: int = 1_000_000,
    start: Optional[Dict[Pos, TileType]] = None,
) -> AssemblyResult:
    """Grow from the seed (or from `start`) until no tile can attach.

    Positions rejected by `allowed` are never filled. Growth that would leave
    `region` raises RegionOverflow unless `clip` is set, in which case those
    positions are ignored.
    """
    if order not in ("canonical", "fifo"):
        raise ValueError(f"unknown order {order!r}")
    a = dict(sys.seed if start is None else start)
    deterministic = True
    pending: Dict[Pos, list] = {}

    def refresh(z):
        nonlocal deterministic
        pending.pop(z, None)
        if z in a:
            return
        if allowed is not None and not allowed(z):
            return
        ps = sys.placements_at(a, z)
        if not ps:
            return
        if region is not None and z not in region:
            if clip:
                return
            raise RegionOverflow(f"growth reached {z} outside {region}")
        if len({p.tile.name for p in ps}) > 1:
            deterministic = False
        pending[z] = ps

    for z in sorted(frontier(a), key=canonical_key):
        refresh(z)
    seq = []
    while pending:
        if order == "canonical":
            z = min(pending, key=canonical_key)
        else:
            z = next(iter(pending))
        p = pending.pop(z)[0]
        a[z] = p.tile
        seq.append(p)
        if len(seq) > max_tiles:
            raise RegionOverflow(f"more than {max_tiles} tiles attached")
        for side in SIDES:
            refresh(neighbor(z, side))
    return AssemblyResult(a, seq, deterministic)
