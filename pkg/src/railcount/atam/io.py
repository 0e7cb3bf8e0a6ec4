"""JSON formats for tile sets, seeds, curves and complete layer problems."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Optional

from .curve import GlueCurve
from .model import NULL, Glue, Pos, TileSystem, TileType

_BIT_OUT = {0: "0", 1: "1", None: "eps"}
_BIT_IN = {"0": 0, "1": 1, "eps": None, 0: 0, 1: 1, None: None}


def glue_to_dict(g: Glue) -> dict:
    return {"name": g.name, "strength": g.strength, "bit": _BIT_OUT[g.bit]}


def glue_from_dict(d: dict) -> Glue:
    if d["bit"] not in _BIT_IN:
        raise ValueError(f"unknown glue bit {d['bit']!r}")
    return Glue(d["name"], int(d["strength"]), _BIT_IN[d["bit"]])


@dataclass
class Bundle:
    """A tile set together with what is needed to check or run one layer.

    seeds maps each input state to its seed assembly. The curve, vector and
    bit width are optional so that a bare tile system also fits.
    """

    tiles: tuple
    temperature: int
    seed_tiles: tuple = ()
    seeds: Dict[int, Dict[Pos, TileType]] = field(default_factory=dict)
    curve: Optional[GlueCurve] = None
    v: Optional[tuple] = None
    n: Optional[int] = None
    meta: dict = field(default_factory=dict)

    def system(self, x: int = 0) -> TileSystem:
        return TileSystem(self.tiles, self.seeds[x], self.temperature)

    def to_dict(self) -> dict:
        glues = {}
        for t in tuple(self.tiles) + tuple(self.seed_tiles):
            for g in (t.north, t.east, t.south, t.west):
                if g.is_null:
                    continue
                old = glues.setdefault(g.name, g)
                if old != g:
                    raise ValueError(f"glue name {g.name!r} is used for two glue types")

        def tile_dict(t):
            return {"name": t.name, **{k: (None if g.is_null else g.name)
                                       for k, g in zip("NESW", (t.north, t.east, t.south, t.west))}}

        d = {
            "temperature": self.temperature,
            "glues": [glue_to_dict(g) for g in glues.values()],
            "tiles": [tile_dict(t) for t in self.tiles],
            "seed_tiles": [tile_dict(t) for t in self.seed_tiles],
            "seeds": {str(x): [[z[0], z[1], t.name] for z, t in sorted(a.items(), key=lambda i: (i[0][1], i[0][0]))]
                      for x, a in sorted(self.seeds.items())},
        }
        if self.curve is not None:
            d["curve"] = {"midpoints": [list(m) for m in self.curve.midpoints()]}
        if self.v is not None:
            d["v"] = list(self.v)
        if self.n is not None:
            d["n"] = self.n
        if self.meta:
            d["meta"] = self.meta
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Bundle":
        glues = {g["name"]: glue_from_dict(g) for g in d.get("glues", [])}

        def tile(td):
            refs = []
            for k in "NESW":
                name = td.get(k)
                if name is None:
                    refs.append(NULL)
                elif name not in glues:
                    raise ValueError(f"tile {td['name']!r} uses undeclared glue {name!r}")
                else:
                    refs.append(glues[name])
            return TileType(td["name"], *refs)

        tiles = tuple(tile(t) for t in d["tiles"])
        seed_tiles = tuple(tile(t) for t in d.get("seed_tiles", []))
        by_name = {t.name: t for t in seed_tiles + tiles}
        seeds = {}
        for x, entries in d.get("seeds", {}).items():
            seeds[int(x)] = {(int(px), int(py)): by_name[name] for px, py, name in entries}
        curve = GlueCurve(tuple(m) for m in d["curve"]["midpoints"]) if "curve" in d else None
        v = tuple(d["v"]) if "v" in d else None
        return cls(tiles, int(d["temperature"]), seed_tiles, seeds, curve, v, d.get("n"), d.get("meta", {}))

    @classmethod
    def from_json(cls, text: str) -> "Bundle":
        return cls.from_dict(json.loads(text))
