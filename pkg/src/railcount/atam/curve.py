"""Glue curves: simple rectilinear paths along tile edges, read south to north.

Internally every coordinate is doubled so that edge midpoints and corners are
integers. A vertical edge midpoint (x + 1/2, y) becomes (odd, even) and a
horizontal one (x, y + 1/2) becomes (even, odd). Corners are (odd, odd).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .model import E, N, S, W, Pos, TileType

LHS = "LHS"
RHS = "RHS"


class CurveError(ValueError):
    pass


class CurveOffAssembly(ValueError):
    pass


def _double(v) -> int:
    d = Fraction(v) * 2
    if d.denominator != 1:
        raise CurveError(f"coordinate {v} is not a multiple of 1/2")
    return int(d)


def _undouble(v: int):
    return v // 2 if v % 2 == 0 else v / 2


def _ends(mid):
    X, Y = mid
    if X % 2 and not Y % 2:
        return (X, Y - 1), (X, Y + 1)
    if Y % 2 and not X % 2:
        return (X - 1, Y), (X + 1, Y)
    raise CurveError(f"({X / 2}, {Y / 2}) is not an edge midpoint")


class GlueCurve:
    def __init__(self, midpoints: Iterable[Tuple]):
        mids = tuple((_double(x), _double(y)) for x, y in midpoints)
        if not mids:
            raise CurveError("a curve needs at least one segment")
        self.mids = mids
        self.vertices = self._walk(mids)
        if len(set(self.vertices)) != len(self.vertices):
            raise CurveError("curve is not simple")
        xs, ys = self.vertices[0]
        xe, ye = self.vertices[-1]
        for X, Y in self.vertices[1:]:
            if X == xs and Y < ys:
                raise CurveError("south ray hits the curve")
        for X, Y in self.vertices[:-1]:
            if X == xe and Y > ye:
                raise CurveError("north ray hits the curve")

    @staticmethod
    def _walk(mids):
        segs = [_ends(m) for m in mids]
        if len(segs) == 1:
            a, b = segs[0]
            if a[0] != b[0]:
                raise CurveError("a one-segment curve must be vertical")
            return [a, b]
        a, b = segs[0]
        nxt = set(segs[1])
        if b in nxt:
            path = [a, b]
        elif a in nxt:
            path = [b, a]
        else:
            raise CurveError("segments 0 and 1 do not touch")
        for k, (p, q) in enumerate(segs[1:], start=1):
            cur = path[-1]
            if p == cur:
                path.append(q)
            elif q == cur:
                path.append(p)
            else:
                raise CurveError(f"segment {k} does not continue the curve")
        return path

    def __eq__(self, other):
        return isinstance(other, GlueCurve) and self.mids == other.mids

    def __hash__(self):
        return hash(self.mids)

    def __len__(self):
        return len(self.mids)

    def __repr__(self):
        return f"GlueCurve({self.midpoints()!r})"

    def midpoints(self) -> list:
        return [(_undouble(X), _undouble(Y)) for X, Y in self.mids]

    def translate(self, v) -> "GlueCurve":
        dx, dy = v
        return GlueCurve((x + dx, y + dy) for x, y in self.midpoints())

    def side(self, z: Pos) -> str:
        """Which side of the curve the lattice point z lies on.

        Counts crossings of the ray going east from z; an odd count means the
        point is west of the curve, i.e. on its left when walking north.
        """
        X0, Y0 = 2 * z[0], 2 * z[1]
        count = 0
        for X, Y in self.mids:
            if X % 2 and Y == Y0 and X > X0:
                count += 1
        xs, ys = self.vertices[0]
        xe, ye = self.vertices[-1]
        if xs > X0 and Y0 < ys:
            count += 1
        if xe > X0 and Y0 > ye:
            count += 1
        return LHS if count % 2 else RHS

    def is_lhs(self, z: Pos) -> bool:
        return self.side(z) == LHS

    def crosses(self, other: "GlueCurve") -> bool:
        """True if the two curves (rays included) share a point."""
        if set(self.vertices) & set(other.vertices):
            return True
        for a, b in ((self, other), (other, self)):
            xs, ys = a.vertices[0]
            xe, ye = a.vertices[-1]
            for X, Y in b.vertices:
                if (X == xs and Y <= ys) or (X == xe and Y >= ye):
                    return True
            bxs, bys = b.vertices[0]
            bxe, bye = b.vertices[-1]
            if xs == bxs or xe == bxe:
                return True
            if xs == bxe and bye <= ys:
                return True
        return False

    def edge_tiles(self, k: int):
        """The two tiles touching segment k as ((pos, side facing the edge), ...)."""
        X, Y = self.mids[k]
        if X % 2:
            y = Y // 2
            return ((X - 1) // 2, y), E, ((X + 1) // 2, y), W
        x = X // 2
        return (x, (Y - 1) // 2), N, (x, (Y + 1) // 2), S

    def read(self, a) -> list:
        """Glue met at each segment, preferring the tile on the left-hand side."""
        out = []
        for k in range(len(self.mids)):
            p, ps, q, qs = self.edge_tiles(k)
            if not self.is_lhs(p):
                p, ps, q, qs = q, qs, p, ps
            if p in a:
                out.append(a[p].glue(ps))
            elif q in a:
                out.append(a[q].glue(qs))
            else:
                raise CurveOffAssembly(f"segment at {self.midpoints()[k]} touches no tile")
        return out

    def to_json(self) -> str:
        return json.dumps({"midpoints": [list(m) for m in self.midpoints()]})

    @classmethod
    def from_json(cls, text: str) -> "GlueCurve":
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["midpoints"]
        return cls(tuple(m) for m in data)


def bits_along_curve(a, c: GlueCurve) -> str:
    return "".join(str(g.bit) for g in c.read(a) if g.bit is not None)


def bit_locations(a, c: GlueCurve) -> list:
    """Doubled midpoints of the bit-encoding glues along c, with their bits."""
    return [(c.mids[k], g.bit) for k, g in enumerate(c.read(a)) if g.bit is not None]
