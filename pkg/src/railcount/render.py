"""ASCII and SVG pictures of assemblies and railway circuits."""

from __future__ import annotations

from typing import Dict, Optional
from xml.sax.saxutils import escape

from .atam.model import Glue, Pos, TileType
from .railway import RailwayCircuit

BIT_FILL = "#222222"
EPS_FILL = "#bbbbbb"


def _mark(g: Glue) -> str:
    if g.is_null:
        return " "
    return "." if g.bit is None else str(g.bit)


def _bounds(a):
    xs = [z[0] for z in a]
    ys = [z[1] for z in a]
    return min(xs), min(ys), max(xs), max(ys)


def assembly_ascii(a: Dict[Pos, TileType], seed: Optional[dict] = None) -> str:
    """Three text rows per lattice row; glue marks are 0, 1, '.' (no bit) or blank.

    Seed tiles show '@' in the middle, grown tiles '#'.
    """
    if not a:
        return ""
    seed = seed or {}
    x0, y0, x1, y1 = _bounds(a)
    lines = []
    for y in range(y1, y0 - 1, -1):
        top, mid, bot = [], [], []
        for x in range(x0, x1 + 1):
            t = a.get((x, y))
            if t is None:
                top.append("   ")
                mid.append("   ")
                bot.append("   ")
                continue
            c = "@" if (x, y) in seed else "#"
            top.append(f" {_mark(t.north)} ")
            mid.append(f"{_mark(t.west)}{c}{_mark(t.east)}")
            bot.append(f" {_mark(t.south)} ")
        lines += ["".join(top).rstrip(), "".join(mid).rstrip(), "".join(bot).rstrip()]
    return "\n".join(lines) + "\n"


def assembly_svg(a: Dict[Pos, TileType], seed: Optional[dict] = None, cell: int = 40) -> str:
    seed = seed or {}
    if not a:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"></svg>\n'
    x0, y0, x1, y1 = _bounds(a)
    w = (x1 - x0 + 1) * cell
    h = (y1 - y0 + 1) * cell
    q = cell // 4
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    for (x, y), t in sorted(a.items(), key=lambda i: (-i[0][1], i[0][0])):
        px = (x - x0) * cell
        py = (y1 - y) * cell
        fill = "#f3e6c8" if (x, y) in seed else "#ffffff"
        out.append(f'<rect x="{px}" y="{py}" width="{cell}" height="{cell}" fill="{fill}" stroke="#000000">'
                   f'<title>{escape(t.name)}</title></rect>')
        boxes = {
            "N": (px + q, py, 2 * q, q // 2 or 1),
            "S": (px + q, py + cell - (q // 2 or 1), 2 * q, q // 2 or 1),
            "W": (px, py + q, q // 2 or 1, 2 * q),
            "E": (px + cell - (q // 2 or 1), py + q, q // 2 or 1, 2 * q),
        }
        for side, (bx, by, bw, bh) in boxes.items():
            g = t.glue(side)
            if g.is_null:
                continue
            color = EPS_FILL if g.bit is None else BIT_FILL
            out.append(f'<rect x="{bx}" y="{by}" width="{bw}" height="{bh}" fill="{color}"/>')
            if g.bit is not None:
                tx = bx + bw // 2 + (6 if side == "W" else -6 if side == "E" else 0)
                ty = by + bh // 2 + (9 if side == "N" else -3 if side == "S" else 4)
                out.append(f'<text x="{tx}" y="{ty}" font-size="9" text-anchor="middle">{g.bit}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def circuit_ascii(c: RailwayCircuit) -> str:
    """Wire 0 on top; each section is a column, '#' where its gate acts."""
    lines = []
    for w in range(c.n):
        row = [f"x{w:<2} "]
        for g in c.gates:
            row.append("-#-" if g.i <= w <= g.j else "---")
        lines.append("".join(row) + "-")
    return "\n".join(lines) + "\n"


def circuit_svg(c: RailwayCircuit, pitch: int = 30) -> str:
    w = (c.k + 1) * pitch + 40
    h = (c.n + 1) * pitch
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    for wire in range(c.n):
        y = (wire + 1) * pitch
        out.append(f'<line x1="30" y1="{y}" x2="{w - 10}" y2="{y}" stroke="#000000"/>')
        out.append(f'<text x="4" y="{y + 4}" font-size="12">x{wire}</text>')
    for g in c.gates:
        x = 30 + (g.section + 1) * pitch - pitch // 3
        y = (g.i + 1) * pitch - pitch // 3
        gh = (g.j - g.i) * pitch + 2 * pitch // 3
        out.append(f'<rect x="{x}" y="{y}" width="{2 * pitch // 3}" height="{gh}" fill="#dddddd" stroke="#000000"/>')
        out.append(f'<text x="{x + pitch // 3}" y="{y + gh // 2 + 4}" font-size="10" text-anchor="middle">{g.section}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
