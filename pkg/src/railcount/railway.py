"""Railway circuits: n wires, one gate per section.

States are integers with wire 0 as the most significant bit, so for n=3 the
state 0b100 has wire 0 set. Inside a gate the lowest wire is likewise the most
significant bit of the table index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import permfn
from .permfn import FiniteFunction, FunctionClass

MAX_GATE_WIDTH = 12
MAX_WIRES = 16


class RangeError(ValueError):
    pass


class NotLocal(ValueError):
    pass


class StateOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class GateFunction:
    width: int
    table: tuple

    def __init__(self, width: int, table: Iterable[int]):
        t = tuple(int(v) for v in table)
        if width < 1 or width > MAX_GATE_WIDTH:
            raise ValueError(f"gate width {width} outside 1..{MAX_GATE_WIDTH}")
        size = 1 << width
        if len(t) != size:
            raise ValueError(f"width-{width} gate needs {size} entries, got {len(t)}")
        if any(v < 0 or v >= size for v in t):
            raise ValueError("gate table entry out of range")
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "table", t)

    @classmethod
    def identity(cls, width: int) -> "GateFunction":
        return cls(width, range(1 << width))


@dataclass(frozen=True)
class Gate:
    section: int
    i: int
    j: int
    fn: GateFunction

    def __post_init__(self):
        if self.i < 0 or self.j < self.i:
            raise RangeError(f"bad wire range [{self.i}, {self.j}]")
        if self.fn.width != self.j - self.i + 1:
            raise RangeError("gate function width does not match its wire range")

    @property
    def width(self) -> int:
        return self.j - self.i + 1


def gate(section: int, i: int, j: int, table: Sequence[int]) -> Gate:
    if i < 0 or j < i:
        raise RangeError(f"bad wire range [{i}, {j}]")
    return Gate(section, i, j, GateFunction(j - i + 1, table))


def _check_state(x: int, n: int):
    if not 0 <= x < (1 << n):
        raise StateOutOfRange(f"state {x} outside 0..{(1 << n) - 1}")


def apply_gate(g: Gate, n: int, x: int) -> int:
    shift = n - 1 - g.j
    mask = (1 << g.width) - 1
    sub = (x >> shift) & mask
    return (x & ~(mask << shift)) | (g.fn.table[sub] << shift)


def lift_gate(g: Gate, n: int) -> FiniteFunction:
    """Table of the gate acting on n wires, passing the other wires through."""
    if g.j >= n:
        raise RangeError(f"gate on wires {g.i}..{g.j} does not fit {n} wires")
    return FiniteFunction(apply_gate(g, n, x) for x in range(1 << n))


@dataclass(frozen=True)
class RailwayCircuit:
    n: int
    gates: tuple

    def __init__(self, n: int, gates: Iterable[Gate] = ()):
        gates = tuple(gates)
        if n < 1 or n > MAX_WIRES:
            raise ValueError(f"wire count {n} outside 1..{MAX_WIRES}")
        for s, g in enumerate(gates):
            if g.section != s:
                raise ValueError(f"gate at position {s} claims section {g.section}")
            if g.j >= n:
                raise RangeError(f"gate {s} on wires {g.i}..{g.j} does not fit {n} wires")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gates", gates)

    @property
    def k(self) -> int:
        return len(self.gates)

    @classmethod
    def from_ranges(cls, n: int, specs) -> "RailwayCircuit":
        """Build from (i, j, table) triples, numbering sections in order."""
        return cls(n, [gate(s, i, j, t) for s, (i, j, t) in enumerate(specs)])

    def to_json(self) -> str:
        data = {
            "n": self.n,
            "gates": [
                {"s": g.section, "i": g.i, "j": g.j, "table": list(g.fn.table)}
                for g in self.gates
            ],
        }
        return json.dumps(data, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "RailwayCircuit":
        data = json.loads(text)
        gates = [gate(g["s"], g["i"], g["j"], g["table"]) for g in data["gates"]]
        gates.sort(key=lambda g: g.section)
        return cls(data["n"], gates)


def evaluate(c: RailwayCircuit, x: int) -> int:
    _check_state(x, c.n)
    for g in c.gates:
        x = apply_gate(g, c.n, x)
    return x


def circuit_function(c: RailwayCircuit) -> FiniteFunction:
    """f_{k-1} o ... o f_0, section 0 applied first."""
    table = list(range(1 << c.n))
    for g in c.gates:
        lifted = lift_gate(g, c.n).table
        table = [lifted[v] for v in table]
    return FiniteFunction(table)


def is_local(c: RailwayCircuit) -> bool:
    return all(g.width < c.n for g in c.gates)


def pass_through_wires(f: FiniteFunction, n: int) -> list:
    """Wires j with pi_j(f(x)) = x_j and the other outputs independent of x_j."""
    if f.m != 1 << n:
        raise ValueError("function domain is not {0,1}^n")
    t = f.table
    found = []
    for j in range(n):
        bit = 1 << (n - 1 - j)
        ok = True
        for x in range(f.m):
            y = t[x]
            if (y ^ x) & bit:
                ok = False
                break
            if not x & bit and (y ^ t[x | bit]) & ~bit:
                ok = False
                break
        if ok:
            found.append(j)
    return found


def _first_outside(g: Gate, n: int) -> int:
    return 0 if g.i > 0 else g.j + 1


def atomic_components(c: RailwayCircuit) -> list:
    """(lifted gate, witness pass-through wire) for each section."""
    if not is_local(c):
        raise NotLocal("some gate spans all wires")
    out = []
    for g in c.gates:
        f = lift_gate(g, c.n)
        j = _first_outside(g, c.n)
        if j not in pass_through_wires(f, c.n):
            raise AssertionError(f"wire {j} is not a pass-through wire of section {g.section}")
        out.append((f, j))
    return out


def trace(c: RailwayCircuit, x: int, f: Optional[FiniteFunction] = None) -> list:
    _check_state(x, c.n)
    t = (f or circuit_function(c)).table
    out = []
    for _ in range(1 << c.n):
        out.append(x)
        x = t[x]
    return out


def rho_lengths(f: FiniteFunction) -> list:
    """For every x, tail length plus cycle length of its orbit under f.

    Since tail + cycle <= m, this is also the number of distinct elements in
    the first m iterates, i.e. the distinct count of the trace.
    """
    t = f.table
    m = f.m
    rho = [0] * m
    state = [0] * m  # 0 unvisited, 1 on current path, 2 done
    for start in range(m):
        if state[start]:
            continue
        path = []
        pos = {}
        x = start
        while state[x] == 0:
            state[x] = 1
            pos[x] = len(path)
            path.append(x)
            x = t[x]
        if state[x] == 1:
            # closed a new cycle at x
            k = pos[x]
            cyc = len(path) - k
            for y in path[k:]:
                rho[y] = cyc
                state[y] = 2
            path = path[:k]
        for y in reversed(path):
            rho[y] = rho[t[y]] + 1
            state[y] = 2
    return rho


@dataclass(frozen=True)
class CounterReport:
    k: int
    witness: int
    cls: FunctionClass


def counter_of_function(f: FiniteFunction) -> tuple:
    rho = rho_lengths(f)
    k = max(rho)
    return k, rho.index(k)


def counter_value(c: RailwayCircuit, f: Optional[FiniteFunction] = None) -> CounterReport:
    f = f or circuit_function(c)
    k, w = counter_of_function(f)
    return CounterReport(k, w, permfn.classify(f))


@dataclass(frozen=True)
class ComponentVerdict:
    section: int
    witness: int
    cls: FunctionClass
    ramification: int
    ok: bool


def verify_atomic_restrictions(c: RailwayCircuit) -> tuple:
    """Per component: bijections must be even and r != 1. Returns (all_ok, verdicts)."""
    verdicts = []
    for g, (f, j) in zip(c.gates, atomic_components(c)):
        cls = permfn.classify(f)
        r = permfn.ramification_degree(f)
        ok = r != 1 and (cls.tag != permfn.BIJECTION or cls.parity == permfn.EVEN)
        verdicts.append(ComponentVerdict(g.section, j, cls, r, ok))
    return all(v.ok for v in verdicts), verdicts
