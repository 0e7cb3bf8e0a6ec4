"""Enumeration, closure and sampling over local railway circuits."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import permfn
from .permfn import FiniteFunction
from .railway import (
    RailwayCircuit,
    circuit_function,
    counter_of_function,
    gate,
    lift_gate,
)

MAX_ENUM_WIDTH = 4
MAX_SAMPLE_WIRES = 8


class WidthTooLarge(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class GateChoice:
    i: int
    j: int
    table: tuple
    lifted: FiniteFunction


@dataclass
class GeneratorSet:
    n: int
    choices: list  # every (placement, function) pair, before dedup
    lifted: list  # distinct lifted tables, first-seen order


def _all_tables(w: int):
    size = 1 << w
    return itertools.product(range(size), repeat=size)


def enumerate_local_gates(n: int, max_width: int) -> GeneratorSet:
    if max_width < 1 or max_width >= n or max_width > MAX_ENUM_WIDTH:
        raise WidthTooLarge(
            f"need 1 <= max_width < n and max_width <= {MAX_ENUM_WIDTH}, got n={n}, max_width={max_width}"
        )
    choices = []
    seen = {}
    for w in range(1, max_width + 1):
        for i in range(n - w + 1):
            j = i + w - 1
            for table in _all_tables(w):
                f = lift_gate(gate(0, i, j, table), n)
                choices.append(GateChoice(i, j, table, f))
                seen.setdefault(f.table, f)
    return GeneratorSet(n, choices, list(seen.values()))


@dataclass
class ClosureResult:
    reached: set
    max_counter: int
    witness: Optional[tuple]
    certificate: list = field(default_factory=list)


def _verdict(f: FiniteFunction) -> dict:
    cls = permfn.classify(f)
    r = permfn.ramification_degree(f)
    ok = r != 1 and (cls.tag != permfn.BIJECTION or cls.parity == permfn.EVEN)
    return {"class": cls.tag, "parity": cls.parity, "r": r, "pass": ok}


def monoid_closure_max_counter(n: int = 2, generators: Optional[Iterable[FiniteFunction]] = None) -> ClosureResult:
    """Close the local generators under composition and take the best counter."""
    if n >= 3:
        raise TooLarge("exhaustive closure is only run for n = 2; use certificate or sampling")
    if generators is None:
        generators = enumerate_local_gates(n, n - 1).lifted if n > 1 else []
    gens = [g.table for g in generators]
    ident = tuple(range(1 << n))
    reached = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(g[v] for v in h)
                if c not in reached:
                    reached.add(c)
                    nxt.append(c)
        frontier = nxt
    best, witness = 0, None
    for t in sorted(reached):
        k, _ = counter_of_function(FiniteFunction(t))
        if k > best:
            best, witness = k, t
    if best >= 1 << n:
        raise AssertionError(f"closure reached a {best}-counter on {n} wires")
    cert = [dict(_verdict(FiniteFunction(g)), table=list(g)) for g in gens]
    return ClosureResult(reached, best, witness, cert)


def default_certify_width(n: int) -> int:
    return min(n - 1, 2)


def certify_theorem_main(n: int, max_width: Optional[int] = None) -> tuple:
    """Check every local generator: bijections are even and r != 1.

    Returns (all_pass, lines) where each line is a JSON object for one gate choice.
    """
    if not 2 <= n <= 4:
        raise WidthTooLarge(f"certificates are produced for 2 <= n <= 4, got {n}")
    if max_width is None:
        max_width = default_certify_width(n)
    gens = enumerate_local_gates(n, max_width)
    lines = []
    all_ok = True
    for idx, ch in enumerate(gens.choices):
        v = _verdict(ch.lifted)
        all_ok &= v["pass"]
        rec = {"index": idx, "n": n, "i": ch.i, "j": ch.j, "gate": list(ch.table)}
        rec.update(v)
        lines.append(json.dumps(rec, separators=(",", ":")))
    return all_ok, lines


def random_local_circuit(rng: random.Random, n: int, k: int, shape: Optional[Sequence] = None,
                         max_width: Optional[int] = None) -> RailwayCircuit:
    if shape is None:
        cap = min(n - 1, max_width or n - 1)
        shape = []
        for _ in range(k):
            w = rng.randint(1, cap)
            i = rng.randint(0, n - w)
            shape.append((i, i + w - 1))
    specs = []
    for i, j in shape:
        size = 1 << (j - i + 1)
        specs.append((i, j, [rng.randrange(size) for _ in range(size)]))
    return RailwayCircuit.from_ranges(n, specs)


@dataclass
class SampleReport:
    n: int
    k: int
    count: int
    seed: int
    max_counter: int
    witness: Optional[RailwayCircuit]


def sample_max_counter(n: int, k: int, count: int, seed: int, shape: Optional[Sequence] = None,
                       max_width: Optional[int] = None) -> SampleReport:
    """Largest counter value over `count` seeded random local circuits."""
    if n < 2 or n > MAX_SAMPLE_WIRES:
        raise ValueError(f"sampling supports 2 <= n <= {MAX_SAMPLE_WIRES}")
    if shape is not None:
        k = len(shape)
        if any(j - i + 1 >= n for i, j in shape):
            raise ValueError("shape contains a non-local gate")
    rng = random.Random(seed)
    best, witness = 1, None
    for _ in range(count):
        c = random_local_circuit(rng, n, k, shape, max_width)
        value, _ = counter_of_function(circuit_function(c))
        if value > best:
            best, witness = value, c
    if best >= 1 << n:
        raise AssertionError(f"sampled a local {best}-counter on {n} wires")
    return SampleReport(n, k, count, seed, best, witness)


IBC6_SHAPE = ((0, 0), (1, 2), (3, 4), (5, 5), (0, 1), (2, 3), (4, 5))
