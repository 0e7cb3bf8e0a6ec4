"""Finite functions on {0..m-1}: ramification, classification, parity, cycles."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_M = 1 << 20

EVEN = "Even"
ODD = "Odd"

BIJECTION = "Bijection"
QUASI_BIJECTION = "QuasiBijection"
NEITHER = "Neither"


class NotABijection(ValueError):
    pass


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FiniteFunction:
    """A function f: {0..m-1} -> {0..m-1} stored as its table, table[i] = f(i)."""

    table: tuple

    def __init__(self, table: Iterable[int]):
        t = tuple(int(v) for v in table)
        m = len(t)
        if m < 1:
            raise ValueError("domain must be non-empty")
        if m > MAX_M:
            raise ValueError(f"domain size {m} exceeds {MAX_M}")
        for v in t:
            if v < 0 or v >= m:
                raise ValueError(f"table entry {v} out of range for m={m}")
        object.__setattr__(self, "table", t)

    @property
    def m(self) -> int:
        return len(self.table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __len__(self) -> int:
        return len(self.table)

    @classmethod
    def identity(cls, m: int) -> "FiniteFunction":
        return cls(range(m))

    def to_text(self) -> str:
        return " ".join(str(v) for v in (self.m,) + self.table)

    @classmethod
    def from_text(cls, text: str) -> "FiniteFunction":
        """Parse either the whitespace form "m t0 ... t{m-1}" or a JSON array."""
        s = text.strip()
        if s.startswith("["):
            return cls(json.loads(s))
        parts = [int(p) for p in s.split()]
        if not parts:
            raise ValueError("empty function text")
        m, rest = parts[0], parts[1:]
        if len(rest) != m:
            raise ValueError(f"expected {m} table entries, got {len(rest)}")
        return cls(rest)


@dataclass(frozen=True)
class Swap:
    i0: int
    i1: int

    def __post_init__(self):
        if self.i0 == self.i1:
            raise ValueError("a swap needs two distinct indices")

    def as_function(self, m: int) -> FiniteFunction:
        t = list(range(m))
        t[self.i0], t[self.i1] = self.i1, self.i0
        return FiniteFunction(t)


@dataclass(frozen=True)
class FunctionClass:
    tag: str
    parity: Optional[str] = None

    def __post_init__(self):
        if (self.tag == BIJECTION) != (self.parity is not None):
            raise ValueError("parity is present exactly for bijections")

    def __str__(self) -> str:
        return f"{self.tag} {self.parity}" if self.parity else self.tag


def _as_ff(f) -> FiniteFunction:
    return f if isinstance(f, FiniteFunction) else FiniteFunction(f)


def image_size(f) -> int:
    return len(set(_as_ff(f).table))


def antecedent_counts(f) -> list:
    """a_i(f) for every i in the domain."""
    f = _as_ff(f)
    counts = [0] * f.m
    for v in f.table:
        counts[v] += 1
    return counts


def ramification_degree(f, check: bool = True) -> int:
    f = _as_ff(f)
    r = sum(a - 1 for a in antecedent_counts(f) if a > 1)
    if check and r != f.m - image_size(f):
        raise AssertionError("ramification degree disagrees with m - |Im(f)|")
    return r


def is_bijection(f) -> bool:
    f = _as_ff(f)
    return image_size(f) == f.m


def _require_bijection(f) -> FiniteFunction:
    f = _as_ff(f)
    if not is_bijection(f):
        raise NotABijection(f"r(f) = {ramification_degree(f)} != 0")
    return f


def compose(f, g) -> FiniteFunction:
    """(f o g)(i) = f(g(i))."""
    f, g = _as_ff(f), _as_ff(g)
    if f.m != g.m:
        raise DomainMismatch(f"cannot compose m={f.m} with m={g.m}")
    ft = f.table
    return FiniteFunction(ft[v] for v in g.table)


def swap_decomposition(f) -> list:
    """Adjacent swaps performed while bubble sorting [f(0), ..., f(m-1)].

    With the returned list (t_0, ..., t_{p-1}) we have f = t_{p-1} o ... o t_0.
    """
    f = _require_bijection(f)
    a = list(f.table)
    swaps = []
    m = len(a)
    for end in range(m - 1, 0, -1):
        done = True
        for j in range(end):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                swaps.append(Swap(j, j + 1))
                done = False
        if done:
            break
    return swaps


def recompose(swaps: Sequence[Swap], m: int) -> FiniteFunction:
    t = list(range(m))
    for s in swaps:
        # apply the swap after everything composed so far
        t = [s.i1 if v == s.i0 else s.i0 if v == s.i1 else v for v in t]
    return FiniteFunction(t)


def inversion_count(f) -> int:
    """Number of pairs i < j with f(i) > f(j), by merge sort."""
    a = list(_as_ff(f).table)

    def sort(lo, hi):
        if hi - lo <= 1:
            return 0
        mid = (lo + hi) // 2
        inv = sort(lo, mid) + sort(mid, hi)
        left, right = a[lo:mid], a[mid:hi]
        i = j = 0
        k = lo
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                a[k] = left[i]
                i += 1
            else:
                a[k] = right[j]
                inv += len(left) - i
                j += 1
            k += 1
        a[k:hi] = left[i:] + right[j:]
        return inv

    return sort(0, len(a))


def parity_by_inversions(f) -> str:
    f = _require_bijection(f)
    return EVEN if inversion_count(f) % 2 == 0 else ODD


def parity_by_swaps(f) -> str:
    return EVEN if len(swap_decomposition(f)) % 2 == 0 else ODD


def parity(f, check: bool = False) -> str:
    p = parity_by_inversions(f)
    if check and p != parity_by_swaps(f):
        raise AssertionError("parity methods disagree")
    return p


def classify(f) -> FunctionClass:
    r = ramification_degree(f)
    if r == 0:
        return FunctionClass(BIJECTION, parity(f))
    if r == 1:
        return FunctionClass(QUASI_BIJECTION)
    return FunctionClass(NEITHER)


def cycle_structure(f) -> list:
    """Sorted cycle lengths, fixed points included."""
    f = _require_bijection(f)
    seen = [False] * f.m
    lengths = []
    for start in range(f.m):
        if seen[start]:
            continue
        n = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = f.table[i]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def is_k_cycle(f, k: int) -> bool:
    f = _require_bijection(f)
    if k == 1:
        return f.table == tuple(range(f.m))
    c = Counter(cycle_structure(f))
    return c[k] == 1 and c[1] == f.m - k and sum(c.values()) == f.m - k + 1


# Batched helpers for large random experiments.

def inversion_parity_batch(perms: np.ndarray) -> np.ndarray:
    """Inversion-count parity (0 even, 1 odd) for each row of an (N, m) array."""
    perms = np.asarray(perms)
    m = perms.shape[1]
    inv = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(m - 1):
        inv += (perms[:, i:i + 1] > perms[:, i + 1:]).sum(axis=1)
    return inv & 1


def swap_parity_batch(perms: np.ndarray) -> np.ndarray:
    """Swap-count parity of each row, counting the adjacent swaps of a bubble sort.

    Rows are sorted simultaneously with odd-even transposition passes, which is
    bubble sort with its compare-exchange steps reordered so that disjoint ones
    run together. Every exchange is still one adjacent swap.
    """
    a = np.array(perms, copy=True)
    m = a.shape[1]
    count = np.zeros(a.shape[0], dtype=np.int64)
    for step in range(m):
        start = step % 2
        left = a[:, start:m - 1:2]
        right = a[:, start + 1:m:2]
        k = min(left.shape[1], right.shape[1])
        left, right = left[:, :k], right[:, :k]
        swap = left > right
        count += swap.sum(axis=1)
        lo = np.where(swap, right, left)
        hi = np.where(swap, left, right)
        a[:, start:start + 2 * k:2] = lo
        a[:, start + 1:start + 2 * k:2] = hi
    if not (a == np.arange(m)).all():
        raise AssertionError("odd-even transposition sort did not finish")
    return count & 1
