"""Acceptance criteria, one test each.

Every test records a line in RESULTS; conftest prints them after the run.
"""

import itertools
import random
import time

import numpy as np
import pytest

from railcount import permfn
from railcount.atam import Unclean, check_layer_computes, compile_to_railway, iterate_layers
from railcount.counterlab import certify_theorem_main, monoid_closure_max_counter, sample_max_counter
from railcount.exemplars import IbcSpec, build_copy, build_ibc, build_zigzag, build_zigzig, zigzag_eps_positions
from railcount.permfn import EVEN, ODD, FiniteFunction, compose, ramification_degree
from railcount.railway import circuit_function, counter_value

RESULTS = {}


def record(num, title, ok, elapsed, limit, detail=""):
    ok = bool(ok) and elapsed < limit
    line = f"AC{num:<2} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.3f}s, limit {limit:g}s){'  ' + detail if detail else ''}"
    RESULTS[num] = line
    print(line)
    assert ok, line


def report(b):
    return check_layer_computes(b.tiles, b.temperature, b.curve, b.v, b.seeds, b.n)


def test_ac01_parity_examples():
    t = time.perf_counter()
    a = permfn.parity([1, 0, 3, 2])
    b = permfn.parity([0, 2, 1])
    dt = time.perf_counter() - t
    record(1, "parity examples", a == EVEN and b == ODD, dt, 0.001, f"{a}, {b}")


def test_ac02_ramification_figure():
    t = time.perf_counter()
    f = FiniteFunction([0, 1, 1, 1, 2, 2, 3])
    r, im = ramification_degree(f), permfn.image_size(f)
    record(2, "potato function r and image", (r, im) == (3, 4), time.perf_counter() - t, 1, f"r={r} |Im|={im}")


def test_ac03_ramification_equals_m_minus_image():
    t = time.perf_counter()
    cases, ok = 0, True
    for m in range(1, 6):
        for table in itertools.product(range(m), repeat=m):
            ok &= ramification_degree(table, check=False) == m - len(set(table))
            cases += 1
    record(3, "r(f) = m - |Im f| for all m^m, m <= 5", ok and cases == 3413, time.perf_counter() - t, 1,
           f"{cases} functions")


def test_ac04_composition_never_lowers_ramification():
    t = time.perf_counter()
    ok, pairs = True, 0
    for m in (3, 4):
        funcs = [FiniteFunction(p) for p in itertools.product(range(m), repeat=m)]
        r = {f: ramification_degree(f, check=False) for f in funcs}
        for f in funcs:
            for g in funcs:
                ok &= ramification_degree(compose(f, g), check=False) >= max(r[f], r[g])
                pairs += 1
    rng = random.Random(64)
    for _ in range(10_000):
        f = FiniteFunction([rng.randrange(64) for _ in range(64)])
        g = FiniteFunction([rng.randrange(64) for _ in range(64)])
        ok &= ramification_degree(compose(f, g), check=False) >= max(ramification_degree(f, check=False),
                                                                    ramification_degree(g, check=False))
        pairs += 1
    record(4, "r(f o g) >= max(r f, r g)", ok, time.perf_counter() - t, 5, f"{pairs} pairs")


def test_ac05_parity_table_and_k_cycles():
    t = time.perf_counter()
    s4 = [FiniteFunction(p) for p in itertools.permutations(range(4))]
    ok = True
    for f in s4:
        for g in s4:
            want = EVEN if permfn.parity(f) == permfn.parity(g) else ODD
            ok &= permfn.parity(compose(f, g)) == want
    cycles = 0
    for m in range(1, 9):
        for k in range(1, m + 1):
            for support in itertools.combinations(range(m), k):
                for rest in itertools.permutations(support[1:]):
                    order = (support[0],) + rest
                    table = list(range(m))
                    for a, b in zip(order, order[1:] + order[:1]):
                        table[a] = b
                    ok &= permfn.is_k_cycle(table, k)
                    ok &= permfn.parity(table) == (EVEN if (k - 1) % 2 == 0 else ODD)
                    cycles += 1
    record(5, "parity table on S4 x S4, k-cycle parity m <= 8", ok, time.perf_counter() - t, 5,
           f"576 pairs, {cycles} cycles")


def test_ac06_parity_methods_agree():
    t = time.perf_counter()
    ok = all(permfn.parity_by_inversions(p) == permfn.parity_by_swaps(p)
             for p in itertools.permutations(range(5)))
    rng = np.random.default_rng(256)
    perms = np.argsort(rng.random((10_000, 256)), axis=1)
    a = permfn.inversion_parity_batch(perms)
    b = permfn.swap_parity_batch(perms)
    ok &= bool(np.array_equal(a, b))
    record(6, "inversion vs swap parity, S5 and 10^4 of S256", ok, time.perf_counter() - t, 10,
           f"{int(a.sum())} odd of 10000")


def test_ac07_atomic_restriction_certificates():
    t = time.perf_counter()
    counts, ok = {}, True
    for n in (2, 3, 4):
        passed, lines = certify_theorem_main(n, max_width=min(n - 1, 2))
        ok &= passed
        counts[n] = len(lines)
    ok &= counts[3] == 524
    record(7, "lifted local gates are never odd or quasi-bijections", ok, time.perf_counter() - t, 30,
           " ".join(f"n={n}:{c}" for n, c in counts.items()))


def test_ac08_main_theorem_small_n():
    t = time.perf_counter()
    res = monoid_closure_max_counter(2)
    ok2 = res.max_counter == 3
    t2 = time.perf_counter() - t
    cert, _ = certify_theorem_main(3)
    sample = sample_max_counter(3, 8, 10_000, seed=2024)
    dt = time.perf_counter() - t
    ok = ok2 and t2 < 10 and cert and sample.max_counter <= 7
    record(8, "no maximal local counter at n=2 (closure) and n=3 (certificate + samples)", ok, dt, 120,
           f"n=2 max={res.max_counter} in {t2:.2f}s, n=3 sampled max={sample.max_counter}")


def test_ac09_tiles_compile_to_equivalent_circuits():
    t = time.perf_counter()
    builds = {
        "copy n=3": build_copy(3),
        "ibc identity": build_ibc(IbcSpec.identity(6)),
        "ibc random": build_ibc(IbcSpec.random(6, 1, random.Random(11))),
        "zigzag all-bits": build_zigzag(6),
    }
    ok = True
    for b in builds.values():
        rep = report(b)
        f = circuit_function(compile_to_railway(rep))
        # simulated output of each seed, read independently of the report
        for x, seed in b.seeds.items():
            y = iterate_layers(b.tiles, b.temperature, b.curve, b.v, seed, 2)[1]
            ok &= int(y, 2) == f(x)
        ok &= f == rep.f
        if b is builds["ibc random"]:
            ok &= f != FiniteFunction.identity(64)
    record(9, "compiled circuit equals simulated layer on all inputs", ok, time.perf_counter() - t, 60,
           ", ".join(builds))


def test_ac10_figure_counter_values():
    t = time.perf_counter()
    zz = build_zigzig(3)
    readings = iterate_layers(zz.tiles, zz.temperature, zz.curve, zz.v, zz.seeds[0], 8)
    ok = len(set(readings)) == 8
    c = compile_to_railway(report(build_zigzag(6)))
    k = counter_value(c).k
    ok &= k == 32
    try:
        report(zz)
        ok = False
    except Unclean:
        pass
    try:
        report(build_zigzag(6, "eps-top"))
        ok, got = False, None
    except Unclean as e:
        got = e.indices
    # zig bottom, zig carry cap, zag top and zag bottom carry the eps glues
    ok &= got == zigzag_eps_positions(6)
    record(10, "zig-zig 8 readings, zig-zag counter 32, both Unclean as expected", ok, time.perf_counter() - t, 60,
           f"zigzig distinct={len(set(readings))} zigzag k={k} eps-top unclean at {got}")


def test_ac11_random_ibc_counters():
    t = time.perf_counter()
    rng = random.Random(6)
    worst = 0
    for _ in range(100):
        c = compile_to_railway(report(build_ibc(IbcSpec.random(6, 1, rng))))
        worst = max(worst, counter_value(c).k)
    record(11, "100 random 6-bit IBCs have counter <= 63", worst <= 63, time.perf_counter() - t, 300,
           f"max counter {worst}")


def test_ac12_iterated_layers_follow_the_circuit():
    t = time.perf_counter()
    builds = [build_copy(3), build_ibc(IbcSpec.random(6, 1, random.Random(12))), build_zigzag(6)]
    rng = random.Random(12)
    ok, runs = True, 0
    for b in builds:
        f = circuit_function(compile_to_railway(report(b)))
        k = min(1 << b.n, 64)
        for x in rng.sample(sorted(b.seeds), min(10, len(b.seeds))):
            want, y = [], x
            for _ in range(k):
                want.append(format(y, f"0{b.n}b"))
                y = f(y)
            got = iterate_layers(b.tiles, b.temperature, b.curve, b.v, b.seeds[x], k)
            ok &= got == want
            runs += 1
    record(12, "layer readings equal f^i(x)", ok, time.perf_counter() - t, 60, f"{runs} runs")
