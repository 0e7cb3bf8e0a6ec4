"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import counterlab, exemplars, permfn, railway, render
from .atam import Bundle, GlueCurve, check_layer_computes, compile_to_railway, iterate_layers
from .atam.layer import CompileError, LayerError, NotValidReport, ReadMismatch, iterate_assembly
from .atam.curve import CurveError, CurveOffAssembly
from .atam.model import RegionOverflow


class VerificationFailed(Exception):
    pass


class UsageError(Exception):
    pass


def _read(path):
    if path is None:
        raise UsageError("missing --in")
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(str(e))


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _state(text, n):
    """A state given as a decimal integer or as a bit string prefixed with 'b'."""
    if text.startswith("b"):
        bits = text[1:]
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise UsageError(f"expected {n} bits, got {bits!r}")
        return int(bits, 2)
    return int(text)


def _fmt(x, n):
    return format(x, f"0{n}b")


# ------------------------------------------------------------------ circuit

def _circuit(args):
    return railway.RailwayCircuit.from_json(_read(args.input))


def cmd_circuit_eval(args):
    c = _circuit(args)
    x = _state(args.x, c.n)
    print(_fmt(railway.evaluate(c, x), c.n))


def cmd_circuit_trace(args):
    c = _circuit(args)
    tr = railway.trace(c, _state(args.x, c.n))
    for y in tr:
        print(_fmt(y, c.n))
    print(f"distinct={len(set(tr))}")


def cmd_circuit_classify(args):
    print(permfn.classify(railway.circuit_function(_circuit(args))))


def cmd_circuit_components(args):
    c = _circuit(args)
    ok, verdicts = railway.verify_atomic_restrictions(c)
    for v in verdicts:
        print(f"section={v.section} pass_through={v.witness} class={v.cls} r={v.ramification} "
              f"{'ok' if v.ok else 'FAIL'}")
    if not ok:
        raise VerificationFailed("an atomic component is an odd bijection or a quasi-bijection")


def cmd_circuit_counter(args):
    c = _circuit(args)
    rep = railway.counter_value(c)
    local = railway.is_local(c)
    print(f"counter_value={rep.k} witness={_fmt(rep.witness, c.n)} class={rep.cls} local={local}")
    if local and rep.k >= 1 << c.n:
        raise VerificationFailed("a local circuit reached 2^n states")


def cmd_circuit_render(args):
    c = _circuit(args)
    _write(args.out, render.circuit_svg(c) if args.format == "svg" else render.circuit_ascii(c))


# --------------------------------------------------------------------- perm

def _function(args):
    if args.table is not None:
        return permfn.FiniteFunction(int(v) for v in args.table.replace(",", " ").split())
    return permfn.FiniteFunction.from_text(_read(args.input))


def cmd_perm_classify(args):
    print(permfn.classify(_function(args)))


def cmd_perm_parity(args):
    f = _function(args)
    if not permfn.is_bijection(f):
        raise UsageError("parity is only defined for bijections")
    a, b = permfn.parity_by_inversions(f), permfn.parity_by_swaps(f)
    print(f"{a} inversions={permfn.inversion_count(f)} swaps={len(permfn.swap_decomposition(f))}")
    if a != b:
        raise VerificationFailed("parity methods disagree")


def cmd_perm_ram(args):
    f = _function(args)
    print(f"r={permfn.ramification_degree(f)} image={permfn.image_size(f)} m={f.m}")


# ------------------------------------------------------------------- search

def cmd_search_closure(args):
    res = counterlab.monoid_closure_max_counter(args.n)
    bound = 1 << args.n
    ok = res.max_counter < bound and all(c["pass"] for c in res.certificate)
    print(f"max_counter={res.max_counter} bound={bound} {'PASS' if ok else 'FAIL'}")
    if not ok:
        raise VerificationFailed("closure check failed")


def cmd_search_certify(args):
    try:
        ok, lines = counterlab.certify_theorem_main(args.n, args.max_width)
    except counterlab.WidthTooLarge as e:
        raise UsageError(str(e))
    _write(args.out, "".join(line + "\n" for line in lines))
    print(f"generators={len(lines)} {'PASS' if ok else 'FAIL'}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    if not ok:
        raise VerificationFailed("a generator is an odd bijection or a quasi-bijection")


def cmd_search_sample(args):
    seed = args.seed
    if seed is None:
        seed = random.SystemRandom().randrange(1 << 31)
    shape = counterlab.IBC6_SHAPE if args.shape == "ibc" else None
    if shape is not None and args.n != 6:
        raise UsageError("--shape ibc needs --n 6")
    rep = counterlab.sample_max_counter(args.n, args.k, args.count, seed, shape=shape)
    print(f"max_counter={rep.max_counter} bound={1 << args.n} count={args.count} seed={seed} PASS")


# -------------------------------------------------------------------- tiles

def _bundle(args):
    b = Bundle.from_json(_read(args.input))
    if getattr(args, "curve", None):
        b.curve = GlueCurve.from_json(_read(args.curve))
    if getattr(args, "v", None):
        b.v = tuple(int(p) for p in args.v.split(","))
    return b


def _need_layer(b):
    if b.curve is None or b.v is None or b.n is None:
        raise UsageError("the tile file needs a curve, a vector v and n (or pass --curve/--v)")


def _report(b):
    _need_layer(b)
    return check_layer_computes(b.tiles, b.temperature, b.curve, b.v, b.seeds, b.n)


def cmd_tiles_check(args):
    b = _bundle(args)
    _need_layer(b)
    rep = check_layer_computes(b.tiles, b.temperature, b.curve, b.v, b.seeds, b.n, raise_unclean=False)
    for i, z in enumerate(rep.order):
        bad = [why for j, _, why in rep.problems if j == i]
        k = rep.arity.get(z)
        print(f"z{i} {z} k={k if k is not None else '-'} {'; '.join(bad) if bad else 'clean'}")
    print(f"n={rep.n} positions={len(rep.order)} class={permfn.classify(rep.f)} "
          f"{'VALID' if rep.valid else 'UNCLEAN'}")
    if not rep.valid:
        raise VerificationFailed("layer is not clean")


def cmd_tiles_compile(args):
    b = _bundle(args)
    c = compile_to_railway(_report(b))
    _write(args.out, c.to_json() + "\n")


def _layers_seed(b, args):
    x = _state(args.x, b.n) if b.n is not None else int(args.x)
    if x not in b.seeds:
        raise UsageError(f"no seed for input {args.x}")
    return x, b.seeds[x]


def cmd_tiles_iterate(args):
    b = _bundle(args)
    _need_layer(b)
    x, seed = _layers_seed(b, args)
    expected = None
    if args.check:
        c = compile_to_railway(_report(b))
        f = railway.circuit_function(c)
        expected, y = [], x
        for _ in range(args.k):
            expected.append(_fmt(y, b.n))
            y = f(y)
    readings = iterate_layers(b.tiles, b.temperature, b.curve, b.v, seed, args.k, expected=expected)
    for r in readings:
        print(r)
    print(f"distinct={len(set(readings))}")


def cmd_tiles_simulate(args):
    b = _bundle(args)
    x, seed = _layers_seed(b, args)
    if b.curve is not None and b.v is not None:
        a = iterate_assembly(b.tiles, b.temperature, b.curve, b.v, seed, args.layers + 1)
    else:
        from .atam.model import assemble
        a = assemble(b.system(x), max_tiles=args.max_tiles).assembly
    if args.format == "json":
        _write(args.out, json.dumps([[z[0], z[1], t.name] for z, t in sorted(a.items(), key=lambda i: (i[0][1], i[0][0]))]) + "\n")
    elif args.format == "svg":
        _write(args.out, render.assembly_svg(a, seed))
    else:
        _write(args.out, render.assembly_ascii(a, seed))


def cmd_tiles_render(args):
    if args.format not in ("ascii", "svg"):
        raise UsageError(f"unsupported format {args.format}")
    cmd_tiles_simulate(args)


# ----------------------------------------------------------------- exemplar

def cmd_exemplar(args):
    kind = args.kind
    if kind == "copy":
        b = exemplars.build_copy(args.n or 3)
    elif kind == "ibc":
        n = args.n or 6
        if args.gates:
            spec = exemplars.IbcSpec.from_json(_read(args.gates))
        elif args.preset == "counter":
            spec = exemplars.load_ibc6_counter()
        elif args.seed is not None:
            spec = exemplars.IbcSpec.random(n, args.layers, random.Random(args.seed))
        else:
            spec = exemplars.IbcSpec.identity(n, args.layers)
        b = exemplars.build_ibc(spec)
    elif kind == "zigzig":
        b = exemplars.build_zigzig(args.n or 3, args.interp or "carry-bits")
    else:
        b = exemplars.build_zigzag(args.n or 6, args.interp or "all-bits")
    _write(args.out, b.to_json())


# ------------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="railcount", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, help):
        sp = group.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    circ = top.add_parser("circuit", help="railway circuit analysis").add_subparsers(dest="cmd", required=True)
    for name, fn, help in [
        ("eval", cmd_circuit_eval, "evaluate on one state"),
        ("trace", cmd_circuit_trace, "first 2^n iterates of one state"),
        ("classify", cmd_circuit_classify, "bijection / quasi-bijection / neither"),
        ("components", cmd_circuit_components, "atomic components and their checks"),
        ("counter", cmd_circuit_counter, "counter value"),
        ("render", cmd_circuit_render, "draw the circuit"),
    ]:
        sp = sub(circ, name, fn, help)
        sp.add_argument("--in", dest="input", required=True)
        if name in ("eval", "trace"):
            sp.add_argument("--x", required=True, help="state as an integer, or b followed by bits")
        if name == "render":
            sp.add_argument("--format", choices=["ascii", "svg"], default="ascii")
            sp.add_argument("--out")

    perm = top.add_parser("perm", help="finite functions").add_subparsers(dest="cmd", required=True)
    for name, fn, help in [
        ("classify", cmd_perm_classify, "classify a function"),
        ("parity", cmd_perm_parity, "parity of a bijection, computed two ways"),
        ("ram", cmd_perm_ram, "ramification degree and image size"),
    ]:
        sp = sub(perm, name, fn, help)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--in", dest="input", help="file with 'm t0 .. t(m-1)' or a JSON array")
        src.add_argument("--table", help="table entries, e.g. '1 0 3 2'")

    search = top.add_parser("search", help="enumeration and sampling").add_subparsers(dest="cmd", required=True)
    sp = sub(search, "closure", cmd_search_closure, "exhaustive monoid closure (n=2)")
    sp.add_argument("--n", type=int, default=2, choices=[1, 2])
    sp = sub(search, "certify", cmd_search_certify, "per-generator certificate as JSON lines")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-width", type=int)
    sp.add_argument("--out")
    sp = sub(search, "sample", cmd_search_sample, "largest counter among random local circuits")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=8)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--shape", choices=["any", "ibc"], default="any")

    tiles = top.add_parser("tiles", help="tile systems").add_subparsers(dest="cmd", required=True)
    for name, fn, help in [
        ("simulate", cmd_tiles_simulate, "grow an assembly"),
        ("check-layer", cmd_tiles_check, "check that the tile set computes a layer function cleanly"),
        ("compile", cmd_tiles_compile, "compile a clean layer to a railway circuit"),
        ("iterate", cmd_tiles_iterate, "read the cuts of k consecutive layers"),
        ("render", cmd_tiles_render, "draw a grown assembly"),
    ]:
        sp = sub(tiles, name, fn, help)
        sp.add_argument("--in", "--tileset", dest="input", required=True)
        sp.add_argument("--curve")
        sp.add_argument("--v")
        if name in ("simulate", "render", "iterate"):
            sp.add_argument("--x", default="0")
        if name in ("simulate", "render"):
            sp.add_argument("--layers", type=int, default=1)
            sp.add_argument("--format", choices=["ascii", "svg", "json"], default="ascii")
            sp.add_argument("--max-tiles", type=int, default=100_000)
        if name == "iterate":
            sp.add_argument("--k", type=int, default=4)
            sp.add_argument("--check", action="store_true", help="compare with the compiled circuit")
        if name in ("compile", "simulate", "render"):
            sp.add_argument("--out")

    ex = top.add_parser("exemplar", help="build reference tile systems").add_subparsers(dest="kind", required=True)
    for name in ("copy", "ibc", "zigzig", "zigzag"):
        sp = ex.add_parser(name)
        sp.set_defaults(fn=cmd_exemplar)
        sp.add_argument("--n", type=int)
        sp.add_argument("--out", "--emit", dest="out")
        if name == "ibc":
            sp.add_argument("--layers", type=int, default=1)
            sp.add_argument("--gates", help="IbcSpec JSON file")
            sp.add_argument("--preset", choices=["identity", "counter"], default="identity")
            sp.add_argument("--seed", type=int, help="random gate tables from this seed")
        if name in ("zigzig", "zigzag"):
            sp.add_argument("--interp")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except VerificationFailed as e:
        print(f"FAIL: {e}", file=sys.stderr)
        return 1
    except (LayerError, ReadMismatch, CompileError, NotValidReport, railway.NotLocal) as e:
        print(f"FAIL: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, KeyError, CurveError, CurveOffAssembly, RegionOverflow,
            json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
