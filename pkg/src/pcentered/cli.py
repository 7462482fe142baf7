"""Command line: generate, color, verify, exact, bench.

Exit codes: 0 success, 1 verification failed, 2 bad input or usage,
3 resource limit (iteration cap, size cap, time budget), 4 internal
invariant broken.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import generators as gen
from . import io
from .compose import compose_genus, compose_planar
from .degree import DegreeColorConfig, IterationCapReached, color_bounded_degree
from .errors import InputError, InvariantError, ResourceError
from .graph import ColorAssignment, Graph
from .oracle import chi_p_exact, lin_p_exact
from .outerplanar import color_outerplanar, outerplanar_palette_bound
from .stw import color_simple_treewidth, stw_palette_bound
from .verify import MODES, find_centered_violation, find_linear_violation

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3, 4

CSV_HEADER = [
    "family", "n", "p", "seed", "colors_used", "palette_bound", "iterations", "runtime_ms", "verified",
]

# family -> (parameter names, needs seed)
FAMILIES = {
    "fans": (("w", "d"), False),
    "gk": (("k", "w", "d"), False),
    "lowerbound": (("p", "t", "x", "N"), False),
    "outerplanar": (("n",), True),
    "stacked": (("n",), True),
    "ktree": (("k", "n"), True),
    "degree": (("n", "delta", "m"), True),
    "product": (("quotient_n", "layers", "blowup"), True),
    "path": (("n",), False),
    "cycle": (("n",), False),
    "complete": (("n",), False),
    "star": (("leaves",), False),
    "grid": (("rows", "cols"), False),
}

BENCH_FAMILIES = ("outerplanar", "stacked", "ktree2", "ktree3", "degree")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


def parse_p_range(text: str) -> list[int]:
    """``"3"``, ``"1,2,5"`` or ``"1..4"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"cannot read p range {text!r}") from None
    if not values or min(values) < 1:
        raise InputError(f"p range {text!r} must contain values >= 1")
    return values


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _need_seed(args, what: str) -> int:
    if args.seed is None:
        raise InputError(f"{what} is randomised; pass --seed")
    return args.seed


def _size_cap(args) -> Optional[int]:
    cap = getattr(args, "size_cap", None)
    return gen.DEFAULT_SIZE_CAP if cap is None else (None if cap <= 0 else cap)


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        io.write_text(path, text)


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    names, seeded = FAMILIES[args.family]
    if len(args.params) != len(names):
        raise InputError(f"{args.family} takes parameters {' '.join(names)}")
    values = dict(zip(names, args.params))
    seed = _need_seed(args, args.family) if seeded else None
    cap = _size_cap(args)
    dec = layering = partition = boundary = quotient = None
    f = args.family
    if f == "fans":
        g, dec = gen.tree_of_fans_with_decomposition(values["w"], values["d"], cap)
    elif f == "gk":
        g, boundary, dec = gen.g_k_graph_with_decomposition(values["k"], values["w"], values["d"], cap)
    elif f == "lowerbound":
        g, dec = gen.lower_bound_graph_with_decomposition(*args.params, size_cap=cap)
    elif f == "outerplanar":
        g, dec = gen.random_maximal_outerplanar(values["n"], seed)
    elif f == "stacked":
        g, dec = gen.random_stacked_triangulation(values["n"], seed)
    elif f == "ktree":
        g, dec = gen.random_simple_ktree(values["k"], values["n"], seed)
    elif f == "degree":
        g = gen.random_bounded_degree(values["n"], values["delta"], values["m"], seed)
    elif f == "product":
        quotient, dec = gen.random_stacked_triangulation(values["quotient_n"], seed)
        inst = gen.synth_product_instance(quotient, values["layers"], values["blowup"], seed)
        g, layering, partition = inst.graph, inst.layering, inst.partition
    else:
        g = gen.classic(f, *args.params)
    _write(args.output, io.format_graph(g))
    extras = [
        (args.decomposition, dec, io.format_decomposition, "decomposition"),
        (args.layering, layering, io.format_layering, "layering"),
        (args.partition, partition, io.format_partition, "partition"),
        (args.boundary, boundary, io.format_vertex_set, "boundary"),
        (args.quotient, quotient, io.format_graph, "quotient"),
    ]
    for path, value, fmt, what in extras:
        if path is None:
            continue
        if value is None:
            raise InputError(f"family {f} produces no {what}")
        io.write_text(path, fmt(value))
    return EXIT_OK


# ---------------------------------------------------------------------------
# color


def _color_degree(g: Graph, args) -> ColorAssignment:
    cfg = DegreeColorConfig(
        p=args.p,
        seed=_need_seed(args, "the bounded-degree colourer"),
        doubled=args.doubled,
        palette_scale=args.palette_scale,
        iteration_cap=args.iteration_cap,
    )
    col, stats = color_bounded_degree(g, cfg)
    if args.stats:
        with open(args.stats, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iterations", "violators", "uncolored", "palette"])
            w.writerow([stats.iterations, stats.violators, stats.uncolored, stats.palette])
    return col


def _layer_decompositions(directory: Optional[str]):
    if directory is None:
        return None
    out = {}
    for path in sorted(Path(directory).glob("layer_*.dec")):
        try:
            i = int(path.stem.split("_", 1)[1])
        except ValueError:
            raise InputError(f"cannot read layer index from {path.name}") from None
        out[i] = io.read_decomposition(path)
    return out


def _required(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise InputError(f"--algo {args.algo} needs {flags}")


def cmd_color(args) -> int:
    g = io.read_graph(args.graph)
    p = args.p
    if args.algo == "degree":
        col = _color_degree(g, args)
    elif args.algo == "outerplanar":
        layout = io.read_vertex_order(args.layout) if args.layout else None
        col = color_outerplanar(g, p, layout)
    elif args.algo == "stw":
        _required(args, "decomposition")
        col = color_simple_treewidth(
            g, io.read_decomposition(args.decomposition), p, args.k,
            _layer_decompositions(args.layer_decompositions),
        )
    elif args.algo == "planar-compose":
        _required(args, "layering", "partition", "quotient_coloring")
        part = io.read_partition(args.partition, g.n)
        col = compose_planar(
            g,
            io.read_layering(args.layering, g.n),
            part,
            io.read_coloring(args.quotient_coloring, part.class_count),
            p,
            verify_psi=args.verify_quotient,
        )
    else:
        _required(args, "layering", "z_set", "gplus", "w_layering", "gplus_coloring", "genus")
        gplus = io.read_graph(args.gplus)
        col = compose_genus(
            g,
            io.read_layering(args.layering, g.n),
            io.read_vertex_set(args.z_set),
            gplus,
            io.read_layering(args.w_layering, gplus.n),
            io.read_coloring(args.gplus_coloring, gplus.n),
            p,
            args.genus,
        )
    _write(args.output, io.format_coloring(col))
    print(f"colours used: {col.colors_used()} of palette {col.palette_size}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / exact


def cmd_verify(args) -> int:
    g = io.read_graph(args.graph)
    col = io.read_coloring(args.coloring, g.n)
    if args.linear:
        cap = None if args.linear_cap <= 0 else args.linear_cap
        viol = find_linear_violation(g, col, args.p, cap)
        kind = "linear"
    else:
        viol = find_centered_violation(g, col, args.p, args.mode)
        kind = "centered"
    if viol is None:
        print(f"{args.p}-{kind}: yes")
        return EXIT_OK
    print(f"{args.p}-{kind}: no")
    print(viol.describe())
    return EXIT_FALSE


def cmd_exact(args) -> int:
    g = io.read_graph(args.graph)
    solve = lin_p_exact if args.linear else chi_p_exact
    res = solve(g, args.p, args.max_colors, args.time_budget)
    name = "lin" if args.linear else "chi"
    if res.value is None:
        print(f"{name}_{args.p} >= {res.lower_bound}")
    else:
        print(f"{name}_{args.p} = {res.value}")
        if args.output:
            io.write_text(args.output, io.format_coloring(res.coloring))
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


def _bench_cell(family: str, n: int, p: int, seed: int, args) -> list:
    iterations = 0
    if family == "degree":
        g = gen.random_bounded_degree(n, args.delta, n * args.delta * 2 // 5, seed)
        cfg = DegreeColorConfig(p=p, seed=seed, doubled=args.doubled)
        bound = cfg.colors_available(g)
        t0 = time.perf_counter()
        try:
            col, stats = color_bounded_degree(g, cfg)
            iterations = stats.iterations
        except IterationCapReached as exc:
            ms = (time.perf_counter() - t0) * 1000
            return [family, n, p, seed, 0, bound, exc.stats.iterations, f"{ms:.1f}", "false"]
    else:
        if family == "outerplanar":
            g, _ = gen.random_maximal_outerplanar(n, seed)
            bound = outerplanar_palette_bound(p)
            t0 = time.perf_counter()
            col = color_outerplanar(g, p)
        else:
            if family == "stacked":
                g, d = gen.random_stacked_triangulation(n, seed)
                k = 3
            else:
                k = int(family[-1])
                g, d = gen.random_simple_ktree(k, n, seed)
            bound = stw_palette_bound(k, p)
            t0 = time.perf_counter()
            col = color_simple_treewidth(g, d, p, k)
    ms = (time.perf_counter() - t0) * 1000
    ok = find_centered_violation(g, col, p, args.mode) is None
    used = len(set(col.flat()))
    return [family, n, p, seed, used, bound, iterations, f"{ms:.1f}", "true" if ok else "false"]


def cmd_bench(args) -> int:
    ps = parse_p_range(args.p)
    rows = [
        _bench_cell(args.family, args.n, p, seed, args)
        for p in ps
        for seed in range(args.seed_base, args.seed_base + args.seeds)
    ]
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows)
    finally:
        if args.csv:
            out.close()
    return EXIT_OK if all(r[-1] == "true" for r in rows) else EXIT_FALSE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--time-budget", type=float, default=argparse.SUPPRESS,
                        help="seconds allowed for exact search")
    common.add_argument("--size-cap", type=int, default=argparse.SUPPRESS,
                        help="largest generated graph (vertices); 0 disables")

    parser = _Parser(prog="pcentered", description="p-centered colourings: build, colour, check.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="write a graph family to a file")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("params", type=int, nargs="*")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.add_argument("--decomposition")
    g.add_argument("--layering")
    g.add_argument("--partition")
    g.add_argument("--boundary", help="boundary vertex set (gk)")
    g.add_argument("--quotient", help="quotient graph (product)")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("color", parents=[common], help="colour a graph")
    c.add_argument("--algo", required=True,
                   choices=["degree", "outerplanar", "stw", "planar-compose", "genus-compose"])
    c.add_argument("-p", type=int, required=True)
    c.add_argument("-g", "--graph", required=True)
    c.add_argument("-o", "--output")
    c.add_argument("--seed", type=int)
    c.add_argument("--palette-scale", type=_fraction, default=Fraction(1))
    c.add_argument("--doubled", action="store_true")
    c.add_argument("--iteration-cap", type=int)
    c.add_argument("--stats", help="CSV file for run statistics (degree)")
    c.add_argument("--layout", help="vertex order of an outerplanar drawing")
    c.add_argument("--decomposition")
    c.add_argument("-k", type=int, help="simple treewidth (default: decomposition width)")
    c.add_argument("--layer-decompositions", help="directory of layer_<i>.dec files")
    c.add_argument("--layering")
    c.add_argument("--partition")
    c.add_argument("--quotient-coloring")
    c.add_argument("--verify-quotient", action="store_true")
    c.add_argument("--z-set")
    c.add_argument("--gplus")
    c.add_argument("--w-layering")
    c.add_argument("--gplus-coloring")
    c.add_argument("--genus", type=int)
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", parents=[common], help="check a colouring")
    v.add_argument("-g", "--graph", required=True)
    v.add_argument("-c", "--coloring", required=True)
    v.add_argument("-p", type=int, required=True)
    v.add_argument("--mode", choices=MODES, default="growth")
    v.add_argument("--linear", action="store_true", help="check paths only")
    v.add_argument("--linear-cap", type=int, default=18, help="vertex limit for --linear; 0 disables")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exact", parents=[common], help="exact chi_p or lin_p by search")
    e.add_argument("-g", "--graph", required=True)
    e.add_argument("-p", type=int, required=True)
    e.add_argument("--linear", action="store_true")
    e.add_argument("--max-colors", type=int)
    e.add_argument("-o", "--output", help="witness colouring")
    e.set_defaults(func=cmd_exact)

    b = sub.add_parser("bench", parents=[common], help="colour and verify a sweep, write CSV")
    b.add_argument("--family", choices=BENCH_FAMILIES, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", required=True, help="e.g. 2, 1,3 or 1..4")
    b.add_argument("--seeds", type=int, default=1)
    b.add_argument("--seed-base", type=int, default=0)
    b.add_argument("--csv")
    b.add_argument("--mode", choices=MODES, default="growth")
    b.add_argument("--delta", type=int, default=3, help="max degree (degree family)")
    b.add_argument("--doubled", action="store_true")
    b.set_defaults(func=cmd_bench)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name in ("time_budget", "size_cap"):
            if not hasattr(args, name):
                setattr(args, name, None)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantError as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
