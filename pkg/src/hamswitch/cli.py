"""Command-line entry point.

Exit codes: 0 success, 2 bad input or failed precondition, 3 enumeration cap
exceeded. Every JSON artifact embeds the validated config and the tool version
and is written with sorted keys, so equal configs give byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .enumerate import CLASSES, CapExceeded, enumerate_states, first_state
from .graph import Graph, GraphError, ParseError, PreconditionError, format_edges, format_graph, parse_edges, parse_graph
from .switch import ChainConfig, SwitchChain

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


def _read_graph(path: str) -> Graph:
    return parse_graph(Path(path).read_text())


def _read_edges(path: str):
    return parse_edges(Path(path).read_text())


def _edges_json(edges) -> list[list[int]]:
    return [list(e) for e in sorted(edges)]


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _emit(payload: dict, args, out: str | None = None) -> None:
    doc = {"config": _config(args), "version": __version__, **payload}
    text = json.dumps(doc, sort_keys=True, indent=1) + "\n"
    out = out if out is not None else getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _bipartite_view(g: Graph, flag: bool) -> Graph:
    if flag and g.bipartition is None:
        raise PreconditionError("--bipartite needs a graph file with a 'bipartite a' header")
    return g


# -- subcommands -----------------------------------------------------------------------


def cmd_sample(args) -> int:
    g = _read_graph(args.graph)
    cls = args.cls
    start = _read_edges(args.start) if args.start else first_state(g, cls)
    if start is None:
        raise PreconditionError(f"graph has no state of class {cls!r}")
    cfg = ChainConfig(args.k, cls, args.lazy, args.seed)
    traj = SwitchChain(g, cfg).run(start, args.steps)
    _emit({"trajectory": traj.as_dict(), "acceptance_rate": traj.acceptance_rate}, args)
    return EXIT_OK


def cmd_transform(args) -> int:
    from .reconfigure import transform_2factor, transform_ham

    g = _bipartite_view(_read_graph(args.graph), args.bipartite)
    a, b = _read_edges(args.src), _read_edges(args.dst)
    bip = True if args.bipartite else None
    fn = transform_ham if args.cls == "ham" else transform_2factor
    tr = fn(a, b, g, bipartite=bip)
    d0 = len(a ^ b)
    contract = {
        "length": len(tr),
        "initial_difference": d0,
        "length_within_difference": len(tr) <= d0,
        "max_switch_edges": max((len(s.switch) for s in tr.steps), default=0),
        "reaches_target": tr.final == b,
    }
    _emit({"trace": tr.as_dict(), "contract": contract}, args)
    return EXIT_OK


def _write_graph(g: Graph, path: str | None) -> None:
    if path:
        Path(path).write_text(format_graph(g))
    else:
        sys.stdout.write(format_graph(g))


def cmd_family(args) -> int:
    from . import families as fam
    from .enumerate import ham_cycles, ham_paths
    from .graph import min_degree

    kind = args.kind
    props: dict = {"family": kind}
    if kind == "parity":
        cg, h1, h2 = fam.build_parity_example(args.m)
        g = cg.graph
        props.update(m=args.m, h1=_edges_json(h1), h2=_edges_json(h2), blue=_edges_json(e for e, c in cg.color.items() if c == fam.BLUE))
        props.update(h1_parity=fam.blue_parity(cg, h1), h2_parity=fam.blue_parity(cg, h2))
    elif kind == "gadget":
        x = fam.build_gadget_x(args.l)
        g = x.graph
        paths = ham_paths(g)
        props.update(ell=args.l, endpoints=list(x.endpoints), ham_paths=len(paths), paths=[_edges_json(p) for p in paths])
        if len(paths) == 2:
            props["difference"] = len(paths[0] ^ paths[1])
    elif kind == "locked":
        n, a, b = fam.locked_sizes(args.k, args.n)
        g = fam.build_locked_example(args.k, args.n)
        props.update(k=args.k, n=n, A=a, B=b)
        if args.count:
            hs = ham_cycles(g)
            props.update(ham_cycles=len(hs), cycles=[_edges_json(h) for h in hs])
    elif kind == "staircase":
        mg = fam.build_staircase(args.n)
        g = mg.graph
        props.update(n=args.n, r=list(mg.r), t=list(mg.t))
        if args.count:
            props.update(ham_cycles=len(ham_cycles(g)), expected=2 ** (args.n - 2))
    else:
        g = fam.random_dense_graph(args.n, args.delta, args.seed, args.bipartite)
        h0 = fam.planted_cycle(g, args.seed)
        props.update(n=g.n, delta=args.delta, seed=args.seed, bipartite=args.bipartite)
        if args.out and args.cycles:
            for i in range(args.cycles):
                h = fam.random_ham_cycle(g, h0, args.seed * 1000 + i, 300)
                Path(f"{args.out}.h{i + 1}").write_text(format_edges(h, g.n))
    props.update(vertices=g.n, edges=g.m, min_degree=min_degree(g))
    _write_graph(g, args.out)
    if args.json:
        _emit({"properties": props}, args, args.json)
    return EXIT_OK


def cmd_monotone(args) -> int:
    from .monotone import phi1_inverse, phi_trace, validate_monotone

    g = _read_graph(args.graph)
    mg = validate_monotone(g)
    f = _read_edges(args.two_factor)
    ps, jr = phi_trace(f, mg)
    if args.out:
        Path(args.out).write_text(format_edges(jr.cycle, g.n))
    trace = {
        "r": list(mg.r),
        "t": list(mg.t),
        "paths": [list(p) for p in ps.paths],
        "phi1_edges": _edges_json(ps.edges),
        "roundtrip_ok": phi1_inverse(ps, mg) == frozenset(f),
        "join_edits": jr.edits,
        "join_steps": jr.steps,
        "cycle": _edges_json(jr.cycle),
    }
    _emit({"trace": trace}, args, args.trace)
    return EXIT_OK


def cmd_js(args) -> int:
    from .js import js_step, k_js, p_stability_ratio

    g = _read_graph(args.graph)
    if args.exact:
        kj = k_js(g)
        ratio = p_stability_ratio(g)
        payload = {
            "k_js": kj.value if kj.value != float("inf") else "inf",
            "witness": None if kj.witness is None else _edges_json(kj.witness),
            "states": kj.n_states,
            "two_factors": kj.n_two_factors,
            "max_out_degree": kj.max_out_degree,
            "max_in_degree": kj.max_in_degree,
            "ratio": str(ratio),
        }
    else:
        start = _read_edges(args.start) if args.start else first_state(g, "2factor")
        if start is None:
            raise PreconditionError("graph has no 2-factor")
        rng = np.random.default_rng(args.seed)
        x, moves, counts = frozenset(start), [], {}
        for _ in range(args.steps):
            x, kind = js_step(x, g, rng)
            moves.append(kind)
            counts[kind] = counts.get(kind, 0) + 1
        payload = {"start": _edges_json(start), "moves": moves, "counts": counts, "final": _edges_json(x)}
    _emit(payload, args)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    g = _read_graph(args.graph)
    states = enumerate_states(g, args.cls, args.cap)
    _emit({"count": len(states), "states": [_edges_json(s) for s in states] if args.list else None}, args)
    return EXIT_OK


def cmd_stategraph(args) -> int:
    from .analysis import build_state_graph, check_irreducible, check_matrix

    g = _read_graph(args.graph)
    sg = build_state_graph(g, args.cls, args.k, lazy=not args.non_lazy, exact_matrix=args.exact_matrix, cap=args.cap)
    ir = check_irreducible(sg)
    payload = {
        "states": len(sg),
        "arcs": sg.n_arcs(),
        "connected": ir.connected,
        "components": ir.n_components,
        "component_sizes": sorted((int(c) for c in np.bincount(ir.labels)), reverse=True),
        "representatives": [_edges_json(sg.states[i]) for i in ir.representatives],
    }
    if sg.matrix is not None:
        mc = check_matrix(sg.matrix)
        payload["matrix"] = {"symmetric": mc.symmetric, "row_stochastic": mc.row_stochastic, "column_stochastic": mc.column_stochastic}
    _emit(payload, args)
    return EXIT_OK


def cmd_mix(args) -> int:
    from .analysis import build_state_graph, mixing_empirical, mixing_exact

    g = _read_graph(args.graph)
    sg = build_state_graph(g, args.cls, args.k, lazy=True, cap=args.cap)
    rep = mixing_exact(sg, args.eps)
    payload = {"exact": rep.as_dict()}
    if args.empirical:
        tau = rep.tau[min(rep.tau)]
        grid = sorted(set(int(t) for t in np.linspace(0, max(tau, 1) * 2, 21)))
        worst = max(rep.curves, key=lambda s: (rep.curves[s][min(tau, len(rep.curves[s]) - 1)], -s))
        emp = mixing_empirical(g, ChainConfig(args.k, args.cls, True, args.seed), [sg.states[worst]], args.trials, grid, states=sg.states)
        payload["empirical"] = emp.as_dict()
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["mode", "start", "t", "tv"])
            for s, c in sorted(rep.curves.items()):
                for t, v in enumerate(c):
                    w.writerow(["exact", s, t, repr(v)])
            if args.empirical:
                for s, c in sorted(payload["empirical"]["curves"].items()):
                    for t, v in zip(payload["empirical"]["t_grid"], c):
                        w.writerow(["empirical", s, t, repr(v)])
    _emit(payload, args)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .claims import REGISTRY

    if args.claim not in REGISTRY:
        sys.stderr.write(f"unknown claim {args.claim!r}; available:\n" + "".join(f"  {c}\n" for c in REGISTRY))
        return EXIT_INPUT
    result = REGISTRY[args.claim]()
    _emit({"result": result}, args)
    sys.stderr.write(f"{args.claim}: {'PASS' if result['passed'] else 'FAIL'}\n")
    return EXIT_OK if result["passed"] else 1


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamswitch", description="Switch chains on Hamiltonian cycles and 2-factors.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def seed(sp, default=0):
        sp.add_argument("--seed", type=int, default=default)

    s = sub.add_parser("sample", help="run the k-switch chain")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--class", dest="cls", choices=["ham", "2factor"], default="ham")
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--lazy", action="store_true", help="hold with probability 1/2 each step")
    s.add_argument("--start", help="edge list of the start state (default: first found)")
    s.add_argument("--out")
    seed(s)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("transform", help="constructive switch sequence between two states")
    s.add_argument("--graph", required=True)
    s.add_argument("--from", dest="src", required=True)
    s.add_argument("--to", dest="dst", required=True)
    s.add_argument("--class", dest="cls", choices=["ham", "2factor"], default="ham")
    s.add_argument("--bipartite", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("family", help="build a named graph family")
    fsub = s.add_subparsers(dest="kind", required=True)
    for name in ("parity", "gadget", "locked", "staircase", "random"):
        f = fsub.add_parser(name)
        f.add_argument("--out", help="graph file (default stdout)")
        f.add_argument("--json", help="JSON file with certified properties")
        f.set_defaults(func=cmd_family)
        if name == "parity":
            f.add_argument("--m", type=int, default=3)
        elif name == "gadget":
            f.add_argument("--l", type=int, default=3)
        elif name == "locked":
            f.add_argument("--k", type=int, default=4)
            f.add_argument("--n", type=int)
            f.add_argument("--count", action="store_true", help="enumerate the Hamiltonian cycles")
        elif name == "staircase":
            f.add_argument("--n", type=int, default=6)
            f.add_argument("--count", action="store_true")
        else:
            f.add_argument("--n", type=int, required=True)
            f.add_argument("--delta", type=int, required=True)
            f.add_argument("--bipartite", action="store_true", help="n is the per-side size")
            f.add_argument("--cycles", type=int, default=0, help="also write N random Hamiltonian cycles to OUT.h1..OUT.hN")
            seed(f)

    s = sub.add_parser("monotone-embed", help="map a 2-factor of a monotone graph to a Hamiltonian cycle")
    s.add_argument("--graph", required=True)
    s.add_argument("--two-factor", required=True)
    s.add_argument("--out", help="edge list of the resulting cycle")
    s.add_argument("--trace", help="JSON trace (default stdout)")
    s.set_defaults(func=cmd_monotone)

    s = sub.add_parser("js", help="run or analyse the almost-2-factor chain")
    s.add_argument("--graph", required=True)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--start")
    s.add_argument("--exact", action="store_true", help="exact k_JS and P-stability ratio instead of sampling")
    s.add_argument("--out")
    seed(s)
    s.set_defaults(func=cmd_js)

    s = sub.add_parser("enumerate", help="count (and optionally list) the states of a class")
    s.add_argument("--graph", required=True)
    s.add_argument("--class", dest="cls", choices=list(CLASSES), default="ham")
    s.add_argument("--cap", type=int, default=1_000_000)
    s.add_argument("--list", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("stategraph", help="k-switch state graph and its connectivity")
    s.add_argument("--graph", required=True)
    s.add_argument("--class", dest="cls", choices=["ham", "2factor"], default="ham")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--exact-matrix", action="store_true")
    s.add_argument("--non-lazy", action="store_true")
    s.add_argument("--cap", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_stategraph)

    s = sub.add_parser("mix", help="exact (and empirical) mixing of the lazy chain")
    s.add_argument("--graph", required=True)
    s.add_argument("--class", dest="cls", choices=["ham", "2factor"], default="ham")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--eps", type=float, nargs="+", default=[0.25])
    s.add_argument("--empirical", action="store_true")
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--cap", type=int)
    s.add_argument("--csv", help="TV curves as CSV")
    s.add_argument("--out")
    seed(s)
    s.set_defaults(func=cmd_mix)

    s = sub.add_parser("reproduce", help="run the canned pipeline behind one acceptance criterion")
    s.add_argument("claim")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is not None and not 0 <= getattr(args, "seed", 0) < 2**64:
            raise ValueError("seed must fit in 64 bits")
        return args.func(args)
    except CapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except (ParseError, PreconditionError, GraphError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
