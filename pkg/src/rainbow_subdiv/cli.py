"""Command-line entry point.

Exit codes: 0 success, 1 honest algorithmic failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import graph as gio
from .bench import BenchSpecError, run_bench
from .certificates import SCHEMA, SubdivisionCertificate
from .density import PreconditionError, extract_d_minimal
from .expander import cover_by_expanders
from .instances import (gen_hypercube, gen_one_factorized_complete, gen_rainbow_complete,
                        gen_random_proper)
from .ladder import compute_ladder, practical_ladder
from .oracle import (EXHAUSTIVE_CAP, brute_d_minimal_check, brute_rainbow_cycle,
                     verify_subdivision)
from .search import AvoidSet, rainbow_connect
from .subdivision import find_rainbow_subdivision

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2))
    else:
        print(text)


def _write_or_print(path, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ladder(args, n: int, t: int):
    if getattr(args, "paper_mode", False):
        return compute_ladder(n, t, eps=args.eps or Fraction(1, 40))
    return practical_ladder(n, t, eps=args.eps or Fraction(1, 4), max_len=args.max_len)


# -- subcommands -------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "hypercube":
        g = gen_hypercube(args.m)
    elif args.kind == "random":
        g = gen_random_proper(args.n, args.p, args.rule, args.seed)
    elif args.kind == "rainbow-complete":
        g = gen_rainbow_complete(args.n)
    else:
        g = gen_one_factorized_complete(args.n)
    _write_or_print(args.out, gio.dumps(g))
    return OK


def cmd_check(args) -> int:
    g = gio.load(args.file)
    st = gio.degree_stats(g) if g.n else None
    payload = {"n": g.n, "m": g.m, "k": g.k, "colours_used": int(len(set(g.colours.tolist()))),
               "avg_degree": str(st.avg) if st else None,
               "min_degree": st.min if st else None, "max_degree": st.max if st else None}
    text = f"ok: n={g.n} m={g.m} k={g.k}"
    if st:
        text += f" d={st.avg} delta={st.min} Delta={st.max}"
    _emit(args, payload, text)
    return OK


def cmd_extract(args) -> int:
    g = gio.load(args.file)
    try:
        cert = extract_d_minimal(g, args.d)
    except PreconditionError as err:
        _emit(args, {"ok": False, "reason": str(err)}, f"failed: {err}")
        return FAILED
    H = cert.subgraph
    checked = None
    if H.n_vertices <= EXHAUSTIVE_CAP:
        res = brute_d_minimal_check(H, args.d)
        checked = res.ok
        if not res.ok:
            raise AssertionError(f"extracted subgraph fails the exhaustive check: {res.reason}")
    verts = H.vertices().tolist()
    payload = {"ok": True, "d": str(args.d), "vertices": verts, "edges": int(H.n_edges),
               "avg_degree": str(H.avg_degree()), "exhaustively_checked": checked,
               "shrink_steps": cert.shrink_steps}
    _emit(args, payload, f"d-minimal subgraph: v={len(verts)} e={H.n_edges} "
                         f"d={H.avg_degree()} vertices={verts}")
    return OK


def cmd_cover(args) -> int:
    g = gio.load(args.file)
    eps = args.eps or Fraction(1, 4)
    lam = args.lam
    if lam is None:
        lam = compute_ladder(g.n, 2, eps=eps, check_eps=False).lam
    try:
        cov = cover_by_expanders(g, lam, eps, paper_mode=args.paper_mode)
    except PreconditionError as err:
        raise UsageError(str(err)) from None
    pieces = [{"vertices": p.subgraph.vertices().tolist(), "edges": p.n_edges,
               "d": str(p.avg_degree), "certification": p.certification} for p in cov.pieces]
    payload = {"lambda": str(lam), "eps": str(eps), "pieces": pieces,
               "uncovered": int(cov.uncovered.size), "total_edges": cov.total_edges}
    lines = [f"{len(pieces)} pieces, {cov.uncovered.size}/{cov.total_edges} edges uncovered"]
    for i, p in enumerate(cov.pieces):
        lines.append(f"  piece {i}: v={p.n_vertices} e={p.n_edges} d={p.avg_degree} "
                     f"({p.certification})")
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_connect(args) -> int:
    g = gio.load(args.file)
    params = _ladder(args, g.n, 2)
    avoid = AvoidSet(args.avoid_vertices, args.avoid_colours)
    try:
        tr = rainbow_connect(g, args.x, args.y, avoid, params, args.seed)
    except ValueError as err:
        raise UsageError(str(err)) from None
    if tr.ok:
        p = tr.path
        good = (p.replays_on(g) and p.is_rainbow() and p.is_simple() and p.start == args.x
                and p.end == args.y and len(p) <= params.path_len
                and not set(p.vertices) & avoid.vertices and not set(p.colours) & avoid.colours)
        if not good:
            raise AssertionError("connect produced a path that fails replay")
        _emit(args, {"ok": True, "path": p.to_json(), "max_path_len": params.path_len},
              f"path {list(p.vertices)} colours {list(p.colours)}")
        return OK
    print(tr.dumps(), end="")
    return FAILED


def cmd_find(args) -> int:
    g = gio.load(args.file)
    mode = "paper" if args.paper_mode else "practical"
    try:
        out = find_rainbow_subdivision(g, args.t, mode, args.seed, eps=args.eps,
                                       max_len=args.max_len, branch=args.branch)
    except (PreconditionError, ValueError) as err:
        raise UsageError(str(err)) from None
    if out.ok:
        verdict = verify_subdivision(g, out.certificate, args.t, out.params.path_len)
        if not verdict:
            raise AssertionError(f"certificate rejected by the verifier: {verdict.reason}")
        text = out.certificate.dumps()
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        print(text, end="")
        return OK
    print(out.dumps(), end="")
    return FAILED


def cmd_verify(args) -> int:
    g = gio.load(args.file)
    try:
        cert = SubdivisionCertificate.loads(Path(args.cert).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
        raise UsageError(f"malformed certificate: {err}") from None
    max_len = args.max_len if args.max_len is not None else cert.max_path_len
    v = verify_subdivision(g, cert, args.t, max_len)
    _emit(args, {"accepted": v.accepted, "reason": v.reason},
          "accepted" if v else f"rejected: {v.reason}")
    return OK if v else FAILED


def cmd_cycle(args) -> int:
    g = gio.load(args.file)
    cyc = brute_rainbow_cycle(g, args.max_len)
    if cyc is None:
        _emit(args, {"cycle": None}, "none")
    else:
        _emit(args, {"cycle": cyc.to_json()},
              f"cycle {list(cyc.vertices)} colours {list(cyc.colours)}")
    return OK


def cmd_bench(args) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise UsageError(f"malformed bench spec: {err}") from None
    try:
        text = run_bench(spec, timing=args.timing)
    except (BenchSpecError, KeyError, TypeError) as err:
        raise UsageError(f"malformed bench spec: {err}") from None
    _write_or_print(args.out, text)
    return OK


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rainbow-subdiv", description="Rainbow subdivisions in properly edge-coloured graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    gen = sub.add_parser("gen", help="generate an instance")
    gsub = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    h = gsub.add_parser("hypercube")
    h.add_argument("--m", type=int, required=True)
    r = gsub.add_parser("random")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--p", type=float, required=True)
    r.add_argument("--rule", choices=("greedy", "fanned"), default="greedy")
    r.add_argument("--seed", type=int, required=True)
    for name in ("rainbow-complete", "one-factorized"):
        q = gsub.add_parser(name)
        q.add_argument("--n", type=int, required=True)
    for q in (h, r, *gsub.choices.values()):
        if not any(a.dest == "out" for a in q._actions):
            q.add_argument("--out", help="output file (default stdout)")
    gen.set_defaults(func=cmd_gen)

    c = with_json(sub.add_parser("check", help="validate a graph file"))
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    e = with_json(sub.add_parser("extract-minimal", help="d-minimal subgraph"))
    e.add_argument("file")
    e.add_argument("--d", type=_fraction, required=True)
    e.set_defaults(func=cmd_extract)

    cv = with_json(sub.add_parser("cover", help="expander covering"))
    cv.add_argument("file")
    cv.add_argument("--eps", type=_fraction)
    cv.add_argument("--lambda", "--lam", dest="lam", type=_fraction)
    cv.add_argument("--paper-mode", action="store_true")
    cv.set_defaults(func=cmd_cover)

    cn = with_json(sub.add_parser("connect", help="rainbow x-y path avoiding vertices and colours"))
    cn.add_argument("file")
    cn.add_argument("--x", type=int, required=True)
    cn.add_argument("--y", type=int, required=True)
    cn.add_argument("--avoid-vertices", type=_int_list, default=[])
    cn.add_argument("--avoid-colours", type=_int_list, default=[])
    cn.add_argument("--seed", type=int, required=True)
    cn.add_argument("--eps", type=_fraction)
    mx = cn.add_mutually_exclusive_group()
    mx.add_argument("--paper-mode", action="store_true")
    mx.add_argument("--max-len", type=int)
    cn.set_defaults(func=cmd_connect)

    f = sub.add_parser("find-subdivision", help="rainbow K_t-subdivision certificate")
    f.add_argument("file")
    f.add_argument("--t", type=int, required=True)
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--eps", type=_fraction)
    f.add_argument("--branch", type=_int_list)
    f.add_argument("--out", help="also write the certificate here")
    mf = f.add_mutually_exclusive_group()
    mf.add_argument("--paper-mode", action="store_true")
    mf.add_argument("--max-len", type=int)
    f.set_defaults(func=cmd_find)

    v = with_json(sub.add_parser("verify", help="check a subdivision certificate"))
    v.add_argument("file")
    v.add_argument("cert")
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--max-len", type=int)
    v.set_defaults(func=cmd_verify)

    rc = with_json(sub.add_parser("rainbow-cycle", help="exhaustive rainbow cycle search"))
    rc.add_argument("file")
    rc.add_argument("--max-len", type=int)
    rc.set_defaults(func=cmd_cycle)

    b = sub.add_parser("bench", help="run a benchmark grid, CSV out")
    b.add_argument("spec")
    b.add_argument("--out")
    b.add_argument("--timing", action="store_true", help="add a wall_time column")
    b.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_len", None) is not None and args.max_len < (4 if args.command in ("connect", "find-subdivision") else 0):
            raise UsageError("--max-len is too small")
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    except (gio.GraphError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
