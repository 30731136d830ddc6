"""Grid benchmark: instance generators x parameter grids -> CSV rows."""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product

from .expander import cover_by_expanders
from .instances import GeneratorSpec
from .ladder import compute_ladder, practical_ladder
from .oracle import brute_rainbow_cycle, verify_subdivision
from .search import rainbow_connect
from .subdivision import find_rainbow_subdivision, top_degree_vertices

COLUMNS = ["grid", "cell", "generator", "params", "seed", "n", "e", "d", "pieces",
           "covered_fraction", "connect_ok", "subdivision_ok", "rainbow_cycle"]
TASKS = ("cover", "connect", "subdivision", "rainbow-cycle")
ALIASES = {"random": "random-proper", "one-factorized": "one-factorized-complete"}


class BenchSpecError(ValueError):
    pass


def expand(spec: dict) -> list[dict]:
    """Cells of every grid, in grid order then lexicographic parameter order."""
    if not isinstance(spec, dict) or not isinstance(spec.get("grids", []), list):
        raise BenchSpecError("bench spec must be an object with a 'grids' list")
    cells = []
    for gi, grid in enumerate(spec.get("grids", [])):
        if not isinstance(grid, dict) or "generator" not in grid:
            raise BenchSpecError(f"grid {gi}: missing 'generator'")
        kind = ALIASES.get(grid["generator"], grid["generator"])
        if kind not in GeneratorSpec.KINDS:
            raise BenchSpecError(f"grid {gi}: unknown generator {grid['generator']!r}")
        tasks = grid.get("tasks", [])
        bad = [t for t in tasks if t not in TASKS]
        if bad:
            raise BenchSpecError(f"grid {gi}: unknown task {bad[0]!r}")
        params = grid.get("params", {})
        keys = sorted(params)
        axes = [v if isinstance(v, list) else [v] for v in (params[k] for k in keys)]
        seeds = grid.get("seeds", [0])
        ci = 0
        for combo in product(*axes):
            for seed in seeds:
                cells.append({"grid": gi, "cell": ci, "kind": kind, "params": dict(zip(keys, combo)),
                              "seed": int(seed), "tasks": list(tasks), "t": int(grid.get("t", 3)),
                              "max_len": grid.get("max_len"), "eps": grid.get("eps", "1/4")})
                ci += 1
    return cells


def run_cell(cell: dict, timing: bool = False) -> dict:
    start = time.perf_counter()
    g = GeneratorSpec(cell["kind"], cell["params"], cell["seed"]).build()
    row = {c: "" for c in COLUMNS}
    d = Fraction(2 * g.m, g.n) if g.n else Fraction(0)
    row.update(grid=cell["grid"], cell=cell["cell"], generator=cell["kind"],
               params=json.dumps(cell["params"], sort_keys=True), seed=cell["seed"],
               n=g.n, e=g.m, d=f"{float(d):.6f}")
    eps = Fraction(cell["eps"])
    max_len = cell["max_len"]
    tasks = cell["tasks"]
    if "cover" in tasks and g.m:
        lam = compute_ladder(g.n, 2, eps=eps, check_eps=False).lam
        cov = cover_by_expanders(g, lam, eps)
        row["pieces"] = len(cov.pieces)
        row["covered_fraction"] = f"{float(cov.covered_fraction):.6f}"
    if "connect" in tasks and g.m and g.n >= 2:
        params = practical_ladder(g.n, 2, eps=eps, max_len=max_len)
        x, y = top_degree_vertices(g.full_view(), 2)
        tr = rainbow_connect(g, x, y, None, params, cell["seed"])
        row["connect_ok"] = int(tr.ok)
    if "subdivision" in tasks and g.n >= cell["t"]:
        out = find_rainbow_subdivision(g, cell["t"], "practical", cell["seed"], eps=eps, max_len=max_len)
        ok = out.ok and bool(verify_subdivision(g, out.certificate, cell["t"], out.params.path_len))
        row["subdivision_ok"] = int(ok)
    if "rainbow-cycle" in tasks:
        cyc = brute_rainbow_cycle(g, max_len)
        row["rainbow_cycle"] = "none" if cyc is None else "found"
    if timing:
        row["wall_time"] = f"{time.perf_counter() - start:.4f}"
    return row


def threads() -> int:
    try:
        return max(1, int(os.environ.get("RS_THREADS", "1")))
    except ValueError:
        return 1


def run_bench(spec: dict, timing: bool = False) -> str:
    """CSV text for the spec. Rows are sorted by grid index whatever the
    parallelism; wall time is added only when ``timing`` is set so the
    default output is byte-stable."""
    cells = expand(spec)
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        rows = list(pool.map(lambda c: run_cell(c, timing), cells))
    rows.sort(key=lambda r: (r["grid"], r["cell"]))
    cols = COLUMNS + (["wall_time"] if timing else [])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
