"""Brute-force verifiers. Nothing here calls into the pipeline modules; they
are the ground truth the pipeline is measured against."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .certificates import RainbowPath, SubdivisionCertificate
from .graph import ColouredGraph, SubgraphView, as_view
from .kernels import popcounts, rainbow_cycle, subset_edge_counts

EXHAUSTIVE_CAP = 16


class ExhaustiveCapError(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    counterexample: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""

    def __bool__(self):
        return self.accepted


class SubsetTable:
    """Edge counts of every induced subgraph of a small view, indexed by
    bitmask over the view's vertices in increasing order."""

    def __init__(self, view: ColouredGraph | SubgraphView, cap: int = EXHAUSTIVE_CAP):
        view = as_view(view)
        verts, le = view.local_arrays()
        if verts.size > cap:
            raise ExhaustiveCapError(f"{verts.size} vertices exceed the exhaustive cap of {cap}")
        self.view = view
        self.verts = verts
        self.nv = int(verts.size)
        adj = np.zeros(self.nv, dtype=np.int64)
        for a, b in le.tolist():
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        self.adjmask = adj
        self.edges = subset_edge_counts(adj)
        self.sizes = popcounts(self.nv)

    def vertices_of(self, mask: int) -> tuple[int, ...]:
        return tuple(int(self.verts[i]) for i in range(self.nv) if mask >> i & 1)

    def at_least(self, avg: Fraction) -> np.ndarray:
        """Boolean over masks: non-empty and ``2e(S)/|S| >= avg``."""
        return (self.sizes > 0) & (2 * avg.denominator * self.edges >= avg.numerator * self.sizes)

    def best(self, candidates: np.ndarray) -> int | None:
        """Densest candidate; ties to smaller size, then lexicographic vertex order."""
        idx = np.flatnonzero(candidates)
        if idx.size == 0:
            return None
        e = self.edges[idx]
        s = self.sizes[idx]
        approx = e / s
        near = approx >= approx.max() - 1e-9
        dens = max(Fraction(int(a), int(b)) for a, b in zip(e[near], s[near]))
        tied = idx[e * dens.denominator == s * dens.numerator]
        smin = self.sizes[tied].min()
        tied = tied[self.sizes[tied] == smin]
        return min(tied.tolist(), key=self.vertices_of)


def brute_d_minimal_check(view: ColouredGraph | SubgraphView, d, cap: int = EXHAUSTIVE_CAP) -> CheckResult:
    """Definition-level d-minimality: every proper induced subgraph has average
    degree ``< d``, ``d(G) >= d``, and deleting any one edge drops below ``d``."""
    d = Fraction(d)
    tab = SubsetTable(view, cap)
    full = (1 << tab.nv) - 1
    bad = tab.at_least(d)
    bad[full] = False
    if bad.any():
        idx = np.flatnonzero(bad)
        smin = tab.sizes[idx].min()
        first = min(idx[tab.sizes[idx] == smin].tolist(), key=tab.vertices_of)
        return CheckResult(False, tab.vertices_of(first), "proper induced subgraph reaches d")
    e = int(tab.edges[full]) if tab.nv else 0
    if tab.nv == 0 or Fraction(2 * e, tab.nv) < d:
        return CheckResult(False, None, "average degree below d")
    if Fraction(2 * (e - 1), tab.nv) >= d:
        return CheckResult(False, tab.vertices_of(full), "an edge can be removed keeping average degree >= d")
    return CheckResult(True)


def brute_expander_check(view: ColouredGraph | SubgraphView, d, lam, eps,
                         cap: int = EXHAUSTIVE_CAP) -> CheckResult:
    """d-minimality plus ``d(S) <= (1 - lam) d`` for every ``S`` with
    ``|S| <= (1 - eps) n``."""
    d, lam, eps = Fraction(d), Fraction(lam), Fraction(eps)
    res = brute_d_minimal_check(view, d, cap)
    if not res.ok:
        return res
    tab = SubsetTable(view, cap)
    limit = math.floor((1 - eps) * tab.nv)
    thr = (1 - lam) * d
    # violation: 2e(S)/|S| > thr
    over = (tab.sizes > 0) & (tab.sizes <= limit) & (2 * thr.denominator * tab.edges > thr.numerator * tab.sizes)
    m = tab.best(over)
    if m is not None:
        return CheckResult(False, tab.vertices_of(m), "small set denser than (1 - lambda) d")
    return CheckResult(True)


def edge_expansion_violations(view: ColouredGraph | SubgraphView, d, lam, eps,
                              cap: int = EXHAUSTIVE_CAP) -> list[tuple[int, ...]]:
    """Sets with ``|S| <= (1 - eps) n`` and ``e(S, S^c) < (lam d / 2)|S|``."""
    d, lam, eps = Fraction(d), Fraction(lam), Fraction(eps)
    tab = SubsetTable(view, cap)
    full = (1 << tab.nv) - 1
    idx = np.arange(1 << tab.nv, dtype=np.int64)
    total = tab.edges[full]
    comp = full ^ idx
    cut = total - tab.edges - tab.edges[comp]
    limit = math.floor((1 - eps) * tab.nv)
    need = lam * d / 2
    bad = (tab.sizes > 0) & (tab.sizes <= limit) & (cut * need.denominator < need.numerator * tab.sizes)
    return [tab.vertices_of(int(m)) for m in np.flatnonzero(bad)]


def touching_edge_deficits(view: ColouredGraph | SubgraphView, d, cap: int = EXHAUSTIVE_CAP) -> list[tuple[int, ...]]:
    """Sets with ``e(S) + e(S, S^c) < d|S|/2``."""
    d = Fraction(d)
    tab = SubsetTable(view, cap)
    full = (1 << tab.nv) - 1
    idx = np.arange(1 << tab.nv, dtype=np.int64)
    touching = tab.edges[full] - tab.edges[full ^ idx]
    bad = 2 * d.denominator * touching < d.numerator * tab.sizes
    return [tab.vertices_of(int(m)) for m in np.flatnonzero(bad)]


def brute_rainbow_cycle(graph: ColouredGraph | SubgraphView, max_len: int | None = None) -> RainbowPath | None:
    """A rainbow cycle of length ``<= max_len`` as a closed path (first vertex
    repeated at the end), or ``None``. Exhaustive."""
    if isinstance(graph, SubgraphView):
        g, verts = graph.materialize()
    else:
        g, verts = graph, np.arange(graph.n)
    if max_len is None:
        max_len = g.n
    cyc = rainbow_cycle(g.indptr, g.nbr, g.nbr_colour, g.k, int(max_len))
    if cyc.size == 0:
        return None
    loop = [int(v) for v in cyc] + [int(cyc[0])]
    cols = tuple(g.colour_of(a, b) for a, b in zip(loop, loop[1:]))
    return RainbowPath(tuple(int(verts[v]) for v in loop), cols)


def verify_subdivision(graph: ColouredGraph, cert: SubdivisionCertificate, t: int,
                       max_path_len: int | None = None) -> Verdict:
    """Replay a certificate and name the first violated condition."""
    branch = list(cert.branch)
    if len(branch) != t:
        return Verdict(False, f"expected {t} branch vertices, got {len(branch)}")
    if any(not 0 <= b < graph.n for b in branch):
        return Verdict(False, "branch vertex out of range")
    if len(set(branch)) != t:
        return Verdict(False, "repeated branch vertex")
    wanted = list(combinations(range(t), 2))
    for pair in wanted:
        if pair not in cert.paths:
            return Verdict(False, f"missing pair {pair}")
    extra = sorted(set(cert.paths) - set(wanted))
    if extra:
        return Verdict(False, f"unexpected pair {extra[0]}")
    branch_set = set(branch)
    interiors: dict[int, tuple[int, int]] = {}
    seen_colours: dict[int, tuple[int, int]] = {}
    for i, j in wanted:
        p = cert.paths[(i, j)]
        if p.start != branch[i] or p.end != branch[j]:
            return Verdict(False, f"pair {(i, j)}: wrong endpoints")
        if max_path_len is not None and len(p) > max_path_len:
            return Verdict(False, f"pair {(i, j)}: length {len(p)} exceeds {max_path_len}")
        for a, b, c in zip(p.vertices, p.vertices[1:], p.colours):
            got = graph.colour_of(a, b)
            if got is None:
                return Verdict(False, f"pair {(i, j)}: ({a}, {b}) is not an edge")
            if got != c:
                return Verdict(False, f"pair {(i, j)}: edge ({a}, {b}) has colour {got}, not {c}")
        if not p.is_simple():
            return Verdict(False, f"pair {(i, j)}: repeated vertex")
        for v in p.vertices[1:-1]:
            if v in branch_set:
                return Verdict(False, f"pair {(i, j)}: interior meets branch vertex {v}")
            if v in interiors:
                return Verdict(False, f"pair {(i, j)}: interior vertex {v} shared with pair {interiors[v]}")
            interiors[v] = (i, j)
        for c in p.colours:
            if c in seen_colours:
                return Verdict(False, f"pair {(i, j)}: repeated colour {c} (also on pair {seen_colours[c]})")
            seen_colours[c] = (i, j)
    return Verdict(True, "ok")


def brute_rainbow_paths(graph: ColouredGraph, source: int, max_len: int, forbidden_vertices=(),
                        forbidden_colours=()) -> dict[int, RainbowPath]:
    """Every vertex reachable by some rainbow path of length ``<= max_len``
    avoiding the given sets, with one shortest such path each. Exhaustive DFS."""
    fv, fc = set(forbidden_vertices), set(forbidden_colours)
    best: dict[int, RainbowPath] = {source: RainbowPath.trivial(source)}

    def rec(path, cols):
        if len(cols) == max_len:
            return
        u = path[-1]
        for k in range(graph.indptr[u], graph.indptr[u + 1]):
            w, c = int(graph.nbr[k]), int(graph.nbr_colour[k])
            if w in path or w in fv or c in fc or c in cols:
                continue
            p = RainbowPath(tuple(path) + (w,), tuple(cols) + (c,))
            if w not in best or len(p) < len(best[w]):
                best[w] = p
            rec(path + [w], cols + [c])

    rec([source], [])
    return best
