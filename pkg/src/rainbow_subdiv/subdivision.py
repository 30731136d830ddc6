"""Greedy rainbow K_t-subdivision construction and the density-increment driver."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .certificates import SCHEMA, SubdivisionCertificate
from .density import PreconditionError
from .expander import extract_expander, search_dense_capped
from .graph import ColouredGraph, SubgraphView, as_view
from .ladder import ParamLadder, compute_ladder, practical_ladder
from .search import AvoidSet, ConnectTranscript, SplitError, prepare_connect, rainbow_connect

__all__ = ["ParamLadder", "compute_ladder", "practical_ladder", "IncrementTrace",
           "SubdivisionOutcome", "find_small_dense_subgraph", "density_increment", "build_subdivision",
           "find_rainbow_subdivision", "top_degree_vertices"]

PRACTICAL_EPS = Fraction(1, 4)


def find_small_dense_subgraph(view: ColouredGraph | SubgraphView, min_avg, max_vertices: int) -> SubgraphView | None:
    """An induced subgraph on at most ``max_vertices`` vertices with average
    degree at least ``min_avg``, or ``None``. Sound but incomplete beyond the
    exhaustive size."""
    view = as_view(view)
    min_avg = Fraction(min_avg)
    if min_avg <= 0:
        raise ValueError("min_avg must be positive")
    if max_vertices < 2:
        return None
    found, _ = search_dense_capped(view, min_avg, int(max_vertices))
    return None if found is None else view.induced(list(found))


@dataclass
class IncrementTrace:
    steps: list[dict] = field(default_factory=list)  # v, e, d per G_i
    views: list[SubgraphView] = field(default_factory=list)
    stop_reason: str = ""
    K: int = 1

    @property
    def m(self) -> int:
        return len(self.steps) - 1

    @property
    def final(self) -> SubgraphView:
        return self.views[-1]

    def check(self, eps) -> None:
        """Each step shrinks by K and keeps at least (eps/12) of the density."""
        eps = Fraction(eps)
        for a, b in zip(self.steps, self.steps[1:]):
            assert b["v"] * self.K <= a["v"]
            assert Fraction(b["d"]) >= eps / 12 * Fraction(a["d"])

    def to_json(self) -> dict:
        return {"steps": self.steps, "stop_reason": self.stop_reason, "K": self.K, "m": self.m}


@dataclass
class SubdivisionOutcome:
    ok: bool
    certificate: SubdivisionCertificate  # partial on failure
    params: ParamLadder
    trace: IncrementTrace | None = None
    failed_pair: tuple[int, int] | None = None
    transcript: ConnectTranscript | None = None
    reason: str = ""
    host_vertices: int = 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA, "ok": self.ok, "reason": self.reason,
            "certificate": self.certificate.to_json(),
            "failed_pair": None if self.failed_pair is None else list(self.failed_pair),
            "transcript": None if self.transcript is None else self.transcript.to_json(),
            "trace": None if self.trace is None else self.trace.to_json(),
            "params": self.params.as_dict(), "host_vertices": self.host_vertices,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def top_degree_vertices(view: SubgraphView, t: int) -> tuple[int, ...]:
    """The ``t`` highest-degree vertices of the view, ties to the lower id."""
    verts = view.vertices()
    deg = view.degree_array()[verts]
    order = np.lexsort((verts, -deg))
    return tuple(sorted(int(v) for v in verts[order[:t]]))


def build_subdivision(view: ColouredGraph | SubgraphView, branch, params: ParamLadder,
                      seed: int = 0) -> SubdivisionOutcome:
    """Join the branch vertices pairwise (lexicographic pair order) by rainbow
    paths, each avoiding the colours and vertices already used."""
    view = as_view(view)
    branch = tuple(int(b) for b in branch)
    t = len(branch)
    if t < 2 or len(set(branch)) != t:
        raise ValueError("branch vertices must be at least two distinct vertices")
    if not all(0 <= b < view.parent.n and view.vmask[b] for b in branch):
        raise ValueError("branch vertex outside the host graph")
    cert = SubdivisionCertificate(branch, {}, params.path_len)
    out = SubdivisionOutcome(False, cert, params, host_vertices=view.n_vertices)
    try:
        ctx = prepare_connect(view, params, seed)
    except SplitError as err:
        ctx = None
        split_reason = str(err)
    used_v: set[int] = set()
    used_c: set[int] = set()
    for i, j in combinations(range(t), 2):
        x, y = branch[i], branch[j]
        F = (used_v | set(branch)) - {x, y}
        avoid = AvoidSet(F, used_c)
        if ctx is None:
            tr = ConnectTranscript(x, y).fail("split", split_reason)
        else:
            tr = rainbow_connect(view, x, y, avoid, params, seed, context=ctx)
        if not tr.ok:
            out.failed_pair, out.transcript = (i, j), tr
            out.reason = f"pair {(i, j)} failed at stage {tr.stage}: {tr.reason}"
            return out
        cert.paths[(i, j)] = tr.path
        used_v.update(tr.path.vertices)
        used_c.update(tr.path.colours)
        pairs_budget = math.comb(t, 2) * params.path_len
        assert len(used_c) <= pairs_budget
        assert len(used_v | set(branch)) <= pairs_budget + t
    out.ok = True
    out.reason = "ok"
    return out


def density_increment(view: ColouredGraph | SubgraphView, eps, K: int,
                      floor=None) -> IncrementTrace:
    """Descend while some subgraph on at most ``v/K`` vertices has average
    degree at least ``(eps/12) d`` (and at least ``floor`` when given)."""
    view = as_view(view)
    eps = Fraction(eps)
    trace = IncrementTrace(K=int(K))
    G = view
    while True:
        d_i = G.avg_degree()
        trace.steps.append({"v": G.n_vertices, "e": G.n_edges, "d": str(d_i)})
        trace.views.append(G)
        if d_i == 0:
            trace.stop_reason = "no edges"
            break
        need = eps / 12 * d_i
        if floor is not None:
            need = max(need, Fraction(floor))
        F = find_small_dense_subgraph(G, need, G.n_vertices // trace.K)
        if F is None:
            trace.stop_reason = "no small dense subgraph found"
            break
        G = F
    return trace


def find_rainbow_subdivision(graph: ColouredGraph | SubgraphView, t: int, mode: str = "practical",
                             seed: int = 0, eps=None, max_len: int | None = None,
                             branch=None) -> SubdivisionOutcome:
    """Density-increment descent, expander extraction, then the greedy build.

    The descent repeatedly moves to a subgraph on at most ``v/K`` vertices
    with average degree at least ``(eps/12) d``. In practical mode such a
    subgraph must also reach the path budget (a sparser one could never host
    the subdivision); paper mode applies no floor.
    """
    view = as_view(graph)
    n = view.n_vertices
    if n < t:
        raise PreconditionError(f"graph has {n} vertices, fewer than t = {t}")
    if t < 2:
        raise ValueError("t must be at least 2")
    if mode == "paper":
        params = compute_ladder(n, t, eps=eps or Fraction(1, 40))
    elif mode == "practical":
        params = practical_ladder(n, t, eps=eps or PRACTICAL_EPS, max_len=max_len)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    floor = Fraction(params.budget) if mode == "practical" else None
    trace = density_increment(view, params.eps, params.K, floor)
    G = trace.final
    d0 = view.avg_degree()
    trace.check(params.eps)
    if mode == "paper":
        assert G.avg_degree() >= (params.eps / 12) ** trace.m * d0
        # primed parameters of the final graph, recomputed self-consistently
        params = compute_ladder(max(G.n_vertices, t), t, eps=params.eps)

    if G.n_edges == 0:
        cert = SubdivisionCertificate(tuple(), {}, params.path_len)
        return SubdivisionOutcome(False, cert, params, trace, reason="graph has no edges")
    H = extract_expander(G, G.avg_degree(), params.lam, params.eps).subgraph
    if branch is None:
        if H.n_vertices < t:
            cert = SubdivisionCertificate(tuple(), {}, params.path_len)
            return SubdivisionOutcome(False, cert, params, trace,
                                      reason=f"expander has fewer than {t} vertices")
        branch = top_degree_vertices(H, t)
        host = H
    else:
        branch = tuple(int(b) for b in branch)
        if len(branch) != t:
            raise ValueError(f"expected {t} branch vertices")
        host = next((h for h in (H, G, view) if all(0 <= b < h.parent.n and h.vmask[b] for b in branch)),
                    None)
        if host is None:
            raise ValueError("branch vertex outside the graph")
    out = build_subdivision(host, branch, params, seed)
    out.trace = trace
    return out
