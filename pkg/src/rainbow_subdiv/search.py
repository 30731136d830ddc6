"""Rainbow reachability with forbidden vertices and colours, the random colour
split, and the x-y rainbow connection procedure built on expander coverings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .certificates import SCHEMA, RainbowPath, shortcut_walk
from .density import PreconditionError
from .expander import Covering, ExpanderPiece, cover_by_expanders
from .graph import ColouredGraph, SubgraphView, as_view
from .kernels import rainbow_bfs
from .ladder import ParamLadder

SPLIT_RETRIES = 64


@dataclass(frozen=True)
class AvoidSet:
    vertices: frozenset = frozenset()
    colours: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in self.vertices))
        object.__setattr__(self, "colours", frozenset(int(c) for c in self.colours))

    def union(self, vertices=(), colours=()) -> AvoidSet:
        return AvoidSet(self.vertices | set(vertices), self.colours | set(colours))

    def without_vertices(self, vertices) -> AvoidSet:
        return AvoidSet(self.vertices - set(vertices), self.colours)

    def vertex_mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        if self.vertices:
            m[[v for v in self.vertices if 0 <= v < n]] = True
        return m

    def colour_mask(self, k: int) -> np.ndarray:
        m = np.zeros(max(k, 1), dtype=bool)
        if self.colours:
            m[[c for c in self.colours if 0 <= c < k]] = True
        return m


@dataclass(frozen=True)
class ReachResult:
    """Layered rainbow search output. ``parent``/``pcol`` encode the fixed
    witness paths; ``layers[i]`` is ``|U_i|`` (cumulative)."""
    source: int
    max_len: int
    avoid: AvoidSet
    parent: np.ndarray
    pcol: np.ndarray
    depth: np.ndarray
    order: np.ndarray
    layers: tuple[int, ...]

    def __len__(self):
        return int(self.order.size)

    def __contains__(self, v):
        return 0 <= v < self.depth.size and self.depth[v] >= 0

    @cached_property
    def mask(self) -> np.ndarray:
        return self.depth >= 0

    def path_to(self, v: int) -> RainbowPath:
        if v not in self:
            raise KeyError(v)
        vs, cs = [v], []
        while v != self.source:
            cs.append(int(self.pcol[v]))
            v = int(self.parent[v])
            vs.append(v)
        return RainbowPath(tuple(vs[::-1]), tuple(cs[::-1]))

    @cached_property
    def reached(self) -> dict[int, RainbowPath]:
        return {int(v): self.path_to(int(v)) for v in self.order}


def rainbow_reach(view: ColouredGraph | SubgraphView, source: int, avoid: AvoidSet | None = None,
                  max_len: int = 1) -> ReachResult:
    """Vertices reachable from ``source`` by the layered fixed-witness search.

    ``U_{i+1}`` adds every ``w`` outside ``U_i`` and ``F`` joined to some
    ``u`` in ``U_i`` by an edge whose colour is outside ``C`` and not on the
    stored path ``P(u)``; ``P(w) = P(u) + uw`` for the first such edge.
    """
    view = as_view(view)
    g = view.parent
    avoid = avoid or AvoidSet()
    if not 0 <= source < g.n or not view.vmask[source]:
        raise ValueError(f"source {source} is not in the view")
    if source in avoid.vertices:
        raise ValueError(f"source {source} is forbidden")
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    vertex_ok = view.vmask & ~avoid.vertex_mask(g.n)
    parent, pcol, depth, order, layers = rainbow_bfs(
        g.indptr, g.nbr, g.nbr_colour, g.nbr_edge, vertex_ok, view.emask,
        avoid.colour_mask(g.k), int(source), int(max_len))
    lay = [int(x) for x in layers]
    lay += [lay[-1]] * (max_len + 1 - len(lay))
    return ReachResult(int(source), int(max_len), avoid, parent, pcol, depth, order, tuple(lay))


def layer_growth_report(result: ReachResult, n: int, lam, eps) -> list[dict]:
    """Per-step growth ``|U_{i+1}| / |U_i|`` against ``1 + lam/2``, for the
    steps where ``|U_{i+1}| <= (1 - eps) n``."""
    lam, eps = Fraction(lam), Fraction(eps)
    out = []
    for i in range(len(result.layers) - 1):
        a, b = result.layers[i], result.layers[i + 1]
        if b > (1 - eps) * n:
            break
        out.append({"step": i, "before": a, "after": b,
                    "meets_bound": Fraction(b, a) >= 1 + lam / 2})
    return out


# ---------------------------------------------------------------------------
# colour split
# ---------------------------------------------------------------------------

class SplitError(RuntimeError):
    def __init__(self, message: str, best: ColourSplit | None = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class ColourSplit:
    group: np.ndarray  # group (1 or 2) of every colour id
    seed: int
    retries: int
    relaxed: bool = False

    def group_view(self, view: SubgraphView, i: int) -> SubgraphView:
        """Spanning subgraph ``G_i``: all vertices, edges of group-``i`` colours."""
        return view.with_edges(self.group[view.parent.colours] == i)

    def to_json(self) -> dict:
        return {"seed": self.seed, "retries": self.retries, "relaxed": self.relaxed,
                "group": [int(x) for x in self.group]}


def _split_slack(view: SubgraphView, group: np.ndarray) -> Fraction:
    """Smallest ratio among ``d(G_i) / (d/3)`` and ``delta(G_i) / (d(G_i)/3)``;
    the split is good iff this is at least 1."""
    d = view.avg_degree()
    worst = None
    for i in (1, 2):
        gi = view.with_edges(group[view.parent.colours] == i)
        di = gi.avg_degree()
        delta = int(gi.degree_array()[view.vmask].min())
        r1 = 3 * di / d if d else Fraction(0)
        r2 = Fraction(3 * delta) / di if di else Fraction(0)
        r = min(r1, r2)
        worst = r if worst is None else min(worst, r)
    return worst


def split_colours(view: ColouredGraph | SubgraphView, seed: int, budget: int = SPLIT_RETRIES) -> ColourSplit:
    """Place each colour in group 1 or 2 uniformly at random (attempt ``r``
    draws from ``default_rng([seed, r])``) until ``d(G_i) >= d/3`` and
    ``delta(G_i) >= d(G_i)/3`` for both groups."""
    view = as_view(view)
    k = view.parent.k
    if view.n_edges == 0 or k == 0:
        raise PreconditionError("the graph has no colours")
    best, best_slack = None, None
    for r in range(budget):
        rng = np.random.default_rng([int(seed), r])
        group = rng.integers(1, 3, size=k).astype(np.int8)
        slack = _split_slack(view, group)
        if slack >= 1:
            return ColourSplit(group, int(seed), r)
        if best_slack is None or slack > best_slack:
            best, best_slack = ColourSplit(group, int(seed), r, relaxed=True), slack
    raise SplitError(f"no split met the degree conditions within {budget} attempts", best)


def check_edge_to_vertex(G: SubgraphView, Gp: SubgraphView, gamma) -> bool:
    """Whether ``e(G') >= (1 - gamma) e(G)`` implies ``v(G') >= (1 - 3 gamma) v(G)``
    on this instance. Needs ``delta(G) >= d(G)/3``."""
    G, Gp = as_view(G), as_view(Gp)
    gamma = Fraction(gamma)
    if G.n_vertices == 0:
        raise PreconditionError("G is empty")
    if ((Gp.vmask & ~G.vmask).any() or (Gp.emask & ~G.emask).any()):
        raise PreconditionError("G' is not a subgraph of G")
    delta = int(G.degree_array()[G.vmask].min())
    if 3 * delta < G.avg_degree():
        raise PreconditionError("minimum degree of G is below d(G)/3")
    if Gp.n_edges < (1 - gamma) * G.n_edges:
        return True
    return Gp.n_vertices >= (1 - 3 * gamma) * G.n_vertices


# ---------------------------------------------------------------------------
# connection
# ---------------------------------------------------------------------------

@dataclass
class ConnectContext:
    """Split and per-group coverings, reusable across pairs on one view."""
    view: SubgraphView
    seed: int
    split: ColourSplit
    groups: tuple[SubgraphView, SubgraphView]
    coverings: tuple[Covering, Covering]


def prepare_connect(view: ColouredGraph | SubgraphView, params: ParamLadder, seed: int,
                    budget: int = SPLIT_RETRIES) -> ConnectContext:
    view = as_view(view)
    split = split_colours(view, seed, budget)
    groups = (split.group_view(view, 1), split.group_view(view, 2))
    covs = tuple(cover_by_expanders(gv, params.lam, params.eps) for gv in groups)
    return ConnectContext(view, int(seed), split, groups, covs)


@dataclass
class ConnectTranscript:
    x: int
    y: int
    stage: str | None = None  # failing stage, None on success
    reason: str = ""
    split: ColourSplit | None = None
    pieces: tuple[int, int] = (0, 0)
    reach_sizes: dict = field(default_factory=dict)
    entries_x: dict = field(default_factory=dict)  # piece index -> x_j
    entries_y: dict = field(default_factory=dict)
    avoid_sizes: tuple[int, int] = (0, 0)
    avoid_bound: int = 0
    inner_sizes: dict = field(default_factory=dict)
    edge_to_vertex: list = field(default_factory=list)
    z: int | None = None
    path: RainbowPath | None = None

    @property
    def ok(self) -> bool:
        return self.path is not None

    def fail(self, stage: str, reason: str) -> ConnectTranscript:
        self.stage, self.reason = stage, reason
        return self

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA, "x": self.x, "y": self.y, "ok": self.ok, "stage": self.stage,
            "reason": self.reason, "split": None if self.split is None else self.split.to_json(),
            "pieces": list(self.pieces), "reach_sizes": self.reach_sizes,
            "entries_x": {str(k): v for k, v in sorted(self.entries_x.items())},
            "entries_y": {str(k): v for k, v in sorted(self.entries_y.items())},
            "avoid_sizes": list(self.avoid_sizes), "avoid_bound": self.avoid_bound,
            "inner_sizes": self.inner_sizes, "edge_to_vertex": self.edge_to_vertex,
            "z": self.z, "path": None if self.path is None else self.path.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def _entries(reach: ReachResult, pieces: list[ExpanderPiece]) -> dict[int, int]:
    out = {}
    for j, p in enumerate(pieces):
        hit = np.flatnonzero(reach.mask & p.subgraph.vmask)
        if hit.size:
            out[j] = int(hit[0])
    return out


def rainbow_connect(view: ColouredGraph | SubgraphView, x: int, y: int, avoid: AvoidSet | None,
                    params: ParamLadder, seed: int = 0,
                    context: ConnectContext | None = None) -> ConnectTranscript:
    """Try to join ``x`` and ``y`` by a rainbow path of length at most
    ``4 * reach_len`` that avoids ``avoid``. Always returns the transcript;
    ``transcript.path`` is set on success, ``transcript.stage`` on failure.

    Stages: reach from x (``S_x``), split and cover each colour group, entry
    points ``x_j`` on group-1 pieces, reach from y avoiding the fixed ``P_j``
    (``S_y``) and entry points ``y_j`` on group-2 pieces, inner reaches inside
    each piece, then a meeting vertex ``z`` and a shortcut walk.
    """
    view = as_view(view)
    g = view.parent
    avoid = avoid or AvoidSet()
    if x == y:
        raise ValueError("x and y must differ")
    for v in (x, y):
        if not 0 <= v < g.n or not view.vmask[v]:
            raise ValueError(f"vertex {v} is not in the view")
        if v in avoid.vertices:
            raise ValueError(f"vertex {v} is forbidden")
    if len(avoid.vertices) > params.budget or len(avoid.colours) > params.budget:
        raise ValueError("avoid set exceeds the parameter budget")
    R = params.reach_len
    tr = ConnectTranscript(int(x), int(y))

    # y is kept off S_x so that no P_j runs through it
    sx = rainbow_reach(view, x, avoid.union(vertices=[y]), R)
    tr.reach_sizes["x"] = len(sx)
    if len(sx) <= 1:
        return tr.fail("reach-x", "no vertex besides x is reachable")

    if context is None or not context.view.same_as(view) or context.seed != seed:
        try:
            context = prepare_connect(view, params, seed)
        except SplitError as err:
            return tr.fail("split", str(err))
    tr.split = context.split
    cov1, cov2 = context.coverings
    tr.pieces = (len(cov1.pieces), len(cov2.pieces))

    tr.entries_x = _entries(sx, cov1.pieces)
    if not tr.entries_x:
        return tr.fail("reach-x", "S_x meets no group-1 piece")
    P = {j: sx.path_to(v) for j, v in tr.entries_x.items()}
    f1_v = {v for p in P.values() for v in p.vertices}
    f1_c = {c for p in P.values() for c in p.colours}

    sy = rainbow_reach(view, y, avoid.union(f1_v, f1_c), R)
    tr.reach_sizes["y"] = len(sy)
    tr.entries_y = _entries(sy, cov2.pieces)
    if not tr.entries_y:
        return tr.fail("reach-y", "S_y meets no group-2 piece")
    Q = {j: sy.path_to(v) for j, v in tr.entries_y.items()}
    f2_v = {v for p in Q.values() for v in p.vertices}
    f2_c = {c for p in Q.values() for c in p.colours}

    inner_avoid = avoid.union(f1_v | f2_v, f1_c | f2_c)
    tr.avoid_sizes = (len(inner_avoid.vertices), len(inner_avoid.colours))
    tr.avoid_bound = params.budget + (len(cov1.pieces) + len(cov2.pieces)) * (R + 1)
    assert max(tr.avoid_sizes) <= tr.avoid_bound

    U1 = {j: rainbow_reach(cov1.pieces[j].subgraph, v, inner_avoid.without_vertices([v]), R)
          for j, v in tr.entries_x.items()}
    U2 = {j: rainbow_reach(cov2.pieces[j].subgraph, v, inner_avoid.without_vertices([v]), R)
          for j, v in tr.entries_y.items()}
    tr.inner_sizes = {"1": {str(j): len(u) for j, u in U1.items()},
                      "2": {str(j): len(u) for j, u in U2.items()}}

    for i, (U, cov, G_i) in enumerate(((U1, cov1, context.groups[0]), (U2, cov2, context.groups[1]))):
        em = np.zeros(g.m, dtype=bool)
        for j, u in U.items():
            pe = cov.pieces[j].subgraph.emask
            ends = g.edges
            em |= pe & u.mask[ends[:, 0]] & u.mask[ends[:, 1]]
        Gp = G_i.with_edges(em).spanning_vertices() if em.any() else None
        try:
            ok = True if Gp is None else check_edge_to_vertex(G_i, Gp, 6 * params.eps)
        except PreconditionError:
            ok = None
        tr.edge_to_vertex.append(ok)

    in1 = np.zeros(g.n, dtype=bool)
    for u in U1.values():
        in1 |= u.mask
    in2 = np.zeros(g.n, dtype=bool)
    for u in U2.values():
        in2 |= u.mask
    meet = np.flatnonzero(in1 & in2)
    if meet.size == 0:
        return tr.fail("meet", "inner reaches of the two groups share no vertex")
    z = int(meet[0])
    tr.z = z
    i = min(j for j, u in U1.items() if z in u)
    j = min(j for j, u in U2.items() if z in u)
    segs = [P[i], U1[i].path_to(z), U2[j].path_to(z).reversed(), Q[j].reversed()]
    vs = list(segs[0].vertices)
    cs = list(segs[0].colours)
    for s in segs[1:]:
        assert s.vertices[0] == vs[-1]
        vs.extend(s.vertices[1:])
        cs.extend(s.colours)
    path = shortcut_walk(vs, cs)

    assert path.start == x and path.end == y
    assert path.is_rainbow() and path.is_simple() and path.replays_on(g)
    assert len(path) <= params.path_len
    assert not (set(path.vertices) & avoid.vertices) and not (set(path.colours) & avoid.colours)
    tr.path = path
    return tr
