"""Exact dense-subgraph decisions by min-cut and d-minimal subgraph extraction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import ColouredGraph, SubgraphView, as_view
from .kernels import max_flow_any

_INT64_SAFE = 1 << 62


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class DensityWitness:
    vertices: tuple[int, ...]
    density: Fraction  # e(S) / |S|


@dataclass(frozen=True)
class MinimalCertificate:
    subgraph: SubgraphView
    d: Fraction
    edge_minimal: bool
    vertex_minimal: bool
    shrink_steps: int = 0

    @property
    def avg_degree(self) -> Fraction:
        return self.subgraph.avg_degree()


def density_network(nv: int, local_edges: np.ndarray, g: Fraction):
    """Arc arrays for the density network at threshold ``g``.

    With ``b = (nv+1)q`` and ``a = 2((nv+1)p - 1)`` for ``g = p/q`` a cut with
    source side ``S`` costs ``b*m*nv + a|S| - 2b e(S)``, which drops below
    ``b*m*nv`` exactly when ``q e(S) >= p |S|``. Returns
    ``(tails, heads, cap, s, t, baseline)``.
    """
    p, q = g.numerator, g.denominator
    m = local_edges.shape[0]
    b = (nv + 1) * q
    a = 2 * ((nv + 1) * p - 1)
    deg = np.bincount(local_edges.ravel(), minlength=nv) if m else np.zeros(nv, dtype=np.int64)
    s, t = nv, nv + 1
    baseline = b * m * nv
    big = baseline + a * nv + b * m >= _INT64_SAFE
    dtype = object if big else np.int64

    verts = np.arange(nv, dtype=np.int64)
    tails = np.empty(4 * nv + 2 * m, dtype=np.int64)
    heads = np.empty_like(tails)
    cap = np.zeros(tails.shape[0], dtype=dtype)
    # s -> v and its reverse
    tails[0:2 * nv:2] = s
    heads[0:2 * nv:2] = verts
    tails[1:2 * nv:2] = verts
    heads[1:2 * nv:2] = s
    cap[0:2 * nv:2] = b * m
    # v -> t and its reverse
    o = 2 * nv
    tails[o:o + 2 * nv:2] = verts
    heads[o:o + 2 * nv:2] = t
    tails[o + 1:o + 2 * nv:2] = t
    heads[o + 1:o + 2 * nv:2] = verts
    if big:
        cap[o:o + 2 * nv:2] = [b * m + a - b * int(x) for x in deg]
    else:
        cap[o:o + 2 * nv:2] = b * m + a - b * deg
    # undirected edge gadgets: the two directions are each other's reverse
    o = 4 * nv
    if m:
        tails[o::2] = local_edges[:, 0]
        heads[o::2] = local_edges[:, 1]
        tails[o + 1::2] = local_edges[:, 1]
        heads[o + 1::2] = local_edges[:, 0]
        cap[o:] = b
    return tails, heads, cap, s, t, baseline


def dense_subgraph_decision(view: ColouredGraph | SubgraphView, g) -> DensityWitness | None:
    """Some vertex set ``S`` of the view with ``e(S)/|S| >= g``, or ``None``.

    Decided by one min-cut; the witness is the source side of the minimum cut
    closest to the source.
    """
    view = as_view(view)
    g = Fraction(g)
    if g <= 0:
        raise ValueError("density threshold must be positive")
    verts, le = view.local_arrays()
    nv = verts.size
    if nv == 0 or le.shape[0] == 0:
        return None
    tails, heads, cap, s, t, baseline = density_network(nv, le, g)
    flow, side = max_flow_any(nv + 2, tails, heads, cap, s, t)
    if int(flow) >= baseline:
        return None
    chosen = side[:nv]
    e_s = int((chosen[le[:, 0]] & chosen[le[:, 1]]).sum())
    size = int(chosen.sum())
    density = Fraction(e_s, size)
    assert density >= g, "min-cut witness fails the threshold"
    return DensityWitness(tuple(int(v) for v in verts[chosen]), density)


def extract_d_minimal(view: ColouredGraph | SubgraphView, d) -> MinimalCertificate:
    """A d-minimal subgraph ``H`` of the view.

    The view itself may be sparser than ``d`` as long as some subgraph
    reaches it; otherwise :class:`PreconditionError` is raised.

    Shrinks the vertex set while some proper induced subgraph keeps average
    degree ``>= d`` (vertices of degree below ``d/2`` are peeled directly,
    the rest is decided by min-cut on the whole of ``H`` and on every
    ``H - v``), then drops edges while ``2(e-1)/v >= d``.
    """
    view = as_view(view)
    d = Fraction(d)
    if d <= 0:
        raise ValueError("d must be positive")
    half = d / 2
    H = view
    if view.n_vertices == 0 or view.avg_degree() < d:
        w = dense_subgraph_decision(view, half)
        if w is None:
            raise PreconditionError(f"no subgraph of the view has average degree >= {d}")
        H = view.induced(list(w.vertices))
    steps = 0
    while True:
        deg = H.degree_array()
        verts = H.vertices()
        low = verts[2 * d.denominator * deg[verts] < d.numerator]
        if low.size:
            keep = H.vmask.copy()
            keep[low] = False
            H = H.induced(keep)
            steps += 1
            continue
        w = dense_subgraph_decision(H, half)
        if w is not None and len(w.vertices) < verts.size:
            H = H.induced(list(w.vertices))
            steps += 1
            continue
        found = None
        for v in sorted(verts.tolist(), key=lambda x: (int(deg[x]), x)):
            w = dense_subgraph_decision(H.without_vertex(v), half)
            if w is not None:
                found = w
                break
        if found is None:
            break
        H = H.induced(list(found.vertices))
        steps += 1

    nv, e = H.n_vertices, H.n_edges
    need = math.ceil(d * nv / 2)
    if e > need:
        ids = H.edge_ids()
        H = H.without_edges(ids[need:])
    assert H.avg_degree() >= d and Fraction(2 * (H.n_edges - 1), nv) < d
    return MinimalCertificate(H, d, True, True, steps)


def degeneracy_order(view: ColouredGraph | SubgraphView) -> list[int]:
    """Vertices in the order repeated minimum-degree removal deletes them
    (ties to the smaller id)."""
    view = as_view(view)
    g = view.parent
    verts = view.vertices().tolist()
    deg = {v: int(x) for v, x in zip(verts, view.degree_array()[verts])}
    alive = set(verts)
    buckets: dict[int, set[int]] = {}
    for v, k in deg.items():
        buckets.setdefault(k, set()).add(v)
    order = []
    k = 0
    while alive:
        while not buckets.get(k):
            k += 1
        v = min(buckets[k])
        buckets[k].discard(v)
        alive.discard(v)
        order.append(v)
        for idx in range(g.indptr[v], g.indptr[v + 1]):
            w = int(g.nbr[idx])
            if w in alive and view.emask[g.nbr_edge[idx]]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
                k = min(k, deg[w])
    return order


def capped_suffixes(view: ColouredGraph | SubgraphView, cap: int):
    """``(vertices, e)`` for the last ``s`` vertices of the degeneracy order,
    ``s = 1..cap``; the dense core candidates of bounded size."""
    view = as_view(view)
    g = view.parent
    order = degeneracy_order(view)
    inside = np.zeros(g.n, dtype=bool)
    e = 0
    chosen: list[int] = []
    out = []
    for v in reversed(order[-cap:] if cap > 0 else []):
        lo, hi = g.indptr[v], g.indptr[v + 1]
        nb = g.nbr[lo:hi]
        ok = view.emask[g.nbr_edge[lo:hi]]
        e += int((inside[nb] & ok).sum())
        inside[v] = True
        chosen.append(v)
        out.append((tuple(sorted(chosen)), e))
    return out
