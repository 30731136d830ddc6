"""Hot inner loops.

Each kernel exists twice: the ``_py_*`` function is plain Python over numpy
arrays and is what runs when the JIT is disabled; the public name is the
numba-compiled version of the same source. ``subset_edge_counts`` has a
separately vectorized numpy fallback because its loop form is hopeless
without compilation.
"""
import numpy as np

from ._jit import JIT_ENABLED, njit


# ---------------------------------------------------------------------------
# max-flow / min-cut (Dinic)
# ---------------------------------------------------------------------------

def _py_max_flow(n_nodes, tails, heads, cap, s, t):
    """Dinic's algorithm on an arc list where arc ``a`` and ``a ^ 1`` are
    mutual reverses.

    Returns ``(flow_value, source_side)`` where ``source_side`` marks the
    nodes reachable from ``s`` in the final residual network.
    """
    n_arcs = tails.shape[0]
    start = np.zeros(n_nodes + 1, dtype=np.int64)
    for a in range(n_arcs):
        start[tails[a] + 1] += 1
    for v in range(n_nodes):
        start[v + 1] += start[v]
    fill = start[:-1].copy()
    adj = np.empty(n_arcs, dtype=np.int64)
    for a in range(n_arcs):
        u = tails[a]
        adj[fill[u]] = a
        fill[u] += 1

    res = cap.copy()
    level = np.empty(n_nodes, dtype=np.int64)
    it = np.empty(n_nodes, dtype=np.int64)
    queue = np.empty(n_nodes, dtype=np.int64)
    stack = np.empty(n_nodes, dtype=np.int64)
    flow = res[0] - res[0]

    while True:
        level[:] = -1
        level[s] = 0
        qh = 0
        qt = 1
        queue[0] = s
        while qh < qt:
            u = queue[qh]
            qh += 1
            for k in range(start[u], start[u + 1]):
                a = adj[k]
                v = heads[a]
                if res[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
        if level[t] < 0:
            break
        for v in range(n_nodes):
            it[v] = start[v]

        while True:
            depth = 0
            u = s
            done = False
            while u != t:
                advanced = False
                while it[u] < start[u + 1]:
                    a = adj[it[u]]
                    v = heads[a]
                    if res[a] > 0 and level[v] == level[u] + 1:
                        stack[depth] = a
                        depth += 1
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        done = True
                        break
                    level[u] = -1
                    depth -= 1
                    u = tails[stack[depth]]
                    it[u] += 1
            if done:
                break
            push = res[stack[0]]
            for k in range(1, depth):
                if res[stack[k]] < push:
                    push = res[stack[k]]
            for k in range(depth):
                a = stack[k]
                res[a] -= push
                res[a ^ 1] += push
            flow += push

    side = np.zeros(n_nodes, dtype=np.bool_)
    side[s] = True
    queue[0] = s
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for k in range(start[u], start[u + 1]):
            a = adj[k]
            v = heads[a]
            if res[a] > 0 and not side[v]:
                side[v] = True
                queue[qt] = v
                qt += 1
    return flow, side


max_flow = njit(_py_max_flow)


def max_flow_any(n_nodes, tails, heads, cap, s, t):
    """Dispatch on capacity dtype: object arrays (arbitrary precision) always
    take the uncompiled path."""
    if cap.dtype == object:
        return _py_max_flow(n_nodes, tails, heads, cap, s, t)
    return max_flow(n_nodes, tails, heads, cap, s, t)


# ---------------------------------------------------------------------------
# layered rainbow search with fixed witnesses
# ---------------------------------------------------------------------------

def _py_rainbow_bfs(indptr, nbr, col, eid, vertex_ok, edge_ok, colour_bad, source, max_len):
    n = indptr.shape[0] - 1
    parent = np.full(n, -1, dtype=np.int64)
    pcol = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, -1, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    layers = np.zeros(max_len + 1, dtype=np.int64)

    depth[source] = 0
    order[0] = source
    count = 1
    layers[0] = 1
    lo = 0
    steps = 0
    while steps < max_len:
        hi = count
        if lo == hi:
            break
        for idx in range(lo, hi):
            u = order[idx]
            for k in range(indptr[u], indptr[u + 1]):
                w = nbr[k]
                if depth[w] >= 0 or not vertex_ok[w] or not edge_ok[eid[k]]:
                    continue
                c = col[k]
                if colour_bad[c]:
                    continue
                # colour must not already sit on the stored witness P(u)
                x = u
                clash = False
                while x != source:
                    if pcol[x] == c:
                        clash = True
                        break
                    x = parent[x]
                if clash:
                    continue
                parent[w] = u
                pcol[w] = c
                depth[w] = depth[u] + 1
                order[count] = w
                count += 1
        lo = hi
        steps += 1
        layers[steps] = count
    return parent, pcol, depth, order[:count], layers[: steps + 1]


rainbow_bfs = njit(_py_rainbow_bfs)


# ---------------------------------------------------------------------------
# exhaustive subset edge counts
# ---------------------------------------------------------------------------

def _py_subset_edge_counts(adjmask):
    """``counts[S] = e(G[S])`` for every bitmask S over ``len(adjmask)``
    vertices. ``adjmask[v]`` is the neighbour bitmask of ``v``."""
    nv = adjmask.shape[0]
    counts = np.zeros(1 << nv, dtype=np.int64)
    for b in range(nv):
        base = 1 << b
        nb = adjmask[b]
        for r in range(base):
            x = nb & r
            pc = 0
            while x:
                x &= x - 1
                pc += 1
            counts[base + r] = counts[r] + pc
    return counts


def _np_subset_edge_counts(adjmask):
    nv = adjmask.shape[0]
    counts = np.zeros(1 << nv, dtype=np.int64)
    for b in range(nv):
        base = 1 << b
        r = np.arange(base, dtype=np.int64)
        counts[base: 2 * base] = counts[:base] + np.bitwise_count(r & adjmask[b])
    return counts


if JIT_ENABLED:
    subset_edge_counts = njit(_py_subset_edge_counts)
else:
    subset_edge_counts = _np_subset_edge_counts


def popcounts(nv):
    return np.bitwise_count(np.arange(1 << nv, dtype=np.int64)).astype(np.int64)


# ---------------------------------------------------------------------------
# rainbow cycle search
# ---------------------------------------------------------------------------

def _py_rainbow_cycle(indptr, nbr, col, n_colours, max_len):
    """Depth-first search over simple paths anchored at their smallest vertex,
    pruned on repeated colours. Returns the cycle's vertex sequence (closing
    edge implied) or an empty array."""
    n = indptr.shape[0] - 1
    used = np.zeros(max(n_colours, 1), dtype=np.bool_)
    on_path = np.zeros(n, dtype=np.bool_)
    path = np.empty(n + 1, dtype=np.int64)
    pcols = np.empty(n + 1, dtype=np.int64)
    ptr = np.empty(n + 1, dtype=np.int64)
    for s in range(n):
        path[0] = s
        on_path[s] = True
        ptr[0] = indptr[s]
        top = 0
        while top >= 0:
            u = path[top]
            if ptr[top] >= indptr[u + 1]:
                on_path[u] = False
                if top > 0:
                    used[pcols[top]] = False
                top -= 1
                continue
            k = ptr[top]
            ptr[top] += 1
            w = nbr[k]
            c = col[k]
            if used[c]:
                continue
            if w == s:
                # closing edge; length top + 1
                if top >= 2 and top + 1 <= max_len:
                    out = path[: top + 1].copy()
                    on_path[:] = False
                    return out
                continue
            if w < s or on_path[w] or top + 1 >= max_len:
                continue
            top += 1
            path[top] = w
            pcols[top] = c
            used[c] = True
            on_path[w] = True
            ptr[top] = indptr[w]
        on_path[s] = False
    return np.empty(0, dtype=np.int64)


rainbow_cycle = njit(_py_rainbow_cycle)
