"""Benchmark instance generators."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import ColouredGraph


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int | None = None

    KINDS = ("hypercube", "random-proper", "rainbow-complete", "one-factorized-complete")

    def build(self) -> ColouredGraph:
        p = self.params
        if self.kind == "hypercube":
            return gen_hypercube(int(p["m"]))
        if self.kind == "random-proper":
            return gen_random_proper(int(p["n"]), float(p["p"]), p.get("rule", "greedy"), self.seed or 0)
        if self.kind == "rainbow-complete":
            return gen_rainbow_complete(int(p["n"]))
        if self.kind == "one-factorized-complete":
            return gen_one_factorized_complete(int(p["n"]))
        raise ValueError(f"unknown generator kind {self.kind!r}")


def gen_hypercube(m: int) -> ColouredGraph:
    """The m-cube with vertex ``S`` a bitmask of a subset of ``{1..m}``; the
    edge between ``S`` and ``S - {i}`` has colour ``i - 1``."""
    if not 1 <= m <= 24:
        raise ValueError("hypercube dimension must lie in [1, 24]")
    n = 1 << m
    verts = np.arange(n, dtype=np.int64)
    us, vs, cs = [], [], []
    for i in range(m):
        low = verts[(verts >> i) & 1 == 0]
        us.append(low)
        vs.append(low | (1 << i))
        cs.append(np.full(low.size, i, dtype=np.int64))
    edges = np.stack([np.concatenate(us), np.concatenate(vs)], axis=1)
    header = [f"hypercube m={m}",
              "vertex = bitmask of a subset of {1..m} (bit i-1 <-> element i)",
              "edge S -- S\\{i} has colour i-1"]
    return ColouredGraph(n, edges, np.concatenate(cs), k=m, header=header)


def gen_rainbow_complete(n: int) -> ColouredGraph:
    if n < 2:
        raise ValueError("rainbow complete graph needs n >= 2")
    iu, iv = np.triu_indices(n, 1)
    m = iu.size
    return ColouredGraph(n, np.stack([iu, iv], axis=1), np.arange(m), k=m,
                         header=[f"rainbow-complete n={n}", "edge (u,v) has its own colour"])


def gen_one_factorized_complete(n: int) -> ColouredGraph:
    """K_n coloured by the round-robin 1-factorization (n - 1 colours)."""
    if n < 2 or n % 2:
        raise ValueError("1-factorization needs an even n >= 2")
    r = n - 1
    edges, cols = [], []
    for c in range(r):
        edges.append((c, n - 1))
        cols.append(c)
        for i in range(1, n // 2):
            edges.append(((c + i) % r, (c - i) % r))
            cols.append(c)
    return ColouredGraph(n, edges, cols, k=r,
                         header=[f"one-factorized-complete n={n}", "round-robin perfect matchings"])


def gen_random_proper(n: int, p: float, rule: str = "greedy", seed: int = 0) -> ColouredGraph:
    """Erdos-Renyi G(n, p) with a proper edge-colouring.

    ``greedy`` is first-fit over edges in sorted order (at most 2*Delta - 1
    colours); ``fanned`` is Misra-Gries fan recolouring (at most Delta + 1).
    """
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if rule not in ("greedy", "fanned"):
        raise ValueError(f"unknown colouring rule {rule!r}")
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    edges = list(zip(iu[keep].tolist(), iv[keep].tolist()))
    cols = greedy_edge_colouring(n, edges) if rule == "greedy" else misra_gries(n, edges)
    k = max(cols) + 1 if cols else 0
    header = [f"random-proper n={n} p={p} rule={rule} seed={seed}"]
    return ColouredGraph(n, edges, cols, k=k, header=header)


def greedy_edge_colouring(n: int, edges) -> list[int]:
    used = [set() for _ in range(n)]
    out = []
    for u, v in edges:
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        used[u].add(c)
        used[v].add(c)
        out.append(c)
    return out


def misra_gries(n: int, edges) -> list[int]:
    """Proper edge-colouring with at most Delta + 1 colours."""
    if not edges:
        return []
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    ncol = max(deg) + 1
    at = [dict() for _ in range(n)]  # colour -> neighbour
    colour: dict[tuple[int, int], int] = {}

    def key(a, b):
        return (a, b) if a < b else (b, a)

    def paint(a, b, c):
        colour[key(a, b)] = c
        at[a][c] = b
        at[b][c] = a

    def erase(a, b):
        c = colour.pop(key(a, b))
        del at[a][c]
        del at[b][c]
        return c

    def first_free(x):
        for c in range(ncol):
            if c not in at[x]:
                return c
        raise AssertionError("no free colour")

    for u, v in edges:
        fan = [v]
        in_fan = {v}
        while True:
            last = fan[-1]
            nxt = None
            for c in sorted(at[u]):
                w = at[u][c]
                if w not in in_fan and c not in at[last]:
                    nxt = w
                    break
            if nxt is None:
                break
            fan.append(nxt)
            in_fan.add(nxt)

        c = first_free(u)
        d = first_free(fan[-1])
        if c != d:
            # invert the maximal path from u alternating d, c, d, ...
            path = []
            x, cur = u, d
            while cur in at[x]:
                y = at[x][cur]
                path.append((x, y, cur))
                x, cur = y, (c if cur == d else d)
            for a, b, _ in path:
                erase(a, b)
            for a, b, cc in path:
                paint(a, b, c if cc == d else d)

        k = None
        for i, w in enumerate(fan):
            if i > 0 and colour.get(key(u, w)) is None:
                break
            if i > 0 and colour[key(u, w)] in at[fan[i - 1]]:
                break
            if d not in at[w]:
                k = i
                break
        assert k is not None, "fan rotation target not found"
        for j in range(k):
            cj = erase(u, fan[j + 1])
            paint(u, fan[j], cj)
        paint(u, fan[k], d)
    return [colour[key(u, v)] for u, v in edges]
