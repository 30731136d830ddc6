"""Immutable properly edge-coloured graphs and non-materializing subgraph views."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Base class for malformed graph input."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEdgeError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class ImproperColouringError(GraphFormatError):
    def __init__(self, vertex: int, colour: int, line: int | None = None):
        self.vertex = vertex
        self.colour = colour
        super().__init__(f"improper colouring: colour {colour} appears twice at vertex {vertex}", line)


class EmptyViewError(GraphError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class ColouredGraph:
    """A simple graph on vertices ``0..n-1`` whose edges carry colours in
    ``0..k-1`` such that no two edges at a vertex share a colour.

    Edges are stored with ``u < v``, sorted by ``(u, v)``; edge ids index
    into ``edges``/``colours``. The CSR arrays ``indptr``/``nbr``/``nbr_colour``/
    ``nbr_edge`` list each vertex's neighbours in increasing order.
    """

    __slots__ = ("n", "k", "edges", "colours", "indptr", "nbr", "nbr_colour", "nbr_edge",
                 "header", "_edge_index")

    def __init__(self, n: int, edges, colours, k: int | None = None,
                 header: Sequence[str] = (), lines: Sequence[int] | None = None):
        if n < 0:
            raise GraphFormatError("negative vertex count")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        c = np.asarray(colours, dtype=np.int64).reshape(-1)
        if e.shape[0] != c.shape[0]:
            raise GraphFormatError("edge and colour arrays differ in length")
        if k is None:
            k = int(c.max()) + 1 if c.size else 0
        self.n = int(n)
        self.k = int(k)
        self.header = tuple(header)

        def line_of(i):
            return None if lines is None else lines[i]

        seen: dict[tuple[int, int], int] = {}
        at_vertex: dict[tuple[int, int], int] = {}
        for i, ((u, v), col) in enumerate(zip(e.tolist(), c.tolist())):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range in edge ({u}, {v})", line_of(i))
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}", line_of(i))
            if not 0 <= col < k:
                raise GraphFormatError(f"colour {col} outside [0, {k})", line_of(i))
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {key}", line_of(i))
            seen[key] = i
            for x in key:
                if (x, col) in at_vertex:
                    raise ImproperColouringError(x, col, line_of(i))
                at_vertex[(x, col)] = i

        if e.size:
            e = np.sort(e, axis=1)
            order = np.lexsort((e[:, 1], e[:, 0]))
            e = e[order]
            c = c[order]
        m = e.shape[0]
        self.edges = _frozen(e)
        self.colours = _frozen(c)

        ends = np.concatenate([e[:, 0], e[:, 1]])
        others = np.concatenate([e[:, 1], e[:, 0]])
        ids = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((others, ends))
        deg = np.bincount(ends, minlength=n) if m else np.zeros(n, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        self.indptr = _frozen(indptr)
        self.nbr = _frozen(others[order].astype(np.int64))
        self.nbr_edge = _frozen(ids[order].astype(np.int64))
        self.nbr_colour = _frozen(c[self.nbr_edge].astype(np.int64))
        self._edge_index = {(int(u), int(v)): i for i, (u, v) in enumerate(e.tolist())}

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edge_id(self, u: int, v: int) -> int | None:
        return self._edge_index.get((min(u, v), max(u, v)))

    def colour_of(self, u: int, v: int) -> int | None:
        i = self.edge_id(u, v)
        return None if i is None else int(self.colours[i])

    def full_view(self) -> SubgraphView:
        return SubgraphView(self, np.ones(self.n, dtype=bool), np.ones(self.m, dtype=bool))

    def validate(self) -> None:
        """Re-check the proper-colouring invariant by a direct scan."""
        for v in range(self.n):
            cols = self.nbr_colour[self.indptr[v]: self.indptr[v + 1]]
            if np.unique(cols).size != cols.size:
                vals, cnt = np.unique(cols, return_counts=True)
                raise ImproperColouringError(v, int(vals[cnt > 1][0]))

    def __eq__(self, other):
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return (self.n == other.n and self.k == other.k
                and np.array_equal(self.edges, other.edges)
                and np.array_equal(self.colours, other.colours))

    def __hash__(self):
        return hash((self.n, self.k, self.edges.tobytes(), self.colours.tobytes()))

    def __repr__(self):
        return f"ColouredGraph(n={self.n}, m={self.m}, k={self.k})"


@dataclass(frozen=True)
class DegreeStats:
    avg: Fraction
    min: int
    max: int


class SubgraphView:
    """A vertex mask plus edge mask over a parent graph. Masked edges always
    have both endpoints masked; nothing is copied until :meth:`materialize`."""

    __slots__ = ("parent", "vmask", "emask", "_deg")

    def __init__(self, parent: ColouredGraph, vmask, emask):
        vmask = np.asarray(vmask, dtype=bool)
        emask = np.asarray(emask, dtype=bool)
        if vmask.shape != (parent.n,) or emask.shape != (parent.m,):
            raise GraphError("mask shape does not match parent graph")
        e = parent.edges
        if emask.any() and not (vmask[e[emask, 0]].all() and vmask[e[emask, 1]].all()):
            raise GraphError("edge mask contains an edge with an endpoint outside the vertex mask")
        self.parent = parent
        self.vmask = _frozen(vmask.copy())
        self.emask = _frozen(emask.copy())
        self._deg = None

    # -- sizes -------------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return int(self.vmask.sum())

    @property
    def n_edges(self) -> int:
        return int(self.emask.sum())

    def vertices(self) -> np.ndarray:
        return np.flatnonzero(self.vmask)

    def edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.emask)

    def degree_array(self) -> np.ndarray:
        """Degrees within the view for every parent vertex (0 outside)."""
        if self._deg is None:
            e = self.parent.edges[self.emask]
            deg = np.bincount(e.ravel(), minlength=self.parent.n).astype(np.int64)
            self._deg = _frozen(deg)
        return self._deg

    def avg_degree(self) -> Fraction:
        v = self.n_vertices
        if v == 0:
            raise EmptyViewError("average degree of an empty view")
        return Fraction(2 * self.n_edges, v)

    def colours_used(self) -> np.ndarray:
        return np.unique(self.parent.colours[self.emask])

    # -- derived views -------------------------------------------------------
    def induced(self, vertices) -> SubgraphView:
        """Sub-view induced on ``vertices`` (which must lie in this view)."""
        vm = _as_mask(vertices, self.parent.n)
        if (vm & ~self.vmask).any():
            raise GraphError("vertex set is not contained in the view")
        e = self.parent.edges
        em = self.emask & vm[e[:, 0]] & vm[e[:, 1]]
        return SubgraphView(self.parent, vm, em)

    def without_vertex(self, v: int) -> SubgraphView:
        vm = self.vmask.copy()
        vm[v] = False
        return self.induced(vm)

    def without_edges(self, edge_ids) -> SubgraphView:
        em = self.emask.copy()
        em[np.asarray(edge_ids, dtype=np.int64)] = False
        return SubgraphView(self.parent, self.vmask, em)

    def with_edges(self, emask) -> SubgraphView:
        """Same vertex set, edge set replaced by ``emask & self.emask``."""
        return SubgraphView(self.parent, self.vmask, self.emask & np.asarray(emask, dtype=bool))

    def spanning_vertices(self) -> SubgraphView:
        """Restrict the vertex mask to endpoints of masked edges."""
        vm = np.zeros(self.parent.n, dtype=bool)
        e = self.parent.edges[self.emask]
        vm[e.ravel()] = True
        return SubgraphView(self.parent, vm, self.emask)

    def materialize(self) -> tuple[ColouredGraph, np.ndarray]:
        """Copy out as a standalone graph; returns it with the array mapping
        new vertex ids to parent ids."""
        verts = self.vertices()
        remap = np.full(self.parent.n, -1, dtype=np.int64)
        remap[verts] = np.arange(verts.size)
        e = remap[self.parent.edges[self.emask]]
        g = ColouredGraph(verts.size, e, self.parent.colours[self.emask], k=self.parent.k)
        return g, verts

    def local_arrays(self):
        """Dense re-indexing of the view: ``(verts, local_edges)`` where
        ``local_edges`` uses positions in ``verts``."""
        verts = self.vertices()
        remap = np.full(self.parent.n, -1, dtype=np.int64)
        remap[verts] = np.arange(verts.size)
        return verts, remap[self.parent.edges[self.emask]]

    def same_as(self, other: SubgraphView) -> bool:
        return (self.parent is other.parent and np.array_equal(self.vmask, other.vmask)
                and np.array_equal(self.emask, other.emask))

    def __repr__(self):
        return f"SubgraphView(v={self.n_vertices}, e={self.n_edges})"


def _as_mask(vertices, n: int) -> np.ndarray:
    a = np.asarray(vertices)
    if a.dtype == bool and a.shape == (n,):
        return a.copy()
    mask = np.zeros(n, dtype=bool)
    idx = np.asarray(list(vertices) if not isinstance(vertices, np.ndarray) else vertices, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise GraphError("vertex id out of range")
    mask[idx] = True
    return mask


def as_view(g: ColouredGraph | SubgraphView) -> SubgraphView:
    return g.full_view() if isinstance(g, ColouredGraph) else g


def degree_stats(view: ColouredGraph | SubgraphView) -> DegreeStats:
    view = as_view(view)
    if view.n_vertices == 0:
        raise EmptyViewError("degree statistics of an empty view")
    deg = view.degree_array()[view.vmask]
    return DegreeStats(view.avg_degree(), int(deg.min()), int(deg.max()))


def boundary_edges(view: ColouredGraph | SubgraphView, S: Iterable[int]) -> tuple[int, int]:
    """``(e(S), e(S, S^c))`` counted inside the view."""
    view = as_view(view)
    sm = _as_mask(S, view.parent.n)
    if (sm & ~view.vmask).any():
        raise GraphError("S is not contained in the view")
    e = view.parent.edges[view.emask]
    a = sm[e[:, 0]]
    b = sm[e[:, 1]]
    return int((a & b).sum()), int((a ^ b).sum())


# -- text format -------------------------------------------------------------

def loads(text: str) -> ColouredGraph:
    header: list[str] = []
    rows: list[tuple[int, int, int]] = []
    lines: list[int] = []
    dims = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header.append(line[1:].strip())
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"expected 3 integers, got {len(parts)} fields", lineno)
        try:
            a, b, c = (int(p) for p in parts)
        except ValueError:
            raise GraphFormatError(f"non-integer field in {line!r}", lineno) from None
        if dims is None:
            if min(a, b, c) < 0:
                raise GraphFormatError("negative count in header", lineno)
            dims = (a, b, c)
            continue
        if len(rows) == dims[1]:
            raise GraphFormatError(f"more than the declared {dims[1]} edges", lineno)
        rows.append((a, b, c))
        lines.append(lineno)
    if dims is None:
        raise GraphFormatError("missing 'n m k' header line")
    n, m, k = dims
    if len(rows) != m:
        raise GraphFormatError(f"declared {m} edges, found {len(rows)}")
    arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
    return ColouredGraph(n, arr[:, :2], arr[:, 2], k=k, header=header, lines=lines)


def load(path: str | Path) -> ColouredGraph:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(g: ColouredGraph, header: Sequence[str] | None = None) -> str:
    header = g.header if header is None else header
    out = [f"# {h}" if h else "#" for h in header]
    out.append(f"{g.n} {g.m} {g.k}")
    for (u, v), c in zip(g.edges.tolist(), g.colours.tolist()):
        out.append(f"{u} {v} {c}")
    return "\n".join(out) + "\n"


def dump(g: ColouredGraph, path: str | Path, header: Sequence[str] | None = None) -> None:
    Path(path).write_text(dumps(g, header), encoding="utf-8")
