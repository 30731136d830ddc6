"""(d, lambda, eps)-expander extraction and expander coverings."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .density import (PreconditionError, capped_suffixes, dense_subgraph_decision,
                      extract_d_minimal)
from .graph import ColouredGraph, SubgraphView, as_view
from .oracle import EXHAUSTIVE_CAP, SubsetTable

EXHAUSTIVE = "exhaustive"
HEURISTIC = "heuristic-unrefuted"


@dataclass(frozen=True)
class ExpanderParams:
    d: Fraction
    lam: Fraction
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d", Fraction(self.d))
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not 0 < self.lam < 1 or not 0 < self.eps < 1:
            raise ValueError("lambda and eps must lie in (0, 1)")
        if self.d <= 0:
            raise ValueError("d must be positive")

    def size_cap(self, n: int) -> int:
        return math.floor((1 - self.eps) * n)

    @property
    def dense_threshold(self) -> Fraction:
        """Average degree a violating set must reach."""
        return (1 - self.lam) * self.d


@dataclass(frozen=True)
class ExpanderPiece:
    subgraph: SubgraphView
    params: ExpanderParams
    certification: str
    shrink_steps: int = 0

    @property
    def n_vertices(self) -> int:
        return self.subgraph.n_vertices

    @property
    def n_edges(self) -> int:
        return self.subgraph.n_edges

    @property
    def avg_degree(self) -> Fraction:
        return self.subgraph.avg_degree()


@dataclass
class Covering:
    pieces: list[ExpanderPiece]
    uncovered: np.ndarray  # parent edge ids
    total_edges: int
    params: tuple[Fraction, Fraction] = field(default=(Fraction(0), Fraction(0)))

    @property
    def covered_fraction(self) -> Fraction:
        if self.total_edges == 0:
            return Fraction(1)
        return Fraction(self.total_edges - int(self.uncovered.size), self.total_edges)


def _best(cands: list[tuple[tuple[int, ...], int]]) -> tuple[int, ...] | None:
    """Densest ``(vertices, e)`` candidate; ties to fewer vertices, then
    lexicographic vertex order."""
    if not cands:
        return None
    return min(cands, key=lambda c: (-Fraction(c[1], len(c[0])), len(c[0]), c[0]))[0]


def search_dense_capped(view: SubgraphView, min_avg: Fraction, cap: int,
                        exhaustive_cap: int = EXHAUSTIVE_CAP) -> tuple[tuple[int, ...] | None, bool]:
    """A vertex set of size ``<= cap`` inducing average degree ``>= min_avg``.

    Exhaustive up to ``exhaustive_cap`` vertices; beyond that the candidates
    are the unconstrained min-cut witness (if it fits) and capped suffixes of
    the degeneracy order. Returns ``(set or None, exhaustive)``.
    """
    n = view.n_vertices
    if cap < 1 or n == 0:
        return None, True
    if n <= exhaustive_cap:
        tab = SubsetTable(view, exhaustive_cap)
        ok = tab.at_least(min_avg) & (tab.sizes <= cap)
        m = tab.best(ok)
        return (None if m is None else tab.vertices_of(m)), True
    cands = []
    if min_avg > 0:
        w = dense_subgraph_decision(view, min_avg / 2)
        if w is not None and len(w.vertices) <= cap:
            cands.append((w.vertices, int(w.density * len(w.vertices))))
    for verts, e in capped_suffixes(view, cap):
        if 2 * e >= min_avg * len(verts):
            cands.append((verts, e))
    return _best(cands), False


def find_violating_set(piece: SubgraphView | ExpanderPiece, params: ExpanderParams) -> tuple[int, ...] | None:
    """A set ``S`` with ``|S| <= (1 - eps) v`` and ``d(S) >= (1 - lam) d``,
    or ``None`` when the search finds none (exhaustive for small pieces)."""
    view = piece.subgraph if isinstance(piece, ExpanderPiece) else as_view(piece)
    found, _ = search_dense_capped(view, params.dense_threshold, params.size_cap(view.n_vertices))
    return found


def lambda_is_full_strength(lam, eps, n: int) -> bool:
    """``lam <= eps / (2 ln n)``, evaluated at 50 digits."""
    if n <= 1:
        return False
    with mpmath.workdps(50):
        lhs = mpmath.mpf(Fraction(lam).numerator) / Fraction(lam).denominator
        rhs = mpmath.mpf(Fraction(eps).numerator) / Fraction(eps).denominator / (2 * mpmath.log(n))
        return lhs <= rhs


def extract_expander(view: ColouredGraph | SubgraphView, d, lam, eps,
                     paper_mode: bool = False) -> ExpanderPiece:
    """Run the shrinking process: take a d_i-minimal ``H_i`` of ``G_i``; stop if
    no violating set is found, else recurse on ``G[S]``.

    The returned piece records ``d = d(H)`` (a d_i-minimal graph is also
    d(H)-minimal, and no set reaches ``(1 - lam) d_i <= (1 - lam) d(H)``).
    """
    view = as_view(view)
    d = Fraction(d)
    if view.n_vertices == 0 or view.avg_degree() < d:
        raise PreconditionError(f"average degree of the view is below d = {d}")
    n = view.n_vertices
    if paper_mode and not lambda_is_full_strength(lam, eps, n):
        raise PreconditionError("paper mode needs lambda <= eps / (2 ln n)")
    G = view
    steps = 0
    while True:
        d_i = G.avg_degree()
        H = extract_d_minimal(G, d_i).subgraph
        S, exhaustive = search_dense_capped(
            H, (1 - Fraction(lam)) * d_i, math.floor((1 - Fraction(eps)) * H.n_vertices))
        if S is None:
            break
        G = view.induced(list(S))
        steps += 1
    piece = ExpanderPiece(H, ExpanderParams(H.avg_degree(), lam, eps),
                          EXHAUSTIVE if exhaustive else HEURISTIC, steps)
    if paper_mode:
        assert steps <= math.ceil(math.log(n) / float(eps)) + 1e-9
        assert piece.avg_degree >= d / 2
    return piece


def cover_by_expanders(view: ColouredGraph | SubgraphView, lam, eps,
                       paper_mode: bool = False) -> Covering:
    """Greedily peel edge-disjoint expanders off the residual graph until
    fewer than ``eps * e(G)`` edges remain."""
    view = as_view(view)
    lam, eps = Fraction(lam), Fraction(eps)
    total = view.n_edges
    n = view.n_vertices
    if paper_mode and not lambda_is_full_strength(lam, eps, n):
        raise PreconditionError("paper mode needs lambda <= eps / (2 ln n)")
    d_g = view.avg_degree() if n else Fraction(0)
    residual = view
    pieces: list[ExpanderPiece] = []
    while residual.n_edges > 0 and residual.n_edges >= eps * total:
        piece = extract_expander(residual, residual.avg_degree(), lam, eps)
        if paper_mode:
            assert piece.avg_degree >= eps * d_g / 2
        pieces.append(piece)
        # residual lives on the endpoints of its edges; d(G') >= eps d(G) still holds
        residual = residual.without_edges(piece.subgraph.edge_ids()).spanning_vertices()
    return Covering(pieces, residual.edge_ids(), total, (lam, eps))
