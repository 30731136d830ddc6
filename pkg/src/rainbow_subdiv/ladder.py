"""The derived parameter ladder (lambda, ell, L, K, M, c) behind the full-strength guarantees.

All logarithms are natural. ``n`` may be given directly or through ``ln_n``
(so astronomically large n can be handled symbolically); a rational ``ln_n``
makes lambda and ell exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import mpmath

PAPER_EPS = Fraction(1, 40)
LAMBDA_DENOMINATOR = 1 << 16
_DPS = 60


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _ceil(x) -> int:
    """Ceiling of an mpf, snapping values within 1e-40 of an integer."""
    r = mpmath.nint(x)
    if abs(x - r) < mpmath.mpf(10) ** -40:
        return int(r)
    return int(mpmath.ceil(x))


def _lambda(eps: Fraction, ln_n) -> Fraction:
    if isinstance(ln_n, (int, Fraction)):
        return eps / (2 * Fraction(ln_n))
    x = _mp(eps) / (2 * ln_n)
    den = LAMBDA_DENOMINATOR
    while True:
        num = int(mpmath.floor(x * den))
        if num > 0:
            return Fraction(num, den)
        den <<= 8


def _core(ln_n, t: int, eps: Fraction, ell: int | None = None):
    """``(lam, ell, L, K, M)`` at a given ``ln n``."""
    with mpmath.workdps(_DPS):
        lam = _lambda(eps, ln_n)
        if ell is None:
            if isinstance(ln_n, (int, Fraction)):
                ell = math.ceil(4 * Fraction(ln_n) / lam)
            else:
                ell = _ceil(4 * _mp(ln_n) / _mp(lam))
        L = math.comb(t, 2) * (4 * ell + 4) + t
        K = _ceil(mpmath.exp(mpmath.sqrt(_mp(ln_n))))
        M = L + Fraction(12 * K) / eps * (ell + 2)
    return lam, ell, L, K, M


def _ln_rhs(ln_n, t, eps):
    """``ln(48 (ell + 2M) / (eps lam))``."""
    lam, ell, _, _, M = _core(ln_n, t, eps)
    return mpmath.log(_mp(48 * (ell + 2 * M) / (eps * lam)))


def length_bound_holds(ln_n, eps: Fraction = PAPER_EPS) -> bool:
    """``4 ell + 4 <= 1300 ln^2 n``."""
    with mpmath.workdps(_DPS):
        _, ell, _, _, _ = _core(ln_n, 2, eps)
        return 4 * ell + 4 <= 1300 * _mp(ln_n) ** 2


def density_bound_holds(ln_n, t: int, eps: Fraction, c) -> bool:
    """``e^{(c/2) sqrt(ln n)} >= 48 (ell + 2M) / (eps lam)``, compared in logs."""
    with mpmath.workdps(_DPS):
        return _mp(c) / 2 * mpmath.sqrt(_mp(ln_n)) >= _ln_rhs(ln_n, t, eps)


def c_for(ln_n0, eps: Fraction) -> float:
    with mpmath.workdps(_DPS):
        return float(max(mpmath.sqrt(_mp(ln_n0)), 2 * mpmath.log(12 / _mp(eps))))


@lru_cache(maxsize=None)
def explicit_ln_n0(t: int, eps: Fraction = PAPER_EPS, limit: int = 100_000) -> int:
    """Smallest integer ``N`` such that at ``ln n = N`` (and on a check grid up
    to ``64 N``) the density bound holds with ``c = max(sqrt(N), 2 ln(12/eps))``,
    together with the ``1300 ln^2 n`` length bound when ``eps`` allows it
    (``4 ell`` grows like ``(32/eps) ln^2 n``, so only ``eps >= 32/1300``)."""
    eps = Fraction(eps)
    with_length = 32 / eps < 1300
    for N in range(1, limit + 1):
        c = c_for(N, eps)
        grid = [N * k for k in (1, 2, 4, 8, 16, 32, 64)]
        if all((not with_length or length_bound_holds(g, eps)) and density_bound_holds(g, t, eps, c)
               for g in grid):
            return N
    raise ValueError(f"no ln n0 up to {limit}")


@dataclass(frozen=True)
class ParamLadder:
    n: int | None
    ln_n: object  # int/Fraction when exact, mpf otherwise
    t: int
    eps: Fraction
    lam: Fraction
    ell: int
    L: int
    K: int
    M: Fraction
    c: float
    ln_d_threshold: float  # ln of the degree threshold e^{c sqrt(ln n)}
    ln_n0: int
    mode: str = "paper"
    reach_len: int = 0  # ell + 1 in paper mode
    path_len: int = 0  # 4 ell + 4 in paper mode

    @property
    def budget(self) -> int:
        """Cap on forbidden vertices/colours while building a subdivision."""
        return math.comb(self.t, 2) * self.path_len + self.t

    @property
    def d_threshold(self) -> float:
        return math.exp(self.ln_d_threshold) if self.ln_d_threshold < 700 else math.inf

    def practical(self, max_len: int | None = None, eps=None) -> ParamLadder:
        """Desk-scale ladder: the reach length is ``max_len // 4`` when a path
        length cap is given, else ``min(ell + 1, n - 1)``; ell, L and M follow."""
        eps = self.eps if eps is None else Fraction(eps)
        if not 0 < eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if max_len is not None:
            if max_len < 4:
                raise ValueError("practical path length cap must be at least 4")
            reach = max_len // 4
        else:
            paper_ell = _core(self.ln_n, self.t, eps)[1]
            reach = max(1, min(paper_ell + 1, (self.n or 2) - 1))
        lam, ell, L, K, M = _core(self.ln_n, self.t, eps, ell=reach - 1)
        return replace(self, eps=eps, lam=lam, ell=ell, L=L, K=K, M=M, mode="practical",
                       reach_len=reach, path_len=4 * reach)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode, "n": self.n, "ln_n": float(self.ln_n), "t": self.t,
            "eps": str(self.eps), "lambda": str(self.lam), "ell": self.ell, "L": self.L,
            "K": self.K, "M": str(self.M), "c": self.c, "ln_d_threshold": self.ln_d_threshold,
            "ln_n0": self.ln_n0, "reach_len": self.reach_len, "path_len": self.path_len,
        }


def compute_ladder(n: int | None = None, t: int = 2, eps=PAPER_EPS, c=None, ln_n=None,
                   check_eps: bool = True) -> ParamLadder:
    """Paper-mode ladder at ``n`` (or at ``ln n``)."""
    eps = Fraction(eps)
    if t < 2:
        raise ValueError("t must be at least 2")
    if check_eps and not 0 < eps <= PAPER_EPS:
        raise ValueError("eps must lie in (0, 1/40]")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if ln_n is None:
        if n is None or n < t:
            raise ValueError("need n >= t")
        with mpmath.workdps(_DPS):
            ln_n = mpmath.log(n)
    elif isinstance(ln_n, float):
        ln_n = mpmath.mpf(ln_n)
    if _mp(ln_n) <= 0:
        raise ValueError("ln n must be positive")
    lam, ell, L, K, M = _core(ln_n, t, eps)
    ln_n0 = explicit_ln_n0(t, eps) if eps <= PAPER_EPS else 1
    if c is None:
        c = c_for(ln_n0, eps)
    with mpmath.workdps(_DPS):
        ln_d = float(_mp(c) * mpmath.sqrt(_mp(ln_n)))
    return ParamLadder(n, ln_n, t, eps, lam, ell, L, K, M, float(c), ln_d, ln_n0,
                       "paper", ell + 1, 4 * ell + 4)


def practical_ladder(n: int, t: int, eps=Fraction(1, 4), max_len: int | None = None) -> ParamLadder:
    base = compute_ladder(n, t, eps=PAPER_EPS)
    return base.practical(max_len=max_len, eps=eps)
