"""Effective Chebotarev bounds and the test-prime streams.

All bound arithmetic is upper-rounded (UpperReal), so the enumerated prime set
can only be larger than strictly necessary.  B_LO and B_BS assume GRH; the
unconditional bound B_U depends on a configured exponent c_u with no certified
numeric value, and is kept in log scale because it is astronomically large.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .arith import primes_stream
from .numberfield import NumberField
from .plocal import PrimeIdeal, decompose_prime
from .upperreal import UpperReal, exp_ceil, log_upper, upper_min

DEFAULT_CEILING = 1 << 40
DEFAULT_C_U = Fraction(40)


class BoundInfeasibleError(RuntimeError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


def gl_order(g: int, ell: int) -> int:
    """Order of GL_{2g} over Z/ell: prod_{i<2g} (ell^{2g} - ell^i)."""
    n = 2 * g
    q = ell ** n
    out = 1
    for i in range(n):
        out *= q - ell ** i
    return out


nu = gl_order  # traditional name for the torsion-field degree bound


def log_delta_star(K: NumberField, S, N: int) -> UpperReal:
    """log of the discriminant bound for degree-N extensions unramified outside S.

    Equals N*log|disc K| + N*[K:Q]*(log N + sum_{p in S} (1 - 1/N) log p_p),
    one summand per prime ideal in S, everything rounded up.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    total = log_upper(abs(K.disc)).scale(N)
    inner = log_upper(N) if N > 1 else UpperReal(0)
    for prime in S:
        inner = inner + log_upper(prime.p).scale(Fraction(N - 1, N))
    return total + inner.scale(N * K.degree)


def log_delta_star_lifted(K: NumberField, S, h: int, N: int) -> UpperReal:
    """Discriminant bound allowing an unramified extension of degree <= h on top.

    h*N*log|disc K| + N*h*[K:Q]*(log N + h*sum (1-1/N) log p); exact equality
    with log_delta_star at h = 1 (same rounding path).
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    total = log_upper(abs(K.disc)).scale(h * N)
    inner = log_upper(N) if N > 1 else UpperReal(0)
    s_term = UpperReal(0)
    for prime in S:
        s_term = s_term + log_upper(prime.p).scale(Fraction(N - 1, N))
    inner = inner + s_term.scale(h)
    return total + inner.scale(N * h * K.degree)


@dataclass
class BoundParams:
    field: NumberField
    S: tuple = ()
    n_value: int = 36
    grh: bool = True
    c_u: Fraction = DEFAULT_C_U
    ceiling: int = DEFAULT_CEILING
    lift_h: int = 1


@dataclass
class BoundReport:
    log_delta_star: UpperReal
    b_lo: UpperReal
    b_bs: UpperReal
    b_grh: UpperReal
    b_u_log: UpperReal
    winner: str                 # "LO", "BS", or "U"
    effective_B: int
    degree_one_allowed: bool
    n_value: int
    lift_h: int

    def to_json_dict(self) -> dict:
        return {
            "log_delta_star": float(self.log_delta_star.sup),
            "b_lo": float(self.b_lo.sup),
            "b_bs": float(self.b_bs.sup),
            "b_grh": float(self.b_grh.sup),
            "b_u_log": float(self.b_u_log.sup),
            "winner": self.winner,
            "effective_B": self.effective_B,
            "degree_one_allowed": self.degree_one_allowed,
            "n_value": self.n_value,
            "lift_h": self.lift_h,
        }


def bounds(params: BoundParams, log_ds: UpperReal, n_times_deg: int,
           enforce_ceiling: bool = False) -> BoundReport:
    """All four effective bounds from a precomputed log Delta*.

    n_times_deg must be N*[K':Q] for the relevant (possibly lifted) extension.
    Under GRH the winner is min(B_LO, B_BS); otherwise B_U.  Degree-one
    restriction of the prime stream is valid when the winner is BS or U.
    """
    b_lo = log_ds.square().scale(70)
    b_bs = (log_ds.scale(4) + Fraction(5, 2) * n_times_deg + 5).square()
    b_grh = upper_min(b_lo, b_bs)
    b_u_log = log_ds.scale(params.c_u)
    if params.field.degree == 1:
        b_u_log = b_u_log + log_upper(2)
    if params.grh:
        winner = "BS" if b_bs.sup <= b_lo.sup else "LO"
        effective = b_grh.ceil()
    else:
        winner = "U"
        effective = exp_ceil(b_u_log)
    report = BoundReport(
        log_delta_star=log_ds, b_lo=b_lo, b_bs=b_bs, b_grh=b_grh,
        b_u_log=b_u_log, winner=winner, effective_B=max(effective, 0),
        degree_one_allowed=winner in ("BS", "U"),
        n_value=params.n_value, lift_h=params.lift_h)
    if enforce_ceiling and report.effective_B > params.ceiling:
        raise BoundInfeasibleError(
            f"bound infeasible: {report.effective_B} exceeds ceiling {params.ceiling}",
            report)
    return report


def compute_bounds(K: NumberField, S, N: int, *, grh: bool = True,
                   c_u: Fraction = DEFAULT_C_U, ceiling: int = DEFAULT_CEILING,
                   lift_h: int = 1, enforce_ceiling: bool = False) -> BoundReport:
    params = BoundParams(field=K, S=tuple(S), n_value=N, grh=grh,
                         c_u=Fraction(c_u), ceiling=ceiling, lift_h=lift_h)
    log_ds = log_delta_star_lifted(K, params.S, lift_h, N)
    return bounds(params, log_ds, N * lift_h * K.degree, enforce_ceiling)


def test_primes(K: NumberField, S, B: int, degree_one_only: bool = False):
    """Prime ideals of K with norm <= B, excluding S, in nondecreasing norm order.

    Ties within one rational prime are broken by the canonical embedding-choice
    index, so the stream is byte-reproducible.
    """
    skip = set(S)
    heap: list = []
    for p in primes_stream(B):
        while heap and heap[0][0] < p:
            yield heapq.heappop(heap)[3]
        for prime in decompose_prime(K, p):
            if prime.norm > B or prime in skip:
                continue
            if degree_one_only and prime.f != 1:
                continue
            heapq.heappush(heap, (prime.norm, p, prime.index, prime))
    while heap:
        yield heapq.heappop(heap)[3]
