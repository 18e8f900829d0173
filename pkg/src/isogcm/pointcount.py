"""Point counting over F_q: exhaustive counts, baby-step giant-step with
Mestre twist resolution, Frobenius data, and the persistent trace cache.

Counting is deterministic: the point sampler is seeded from (q, curve)."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from math import gcd, isqrt, lcm

from .arith import factorize, fundamental_discriminant
from .curves import WeierstrassCurve, add, negate, scalar_mul
from .finitefield import GaloisField, gf_sqrt

NAIVE_THRESHOLD = 5000
_NAIVE_FALLBACK_LIMIT = 10 ** 7


class CacheCorruption(RuntimeError):
    pass


@dataclass(frozen=True)
class LocalData:
    q: int
    p: int
    f: int
    count: int

    @property
    def trace(self) -> int:
        return self.q + 1 - self.count

    @property
    def supersingular(self) -> bool:
        return self.trace % self.p == 0

    @property
    def frobenius_disc(self) -> int | None:
        if self.supersingular:
            return None
        return fundamental_discriminant(self.trace ** 2 - 4 * self.q)


def frobenius_cm_field(ld: LocalData) -> int:
    """Fundamental discriminant of Q(Frobenius) for an ordinary reduction."""
    if ld.supersingular:
        raise ValueError(
            "supersingular: Frobenius field is not quadratic imaginary over the prime field")
    return ld.frobenius_disc


class _DetRng:
    """xorshift64* seeded from a hash; reproducible across runs and platforms."""

    def __init__(self, seed_bytes: bytes):
        s = int.from_bytes(hashlib.sha256(seed_bytes).digest()[:8], "big")
        self.state = s or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= (x >> 12) & 0xFFFFFFFFFFFFFFFF
        x = (x ^ (x << 25)) & 0xFFFFFFFFFFFFFFFF
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & 0xFFFFFFFFFFFFFFFF

    def below(self, n: int) -> int:
        return self.next_u64() % n


def _curve_seed(E: WeierstrassCurve) -> bytes:
    gf: GaloisField = E.field
    coords = [list(a.coords) for a in E.ainvs()]
    return json.dumps([gf.p, gf.f, coords], separators=(",", ":")).encode()


# -- exhaustive counting -------------------------------------------------------


def count_naive(E: WeierstrassCurve) -> int:
    """|E(F_q)| by enumeration; intended for q up to ~10^6."""
    gf: GaloisField = E.field
    p, q = gf.p, gf.order
    a1, a2, a3, a4, a6 = E.ainvs()
    if gf.f == 1 and p > 2:
        return _count_naive_prime(E)
    if p == 2:
        total = 1
        for x in gf.elements():
            b = a1 * x + a3
            c = ((x + a2) * x + a4) * x + a6
            if b.is_zero():
                total += 1  # squaring is bijective
            else:
                z = c / (b * b)
                tr = z
                cur = z
                for _ in range(gf.f - 1):
                    cur = cur * cur
                    tr = tr + cur
                if tr.is_zero():
                    total += 2
        return total
    # odd characteristic, f = 2: character sum with a table of squares
    squares: dict[tuple, int] = {}
    for t in gf.elements():
        key = (t * t).coords
        squares[key] = squares.get(key, 0) + 1
    total = 1
    for x in gf.elements():
        b = a1 * x + a3
        c = ((x + a2) * x + a4) * x + a6
        d = b * b + 4 * c
        total += squares.get(d.coords, 0)  # 1 for d = 0, 2 for nonzero squares
    return total


def _count_naive_prime(E: WeierstrassCurve) -> int:
    p = E.field.p
    a1, a2, a3, a4, a6 = (a.coords[0] for a in E.ainvs())
    sq = bytearray(p)
    for t in range((p + 1) // 2):
        sq[t * t % p] = 1
    total = 1
    for x in range(p):
        b = (a1 * x + a3) % p
        c = (((x + a2) * x + a4) * x + a6) % p
        d = (b * b + 4 * c) % p
        if d == 0:
            total += 1
        elif sq[d]:
            total += 2
    return total


# -- BSGS counting -------------------------------------------------------------


def _short_model(E: WeierstrassCurve):
    """(A, B) with E isomorphic to y^2 = x^3 + Ax + B; requires p > 3."""
    gf: GaloisField = E.field
    p = gf.p
    assert gf.f == 1 and p > 3
    c4 = E.c4.coords[0]
    c6 = E.c6.coords[0]
    return (-27 * c4) % p, (-54 * c6) % p


def _sw_add(P, Q, A, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _sw_mul(n, P, A, p):
    if n < 0:
        n, P = -n, (P[0], (-P[1]) % p)
    R = None
    while n:
        if n & 1:
            R = _sw_add(R, P, A, p)
        P = _sw_add(P, P, A, p)
        n >>= 1
    return R


def _sw_random_point(A, B, p, rng: _DetRng):
    from .finitefield import _tonelli_prime

    while True:
        x = rng.below(p)
        rhs = (x * x * x + A * x + B) % p
        y = _tonelli_prime(rhs, p)
        if y is not None:
            return x, y


def _order_from_annihilator(P, n, addf, mulf):
    """Exact order of P from a multiple n with nP = O."""
    assert n > 0
    for ell in factorize(n):
        while n % ell == 0 and mulf(n // ell, P) is None:
            n //= ell
    return n


def _annihilators_in_range(P, lo, hi, addf, mulf, negf, keyf):
    """All n in [lo, hi] with nP = O (baby-step giant-step on x-coordinates)."""
    L = hi - lo + 1
    m = isqrt(L) + 1
    baby = {}
    R = None
    pts = []
    for j in range(m):
        pts.append(R)
        if R is not None:
            baby.setdefault(keyf(R), []).append(j)
        R = addf(R, P)
    mP = R  # the loop leaves R = mP
    G = mulf(lo, P)
    out = []
    for i in range(m + 1):
        if G is None:
            n = lo + i * m
            if lo <= n <= hi:
                out.append(n)
        else:
            for j in baby.get(keyf(G), []):
                Pj = pts[j]
                # G == -Pj gives (lo + i*m + j) P = O; G == Pj gives (lo + i*m - j) P = O
                if G == negf(Pj):
                    n = lo + i * m + j
                    if lo <= n <= hi:
                        out.append(n)
                if G == Pj:
                    n = lo + i * m - j
                    if lo <= n <= hi:
                        out.append(n)
        G = addf(G, mP)
    return sorted(set(out))


def _bsgs_group_order(q, sample_point, addf, mulf, negf, keyf, twist_orders):
    """Unique N in the Hasse window with NP = O for every sampled P.

    twist_orders: same-shaped callable for the quadratic twist, used when the
    lcm of point orders leaves several candidates (Mestre's device)."""
    w = isqrt(4 * q)
    lo, hi = q + 1 - w, q + 1 + w
    M = 1
    for rounds in range(40):
        P = sample_point()
        anns = _annihilators_in_range(P, lo, hi, addf, mulf, negf, keyf)
        if not anns:
            continue
        d = 0
        for a in anns:
            d = gcd(d, a)
        # ord(P) divides every annihilator, hence their gcd
        order = _order_from_annihilator(P, d, addf, mulf)
        M = lcm(M, order)
        cands = [n for n in range(lo + (-lo) % M, hi + 1, M)]
        if len(cands) == 1:
            return cands[0]
        if twist_orders is not None and rounds >= 1:
            tw_cands = twist_orders()
            joint = [n for n in cands if 2 * q + 2 - n in tw_cands]
            if len(joint) == 1:
                return joint[0]
    raise ArithmeticError("group order ambiguous after many rounds")


def _bsgs_count_prime(E: WeierstrassCurve) -> int:
    p = E.field.p
    A, B = _short_model(E)
    rng = _DetRng(_curve_seed(E) + b"|bsgs")

    def addf(P, Q):
        return _sw_add(P, Q, A, p)

    def mulf(n, P):
        return _sw_mul(n, P, A, p)

    def negf(P):
        return (P[0], (-P[1]) % p)

    def keyf(P):
        return P[0]

    def sample():
        return _sw_random_point(A, B, p, rng)

    # candidate orders of the quadratic twist, via its own sampled points
    from .finitefield import smallest_nonresidue

    c = smallest_nonresidue(p)
    At, Bt = A * c * c % p, B * c * c * c % p
    rngt = _DetRng(_curve_seed(E) + b"|twist")
    tw_state = {"M": 1}

    def twist_orders():
        P = _sw_random_point(At, Bt, p, rngt)
        w = isqrt(4 * p)
        lo, hi = p + 1 - w, p + 1 + w
        anns = _annihilators_in_range(
            P, lo, hi, lambda X, Y: _sw_add(X, Y, At, p),
            lambda n, X: _sw_mul(n, X, At, p),
            lambda X: (X[0], (-X[1]) % p), lambda X: X[0])
        if anns:
            d = 0
            for a in anns:
                d = gcd(d, a)
            order = _order_from_annihilator(
                P, d if _sw_mul(d, P, At, p) is None else anns[0],
                lambda X, Y: _sw_add(X, Y, At, p),
                lambda n, X: _sw_mul(n, X, At, p))
            tw_state["M"] = lcm(tw_state["M"], order)
        M = tw_state["M"]
        return set(range(lo + (-lo) % M, hi + 1, M))

    try:
        return _bsgs_group_order(p, sample, addf, mulf, negf, keyf, twist_orders)
    except ArithmeticError:
        if p <= _NAIVE_FALLBACK_LIMIT:
            return count_naive(E)
        raise


def _bsgs_count_generic(E: WeierstrassCurve) -> int:
    """BSGS over any F_q via the generic group law (used for q = p^2, tests)."""
    from .curves import _quadratic_roots

    gf: GaloisField = E.field
    q = gf.order
    rng = _DetRng(_curve_seed(E) + b"|bsgs")
    a1, a2, a3, a4, a6 = E.ainvs()

    def point_at(x):
        b = a1 * x + a3
        c = ((x + a2) * x + a4) * x + a6
        if gf.p == 2:
            roots = list(_quadratic_roots(gf, b, c))
            return (x, roots[0]) if roots else None
        d = b * b + 4 * c
        r = gf_sqrt(d)
        if r is None:
            return None
        half = gf.element(pow(2, -1, gf.p))
        return (x, (r - b) * half)

    if q <= 64:  # tiny fields: the curve may have no affine point at all
        pts = [P for x in gf.elements() if (P := point_at(x)) is not None]
        if not pts:
            return 1
        it = {"i": 0}

        def sample():
            P = pts[it["i"] % len(pts)]
            it["i"] += 1
            return P
    else:
        def sample():
            while True:
                if gf.f == 1:
                    x = gf.element(rng.below(gf.p))
                else:
                    x = gf.element(rng.below(gf.p), rng.below(gf.p))
                P = point_at(x)
                if P is not None:
                    return P

    def addf(P, Q):
        return add(P, Q, E)

    def mulf(n, P):
        return scalar_mul(n, P, E)

    def negf(P):
        return negate(P, E)

    def keyf(P):
        return P[0].coords

    try:
        return _bsgs_group_order(q, sample, addf, mulf, negf, keyf, None)
    except ArithmeticError:
        if q <= _NAIVE_FALLBACK_LIMIT:
            return count_naive(E)
        raise


def count_points(E: WeierstrassCurve, naive_threshold: int = NAIVE_THRESHOLD,
                 force_bsgs: bool = False) -> LocalData:
    """Exact |E(F_q)| with derived Frobenius data (Hasse bound hard-asserted)."""
    gf: GaloisField = E.field
    if E.is_singular():
        raise ValueError("singular curve")
    q = gf.order
    if q <= naive_threshold and not force_bsgs:
        count = count_naive(E)
    elif gf.f == 1 and gf.p > 3:
        count = _bsgs_count_prime(E)
    else:
        count = _bsgs_count_generic(E)
    trace = q + 1 - count
    assert trace * trace <= 4 * q, "Hasse bound violated: counting bug"
    return LocalData(q=q, p=gf.p, f=gf.f, count=count)


# -- persistent trace cache ----------------------------------------------------


class TraceCache:
    """Append-only key<TAB>trace file; corrupt lines abort, conflicts abort."""

    def __init__(self, path: str | None):
        self.path = path
        self.data: dict[str, int] = {}
        self._fh = None
        if path and os.path.exists(path):
            with open(path, "r", encoding="ascii") as fh:
                for lineno, line in enumerate(fh, 1):
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    parts = line.split("\t")
                    if len(parts) != 2 or not _is_hex(parts[0]):
                        raise CacheCorruption(f"{path}:{lineno}: malformed cache line")
                    try:
                        val = int(parts[1])
                    except ValueError:
                        raise CacheCorruption(f"{path}:{lineno}: malformed trace") from None
                    if parts[0] in self.data and self.data[parts[0]] != val:
                        raise CacheCorruption(
                            f"{path}:{lineno}: conflicting values for one key")
                    self.data[parts[0]] = val

    def get(self, key: str) -> int | None:
        return self.data.get(key)

    def put(self, key: str, value: int):
        old = self.data.get(key)
        if old is not None:
            if old != value:
                raise CacheCorruption(f"conflicting trace for {key}")
            return
        self.data[key] = value
        if self.path:
            if self._fh is None:
                self._fh = open(self.path, "a", encoding="ascii")
            self._fh.write(f"{key}\t{value}\n")
            self._fh.flush()

    def merge(self, items):
        for k, v in items:
            self.put(k, v)

    def close(self):
        if self._fh:
            self._fh.close()
            self._fh = None


def _is_hex(s: str) -> bool:
    return bool(s) and all(c in "0123456789abcdef" for c in s)
