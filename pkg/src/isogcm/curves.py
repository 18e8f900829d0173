"""Weierstrass models over number fields and finite fields.

One generic coefficient implementation serves both: NFElement and GFElement
support the same ring operators.  The group law is the full chord-tangent law
with a1..a6, valid in every characteristic.
"""

from __future__ import annotations

from fractions import Fraction

from .finitefield import GaloisField, GFElement, gf_sqrt
from .numberfield import NFElement, NumberField


class SingularModelError(ValueError):
    pass


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a common coefficient ring."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "field", "_inv")

    def __init__(self, ainvs, field=None):
        a = list(ainvs)
        if len(a) != 5:
            raise ValueError("need [a1, a2, a3, a4, a6]")
        if field is None:
            field = a[0].field
        if isinstance(field, NumberField):
            a = [field.from_rational(x) if isinstance(x, (int, Fraction)) else x
                 for x in a]
        elif isinstance(field, GaloisField):
            a = [field.element(x) if isinstance(x, int) else x for x in a]
        self.a1, self.a2, self.a3, self.a4, self.a6 = a
        self.field = field
        self._inv = None

    def __repr__(self):
        return f"WeierstrassCurve({self.ainvs()!r} over {self.field!r})"

    def ainvs(self):
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassCurve)
            and self.field == other.field
            and self.ainvs() == other.ainvs()
        )

    def __hash__(self):
        return hash((self.field, tuple(
            e.coords if hasattr(e, "coords") else e for e in self.ainvs())))

    # -- invariants --

    def _invariants(self):
        if self._inv is None:
            a1, a2, a3, a4, a6 = self.ainvs()
            b2 = a1 * a1 + 4 * a2
            b4 = 2 * a4 + a1 * a3
            b6 = a3 * a3 + 4 * a6
            b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4
                  + a2 * a3 * a3 - a4 * a4)
            c4 = b2 * b2 - 24 * b4
            c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
            delta = (-(b2 * b2) * b8 - 8 * (b4 * b4 * b4) - 27 * (b6 * b6)
                     + 9 * b2 * b4 * b6)
            self._inv = (b2, b4, b6, b8, c4, c6, delta)
        return self._inv

    @property
    def b2(self):
        return self._invariants()[0]

    @property
    def b4(self):
        return self._invariants()[1]

    @property
    def b6(self):
        return self._invariants()[2]

    @property
    def b8(self):
        return self._invariants()[3]

    @property
    def c4(self):
        return self._invariants()[4]

    @property
    def c6(self):
        return self._invariants()[5]

    @property
    def delta(self):
        return self._invariants()[6]

    def is_singular(self) -> bool:
        return self.delta.is_zero()

    @property
    def j(self):
        if self.is_singular():
            raise SingularModelError("singular model")
        c4 = self.c4
        return c4 * c4 * c4 / self.delta


def invariants(E: WeierstrassCurve):
    """(b2, b4, b6, b8, c4, c6, delta, j); error on a singular model."""
    if E.is_singular():
        raise SingularModelError("singular model")
    b2, b4, b6, b8, c4, c6, delta = E._invariants()
    return b2, b4, b6, b8, c4, c6, delta, E.j


def curve_over_q(ainvs) -> WeierstrassCurve:
    Q = NumberField(())
    return WeierstrassCurve([Q.from_rational(Fraction(a)) for a in ainvs], Q)


def base_change(E: WeierstrassCurve, K: NumberField) -> WeierstrassCurve:
    return WeierstrassCurve([K.embed(a) for a in E.ainvs()], K)


def transform_model(E: WeierstrassCurve, u, r, s, t) -> WeierstrassCurve:
    """Standard substitution x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
    a1, a2, a3, a4, a6 = E.ainvs()
    uinv = u.inverse()
    u2 = uinv * uinv
    u3 = u2 * uinv
    u4 = u2 * u2
    u6 = u4 * u2
    na1 = (a1 + 2 * s) * uinv
    na2 = (a2 - s * a1 + 3 * r - s * s) * u2
    na3 = (a3 + r * a1 + 2 * t) * u3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * u4
    na6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * u6
    return WeierstrassCurve([na1, na2, na3, na4, na6], E.field)


def quadratic_twist(E: WeierstrassCurve, d: NFElement) -> WeierstrassCurve:
    """Twist with c4' = c4 d^2, c6' = c6 d^3 (characteristic-zero coefficients)."""
    if d.is_zero():
        raise ValueError("twist by zero")
    K = E.field
    c4, c6 = E.c4, E.c6
    d2 = d * d
    a4 = (c4 * d2).scale(Fraction(-1, 48))
    a6 = (c6 * d2 * d).scale(Fraction(-1, 864))
    zero = K.zero()
    return WeierstrassCurve([zero, zero, zero, a4, a6], K)


# -- the group law over a finite field ----------------------------------------

# points are (x, y) pairs of GFElements; None is the point at infinity


def on_curve(E: WeierstrassCurve, P) -> bool:
    if P is None:
        return True
    x, y = P
    a1, a2, a3, a4, a6 = E.ainvs()
    lhs = y * y + a1 * x * y + a3 * y
    rhs = ((x + a2) * x + a4) * x + a6
    return lhs == rhs


def negate(P, E: WeierstrassCurve):
    if P is None:
        return None
    x, y = P
    return (x, -y - E.a1 * x - E.a3)


def add(P, Q, E: WeierstrassCurve):
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = E.ainvs()
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3).is_zero():
            return None
        denom = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom
        nu = (-(x1 * x1 * x1) + a4 * x1 + 2 * a6 - a3 * y1) / denom
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def scalar_mul(n: int, P, E: WeierstrassCurve):
    if n < 0:
        return scalar_mul(-n, negate(P, E), E)
    R = None
    Q = P
    while n:
        if n & 1:
            R = add(R, Q, E)
        Q = add(Q, Q, E)
        n >>= 1
    return R


def points(E: WeierstrassCurve):
    """All points, including infinity (exhaustive; small fields only)."""
    yield None
    gf: GaloisField = E.field
    a1, a2, a3, a4, a6 = E.ainvs()
    for x in gf.elements():
        b = a1 * x + a3
        c = ((x + a2) * x + a4) * x + a6
        for y in _quadratic_roots(gf, b, c):
            yield (x, y)


def _quadratic_roots(gf: GaloisField, b: GFElement, c: GFElement):
    """Solutions of y^2 + b y = c."""
    if gf.p == 2:
        if b.is_zero():
            yield gf_sqrt(c)
            return
        # y = b z reduces to z^2 + z = c / b^2, solvable iff the absolute trace is 0
        rhs = c / (b * b)
        tr = rhs
        cur = rhs
        for _ in range(gf.f - 1):
            cur = cur * cur
            tr = tr + cur
        if not tr.is_zero():
            return
        for z in gf.elements():
            if z * z + z == rhs:
                yield b * z
                yield b * z + b
                return
        return
    # odd characteristic: complete the square
    half = gf.element(pow(2, -1, gf.p))
    disc = b * b + 4 * c
    r = gf_sqrt(disc)
    if r is None:
        return
    y1 = (r - b) * half
    yield y1
    y2 = (-r - b) * half
    if y2 != y1:
        yield y2
