"""Arithmetic in F_p and F_{p^2} for curve reductions and point counting.

Elements are coordinate vectors over F_p.  For f = 2 and odd p the modulus is
x^2 - c with c the smallest positive quadratic nonresidue mod p; for p = 2 it
is x^2 + x + 1.  The choice is deterministic so certificates reproduce.
"""

from __future__ import annotations

from .arith import is_prime


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic nonresidue mod an odd prime."""
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return c
    raise ValueError(f"no nonresidue mod {p}")


class GaloisField:
    __slots__ = ("p", "f", "order", "c")

    def __init__(self, p: int, f: int, c: int | None):
        self.p = p
        self.f = f
        self.order = p ** f
        self.c = c  # modulus x^2 - c for odd p; None marks x^2 + x + 1 at p = 2

    def __repr__(self):
        return f"GF({self.p}^{self.f})" if self.f > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.f, self.c) == (other.p, other.f, other.c)
        )

    def __hash__(self):
        return hash(("GF", self.p, self.f, self.c))

    def element(self, *coords) -> "GFElement":
        if len(coords) == 1 and self.f == 2:
            coords = (coords[0], 0)
        return GFElement(self, tuple(c % self.p for c in coords))

    def zero(self):
        return self.element(*([0] * self.f))

    def one(self):
        return self.element(*([1] + [0] * (self.f - 1)))

    def elements(self):
        p = self.p
        if self.f == 1:
            for a in range(p):
                yield self.element(a)
        else:
            for a in range(p):
                for b in range(p):
                    yield self.element(a, b)

    def _mul_coords(self, x, y):
        p = self.p
        if self.f == 1:
            return ((x[0] * y[0]) % p,)
        a0, a1 = x
        b0, b1 = y
        if self.c is None:  # x^2 = -x - 1 = x + 1 over F_2
            hi = a1 * b1
            return ((a0 * b0 + hi) % 2, (a0 * b1 + a1 * b0 + hi) % 2)
        return ((a0 * b0 + a1 * b1 * self.c) % p, (a0 * b1 + a1 * b0) % p)


def gf_make(p: int, f: int) -> GaloisField:
    """The field F_{p^f} with the canonical modulus, f in {1, 2}."""
    if f not in (1, 2):
        raise ValueError("residue degree must be 1 or 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f == 1:
        return GaloisField(p, 1, None)
    if p == 2:
        return GaloisField(2, 2, None)
    return GaloisField(p, 2, smallest_nonresidue(p))


class GFElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: GaloisField, coords: tuple):
        self.field = field
        self.coords = coords

    def __repr__(self):
        if self.field.f == 1:
            return f"{self.coords[0]}"
        return f"({self.coords[0]}+{self.coords[1]}w)"

    def __eq__(self, other):
        return (
            isinstance(other, GFElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return GFElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return GFElement(self.field, tuple((a - b) % p for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        p = self.field.p
        return GFElement(self.field, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        return GFElement(self.field, self.field._mul_coords(self.coords, other.coords))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, int):
            return self.field.element(other, *([0] * (self.field.f - 1)))
        return NotImplemented

    def inverse(self) -> "GFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        # Lagrange: x^(q-2)
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "GFElement":
        return self ** self.field.p


def _tonelli_prime(a: int, p: int) -> int | None:
    """A square root of a mod odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def gf_sqrt(x: GFElement) -> GFElement | None:
    """Canonical square root (lexicographically least coords) or None."""
    field = x.field
    p, q = field.p, field.order
    if x.is_zero():
        return field.zero()
    if p == 2:
        # Frobenius is bijective: sqrt(x) = x^(q/2)
        return x ** (q // 2)
    if field.f == 1:
        r = _tonelli_prime(x.coords[0], p)
        if r is None:
            return None
        return field.element(min(r, p - r))
    # F_{p^2}, p odd: generic Tonelli-Shanks with a deterministic nonresidue.
    if (x ** ((q - 1) // 2)) != field.one():
        return None
    z = None
    for cand in field.elements():
        if cand.is_zero():
            continue
        if (cand ** ((q - 1) // 2)) != field.one():
            z = cand
            break
    assert z is not None
    qq, s = q - 1, 0
    while qq % 2 == 0:
        qq //= 2
        s += 1
    m, c, t, r = s, z ** qq, x ** qq, x ** ((qq + 1) // 2)
    one = field.one()
    while t != one:
        t2, i = t, 0
        while t2 != one:
            t2 = t2 * t2
            i += 1
        b = c ** (1 << (m - i - 1))
        m, c = i, b * b
        t = t * c
        r = r * b
    alt = -r
    return r if r.coords <= alt.coords else alt
