"""Multiquadratic number fields Q(sqrt(d1)[, sqrt(d2)]) of degree <= 4.

Fields are described by at most two fundamental discriminants; elements carry
exact rational coordinates over the basis {1, sqrt(m1), sqrt(m2), sqrt(m1)*sqrt(m2)}
where m_i are the squarefree kernels of the generators.  Everything here is
immutable and safe for concurrent use.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm

from .arith import (
    factorize,
    fundamental_discriminant,
    is_square,
    squarefree_kernel,
)
from .upperreal import PI_LOWER, UpperReal, sqrt_upper


class FieldTowerError(ValueError):
    pass


def _kernel_of_disc(d: int) -> int:
    # fundamental discriminant -> squarefree radicand of the same field
    return d if d % 4 == 1 else d // 4


class NumberField:
    """Q, a quadratic field, or a biquadratic field, by fundamental discriminants."""

    __slots__ = ("generators", "kernels", "degree", "disc",
                 "quadratic_subfield_discs", "_basis_names")

    def __init__(self, generators: tuple[int, ...]):
        self.generators = generators
        self.kernels = tuple(_kernel_of_disc(d) for d in generators)
        k = len(generators)
        self.degree = 1 << k
        if k == 0:
            self.quadratic_subfield_discs = []
            self.disc = 1
        elif k == 1:
            self.quadratic_subfield_discs = [generators[0]]
            self.disc = generators[0]
        else:
            d3 = fundamental_discriminant(self.kernels[0] * self.kernels[1])
            self.quadratic_subfield_discs = [generators[0], generators[1], d3]
            prod = 1
            for d in self.quadratic_subfield_discs:
                prod *= abs(d)
            self.disc = prod

    def __repr__(self):
        if self.degree == 1:
            return "Q"
        inner = ",".join(f"sqrt({m})" for m in self.kernels)
        return f"Q({inner})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.generators == other.generators

    def __hash__(self):
        return hash(("NF", self.generators))

    # -- element constructors -------------------------------------------------

    def element(self, coords) -> "NFElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"need {self.degree} coordinates")
        return NFElement(self, coords)

    def from_rational(self, c) -> "NFElement":
        return self.element([Fraction(c)] + [0] * (self.degree - 1))

    def zero(self) -> "NFElement":
        return self.from_rational(0)

    def one(self) -> "NFElement":
        return self.from_rational(1)

    def sqrt_gen(self, i: int) -> "NFElement":
        """The basis element sqrt(m_i) for generator index i."""
        coords = [Fraction(0)] * self.degree
        coords[i + 1] = Fraction(1)
        return NFElement(self, tuple(coords))

    def sqrt_of_subfield_disc(self, d: int) -> "NFElement":
        """sqrt(kernel(d)) as an element, for d among the quadratic subfield discs."""
        if d not in self.quadratic_subfield_discs:
            raise ValueError(f"{d} is not a quadratic subfield discriminant of {self}")
        idx = self.quadratic_subfield_discs.index(d)
        if idx < len(self.generators):
            return self.sqrt_gen(idx)
        # product direction: sqrt(m1)*sqrt(m2) = g*sqrt(m3) with g = isqrt(m1*m2/m3)
        m3 = _kernel_of_disc(d)
        g = isqrt(self.kernels[0] * self.kernels[1] // m3)
        coords = [Fraction(0)] * 4
        coords[3] = Fraction(1, g)
        return NFElement(self, tuple(coords))

    def embed(self, x: "NFElement") -> "NFElement":
        """Embed an element of a subfield (Q or one of the quadratic subfields)."""
        sub = x.field
        if sub == self:
            return x
        if sub.degree == 1:
            return self.from_rational(x.coords[0])
        if sub.degree == 2 and self.degree >= 2:
            d = sub.generators[0]
            root = self.sqrt_of_subfield_disc(d)
            return self.from_rational(x.coords[0]) + root.scale(x.coords[1])
        raise ValueError(f"cannot embed {sub} into {self}")


def make_field(discs) -> NumberField:
    """Build Q(sqrt(d1)[, sqrt(d2)]) from integer radicands or discriminants."""
    gens: list[int] = []
    kernels: list[int] = []
    for d in discs:
        if d == 0 or is_square(d):
            raise ValueError(f"{d} defines no quadratic extension")
        fd = fundamental_discriminant(d)
        m = _kernel_of_disc(fd)
        if any(is_square_free_ratio(m, k) for k in kernels):
            raise FieldTowerError("generators are multiplicatively dependent")
        gens.append(fd)
        kernels.append(m)
    if len(gens) > 2:
        raise FieldTowerError("field tower too large")
    return NumberField(tuple(gens))


def is_square_free_ratio(a: int, b: int) -> bool:
    # True when a*b is a perfect square, i.e. sqrt(a), sqrt(b) generate the same field
    return is_square(a * b)


class NFElement:
    """Exact element of a NumberField; coordinates over {1, s1, s2, s1*s2}."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def __repr__(self):
        return f"NF{tuple(str(c) for c in self.coords)}"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (
            isinstance(other, NFElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def _coerce(self, other) -> "NFElement":
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def scale(self, c) -> "NFElement":
        c = Fraction(c)
        return NFElement(self.field, tuple(a * c for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.field
        a, b = self.coords, other.coords
        if f.degree == 1:
            return NFElement(f, (a[0] * b[0],))
        if f.degree == 2:
            m = f.kernels[0]
            return NFElement(f, (a[0] * b[0] + m * a[1] * b[1],
                                 a[0] * b[1] + a[1] * b[0]))
        m1, m2 = f.kernels
        c0 = a[0] * b[0] + m1 * a[1] * b[1] + m2 * a[2] * b[2] + m1 * m2 * a[3] * b[3]
        c1 = a[0] * b[1] + a[1] * b[0] + m2 * (a[2] * b[3] + a[3] * b[2])
        c2 = a[0] * b[2] + a[2] * b[0] + m1 * (a[1] * b[3] + a[3] * b[1])
        c3 = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1]
        return NFElement(f, (c0, c1, c2, c3))

    __rmul__ = __mul__

    def conjugate(self, s1: int, s2: int = 1) -> "NFElement":
        """Galois conjugate flipping sqrt(m1) by s1 and sqrt(m2) by s2 (each +-1)."""
        f = self.field
        if f.degree == 1:
            return self
        if f.degree == 2:
            a, b = self.coords
            return NFElement(f, (a, s1 * b))
        a0, a1, a2, a3 = self.coords
        return NFElement(f, (a0, s1 * a1, s2 * a2, s1 * s2 * a3))

    def conjugates(self):
        f = self.field
        if f.degree == 1:
            yield self
        elif f.degree == 2:
            yield self
            yield self.conjugate(-1)
        else:
            for s1 in (1, -1):
                for s2 in (1, -1):
                    yield self.conjugate(s1, s2)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates; an exact rational."""
        prod = self.field.one()
        for c in self.conjugates():
            prod = prod * c
        assert prod.is_rational(), "norm did not land in Q"
        return prod.coords[0]

    def inverse(self) -> "NFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        # x^-1 = (prod of other conjugates) / norm
        prod = self.field.one()
        first = True
        for c in self.conjugates():
            if first:
                first = False
                continue
            prod = prod * c
        n = (self * prod).coords[0]
        return prod.scale(Fraction(1, 1) / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coords))


def norm(x: NFElement) -> Fraction:
    return x.norm()


def ramified_rational_primes(K: NumberField) -> set[int]:
    """Rational primes dividing disc(K)."""
    if abs(K.disc) == 1:
        return set()
    return set(factorize(K.disc))


# -- imaginary quadratic class numbers ---------------------------------------


class QuadImagField:
    """Imaginary quadratic field, identified by its (negative) fundamental discriminant."""

    __slots__ = ("disc", "_h")

    def __init__(self, disc: int):
        if disc >= 0 or disc != fundamental_discriminant(disc):
            raise ValueError(f"{disc} is not a negative fundamental discriminant")
        self.disc = disc
        self._h = None

    def __repr__(self):
        return f"QuadImagField({self.disc})"

    def __eq__(self, other):
        return isinstance(other, QuadImagField) and self.disc == other.disc

    def __hash__(self):
        return hash(("QIF", self.disc))

    @property
    def class_number(self) -> int:
        if self._h is None:
            self._h = class_number_imag(self)
        return self._h


def class_number_imag(F: QuadImagField) -> int:
    """h(F) by enumerating reduced binary quadratic forms of discriminant disc(F)."""
    D = F.disc
    count = 0
    a = 1
    while 4 * a * a <= 3 * abs(D):  # |b| <= a <= c forces a <= sqrt(|D|/3)
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (b < 0) and (a == c or abs(b) == a):
                continue  # normalized representative has b >= 0 on the boundary
            count += 1
        a += 1
    return count


def h_star(F: QuadImagField) -> UpperReal:
    """Analytic degree bound 2*sqrt(|disc F|)/pi, rounded up."""
    return sqrt_upper(abs(F.disc)).scale(2).scale(1 / PI_LOWER)


def imaginary_quadratic_subfields(K: NumberField) -> list[QuadImagField]:
    """Quadratic subfields of K with negative discriminant."""
    return [QuadImagField(d) for d in K.quadratic_subfield_discs if d < 0]
