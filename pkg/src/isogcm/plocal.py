"""Prime ideal decomposition and local arithmetic for multiquadratic fields.

A prime of K above p is represented by a truncated model of the completion
K_p (square-root images mod p^B) plus a sign choice per field generator.
Splitting follows from the square classes of the generator radicands in Q_p;
sign choices modulo the local automorphism group enumerate the distinct
primes above p.  Valuations and residues are computed in the model, with
precision chosen from exact norm bounds so answers are rigorous.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import is_prime, kronecker, valuation
from .finitefield import GaloisField, GFElement, _tonelli_prime, gf_make, smallest_nonresidue
from .numberfield import NFElement, NumberField

INF = math.inf


class PrecisionLoss(Exception):
    """Internal: model precision exhausted; retry with larger B."""


class NotIntegralError(ValueError):
    pass


# -- p-adic square roots ------------------------------------------------------


def _hensel_sqrt_odd(u: int, p: int, B: int) -> int:
    """Square root of the unit square u mod p^B; canonical (min root mod p) lift."""
    r = _tonelli_prime(u % p, p)
    assert r is not None, "not a residue"
    r = min(r, p - r)
    k = 1
    while k < B:
        k2 = min(2 * k, B)
        mod = p ** k2
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
        k = k2
    return r


def _hensel_sqrt_2(u: int, B: int) -> int:
    """Square root of u = 1 mod 8 in Z/2^B (B >= 3); canonical root = 1 mod 4."""
    u %= 1 << B
    assert u % 8 == 1, "not a 2-adic square"
    r, k = 1, 3
    while k < B:
        if (u - r * r) % (1 << (k + 1)):
            r += 1 << (k - 1)
        k += 1
    r %= 1 << B
    if r % 4 != 1:
        r = ((1 << B) - r) % (1 << B)
    return r


def _sq_class(m: int, p: int) -> str:
    """Square class of m in Q_p*: 'triv', 'unram', or 'ram'."""
    v = valuation(m, p)
    u = m // p ** v
    if p == 2:
        if v % 2 == 0 and u % 8 == 1:
            return "triv"
        if v % 2 == 0 and u % 8 == 5:
            return "unram"
        return "ram"
    if v % 2 == 1:
        return "ram"
    return "triv" if kronecker(u, p) == 1 else "unram"


# -- truncated completion models ----------------------------------------------

_KIND_EF = {"deg1": (1, 1), "unram2": (1, 2), "ram2": (2, 1),
            "e2f2": (2, 2), "biram": (4, 1)}


class _Model:
    """The ring O/p^B for one completion shape; elements are int tuples.

    Layouts: deg1 (a,); unram2/ram2 (a, b); e2f2 (a0, a1, b0, b1) meaning
    (a0 + a1*w) + (b0 + b1*w)*theta; biram (a, b, c, d) over 1, t1, t2, t1*t2.
    """

    def __init__(self, p: int, B: int, kind: str, D: int | None = None,
                 D2: int | None = None, c: int | None = None):
        self.p, self.B, self.kind = p, B, kind
        self.pB = p ** B
        self.D, self.D2, self.c = D, D2, c
        self.n = 1 if kind == "deg1" else (2 if kind in ("unram2", "ram2") else 4)

    def from_int(self, a: int):
        return (a % self.pB,) + (0,) * (self.n - 1)

    def one(self):
        return self.from_int(1)

    def zero(self):
        return (0,) * self.n

    def add(self, x, y):
        return tuple((a + b) % self.pB for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.pB for a, b in zip(x, y))

    def scalar(self, c: int, x):
        return tuple((c * a) % self.pB for a in x)

    def _wmul(self, x0, x1, y0, y1):
        if self.p == 2:  # w^2 = -1 - w
            hi = x1 * y1
            return (x0 * y0 - hi) % self.pB, (x0 * y1 + x1 * y0 - hi) % self.pB
        return (x0 * y0 + self.c * x1 * y1) % self.pB, (x0 * y1 + x1 * y0) % self.pB

    def mul(self, x, y):
        k = self.kind
        if k == "deg1":
            return ((x[0] * y[0]) % self.pB,)
        if k == "unram2":
            return self._wmul(x[0], x[1], y[0], y[1])
        if k == "ram2":
            return ((x[0] * y[0] + self.D * x[1] * y[1]) % self.pB,
                    (x[0] * y[1] + x[1] * y[0]) % self.pB)
        if k == "e2f2":
            aa = self._wmul(x[0], x[1], y[0], y[1])
            bb = self._wmul(x[2], x[3], y[2], y[3])
            ab = self._wmul(x[0], x[1], y[2], y[3])
            ba = self._wmul(x[2], x[3], y[0], y[1])
            return ((aa[0] + self.D * bb[0]) % self.pB,
                    (aa[1] + self.D * bb[1]) % self.pB,
                    (ab[0] + ba[0]) % self.pB,
                    (ab[1] + ba[1]) % self.pB)
        a, b, cc, d = x
        a2, b2, c2, d2 = y
        D1, D2 = self.D, self.D2
        return (
            (a * a2 + D1 * b * b2 + D2 * cc * c2 + D1 * D2 * d * d2) % self.pB,
            (a * b2 + b * a2 + D2 * (cc * d2 + d * c2)) % self.pB,
            (a * c2 + cc * a2 + D1 * (b * d2 + d * b2)) % self.pB,
            (a * d2 + d * a2 + b * c2 + cc * b2) % self.pB,
        )

    # -- valuations, in uniformizer units of this completion --

    def _vint(self, a: int) -> int:
        a %= self.pB
        if a == 0:
            raise PrecisionLoss()
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def _vpair(self, a: int, b: int) -> int:
        a %= self.pB
        b %= self.pB
        if a == 0 and b == 0:
            raise PrecisionLoss()
        if a == 0:
            return self._vint(b)
        if b == 0:
            return self._vint(a)
        return min(self._vint(a), self._vint(b))

    def _val_ram_pair(self, a: int, b: int, D: int) -> int:
        """v(a + b*theta) in a ramified quadratic layer with theta^2 = D."""
        if D % self.p == 0:  # Eisenstein generator: parity split
            a %= self.pB
            b %= self.pB
            if a == 0 and b == 0:
                raise PrecisionLoss()
            va = 2 * self._vint(a) if a else None
            vb = 2 * self._vint(b) + 1 if b else None
            return min(v for v in (va, vb) if v is not None)
        # odd D at p = 2: valuation through the norm form
        return self._vint(a * a - D * b * b)

    def val(self, x) -> int:
        k = self.kind
        if k == "deg1":
            return self._vint(x[0])
        if k == "unram2":
            return self._vpair(x[0], x[1])
        if k == "ram2":
            return self._val_ram_pair(x[0], x[1], self.D)
        if k == "e2f2":
            if self.D % self.p == 0:
                va = vb = None
                try:
                    va = 2 * self._vpair(x[0], x[1])
                except PrecisionLoss:
                    pass
                try:
                    vb = 2 * self._vpair(x[2], x[3]) + 1
                except PrecisionLoss:
                    pass
                if va is None and vb is None:
                    raise PrecisionLoss()
                return min(v for v in (va, vb) if v is not None)
            # odd D (p = 2): relative norm down to the unramified layer
            asq = self._wmul(x[0], x[1], x[0], x[1])
            bsq = self._wmul(x[2], x[3], x[2], x[3])
            return self._vpair(asq[0] - self.D * bsq[0], asq[1] - self.D * bsq[1])
        # biram: relative norm over L1 = Q2(theta1)
        a, b, cc, d = x
        x0, x1 = a * a + self.D * b * b, 2 * a * b
        y0, y1 = cc * cc + self.D * d * d, 2 * cc * d
        return self._val_ram_pair(x0 - self.D2 * y0, x1 - self.D2 * y1, self.D)

    def divide_by_p_power(self, x, t: int):
        pt = self.p ** t
        out = []
        for a in x:
            a %= self.pB
            assert a % pt == 0, "inexact division in local model"
            out.append(a // pt)
        return tuple(out)

    # slot helpers for building generator images
    def theta_slot(self, coeff: int):
        if self.kind == "ram2":
            return (0, coeff % self.pB)
        if self.kind == "e2f2":
            return (0, 0, coeff % self.pB, 0)
        if self.kind == "biram":
            return (0, coeff % self.pB, 0, 0)
        raise AssertionError("no theta in this model")

    def theta2_slot(self, coeff: int):
        assert self.kind == "biram"
        return (0, 0, coeff % self.pB, 0)

    def w_slot(self, w0: int, w1: int):
        if self.kind == "unram2":
            return (w0 % self.pB, w1 % self.pB)
        assert self.kind == "e2f2"
        return (w0 % self.pB, w1 % self.pB, 0, 0)

    def w_theta_slot(self, w0: int, w1: int):
        assert self.kind == "e2f2"
        return (0, 0, w0 % self.pB, w1 % self.pB)

    def omega_elt(self):
        if self.kind == "unram2":
            return (0, 1)
        assert self.kind == "e2f2"
        return (0, 1, 0, 0)


# -- prime ideals --------------------------------------------------------------


class PrimeIdeal:
    """A prime of a multiquadratic field, with enough local data to reduce at it."""

    def __init__(self, field: NumberField, p: int, kind: str, descs, signs,
                 index: int, g_count: int, D=None, D2=None):
        self.field = field
        self.p = p
        self.kind = kind
        self.e, self.f = _KIND_EF[kind]
        self._descs = descs
        self.signs = signs
        self.index = index
        self.g_count = g_count
        self.D, self.D2 = D, D2
        self.norm = p ** self.f
        self._models: dict[int, tuple] = {}
        self._basis_res = None
        self._res_field = None
        self._lift_gen = None

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f}, idx={self.index})"

    def __eq__(self, other):
        return (
            isinstance(other, PrimeIdeal)
            and self.field == other.field
            and (self.p, self.index) == (other.p, other.index)
        )

    def __hash__(self):
        return hash(("PI", self.field, self.p, self.index))

    def key(self) -> dict:
        return {"p": self.p, "e": self.e, "f": self.f, "index": self.index,
                "norm": self.norm}

    @property
    def residue_field(self) -> GaloisField:
        if self._res_field is None:
            self._res_field = gf_make(self.p, self.f)
        return self._res_field

    @property
    def ramified_directions(self) -> list[int]:
        return [m for m in self.field.kernels if m % self.p == 0]

    @property
    def embedding(self) -> dict[int, GFElement]:
        """Residues of sqrt(m_i) for generator directions of even valuation."""
        out = {}
        for i, m in enumerate(self.field.kernels):
            if m % self.p != 0:
                out[m] = self.residue(self.field.sqrt_gen(i))
        return out

    # -- model plumbing --

    def _model_at(self, B: int):
        got = self._models.get(B)
        if got is not None:
            return got
        p = self.p
        c = smallest_nonresidue(p) if (self.kind in ("unram2", "e2f2") and p != 2) else None
        model = _Model(p, B, self.kind, D=self.D, D2=self.D2, c=c)
        imgs = [self._image(model, d, s) for d, s in zip(self._descs, self.signs)]
        basis = [model.one()] + imgs
        if len(imgs) == 2:
            basis.append(model.mul(imgs[0], imgs[1]))
        if len(self._models) > 8:
            self._models.clear()
        self._models[B] = (model, basis)
        return model, basis

    def _image(self, model: _Model, desc, sign: int):
        p, pB = model.p, model.pB
        tag = desc[0]
        if tag == "hensel":
            u = desc[1]
            r = _hensel_sqrt_2(u, model.B) if p == 2 else _hensel_sqrt_odd(u % pB, p, model.B)
            return model.from_int(sign * r)
        if tag == "theta":
            return model.theta_slot(sign)
        if tag == "theta2":
            return model.theta2_slot(sign)
        if tag == "theta_ratio":
            # sqrt(m_i) = p^a * sqrt(u_w) * theta / D, with w = m_i * D = p^(2a) * u_w
            _, w, D = desc
            a = valuation(w, p) // 2
            u = w // p ** (2 * a)
            r = _hensel_sqrt_2(u, model.B) if p == 2 else _hensel_sqrt_odd(u % pB, p, model.B)
            vD = valuation(D, p)
            uD = D // p ** vD
            assert a >= vD, "unexpected denominator in theta_ratio"
            coeff = sign * r * pow(uD, -1, pB) * p ** (a - vD)
            return model.theta_slot(coeff)
        if tag == "omega":
            w0, w1 = self._omega_sqrt(model, desc[1])
            return model.w_slot(sign * w0, sign * w1)
        if tag == "omega_theta_ratio":
            # sqrt(m_i) = p^a * sqrt(U) * theta / D with U an unramified nonsquare
            _, w, D = desc
            a = valuation(w, p) // 2
            U = w // p ** (2 * a)
            vD = valuation(D, p)
            uD = D // p ** vD
            assert a >= vD
            w0, w1 = self._omega_sqrt(model, U)
            coeff = sign * pow(uD, -1, pB) * p ** (a - vD)
            return model.w_theta_slot(coeff * w0, coeff * w1)
        raise AssertionError(f"unknown descriptor {tag}")

    @staticmethod
    def _omega_sqrt(model: _Model, U: int):
        """Square root of the unramified nonsquare unit U, as a W-layer pair."""
        pB = model.pB
        if model.p == 2:
            t = (U * pow(-3, -1, pB)) % pB
            h = _hensel_sqrt_2(t, model.B)
            return h % pB, (2 * h) % pB  # h * (1 + 2w); (1+2w)^2 = -3
        h = _hensel_sqrt_odd((U * pow(model.c, -1, pB)) % pB, model.p, model.B)
        return 0, h % pB

    # -- exact local queries --

    def _prepare(self, x: NFElement, B: int):
        den = x.denominator()
        t = valuation(den, self.p) if den % self.p == 0 else 0
        coords = [int(c) for c in x.scale(den).coords]
        d_unit = den // self.p ** t
        model, basis = self._model_at(B)
        z = model.zero()
        for cj, bj in zip(coords, basis):
            if cj:
                z = model.add(z, model.scalar(cj, bj))
        return model, z, t, d_unit

    def _precision_for(self, x: NFElement) -> int:
        den = x.denominator()
        n = x.scale(den).norm()
        assert n.denominator == 1
        n_int = int(n)
        cap = valuation(n_int, self.p) if n_int % self.p == 0 else 0
        t = valuation(den, self.p) if den % self.p == 0 else 0
        return cap + 2 * t + 2 * self.e + 12

    def val(self, x: NFElement):
        """Exact valuation at this prime; +inf for x = 0."""
        if x.field != self.field:
            raise ValueError("element of a different field")
        if x.is_zero():
            return INF
        B = self._precision_for(x)
        for _ in range(4):
            model, z, t, _ = self._prepare(x, B)
            try:
                return model.val(z) - self.e * t
            except PrecisionLoss:
                B *= 2
        raise AssertionError("valuation did not stabilize")

    def val_rational(self, q) -> int | float:
        q = Fraction(q)
        if q == 0:
            return INF
        return self.e * (valuation(q.numerator, self.p)
                         - valuation(q.denominator, self.p))

    def val_at_least(self, x: NFElement, t: int) -> bool:
        """Whether v(x) >= t, at fixed small precision (cheap threshold test)."""
        if x.is_zero():
            return True
        den = x.denominator()
        tau = valuation(den, self.p) if den % self.p == 0 else 0
        B = max(t, 0) + self.e * tau + 10
        model, z, tau, _ = self._prepare(x, B)
        try:
            v = model.val(z)
        except PrecisionLoss:
            return True  # vanished mod p^B, so v >= B - e*tau >= t
        return v - self.e * tau >= t

    def residue(self, x: NFElement) -> GFElement:
        """Image of x in the residue field; error when x is not integral here."""
        if x.is_zero():
            return self.residue_field.zero()
        v = self.val(x)
        if v < 0:
            raise NotIntegralError(f"not integral at {self!r}")
        gf = self.residue_field
        if v > 0:
            return gf.zero()
        B = self._precision_for(x)
        model, z, t, d_unit = self._prepare(x, B)
        inv_d = pow(d_unit, -1, model.pB)
        p = self.p
        if p != 2:
            z = model.divide_by_p_power(z, t)
            z = model.scalar(inv_d, z)
            if self.kind in ("deg1", "ram2"):
                return gf.element(z[0])
            return gf.element(z[0], z[1])  # unram2 / e2f2: W-part is the residue
        # p = 2: residues via valuation tests; F_2 units are 1, F_4 has 3 unit classes
        z = model.scalar(inv_d, z)
        if self.f == 1:
            return gf.one()
        shift = 1 << t
        omega = model.omega_elt()
        candidates = [
            (gf.one(), model.one()),
            (gf.element(0, 1), omega),
            (gf.element(1, 1), model.add(model.one(), omega)),
        ]
        for gval, lift in candidates:
            diff = model.sub(z, model.scalar(shift, lift))
            try:
                vv = model.val(diff)
            except PrecisionLoss:
                vv = model.B  # vanished at full precision
            if vv > self.e * t:
                return gval
        raise AssertionError("unit residue matched no class of F_4")

    @property
    def basis_residues(self) -> list[GFElement]:
        if self._basis_res is None:
            if self.p != 2:
                # integral basis elements: residues read off the model images
                model, basis = self._model_at(4)
                gf = self.residue_field
                if self.kind in ("deg1", "ram2"):
                    self._basis_res = [gf.element(z[0]) for z in basis]
                else:  # unram2 / e2f2: the W-part carries the residue
                    self._basis_res = [gf.element(z[0], z[1]) for z in basis]
            else:
                K = self.field
                basis = [K.one()] + [K.sqrt_gen(i) for i in range(len(K.generators))]
                if len(K.generators) == 2:
                    basis.append(K.sqrt_gen(0) * K.sqrt_gen(1))
                self._basis_res = [self.residue(b) for b in basis]
        return self._basis_res

    def residue_fast(self, x: NFElement) -> GFElement:
        """Residue for coordinates with p-free denominators (the common case)."""
        gf = self.residue_field
        p = self.p
        out = gf.zero()
        for c, rb in zip(x.coords, self.basis_residues):
            if c:
                if c.denominator % p == 0:
                    return self.residue(x)
                s = c.numerator * pow(c.denominator, -1, p) % p
                if s:
                    out = out + rb * gf.element(*([s] + [0] * (self.f - 1)))
        return out

    def lift(self, a: GFElement) -> NFElement:
        """A field element reducing to a (a section of the residue map)."""
        K = self.field
        if self.f == 1:
            return K.from_rational(a.coords[0])
        if self._lift_gen is None:
            self._lift_gen = self._find_lift_generator()
        G, gres = self._lift_gen
        a0, a1 = a.coords
        p = self.p
        beta = a1 * pow(gres.coords[1], -1, p) % p
        alpha = (a0 - beta * gres.coords[0]) % p
        return K.from_rational(alpha) + G.scale(beta)

    def _find_lift_generator(self):
        K = self.field
        pures = [K.sqrt_gen(i) for i in range(len(K.generators))]
        if len(K.generators) == 2:
            pures.append(K.sqrt_of_subfield_disc(K.quadratic_subfield_discs[2]))
        if self.p == 2:
            half = Fraction(1, 2)
            candidates = [(K.one() + s).scale(half) for s in pures
                          if self._radicand(s) % 8 == 5]
        else:
            candidates = pures
        for G in candidates:
            try:
                gres = self.residue(G)
            except NotIntegralError:
                continue
            if gres.coords[1] != 0:
                return G, gres
        raise AssertionError(f"no residue generator found for {self!r}")

    @staticmethod
    def _radicand(x: NFElement) -> int:
        sq = x * x
        assert sq.is_rational()
        return int(sq.coords[0])

    def uniformizer(self) -> NFElement:
        """A field element of valuation exactly 1 at this prime."""
        K = self.field
        if self.e == 1:
            return K.from_rational(self.p)
        cands = []
        for i in range(len(K.generators)):
            s = K.sqrt_gen(i)
            cands += [s, K.one() + s, K.one() - s]
        if len(K.generators) == 2:
            s3 = K.sqrt_of_subfield_disc(K.quadratic_subfield_discs[2])
            cands += [s3, K.one() + s3, K.one() - s3]
        for x in cands:
            if not x.is_zero() and self.val(x) == 1:
                return x
        rng = range(-3, 4)
        for den in (1, 2):
            for coords in _small_tuples(rng, K.degree):
                x = K.element([Fraction(c, den) for c in coords])
                if not x.is_zero() and self.val(x) == 1:
                    return x
        raise AssertionError(f"no uniformizer found for {self!r}")


def _small_tuples(rng, dim):
    if dim == 1:
        for a in rng:
            yield (a,)
        return
    for rest in _small_tuples(rng, dim - 1):
        for a in rng:
            yield (a,) + rest


# -- decomposition -------------------------------------------------------------

_DECOMP_CACHE: dict[tuple, list] = {}


def decompose_prime(K: NumberField, p: int) -> list[PrimeIdeal]:
    """All primes of K above p with (e, f) data, in canonical order."""
    key = (K.generators, p)
    got = _DECOMP_CACHE.get(key)
    if got is not None:
        return got
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = len(K.generators)
    if k == 0:
        primes = [PrimeIdeal(K, p, "deg1", (), (), 0, 1)]
    else:
        classes = [_sq_class(m, p) for m in K.kernels]
        kind, descs, D, D2 = _shape(K.kernels, classes, p)
        orbits = sorted(_orbits(k, _aut_vectors(kind, descs)))
        e, f = _KIND_EF[kind]
        assert len(orbits) * e * f == K.degree, "e*f*g must equal the degree"
        primes = [
            PrimeIdeal(K, p, kind, descs,
                       tuple(1 if b == 0 else -1 for b in rep),
                       idx, len(orbits), D=D, D2=D2)
            for idx, rep in enumerate(orbits)
        ]
    if len(_DECOMP_CACHE) < 60_000:  # bounded: long streams skip caching
        _DECOMP_CACHE[key] = primes
    return primes


def _shape(kernels, classes, p):
    """Completion shape and per-generator image descriptors."""
    if len(kernels) == 1:
        m1, c1 = kernels[0], classes[0]
        if c1 == "triv":
            return "deg1", (("hensel", m1),), None, None
        if c1 == "unram":
            return "unram2", (("omega", m1),), None, None
        return "ram2", (("theta",),), m1, None

    m1, m2 = kernels
    c1, c2 = classes
    c3 = _sq_class(m1 * m2, p)

    if c1 == "triv" and c2 == "triv":
        return "deg1", (("hensel", m1), ("hensel", m2)), None, None

    if c1 == "triv" or c2 == "triv" or c3 == "triv":
        # the classes span a single nontrivial square class
        if "ram" in (c1, c2):
            if c1 == "ram":
                first = ("theta",)
                second = ("hensel", m2) if c2 == "triv" else ("theta_ratio", m2 * m1, m1)
                return "ram2", (first, second), m1, None
            first = ("hensel", m1)
            return "ram2", (first, ("theta",)), m2, None
        descs = tuple(("omega", m) if cl == "unram" else ("hensel", m)
                      for m, cl in zip(kernels, classes))
        return "unram2", descs, None, None

    # the classes span a four-element group: quartic completion
    if c1 == "ram" and c2 == "ram" and c3 == "ram":
        assert p == 2, "three ramified square classes only exist at p = 2"
        return "biram", (("theta",), ("theta2",)), m1, m2
    if c1 == "ram":
        second = ("omega", m2) if c2 == "unram" else ("omega_theta_ratio", m2 * m1, m1)
        return "e2f2", (("theta",), second), m1, None
    assert c2 == "ram"
    first = ("omega", m1) if c1 == "unram" else ("omega_theta_ratio", m1 * m2, m2)
    return "e2f2", (first, ("theta",)), m2, None


def _aut_vectors(kind, descs):
    """Sign-flip vectors of local automorphism generators acting on the images."""

    def flips(name):
        out = []
        for d in descs:
            tag = d[0]
            if name == "frob":
                out.append(1 if tag in ("omega", "omega_theta_ratio") else 0)
            elif name == "thetaneg":
                out.append(1 if tag in ("theta", "theta_ratio", "omega_theta_ratio") else 0)
            elif name == "theta1neg":
                out.append(1 if tag == "theta" else 0)
            else:  # theta2neg
                out.append(1 if tag == "theta2" else 0)
        return tuple(out)

    if kind == "deg1":
        return []
    if kind == "unram2":
        return [flips("frob")]
    if kind == "ram2":
        return [flips("thetaneg")]
    if kind == "e2f2":
        return [flips("frob"), flips("thetaneg")]
    return [flips("theta1neg"), flips("theta2neg")]


def _orbits(k, vectors):
    """Representatives of {0,1}^k modulo xor by the span of the given vectors."""
    span = {(0,) * k}
    frontier = [(0,) * k]
    while frontier:
        cur = frontier.pop()
        for v in vectors:
            nxt = tuple(a ^ b for a, b in zip(cur, v))
            if nxt not in span:
                span.add(nxt)
                frontier.append(nxt)
    seen, reps = set(), []
    for n in range(1 << k):
        bits = tuple((n >> i) & 1 for i in range(k))
        if bits in seen:
            continue
        orbit = {tuple(a ^ b for a, b in zip(bits, s)) for s in span}
        seen |= orbit
        reps.append(min(orbit))
    return reps


def reduce_element(x: NFElement, prime: PrimeIdeal) -> GFElement:
    """Ring-homomorphism image of x in the residue field of the prime."""
    return prime.residue(x)
