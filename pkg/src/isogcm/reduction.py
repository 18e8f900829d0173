"""Reduction of curves at primes: integral models, good-reduction tests,
global minimal models over Q, bad-prime sets, and j-integrality.

Good reduction at residue characteristic >= 5 is decided by the scaling
formula on (v(c4), v(c6), v(Delta)).  At residue characteristic 2 and 3 that
formula can overclaim, so non-minimality is decided by an exhaustive levelwise
search for an integral (u, r, s, t) descent; residue fields have at most 9
elements here, which keeps the search small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf

from .arith import factorize, valuation
from .curves import WeierstrassCurve, transform_model
from .numberfield import NFElement, NumberField
from .plocal import PrimeIdeal, decompose_prime


class BadReductionError(ValueError):
    pass


def _vfrac(q: Fraction, p: int):
    if q == 0:
        return inf
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def _val(prime: PrimeIdeal, x: NFElement):
    return prime.val(x)


def _floordiv(v, k: int):
    return inf if v == inf else v // k


def good_reduction_at(E: WeierstrassCurve, prime: PrimeIdeal) -> bool:
    """Whether E acquires a model with unit discriminant at the prime."""
    if E.is_singular():
        raise ValueError("singular curve")
    K: NumberField = E.field
    if K.degree == 1:
        Em = minimal_model_q(E)
        return _vfrac(Em.delta.coords[0], prime.p) == 0
    if prime.p >= 5:
        vc4 = _val(prime, E.c4)
        vc6 = _val(prime, E.c6)
        vd = _val(prime, E.delta)
        m = min(_floordiv(vc4, 4), _floordiv(vc6, 6), _floordiv(vd, 12))
        return vd - 12 * m == 0
    Eint = _integralize(E, prime)
    return _tate_good(Eint, prime)[0]


def _integralize(E: WeierstrassCurve, prime: PrimeIdeal) -> WeierstrassCurve:
    """Rescale so every a-invariant is integral at the prime."""
    weights = (1, 2, 3, 4, 6)
    need = 0
    for a, w in zip(E.ainvs(), weights):
        if a.is_zero():
            continue
        v = prime.val(a)
        if v < 0:
            need = max(need, -(v // w))  # ceil(-v / w)
    if need == 0:
        return E
    pi = prime.uniformizer()
    w = _power(pi, need)
    # u = w^-1 scales a_i by w^i
    return transform_model(E, w.inverse(), E.field.zero(), E.field.zero(),
                           E.field.zero())


def _power(x: NFElement, n: int) -> NFElement:
    out = x.field.one()
    for _ in range(n):
        out = out * x
    return out


def _tate_good(E: WeierstrassCurve, prime: PrimeIdeal):
    """Good-reduction decision at residue characteristic 2 or 3.

    Returns (is_good, good_model_or_None).  E must be integral at the prime.
    The model is repeatedly descaled by the uniformizer whenever an integral
    (r, s, t) makes every v(a_i) >= i; if no descent exists and v(Delta) > 0
    the reduction is genuinely bad.
    """
    pi = prime.uniformizer()
    K = E.field
    for _ in range(200):
        vd = prime.val(E.delta)
        assert vd != inf
        if vd == 0:
            return True, E
        if vd < 12:
            return False, None
        rst = _find_descent(E, prime, pi)
        if rst is None:
            return False, None
        r, s, t = rst
        E = transform_model(E, pi, r, s, t)
        assert all(a.is_zero() or prime.val(a) >= 0 for a in E.ainvs())
    raise AssertionError("descent loop did not terminate")


_TARGETS = (1, 2, 3, 4, 6)


def _find_descent(E: WeierstrassCurve, prime: PrimeIdeal, pi: NFElement):
    """Search r, s, t (mod pi^6) with v(a_i') >= (1,2,3,4,6) after translation.

    Levelwise enumeration over residue lifts; complete because the conditions
    only depend on r, s, t mod pi^6 and truncations of any solution satisfy
    the partial conditions.  Loops are nested so each level of the transform
    formulas prunes as early as possible.
    """
    K = E.field
    gf = prime.residue_field
    lifts = [prime.lift(a) for a in gf.elements()]
    zero = K.zero()
    a1, a2, a3, a4, a6 = E.ainvs()
    ok = prime.val_at_least

    def conds(r, s, t, targets):
        t1, t2, t3, t4, t6 = targets
        if not ok(a1 + 2 * s, t1):
            return False
        if not ok(a2 - s * a1 + 3 * r - s * s, t2):
            return False
        if not ok(a3 + r * a1 + 2 * t, t3):
            return False
        if not ok(a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1
                  + 3 * r * r - 2 * s * t, t4):
            return False
        return ok(a6 + r * a4 + r * r * a2 + r * r * r
                  - t * a3 - t * t - r * t * a1, t6)

    states = [(zero, zero, zero)]
    pi_pow = K.one()
    for level in range(6):
        targets = tuple(min(t, level + 1) for t in _TARGETS)
        new_states = []
        for r0, s0, t0 in states:
            for ds in lifts:
                s = s0 + pi_pow * ds
                if not ok(a1 + 2 * s, targets[0]):
                    continue
                for dr in lifts:
                    r = r0 + pi_pow * dr
                    if not ok(a2 - s * a1 + 3 * r - s * s, targets[1]):
                        continue
                    for dt in lifts:
                        t = t0 + pi_pow * dt
                        if not conds(r, s, t, targets):
                            continue
                        if conds(r, s, t, _TARGETS):  # already a full descent
                            return r, s, t
                        new_states.append((r, s, t))
        if not new_states:
            return None
        if len(new_states) > 400:
            new_states = new_states[:400]
        states = new_states
        pi_pow = pi_pow * pi
    return states[0]


def reduce_at(E: WeierstrassCurve, prime: PrimeIdeal) -> WeierstrassCurve:
    """Reduction of E at a prime of good reduction, over the residue field."""
    K: NumberField = E.field
    gf = prime.residue_field
    p = prime.p
    # fast path: p-integral coefficients with unit discriminant
    if all(a.denominator() % p for a in E.ainvs()):
        dres = prime.residue_fast(E.delta)
        if not dres.is_zero():
            return WeierstrassCurve(
                [prime.residue_fast(a) for a in E.ainvs()], gf)
    Eint = _integralize(E, prime)
    if p >= 5:
        vc4 = _val(prime, Eint.c4)
        vc6 = _val(prime, Eint.c6)
        vd = _val(prime, Eint.delta)
        m = min(_floordiv(vc4, 4), _floordiv(vc6, 6), _floordiv(vd, 12))
        if vd - 12 * m != 0:
            raise BadReductionError(f"bad reduction at {prime!r}")
        if m:
            w = _power(prime.uniformizer(), m)
            Eint = transform_model(Eint, w, K.zero(), K.zero(), K.zero())
        # short model with the same invariants, integral since v(c4'), v(c6') >= 0
        c4b = prime.residue(Eint.c4)
        c6b = prime.residue(Eint.c6)
        zero = gf.zero()
        Ered = WeierstrassCurve(
            [zero, zero, zero, -27 * c4b, -54 * c6b], gf)
        if Ered.is_singular():
            raise BadReductionError(f"bad reduction at {prime!r}")
        return Ered
    good, model = _tate_good(Eint, prime)
    if not good:
        raise BadReductionError(f"bad reduction at {prime!r}")
    Ered = WeierstrassCurve([prime.residue(a) for a in model.ainvs()], gf)
    assert not Ered.is_singular()
    return Ered


# -- global minimal models over Q ----------------------------------------------


def _reconstruct_from_c4c6(c4: int, c6: int) -> WeierstrassCurve | None:
    """Integral model with the given invariants, or None when inadmissible."""
    if (c4 ** 3 - c6 ** 2) % 1728:
        return None
    delta = (c4 ** 3 - c6 ** 2) // 1728
    if delta == 0:
        return None
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    if b2 % 4 not in (0, 1):
        return None
    if (b2 * b2 - c4) % 24:
        return None
    b4 = (b2 * b2 - c4) // 24
    num = -(b2 ** 3) + 36 * b2 * b4 - c6
    if num % 216:
        return None
    b6 = num // 216
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    if (b6 - a3) % 4:
        return None
    a6 = (b6 - a3) // 4
    if (b4 - a1 * a3) % 2:
        return None
    a4 = (b4 - a1 * a3) // 2
    from .curves import curve_over_q

    E = curve_over_q([a1, a2, a3, a4, a6])
    if E.c4.coords[0] != c4 or E.c6.coords[0] != c6:
        return None
    return E


def minimal_model_q(E: WeierstrassCurve) -> WeierstrassCurve:
    """Laska-Kraus-Connell global minimal model of a curve over Q."""
    K = E.field
    assert K.degree == 1, "minimal models are computed over Q only"
    if E.is_singular():
        raise ValueError("singular curve")
    c4 = Fraction(E.c4.coords[0])
    c6 = Fraction(E.c6.coords[0])
    delta = Fraction(E.delta.coords[0])
    support = set(factorize(c4.numerator * c4.denominator or 1)) if c4 else set()
    support |= set(factorize(c6.numerator * c6.denominator or 1)) if c6 else set()
    support |= set(factorize(delta.numerator)) | set(factorize(delta.denominator))
    exps = {}
    for p in sorted(support):
        m = min(_floordiv(_vfrac(c4, p), 4), _floordiv(_vfrac(c6, p), 6),
                _floordiv(_vfrac(delta, p), 12))
        assert m != inf
        exps[p] = m
    m2, m3 = exps.pop(2, 0), exps.pop(3, 0)
    base = Fraction(1)
    for p, m in exps.items():
        base *= Fraction(p) ** m
    for k2 in range(m2, m2 - 3, -1):
        for k3 in range(m3, m3 - 2, -1):
            u = base * Fraction(2) ** k2 * Fraction(3) ** k3
            c4u = c4 / u ** 4
            c6u = c6 / u ** 6
            if c4u.denominator != 1 or c6u.denominator != 1:
                continue
            model = _reconstruct_from_c4c6(int(c4u), int(c6u))
            if model is not None:
                return model
    raise AssertionError("minimal model reconstruction failed")


def bad_primes(E: WeierstrassCurve, K: NumberField | None = None) -> list[PrimeIdeal]:
    """Primes of bad reduction, by ascending residue characteristic."""
    K = K or E.field
    if E.is_singular():
        raise ValueError("singular curve")
    if K.degree == 1:
        Em = minimal_model_q(E)
        d = int(Em.delta.coords[0])
        return [decompose_prime(K, p)[0] for p in sorted(factorize(d))]
    n = E.delta.norm()
    support = set(factorize(n.numerator)) | set(factorize(n.denominator))
    for a in E.ainvs():
        support |= set(factorize(a.denominator())) - {1}
    out = []
    for p in sorted(support):
        for prime in decompose_prime(K, p):
            if not good_reduction_at(E, prime):
                out.append(prime)
    return out


def j_is_integral(E: WeierstrassCurve, K: NumberField | None = None):
    """(True, None) when j is integral at every prime; else (False, witness)."""
    K = K or E.field
    jv = E.j
    if K.degree == 1:
        q = Fraction(jv.coords[0])
        if q.denominator == 1:
            return True, None
        p = min(factorize(q.denominator))
        return False, decompose_prime(K, p)[0]
    n = jv.norm()
    support = set(factorize(n.denominator))
    support |= set(factorize(jv.denominator())) - {1}
    for p in sorted(support):
        for prime in decompose_prime(K, p):
            if prime.val(jv) < 0:
                return False, prime
    return True, None
