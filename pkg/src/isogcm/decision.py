"""Isogeny and complex-multiplication decision procedures with certificates.

Both procedures follow the same pattern: compute an effective Chebotarev
bound B, stream every prime of norm <= B, test a local condition at each, and
emit a deterministic certificate (hash chain over the per-prime evidence).
Negative verdicts carry the minimal-norm failing prime.  The per-prime loop
is embarrassingly parallel; shards never change the emitted bytes.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arith import factorize, kronecker, sieve_primes
from .chebotarev import (
    DEFAULT_C_U,
    DEFAULT_CEILING,
    BoundInfeasibleError,
    BoundReport,
    compute_bounds,
    gl_order,
    test_primes,
)
from .curves import WeierstrassCurve, base_change, quadratic_twist
from .numberfield import (
    FieldTowerError,
    NumberField,
    QuadImagField,
    class_number_imag,
    make_field,
    ramified_rational_primes,
)
from .plocal import PrimeIdeal, decompose_prime
from .pointcount import LocalData, TraceCache, count_points, frobenius_cm_field
from .reduction import (
    BadReductionError,
    bad_primes,
    good_reduction_at,
    j_is_integral,
    minimal_model_q,
    reduce_at,
)

ISOGENOUS = "ISOGENOUS"
NOT_ISOGENOUS = "NOT_ISOGENOUS"
CM_BY = "CM_BY"
NOT_CM = "NOT_CM"
INCONCLUSIVE = "INCONCLUSIVE"

_POSITIVE = (ISOGENOUS, CM_BY)


class RootsOfUnityError(ValueError):
    pass


@dataclass
class DecisionConfig:
    grh: bool = True
    c_u: Fraction = DEFAULT_C_U
    ell_override: int | None = None
    ceiling: int = DEFAULT_CEILING
    jobs: int = 1
    cache_path: str | None = None
    naive_threshold: int = 5000
    unconditional_ack: bool = False
    evidence: str = "digest"  # or "full": store per-prime entries in the certificate

    def cache(self) -> TraceCache:
        return TraceCache(self.cache_path)

    def params_echo(self) -> dict:
        return {
            "grh": self.grh,
            "c_u": str(Fraction(self.c_u)),
            "ell_override": self.ell_override,
            "ceiling": self.ceiling,
            "naive_threshold": self.naive_threshold,
        }


# -- serialization -------------------------------------------------------------


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def field_to_json(K: NumberField) -> dict:
    return {"generators": list(K.generators)}


def field_from_json(obj) -> NumberField:
    return make_field(list(obj.get("generators", [])))


def ainvs_to_json(E: WeierstrassCurve) -> list:
    out = []
    for a in E.ainvs():
        flat = []
        for c in a.coords:
            flat += [c.numerator, c.denominator]
        out.append(flat)
    return out


def curve_to_json(E: WeierstrassCurve) -> dict:
    return {"field": field_to_json(E.field), "ainvs": ainvs_to_json(E)}


def curve_from_json(obj) -> WeierstrassCurve:
    K = field_from_json(obj["field"])
    ainvs = []
    for flat in obj["ainvs"]:
        if len(flat) != 2 * K.degree:
            raise ValueError("a-invariant has the wrong number of coordinates")
        coords = [Fraction(flat[2 * i], flat[2 * i + 1]) for i in range(K.degree)]
        ainvs.append(K.element(coords))
    return WeierstrassCurve(ainvs, K)


def trace_key(field_json: dict, ainvs_json: list, prime: PrimeIdeal) -> str:
    payload = canonical([field_json, ainvs_json, prime.key()])
    return hashlib.sha256(payload.encode()).hexdigest()


# -- verdicts ------------------------------------------------------------------


@dataclass
class Verdict:
    kind: str
    outcome: str
    cm_disc: int | None = None
    reason: str | None = None
    witness: PrimeIdeal | None = None
    bound: BoundReport | None = None
    ell: int | None = None
    n_value: int | None = None
    h_value: int | None = None
    digest_final: str = ""
    digest_count: int = 0
    entries: list | None = None
    params: dict = dc_field(default_factory=dict)
    extras: dict = dc_field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if self.outcome in _POSITIVE:
            return 0
        if self.outcome == INCONCLUSIVE:
            return 2
        return 1

    def to_json_dict(self) -> dict:
        return {
            "format": "isogcm-cert-v1",
            "kind": self.kind,
            "outcome": self.outcome,
            "cm_disc": self.cm_disc,
            "reason": self.reason,
            "witness": self.witness.key() if self.witness else None,
            "bound": self.bound.to_json_dict() if self.bound else None,
            "ell": self.ell,
            "n_value": self.n_value,
            "h_value": self.h_value,
            "digest": {"final": self.digest_final, "count": self.digest_count,
                       "entries": self.entries},
            "params": self.params,
            "extras": self.extras,
        }

    def to_json(self) -> str:
        return canonical(self.to_json_dict())


class _Digest:
    def __init__(self, seed: dict):
        self.h = hashlib.sha256(canonical(seed).encode()).digest()
        self.count = 0
        self.entries: list = []

    def push(self, entry: dict):
        self.h = hashlib.sha256(self.h + canonical(entry).encode()).digest()
        self.count += 1
        self.entries.append(entry)

    def final(self) -> str:
        return self.h.hex()


# -- the sharded trace stream ----------------------------------------------------

_WORKER: dict = {}


def _worker_init(field_json, curves_json, threshold, cache_items):
    K = field_from_json(field_json)
    curves = [curve_from_json(c) for c in curves_json]
    _WORKER["K"] = K
    _WORKER["curves"] = curves
    _WORKER["keys"] = [(field_json, c["ainvs"]) for c in curves_json]
    _WORKER["threshold"] = threshold
    _WORKER["cache"] = dict(cache_items)


def _trace_block(block):
    K = _WORKER["K"]
    curves = _WORKER["curves"]
    threshold = _WORKER["threshold"]
    cache = _WORKER["cache"]
    out = []
    for p, idx in block:
        prime = decompose_prime(K, p)[idx]
        traces = []
        for E, (fj, aj) in zip(curves, _WORKER["keys"]):
            key = trace_key(fj, aj, prime)
            t = cache.get(key)
            if t is None:
                ld = count_points(reduce_at(E, prime), naive_threshold=threshold)
                t = ld.trace
            traces.append((key, t))
        out.append((p, idx, prime.norm, traces))
    return out


def _iter_traced_primes(K, S, B, degree_one, curves, cfg: DecisionConfig, cache):
    """Yield (prime, [trace, ...]) in stream order, sharded when cfg.jobs > 1."""
    field_json = field_to_json(K)
    curves_json = [curve_to_json(E) for E in curves]
    keys = [(field_json, c["ainvs"]) for c in curves_json]
    stream = test_primes(K, S, B, degree_one)
    if cfg.jobs <= 1:
        for prime in stream:
            traces = []
            for E, (fj, aj) in zip(curves, keys):
                key = trace_key(fj, aj, prime)
                t = cache.get(key)
                if t is None:
                    ld = count_points(reduce_at(E, prime),
                                      naive_threshold=cfg.naive_threshold)
                    t = ld.trace
                    cache.put(key, t)
                traces.append(t)
            yield prime, traces
        return

    def blocks(size=768):
        buf = []
        for prime in stream:
            buf.append((prime.p, prime.index))
            if len(buf) >= size:
                yield buf
                buf = []
        if buf:
            yield buf

    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(cfg.jobs, initializer=_worker_init,
                  initargs=(field_json, curves_json, cfg.naive_threshold,
                            list(cache.data.items()))) as pool:
        for results in pool.imap(_trace_block, blocks()):
            for p, idx, _norm, traces in results:
                prime = decompose_prime(K, p)[idx]
                vals = []
                for key, t in traces:
                    cache.put(key, t)
                    vals.append(t)
                yield prime, vals


# -- isogeny decision ------------------------------------------------------------


def select_ell(S) -> int:
    """Smallest rational prime coprime to the residue characteristics of S."""
    chars = {prime.p for prime in S}
    for ell in sieve_primes(200):
        if ell not in chars:
            return ell
    raise AssertionError("no admissible ell below 200")


def isogenous_over_residue(ld1: LocalData, ld2: LocalData) -> bool:
    """Curves over a common finite field are isogenous iff their counts agree."""
    if ld1.q != ld2.q:
        raise ValueError("local data over different fields")
    return ld1.count == ld2.count


def _prime_sort_key(prime: PrimeIdeal):
    return (prime.p, prime.index)


def _shortcut_witness(E1, E2, K, exclude, cfg, cache):
    """Cheap scan for a small prime with differing counts (diagnostic witness)."""
    for p in sieve_primes(50):
        if p in exclude:
            continue
        prime = decompose_prime(K, p)[0]
        try:
            c1 = count_points(reduce_at(E1, prime),
                              naive_threshold=cfg.naive_threshold)
            c2 = count_points(reduce_at(E2, prime),
                              naive_threshold=cfg.naive_threshold)
        except BadReductionError:
            continue
        if c1.count != c2.count:
            return prime
    return None


def decide_isogenous(E1: WeierstrassCurve, E2: WeierstrassCurve,
                     cfg: DecisionConfig | None = None) -> Verdict:
    """Prove or refute isogeny of two curves over their common number field."""
    cfg = cfg or DecisionConfig()
    K = E1.field
    if E2.field != K:
        raise ValueError("curves must live over the same field")
    if K.degree > 4:
        raise FieldTowerError("field tower too large")
    if E1.is_singular() or E2.is_singular():
        raise ValueError("singular curve")
    params = {
        "kind": "isogeny",
        "field": field_to_json(K),
        "curves": [ainvs_to_json(E1), ainvs_to_json(E2)],
        **cfg.params_echo(),
    }

    if K.degree == 1:
        W1, W2 = minimal_model_q(E1), minimal_model_q(E2)
        S1, S2 = bad_primes(W1), bad_primes(W2)
        if {s.p for s in S1} != {s.p for s in S2}:
            cache = cfg.cache()
            wit = _shortcut_witness(W1, W2, K,
                                    {s.p for s in S1} | {s.p for s in S2},
                                    cfg, cache)
            cache.close()
            dg = _Digest(params)
            return Verdict(
                kind="isogeny", outcome=NOT_ISOGENOUS,
                reason="bad reduction sets differ",
                witness=wit, bound=None, ell=None, n_value=None,
                digest_final=dg.final(), digest_count=0,
                entries=[] if cfg.evidence == "full" else None,
                params=params,
                extras={"bad_sets": [sorted(s.p for s in S1),
                                     sorted(s.p for s in S2)]},
            )
    else:
        W1, W2 = E1, E2
        S1, S2 = bad_primes(W1, K), bad_primes(W2, K)

    S = sorted(set(S1) | set(S2), key=_prime_sort_key)
    ell = cfg.ell_override or select_ell(S)
    if any(prime.p == ell for prime in S):
        raise ValueError("ell must be coprime to the bad reduction set")
    n_value = gl_order(1, ell) ** 2
    report = compute_bounds(K, S, n_value, grh=cfg.grh, c_u=cfg.c_u,
                            ceiling=cfg.ceiling, enforce_ceiling=True)
    params.update({"ell": ell, "n_value": n_value,
                   "S": [prime.key() for prime in S],
                   "effective_B": report.effective_B})

    cache = cfg.cache()
    dg = _Digest(params)
    witness = None
    try:
        for prime, (t1, t2) in _iter_traced_primes(
                K, S, report.effective_B, report.degree_one_allowed,
                [W1, W2], cfg, cache):
            dg.push({"n": prime.norm, "p": prime.p, "i": prime.index,
                     "t1": t1, "t2": t2})
            if t1 != t2:
                witness = prime
                break
    finally:
        cache.close()
    outcome = NOT_ISOGENOUS if witness else ISOGENOUS
    return Verdict(
        kind="isogeny", outcome=outcome,
        reason="trace mismatch" if witness else None,
        witness=witness, bound=report, ell=ell, n_value=n_value,
        digest_final=dg.final(), digest_count=dg.count,
        entries=dg.entries if cfg.evidence == "full" else None,
        params=params,
    )


def decide_isogenous_general(X, Y, K: NumberField, g: int,
                             local_isogeny_test=None,
                             cfg: DecisionConfig | None = None):
    """Decision loop for g-dimensional abelian varieties.

    Only g = 1 has a built-in local tester (point counts); for g >= 2 supply
    local_isogeny_test(X, Y, prime) -> bool, which must compare the full
    characteristic polynomial of Frobenius, not just the trace.
    """
    if g == 1 and local_isogeny_test is None:
        return decide_isogenous(X, Y, cfg)
    if local_isogeny_test is None:
        raise NotImplementedError(
            "no built-in local isogeny tester for dimension >= 2")
    cfg = cfg or DecisionConfig()
    SX = bad_primes(X, K) if hasattr(X, "ainvs") else []
    SY = bad_primes(Y, K) if hasattr(Y, "ainvs") else []
    S = sorted(set(SX) | set(SY), key=_prime_sort_key)
    ell = cfg.ell_override or select_ell(S)
    n_value = gl_order(g, ell) ** 2
    report = compute_bounds(K, S, n_value, grh=cfg.grh, c_u=cfg.c_u,
                            ceiling=cfg.ceiling, enforce_ceiling=True)
    for prime in test_primes(K, S, report.effective_B, report.degree_one_allowed):
        if not local_isogeny_test(X, Y, prime):
            return NOT_ISOGENOUS, prime
    return ISOGENOUS, None


# -- complex multiplication ------------------------------------------------------


def find_ordinary_prime(E: WeierstrassCurve, cfg: DecisionConfig | None = None,
                        cache: TraceCache | None = None):
    """First prime (by norm) of good ordinary reduction, or None within the bound.

    The stop bound is the Chebotarev bound for degree-2 extensions of Q
    unramified outside the primes ramified in the base field.
    """
    cfg = cfg or DecisionConfig()
    K = E.field
    Q = make_field([])
    Sram = [decompose_prime(Q, p)[0] for p in sorted(ramified_rational_primes(K))]
    report = compute_bounds(Q, Sram, 2, grh=cfg.grh, c_u=cfg.c_u,
                            ceiling=cfg.ceiling, enforce_ceiling=True)
    B = report.effective_B
    own_cache = cache is None
    cache = cache or cfg.cache()
    fj = field_to_json(K)
    if K.degree == 1:
        E = minimal_model_q(E)
        bad = {prime.p for prime in bad_primes(E)}
    else:
        bad = None
    aj = ainvs_to_json(E)
    try:
        norm_cap = B * B if K.degree > 1 else B
        for prime in test_primes(K, [], norm_cap, degree_one_only=False):
            if prime.p > B:
                continue
            if bad is not None:
                if prime.p in bad:
                    continue
            elif not good_reduction_at(E, prime):
                continue
            key = trace_key(fj, aj, prime)
            t = cache.get(key)
            if t is None:
                ld = count_points(reduce_at(E, prime),
                                  naive_threshold=cfg.naive_threshold)
                cache.put(key, ld.trace)
            else:
                ld = LocalData(q=prime.norm, p=prime.p, f=prime.f,
                               count=prime.norm + 1 - t)
            if not ld.supersingular:
                return prime, ld, report
    finally:
        if own_cache:
            cache.close()
    return None, None, report


def candidate_cm_field(ld: LocalData) -> QuadImagField:
    """Fraction field of Z[Frobenius] at an ordinary prime."""
    return QuadImagField(frobenius_cm_field(ld))


def classify_prime(ld: LocalData, F: QuadImagField, p: int) -> bool:
    """Local CM test: supersingular with F inert/ramified, or ordinary with
    Frobenius field F and F split."""
    sym = kronecker(F.disc, p)
    if ld.supersingular:
        return sym in (0, -1)
    return ld.frobenius_disc == F.disc and sym == 1


def _is_egr(E: WeierstrassCurve, K: NumberField) -> bool:
    return not bad_primes(E, K)


def egr_twist_search(E: WeierstrassCurve, bad_chars):
    """Quadratic twist of E with everywhere good reduction, or None.

    Twists range over products of -1, the given bad residue characteristics,
    and the square roots available in the base field.
    """
    K = E.field
    basis = [K.from_rational(-1)]
    basis += [K.from_rational(p) for p in sorted(bad_chars)]
    basis += [K.sqrt_gen(i) for i in range(len(K.generators))]
    for mask in range(1 << len(basis)):
        d = K.one()
        for i, b in enumerate(basis):
            if mask >> i & 1:
                d = d * b
        Ed = E if mask == 0 else quadratic_twist(E, d)
        if _is_egr(Ed, K):
            return Ed, d
    return None


def _extend_field_gens(gens: list[int], radicand: int) -> list[int]:
    """Generator list for the compositum with Q(sqrt(radicand))."""
    from .arith import fundamental_discriminant, is_square

    if radicand == 1 or is_square(radicand):
        return list(gens)
    d = fundamental_discriminant(radicand)
    if gens:
        current = NumberField(tuple(gens))
        if d in current.quadratic_subfield_discs:
            return list(gens)
    if len(gens) >= 2:
        raise FieldTowerError("field tower too large")
    return list(gens) + [d]


def test_cm_by_field(E: WeierstrassCurve, F: QuadImagField,
                     cfg: DecisionConfig | None = None,
                     base_params: dict | None = None) -> Verdict:
    """Prove or refute CM by F for a curve with everywhere good reduction.

    The bound allows an unramified extension of degree h(F) on top of the
    working field (class-field ceiling), with N = 36 from ell = 2."""
    cfg = cfg or DecisionConfig()
    K = E.field
    if F.disc in (-3, -4):
        raise RootsOfUnityError("roots of unity excluded: disc -3 and -4 "
                                "need the j in {0, 1728} fast path")
    contained = F.disc in K.quadratic_subfield_discs
    # without containment only refutation is sound: a local failure still
    # disproves potential CM by F, but an all-pass run proves nothing
    h = class_number_imag(F)
    n_value = gl_order(1, 2) ** 2  # 36
    report = compute_bounds(K, [], n_value, grh=cfg.grh, c_u=cfg.c_u,
                            ceiling=cfg.ceiling, lift_h=h, enforce_ceiling=True)
    params = {
        "kind": "cm_field",
        "field": field_to_json(K),
        "curves": [ainvs_to_json(E)],
        "disc_f": F.disc,
        "h_value": h,
        "n_value": n_value,
        "effective_B": report.effective_B,
        **cfg.params_echo(),
    }
    if base_params:
        params["pipeline"] = base_params
    cache = cfg.cache()
    dg = _Digest(params)
    witness = None
    try:
        for prime, (t,) in _iter_traced_primes(
                K, [], report.effective_B, report.degree_one_allowed,
                [E], cfg, cache):
            dg.push({"n": prime.norm, "p": prime.p, "i": prime.index, "t": t})
            ld = LocalData(q=prime.norm, p=prime.p, f=prime.f,
                           count=prime.norm + 1 - t)
            if not classify_prime(ld, F, prime.p):
                witness = prime
                break
    finally:
        cache.close()
    if witness is None and not contained:
        raise ValueError("F is not contained in the working field: every prime "
                         "passed, but a positive conclusion needs F inside it")
    outcome = NOT_CM if witness else CM_BY
    return Verdict(
        kind="cm_field", outcome=outcome,
        cm_disc=None if witness else F.disc,
        reason="local obstruction to CM" if witness else None,
        witness=witness, bound=report, ell=2, n_value=n_value, h_value=h,
        digest_final=dg.final(), digest_count=dg.count,
        entries=dg.entries if cfg.evidence == "full" else None,
        params=params,
    )


def decide_cm(E: WeierstrassCurve, cfg: DecisionConfig | None = None) -> Verdict:
    """Decide whether E (over Q or an imaginary quadratic field) has potential CM."""
    cfg = cfg or DecisionConfig()
    K = E.field
    if K.degree > 2 or (K.degree == 2 and K.disc > 0):
        raise ValueError("base field must be Q or an imaginary quadratic field")
    if E.is_singular():
        raise ValueError("singular curve")
    params = {
        "kind": "cm",
        "field": field_to_json(K),
        "curves": [ainvs_to_json(E)],
        **cfg.params_echo(),
    }
    base_verdict = lambda **kw: Verdict(kind="cm", params=params,
                                        digest_final=_Digest(params).final(), **kw)

    jv = E.j
    if jv == 0:
        return base_verdict(outcome=CM_BY, cm_disc=-3, reason="j = 0")
    if jv == 1728:
        return base_verdict(outcome=CM_BY, cm_disc=-4, reason="j = 1728")

    ok, wit = j_is_integral(E, K)
    if not ok:
        return base_verdict(outcome=NOT_CM, witness=wit,
                            reason="j-invariant not integral")

    prime, ld, ord_report = find_ordinary_prime(E, cfg)
    if prime is None:
        return base_verdict(outcome=NOT_CM,
                            reason="no ordinary prime within the search bound",
                            bound=ord_report,
                            extras={"weaker_evidence": True})
    F = candidate_cm_field(ld)
    pipeline = {"ordinary_prime": prime.key(), "ordinary_trace": ld.trace,
                "candidate_disc": F.disc}
    if F.disc in (-3, -4):
        return base_verdict(outcome=INCONCLUSIVE,
                            reason="candidate field has extra roots of unity",
                            extras=pipeline)

    E_work = minimal_model_q(E) if K.degree == 1 else E
    bad = bad_primes(E_work, K)
    chars = sorted({b.p for b in bad})
    n_rad = 1
    for p in chars:
        n_rad *= p
    pipeline["bad_characteristics"] = chars
    try:
        k1_gens = _extend_field_gens(list(K.generators), n_rad)
        kw_gens = _extend_field_gens(k1_gens, F.disc)
    except FieldTowerError:
        return base_verdict(outcome=INCONCLUSIVE, reason="field tower too large",
                            extras=pipeline)
    # the twist search runs over the full working field: the repairing twist
    # can need square roots from both adjoined directions at once
    Kw = make_field(kw_gens)
    Ew = base_change(E_work, Kw)
    found = egr_twist_search(Ew, chars)
    if found is None:
        return base_verdict(outcome=INCONCLUSIVE,
                            reason="no everywhere-good-reduction twist found",
                            extras=pipeline)
    E_twist, d = found
    pipeline.update({
        "k1_generators": k1_gens,
        "work_generators": kw_gens,
        "twist": [[c.numerator, c.denominator] for c in d.coords],
    })
    inner = test_cm_by_field(E_twist, F, cfg, base_params=params)
    inner.kind = "cm"
    inner.params = {**params, "inner": inner.params}
    inner.extras = {**pipeline, **inner.extras}
    return inner


# -- certificate verification ----------------------------------------------------


def verify_certificate(cert: dict, curves_json: list,
                       cfg: DecisionConfig | None = None):
    """Replay a certificate; (accepted, detail).  Deterministic."""
    cfg = cfg or DecisionConfig()
    if cert.get("format") != "isogcm-cert-v1":
        return False, {"error": "unknown certificate format"}
    params = cert.get("params", {})
    for key, val in cfg.params_echo().items():
        if key in params and params[key] != val:
            return False, {"error": "parameter mismatch", "param": key,
                           "certificate": params[key], "config": val}
    if [c["ainvs"] for c in curves_json] != params.get("curves"):
        return False, {"error": "curve mismatch"}
    if curves_json and curves_json[0]["field"] != params.get("field"):
        return False, {"error": "field mismatch"}

    kind = cert["kind"]
    replay_cfg = DecisionConfig(
        grh=params.get("grh", True), c_u=Fraction(params.get("c_u", "40")),
        ell_override=params.get("ell_override"),
        ceiling=params.get("ceiling", DEFAULT_CEILING),
        jobs=cfg.jobs, cache_path=cfg.cache_path,
        naive_threshold=params.get("naive_threshold", 5000),
        evidence="full" if cert["digest"].get("entries") is not None else "digest",
    )
    curves = [curve_from_json(c) for c in curves_json]
    if kind == "isogeny":
        fresh = decide_isogenous(curves[0], curves[1], replay_cfg)
    elif kind == "cm":
        fresh = decide_cm(curves[0], replay_cfg)
    elif kind == "cm_field":
        fresh = test_cm_by_field(curves[0], QuadImagField(params["disc_f"]),
                                 replay_cfg)
    else:
        return False, {"error": f"unknown kind {kind}"}

    fresh_dict = fresh.to_json_dict()
    mism = _first_divergence(cert, fresh_dict)
    if mism is None:
        return True, {"replayed": True}
    return False, mism


def _first_divergence(cert: dict, fresh: dict):
    for fieldname in ("outcome", "cm_disc", "witness", "ell", "n_value", "h_value"):
        if cert.get(fieldname) != fresh.get(fieldname):
            return {"error": "verdict mismatch", "field": fieldname,
                    "certificate": cert.get(fieldname),
                    "recomputed": fresh.get(fieldname)}
    ce, fe = cert["digest"].get("entries"), fresh["digest"].get("entries")
    if ce is not None and fe is not None:
        for i, (a, b) in enumerate(zip(ce, fe)):
            if a != b:
                return {"error": "evidence mismatch", "index": i,
                        "certificate": a, "recomputed": b}
        if len(ce) != len(fe):
            return {"error": "evidence length mismatch",
                    "certificate": len(ce), "recomputed": len(fe)}
    if cert["digest"]["final"] != fresh["digest"]["final"]:
        return {"error": "digest mismatch",
                "certificate": cert["digest"]["final"],
                "recomputed": fresh["digest"]["final"]}
    return None
