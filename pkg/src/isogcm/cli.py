"""Command line front end.

Subcommands: bound, primes, count, isogeny, cm, verify.  All results are JSON
on stdout; logs and errors go to stderr.  Exit codes: 0 positive verdict,
1 negative, 2 inconclusive, 3 malformed input / infeasible bound / error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .chebotarev import (
    DEFAULT_C_U,
    DEFAULT_CEILING,
    BoundInfeasibleError,
    compute_bounds,
    gl_order,
    test_primes,
)
from .decision import (
    DecisionConfig,
    RootsOfUnityError,
    canonical,
    curve_from_json,
    decide_cm,
    decide_isogenous,
    field_from_json,
    test_cm_by_field,
    verify_certificate,
)
from .numberfield import FieldTowerError, QuadImagField, imaginary_quadratic_subfields
from .plocal import decompose_prime
from .pointcount import CacheCorruption, count_points
from .reduction import BadReductionError, reduce_at

CACHE_ENV = "ISOGCM_CACHE"


class InputError(ValueError):
    pass


def _load_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None


def _config_from_args(args) -> DecisionConfig:
    cache = getattr(args, "cache", None) or os.environ.get(CACHE_ENV) or None
    return DecisionConfig(
        grh=not getattr(args, "unconditional", False),
        c_u=Fraction(getattr(args, "c_u", str(DEFAULT_C_U))),
        ell_override=getattr(args, "ell", None),
        ceiling=getattr(args, "ceiling", DEFAULT_CEILING),
        jobs=getattr(args, "jobs", 1),
        cache_path=cache,
        naive_threshold=getattr(args, "naive_threshold", 5000),
        unconditional_ack=getattr(args, "i_understand_huge_bounds", False),
        evidence="full" if getattr(args, "full_evidence", False) else "digest",
    )


def _check_unconditional(cfg: DecisionConfig):
    if not cfg.grh and not cfg.unconditional_ack:
        raise InputError(
            "unconditional bounds are astronomically large; pass "
            "--i-understand-huge-bounds to enumerate anyway")


def _parse_s_spec(K, spec):
    out = []
    for item in spec or []:
        if isinstance(item, int):
            out.extend(decompose_prime(K, item))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            out.append(decompose_prime(K, item[0])[item[1]])
        else:
            raise InputError(f"bad S entry {item!r}")
    return out


def _emit(obj, args) -> None:
    text = obj if isinstance(obj, str) else canonical(obj)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_bound(args) -> int:
    cfg = _config_from_args(args)
    K = field_from_json(_load_json_arg(args.field))
    S = _parse_s_spec(K, _load_json_arg(args.S) if args.S else [])
    report = compute_bounds(K, S, args.N, grh=cfg.grh, c_u=cfg.c_u,
                            ceiling=cfg.ceiling, lift_h=args.lift_h)
    _emit(report.to_json_dict(), args)
    return 0


def cmd_primes(args) -> int:
    cfg = _config_from_args(args)
    K = field_from_json(_load_json_arg(args.field))
    S = _parse_s_spec(K, _load_json_arg(args.S) if args.S else [])
    if args.bound > cfg.ceiling:
        _check_unconditional(cfg)
        print(f"error: bound {args.bound} exceeds ceiling {cfg.ceiling}",
              file=sys.stderr)
        return 3
    for prime in test_primes(K, S, args.bound, args.degree_one):
        print(canonical(prime.key()))
    return 0


def cmd_count(args) -> int:
    cfg = _config_from_args(args)
    E = curve_from_json(_load_json_arg(args.curve))
    K = E.field
    spec = _load_json_arg(args.prime)
    if isinstance(spec, int):
        spec = [spec, 0]
    prime = decompose_prime(K, spec[0])[spec[1]]
    try:
        ld = count_points(reduce_at(E, prime), naive_threshold=cfg.naive_threshold)
    except BadReductionError:
        print(f"error: bad reduction at p={prime.p} index {prime.index}",
              file=sys.stderr)
        return 3
    _emit({
        "prime": prime.key(), "q": ld.q, "count": ld.count, "trace": ld.trace,
        "supersingular": ld.supersingular,
        "frobenius_disc": ld.frobenius_disc,
    }, args)
    return 0


def cmd_isogeny(args) -> int:
    cfg = _config_from_args(args)
    _check_unconditional(cfg)
    c1 = _load_json_arg(args.curve1)
    c2 = _load_json_arg(args.curve2)
    if c1["field"] != c2["field"]:
        raise InputError("curves declare different fields")
    E1, E2 = curve_from_json(c1), curve_from_json(c2)
    verdict = decide_isogenous(E1, E2, cfg)
    _emit(verdict.to_json(), args)
    return verdict.exit_code


def cmd_cm(args) -> int:
    cfg = _config_from_args(args)
    _check_unconditional(cfg)
    E = curve_from_json(_load_json_arg(args.curve))
    if args.field_disc is not None:
        verdict = test_cm_by_field(E, QuadImagField(args.field_disc), cfg)
    elif args.enumerate_subfields:
        last = None
        for F in imaginary_quadratic_subfields(E.field):
            try:
                last = test_cm_by_field(E, F, cfg)
            except RootsOfUnityError:
                continue
            if last.exit_code == 0:
                break
        if last is None:
            raise InputError("no admissible imaginary quadratic subfields")
        verdict = last
    else:
        verdict = decide_cm(E, cfg)
    _emit(verdict.to_json(), args)
    return verdict.exit_code


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    cert = _load_json_arg(args.certificate)
    curves = [_load_json_arg(c) for c in args.curves]
    ok, detail = verify_certificate(cert, curves, cfg)
    _emit({"accepted": ok, "detail": detail}, args)
    return 0 if ok else 1


def _add_common(sub, cache=True):
    sub.add_argument("--unconditional", action="store_true",
                     help="use the unconditional bound instead of GRH")
    sub.add_argument("--i-understand-huge-bounds", action="store_true",
                     dest="i_understand_huge_bounds")
    sub.add_argument("--c-u", dest="c_u", default=str(DEFAULT_C_U),
                     help="exponent for the unconditional bound (default 40)")
    sub.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--naive-threshold", dest="naive_threshold", type=int,
                     default=5000)
    sub.add_argument("--ell", type=int, default=None)
    sub.add_argument("--full-evidence", dest="full_evidence",
                     action="store_true",
                     help="store per-prime entries in the certificate")
    sub.add_argument("--out", default=None)
    if cache:
        sub.add_argument("--cache", default=None,
                         help=f"trace cache path (or ${CACHE_ENV})")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="isogcm",
        description="decide isogeny and complex multiplication for elliptic "
                    "curves over multiquadratic number fields")
    sp = ap.add_subparsers(dest="command", required=True)

    b = sp.add_parser("bound", help="evaluate the effective bounds only")
    b.add_argument("--field", required=True, help='field JSON, e.g. {"generators":[-7]}')
    b.add_argument("--S", default=None, help="JSON list of rational primes or [p, index]")
    b.add_argument("--N", type=int, required=True)
    b.add_argument("--lift-h", dest="lift_h", type=int, default=1)
    _add_common(b, cache=False)
    b.set_defaults(fn=cmd_bound)

    pr = sp.add_parser("primes", help="stream the test primes")
    pr.add_argument("--field", required=True)
    pr.add_argument("--S", default=None)
    pr.add_argument("--bound", type=int, required=True)
    pr.add_argument("--degree-one", dest="degree_one", action="store_true")
    _add_common(pr, cache=False)
    pr.set_defaults(fn=cmd_primes)

    ct = sp.add_parser("count", help="count points on one reduction")
    ct.add_argument("--curve", required=True)
    ct.add_argument("--prime", required=True, help="p or [p, index] JSON")
    _add_common(ct)
    ct.set_defaults(fn=cmd_count)

    iso = sp.add_parser("isogeny", help="decide isogeny of two curves")
    iso.add_argument("--curve1", required=True)
    iso.add_argument("--curve2", required=True)
    _add_common(iso)
    iso.set_defaults(fn=cmd_isogeny)

    cm = sp.add_parser("cm", help="decide complex multiplication")
    cm.add_argument("--curve", required=True)
    cm.add_argument("--field-disc", dest="field_disc", type=int, default=None,
                    help="test CM by this fundamental discriminant directly")
    cm.add_argument("--enumerate-subfields", dest="enumerate_subfields",
                    action="store_true",
                    help="test every imaginary quadratic subfield of the base")
    _add_common(cm)
    cm.set_defaults(fn=cmd_cm)

    vf = sp.add_parser("verify", help="replay and check a certificate")
    vf.add_argument("--certificate", required=True)
    vf.add_argument("--curves", nargs="*", default=[])
    _add_common(vf)
    vf.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, json.JSONDecodeError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (BoundInfeasibleError, FieldTowerError, RootsOfUnityError,
            CacheCorruption, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
