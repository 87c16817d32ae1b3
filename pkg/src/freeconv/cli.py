"""Command-line verification harness.

Exit codes: 0 success / identity verified, 1 identity violated (residual
printed), 2 usage or parse error, 3 domain error (zero-variance strip,
non-invertible series, and friends).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import docs
from .coeffs import ExactDivisionError, RingMismatchError, formal_t
from .convolutions import (
    boolean_convolve,
    boolean_power,
    free_convolve,
    free_power,
    monotone_convolve,
    two_state_convolve,
    two_state_power,
)
from .docs import DocumentError
from .evolution import (
    CATALOG,
    belinschi_nica,
    bercovici_pata,
    bercovici_pata_inverse,
    phi_map,
    phi_two,
    strip,
    subordination,
    subordination_inverse,
    triple_from_semigroup,
    two_state_semigroup,
    maassen_semigroup,
    verify,
)
from .functionals import (
    CanonicalTriple,
    JacobiDepthError,
    MomentFunctional,
    NoJacobiRepresentationError,
    TwoStatePair,
    ZeroVarianceError,
    jacobi_from_moments,
)
from .multivariate import NC_CATALOG, nc_verify
from .oracle import (
    boolean_cumulants_oracle,
    enumerate_interval,
    enumerate_nc,
    free_cumulants_oracle,
)
from .series import CompositionDomainError, NotInvertibleError

DOMAIN_ERRORS = (ZeroVarianceError, NoJacobiRepresentationError,
                 JacobiDepthError, NotInvertibleError, CompositionDomainError,
                 ExactDivisionError, RingMismatchError, ZeroDivisionError)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _parse_t(text):
    if text == "formal":
        return formal_t()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"bad --t value {text!r} (want p/q or 'formal')")


DEFAULT_ORDER = 10


def _coerce_functional(value, order):
    """To a MomentFunctional; ``order=None`` keeps the document's own.

    Jacobi documents have no intrinsic order and fall back to the default.
    """
    if order is None and not isinstance(value, MomentFunctional):
        order = DEFAULT_ORDER
    return docs.as_functional(value, order)


def _load_functional(path, order):
    return _coerce_functional(docs.decode(docs.load(path)), order)


def _load_raw(path):
    return docs.decode(docs.load(path))


def _emit(doc):
    sys.stdout.write(docs.dumps(doc))


def _emit_functional(mf):
    _emit(docs.encode_functional(mf))


# -- subcommand handlers -------------------------------------------------------


def _cmd_convert(args):
    value = _load_raw(args.file)
    mf = _coerce_functional(value, args.order)
    if args.to == "moments":
        _emit_functional(mf)
    else:
        levels = args.levels if args.levels is not None else mf.order // 2
        _emit(docs.encode_jacobi(jacobi_from_moments(mf, levels)))
    return EXIT_OK


def _cmd_conv(args):
    if args.op == "two-state":
        a, b = _load_raw(args.a), _load_raw(args.b)
        if not (isinstance(a, TwoStatePair) and isinstance(b, TwoStatePair)):
            raise DocumentError("two-state convolution needs pair documents")
        _emit(docs.encode_pair(two_state_convolve(a, b)))
        return EXIT_OK
    a = _load_functional(args.a, args.order)
    b = _load_functional(args.b, args.order)
    op = {"free": free_convolve, "boolean": boolean_convolve,
          "monotone": monotone_convolve}[args.op]
    _emit_functional(op(a, b))
    return EXIT_OK


def _cmd_power(args):
    t = _parse_t(args.t)
    if args.op == "two-state":
        pair = _load_raw(args.file)
        if not isinstance(pair, TwoStatePair):
            raise DocumentError("two-state power needs a pair document")
        _emit(docs.encode_pair(two_state_power(pair, t)))
        return EXIT_OK
    mf = _load_functional(args.file, args.order)
    op = {"free": free_power, "boolean": boolean_power, "bt": belinschi_nica}
    _emit_functional(op[args.op](mf, t))
    return EXIT_OK


def _cmd_map(args):
    mf = _load_functional(args.file, args.order)
    if args.op == "triple":
        _emit(docs.encode_triple(triple_from_semigroup(mf)))
        return EXIT_OK
    op = {"phi": phi_map, "strip": strip, "bp": bercovici_pata,
          "bp-inv": bercovici_pata_inverse}
    _emit_functional(op[args.op](mf))
    return EXIT_OK


def _cmd_subord(args):
    mu = _load_functional(args.mu, args.order)
    nu = _load_functional(args.nu, args.order)
    if args.inverse:
        out = subordination_inverse(mu, nu)
    elif args.phi2:
        out = phi_two(mu, nu)
    else:
        out = subordination(mu, nu)
    _emit_functional(out)
    return EXIT_OK


def _cmd_semigroup(args):
    t = _parse_t(args.t)

    def load_triple(path):
        value = _load_raw(path)
        if not isinstance(value, CanonicalTriple):
            raise DocumentError(f"{path}: expected a triple document")
        return value

    if args.triple is not None:
        _emit_functional(maassen_semigroup(load_triple(args.triple), t,
                                           args.order))
        return EXIT_OK
    if args.rel is None or args.base is None:
        raise DocumentError("need either --triple, or both --rel and --base")
    rel = load_triple(args.rel)
    base = load_triple(args.base)
    _emit(docs.encode_pair(two_state_semigroup(rel, base, t, args.order)))
    return EXIT_OK


def _print_report(rep, out=None):
    out = sys.stdout if out is None else out
    for c in rep.checks:
        line = f"{'ok  ' if c.ok else 'FAIL'} [{rep.name}] {c.label}"
        out.write(line + "\n")
        if not c.ok and c.detail:
            out.write(f"     residual: {c.detail}\n")
    for note in rep.notes:
        out.write(f"note [{rep.name}] {note}\n")


def _report_doc(rep):
    return {"name": rep.name, "order": rep.order,
            "verified": rep.verified,
            "checks": [{"label": c.label, "ok": c.ok,
                        **({"residual": c.detail} if not c.ok and c.detail
                           else {})}
                       for c in rep.checks],
            "notes": list(rep.notes)}


FAMILY_ALIASES = {"bernoulli": "bernoulli_sym", "semicircle": "semicircular"}

# per-entry parameters exposed as direct flags on `verify`
VERIFY_PARAM_FLAGS = (
    "beta", "gamma", "rho", "beta0", "b", "c", "beta2", "gamma2",
    "b-t", "c-t", "beta-t", "gamma-t", "rho-t",
    "mu", "nu", "nu-prime", "omega", "tau", "p", "a", "t",
)


def _parse_param_value(value):
    if value.endswith(".json") or value.startswith("@"):
        path = value[1:] if value.startswith("@") else value
        return docs.decode(docs.load(path))
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        return FAMILY_ALIASES.get(value, value)  # family name


def _verify_params(args):
    params = {}
    for key, value in args.param or []:
        params[key] = value
    for flag in VERIFY_PARAM_FLAGS:
        key = flag.replace("-", "_")
        value = getattr(args, "p_" + key, None)
        if value is not None:
            params[key] = _parse_param_value(value)
    return params


def _parse_param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, value = text.split("=", 1)
    return key.replace("-", "_"), _parse_param_value(value)


def _cmd_verify(args):
    params = _verify_params(args)
    if args.name == "all":
        names = list(CATALOG) + [f"nc:{n}" for n in NC_CATALOG]
    else:
        names = [args.name]
    reports = []
    for name in names:
        if name.startswith("nc:"):
            reports.append(nc_verify(name[3:], params=params if len(names) == 1
                                     else None,
                                     order=args.order, seed=args.seed))
        else:
            reports.append(verify(name, params=params if len(names) == 1
                                  else None,
                                  order=args.order, seed=args.seed))
    if args.format == "json":
        _emit({"reports": [_report_doc(r) for r in reports],
               "verified": all(r.verified for r in reports)})
    else:
        for rep in reports:
            _print_report(rep)
        total = sum(len(r.checks) for r in reports)
        bad = sum(1 for r in reports for c in r.checks if not c.ok)
        sys.stdout.write(
            f"{total - bad}/{total} checks verified across "
            f"{len(reports)} identities\n")
    return EXIT_OK if all(r.verified for r in reports) else EXIT_VIOLATED


def _cmd_nc(args):
    if args.name == "all":
        names = list(NC_CATALOG)
    else:
        names = [args.name]
    reports = [nc_verify(n, params={"d": args.d} if args.d else None,
                         order=args.order, seed=args.seed) for n in names]
    if args.format == "json":
        _emit({"reports": [_report_doc(r) for r in reports],
               "verified": all(r.verified for r in reports)})
    else:
        for rep in reports:
            _print_report(rep)
    return EXIT_OK if all(r.verified for r in reports) else EXIT_VIOLATED


def _cmd_oracle(args):
    if args.what == "count":
        n = args.n
        parts = enumerate_nc(n) if args.kind == "nc" else enumerate_interval(n)
        _emit({"kind": args.kind, "n": n, "count": len(parts)})
        return EXIT_OK
    mf = _load_functional(args.file, args.order)
    fn = free_cumulants_oracle if args.kind == "free" \
        else boolean_cumulants_oracle
    _emit({"kind": args.kind, "order": mf.order,
           "cumulants": [docs.encode_coeff(c) for c in fn(mf)]})
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="freeconv",
        description="Exact moment-series calculus for free, Boolean, monotone "
                    "and two-state free convolutions, with machine-checked "
                    "identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--order", type=int, default=None,
                       help="truncation order (default: the document's own; "
                            "10 where one is required)")

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("--to", choices=("moments", "jacobi"), required=True)
    p.add_argument("--levels", type=int, default=None,
                   help="Jacobi rows to extract (default order//2)")
    common(p)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_convert)

    p = sub.add_parser("conv", help="convolve two functionals")
    p.add_argument("--op", choices=("free", "boolean", "monotone", "two-state"),
                   required=True)
    common(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=_cmd_conv)

    p = sub.add_parser("power", help="convolution powers (rational or formal t)")
    p.add_argument("--op", choices=("free", "boolean", "two-state", "bt"),
                   required=True)
    p.add_argument("--t", required=True, help="p/q or 'formal'")
    common(p)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_power)

    p = sub.add_parser("map", help="apply Phi, J, B, B^-1 or triple extraction")
    p.add_argument("--op", choices=("phi", "strip", "bp", "bp-inv", "triple"),
                   required=True)
    common(p)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_map)

    p = sub.add_parser("subord", help="subordination distribution mu |> nu")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--inverse", action="store_true",
                       help="solve mu |> nu = lambda for mu (first file is lambda)")
    group.add_argument("--phi2", action="store_true",
                       help="Phi[mu, nu] = B^-1[mu |> nu]")
    common(p)
    p.add_argument("mu")
    p.add_argument("nu")
    p.set_defaults(fn=_cmd_subord)

    p = sub.add_parser("semigroup",
                       help="build semigroup elements from canonical triples")
    p.add_argument("--t", required=True, help="p/q or 'formal'")
    p.add_argument("--triple", help="triple document (single-state)")
    p.add_argument("--rel", help="relative triple document (two-state)")
    p.add_argument("--base", help="base triple document (two-state)")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(fn=_cmd_semigroup)

    p = sub.add_parser("verify", help="machine-check catalog identities")
    p.add_argument("name", help="catalog entry or 'all'",
                   choices=sorted(CATALOG) + [f"nc:{n}" for n in NC_CATALOG]
                   + ["all"])
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--param", action="append", type=_parse_param,
                   metavar="KEY=VALUE",
                   help="override an entry parameter (rational, family name, "
                        "or JSON document path)")
    for flag in VERIFY_PARAM_FLAGS:
        p.add_argument(f"--{flag}", dest="p_" + flag.replace("-", "_"),
                       default=None, help=argparse.SUPPRESS)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("nc", help="multivariate (word-series) identities")
    ncsub = p.add_subparsers(dest="nc_command", required=True)
    q = ncsub.add_parser("verify")
    q.add_argument("name", choices=sorted(NC_CATALOG) + ["all"])
    q.add_argument("--d", type=int, default=None, help="alphabet size")
    q.add_argument("--order", type=int, default=None)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(fn=_cmd_nc)

    p = sub.add_parser("oracle", help="partition-enumeration cross-checks")
    osub = p.add_subparsers(dest="what", required=True)
    q = osub.add_parser("count")
    q.add_argument("kind", choices=("nc", "interval"))
    q.add_argument("n", type=int)
    q.set_defaults(fn=_cmd_oracle)
    q = osub.add_parser("cumulants")
    q.add_argument("--kind", choices=("free", "boolean"), required=True)
    common(q)
    q.add_argument("file")
    q.set_defaults(fn=_cmd_oracle)

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DocumentError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except DOMAIN_ERRORS as e:
        sys.stderr.write(f"domain error: {e}\n")
        return EXIT_DOMAIN
    except (ValueError, FileNotFoundError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
