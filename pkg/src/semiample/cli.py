"""Command-line front end.

Exit status: 0 pass, 1 fail, 2 inconclusive, 64 usage error.  Reports go
to standard output as JSON with sorted keys; diagnostics go to standard
error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import criteria
from .divisors import parse_divisor
from .errors import (BudgetExceeded, ConditionDaggerFails, Inconclusive, ResourceLimit,
                     SemiampleError)
from .fcone import fcone_rays, read_rays_csv, write_rays_csv
from .groupfn import format_rational, is_fnef, parse_function
from .lattice import DEFAULT_BUDGET
from .quadforms import is_balanced, is_ell_balanced, is_weakly_balanced, parse_form
from .verdict import FAIL, INCONCLUSIVE, PASS

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EX_USAGE = 64

CHECK_KINDS = ("fnef", "weakly-balanced", "balanced", "cyclic-semiample", "second",
               "democratic", "new-nef")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EX_USAGE)


def _plain(x):
    """JSON-ready copy with rationals as normalised strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):          # numpy scalar
        return _plain(x.item())
    return str(x) if not isinstance(x, (float, str)) else x


def _dump(obj, out):
    out.write(json.dumps(_plain(obj), sort_keys=True) + "\n")


def _report(criterion, status, witness=None, details=None, certificate_path=None):
    rep = {"criterion": criterion, "verdict": status}
    if witness is not None:
        rep["witness"] = witness
    if details:
        rep["details"] = details
    if certificate_path is not None:
        rep["certificate_path"] = certificate_path
    return rep


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


def _setting(args, config, name, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


def _parse(kind, text):
    try:
        if kind in ("fnef", "new-nef"):
            return parse_function(text)
        if kind in ("weakly-balanced", "balanced"):
            return parse_form(text)
        return parse_divisor(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed literal {text!r}: {exc}") from exc


def cmd_check(args, out):
    config = _load_config(args.config)
    budget = _setting(args, config, "budget", DEFAULT_BUDGET)
    if budget <= 0:
        raise UsageError("budget must be positive")
    obj = _parse(args.kind, args.literal)
    kind = args.kind
    if kind == "fnef":
        v = is_fnef(obj)
        rep = _report(kind, v.status, v.witness, v.details)
    elif kind == "weakly-balanced":
        v = is_weakly_balanced(obj)
        rep = _report(kind, v.status, v.witness, v.details)
    elif kind == "balanced":
        rep = _check_balanced(obj, budget, _setting(args, config, "level", None))
    elif kind == "cyclic-semiample":
        r = criteria.cyclic_semiample_test(obj)
        rep = _report(kind, r.verdict, r.witness, r.details)
    elif kind == "second":
        lambdas = _setting(args, config, "lambdas", None)
        r = criteria.second_criterion_test(obj, [Fraction(x) for x in lambdas] if lambdas else None)
        rep = _report(kind, r.verdict, r.witness, r.details)
    elif kind == "democratic":
        conv = _setting(args, config, "convention", "displayed")
        r = criteria.democratic_test(obj, convention=conv, search=bool(args.search))
        rep = _report(kind, r.verdict, r.witness, r.details)
    else:
        rep = _check_new_nef(obj, args, budget)
    _dump(rep, out)
    return EXIT[rep["verdict"]]


def _check_balanced(Q, budget, level):
    v = is_balanced(Q, budget)
    if v.status != INCONCLUSIVE or not level:
        return _report("balanced", v.status, v.witness, v.details)
    try:
        w = is_ell_balanced(Q, int(level), budget)
    except BudgetExceeded:
        return _report("balanced", INCONCLUSIVE, None, {**v.details, "level": level})
    if w.failed:
        return _report("balanced", FAIL, w.witness, w.details)
    return _report("balanced", INCONCLUSIVE, None, {**v.details, "level": level, "level_passed": True})


def _check_new_nef(f, args, budget):
    if not args.d:
        raise UsageError("new-nef needs --d with the tuple, e.g. --d 1,1,1,1")
    try:
        d = tuple(int(x) for x in args.d.split(","))
    except ValueError as exc:
        raise UsageError(f"malformed tuple {args.d!r}") from exc
    try:
        expr, r = criteria.new_nef_divisor(f, d, assume_cyclic=args.assume_cyclic, budget=budget)
    except ConditionDaggerFails as exc:
        return _report("new-nef", FAIL, exc.vector, {"value": exc.value, "bound": exc.bound})
    except Inconclusive as exc:
        return _report("new-nef", INCONCLUSIVE, None, {"reason": exc.reason})
    details = dict(r.details)
    details["divisor"] = expr.to_json_obj()
    return _report("new-nef", r.verdict, r.witness, details)


def cmd_table(args, out):
    config = _load_config(args.config)
    jobs = _setting(args, config, "jobs", 1)
    conv = _setting(args, config, "convention", "displayed")
    max_n = _setting(args, config, "max_n", criteria.MAX_TABLE_N)
    if args.n < 8:
        raise UsageError("table needs n >= 8")
    rays = read_rays_csv(args.rays) if args.rays else None
    try:
        row = criteria.semiample_test(args.n, jobs=jobs, convention=conv, max_n=max_n, rays=rays)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        if args.json:
            _dump({"n": args.n, "partial": True, "reason": str(exc)}, out)
        return 2
    if args.json:
        obj = row.to_json_obj()
        if args.skip_rays:
            del obj["rays"]
        _dump(obj, out)
    else:
        out.write(" ".join(str(c) for c in row.counts) + "\n")
        if not args.skip_rays:
            for rec in row.records:
                out.write(f"{rec.category}\t{','.join(map(str, rec.ray))}\n")
    return 0


def cmd_rays(args, out):
    if args.n < 5:
        raise UsageError("rays needs n >= 5")
    rays = fcone_rays(args.n)
    if args.out:
        write_rays_csv(rays, args.out)
    out.write(f"{len(rays)}\n")
    return 0


def cmd_certificates(args, out):
    D = _parse("cyclic-semiample", args.literal)
    rep = criteria.cyclic_semiample_test(D)
    if not rep.passed:
        _dump(_report("certificates", FAIL, rep.witness, rep.details), out)
        return 1
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    count = 0
    try:
        for k, (tree, sigma, w, cert) in enumerate(criteria.iter_certificates(D, args.max_n)):
            count += 1
            if args.out:
                with open(os.path.join(args.out, f"tree_{k:06d}.json"), "w") as fh:
                    _dump({"ordering": list(sigma.order), "representative": cert.to_json_obj(),
                           "tree": tree.to_newick(), "weighting": json.loads(w.to_json())}, fh)
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        _dump(_report("certificates", INCONCLUSIVE, None, {"reason": str(exc)}), out)
        return 2
    _dump(_report("certificates", PASS, None, {"count": count}, args.out), out)
    return 0


def build_parser():
    p = _Parser(prog="semiample", description="Semiampleness criteria for symmetric divisors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run one check on a literal")
    c.add_argument("kind", choices=CHECK_KINDS)
    c.add_argument("literal", help="m:v0,... for functions and forms, n:a2,... for divisors")
    c.add_argument("--budget", type=int)
    c.add_argument("--level", type=int, help="l-balanced fallback depth for 'balanced'")
    c.add_argument("--lambda", dest="lambdas", action="append", help="lambda for 'second'")
    c.add_argument("--convention", choices=("displayed", "exact"))
    c.add_argument("--search", action="store_true", help="'democratic': try every lambda")
    c.add_argument("--d", help="'new-nef': comma-separated tuple")
    c.add_argument("--assume-cyclic", action="store_true")
    c.add_argument("--config")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("table", help="classify the extremal rays for n points")
    t.add_argument("n", type=int)
    t.add_argument("--json", action="store_true")
    t.add_argument("--jobs", type=int)
    t.add_argument("--skip-rays", action="store_true", help="omit the per-ray list")
    t.add_argument("--rays", help="read rays from CSV instead of computing them")
    t.add_argument("--convention", choices=("displayed", "exact"))
    t.add_argument("--config")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("rays", help="extremal rays of the symmetric F-cone")
    r.add_argument("n", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rays)

    e = sub.add_parser("certificates", help="boundary representatives of 2D per binary tree")
    e.add_argument("literal")
    e.add_argument("--out")
    e.add_argument("--max-n", type=int, default=criteria.MAX_CERTIFICATE_N)
    e.set_defaults(func=cmd_certificates)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"semiample: {exc}", file=sys.stderr)
        return EX_USAGE
    except SemiampleError as exc:
        print(f"semiample: {exc}", file=sys.stderr)
        return EX_USAGE if isinstance(exc, ValueError) else 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"semiample: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
