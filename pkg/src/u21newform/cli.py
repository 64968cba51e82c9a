"""Command-line front end: ``classify``, ``zeta``, ``verify`` and ``eval``.

Settings resolve as command-line flag, then ``U21_*`` environment variable,
then a ``key=value`` config file (``--config``), then the built-in default.
Exit status: 0 all checks pass, 1 some check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import classify as cls
from . import group as grp
from . import induced as ind
from . import symbolic as sym
from .cyclotomic import CycScalar, parse_scalar
from .padic import Context
from .suites import SUITES, run_suite

DEFAULTS = {"p": 3, "M": 24, "terms": 24, "seed": 0, "samples": 100, "out": "reports"}
_TYPES = {"p": int, "M": int, "terms": int, "seed": int, "samples": int, "out": str}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"bad config line: {line!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


def resolve_config(args: argparse.Namespace, environ=None) -> dict:
    """Flags > U21_* environment > config file > defaults."""
    environ = os.environ if environ is None else environ
    filecfg = _read_config(getattr(args, "config", None))
    cfg = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        env = environ.get(f"U21_{key.upper()}")
        if flag is not None:
            raw = flag
        elif env is not None:
            raw = env
        elif key in filecfg:
            raw = filecfg[key]
        else:
            raw = default
        try:
            cfg[key] = _TYPES[key](raw)
        except ValueError:
            raise UsageError(f"invalid value for {key}: {raw!r}") from None
    try:
        Context(cfg["p"], cfg["M"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg


def _rational(text: str | None, what: str):
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be a rational num/den, got {text!r}") from None


def _emit(record: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(record, sort_keys=True))
    else:
        for line in lines:
            print(line)


# -- classify -------------------------------------------------------------------

_CASES = ("unramified-ps", "irred-ps", "steinberg", "ru2", "ru3", "ramified")


def _spec_from_args(args) -> object:
    case = args.case
    if case == "unramified-ps":
        if args.a is None:
            raise UsageError("unramified-ps needs --a")
        return cls.UnramifiedPS(_rational(args.a, "--a"))
    if case == "irred-ps":
        if args.a is None or args.c is None or args.N is None:
            raise UsageError("irred-ps needs --a, --c and --N")
        return cls.IrredPSUnramMu2(_rational(args.a, "--a"), args.c, args.N)
    if case == "steinberg":
        return cls.Steinberg()
    if case == "ru2":
        return cls.RU2(args.c or 0)
    if case == "ru3":
        return cls.RU3(args.c if args.c is not None else 1)
    if case == "ramified":
        if args.N is None:
            raise UsageError("ramified needs --N")
        return cls.RamifiedOrSupercuspidal(args.L or "1", args.N)
    raise UsageError(f"unknown case {case!r}")


def cmd_classify(args, cfg) -> int:
    q = args.q if args.q is not None else cfg["p"]
    spec = _spec_from_args(args)
    try:
        inv = cls.invariants(spec, q)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    ok = sym.divides(inv.L, inv.bound)
    record = {
        "case": args.case,
        "spec": cls.spec_label(spec),
        "q": q,
        "N": inv.N,
        "L": sym.render(inv.L),
        "epsilon": sym.render(inv.epsilon),
        "bound": sym.render(inv.bound),
        "bound_name": inv.bound_name,
        "divides_bound": ok,
    }
    _emit(record, args.json, [f"N={inv.N}", f"L={record['L']}", f"eps={record['epsilon']}", f"bound[{inv.bound_name}]={record['bound']} divides={str(ok).lower()}"])
    return EXIT_OK if ok else EXIT_FAIL


# -- zeta -----------------------------------------------------------------------


def cmd_zeta(args, cfg) -> int:
    terms = args.terms if args.terms is not None else cfg["terms"]
    checks = []
    if args.symbolic:
        c = sym.whittaker_seq(M=terms)
        series = sym.zeta_series(c).coefficients()
        closed = sym.series_expand(sym.zeta_closed(), terms)
        checks.append(("series_vs_closed", all(series.get(i, sym.K(0)) == closed[i] for i in range(terms + 1))))
        lam = sym.lambda_from_nu()
        checks.append(("factorization", sym.zeta_closed(sym.NU, lam, sym.Q) * sym.l_factor(1) == sym.zeta_factored()))
        record = {"mode": "symbolic", "terms": terms, "closed": sym.render(sym.zeta_closed()), "factored": sym.render(sym.zeta_factored())}
    else:
        q = args.q if args.q is not None else cfg["p"]
        nu = _rational(args.nu, "--nu")
        lam = _rational(args.lam, "--lambda")
        a = _rational(args.a, "--a")
        if nu is None or (lam is None and a is None):
            raise UsageError("zeta needs --nu and one of --lambda / --a (or --symbolic)")
        if lam is None:
            lam = sym.lambda_from_nu(nu, a, q)
        record = {"mode": "numeric", "q": q, "terms": terms, "nu": str(nu), "lambda": str(lam.as_expr() if hasattr(lam, "as_expr") else lam)}
        closed = sym.zeta_closed(nu, lam, q)
        c = sym.whittaker_seq(nu, lam, q, terms)
        series = sym.zeta_series(c, q).coefficients()
        expanded = sym.series_expand(closed, terms)
        checks.append(("series_vs_closed", all(series.get(i, sym.K(0)) == expanded[i] for i in range(terms + 1))))
        record["closed"] = sym.render(closed)
        record["with_L_E"] = sym.render(closed * sym.l_factor(1))
        record["series"] = [str(expanded[i].as_expr()) for i in range(terms + 1)]
        if a is not None:
            factored = sym.zeta_factored(nu, a, q)
            record["factored"] = sym.render(factored)
            checks.append(("factored_vs_closed", factored == closed * sym.l_factor(1)))
    record["checks"] = {k: v for k, v in checks}
    ok = all(v for _, v in checks)
    lines = [f"{k}={v}" for k, v in record.items() if k not in ("checks", "series")]
    if "series" in record:
        lines.append("series=" + ", ".join(record["series"]))
    lines += [f"check {k}: {'pass' if v else 'FAIL'}" for k, v in checks]
    _emit(record, args.json, lines)
    return EXIT_OK if ok else EXIT_FAIL


# -- eval -----------------------------------------------------------------------


def _point(ctx: Context, text: str) -> grp.GroupElt:
    text = text.strip()
    if text == "e":
        return grp.identity(ctx)
    if text == "zeta":
        return grp.zeta(ctx, 1)
    if text in ("zeta^-1", "zeta_inv"):
        return grp.zeta(ctx, -1)
    if text.startswith("gamma_"):
        return grp.gamma(ctx, int(text[6:]))
    if text.startswith("t_"):
        return grp.t_n(ctx, int(text[2:]))
    raise UsageError(f"unknown point {text!r} (use e, zeta, zeta^-1, gamma_i, t_i)")


def cmd_eval(args, cfg) -> int:
    ctx = Context(cfg["p"], cfg["M"])
    q = ctx.q
    mode = ind.PARTIAL if args.partial else ind.SUPPORTED
    if args.case == "ru2":
        a, mu2, level = CycScalar.from_rational(Fraction(-1, q)), ind.CharacterMu2.trivial(ctx), 1
        mode = ind.PARTIAL
    elif args.case == "ru3":
        c = args.c if args.c is not None else 1
        a, mu2, level = CycScalar.one(), ind.CharacterMu2(ctx, c, 1, 1), c
    else:
        if args.a is None:
            raise UsageError("custom case needs --a")
        a = parse_scalar(args.a)
        c = args.c or 0
        mu2 = ind.CharacterMu2(ctx, c, args.j1 or 0, args.j2 or 0)
        level = args.N if args.N is not None else max(c, 1)
    try:
        params = ind.InducedParams(ctx, a, mu2, level, mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    f = ind.newform(params)
    ops = {"f": lambda: f, "theta": lambda: ind.apply_theta_prime(f), "prime": lambda: ind.apply_prime(ind.apply_theta_prime(f)),
           "T": lambda: ind.apply_hecke_T(ind.apply_theta_prime(f)), "delta": lambda: ind.apply_delta_theta(f)}
    fn = ops[args.op]()
    point = _point(ctx, args.at)
    value = ind.evaluate(fn, point)
    record = {"case": args.case, "p": ctx.p, "op": args.op, "at": args.at, "translates": len(fn), "value": repr(value)}
    if args.eigen:
        nu, lam = ind.eigen_pair(params)
        record["nu"], record["lambda"] = repr(nu), repr(lam)
    _emit(record, args.json, [f"{k}={v}" for k, v in record.items()])
    return EXIT_OK


# -- verify ---------------------------------------------------------------------


def cmd_verify(args, cfg) -> int:
    suites = args.suite or list(SUITES)
    for s in suites:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    ctx = Context(cfg["p"], cfg["M"])
    started = time.time()
    records = []
    for s in suites:
        records.extend(run_suite(s, ctx, cfg["samples"], cfg["seed"]))
    records.sort(key=lambda r: r["name"])
    failed = [r for r in records if not r["passed"]]
    config_echo = {k: cfg[k] for k in ("p", "M", "samples", "seed", "terms")}
    config_echo["suites"] = sorted(suites)
    header = {
        "kind": "header",
        "config": config_echo,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "wall_clock_s": round(time.time() - started, 3),
    }
    summary = {"kind": "summary", "total": len(records), "passed": len(records) - len(failed), "failed": len(failed)}
    body = [json.dumps(r, sort_keys=True, ensure_ascii=False) for r in records]
    body.append(json.dumps(summary, sort_keys=True))
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    name = f"verify-p{ctx.p}-seed{cfg['seed']}-{'-'.join(sorted(suites))}.jsonl"
    path = out_dir / name
    path.write_text(json.dumps(header, sort_keys=True) + "\n" + "\n".join(body) + "\n", encoding="utf-8")
    for r in records:
        print(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['anchor']}")
    print(f"{summary['passed']}/{summary['total']} passed; report: {path}")
    for r in failed:
        print(f"failed {r['name']}: expected {r['expected']}, computed {r['computed']}", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


# -- entry point ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="residue characteristic (odd prime)")
    common.add_argument("--M", type=int, help="working precision in p-adic digits")
    common.add_argument("--seed", type=int)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--json", action="store_true", help="print the record as JSON")

    parser = _Parser(prog="u21", description="Newform computations for unramified U(2,1).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pc = sub.add_parser("classify", parents=[common], help="conductor, L-factor and epsilon factor")
    pc.add_argument("--case", required=True, choices=_CASES)
    pc.add_argument("--a", help="mu1(p) as num/den")
    pc.add_argument("--c", type=int, help="conductor of mu2")
    pc.add_argument("--N", type=int, help="conductor (input for irred-ps / ramified)")
    pc.add_argument("--L", choices=("1", "L_E"), help="L-factor alternative for the ramified case")
    pc.add_argument("--q", type=int)

    pz = sub.add_parser("zeta", parents=[common], help="zeta integrals from eigenvalues")
    pz.add_argument("--nu")
    pz.add_argument("--lambda", dest="lam")
    pz.add_argument("--a")
    pz.add_argument("--q", type=int)
    pz.add_argument("--terms", type=int)
    pz.add_argument("--symbolic", action="store_true")

    pv = sub.add_parser("verify", parents=[common], help="run verification suites")
    pv.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} (repeatable; default all)")
    pv.add_argument("--samples", type=int)
    pv.add_argument("--out", help="report directory")
    pv.add_argument("--terms", type=int)

    pe = sub.add_parser("eval", parents=[common], help="evaluate an induced-model newform")
    pe.add_argument("--case", choices=("ru2", "ru3", "custom"), default="ru3")
    pe.add_argument("--a", help="mu1(p) as num/den or zeta_m^k")
    pe.add_argument("--c", type=int)
    pe.add_argument("--j1", type=int)
    pe.add_argument("--j2", type=int)
    pe.add_argument("--N", type=int)
    pe.add_argument("--partial", action="store_true")
    pe.add_argument("--op", choices=("f", "theta", "prime", "T", "delta"), default="f")
    pe.add_argument("--at", default="e")
    pe.add_argument("--eigen", action="store_true", help="also compute (nu, lambda)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
        handler = {"classify": cmd_classify, "zeta": cmd_zeta, "verify": cmd_verify, "eval": cmd_eval}[args.command]
        return handler(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
