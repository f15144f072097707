"""``extremal`` command line.

Exit codes: 0 success, 1 a check failed, 2 a budget ran out, 3 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .certified import PrecisionExhausted
from .cf import CFStream, ContinuedFraction, cf_evaluate, cf_from_rational, cf_negate
from .functions import FunctionContext, f_total_eval, support_report
from .harness import (
    ConfigError,
    ExperimentConfig,
    KhinchinRule,
    WitnessError,
    decimal,
    divergence_experiment,
    khinchin_count,
    load_config_file,
    parse_rational,
    ratstr,
    verify_properties,
)
from .intervals import iset_to_quads
from .khinchin_sets import (
    BudgetExhausted,
    GFamily,
    GParams,
    enumerate_F0,
    enumerate_G0,
    extend_to_line,
)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_CONFIG = 0, 1, 2, 3

# flags shared with ExperimentConfig (dest -> config key)
_SHARED = {
    "m": "m", "k": "k", "phi": "phi", "A": "A", "B": "B", "cap": "cap", "lmax": "l_max",
    "mmax": "m_max", "jrange": "j_range", "growth": "growth", "nmax": "n_max", "out": "out",
    "format": "format", "precision_bits": "precision_bits",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--phi", help="preset (linear, constN) or @file with one value per line")
    p.add_argument("--A", help="rational, e.g. 3 or 7/2")
    p.add_argument("--B", type=int, help="free-element cap (alias of --cap)")
    p.add_argument("--cap", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--jrange", help="lo:hi")
    p.add_argument("--growth", choices=["log", "sqrt", "linear"])
    p.add_argument("--nmax", type=int)
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--precision-bits", dest="precision_bits", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extremal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="expand, evaluate or negate continued fractions")
    p.add_argument("action", choices=["expand", "evaluate", "negate"])
    p.add_argument("value", help="rational p/q, or [a0; a1, a2, ...] for evaluate/negate")
    _common(p)

    p = sub.add_parser("sets", help="enumerate F0/G0 or extend G to the line")
    p.add_argument("which", choices=["F0", "G0", "extend"])
    _common(p)

    p = sub.add_parser("fn", help="evaluate the built functions or report their support")
    p.add_argument("action", choices=["eval", "support", "build"])
    p.add_argument("x", nargs="*", help="rational points for eval")
    p.add_argument("--points", help="file with one rational per line")
    p.add_argument("--lupto", type=int, default=4, help="levels l serialized by build/support")
    _common(p)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suites", help="comma list of cf,intervals,sets,functions")
    p.add_argument("--samples", type=int)
    p.add_argument("--oracle-samples", dest="oracle_samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--no-timing", action="store_true", help="omit timing (byte-stable output)")
    _common(p)

    p = sub.add_parser("khinchin", help="count solutions of |n alpha - m| < b_n")
    p.add_argument("--alpha", default="sqrt2",
                   help="sqrt2, p/q, or periodic a0;pre;period e.g. 1;;2")
    p.add_argument("--rule", default="inv_n", help="inv_n, half_inv_n, inv_n2, inv_n3")
    _common(p)

    p = sub.add_parser("diverge", help="c_n f_E(n x0) table along a witness")
    p.add_argument("--x0", help="explicit point instead of the constructed witness")
    p.add_argument("--witness", choices=["F", "G"])
    _common(p)
    return parser


def _config(args) -> ExperimentConfig:
    data = load_config_file(args.config) if getattr(args, "config", None) else {}
    for dest, key in _SHARED.items():
        val = getattr(args, dest, None)
        if val is not None:
            data[key] = val
    if getattr(args, "B", None) is not None and getattr(args, "cap", None) is None:
        data["cap"] = args.B
    for extra in ("samples", "oracle_samples", "seed", "suites", "x0", "witness"):
        val = getattr(args, extra, None)
        if val is not None:
            data[extra] = val
    return ExperimentConfig.from_mapping(data)


def _emit(text: str, cfg: ExperimentConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _parse_cf(text: str) -> ContinuedFraction:
    body = text.strip().strip("[]")
    head, _, tail = body.partition(";")
    els = [int(t) for t in tail.replace(",", " ").split()]
    return ContinuedFraction(int(head), tuple(els))


def _cf_json(cf: ContinuedFraction) -> dict:
    return {"a0": cf.a0, "elements": list(cf.elements), "value": ratstr(cf_evaluate(cf)),
            "text": str(cf)}


def cmd_cf(args, cfg) -> int:
    if args.action == "expand":
        out = _cf_json(cf_from_rational(parse_rational(args.value)))
    else:
        text = args.value
        cf = _parse_cf(text) if "[" in text or ";" in text else cf_from_rational(parse_rational(text))
        out = _cf_json(cf if args.action == "evaluate" else cf_negate(cf))
    if cfg.format == "csv":
        _emit(_csv(["a0", "elements", "value"],
                   [[out["a0"], " ".join(map(str, out["elements"])), out["value"]]]), cfg)
    else:
        _emit(_json(out), cfg)
    return EXIT_OK


def cmd_sets(args, cfg) -> int:
    if args.which == "F0":
        es = enumerate_F0(cfg.m, cfg.k, cfg.phi_schedule(), cfg.cap)
        payload, inner = es.to_dict(), es.inner
    elif args.which == "G0":
        es = enumerate_G0(GParams(cfg.A, cfg.k))
        payload, inner = es.to_dict(), es.inner
    else:
        ext = extend_to_line(GFamily(cfg.A), cfg.k, tuple(cfg.j_range))
        comb = ext.combined
        inner = comb.inner
        payload = {"k": cfg.k, "j_range": list(cfg.j_range),
                   "n_of_j": {str(j): n for j, n in sorted(ext.n_of_j.items())},
                   "measure": ratstr(ext.measure), "tail_bound": ratstr(ext.tail_bound),
                   "bound": ratstr(Fraction(3, 2 ** cfg.k)),
                   "bound_ok": ext.upper < Fraction(3, 2 ** cfg.k),
                   "inner_intervals": iset_to_quads(inner)}
    if cfg.format == "csv":
        _emit(_csv(["lo", "hi"], [[ratstr(iv.lo), ratstr(iv.hi)] for iv in inner]), cfg)
    else:
        _emit(_json(payload), cfg)
    return EXIT_OK


def cmd_fn(args, cfg) -> int:
    ctx = FunctionContext(cfg.build_config())
    if args.action == "build":
        _emit(_json(ctx.to_dict(l_upto=args.lupto, m_upto=cfg.m)), cfg)
        return EXIT_OK
    if args.action == "support":
        rep = support_report(ctx, cfg.m_max if cfg.m_max <= 16 else 6, l_upto=args.lupto)
        rows = [{"kind": r.kind, "m": r.m, "built_measure": ratstr(r.built_measure),
                 "unbuilt_bound": ratstr(r.unbuilt_bound), "target": ratstr(Fraction(1, 2 ** r.m)),
                 "ok": r.ok} for r in rep]
        ok = all(r.ok for r in rep)
        if cfg.format == "csv":
            _emit(_csv(list(rows[0]) if rows else [], [list(r.values()) for r in rows]), cfg)
        else:
            _emit(_json({"levels": rows, "ok": ok}), cfg)
        return EXIT_OK if ok else EXIT_FAIL
    pts = list(args.x)
    if args.points:
        with open(args.points) as fh:
            pts += [t for t in fh.read().split() if t]
    rows = []
    for t in pts:
        tv = f_total_eval(parse_rational(t), ctx)
        rows.append({"x": ratstr(tv.x), "f_F": decimal(tv.f_F[0]), "f_G": decimal(tv.f_G[0]),
                     "f_E": decimal(tv.f_E[0]), "error": decimal(tv.error),
                     "terms": [[kind, m, l, ratstr(R)] for kind, m, l, R in tv.terms]})
    if cfg.format == "csv":
        cols = ["x", "f_F", "f_G", "f_E", "error"]
        _emit(_csv(cols, [[r[c] for c in cols] for r in rows]), cfg)
    else:
        _emit(_json({"points": rows}), cfg)
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    report = verify_properties(cfg)
    _emit(report.to_json(timing=not args.no_timing) + "\n", cfg)
    return report.exit_code


def _parse_alpha(text: str) -> CFStream:
    if text == "sqrt2":
        return CFStream.periodic(1, (), (2,))
    if text.startswith("periodic:") or text.count(";") == 2:
        body = text.split(":", 1)[-1]
        a0, pre, per = body.split(";")
        ints = lambda s: tuple(int(t) for t in s.replace(",", " ").split())
        return CFStream.periodic(int(a0), ints(pre), ints(per))
    cf = cf_from_rational(parse_rational(text))
    return CFStream.terminating(cf)


def cmd_khinchin(args, cfg) -> int:
    try:
        rule = KhinchinRule.preset(args.rule)
        alpha = _parse_alpha(args.alpha)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = khinchin_count(alpha, rule, cfg.n_max, bits=cfg.precision_bits)
    if cfg.format == "csv":
        _emit(_csv(["n", "m", "hit", "cumulative"],
                   [[r.n, r.m, str(r.hit).lower(), r.cumulative] for r in rows]), cfg)
    else:
        _emit(_json({"alpha": args.alpha, "rule": rule.name, "n_max": cfg.n_max,
                     "count": rows[-1].cumulative if rows else 0,
                     "hits": [[r.n, r.m] for r in rows if r.hit]}), cfg)
    return EXIT_OK


def cmd_diverge(args, cfg) -> int:
    table = divergence_experiment(cfg)
    if cfg.format == "csv":
        _emit(table.to_csv(), cfg)
    else:
        _emit(_json(table.to_dict()), cfg)
    return EXIT_OK if table.ok else EXIT_FAIL


COMMANDS = {"cf": cmd_cf, "sets": cmd_sets, "fn": cmd_fn, "verify": cmd_verify,
            "khinchin": cmd_khinchin, "diverge": cmd_diverge}

# subcommands whose natural output is a table
_CSV_DEFAULT = {"khinchin", "diverge"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in _CSV_DEFAULT and args.format is None:
            args.format = "csv"
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (WitnessError, PrecisionExhausted) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
