"""Command line: one JSON object per line on stdout.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 a size
guard was hit.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from fractions import Fraction
from typing import Iterable, TextIO

from . import __version__
from .errors import GuardError, InconclusiveError, OrbitalZetaError
from .expoly import format_fraction
from .fields import parse_element, parse_field, primes_above
from .global_formula import global_series, langlands_value
from .kloosterman import VARIANTS, euler_factor_at_2, kloosterman
from .local import local_data, s_delta
from .oracles import global_ideal_count_oracle, predicted_ideal_counts, tree_orbital_oracle
from .suites import CHECKS, build_tasks, run_tasks
from .zagier import check_rational, completed_lambda, zagier_L

OUTPUT_DIR_ENV = "ORBITALZETA_OUTPUT_DIR"


def _complex(text: str) -> complex:
    t = text.replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise OrbitalZetaError(f"bad complex number {text!r}") from None


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _dump(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(", ", ": "))


def _table(records: list[dict]) -> str:
    keys: list[str] = []
    for r in records:
        for k in r:
            if k not in keys:
                keys.append(k)
    cells = [[_cell(r.get(k, "")) for k in keys] for r in records]
    widths = [max(len(k), *(len(row[i]) for row in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


class Writer:
    """Single writer for every record, JSON lines or a table at the end."""

    def __init__(self, stream: TextIO, fmt: str):
        self.stream = stream
        self.fmt = fmt
        self.buffer: list[dict] = []

    def emit(self, rec: dict) -> None:
        if self.fmt == "table":
            self.buffer.append(rec)
        else:
            self.stream.write(_dump(rec) + "\n")
            self.stream.flush()

    def close(self) -> None:
        if self.fmt == "table" and self.buffer:
            self.stream.write(_table(self.buffer) + "\n")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _delta(args):
    F = parse_field(args.field)
    return F, parse_element(F, args.delta)


def cmd_classify(args, out: Writer) -> int:
    F, delta = _delta(args)
    for q, t, n in local_data(delta):
        out.emit({**q.to_json(), "type": t.value, "chi": t.chi, "n": n, "delta": str(delta)})
    return 0


def cmd_sgamma(args, out: Writer) -> int:
    F, delta = _delta(args)
    S = s_delta(delta)
    out.emit({"field": F.spec(), "delta": str(delta), "S": S.pairs(), "norm": S.norm, "ideal": S.to_json()})
    return 0


def cmd_orbital(args, out: Writer) -> int:
    F, delta = _delta(args)
    series = global_series(delta)
    rec = series.to_json()
    rec["langlands"] = format_fraction(langlands_value(series))
    if args.at_s is not None:
        s = _complex(args.at_s)
        if s.imag == 0 and s.real == int(s.real):
            rec["at_s"] = format_fraction(series.product.at_integer(int(s.real)))
        else:
            rec["at_s"] = _pair(series.product.evaluate(s))
        rec["s"] = args.at_s
    out.emit(rec)
    return 0


def cmd_zagier(args, out: Writer) -> int:
    delta = check_rational(int(args.delta))
    s = _complex(args.s)
    lam = completed_lambda(s, delta)
    lam_r = completed_lambda(1 - s, delta)
    out.emit(
        {
            "delta": delta,
            "s": _pair(s),
            "L": _pair(zagier_L(s, delta)),
            "Lambda": _pair(lam),
            "Lambda_reflected": _pair(lam_r),
            "residual": abs(lam - lam_r) / (1 + abs(lam)),
        }
    )
    return 0


def cmd_kloosterman(args, out: Writer) -> int:
    v = kloosterman(args.a, args.d, args.p, args.k, args.sign, args.variant)
    out.emit(
        {
            "a": args.a,
            "d": args.d,
            "p": args.p,
            "k": args.k,
            "sign": args.sign,
            "variant": args.variant,
            "value": v,
            "normalized": format_fraction(Fraction(v, 4)),
        }
    )
    return 0


def cmd_euler2(args, out: Writer) -> int:
    res = euler_factor_at_2(args.k, _complex(args.s), args.variant, args.N, args.p, args.sign)
    out.emit(res.to_json())
    return 0


def cmd_oracle(args, out: Writer) -> int:
    if args.which == "tree":
        try:
            g = [int(x) for x in args.gamma.split(",")]
        except ValueError:
            raise OrbitalZetaError("--gamma takes four integers a,b,c,d") from None
        if len(g) != 4:
            raise OrbitalZetaError("--gamma takes four integers a,b,c,d")
        res = tree_orbital_oracle(((g[0], g[1]), (g[2], g[3])), args.p, args.R)
        out.emit({"gamma": g, "p": args.p, **res.to_json()})
        return 0
    counts = global_ideal_count_oracle(int(args.delta), args.N)
    rec = {"delta": int(args.delta), "N": args.N, "counts": counts[1:]}
    if args.compare:
        pred = predicted_ideal_counts(int(args.delta), args.N)
        rec["predicted"] = pred[1:]
        rec["ok"] = pred == counts
    out.emit(rec)
    return 0 if rec.get("ok", True) else 1


def _run_checks(checks, field, count, seed, jobs, deltas, bound, out: Writer) -> int:
    failed = passed = 0
    for check in checks:
        worker, tasks = build_tasks(check, field, count, seed, deltas, bound)
        for rec in run_tasks(worker, tasks, jobs):
            out.emit(rec)
            if rec["ok"]:
                passed += 1
            else:
                failed += 1
    out.emit({"summary": ",".join(checks), "field": field, "passed": passed, "failed": failed})
    return 1 if failed else 0


def cmd_verify(args, out: Writer) -> int:
    deltas = [parse_element(parse_field(args.field), d) for d in args.deltas.split(",")] if args.deltas else None
    return _run_checks([args.check], args.field, args.count, args.seed, args.jobs, deltas, args.bound, out)


def read_sweep_config(path: str) -> dict:
    """``key = value`` lines; '#' starts a comment."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    with open(path) as fh:
        parser.read_string("[sweep]\n" + fh.read())
    raw = dict(parser["sweep"])
    cfg = {
        "field": raw.pop("field", "Q"),
        "checks": [c.strip() for c in raw.pop("checks", "fe").split(",") if c.strip()],
        "count": int(raw.pop("count", "100")),
        "seed": int(raw.pop("seed", "0")),
        "jobs": int(raw.pop("jobs", "1")),
        "bound": int(raw.pop("bound", str(10**4))),
        "output": raw.pop("output", None),
        "deltas": None,
    }
    F = parse_field(cfg["field"])
    if "deltas" in raw:
        cfg["deltas"] = [parse_element(F, d) for d in raw.pop("deltas").split(",") if d.strip()]
    if "delta_min" in raw or "delta_max" in raw:
        lo, hi = int(raw.pop("delta_min", "-100")), int(raw.pop("delta_max", "100"))
        from .suites import is_valid_delta

        cfg["deltas"] = (cfg["deltas"] or []) + [F(d) for d in range(lo, hi + 1) if is_valid_delta(F(d))]
    if raw:
        raise OrbitalZetaError(f"unknown config keys: {', '.join(sorted(raw))}")
    for c in cfg["checks"]:
        if c not in CHECKS:
            raise OrbitalZetaError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
    return cfg


def cmd_sweep(args, out: Writer) -> int:
    cfg = read_sweep_config(args.config)
    target = cfg["output"]
    if target is None:
        return _run_checks(cfg["checks"], cfg["field"], cfg["count"], cfg["seed"], cfg["jobs"], cfg["deltas"], cfg["bound"], out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(target):
        target = os.path.join(base, target)
    with open(target, "w") as fh:
        w = Writer(fh, out.fmt)
        code = _run_checks(cfg["checks"], cfg["field"], cfg["count"], cfg["seed"], cfg["jobs"], cfg["deltas"], cfg["bound"], w)
        w.close()
    out.emit({"output": target, "exit": code})
    return code


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbitalzeta", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def field_delta(p):
        p.add_argument("--field", default="Q", help="'Q' or 'Q(sqrt:m)'")
        p.add_argument("--delta", required=True, help="'a' or 'a+b*w'")

    p = sub.add_parser("classify", help="splitting type and n_q at each prime dividing delta")
    field_delta(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sgamma", help="the ideal S_delta")
    field_delta(p)
    p.set_defaults(func=cmd_sgamma)

    p = sub.add_parser("orbital", help="O(s, delta) as an exponential polynomial")
    field_delta(p)
    p.add_argument("--at-s", dest="at_s", default=None)
    p.set_defaults(func=cmd_orbital)

    p = sub.add_parser("zagier", help="L(s, delta) and its completion over Q")
    p.add_argument("--delta", required=True, type=int)
    p.add_argument("--s", required=True, help="complex number such as '0.3+2i'")
    p.set_defaults(func=cmd_zagier)

    p = sub.add_parser("kloosterman", help="the sum K_{a,d}")
    for name in ("a", "d", "p", "k"):
        p.add_argument(f"--{name}", required=True, type=int)
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--variant", choices=VARIANTS, default="with-cc")
    p.set_defaults(func=cmd_kloosterman)

    p = sub.add_parser("euler2", help="2-part of the Kloosterman double series")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--s", default="1")
    p.add_argument("--variant", choices=VARIANTS, default="without-cc")
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--sign", choices=("+", "-"), default="-")
    p.set_defaults(func=cmd_euler2)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="which", required=True)
    t = osub.add_parser("tree")
    t.add_argument("--gamma", required=True, help="a,b,c,d")
    t.add_argument("--p", required=True, type=int)
    t.add_argument("--R", type=int, default=40, help="largest radius to search")
    i = osub.add_parser("ideals")
    i.add_argument("--delta", required=True, type=int)
    i.add_argument("--N", type=int, default=100)
    i.add_argument("--compare", action="store_true", help="also predict the counts")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--field", default="Q")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--bound", type=int, default=10**4, help="ideal norm bound for 'congruence'")
    p.add_argument("--deltas", default=None, help="explicit comma-separated corpus")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run the checks listed in a key=value CONFIG file")
    p.add_argument("config")
    p.set_defaults(func=cmd_sweep)
    return ap


def run_command(argv: Iterable[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Writer(stdout, args.format)
    try:
        code = args.func(args, out)
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        code = 3
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        code = 1
    except (OrbitalZetaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        code = 1
    out.close()
    return code


def main() -> None:
    sys.exit(run_command())
