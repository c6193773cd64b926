"""Command-line interface; a thin client over the service handlers.

Every subcommand builds the same request models the HTTP API consumes,
calls the shared handler, and formats the response.  Parameter values may
come from a key-value config file (--config PATH, lines like `J=-1.85`);
explicit flags override config entries.  Exit codes: 0 success, 2 usage
error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError
from .findings import write_findings
from .service import handlers
from .service import schemas as s

USAGE_EXIT = 2
DOMAIN_EXIT = 3
IO_EXIT = 4

_PARAM_COMMANDS = ("solve", "nonsym", "verify", "free-energy", "entropy", "oracle")


class UsageError(Exception):
    pass


def _add_param_flags(p: argparse.ArgumentParser, with_k: bool = True):
    p.add_argument("--J", type=float, help="nearest-neighbour coupling")
    p.add_argument("--Jp", type=float, help="prolonged pair coupling")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--T", type=float, help="temperature (k_B = 1)")
    group.add_argument("--beta", type=float, help="inverse temperature")
    if with_k:
        p.add_argument("--k", type=int, help="branching order (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivgibbs",
        description="Gibbs measures of the Ising-Vannimenus model on Cayley trees",
    )
    parser.add_argument("--precision", type=int, default=9,
                        help="significant digits for numeric output (default 9)")
    parser.add_argument("--config", help="key-value file (KEY=VALUE per line) "
                                         "providing defaults; flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="symmetric fixed points")
    _add_param_flags(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("nonsym", help="non-symmetric solutions (k=2 only)")
    _add_param_flags(p, with_k=False)
    p.add_argument("--grid", type=int, default=60, help="multistart grid per axis")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="oracle compatibility and telescoping per root")
    _add_param_flags(p)
    p.add_argument("--n", type=int, help="tree depth")
    p.add_argument("--json", action="store_true")

    for name in ("free-energy", "entropy"):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')} per branch")
        _add_param_flags(p)
        p.add_argument("--root", type=int, help="branch index 1..3 (ascending roots)")
        p.add_argument("--h", type=float, help="explicit boundary value instead of a root")
        p.add_argument("--T-range", dest="t_range", help="curve grid a:b:steps")
        p.add_argument("--out", help="write curve CSV here instead of stdout")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("scan", help="grid sweep with CSV/JSON output")
    p.add_argument("--axis", action="append", default=[], metavar="NAME=a:b:n",
                   help="swept axis, repeatable (J, Jp or T)")
    p.add_argument("--J", type=float)
    p.add_argument("--Jp", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("oracle", help="brute-force report on a small tree")
    _add_param_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--field", default="zero", help="zero or ti-root=<i>")

    p = sub.add_parser("findings", help="emit the documented-discrepancy report")
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _load_config(path: str) -> dict[str, str]:
    text = Path(path).read_text(encoding="utf-8")
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected KEY=VALUE, got {raw!r}")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def _merged(args, config: dict[str, str], key: str, cast, required: bool = False):
    """Flag value if given, else config entry, else None (or usage error)."""
    value = getattr(args, key, None)
    if value is None and key in config:
        try:
            value = cast(config[key])
        except ValueError:
            raise UsageError(f"config entry {key}={config[key]!r} is not "
                             f"a valid {cast.__name__}") from None
    if value is None and required:
        raise UsageError(f"missing required parameter --{key} "
                         f"(flag or config entry)")
    return value


def _params_in(args, config) -> s.ParamsIn:
    j = _merged(args, config, "J", float, required=True)
    jp = _merged(args, config, "Jp", float, required=True)
    t = getattr(args, "T", None)
    beta = getattr(args, "beta", None)
    if t is None and beta is None:
        t = _merged(args, config, "T", float)
        beta = _merged(args, config, "beta", float)
        if t is not None and beta is not None:
            raise UsageError("config supplies both T and beta; keep one")
    if (t is None) == (beta is None):
        raise UsageError("exactly one of --T and --beta is required "
                         "(flag or config entry)")
    k = _merged(args, config, "k", int) if hasattr(args, "k") else None
    return s.ParamsIn(J=j, Jp=jp, T=t, beta=beta, k=2 if k is None else k)


def _fmt(value, precision: int) -> str:
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def _emit_json(model) -> None:
    print(json.dumps(model.model_dump(), indent=1))


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_solve(args, config, precision):
    resp = handlers.solve(_params_in(args, config))
    if args.json:
        _emit_json(resp)
        return
    print(f"{len(resp.roots)} symmetric root(s) at J={resp.params.J} Jp={resp.params.Jp}")
    for i, r in enumerate(resp.roots, 1):
        print(f"  u{i} = {_fmt(r.u, precision)}  h = {_fmt(r.h, precision)}  "
              f"residual = {_fmt(r.residual, 2)}  {r.stability}")
    cmp_ = resp.prop51
    print(f"published-criterion prediction: {cmp_.prediction}  "
          f"empirical: {cmp_.empirical}  agree: {cmp_.agree}")


def _cmd_nonsym(args, config, precision):
    resp = handlers.nonsym(_params_in(args, config), grid=args.grid)
    if args.json:
        _emit_json(resp)
        return
    if not resp.nonsym:
        print("no admissible non-symmetric solutions found")
        return
    for c in resp.nonsym:
        print(f"  x = {_fmt(c.x, precision)}  m = {_fmt(c.m, precision)}  "
              f"t = {_fmt(c.t, precision)}  residual = {_fmt(c.residual, 2)}")


def _cmd_verify(args, config, precision):
    base = _params_in(args, config)
    n = _merged(args, config, "n", int, required=True)
    resp = handlers.verify(s.VerifyRequest(**base.model_dump(), n=n))
    if args.json:
        _emit_json(resp)
        return
    print(f"verification at n={resp.n} for {len(resp.reports)} root(s)")
    for r in resp.reports:
        print(f"  u = {_fmt(r.u, precision)}  Z_n = {_fmt(r.Z_n, precision)}  "
              f"compat = {_fmt(r.compat_max_error, 3)}  "
              f"telescoping = {_fmt(r.telescoping_gap, 3)}  "
              f"sectors = {_fmt(r.sector_spread, 3)}")


def _cmd_thermo(args, config, precision):
    base = _params_in(args, config)
    req = s.CurveRequest(**base.model_dump(), root=args.root, h=args.h,
                         T_range=args.t_range)
    resp = handlers.thermo(req)
    if args.t_range is not None:
        _write_text(args.out, resp.curve_csv)
        return
    if args.json:
        _emit_json(resp)
        return
    for b in resp.branches:
        print(f"  root {b.root_index}: u = {_fmt(b.u, precision)}  "
              f"F = {_fmt(b.F, precision)}  S = {_fmt(b.S_numeric, precision)}  "
              f"S_paper_formula = {_fmt(b.S_paper_formula, precision)}")


def _parse_axis(spec: str) -> s.AxisIn:
    try:
        name, rng = spec.split("=", 1)
        lo, hi, steps = rng.split(":")
        return s.AxisIn(name=name, min=float(lo), max=float(hi), steps=int(steps))
    except ValueError:
        raise DomainError(f"bad axis spec {spec!r}, expected NAME=a:b:n") from None


def _cmd_scan(args, config, precision):
    k = _merged(args, config, "k", int)
    req = s.ScanRequest(
        axes=[_parse_axis(a) for a in args.axis],
        J=_merged(args, config, "J", float),
        Jp=_merged(args, config, "Jp", float),
        T=_merged(args, config, "T", float),
        k=2 if k is None else k,
        format=args.format,
    )
    resp = handlers.scan(req)
    _write_text(args.out, resp.body)


def _cmd_oracle(args, config, precision):
    base = _params_in(args, config)
    n = _merged(args, config, "n", int, required=True)
    req = s.OracleRequest(**base.model_dump(), n=n, field=args.field)
    _emit_json(handlers.oracle(req))


def _cmd_findings(args, config, precision):
    if args.out is None:
        print(json.dumps(handlers.findings(), indent=1))
    else:
        write_findings(args.out)


def _cmd_serve(args, config, precision):
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port)


_COMMANDS = {
    "solve": _cmd_solve,
    "nonsym": _cmd_nonsym,
    "verify": _cmd_verify,
    "free-energy": _cmd_thermo,
    "entropy": _cmd_thermo,
    "scan": _cmd_scan,
    "oracle": _cmd_oracle,
    "findings": _cmd_findings,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
    except OSError as exc:
        print(f"i/o error: cannot read config: {exc}", file=sys.stderr)
        return IO_EXIT
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        _COMMANDS[args.command](args, config, args.precision)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except ValueError as exc:
        # pydantic validation failures carry usage semantics
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
