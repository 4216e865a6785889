"""Command line front end.

The CLI is a thin client of the service layer: it assembles a typed request,
gets a typed response, and formats it. With --server URL the same request
goes over HTTP to a running `ablink serve`; without it the handler is called
in-process. Output is identical either way.

Exit codes: 0 success, 1 usage error, 2 validation error.
"""

import argparse
import json
import sys
from dataclasses import replace

from .params import ParameterError, SystemParams, coerce_setting, load_params, require_valid
from .sweep import KNOWN_METRICS, PRESET_IDS, SweepTable, emit


class _CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # validation here, so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _float_list(text):
    values = [float(x) for x in text.split(",") if x.strip()]
    if not values:
        raise ValueError("empty value list")
    return values


def _name_list(text):
    names = [x.strip() for x in text.split(",") if x.strip()]
    if not names:
        raise ValueError("empty list")
    return names


def _add_params_args(sub):
    sub.add_argument("--config", help="parameter config file (key = value lines)")
    sub.add_argument("--set", action="append", metavar="KEY=VALUE", default=[],
                     help="override one parameter; repeatable")


def _add_output_args(sub, formats=("csv", "json")):
    sub.add_argument("--format", choices=list(formats),
                     help="output format (default: plain text for scalar "
                          "commands, csv for tables)")
    sub.add_argument("--out", help="write output to this file instead of stdout")


def _add_server_arg(sub):
    sub.add_argument("--server", metavar="URL",
                     help="send the request to a running service instead of "
                          "computing in-process")


def build_parser():
    parser = _Parser(prog="ablink",
                     description="Backscatter link analyzer and simulator")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subs.add_parser("analyze", help="closed-form link quantities for one parameter set")
    _add_params_args(p)
    p.add_argument("--g1", type=float, help="first hop gain (default: gamma1_bar)")
    p.add_argument("--g2", type=float, help="second hop gain (default: gamma2_bar)")
    _add_output_args(p)
    _add_server_arg(p)

    p = subs.add_parser("simulate", help="Monte Carlo estimates with standard errors")
    _add_params_args(p)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_output_args(p)
    _add_server_arg(p)

    p = subs.add_parser("sweep", help="walk one parameter and tabulate metrics")
    _add_params_args(p)
    p.add_argument("--axis", required=True,
                   help="parameter to sweep (field name, or omega1_db/omega2_db)")
    p.add_argument("--values", required=True, type=_float_list,
                   help="comma separated axis values")
    p.add_argument("--metrics", type=_name_list, default=["outage_closed"],
                   help="comma separated metric names: " + ", ".join(KNOWN_METRICS))
    p.add_argument("--trials", type=int, default=20000,
                   help="Monte Carlo trials per point, for *_mc/*_mean metrics")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_output_args(p)
    _add_server_arg(p)

    p = subs.add_parser("figure", help="run a figure preset and emit its table")
    p.add_argument("id", choices=list(PRESET_IDS))
    _add_params_args(p)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_output_args(p)
    _add_server_arg(p)

    p = subs.add_parser("balance", help="power split that balances harvest against rate")
    _add_params_args(p)
    p.add_argument("--g1", type=float, help="first hop gain (default: gamma1_bar)")
    p.add_argument("--g2", type=float, help="second hop gain (default: gamma2_bar)")
    _add_output_args(p)
    _add_server_arg(p)

    p = subs.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _build_params(args) -> SystemParams:
    p = load_params(args.config) if args.config else SystemParams()
    for item in args.set:
        key, sep, val = item.partition("=")
        if not sep:
            raise _CliError(1, f"--set expects KEY=VALUE, got {item!r}")
        field, value = coerce_setting(key, val.strip())
        p = replace(p, **{field: value})
    return require_valid(p)


def _post(server, path, payload):
    import httpx

    url = server.rstrip("/") + path
    try:
        resp = httpx.post(url, json=payload, timeout=300.0)
    except httpx.HTTPError as exc:
        raise _CliError(1, f"request to {url} failed: {exc}") from exc
    if resp.status_code == 422:
        raise ParameterError(str(resp.json().get("detail", resp.text)))
    if resp.status_code >= 400:
        raise _CliError(1, f"{url} returned {resp.status_code}: {resp.text}")
    return resp.json()


def _write(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fmt_value(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _scalar_output(data: dict, fmt, out_path):
    """Render a flat or one-level-nested response dict."""
    if fmt == "json":
        _write(json.dumps(data, indent=2) + "\n", out_path)
        return
    flat = {}
    for k, v in data.items():
        if isinstance(v, dict):
            for k2, v2 in v.items():
                flat[f"{k}.{k2}"] = v2
        else:
            flat[k] = v
    if fmt == "csv":
        header = ",".join(flat)
        row = ",".join(_fmt_value(v) for v in flat.values())
        _write(header + "\n" + row + "\n", out_path)
    else:
        lines = [f"{k} {_fmt_value(v)}" for k, v in flat.items()]
        _write("\n".join(lines) + "\n", out_path)


def _table_output(data: dict, fmt, out_path):
    table = SweepTable(columns=data["columns"], rows=data["rows"],
                       params=SystemParams(**data["params"]), seed=data["seed"])
    emit(table, fmt or "csv", out_path)


def _params_payload(params: SystemParams) -> dict:
    from .service.schemas import ParamsModel

    return ParamsModel.from_params(params).model_dump()


def _run_analyze(args):
    from .service import handlers
    from .service.schemas import AnalyzeRequest

    payload = {"params": _params_payload(_build_params(args)),
               "g1": args.g1, "g2": args.g2}
    if args.server:
        data = _post(args.server, "/analyze", payload)
    else:
        data = handlers.analyze(AnalyzeRequest(**payload)).model_dump()
    _scalar_output(data, args.format, args.out)


def _run_simulate(args):
    from .service import handlers
    from .service.schemas import SimulateRequest

    payload = {"params": _params_payload(_build_params(args)),
               "trials": args.trials, "seed": args.seed, "workers": args.workers}
    if args.server:
        data = _post(args.server, "/simulate", payload)
    else:
        data = handlers.simulate(SimulateRequest(**payload)).model_dump()
    _scalar_output(data, args.format, args.out)


def _run_balance(args):
    from .service import handlers
    from .service.schemas import BalanceRequest

    payload = {"params": _params_payload(_build_params(args)),
               "g1": args.g1, "g2": args.g2}
    if args.server:
        data = _post(args.server, "/balance", payload)
    else:
        data = handlers.balance(BalanceRequest(**payload)).model_dump()
    _scalar_output(data, args.format, args.out)


def _run_sweep(args):
    from .service import handlers
    from .service.schemas import SweepRequest

    payload = {"params": _params_payload(_build_params(args)),
               "axis": args.axis, "values": args.values, "metrics": args.metrics,
               "mc_trials": args.trials, "seed": args.seed, "workers": args.workers}
    if args.server:
        data = _post(args.server, "/sweep", payload)
    else:
        data = handlers.sweep(SweepRequest(**payload)).model_dump()
    _table_output(data, args.format, args.out)


def _run_figure(args):
    from .service import handlers
    from .service.schemas import FigureRequest

    payload = {"params": _params_payload(_build_params(args)),
               "trials": args.trials, "seed": args.seed, "workers": args.workers}
    if args.server:
        data = _post(args.server, f"/figures/{args.id}", payload)
    else:
        data = handlers.figure(args.id, FigureRequest(**payload)).model_dump()
    _table_output(data, args.format, args.out)


def _run_serve(args):
    import uvicorn

    uvicorn.run("ablink.service.app:app", host=args.host, port=args.port)


_COMMANDS = {
    "analyze": _run_analyze,
    "simulate": _run_simulate,
    "sweep": _run_sweep,
    "figure": _run_figure,
    "balance": _run_balance,
    "serve": _run_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args)
    except ParameterError as exc:
        sys.stderr.write(f"ablink: validation error: {exc}\n")
        return 2
    except _CliError as exc:
        sys.stderr.write(f"ablink: {exc}\n")
        return exc.code
    return 0
