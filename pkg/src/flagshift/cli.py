"""Command line front end.

Three subcommands:

* ``certify``  runs claim certificates and writes a JSON document,
* ``flow``     integrates one of the quadratic flows and writes CSV / summary,
* ``report``   renders previously written JSON documents as a table.

Exit codes: 0 success, 1 failed claims or failed runs, 2 usage and
configuration errors.  Output files are written atomically.  Identical
configuration and seed produce byte-identical output apart from the
``generated_at`` timestamp.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import re
import sys
import tempfile

import numpy as np

from . import dynamics
from .algebra import build_algebra
from .certify import ClaimContext, Tolerances, generic_point, run_claims, CLAIM_IDS
from .errors import ConfigurationError, GenericityError
from .families import flag_shift_family, gaudin_family
from .product import ProductSpace

_ENV_SEED = "FLAGSHIFT_SEED"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _build_space(algebra: str, n: int) -> ProductSpace:
    match = re.fullmatch(r"su(\d+)", algebra)
    if not match:
        raise ConfigurationError(f"unsupported algebra {algebra!r}, expected su<m>")
    return ProductSpace(build_algebra("su", int(match.group(1))), n)


def _default_seed() -> int:
    raw = os.environ.get(_ENV_SEED)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{_ENV_SEED} must be an integer, got {raw!r}")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}")
    if not isinstance(config, dict):
        raise ConfigurationError("config file must hold a JSON object")
    return config


def _pick(flag, config: dict, key: str, fallback):
    """Flag wins over config file, config over the built-in default."""
    if flag is not None:
        return flag
    if key in config:
        return config[key]
    return fallback


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigurationError(f"expected comma separated floats, got {text!r}")


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)) or float(value) == int(value):
        return str(int(value))
    return format(float(value), ".3e")


def _print_claim_table(rows: list[dict], stream) -> None:
    header = f"{'claim':34} {'algebra':8} {'n':>2} {'measured':>12} {'target':>12} {'tol':>9} status"
    print(header, file=stream)
    print("-" * len(header), file=stream)
    for row in rows:
        status = "PASS" if row["pass"] else "FAIL"
        print(
            f"{row['claim_id']:34} {row['algebra']:8} {row['n']:>2} "
            f"{_fmt(row['measured_value']):>12} {_fmt(row['formula_value']):>12} "
            f"{_fmt(row['tolerance']):>9} {status}",
            file=stream,
        )


# -- certify ------------------------------------------------------------------


def _cmd_certify(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    algebra = _pick(args.algebra, config, "algebra", "su2")
    n = int(_pick(args.n, config, "n", 3))
    seed = int(_pick(args.seed, config, "seed", _default_seed()))
    trials = int(_pick(args.trials, config, "trials", 7))
    claims = _pick(args.claims, config, "claims", "all")
    if isinstance(claims, str):
        claims = [c.strip() for c in claims.split(",") if c.strip()]
    tolerances = Tolerances(
        rank_rel=float(_pick(args.tol_rank, config, "tol_rank", 1e-8)),
        bracket_rel=float(_pick(args.tol_bracket, config, "tol_bracket", 1e-9)),
        drift=float(_pick(args.tol_drift, config, "tol_drift", 1e-7)),
    )
    space = _build_space(algebra, n)
    weights = config.get("gaudin_weights")
    ctx = ClaimContext(
        space=space,
        seed=seed,
        trials=trials,
        tolerances=tolerances,
        gaudin_weights=tuple(float(w) for w in weights) if weights else None,
    )
    reports = run_claims(ctx, claims)
    rows = [report.to_dict() for report in reports]

    document = {
        "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "config": {
            "algebra": algebra,
            "n": n,
            "seed": seed,
            "trials": trials,
            "claims": list(claims) if claims != ["all"] else list(CLAIM_IDS),
            "tol_rank": tolerances.rank_rel,
            "tol_bracket": tolerances.bracket_rel,
            "tol_drift": tolerances.drift,
        },
        "claims": rows,
    }
    if args.out:
        _atomic_write(args.out, json.dumps(document, indent=2, sort_keys=True) + "\n")

    _print_claim_table(rows, sys.stdout)
    failed = [row for row in rows if not row["pass"]]
    print(f"{len(rows) - len(failed)}/{len(rows)} certificates passed")
    return 1 if failed else 0


# -- flow ---------------------------------------------------------------------


def _flow_hamiltonian(args, space: ProductSpace, config: dict):
    model = _pick(args.model, config, "model", "normal")
    if model == "normal":
        return dynamics.normal_hamiltonian(space)
    if model == "novi":
        s_text = _pick(args.s, config, "s", None)
        t_text = _pick(args.t, config, "t", None)
        s = _parse_floats(s_text) if s_text else tuple(1.0 for _ in range(space.n - 1))
        t = _parse_floats(t_text) if t_text else tuple(0.5 for _ in range(space.n - 1))
        return dynamics.novi_hamiltonian(space, s, t)
    if model == "gaudin":
        a_text = _pick(args.a, config, "a", None)
        weights = _parse_floats(a_text) if a_text else tuple(float(i) for i in range(1, space.n + 1))
        return dynamics.gaudin_hamiltonian(space, weights)
    if model == "einstein":
        p_text = _pick(args.p, config, "p", "auto")
        if p_text == "auto":
            p, q = dynamics.einstein_parameters(space.n)
            s = None
        else:
            p = float(p_text)
            q_text = _pick(args.q, config, "q", None)
            if q_text is None:
                raise ConfigurationError("einstein model with explicit --p also needs --q")
            q = float(q_text)
            s_text = _pick(args.s, config, "s", None)
            s = float(s_text) if s_text is not None else None
        return dynamics.einstein_hamiltonian(space, p, q, s)
    raise ConfigurationError(f"unknown flow model {model!r}")


def _cmd_flow(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    algebra = _pick(args.algebra, config, "algebra", "su2")
    n = int(_pick(args.n, config, "n", 3))
    seed = int(_pick(args.seed, config, "seed", _default_seed()))
    restrict_v = bool(args.restrict_v or config.get("restrict_v", False))
    dt = float(_pick(args.dt, config, "dt", 1e-3))
    t_end = float(_pick(args.t_end, config, "t_end", 10.0))
    stride = int(_pick(args.stride, config, "stride", 10))

    space = _build_space(algebra, n)
    hamiltonian = _flow_hamiltonian(args, space, config)
    domain = "v" if restrict_v else "g"
    initial = generic_point(space, [seed, 17], domain)

    # Monitor the commuting family the model belongs to: the spectral family
    # for gaudin flows, the flag-shift family for everything else.
    if hamiltonian.kind == "gaudin":
        monitor_family = gaudin_family(space, hamiltonian.params["a"])
    else:
        monitor_family = flag_shift_family(space)
    flow = dynamics.FlowSpec(
        space=space,
        hamiltonian=hamiltonian,
        initial=initial,
        t_end=t_end,
        dt=dt,
        stride=stride,
        monitors=tuple(monitor_family),
    )
    trajectory = dynamics.integrate(flow)

    summary = {
        "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "config": {
            "algebra": algebra,
            "n": n,
            "model": hamiltonian.kind,
            "params": {k: v for k, v in hamiltonian.params.items()},
            "seed": seed,
            "restrict_v": restrict_v,
            "dt": dt,
            "t_end": t_end,
            "stride": stride,
        },
        "final_time": trajectory.final_time,
        "aborted": trajectory.aborted,
        "drift": trajectory.drift(),
        "momentum_drift": dynamics.momentum_drift(space, trajectory),
    }
    if hamiltonian.kind == "einstein" and restrict_v:
        u_coef = hamiltonian.params["u_coef"]
        v_coef = hamiltonian.params["v_coef"]
        residual = 0.0
        for t, state in zip(trajectory.times, trajectory.states):
            closed = dynamics.enr_closed_form(space, initial, u_coef, v_coef, t)
            residual = max(residual, space.norm(state - closed) / (1.0 + space.norm(closed)))
        summary["closed_form_residual"] = residual
        summary["momentum_norm_max"] = dynamics.momentum_norm_max(space, trajectory)

    if args.csv:
        dynamics.trajectory_to_csv(trajectory, args.csv)
    if args.summary:
        _atomic_write(args.summary, json.dumps(summary, indent=2, sort_keys=True) + "\n")

    worst = max(summary["drift"].values()) if summary["drift"] else 0.0
    print(
        f"{hamiltonian.kind} flow on {algebra}^{n}"
        f"{' (zero-momentum slice)' if restrict_v else ''}: "
        f"t_end={trajectory.final_time:g}, worst drift={worst:.3e}, "
        f"momentum drift={summary['momentum_drift']:.3e}"
        f"{', ABORTED' if trajectory.aborted else ''}"
    )
    return 1 if trajectory.aborted else 0


# -- report -------------------------------------------------------------------


def _cmd_report(args: argparse.Namespace) -> int:
    rows: list[dict] = []
    for path in args.paths:
        try:
            with open(path) as handle:
                document = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"skipping {path}: {exc}", file=sys.stderr)
            continue
        rows.extend(document.get("claims", []))
    if not rows:
        print("no claims found", file=sys.stderr)
        return 2
    rows.sort(key=lambda row: (row.get("pass", False), row.get("claim_id", "")))
    _print_claim_table(rows, sys.stdout)
    failed = sum(1 for row in rows if not row.get("pass", False))
    print(f"{len(rows) - failed}/{len(rows)} certificates passed")
    return 1 if failed else 0


# -- parser --------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagshift",
        description="numerical certificates for commuting families on product Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    certify = sub.add_parser("certify", help="run claim certificates")
    certify.add_argument("--algebra", help="base algebra, e.g. su2 or su3")
    certify.add_argument("--n", type=int, help="number of factors")
    certify.add_argument("--claims", help=f"comma list from {{{','.join(CLAIM_IDS)}}} or 'all'")
    certify.add_argument("--seed", type=int, help=f"base seed (default ${_ENV_SEED} or 42)")
    certify.add_argument("--trials", type=int, help="generic points per certificate")
    certify.add_argument("--out", help="write the JSON document here")
    certify.add_argument("--config", help="JSON config file; flags override it")
    certify.add_argument("--tol-rank", type=float, dest="tol_rank")
    certify.add_argument("--tol-bracket", type=float, dest="tol_bracket")
    certify.add_argument("--tol-drift", type=float, dest="tol_drift")
    certify.set_defaults(func=_cmd_certify)

    flow = sub.add_parser("flow", help="integrate a quadratic flow")
    flow.add_argument("--algebra", help="base algebra, e.g. su2 or su3")
    flow.add_argument("--n", type=int, help="number of factors")
    flow.add_argument("--model", choices=["normal", "novi", "gaudin", "einstein"])
    flow.add_argument("--s", help="novi: comma list of chain coefficients; einstein: scalar s")
    flow.add_argument("--t", help="novi: comma list of tail coefficients")
    flow.add_argument("--p", help="einstein: 'auto' or a positive float")
    flow.add_argument("--q", help="einstein: positive float, required with explicit --p")
    flow.add_argument("--a", help="gaudin: comma list of spectral weights")
    flow.add_argument("--restrict-v", action="store_true", dest="restrict_v",
                      help="start on the zero-momentum slice")
    flow.add_argument("--seed", type=int)
    flow.add_argument("--dt", type=float)
    flow.add_argument("--t-end", type=float, dest="t_end")
    flow.add_argument("--stride", type=int)
    flow.add_argument("--csv", help="write the sampled trajectory here")
    flow.add_argument("--summary", help="write the JSON run summary here")
    flow.add_argument("--config", help="JSON config file; flags override it")
    flow.set_defaults(func=_cmd_flow)

    report = sub.add_parser("report", help="tabulate previously written JSON documents")
    report.add_argument("paths", nargs="+", help="certificate JSON files")
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except GenericityError as exc:
        print(f"genericity failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
