"""Command-line front end.

Subcommands: ``tables``, ``verify``, ``dephase``, ``scan`` and ``spectrum``.
Exit codes are 0 on success, 1 when a verification check fails and 2 on a
usage error.  Every output starts with a metadata block echoing the resolved
configuration, the seed and the package version; CSV outputs carry it as
``#``-prefixed lines and JSON outputs under ``"metadata"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from . import cosmo, dephasing, spectral
from .params import GtdParams, PhysicalConstants, load_params
from .tables import TABLES
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(x, sig_figs):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if sig_figs is None:
        return repr(x)
    return f"{x:.{sig_figs - 1}e}"


def _metadata(command, config, seed=None):
    return {"tool": "collapsenoise", "version": __version__, "command": command, "config": config, "seed": seed}


def _emit_csv(meta, header, rows, sig_figs):
    buf = io.StringIO()
    buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v, sig_figs) for v in r])
    return buf.getvalue()


def _emit_json(meta, payload):
    return json.dumps({"metadata": meta, "data": payload}, sort_keys=True, indent=2) + "\n"


def _parse_grid(text, log=False):
    """``a,b,c`` or ``start:stop:num``."""
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            num = int(num)
            if num < 1:
                raise UsageError(f"empty grid {text!r}")
            start, stop = float(start), float(stop)
            if log:
                if start <= 0 or stop <= 0:
                    raise UsageError("log grid needs positive endpoints")
                return np.geomspace(start, stop, num)
            return np.linspace(start, stop, num)
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc
    if not vals:
        raise UsageError(f"empty grid {text!r}")
    return np.array(vals)


def _resolve_params(args):
    if getattr(args, "params", None):
        return load_params(args.params)
    if getattr(args, "units", "si") == "natural":
        return GtdParams.natural()
    return GtdParams.holographic()


def cmd_tables(args):
    header, rows = TABLES[args.which]()
    config = {"which": args.which, "format": args.format, "sig_figs": args.sig_figs}
    meta = _metadata("tables", config)
    if args.format == "json":
        payload = [dict(zip(header, r)) for r in rows]
        if args.sig_figs is not None:
            payload = [{k: (v if isinstance(v, str) else float(_fmt(v, args.sig_figs))) for k, v in r.items()} for r in payload]
        return _emit_json(meta, payload), EXIT_OK
    return _emit_csv(meta, header, rows, args.sig_figs), EXIT_OK


def cmd_verify(args):
    results = run_suite(args.suite, seed=args.seed)
    ok = all(c.passed for checks in results.values() for c in checks)
    meta = _metadata("verify", {"suite": args.suite}, args.seed)
    payload = {"passed": ok, "suites": {k: [c.to_dict() for c in v] for k, v in results.items()}}
    return _emit_json(meta, payload), EXIT_OK if ok else EXIT_FAIL


def cmd_dephase(args):
    T = _parse_grid(args.T_grid)
    if np.any(T < 0):
        raise UsageError("T-grid values must be nonnegative")
    if args.omega0 <= 0 or args.gamma < 0 or args.AJ < 0:
        raise UsageError("need omega0 > 0, gamma >= 0, AJ >= 0")
    Omega = 2.0 * args.omega0
    d_ex = np.atleast_1d(dephasing.d_exact(args.AJ, args.omega0, T))
    d_br = np.atleast_1d(dephasing.d_broadened(args.AJ, Omega, args.gamma, T))
    header = ["T", "D_exact", "D_broadened", "regime"]
    cols = [T, d_ex, d_br, [dephasing.classify_regime(t, Omega, args.gamma) for t in T]]
    if args.mc_samples:
        noise = dephasing.sample_noise(args.AJ, args.omega0, args.seed, args.mc_samples)
        est, err = [], []
        for t in T:
            x = noise.integral(t) ** 2
            est.append(x.mean())
            err.append(x.std(ddof=1) / math.sqrt(len(x)))
        header += ["mc_estimate", "mc_stderr"]
        cols += [est, err]
    config = {
        "T_grid": args.T_grid,
        "gamma": args.gamma,
        "omega0": args.omega0,
        "AJ": args.AJ,
        "mc_samples": args.mc_samples,
        "mc_target": "D_exact",
        "sig_figs": args.sig_figs,
    }
    meta = _metadata("dephase", config, args.seed)
    return _emit_csv(meta, header, list(zip(*cols)), args.sig_figs), EXIT_OK


def _scan_defaults(k):
    return {
        "omega_S": 6.3,
        "omega0": k.H0,
        "gamma": k.H0,
        "A_J": 1.0,
        "C_match": k.alpha_em**2,
        "lambda": cosmo.lambda_bench(k),
        "m": 1e-22,
        "m0": k.m_nucleon,
        "T": 1.0,
    }


def _observables(k):
    return {
        "suppression": (("omega_S", "omega0", "gamma"), lambda v: spectral.offres_suppression(v["omega_S"], v["omega0"], v["gamma"])),
        "lambda_natural": (("C_match",), lambda v: cosmo.lambda_natural(k, v["C_match"])),
        "S0": (
            ("gamma", "omega0", "A_J"),
            lambda v: float(spectral.lorentzian_S(0.0, v["A_J"], -2.0 * v["omega0"], v["gamma"])),
        ),
        "threshold_N": (("C_match",), lambda v: cosmo.amplification_threshold(cosmo.lambda_natural(k, v["C_match"]), k.m_nucleon)[0]),
        "t1_exponent": (("lambda", "m", "m0", "T"), lambda v: cosmo.t1_exponent(v["lambda"], v["m"], v["m0"], v["T"])),
    }


def cmd_scan(args):
    k = PhysicalConstants()
    obs = _observables(k)
    if args.observable not in obs:
        raise UsageError(f"unknown observable {args.observable!r}")
    depends, fn = obs[args.observable]
    if args.param not in depends:
        raise UsageError(f"observable {args.observable!r} does not depend on {args.param!r}; choose from {list(depends)}")
    grid = _parse_grid(args.range, log=args.log)
    base = _scan_defaults(k)
    rows = []
    for x in grid:
        v = dict(base)
        v[args.param] = float(x)
        try:
            rows.append((float(x), fn(v)))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    config = {
        "param": args.param,
        "range": args.range,
        "log": args.log,
        "observable": args.observable,
        "fixed": {d: base[d] for d in depends if d != args.param},
        "sig_figs": args.sig_figs,
    }
    meta = _metadata("scan", config)
    return _emit_csv(meta, (args.param, args.observable), rows, args.sig_figs), EXIT_OK


def cmd_spectrum(args):
    p = _resolve_params(args)
    if args.model == "wightman":
        m = spectral.wightman_line(p)
    elif args.model == "symmetrized":
        m = spectral.symmetrized_model(p)
    elif args.model == "lorentzian":
        m = spectral.lorentzian_model(p)
    elif args.model == "populated_fermion":
        m = spectral.populated_fermion_model(p, args.n_b, args.n_d)
    else:
        m = spectral.populated_boson_model(p, args.n_B)
    config = {"model": args.model, "params": p.to_dict(), "n_b": args.n_b, "n_d": args.n_d, "n_B": args.n_B}
    return _emit_json(_metadata("spectrum", config), m.to_dict()), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="collapsenoise", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def sig(p):
        p.add_argument("--sig-figs", type=int, default=None, help="round numeric output to this many significant figures")

    t = sub.add_parser("tables", help="reproduce a reference table")
    t.add_argument("which", choices=sorted(TABLES))
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    sig(t)
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="run oracle verification suites")
    v.add_argument("suite", choices=("wick", "hasvac", "bateman", "dephasing", "cp", "all"))
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dephase", help="tabulate the dephasing kernel D(T)")
    d.add_argument("--T-grid", dest="T_grid", required=True, help="comma list or start:stop:num")
    d.add_argument("--gamma", type=float, default=0.0)
    d.add_argument("--omega0", type=float, default=1.0)
    d.add_argument("--AJ", type=float, default=1.0)
    d.add_argument("--mc-samples", dest="mc_samples", type=int, default=0)
    d.add_argument("--seed", type=int, default=0)
    sig(d)
    d.set_defaults(func=cmd_dephase)

    s = sub.add_parser("scan", help="observable versus one parameter")
    s.add_argument("--param", required=True, choices=("omega_S", "omega0", "gamma", "A_J", "C_match", "lambda", "m", "m0", "T"))
    s.add_argument("--range", required=True, help="comma list or start:stop:num")
    s.add_argument("--log", action="store_true", help="geometric spacing for start:stop:num")
    s.add_argument("--observable", required=True, help="suppression, lambda_natural, S0, threshold_N or t1_exponent")
    sig(s)
    s.set_defaults(func=cmd_scan)

    sp = sub.add_parser("spectrum", help="dump a spectrum model as JSON")
    sp.add_argument("--model", choices=("wightman", "symmetrized", "lorentzian", "populated_fermion", "populated_boson"), default="wightman")
    sp.add_argument("--params", help="JSON parameter file")
    sp.add_argument("--units", choices=("si", "natural"), default="si")
    sp.add_argument("--n-b", dest="n_b", type=float, default=0.0)
    sp.add_argument("--n-d", dest="n_d", type=float, default=0.0)
    sp.add_argument("--n-B", dest="n_B", type=float, default=0.0)
    sp.set_defaults(func=cmd_spectrum)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "sig_figs", None) is not None and args.sig_figs < 1:
        ap.error("--sig-figs must be at least 1")
    try:
        text, code = args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code
