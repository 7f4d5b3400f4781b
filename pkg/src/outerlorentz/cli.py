"""Command-line front end; every subcommand reads and writes JSON."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import campaign as cp
from . import characterize as ch
from .heisenberg import TileWindow, verify_corollary, x_norm
from .lorentz import linf_norm, lorentz_norm, super_level_profile
from .random_instances import random_setting
from .reports import DEFAULT_TOL, _jsonable
from .setting import SettingError, setting_from_json
from .sizes import INF, SizeDomainError
from .tokens import is_window_token, parse_exponent, parse_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    g.add_argument("--out", help="write the JSON result here instead of stdout")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--csv", help="also write a CSV summary to this path")
    return common


def _window_args(p):
    p.add_argument("--J", default="0,0", help='base interval "M,L"')
    p.add_argument("--lmin", type=int, default=None, help="smallest scale (default: L)")
    p.add_argument("--fmax", type=parse_exponent, default=1)
    p.add_argument("--kappa", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="outerlorentz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="outer Lorentz quasi-norm of a function")
    _function_args(p)
    p.add_argument("--p", type=parse_exponent, required=True)
    p.add_argument("--q", type=parse_exponent, default=INF)

    p = sub.add_parser("profile", parents=[common], help="super-level staircase of a function")
    _function_args(p)

    p = sub.add_parser("characterize", parents=[common], help="characterization check for one function")
    p.add_argument("--setting", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--p", type=parse_exponent, required=True)
    p.add_argument("--q", type=parse_exponent, default=INF)
    p.add_argument("--r", type=parse_exponent, default=1.0)
    p.add_argument("--a", type=parse_exponent, default=1.0)
    p.add_argument("--K", type=float, default=1.0)
    p.add_argument("--stated-constants", action="store_true",
                   help="use the lower constants without the q^(1/q) factor")

    p = sub.add_parser("verify", parents=[common], help="randomized verification campaign")
    p.add_argument("--claim", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-points", type=int, default=6)
    p.add_argument("--max-generators", type=int, default=5)
    p.add_argument("--stated-constants", action="store_true")
    p.add_argument("--window", help='fix the tile window of window campaigns: "M,L,l_min,fmax,kappa"')

    p = sub.add_parser("counterexample", parents=[common], help="the m-point counterexample family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=parse_exponent, default=1.0)
    p.add_argument("--p", type=parse_exponent, default=1.0)

    p = sub.add_parser("heisenberg", parents=[common], help="tile-window computations")
    _window_args(p)
    p.add_argument("--F", required=True, help="tile function JSON: list of {m, n, l, value}")
    p.add_argument("--p", type=parse_exponent, default=2.0)
    p.add_argument("--a", type=parse_exponent, default=1.0)
    p.add_argument("--q", type=parse_exponent, default=INF)
    p.add_argument("--check", choices=["corollary", "x-norm", "alpha", "window"], default="corollary")

    p = sub.add_parser("random-setting", parents=[common], help="emit a random setting as JSON")
    p.add_argument("--max-points", type=int, default=6)
    p.add_argument("--max-generators", type=int, default=5)
    return parser


def _function_args(p):
    p.add_argument("--setting", help="setting JSON (not needed for window sizes)")
    p.add_argument("--f", required=True, help='comma-separated values, or a tile-function JSON for window sizes')
    p.add_argument("--size", default="ell:inf")
    _window_args(p)


def _parse_values(text) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"cannot parse function values {text!r}") from exc


def _make_window(args, kappa=None):
    try:
        M, L = (int(x) for x in args.J.split(","))
    except ValueError as exc:
        raise UsageError(f"--J must be 'M,L', got {args.J!r}") from exc
    lmin = L if args.lmin is None else args.lmin
    return TileWindow((M, L), lmin, args.fmax, args.kappa if kappa is None else kappa)


def _size_and_function(args):
    if is_window_token(args.size):
        holder = {}

        def factory(kappa):
            holder["w"] = _make_window(args, kappa)
            return holder["w"]

        S = parse_size(args.size, window_factory=factory)
        f = holder["w"].function_from_json(args.f)
        return S, f
    if not args.setting:
        raise UsageError("--setting is required for this size")
    setting = setting_from_json(args.setting)
    S = parse_size(args.size, setting)
    f = _parse_values(args.f)
    if f.size != setting.n:
        raise UsageError(f"expected {setting.n} values, got {f.size}")
    return S, f


def cmd_norm(args):
    S, f = _size_and_function(args)
    profile = super_level_profile(f, S)
    value = linf_norm(f, S) if args.p == INF else lorentz_norm(f, S, args.p, args.q)
    return {"schema": cp.SCHEMA, "size": S.label, "p": args.p, "q": args.q, "value": value,
            "profile": profile.to_json()}, True


def cmd_profile(args):
    S, f = _size_and_function(args)
    return {"schema": cp.SCHEMA, "size": S.label, **super_level_profile(f, S).to_json()}, True


def cmd_characterize(args):
    setting = setting_from_json(args.setting)
    f = _parse_values(args.f)
    corrected = not args.stated_constants
    if args.p == INF:
        rep = ch.verify_linf_char(f, setting, args.q, args.r, tol=args.tolerance, corrected=corrected)
    elif args.p > args.a:
        rep = ch.verify_thm_second(f, setting, args.p, args.q, args.r, K=args.K, a=args.a,
                                   tol=args.tolerance, corrected=corrected)
    else:
        rep = ch.verify_weak_supinf(f, setting, args.p, args.q, args.r, a=args.a,
                                    tol=args.tolerance, corrected=corrected)
    return {"schema": cp.SCHEMA, "report": rep.to_dict()}, rep.passed


def cmd_verify(args):
    extra = {}
    if args.window:
        try:
            M, L, l_min, fmax, kappa = args.window.split(",")
            extra["window"] = (int(M), int(L), int(l_min), parse_exponent(fmax), int(kappa))
        except ValueError as exc:
            raise UsageError(f"--window must be 'M,L,l_min,fmax,kappa', got {args.window!r}") from exc
        cp.hz.TileWindow(extra["window"][:2], *extra["window"][2:])
    cfg = cp.CampaignConfig(
        claim=args.claim, trials=args.trials, max_points=args.max_points,
        max_generators=args.max_generators, seed=args.seed, tolerance=args.tolerance,
        threads=args.threads, stated_constants=args.stated_constants, extra=extra,
    )
    reports, summary = cp.run_campaign(cfg)
    if args.csv:
        cp.write_csv(args.csv, reports)
    print(json.dumps(_jsonable(summary), sort_keys=True), file=sys.stderr)
    return cp.campaign_document(cfg, reports, summary), summary["all_passed"]


def cmd_counterexample(args):
    rep = ch.counterexample_report(args.m, r=args.r, p=args.p)
    check = cp.counterexample_check(args.m, r=args.r, p=args.p)
    return {"schema": cp.SCHEMA, **rep, "report": check.to_dict()}, check.passed


def cmd_heisenberg(args):
    window = _make_window(args)
    F = window.function_from_json(args.F)
    out = {"schema": cp.SCHEMA, "window": window.to_json()}
    ok = True
    if args.check == "corollary":
        rep = verify_corollary(window, F, args.p, args.q, args.a, tol=args.tolerance)
        out["report"] = rep.to_dict()
        ok = rep.passed
    elif args.check == "x-norm":
        value, A = x_norm(window, F, args.p, args.q, args.a)
        out.update(value=value, witness=[str(t) for t in window.tiles_of(A)])
    elif args.check == "alpha":
        out["value"] = lorentz_norm(F, window.s2, args.p, INF)
    return out, ok


def cmd_random_setting(args):
    return random_setting(args.seed, args.max_points, args.max_generators).to_json(), True


COMMANDS = {
    "norm": cmd_norm,
    "profile": cmd_profile,
    "characterize": cmd_characterize,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
    "heisenberg": cmd_heisenberg,
    "random-setting": cmd_random_setting,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        doc, ok = COMMANDS[args.command](args)
    except (UsageError, KeyError, SettingError, SizeDomainError, ValueError, FileNotFoundError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    text = cp.dumps(doc)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.csv and args.command != "verify":
        _write_single_csv(args.csv, doc)
    return EXIT_OK if ok else EXIT_FAIL


def _write_single_csv(path, doc):
    flat = {k: v for k, v in _jsonable(doc).items() if not isinstance(v, (dict, list))}
    with open(path, "w") as fh:
        fh.write(",".join(flat) + "\n")
        fh.write(",".join(str(v) for v in flat.values()) + "\n")


if __name__ == "__main__":
    sys.exit(main())
