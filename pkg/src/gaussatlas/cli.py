"""Command-line surface for channel classification and region atlases.

Subcommands
-----------
classify CHANNEL.json    canonical form, witnesses and verdicts as JSON
check CHANNEL.json       closed-form verdicts cross-checked against the oracles
sweep                    region-classification grid plus boundary curves
orbit CHANNEL.json       squeeze-orbit trace and the breaking squeeze r0
pfunc                    single-photon output P-function samples
verify [SUITE]           run a named verification suite

Exit codes: 0 success, 1 domain verdict failure (non-EB orbit input,
oracle disagreement, failed verification), 2 usage or parse error.
All floats are printed with 12 significant digits so identical inputs
produce byte-identical output.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .breaking import (
    REGION_CSV_HEADER,
    boundary_curves,
    classify_region,
    eb_oracle_tmsv,
    find_r0,
    is_eb,
    ncb_necessity_fock1,
    ncb_oracle_gaussian,
    region_sweep,
    report,
    squeeze_orbit,
)
from .channels import Channel, Kind, act_chargrid, canonical_reduce, is_cp, kind_from_label
from .gaussian_core import TOL_CLASS
from .phase_space import (
    GridSpec,
    char_fock1,
    convert_order,
    fock1_output_p,
    quasi_from_char,
)
from .verify import SUITES, run_suite


class _CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fmt(v):
    return f"{v:.12g}"


def _jsonable(obj):
    """Round floats to 12 significant digits; map non-finite values to null."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return float(_fmt(v)) if math.isfinite(v) else None
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return obj


def _load_channel(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _CliError(2, f"cannot read {path}: {exc}") from exc
    try:
        return Channel.from_json(text)
    except ValueError as exc:
        raise _CliError(2, f"invalid channel descriptor: {exc}") from exc


def _form_payload(form):
    return {
        "kind": form.kind.value,
        "kappa": form.kappa,
        "a": form.a,
        "b": form.b,
        "x_canonical": form.x_canonical,
        "y_canonical": form.y_canonical,
        "S": form.S,
        "R": form.R,
    }


def _cmd_classify(args):
    ch = _load_channel(args.channel)
    rep = report(ch, tol=args.tol)
    record = classify_region(rep.form.kind, rep.form.kappa, rep.form.a,
                             rep.form.b, tol=args.tol)
    payload = {
        "form": _form_payload(rep.form),
        "cp": rep.cp,
        "eb": rep.eb,
        "ncb": rep.ncb,
        "class": record.region_class,
        "margins": rep.margins,
        "shifted_noise": list(rep.shifted_noise),
    }
    print(json.dumps(_jsonable(payload), indent=2))
    return 0


def _cmd_check(args):
    ch = _load_channel(args.channel)
    rep = report(ch, tol=args.tol)
    payload = {
        "closed_form": {"cp": rep.cp, "eb": rep.eb, "ncb": rep.ncb,
                        "margins": rep.margins},
    }
    oracles = {}
    agree = True
    if is_cp(ch):
        ncb_o = ncb_oracle_gaussian(ch, tol=args.tol)
        eb_o = eb_oracle_tmsv(ch)
        oracles["ncb_gaussian"] = ncb_o
        oracles["eb_tmsv"] = eb_o
        agree = (ncb_o == rep.ncb) and (eb_o == rep.eb)
        if rep.form.kind is Kind.I and abs(rep.form.kappa - 1.0) <= 1e-9:
            fock_o = ncb_necessity_fock1(rep.form, tol=args.tol)
            oracles["ncb_fock1"] = fock_o
            agree = agree and fock_o == rep.ncb
    else:
        oracles["note"] = "oracles skipped: channel is not completely positive"
        agree = not rep.cp
    payload["oracles"] = oracles
    payload["agree"] = agree
    print(json.dumps(_jsonable(payload), indent=2))
    return 0 if agree else 1


def _records_csv(records):
    lines = [",".join(REGION_CSV_HEADER)]
    lines += [",".join(r.csv_row()) for r in records]
    return "\n".join(lines) + "\n"


def _curves_csv(curves, a_min, a_max, n=512):
    lines = ["curve,a,b"]
    for name in ("cp", "eb", "ncb"):
        a_arr, b_arr = curves[name].sample(a_min, a_max, n)
        lines += [f"{name},{_fmt(a)},{_fmt(b)}" for a, b in zip(a_arr, b_arr)]
    return "\n".join(lines) + "\n"


def _cmd_sweep(args):
    if args.amin <= 0 or args.bmin <= 0 or args.amax <= args.amin \
            or args.bmax <= args.bmin:
        raise _CliError(2, "ranges must satisfy 0 < min < max")
    if args.grid < 2:
        raise _CliError(2, "grid resolution must be at least 2")
    kind = kind_from_label(args.form)
    records = region_sweep(kind, args.kappa, args.amin, args.amax,
                           args.bmin, args.bmax, args.grid, tol=args.tol)
    curves = boundary_curves(kind, args.kappa)
    if args.format == "json":
        payload = {
            "records": [{"kind": r.kind.value, "kappa": r.kappa, "a": r.a,
                         "b": r.b, "class": r.region_class,
                         "cp_margin": r.cp_margin, "eb_margin": r.eb_margin,
                         "ncb_margin": r.ncb_margin} for r in records],
            "curves": {},
        }
        for name in ("cp", "eb", "ncb"):
            a_arr, b_arr = curves[name].sample(args.amin, args.amax, 512)
            payload["curves"][name] = {"a": a_arr, "b": b_arr}
        text = json.dumps(_jsonable(payload), indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(text)
            print(f"wrote {len(records)} records to {args.out}")
        else:
            sys.stdout.write(text)
        return 0
    rec_text = _records_csv(records)
    curve_text = _curves_csv(curves, args.amin, args.amax)
    if args.out:
        out = Path(args.out)
        curves_path = out.with_name(out.stem + "_curves" + out.suffix)
        out.write_text(rec_text)
        curves_path.write_text(curve_text)
        counts = {label: 0 for label in ("unphysical", "cp_only", "eb_not_ncb", "ncb")}
        for r in records:
            counts[r.region_class] += 1
        print(f"wrote {len(records)} records to {out} and curves to {curves_path}")
        for label, count in counts.items():
            print(f"{label}: {count}")
    else:
        sys.stdout.write(rec_text)
        sys.stdout.write("\n")
        sys.stdout.write(curve_text)
    return 0


def _cmd_orbit(args):
    ch = _load_channel(args.channel)
    form = canonical_reduce(ch)
    rep = report(ch, tol=args.tol)
    if not is_eb(form, tol=args.tol):
        print(f"channel is not entanglement-breaking "
              f"(EB margin {_fmt(rep.margins['eb'])})", file=sys.stderr)
        return 1
    r0 = find_r0(form, tol=args.tol)
    if r0 is None:
        print("no squeeze parameter makes this channel nonclassicality-breaking",
              file=sys.stderr)
        return 1
    rs = np.linspace(args.rmin, args.rmax, args.grid)
    points = [squeeze_orbit(form, r, tol=args.tol) for r in rs]
    if args.format == "json":
        payload = {
            "r0": r0,
            "trace": [{"r": p.r, "a_r": p.a_r, "b_r": p.b_r, "ncb": p.ncb}
                      for p in points],
        }
        text = json.dumps(_jsonable(payload), indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(text)
            print(f"r0 = {_fmt(r0)}")
            print(f"wrote trace to {args.out}")
        else:
            sys.stdout.write(text)
        return 0
    lines = ["r,a_r,b_r,ncb"]
    lines += [f"{_fmt(p.r)},{_fmt(p.a_r)},{_fmt(p.b_r)},"
              f"{'true' if p.ncb else 'false'}" for p in points]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"r0 = {_fmt(r0)}")
        print(f"wrote trace to {args.out}")
    else:
        sys.stdout.write(f"# r0 = {_fmt(r0)}\n")
        sys.stdout.write(text)
    return 0


def _pfunc_closed(args):
    axis = np.linspace(-args.extent, args.extent, args.grid)
    a1, a2 = np.meshgrid(axis, axis, indexing="ij")
    values = fock1_output_p(args.a, args.b, a1, a2, variant=args.variant)
    return axis, values


def _pfunc_fft(args):
    try:
        spec = GridSpec(side=args.grid, extent=args.extent)
    except ValueError as exc:
        raise _CliError(2, str(exc)) from exc
    ch = Channel(X=np.eye(2), Y=np.diag([args.a, args.b]))
    out = act_chargrid(ch, char_fock1(0.0, spec))
    q = quasi_from_char(convert_order(out, 1.0))
    # map the unit-integral grid values back to the d^2alpha/pi convention
    axis = q.axis / np.sqrt(2.0)
    values = 2.0 * np.pi * q.values
    return axis, values


def _cmd_pfunc(args):
    if args.a <= 0 or args.b <= 0:
        raise _CliError(2, "noise parameters a and b must be positive")
    if args.grid < 2:
        raise _CliError(2, "grid resolution must be at least 2")
    if args.extent is None:
        args.extent = 10.0 if args.variant == "fft" else 6.0
    if args.variant == "fft":
        try:
            axis, values = _pfunc_fft(args)
        except ValueError as exc:
            print(f"transform refused: {exc}", file=sys.stderr)
            return 1
    else:
        axis, values = _pfunc_closed(args)
    if args.format == "json":
        payload = {"a": args.a, "b": args.b, "variant": args.variant,
                   "alpha_axis": axis, "values": values}
        text = json.dumps(_jsonable(payload), indent=2) + "\n"
    else:
        lines = ["alpha1,alpha2,value"]
        for i, x in enumerate(axis):
            lines += [f"{_fmt(x)},{_fmt(y)},{_fmt(values[i, j])}"
                      for j, y in enumerate(axis)]
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(axis)}x{len(axis)} samples to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args):
    results = run_suite(args.suite)
    for res in results:
        print(f"{'PASS' if res.ok else 'FAIL'} {res.name}: {res.detail}")
    passed = sum(res.ok for res in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gaussatlas",
        description="Classify single-mode Gaussian channels and map their "
                    "noise-plane breaking regions.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_tol(p):
        p.add_argument("--tol", type=float, default=TOL_CLASS,
                       help="boundary slack for verdicts (default 1e-6)")

    p_classify = sub.add_parser("classify", help="canonical form and verdicts")
    p_classify.add_argument("channel", help="channel JSON file")
    add_tol(p_classify)
    p_classify.set_defaults(func=_cmd_classify)

    p_check = sub.add_parser("check",
                             help="cross-check closed forms against oracles")
    p_check.add_argument("channel", help="channel JSON file")
    add_tol(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_sweep = sub.add_parser("sweep", help="classify a noise-plane grid")
    p_sweep.add_argument("--form", default="I", choices=["I", "II", "III"],
                         help="canonical kind (default I)")
    p_sweep.add_argument("--kappa", type=float, default=1.0,
                         help="gain parameter (default 1.0)")
    p_sweep.add_argument("--amin", type=float, default=0.05)
    p_sweep.add_argument("--amax", type=float, default=6.0)
    p_sweep.add_argument("--bmin", type=float, default=0.05)
    p_sweep.add_argument("--bmax", type=float, default=6.0)
    p_sweep.add_argument("--grid", type=int, default=200,
                         help="grid resolution per axis (default 200)")
    p_sweep.add_argument("--out", help="records CSV path; curves go to "
                                       "<stem>_curves<suffix>")
    p_sweep.add_argument("--format", default="csv", choices=["csv", "json"])
    add_tol(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_orbit = sub.add_parser("orbit", help="squeeze-orbit trace and r0")
    p_orbit.add_argument("channel", help="channel JSON file")
    p_orbit.add_argument("--rmin", type=float, default=-1.0)
    p_orbit.add_argument("--rmax", type=float, default=1.0)
    p_orbit.add_argument("--grid", type=int, default=101,
                         help="number of trace points (default 101)")
    p_orbit.add_argument("--out", help="trace output path")
    p_orbit.add_argument("--format", default="csv", choices=["csv", "json"])
    add_tol(p_orbit)
    p_orbit.set_defaults(func=_cmd_orbit)

    p_pfunc = sub.add_parser("pfunc",
                             help="single-photon output P-function samples")
    p_pfunc.add_argument("--a", type=float, required=True)
    p_pfunc.add_argument("--b", type=float, required=True)
    p_pfunc.add_argument("--variant", default="rederived",
                         choices=["rederived", "printed", "fft"])
    p_pfunc.add_argument("--grid", type=int, default=257,
                         help="samples per axis (default 257; fft needs odd)")
    p_pfunc.add_argument("--extent", type=float, default=None,
                         help="half-width: alpha units for closed forms "
                              "(default 6), xi units for fft (default 10)")
    p_pfunc.add_argument("--out", help="output path")
    p_pfunc.add_argument("--format", default="csv", choices=["csv", "json"])
    p_pfunc.set_defaults(func=_cmd_pfunc)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", nargs="?", default="all",
                          choices=sorted(SUITES))
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
