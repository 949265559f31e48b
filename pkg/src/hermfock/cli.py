"""Command-line interface: ``hermfock <command> [options]``.

Commands
--------
analyze     function spec JSON -> Hermite expansion JSON
transform   bargmann | stft | fracft of an expansion, to CSV (or JSON for fracft)
classify    expansion or spec -> classification report JSON
norm        weighted Fock, modulation or harmonic-oscillator norms
verify      run a named suite of identity checks
plotdata    CSV tables for a decay scatter and a Bargmann heatmap (no rendering)

Weights use the syntax ``gs:s,t,r``, ``quadratic:h``, ``flat_exp:R``,
``poly:r`` or ``radial:exponential:h``; radial profiles for Fock norms use
``exponential:h`` or ``linear_exponential:R``.
"""

import argparse
import os
import sys

import numpy as np

from . import io
from .bargmann import bargmann_series, complex_points, real_points, stft_gaussian
from .classify import DEFAULT_S_GRID, classify
from .fracft import fractional_ft
from .hermite import HermiteExpansion, analyze, synthesize
from .multiindex import log_factorial
from .norms import (
    GridSpec,
    a2_weighted_norm_quadrature,
    a2_weighted_norm_series,
    modulation_norm,
    pilipovic_seminorm,
    series_function,
)
from .specs import Gaussian
from .verify import SUITES, run_suite
from .weights import GS, FlatExp, Poly, Profile, Quadratic, Radial, SequenceWeight

DEFAULT_CUTOFF = 40
DEFAULT_GRID = "-4:4:9,-4:4:9"


class CliError(Exception):
    pass


# --- parsing helpers -----------------------------------------------------------------


def parse_weight(text):
    kind, _, rest = text.partition(":")
    vals = [v for v in rest.split(",") if v] if kind != "radial" else []
    try:
        if kind == "gs":
            s, t, r = (float(v) for v in vals)
            return GS(s, t, r)
        if kind == "quadratic":
            return Quadratic(float(vals[0]))
        if kind == "flat_exp":
            return FlatExp(float(vals[0]))
        if kind == "poly":
            return Poly(float(vals[0]))
        if kind == "radial":
            return Radial(parse_profile(rest), rest)
    except (ValueError, IndexError) as exc:
        raise CliError(f"bad weight {text!r}: {exc}") from exc
    raise CliError(f"unknown weight {text!r}; use gs:s,t,r | quadratic:h | flat_exp:R | poly:r | radial:<profile>")


def parse_profile(text):
    kind, _, rest = text.partition(":")
    try:
        if kind == "exponential":
            return Profile("exponential", {"h": float(rest)})
        if kind == "linear_exponential":
            return Profile("linear_exponential", {"R": float(rest)})
    except ValueError as exc:
        raise CliError(f"bad profile {text!r}") from exc
    raise CliError(f"unknown profile {text!r}; use exponential:h | linear_exponential:R")


def parse_floats(text):
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise CliError(f"expected comma-separated numbers, got {text!r}") from exc


def parse_complex_points(text, d):
    """``"2,1+1j,-0.5j"`` (d = 1) or ``"1+1j;2,0"`` with ``;`` between d-vectors."""
    try:
        if d == 1:
            pts = [complex(v.replace(" ", "")) for v in text.replace(";", ",").split(",") if v]
        else:
            pts = [[complex(v) for v in p.split(",")] for p in text.split(";") if p]
    except ValueError as exc:
        raise CliError(f"cannot parse complex points {text!r}") from exc
    return complex_points(np.array(pts, complex), d)


def parse_real_pairs(text, d):
    """``"x:xi,x:xi"`` with d comma-separated... d = 1 only: ``"0:0,1:-2"``."""
    rows = []
    try:
        for item in text.split(";" if d > 1 else ","):
            x, xi = item.split(":")
            rows.append(([float(v) for v in x.split(",")], [float(v) for v in xi.split(",")]))
    except ValueError as exc:
        raise CliError(f"cannot parse phase-space points {text!r}; use x:xi pairs") from exc
    x = real_points(np.array([r[0] for r in rows]), d)
    xi = real_points(np.array([r[1] for r in rows]), d)
    return x, xi


def load_object(path):
    if path is None:
        raise CliError("--input is required")
    if not path.lstrip().startswith(("{", "[")) and not os.path.exists(path):
        raise CliError(f"input file not found: {path}")
    try:
        return io.spec_from_dict(io.read_json(path))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def load_expansion(args):
    obj = load_object(args.input)
    if isinstance(obj, HermiteExpansion):
        return obj
    return analyze(obj, cutoff=args.cutoff, quad_order=args.quad_order)


def grid_spec(args, d):
    try:
        return GridSpec.parse(args.grid, d)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _z_grid(g):
    # lexicographic order: re(z_1..z_d) then im(z_1..z_d), last axis fastest
    x, xi = g.points()
    return x.reshape(-1, g.dim), xi.reshape(-1, g.dim)


# --- commands --------------------------------------------------------------------------


def cmd_analyze(args):
    f = load_object(args.input)
    e = analyze(f, cutoff=args.cutoff, quad_order=args.quad_order)
    io.write_text(args.output, io.dumps(io.expansion_to_dict(e)))


def cmd_transform(args):
    e = load_expansion(args)
    d = e.dim
    if args.kind == "fracft":
        r = parse_floats(args.r)
        out = fractional_ft(e, r if len(r) > 1 else r[0])
        if args.points:
            x = np.array(parse_floats(args.points)).reshape(-1, 1) if d == 1 else None
            if x is None:
                raise CliError("--points for fracft synthesis is supported in d = 1")
            vals = synthesize(out, x)
            rows = [[*xx, v.real, v.imag] for xx, v in zip(x.tolist(), np.atleast_1d(vals))]
            io.write_text(args.output, io.csv_text(["x1", "re", "im"], rows))
        else:
            io.write_text(args.output, io.dumps(io.expansion_to_dict(out)))
        return
    if args.kind == "bargmann":
        if args.points:
            z = parse_complex_points(args.points, d)
        else:
            u, v = _z_grid(grid_spec(args, d))
            z = u + 1j * v
        vals = np.atleast_1d(bargmann_series(e, z))
        header = [f"re_z{j + 1}" for j in range(d)] + [f"im_z{j + 1}" for j in range(d)] + ["re", "im"]
        rows = [[*zz.real, *zz.imag, v.real, v.imag] for zz, v in zip(z, vals)]
    else:
        if args.points:
            x, xi = parse_real_pairs(args.points, d)
        else:
            x, xi = _z_grid(grid_spec(args, d))
        vals = np.atleast_1d(stft_gaussian(e, x, xi))
        header = [f"x{j + 1}" for j in range(d)] + [f"xi{j + 1}" for j in range(d)] + ["re", "im"]
        rows = [[*a, *b, v.real, v.imag] for a, b, v in zip(x, xi, vals)]
    io.write_text(args.output, io.csv_text(header, [[float(t) for t in r] for r in rows]))


def cmd_classify(args):
    obj = load_object(args.input)
    gauss = obj if isinstance(obj, Gaussian) else None
    e = obj if isinstance(obj, HermiteExpansion) else analyze(obj, cutoff=args.cutoff, quad_order=args.quad_order)
    s_grid = tuple(parse_floats(args.s_grid)) if args.s_grid else DEFAULT_S_GRID
    rep = classify(e, tol=args.tol, s_grid=s_grid, gaussian=gauss)
    io.write_text(args.output, io.dumps(rep))


def cmd_norm(args):
    e = load_expansion(args)
    out = {"kind": args.kind}
    if args.kind == "a2-series":
        prof = parse_profile(args.profile)
        out["value"] = a2_weighted_norm_series(e, SequenceWeight.from_radial(prof, e.dim))
    elif args.kind == "a2-quadrature":
        try:
            out["value"] = a2_weighted_norm_quadrature(
                series_function(e), parse_profile(args.profile), radius=args.radius
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    elif args.kind == "modulation":
        out["value"] = modulation_norm(e, parse_weight(args.weight), args.p, args.q, grid_spec(args, e.dim))
    else:
        sn = pilipovic_seminorm(e, args.h, args.s, args.n_sup)
        out.update(value=sn.value, maximizer=sn.maximizer)
    io.write_text(args.output, io.dumps(out))


def cmd_verify(args):
    try:
        rep = run_suite(args.suite, seed=args.seed)
    except KeyError as exc:
        raise CliError(str(exc.args[0])) from exc
    io.write_text(args.output, io.dumps(rep))
    return 0 if rep["passed"] else 1


def cmd_plotdata(args):
    e = load_expansion(args)
    outdir = "." if args.output in (None, "-") else args.output
    os.makedirs(outdir, exist_ok=True)
    s = args.s
    rows = []
    for a in sorted(e.coeffs, key=lambda a: (sum(a), a)):
        c = abs(e.coeffs[a])
        if c <= e.noise_floor:
            continue
        rows.append([" ".join(map(str, a)), float(sum(a) ** (1 / (2 * s))), float(np.log(c)),
                     float(np.log(c) + log_factorial(a) / 2)])
    io.write_text(
        os.path.join(outdir, "decay.csv"),
        io.csv_text(["alpha", "order_pow", "log_abs_c", "log_abs_c_plus_half_log_factorial"], rows),
    )
    u, v = _z_grid(grid_spec(args, e.dim))
    z = u + 1j * v
    F = np.atleast_1d(bargmann_series(e, z))
    damp = np.exp(-np.sum(np.abs(z) ** 2, axis=-1) / 2)
    d = e.dim
    header = [f"re_z{j + 1}" for j in range(d)] + [f"im_z{j + 1}" for j in range(d)] + ["abs_F", "abs_F_damped"]
    rows = [[*zz.real, *zz.imag, abs(f), abs(f) * g] for zz, f, g in zip(z, F, damp)]
    io.write_text(os.path.join(outdir, "heatmap.csv"), io.csv_text(header, [[float(t) for t in r] for r in rows]))


# --- argparse ------------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file or inline JSON object")
    common.add_argument("--output", default="-", help="output path ('-' for stdout)")
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="maximal total degree (default 40)")
    common.add_argument("--quad-order", type=int, default=None, help="Gauss-Hermite nodes per axis (default 2*cutoff+20)")
    common.add_argument("--grid", default=DEFAULT_GRID, help="'xmin:xmax:n,ximin:ximax:n' (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for stochastic checks (default 0)")
    common.add_argument("--tol", type=float, default=0.05, help="classifier rate tolerance (default 0.05)")

    p = argparse.ArgumentParser(prog="hermfock", description="Hermite expansions, Bargmann transforms and space classification.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="Hermite coefficients of a function spec")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("transform", parents=[common], help="evaluate a transform of an expansion")
    t.add_argument("kind", choices=["bargmann", "stft", "fracft"])
    t.add_argument("--points", help="explicit points instead of --grid")
    t.add_argument("--r", default="1", help="fractional order(s), comma separated (fracft)")
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("classify", parents=[common], help="space-ladder classification report")
    c.add_argument("--s-grid", default=None, help="comma-separated s values (default 0.25,0.5,1)")
    c.set_defaults(func=cmd_classify)

    n = sub.add_parser("norm", parents=[common], help="weighted norms of an expansion")
    n.add_argument("kind", choices=["a2-series", "a2-quadrature", "modulation", "pilipovic"])
    n.add_argument("--profile", default="exponential:0.5", help="radial profile for Fock norms")
    n.add_argument("--weight", default="poly:0", help="phase-space weight for the modulation norm")
    n.add_argument("--radius", type=float, default=8.0)
    n.add_argument("--p", type=float, default=2.0)
    n.add_argument("--q", type=float, default=2.0)
    n.add_argument("--h", type=float, default=1.0)
    n.add_argument("--s", type=float, default=0.5)
    n.add_argument("--n-sup", type=int, default=60)
    n.set_defaults(func=cmd_norm)

    v = sub.add_parser("verify", parents=[common], help="run a suite of identity checks")
    v.add_argument("suite", help="one of: " + ", ".join(SUITES))
    v.set_defaults(func=cmd_verify)

    pd = sub.add_parser("plotdata", parents=[common], help="write decay.csv and heatmap.csv into --output")
    pd.add_argument("--s", type=float, default=0.5, help="abscissa |alpha|^(1/(2s)) of the decay scatter")
    pd.set_defaults(func=cmd_plotdata)
    return p


# flags whose values may start with '-' (negative numbers)
_VALUE_FLAGS = ("--grid", "--points", "--r", "--s-grid")


def _attach_values(argv):
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_values(argv))
    try:
        code = args.func(args)
    except CliError as exc:
        print(f"hermfock {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"hermfock {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return int(code or 0)


if __name__ == "__main__":
    sys.exit(main())
