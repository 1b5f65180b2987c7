"""Command-line front end: ``potentia <group> <command> [flags]``.

Exit status is 0 on success, 2 when a verdict fails and 1 on usage or
evaluation errors.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import brownian, greens, hardy, phragmen, products
from .errors import PotentiaError
from .report import RunReport

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from exc


def _status(ok: bool, text: str) -> str:
    return f"{'PASS' if ok else 'FAIL'}: {text}"


# greens --------------------------------------------------------------------

def _greens_closed(args):
    value = greens.greens_disk_closed(args.a, args.z)
    return RunReport("greens closed", {"a": args.a, "z": args.z}, ["value"], [[value]])


def _greens_series(args):
    res = greens.greens_disk_series(args.a, args.z, args.terms, corrected=not args.uncorrected)
    closed = greens.greens_disk_closed(args.a, args.z)
    diff = abs(res.value - closed)
    return RunReport(
        "greens series",
        {"a": args.a, "z": args.z, "terms": args.terms, "corrected": not args.uncorrected},
        ["value", "tail_bound", "partial_sum", "tail_correction", "closed_form", "abs_diff"],
        [[res.value, res.tail_bound, res.partial_sum, res.tail_correction, closed, diff]],
        [_status(diff <= res.tail_bound, "series within tail bound of closed form")],
    )


def _greens_probe(args):
    values = greens.removable_singularity_probe(args.a, args.radii, args.terms)
    limit = math.log(1.0 / abs(args.a))
    rows, ok = [], True
    for r, v in zip(args.radii, values):
        res = greens.greens_disk_series(args.a, r, args.terms)
        closed = greens.greens_disk_closed(args.a, r)
        ok &= abs(v - closed) <= res.tail_bound
        rows.append([r, v, closed, limit, abs(v - limit)])
    return RunReport("greens probe", {"a": args.a, "radii": ",".join(map(repr, args.radii)),
                                      "terms": args.terms},
                     ["radius", "value", "closed_form", "limit", "distance_to_limit"], rows,
                     [_status(ok, "probe values bounded and within tail bounds")])


# hardy ---------------------------------------------------------------------

def _conformal_map(args):
    if args.map == "identity":
        return hardy.identity_map()
    if args.map == "koebe":
        return hardy.koebe_map()
    return hardy.wedge_map(args.alpha)


def _star_domain(args):
    if args.domain == "plane":
        return hardy.whole_plane()
    if args.domain == "limacon":
        return hardy.StarDomainSpec(lambda t: 1.0 + 0.5 * np.cos(t), args.sigma, "limacon")
    dom = hardy.wedge_domain(args.alpha)
    return hardy.StarDomainSpec(dom.rho, args.sigma, dom.name)


def _hardy_mean(args):
    phi = _conformal_map(args)
    params = {"map": phi.name, "p": args.p}
    if args.ladder:
        v = hardy.dichotomy(phi, args.p)
        rows = [[r, m] for r, m in zip(v.radii, v.means)]
        verdicts = [f"INFO: verdict {v.verdict}"]
        p_star = phi.known_threshold
        if math.isfinite(p_star) and v.verdict != "inconclusive":
            expected = "converging" if args.p < p_star else "diverging"
            verdicts.append(_status(v.verdict == expected, f"verdict agrees with p* = {p_star:.9g}"))
        return RunReport("hardy mean", params, ["r", "integral_mean"], rows, verdicts)
    est = hardy.integral_mean(phi, args.p, args.r, args.nodes)
    params.update(r=args.r, nodes=args.nodes)
    return RunReport("hardy mean", params, ["integral_mean", "norm_estimate", "overflow"],
                     [[est.integral_mean, est.norm_estimate, est.overflow]])


def _hardy_threshold(args):
    domain = _star_domain(args)
    value = hardy.hansen_threshold(domain, args.r_max, args.grid)
    rows = [[value]]
    verdicts = []
    if args.domain == "wedge":
        expected = hardy.hansen_formula(args.alpha, args.sigma)
        rows = [[value, expected]]
        verdicts.append(_status(abs(value - expected) <= 1e-3, "threshold matches pi/alpha"))
    cols = ["threshold", "expected"] if args.domain == "wedge" else ["threshold"]
    return RunReport("hardy threshold", {"domain": domain.name, "sigma": args.sigma,
                                         "r_max": args.r_max, "grid": args.grid},
                     cols, rows, verdicts)


def _hardy_arc(args):
    domain = _star_domain(args)
    value = hardy.largest_arc(domain, args.r, args.grid)
    return RunReport("hardy arc", {"domain": domain.name, "r": args.r, "grid": args.grid},
                     ["largest_arc"], [[value]])


# pl ------------------------------------------------------------------------

def _pl_function(args):
    wedge = phragmen.Wedge(args.alpha)
    return {
        "exp-power": lambda: phragmen.exp_power(args.alpha),
        "exp": lambda: phragmen.exponential(wedge),
        "reciprocal": lambda: phragmen.reciprocal_shift(wedge),
        "identity": lambda: phragmen.identity_function(wedge),
    }[args.function]()


def _pl_boundary(args):
    f = _pl_function(args)
    value = phragmen.boundary_sup(f, args.samples, args.radius_cap)
    return RunReport("pl boundary", {"function": f.name, "alpha": args.alpha,
                                     "samples": args.samples, "radius_cap": args.radius_cap},
                     ["boundary_sup"], [[value]])


def _pl_growth(args):
    f = _pl_function(args)
    fit = phragmen.growth_fit(f, args.ray_angle)
    return RunReport("pl growth", {"function": f.name, "alpha": args.alpha,
                                   "ray_angle": args.ray_angle},
                     ["p", "C", "residual", "bounded"],
                     [[fit.p, fit.C, fit.residual, fit.bounded]])


def _pl_verdict(args):
    f = _pl_function(args)
    K = args.K if args.K is not None else phragmen.boundary_bound(f, args.samples)
    fit = phragmen.growth_fit(f, args.ray_angle)
    v = phragmen.pl_verdict(f, K, fit, margin=args.margin)
    return RunReport("pl verdict", {"function": f.name, "alpha": args.alpha, "margin": args.margin},
                     ["K", "p_fit", "p_star", "interior_max", "exceeds_K"],
                     [[v.K, v.p_fit, v.p_star, v.interior_max, v.exceeds_K]],
                     [f"INFO: conclusion {v.conclusion}"])


def _pl_sharpness(args):
    rep = phragmen.sharpness(args.alpha, args.level)
    p_star = math.pi / args.alpha
    verdicts = [
        _status(abs(rep.boundary_sup - 1.0) <= 1e-9, "boundary sup equals 1"),
        _status(abs(rep.fit.p - p_star) <= 0.05 * p_star, "growth order within 5% of pi/alpha"),
        _status(rep.verdict.conclusion == phragmen.VIOLATED, "verdict hypothesis-violated"),
    ]
    return RunReport("pl sharpness", {"alpha": args.alpha, "level": args.level},
                     ["boundary_sup", "p_fit", "p_star", "axis_radius", "axis_log_modulus"],
                     [[rep.boundary_sup, rep.fit.p, p_star, rep.axis_radius, rep.axis_log_modulus]],
                     verdicts)


# products ------------------------------------------------------------------

def _products_check(args):
    name = args.identity
    if name == "sinh":
        res, exact = products.sinh_product(args.r, args.terms), math.sinh(args.r)
    elif name == "cosh":
        res, exact = products.cosh_product(args.r, args.terms), math.cosh(args.r)
    elif name in ("sin", "cos"):
        s, c = products.sin_cos_products(args.r, args.terms)
        res, exact = (s, math.sin(args.r)) if name == "sin" else (c, math.cos(args.r))
    else:
        params = products.ProductParams(args.b, args.r, args.c)
        res, exact = products.mirror_product(params, args.terms), products.mirror_rhs(params)
    err = abs(res.value - exact)
    return RunReport(
        "products check",
        {"identity": name, "r": args.r, "c": args.c, "b": args.b, "terms": args.terms},
        ["value", "exact", "abs_error", "error_bound", "uncorrected", "near_zero"],
        [[res.value, exact, err, res.error_bound, res.uncorrected, res.near_zero]],
        [_status(err <= res.error_bound, "product within its residual bound")],
    )


# mc ------------------------------------------------------------------------

_FUNCTIONS = {
    "unit": brownian.unit,
    "zero": brownian.zero,
    "half-disk": brownian.disk_indicator(0.5),
}


def _mc_config(args):
    return brownian.MCConfig(args.paths, args.dt, args.seed, args.start)


def _mc_occupation(args):
    cfg = _mc_config(args)
    est = brownian.occupation_estimate(cfg, _FUNCTIONS[args.f], args.threads)
    verdicts = []
    expected = None
    if args.f == "unit":
        expected = (1.0 - abs(cfg.start) ** 2) / 2.0
    elif args.f == "zero":
        expected = 0.0
    elif args.f == "half-disk" and cfg.start == 0:
        expected = math.log(2.0) / 4.0 + 0.125
    if expected is not None:
        tol = 0.03 * abs(expected) + 3.0 * est.stderr
        verdicts.append(_status(abs(est.mean - expected) <= tol, f"mean matches {expected:.9g}"))
    return RunReport("mc occupation", {"start": cfg.start, "f": args.f, "paths": args.paths,
                                       "dt": args.dt, "seed": args.seed},
                     ["mean", "stderr", "expected"],
                     [[est.mean, est.stderr, expected if expected is not None else float("nan")]],
                     verdicts)


def _mc_fit(args):
    cfg = _mc_config(args)
    fit = brownian.greens_constant_fit(cfg, workers=args.threads, full_output=True)
    return RunReport("mc fit", {"start": cfg.start, "paths": args.paths, "dt": args.dt,
                                "seed": args.seed},
                     ["kappa", "one_over_pi"], [[fit.kappa, 1.0 / math.pi]],
                     [_status(abs(fit.kappa * math.pi - 1.0) <= 0.05, "kappa within 5% of 1/pi")])


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="potentia", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(group, name, handler, help_text):
        p = group.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--deterministic", action="store_true",
                       help="omit wall time so identical runs give identical output")
        return p

    g = groups.add_parser("greens", help="disk and half-plane Green's functions")
    sub = g.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = command(sub, "closed", _greens_closed, "closed-form disk Green's function")
    p.add_argument("--a", type=_complex, required=True)
    p.add_argument("--z", type=_complex, required=True)
    p = command(sub, "series", _greens_series, "covering-map series")
    p.add_argument("--a", type=_complex, required=True)
    p.add_argument("--z", type=_complex, required=True)
    p.add_argument("--terms", type=int, default=10_000)
    p.add_argument("--uncorrected", action="store_true")
    p = command(sub, "probe", _greens_probe, "series near the puncture")
    p.add_argument("--a", type=_complex, required=True)
    p.add_argument("--radii", type=_floats, default=[1e-2, 1e-4, 1e-6])
    p.add_argument("--terms", type=int, default=10_000)

    g = groups.add_parser("hardy", help="integral means and Hardy thresholds")
    sub = g.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = command(sub, "mean", _hardy_mean, "integral mean of |phi|^p")
    p.add_argument("--map", choices=["identity", "koebe", "wedge"], default="koebe")
    p.add_argument("--alpha", type=float, default=math.pi / 2)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--r", type=float, default=0.999)
    p.add_argument("--nodes", type=int, default=1 << 16)
    p.add_argument("--ladder", action="store_true", help="ratio test over r = 1 - 10^-j")
    for name, handler, text in (("threshold", _hardy_threshold, "Hansen threshold"),
                                ("arc", _hardy_arc, "largest arc on |z| = r")):
        p = command(sub, name, handler, text)
        p.add_argument("--domain", choices=["wedge", "plane", "limacon"], default="wedge")
        p.add_argument("--alpha", type=float, default=math.pi / 2)
        p.add_argument("--sigma", type=float, default=0.0)
        p.add_argument("--grid", type=int, default=65536)
        if name == "threshold":
            p.add_argument("--r-max", type=float, default=1e4)
        else:
            p.add_argument("--r", type=float, default=1.0)

    g = groups.add_parser("pl", help="Phragmen-Lindelof demonstrations")
    sub = g.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, handler in (("boundary", _pl_boundary), ("growth", _pl_growth),
                          ("verdict", _pl_verdict)):
        p = command(sub, name, handler, f"{name} of a catalogue function on a wedge")
        p.add_argument("--function", choices=["exp-power", "exp", "reciprocal", "identity"],
                       default="exp-power")
        p.add_argument("--alpha", type=float, default=math.pi / 2)
        p.add_argument("--samples", type=int, default=4000)
        p.add_argument("--radius-cap", type=float, default=10.0)
        p.add_argument("--ray-angle", type=float, default=0.0)
        p.add_argument("--margin", type=float, default=phragmen.DEFAULT_MARGIN)
        p.add_argument("--K", type=float, default=None)
    p = command(sub, "sharpness", _pl_sharpness, "exp(z^(pi/alpha)) counterexample")
    p.add_argument("--alpha", type=float, default=math.pi / 2)
    p.add_argument("--level", type=float, default=1e6)

    g = groups.add_parser("products", help="infinite product identities")
    sub = g.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = command(sub, "check", _products_check, "compare a truncated product with its closed form")
    p.add_argument("--identity", choices=["sinh", "cosh", "sin", "cos", "mirror"], required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--b", type=float, default=math.pi)
    p.add_argument("--terms", type=int, default=100_000)

    g = groups.add_parser("mc", help="Brownian occupation-time oracle")
    sub = g.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, handler in (("occupation", _mc_occupation), ("fit", _mc_fit)):
        p = command(sub, name, handler, f"Monte Carlo {name}")
        p.add_argument("--start", type=_complex, default=0j)
        p.add_argument("--paths", type=int, default=20_000)
        p.add_argument("--dt", type=float, default=1e-4)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--threads", type=int, default=None)
        if name == "occupation":
            p.add_argument("--f", choices=sorted(_FUNCTIONS), default="unit")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    started = time.perf_counter()
    try:
        report = args.handler(args)
    except PotentiaError as exc:
        print(f"potentia: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report.wall_time = time.perf_counter() - started
    stdout.write(report.render(args.format, args.deterministic))
    return EXIT_VERDICT if report.failed else EXIT_OK


def main():
    sys.exit(run())
