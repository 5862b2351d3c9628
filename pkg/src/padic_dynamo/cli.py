"""Command-line front end: ``padic-dynamo <subcommand> [options]``.

Reports are JSON by default (sorted keys, exact numbers as decimal strings),
``--csv`` for tabular data and ``--table`` for a plain key/value listing.
Exit codes: 0 success, 2 bad configuration, 3 desk-scale cap, 4 certificate
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded, PadicDynamoError, UnsupportedM
from .exact_scalar import LogRadius, as_scalar, padic_residue
from .itlog import parameter_verdict
from .lattes import LattesSpec, LegendreCurve, flexible_lattes, milnor_criterion
from .newton import count_roots_in_disk, newton_polygon, polygon_csv
from .pcf_family import (
    UnicriticalFamily,
    escape_certificate,
    ex72_data,
    ex73_report,
    gleason_factor,
    gleason_mod2_check,
    orbit_poly,
    stability_certificate,
)
from .poly import ExactPoly, rational_roots
from .ratmaps import Mobius

__all__ = ["RunConfig", "main", "build_parser", "run"]

EXIT_OK, EXIT_CONFIG, EXIT_CAP, EXIT_CERT = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    p: Optional[int] = None
    d: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    c: Optional[Fraction] = None
    center: Fraction = Fraction(0)
    radius_exp: Fraction = Fraction(0)
    closed: bool = False
    poly: Optional[tuple] = None
    lam: Optional[Fraction] = None
    torsion: str = "O"
    shift: Fraction = Fraction(0)
    max_n: int = 6
    fmt: str = "json"
    output: Optional[str] = None

    @property
    def radius(self) -> LogRadius:
        return LogRadius(self.radius_exp, closed=self.closed)


def _rational(text: str) -> Fraction:
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _coeff_list(text: str) -> tuple:
    return tuple(_rational(t) for t in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-dynamo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
        fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
        sp.add_argument("--output", "-o", help="write the report to this path")
        sp.set_defaults(fmt="json")

    def disk(sp):
        sp.add_argument("--center", type=_rational, default=Fraction(0))
        sp.add_argument("--radius-exp", type=_rational, default=Fraction(0),
                        help="radius p^-E (default 0, the unit radius)")
        pol = sp.add_mutually_exclusive_group()
        pol.add_argument("--open", dest="closed", action="store_false")
        pol.add_argument("--closed", dest="closed", action="store_true")
        sp.set_defaults(closed=False)

    sp = sub.add_parser("gleason", help="g_n(c) = f^n(0) + f^(n-1)(0) for z^2 + c")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--n", type=int, required=True)
    disk(sp)
    common(sp)

    sp = sub.add_parser("misiurewicz", help="G_{m,n}(c) = f^n(0) - f^m(0) for z^d + c")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    disk(sp)
    common(sp)

    sp = sub.add_parser("newton", help="Newton polygon of a polynomial")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--poly", type=_coeff_list, required=True,
                    help="comma-separated coefficients, constant term first")
    common(sp)

    sp = sub.add_parser("ex72", help="h_n(b) = F_b^(3^n)(-b) + b at p = 3")
    sp.add_argument("--n", type=int, required=True)
    common(sp)

    sp = sub.add_parser("ex73", help="portrait checks for the degree p+1 family")
    sp.add_argument("--p", type=_prime, required=True)
    common(sp)

    sp = sub.add_parser("lattes", help="flexible Lattes map and Milnor's criterion")
    sp.add_argument("--lam", type=_rational, required=True)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--T", dest="torsion", default="O",
                    choices=["O", "(0,0)", "(1,0)", "(lambda,0)"])
    sp.add_argument("--shift", type=_rational, default=Fraction(0),
                    help="conjugate by h(z) = z + shift")
    common(sp)

    sp = sub.add_parser("verdict", help="preperiodicity verdict for the critical point of z^d + c")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--c", type=_rational, required=True)
    sp.add_argument("--max-n", type=int, default=6, help="last n of the escalation schedule")
    common(sp)

    sp = sub.add_parser("stability", help="residue-disk chains of the critical points")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--center", type=_rational, default=Fraction(0))
    common(sp)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**fields)
    if cfg.subcommand == "gleason" and not 1 <= cfg.n <= 12:
        raise ConfigError("gleason needs 1 <= n <= 12")
    if cfg.subcommand == "misiurewicz" and not cfg.n > cfg.m >= 0:
        raise ConfigError("misiurewicz needs n > m >= 0")
    if cfg.d is not None and cfg.d < 2:
        raise ConfigError("degree must be at least 2")
    if cfg.subcommand == "ex72" and cfg.n < 0:
        raise ConfigError("ex72 needs n >= 0")
    if cfg.subcommand == "verdict" and cfg.max_n < 1:
        raise ConfigError("--max-n must be positive")
    return cfg


# -- reports ------------------------------------------------------------------

def _segments(f: ExactPoly, p: int) -> list:
    return [{"slope": str(s), "length": n} for s, n in newton_polygon(f, p).segments]


def _disk_json(cfg: RunConfig) -> dict:
    return {"center": str(cfg.center), "radius_exp": str(cfg.radius_exp),
            "polarity": "closed" if cfg.closed else "open"}


def _relation_report(cfg: RunConfig, f: ExactPoly) -> dict:
    return {
        "degree": f.degree,
        "coefficients": [str(c) for c in f.coeffs],
        "newton_segments": _segments(f, cfg.p),
        "zero_root_multiplicity": f.zero_order(),
        "disk": _disk_json(cfg),
        "roots_in_disk": count_roots_in_disk(f, cfg.p, cfg.center, cfg.radius),
    }


def report_gleason(cfg: RunConfig) -> dict:
    g = gleason_factor(cfg.n)
    out = {"family": "z^2 + c", "relation": {"gleason": cfg.n}, "prime": cfg.p}
    out.update(_relation_report(cfg, g))
    if cfg.p == 2:
        out["mod2_monomial"] = gleason_mod2_check(cfg.n)
    if g.degree <= 16:
        out["rational_roots"] = [str(r) for r in rational_roots(g)]
    return out


def report_misiurewicz(cfg: RunConfig) -> dict:
    G = orbit_poly(cfg.d, cfg.m, cfg.n)
    out = {"family": f"z^{cfg.d} + c", "relation": {"m": cfg.m, "n": cfg.n}, "prime": cfg.p}
    out.update(_relation_report(cfg, G))
    return out


def report_newton(cfg: RunConfig):
    f = ExactPoly(cfg.poly)
    if cfg.fmt == "csv":
        return polygon_csv(f, cfg.p)
    poly = newton_polygon(f, cfg.p)
    return {
        "prime": cfg.p,
        "degree": f.degree,
        "vertices": [[x, str(y)] for x, y in poly.vertices],
        "segments": _segments(f, cfg.p),
        "root_valuations": [{"valuation": str(v), "multiplicity": k}
                            for v, k in poly.root_valuations()],
    }


def report_ex72(cfg: RunConfig) -> dict:
    data = ex72_data(cfg.n)
    return {"n": data.n, "degree": data.degree, "monic": data.monic,
            "ord_at_0_mod3": data.mod3_order, "claimed_lower_bound": cfg.n + 2,
            "squarefree": data.squarefree, "roots_in_unit_open_disk": data.roots_in_unit_disk}


def report_ex73(cfg: RunConfig) -> dict:
    return ex73_report(cfg.p).to_json()


def report_lattes(cfg: RunConfig) -> dict:
    h = Mobius.translation(cfg.shift)
    spec = LattesSpec(LegendreCurve(cfg.lam), cfg.m, cfg.torsion, h)
    f = flexible_lattes(spec)
    out = {"lambda": str(cfg.lam), "m": cfg.m, "T": cfg.torsion, "shift": str(cfg.shift),
           "degree": f.degree,
           "numerator": [str(c) for c in f.num.coeffs],
           "denominator": [str(c) for c in f.den.coeffs]}
    out["milnor"] = milnor_criterion(f).to_json()
    return out


def report_verdict(cfg: RunConfig) -> dict:
    rec = parameter_verdict(cfg.d, cfg.p, cfg.c, schedule=range(1, cfg.max_n + 1))
    out = rec.to_json()
    esc = escape_certificate(cfg.d, cfg.p, cfg.c)
    if esc is not None:
        out["escape_certificate"] = esc.to_json()
    else:
        fam = UnicriticalFamily(cfg.d, cfg.p, padic_residue(cfg.c, cfg.p, 1))
        out["stability_certificate"] = stability_certificate(fam).to_json()
    return out


def report_stability(cfg: RunConfig) -> dict:
    return stability_certificate(UnicriticalFamily(cfg.d, cfg.p, cfg.center)).to_json()


REPORTS = {
    "gleason": report_gleason,
    "misiurewicz": report_misiurewicz,
    "newton": report_newton,
    "ex72": report_ex72,
    "ex73": report_ex73,
    "lattes": report_lattes,
    "verdict": report_verdict,
    "stability": report_stability,
}


def _flatten(obj, prefix="") -> list:
    if isinstance(obj, dict):
        rows = []
        for k in sorted(obj):
            rows.extend(_flatten(obj[k], f"{prefix}.{k}" if prefix else str(k)))
        return rows
    if isinstance(obj, list):
        rows = []
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
        return rows
    return [(prefix, "" if obj is None else str(obj).lower() if isinstance(obj, bool) else str(obj))]


def render(report, fmt: str) -> str:
    if isinstance(report, str):
        return report
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(report))
        return buf.getvalue()
    if fmt == "table":
        rows = _flatten(report)
        width = max((len(k) for k, _ in rows), default=0)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def run(cfg: RunConfig) -> str:
    return render(REPORTS[cfg.subcommand](cfg), cfg.fmt)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        text = run(cfg)
    except (ConfigError, UnsupportedM) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"desk-scale cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PadicDynamoError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
