"""Command-line driver: verification suites and lattice/growth exports.

Subcommands:
    verify  run identity suites and write a structured report
    ktypes  export the K-type lattice (records, table, or figure text)
    gkdim   export the graded growth table and the fitted invariants
    ladder  print the closed ladder form and its oracle comparison

Exit codes: 0 all checks pass, 1 at least one verification failure,
2 invalid configuration. Reports are byte-identical for identical
configuration and seed; progress lines go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .errors import ConfigurationError, VerificationError
from .gkmod import (
    default_window,
    generating_threshold,
    gk_invariants,
    irreducible,
    ktype_support,
    ladder_closed,
    ladder_identity,
    ladder_iterated,
    weight_set,
)
from .module_e import ExtremalSpec
from .report import Report, inapplicable
from .suites import gkmod_suite, harmonics_suite, liealg_suite, module_suite, series_suite

SUITES = ("liealg", "sl2", "module", "gkmod", "all")
FORMATS = ("json", "csv", "figure")

_CONFIG_INT_KEYS = ("p", "q", "m", "depth", "window", "seed", "k", "l", "mu", "nu")
_CONFIG_STR_KEYS = ("suite", "format", "out", "direction")


def _load_config_file(path: str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigurationError(f"malformed config line {raw!r}")
        values[key.strip()] = value.strip()
    return values


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from a key=value config file; flags win."""
    if not getattr(args, "config", None):
        return args
    values = _load_config_file(args.config)
    for key, text in values.items():
        if key in _CONFIG_INT_KEYS:
            value: object = int(text)
        elif key in _CONFIG_STR_KEYS:
            value = text
        else:
            raise ConfigurationError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)
    return args


def _require(args: argparse.Namespace, *names: str):
    for name in names:
        if getattr(args, name, None) is None:
            raise ConfigurationError(f"--{name} is required")


def _write_output(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _progress(report: Report):
    for check in report.sorted_checks():
        sys.stderr.write(
            f"{check.status.upper():13s} {check.name} ({check.elapsed:.2f}s)\n"
        )


# -- verify -----------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    _require(args, "p", "q")
    suite = args.suite or "all"
    if suite not in SUITES:
        raise ConfigurationError(f"unknown suite {suite!r}")
    fmt = args.format or "json"
    if fmt not in ("json", "csv"):
        raise ConfigurationError(f"verify supports formats json and csv, not {fmt!r}")
    p, q, m = args.p, args.q, args.m
    seed = args.seed if args.seed is not None else 0
    if p < 1 or q < 1:
        raise ConfigurationError("p and q must be at least 1")
    wants_module = suite in ("module", "all")
    wants_gkmod = suite in ("gkmod", "all")
    if (wants_module or wants_gkmod) and (p - q) % 2 != 0:
        raise ConfigurationError(
            f"p = {p} and q = {q} must have equal parity for the {suite} suite"
        )
    if suite == "gkmod" and m is None:
        raise ConfigurationError("--m is required for the gkmod suite")
    if m is not None and 2 * (m + 3) > p + q:
        raise ConfigurationError(
            f"m = {m} is out of range: need m + 3 <= (p + q)/2"
        )

    checks = []
    if suite in ("liealg", "all"):
        checks += liealg_suite(p, q)
    if suite in ("sl2", "all"):
        checks += series_suite()
        checks += harmonics_suite(max_n=min(6, max(p, q, 3)), max_d=6)
    if wants_module:
        checks += module_suite(p, q, seed=seed, depth=args.depth)
    if wants_gkmod:
        if m is None:
            checks.append(
                inapplicable(
                    "gkmod.suite",
                    "lattice, ladder, growth and connectivity checks",
                    "m not configured",
                )
            )
        else:
            checks += gkmod_suite(p, q, m, window=args.window, depth=args.depth)

    effective_window = (
        args.window
        if args.window is not None
        else (default_window(p, q, m) if m is not None else None)
    )
    report = Report(
        config={
            "command": "verify",
            "p": p,
            "q": q,
            "m": m,
            "suite": suite,
            "seed": seed,
            "depth": args.depth if args.depth is not None else "auto",
            "window": effective_window,
        },
        checks=checks,
    )
    _progress(report)
    _write_output(report.to_json() if fmt == "json" else report.to_csv(), args.out)
    return report.exit_code


# -- ktypes ------------------------------------------------------------------------


def _transition_payload(rec) -> Dict:
    return {
        "coefficient": str(rec.coefficient) if rec.coefficient is not None else None,
        "vanishes": rec.vanishes,
        "harmonic_blocked": rec.harmonic_blocked,
        "target_in_support": rec.target_in_support,
        "carries": rec.carries,
    }


def _flag(rec) -> str:
    if rec.harmonic_blocked:
        return "blocked"
    return "zero" if rec.vanishes else "nonzero"


def _cmd_ktypes(args: argparse.Namespace) -> int:
    _require(args, "p", "q", "m")
    fmt = args.format or "json"
    if fmt not in FORMATS:
        raise ConfigurationError(f"unknown format {fmt!r}")
    lattice = ktype_support(args.p, args.q, args.m, args.window)
    points = lattice.ordered_points()
    if fmt == "json":
        payload = {
            "config": {
                "command": "ktypes",
                "p": args.p,
                "q": args.q,
                "m": args.m,
                "window": lattice.window,
            },
            "weights": list(lattice.weights),
            "points": [
                {
                    "kappa_plus": str(pt.kappa_plus),
                    "kappa_minus": str(pt.kappa_minus),
                    "k": pt.k,
                    "l": pt.l,
                    "mu": pt.mu,
                    "case": pt.case,
                    "transitions": {
                        d: _transition_payload(rec)
                        for d, rec in sorted(
                            lattice.transitions[(pt.kappa_plus, pt.kappa_minus)].items()
                        )
                    },
                }
                for pt in points
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    elif fmt == "csv":
        lines = [
            "kappa_plus,kappa_minus,k,l,mu,case,"
            "NE_coefficient,NW_coefficient,SE_coefficient,SW_coefficient,"
            "NE_flag,NW_flag,SE_flag,SW_flag"
        ]
        for pt in points:
            recs = lattice.transitions[(pt.kappa_plus, pt.kappa_minus)]
            coeffs = [
                str(recs[d].coefficient) if recs[d].coefficient is not None else ""
                for d in ("NE", "NW", "SE", "SW")
            ]
            flags = [_flag(recs[d]) for d in ("NE", "NW", "SE", "SW")]
            lines.append(
                ",".join(
                    [
                        str(pt.kappa_plus),
                        str(pt.kappa_minus),
                        str(pt.k),
                        str(pt.l),
                        str(pt.mu),
                        pt.case,
                    ]
                    + coeffs
                    + flags
                )
            )
        text = "\n".join(lines) + "\n"
    else:
        p, q, m = args.p, args.q, args.m
        lines = [
            f"figure k-type lattice p={p} q={q} m={m} window={lattice.window}",
            "axes: horizontal kappa+, vertical kappa-",
            f"corner: kappa+ = p/2 = {Fraction(p, 2)}, kappa- = q/2 = {Fraction(q, 2)}",
            f"region: kappa+ >= {Fraction(p, 2)}, kappa- >= {Fraction(q, 2)},"
            f" |kappa+ - kappa-| <= {m}",
        ]
        for w in lattice.weights:
            lines.append(f"line: kappa+ - kappa- = {w}")
        for pt in points:
            recs = lattice.transitions[(pt.kappa_plus, pt.kappa_minus)]
            moves = ",".join(d for d in ("NE", "NW", "SE", "SW") if recs[d].carries)
            marker = "open" if pt.case == "i" else "filled"
            lines.append(
                f"point kappa+={pt.kappa_plus} kappa-={pt.kappa_minus} k={pt.k} "
                f"l={pt.l} mu={pt.mu} case={pt.case} marker={marker} moves={moves}"
            )
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 0


# -- gkdim -------------------------------------------------------------------------


def _cmd_gkdim(args: argparse.Namespace) -> int:
    _require(args, "p", "q", "m")
    fmt = args.format or "json"
    if fmt not in ("json", "csv"):
        raise ConfigurationError(f"gkdim supports formats json and csv, not {fmt!r}")
    inv = gk_invariants(args.p, args.q, args.m)
    threshold = generating_threshold(args.p, args.q, args.m, args.window)
    if fmt == "csv":
        lines = ["n,dim"] + [f"{n},{d}" for n, d in inv.table]
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "config": {
                "command": "gkdim",
                "p": args.p,
                "q": args.q,
                "m": args.m,
            },
            "table": [[n, d] for n, d in inv.table],
            "fitted_polynomial": [str(c) for c in inv.coefficients],
            "stabilization_onset": inv.onset,
            "gk_dimension": inv.gk_dimension,
            "bernstein_degree": inv.bernstein_degree,
            "generating_threshold": threshold,
            "closed_formula_check": "pass",
        }
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    _write_output(text, args.out)
    return 0


# -- ladder ------------------------------------------------------------------------


def _cmd_ladder(args: argparse.Namespace) -> int:
    _require(args, "p", "q", "k", "l", "mu", "nu")
    direction = args.direction or "down"
    if direction not in ("down", "up"):
        raise ConfigurationError(f"direction must be down or up, not {direction!r}")
    kind = "highest" if direction == "down" else "lowest"
    spec = ExtremalSpec(kind, args.p, args.q, args.k, args.l, args.mu)
    closed = ladder_closed(spec, args.nu)
    iterated = ladder_iterated(spec, args.nu)
    agrees = (closed - iterated).is_zero(args.depth)
    weight = spec.weight
    lines = [
        f"ladder p={args.p} q={args.q} k={args.k} l={args.l} mu={args.mu} "
        f"direction={direction} nu={args.nu}",
        f"start: {kind}-weight vector, weight {weight} "
        f"(kappa+ = {spec.kappa_plus}, kappa- = {spec.kappa_minus})",
        f"closed form after {args.nu} step(s):",
    ]
    if closed.terms:
        for (a, b, alpha), coeff in sorted(closed.terms.items()):
            lines.append(f"  rho_x^{a} rho_y^{b} psi[{alpha}] : {coeff}")
    else:
        lines.append("  0")
    lines.append(
        "iterated one-step action: "
        + ("agrees (series oracle)" if agrees else "DISAGREES")
    )
    constants = []
    if kind == "highest" and weight.denominator == 1 and weight >= 0:
        m = int(weight)
        lines.append("up-down constants (raise^j lower^j on the start vector):")
        for j in range(0, min(args.nu, m + 1) + 1):
            c = ladder_identity(spec, j)
            constants.append((j, c))
            lines.append(f"  j={j} : {c}")
    if args.format == "json":
        payload = {
            "config": {
                "command": "ladder",
                "p": args.p,
                "q": args.q,
                "k": args.k,
                "l": args.l,
                "mu": args.mu,
                "direction": direction,
                "nu": args.nu,
            },
            "weight": str(weight),
            "closed_terms": [
                {"a": a, "b": b, "alpha": str(alpha), "coefficient": str(c)}
                for (a, b, alpha), c in sorted(closed.terms.items())
            ],
            "agrees_with_iteration": agrees,
            "up_down_constants": [[j, str(c)] for j, c in constants],
        }
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 0 if agrees else 1


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opqmod",
        description="Exact verification and exports for the o(p,q) ladder modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, help="positive-signature dimension")
        sp.add_argument("--q", type=int, help="negative-signature dimension")
        sp.add_argument("--m", type=int, help="ladder depth (module label)")
        sp.add_argument("--depth", type=int, help="series truncation override")
        sp.add_argument("--window", type=int, help="lattice window override")
        sp.add_argument("--format", choices=FORMATS, help="output format")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--seed", type=int, help="random seed (default 0)")
        sp.add_argument("--config", help="key=value config file; flags override")

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", choices=SUITES, help="suite selection (default all)")
    sp.set_defaults(handler=_cmd_verify)

    sp = sub.add_parser("ktypes", help="export the K-type lattice")
    common(sp)
    sp.set_defaults(handler=_cmd_ktypes)

    sp = sub.add_parser("gkdim", help="export growth table and invariants")
    common(sp)
    sp.set_defaults(handler=_cmd_gkdim)

    sp = sub.add_parser("ladder", help="closed ladder form and oracle comparison")
    common(sp)
    sp.add_argument("--k", type=int, help="harmonic degree in the x block")
    sp.add_argument("--l", type=int, help="harmonic degree in the y block")
    sp.add_argument("--mu", type=int, help="radial exponent of the extremal vector")
    sp.add_argument("--nu", type=int, help="number of ladder steps")
    sp.add_argument("--direction", choices=("down", "up"), help="ladder direction")
    sp.set_defaults(handler=_cmd_ladder)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return args.handler(args)
    except ConfigurationError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except VerificationError as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
