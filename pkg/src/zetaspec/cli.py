"""Command-line interface: ``zetaspec <command> ...``.

Exit status is 0 on success, 1 when a computation raises (the error class
name is printed) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from numbers import Number

from . import __version__
from .cubical import DEFAULT_ORDER, gauss_legendre
from .errors import MahlerViolation, PolySyntaxError, ZetaError
from .mpoly import check_mahler, parse_poly
from .series import (
    INTEGRAL,
    SERIES,
    product_rule_zeta,
    raabe_check,
    shift_value_poly,
    zeta_shift,
    zeta_special,
)
from .values import pole_candidates, product_rule_z, residue, z_general, z_special, z_zero_log

RATIONAL_TOL = 1e-9
MAX_DENOMINATOR = 1000


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing


def _parse_complex(text: str) -> complex:
    text = text.strip().replace(" ", "")
    try:
        return complex(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _parse_vector(text: str) -> list[Fraction]:
    return [_parse_fraction(x) for x in text.split(",")]


def _common(sub: argparse.ArgumentParser, factors: bool = False):
    sub.add_argument("-p", "--num-vars", dest="p", type=int, default=1, help="number of variables")
    if factors:
        sub.add_argument("-f", dest="f", action="append", required=True, help="factor polynomial (repeatable)")
    else:
        sub.add_argument("-f", dest="f", required=True, help="polynomial f")
    sub.add_argument("-g", dest="g", default="1", help="polynomial g (default 1)")
    sub.add_argument("--order", type=int, default=DEFAULT_ORDER, help="Gauss-Legendre order per axis")
    sub.add_argument("--assume-mahler", action="store_true", help="proceed when Mahler's hypothesis is only LIKELY")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetaspec", description="Special values of Dirichlet series and zeta integrals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("zeta", help="series special value zeta(-N; f, g)")
    _common(sp)
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--shift", type=_parse_vector, default=None, help="comma-separated shift a in [0,1]^p")

    sp = subs.add_parser("zint", help="integral special value Z(-N; f, g)")
    _common(sp)
    sp.add_argument("-N", type=int, required=True)

    sp = subs.add_parser("zgen", help="Z(s; f, g) at general complex s")
    _common(sp)
    sp.add_argument("-s", type=_parse_complex, required=True)
    sp.add_argument("--w", type=float, default=None, help="split radius override")

    sp = subs.add_parser("shiftpoly", help="coefficients of a -> Z(-N; f_a, g_a)")
    _common(sp)
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--kind", choices=("integral", "series"), default="integral")

    sp = subs.add_parser("poles", help="pole candidates of Z and zeta")
    _common(sp)
    sp.add_argument("--ell-max", type=int, default=5)

    sp = subs.add_parser("residue", help="residue of Z(s; f, g) at a candidate s0")
    _common(sp)
    sp.add_argument("--s0", type=_parse_fraction, required=True)

    sp = subs.add_parser("check-mahler", help="three-tier check of Mahler's hypothesis")
    sp.add_argument("-p", "--num-vars", dest="p", type=int, default=1)
    sp.add_argument("-f", dest="f", required=True)
    sp.add_argument("--grid-density", type=int, default=9)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    verify = subs.add_parser("verify", help="identity checks")
    vsubs = verify.add_subparsers(dest="check", required=True)
    vp = vsubs.add_parser("product-rule", help="product rule at s = 0")
    _common(vp, factors=True)
    vp.add_argument("--kind", choices=("zeta", "zint"), default="zeta")
    vr = vsubs.add_parser("raabe", help="Raabe identity at s in the convergence half-plane")
    _common(vr)
    vr.add_argument("-s", type=_parse_complex, required=True)
    vr.add_argument("--tol", type=float, default=1e-6)
    return parser


# ---------------------------------------------------------------------------
# output


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, Number):
        return float(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _value_record(value):
    if value is None:
        return None
    z = complex(value)
    return {"re": z.real, "im": z.imag}


def suggest_rational(value) -> Fraction | None:
    """A rational with denominator <= 1000 within 1e-9 of a real value, if any."""
    z = complex(value)
    if abs(z.imag) > RATIONAL_TOL:
        return None
    guess = Fraction(z.real).limit_denominator(MAX_DENOMINATOR)
    return guess if abs(float(guess) - z.real) <= RATIONAL_TOL else None


def _record(command, value=None, error=0.0, method="", params=None, warnings_=(), **extra):
    rec = {
        "command": command,
        "value": _value_record(value),
        "error_estimate": float(error),
        "method": method,
        "params": _jsonable(params or {}),
        "warnings": list(warnings_),
    }
    if isinstance(value, Fraction):
        rec["exact"] = str(value)
    elif value is not None:
        guess = suggest_rational(value)
        if guess is not None:
            rec["rational_suggestion"] = str(guess)
    rec.update(_jsonable(extra))
    return rec


def _emit(rec: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rec, sort_keys=True) + "\n")
        return
    out.write(f"command: {rec['command']}\n")
    if rec["value"] is not None:
        re_, im_ = rec["value"]["re"], rec["value"]["im"]
        text = repr(re_) if im_ == 0 else f"{re_!r} {'+' if im_ >= 0 else '-'} {abs(im_)!r}i"
        out.write(f"value: {text}\n")
        out.write(f"error_estimate: {rec['error_estimate']!r}\n")
    if "exact" in rec:
        out.write(f"exact: {rec['exact']}\n")
    if "rational_suggestion" in rec:
        out.write(f"suggested rational (not certified): {rec['rational_suggestion']}\n")
    if rec["method"]:
        out.write(f"method: {rec['method']}\n")
    skip = {"command", "value", "error_estimate", "exact", "rational_suggestion", "method", "params", "warnings"}
    for key in sorted(k for k in rec if k not in skip):
        out.write(f"{key}: {json.dumps(rec[key], sort_keys=True)}\n")
    if rec["params"]:
        out.write("params: " + ", ".join(f"{k}={json.dumps(v)}" for k, v in sorted(rec["params"].items())) + "\n")
    for w in rec["warnings"]:
        out.write(f"warning: {w}\n")


# ---------------------------------------------------------------------------
# commands


def _gate(f, assume: bool, notes: list, index=None):
    report = check_mahler(f)
    label = f"factor {index}: " if index is not None else ""
    if report.verdict == "VIOLATED":
        at = "(" + ", ".join(str(c) for c in report.witness) + ")" if report.witness else "?"
        raise MahlerViolation(f"{label}{f} violates Mahler's hypothesis ({report.detail}) at {at}", report.witness, index)
    if report.verdict == "LIKELY":
        if not assume:
            raise MahlerViolation(f"{label}Mahler's hypothesis for {f} is only LIKELY; rerun with --assume-mahler")
        notes.append(f"{label}Mahler's hypothesis assumed (sampling found no violation)")


def _run(args, notes: list) -> dict:
    cmd = args.command
    if cmd == "check-mahler":
        f = parse_poly(args.f, args.p)
        rep = check_mahler(f, args.grid_density)
        return _record(
            cmd,
            params={"grid_density": args.grid_density},
            verdict=rep.verdict,
            witness=list(rep.witness) if rep.witness else None,
            min_abs_sampled=list(rep.min_abs_sampled),
            detail=rep.detail,
        )

    rule = gauss_legendre(args.order)
    g = parse_poly(args.g, args.p)
    if cmd == "verify":
        texts = args.f if isinstance(args.f, list) else [args.f]
        fs = [parse_poly(t, args.p) for t in texts]
        for j, fj in enumerate(fs):
            _gate(fj, args.assume_mahler, notes, index=j)
        if args.check == "product-rule":
            fn = product_rule_zeta if args.kind == "zeta" else product_rule_z
            rep = fn(fs, g, rule)
            return _record(
                "verify product-rule",
                value=rep.lhs,
                error=rep.combined_error,
                method=args.kind.upper(),
                params={"order": args.order, "factors": args.f},
                warnings_=notes,
                lhs=rep.lhs,
                rhs=rep.rhs,
                discrepancy=rep.discrepancy,
                holds=rep.holds,
            )
        rep = raabe_check(fs[0], g, args.s, rule, args.tol)
        return _record(
            "verify raabe",
            value=rep.integral_side,
            error=rep.integral_error,
            method="RAABE",
            params={"s": args.s, "order": args.order, "tol": args.tol},
            warnings_=notes,
            series_side=complex(rep.series_side),
            series_error=rep.series_error,
            discrepancy=rep.discrepancy,
            holds=rep.holds,
        )

    f = parse_poly(args.f, args.p)
    if cmd == "poles":
        cands = pole_candidates(f, g, args.ell_max)
        return _record(
            cmd,
            params={"ell_max": args.ell_max},
            candidates=[{"s0": str(c.s0), "ell": c.ell, "excluded": c.excluded} for c in cands],
        )
    _gate(f, args.assume_mahler, notes)
    if cmd == "zeta":
        if args.shift is not None:
            v = zeta_shift(f, g, args.N, args.shift, rule, check=False)
        else:
            v = zeta_special(f, g, args.N, rule, check=False)
        return _record(cmd, v.value, v.error_estimate, v.method, v.params, notes)
    if cmd == "zint":
        v = z_special(f, g, args.N, rule, check=False)
        extra = {}
        if args.N == 0:
            alt = z_zero_log(f, g, rule, check=False)
            gap = abs(complex(v.value) - complex(alt.value))
            extra = {"log_form": alt.value, "log_form_gap": gap}
            if gap > v.error_estimate + alt.error_estimate + 1e-12:
                notes.append(f"log form disagrees by {gap:.3g}")
        return _record(cmd, v.value, v.error_estimate, v.method, v.params, notes, **extra)
    if cmd == "zgen":
        v, b = z_general(f, g, args.s, rule, w=args.w, check=False)
        return _record(
            cmd, v.value, v.error_estimate, v.method, v.params, notes,
            breakdown={"z1": b.z1, "nk": b.nk, "m_terms": {str(k): t for k, t in b.m_terms.items()}},
        )
    if cmd == "shiftpoly":
        kind = INTEGRAL if args.kind == "integral" else SERIES
        res = shift_value_poly(f, g, args.N, kind, rule, check=False)
        coeffs = [
            {"L": list(L), "c": c if isinstance(c, Fraction) else complex(c), "error": res.table.errors.get(L, 0.0)}
            for L, c in sorted(res.table.coeffs.items())
        ]
        if res.flagged:
            notes.append(f"coefficients beyond the degree bound reach {res.dropped_mass:.3g}")
        return _record(
            cmd,
            method=kind,
            params={"N": args.N, "order": args.order, "degree_bound": res.table.degree_bound},
            warnings_=notes,
            coefficients=coeffs,
            residual=res.residual,
            dropped_mass=res.dropped_mass,
        )
    if cmd == "residue":
        v = residue(f, g, args.s0, rule, check=False)
        return _record(cmd, v.value, v.error_estimate, v.method, v.params, notes)
    raise UsageError(f"unknown command {cmd}")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "p", 1) < 1:
        err.write("zetaspec: error: -p must be positive\n")
        return 2
    notes: list[str] = []
    fmt = getattr(args, "format", "text")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            rec = _run(args, notes)
        rec["warnings"].extend(str(w.message) for w in caught if str(w.message) not in rec["warnings"])
    except ZetaError as exc:
        name = type(exc).__name__
        if fmt == "json":
            out.write(json.dumps({"command": args.command, "error": {"name": name, "message": str(exc)}}, sort_keys=True) + "\n")
        err.write(f"zetaspec: {name}: {exc}\n")
        return 1
    _emit(rec, fmt, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
