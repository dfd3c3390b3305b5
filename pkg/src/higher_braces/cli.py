"""Command-line frontend: compute braces, run verification suites, work with
series.  Exit codes: 0 success/pass, 1 verification failure or singular
input, 2 usage error.  Results go to stdout, diagnostics and timing to
stderr, so identical invocations produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from itertools import product

from . import __version__
from .algebra import COMMUTATIVE, NONCOMMUTATIVE, gens_from_parities
from .braces import (
    borjeson_brace,
    borjeson_family,
    generalized_brace,
    koszul_brace,
    koszul_family,
)
from .checker import check_a_infinity, check_l_infinity
from .coalgebra import pullback_brace
from .combinatorics import compositions
from .errors import BracesError, SingularSeriesError, UsageError
from .render import FORMATS, TEXT, render, render_text
from .series import (
    CONVENTIONS,
    FACTORIAL,
    PLAIN,
    PRESETS,
    TruncatedSeries,
    c_from_series,
    compose,
    identity_series,
    invert,
    preset,
    random_invertible,
)

_FLAVOR_BY_NAME = {"symmetric": COMMUTATIVE, "tensor": NONCOMMUTATIVE}

SUITES = (
    "pullback-koszul",
    "pullback-borjeson",
    "pullback-general",
    "linf",
    "ainf",
    "c-identity",
    "series-inverse",
)


def _parse_parities(text: str, n: int) -> tuple[int, ...]:
    if text is None:
        return (0,) * n
    try:
        parities = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad parity list {text!r}") from exc
    if len(parities) != n:
        raise UsageError(f"expected {n} parities, got {len(parities)}")
    if any(p not in (0, 1) for p in parities):
        raise UsageError("parities must be 0 or 1")
    return parities


def _parse_coeffs(text: str) -> list[Fraction]:
    out = []
    for piece in text.split(","):
        try:
            out.append(Fraction(piece.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational {piece!r}") from exc
    return out


def _series_from_flags(args, prefix: str, convention: str, order: int) -> TruncatedSeries:
    name = getattr(args, f"{prefix}preset", None)
    coeffs = getattr(args, f"{prefix}coeffs", None)
    if name is not None and coeffs is not None:
        raise UsageError("give a preset or an explicit coefficient list, not both")
    if name is not None:
        return preset(name.replace("-", "_"), order, convention)
    if coeffs is not None:
        values = _parse_coeffs(coeffs)
        if len(values) > order:
            raise UsageError(f"{len(values)} coefficients exceed order {order}")
        values += [Fraction(0)] * (order - len(values))
        return TruncatedSeries(convention, tuple(values))
    raise UsageError("a series is required (preset or coefficient list)")


def _emit(text: str, out_path) -> None:
    print(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_brace(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    parities = _parse_parities(args.parities, args.n)
    gens = gens_from_parities(parities)
    if args.kind == "koszul":
        expr = koszul_brace(gens)
    elif args.kind == "borjeson":
        expr = borjeson_brace(gens)
    else:
        flavor = _FLAVOR_BY_NAME[args.flavor]
        convention = (
            args.f_convention
            if args.f_convention
            else (FACTORIAL if flavor == COMMUTATIVE else PLAIN)
        )
        order = args.order if args.order else max(args.n, 8)
        if order < args.n:
            raise UsageError(f"--order must be at least n = {args.n}")
        f = _series_from_flags(args, "f_", convention, order)
        c = c_from_series(f, invert(f), args.n - 1)
        expr = generalized_brace(gens, f, c, flavor)
    _emit(render(expr, args.format), args.out)
    return 0


def _series_values(series: TruncatedSeries) -> str:
    return ", ".join(str(c) for c in series.coeffs)


def cmd_series(args) -> int:
    if args.action == "coeffs-c":
        order = args.order if args.order else args.r_max + 1
        if order <= args.r_max:
            raise UsageError("--order must exceed --r-max")
    else:
        order = args.order if args.order else 8
    if order < 1:
        raise UsageError("--order must be at least 1")
    convention = args.convention or FACTORIAL
    if args.action == "invert":
        f = _series_from_flags(args, "", convention, order)
        _emit(_series_values(invert(f)), args.out)
    elif args.action == "compose":
        outer = _series_from_flags(args, "outer_", convention, order)
        inner = _series_from_flags(args, "inner_", convention, order)
        _emit(_series_values(compose(outer, inner)), args.out)
    else:
        f = _series_from_flags(args, "", convention, order)
        c = c_from_series(f, invert(f), args.r_max)
        _emit(", ".join(str(v) for v in c.values), args.out)
    return 0


def _verify_pullback(kind: str, n_max: int) -> tuple[bool, int, str]:
    checked = 0
    for n in range(1, n_max + 1):
        for parities in product((0, 1), repeat=n):
            gens = gens_from_parities(parities)
            if kind == "koszul":
                closed = koszul_brace(gens)
                piped = pullback_brace(gens, preset("exp_minus_one", n_max, FACTORIAL), COMMUTATIVE)
            else:
                closed = borjeson_brace(gens)
                piped = pullback_brace(gens, preset("geometric", n_max, PLAIN), NONCOMMUTATIVE)
            checked += 1
            if closed != piped:
                detail = (
                    f"first counterexample at n={n}, parities {parities}:\n"
                    f"  closed form: {render_text(closed)}\n"
                    f"  pullback:    {render_text(piped)}"
                )
                return False, checked, detail
    return True, checked, ""


def _verify_pullback_general(n_max: int, count: int, seed: int) -> tuple[bool, int, str]:
    rng = random.Random(seed)
    checked = 0
    order = max(n_max, 2)
    parity_patterns = lambda n: [(0,) * n, tuple(k % 2 for k in range(n))]
    for trial in range(count):
        for flavor, convention in ((COMMUTATIVE, FACTORIAL), (NONCOMMUTATIVE, PLAIN)):
            f = random_invertible(rng, order, convention)
            c = c_from_series(f, invert(f), n_max - 1)
            for n in range(1, n_max + 1):
                for parities in parity_patterns(n):
                    gens = gens_from_parities(parities)
                    closed = generalized_brace(gens, f, c, flavor)
                    piped = pullback_brace(gens, f, flavor)
                    checked += 1
                    if closed != piped:
                        detail = (
                            f"first counterexample: trial {trial}, {flavor}, n={n}, "
                            f"parities {parities}, f = ({_series_values(f)})"
                        )
                        return False, checked, detail
    return True, checked, ""


def _verify_c_identity(r_max: int) -> tuple[bool, int, str]:
    import math

    checked = 0
    for r in range(1, r_max + 1):
        total = Fraction(0)
        for parts in compositions(r):
            if not parts:
                continue
            k = len(parts) + 1
            denom = 1
            for i in parts:
                denom *= math.factorial(i)
            total += (-1) ** (k - 1) * Fraction(math.factorial(r), denom)
        checked += 1
        if total != (-1) ** r:
            return False, checked, f"identity fails at r={r}: got {total}"
    return True, checked, ""


def _verify_series_inverse(order: int) -> tuple[bool, int, str]:
    import math

    checked = 0
    exp = preset("exp_minus_one", order, FACTORIAL)
    log = invert(exp)
    for n in range(1, order + 1):
        checked += 1
        want = Fraction((-1) ** (n - 1) * math.factorial(n - 1))
        if log[n] != want:
            return False, checked, f"inverse of exp-minus-one: g_{n} = {log[n]}, expected {want}"
    geo = preset("geometric", order, PLAIN)
    alt = invert(geo)
    for n in range(1, order + 1):
        checked += 1
        want = Fraction((-1) ** (n - 1))
        if alt[n] != want:
            return False, checked, f"inverse of geometric: g_{n} = {alt[n]}, expected {want}"
    for f, g, conv in ((exp, log, FACTORIAL), (geo, alt, PLAIN)):
        for pair in (compose(f, g), compose(g, f)):
            checked += 1
            if pair != identity_series(order, conv):
                return False, checked, "composition with inverse is not the identity"
    return True, checked, ""


def cmd_verify(args) -> int:
    start = time.monotonic()
    suite = args.suite
    if suite == "pullback-koszul":
        ok, checked, detail = _verify_pullback("koszul", args.n_max)
    elif suite == "pullback-borjeson":
        ok, checked, detail = _verify_pullback("borjeson", args.n_max)
    elif suite == "pullback-general":
        ok, checked, detail = _verify_pullback_general(args.n_max, args.count, args.seed)
    elif suite in ("linf", "ainf"):
        flip = None
        if args.mutate:
            expected = "phi2-sign" if suite == "linf" else "b2-sign"
            if args.mutate != expected:
                raise UsageError(f"suite {suite} supports --mutate {expected}")
            flip = (2, args.mutate_term)
        if suite == "linf":
            report = check_l_infinity(koszul_family(flip=flip), args.n_max)
        else:
            report = check_a_infinity(borjeson_family(flip=flip), args.n_max)
        ok, checked, detail = report.passed, report.parity_vectors_checked, (
            "" if report.passed else report.summary()
        )
    elif suite == "c-identity":
        ok, checked, detail = _verify_c_identity(args.r_max)
    elif suite == "series-inverse":
        ok, checked, detail = _verify_series_inverse(args.order or 12)
    else:
        raise UsageError(f"unknown suite {suite!r}")
    elapsed = time.monotonic() - start
    if not ok:
        print(detail)
    print(f"{suite}: {'PASS' if ok else 'FAIL'} ({checked} instances)")
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braces",
        description="Exact higher-brace computations over a square-zero operator.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_brace = sub.add_parser("brace", help="print one brace on n generators")
    p_brace.add_argument("kind", choices=("koszul", "borjeson", "general"))
    p_brace.add_argument("--n", type=int, required=True)
    p_brace.add_argument("--parities", help="comma-separated 0/1 list, one per generator")
    p_brace.add_argument("--format", choices=FORMATS, default=TEXT)
    p_brace.add_argument("--flavor", choices=tuple(_FLAVOR_BY_NAME), default="symmetric")
    p_brace.add_argument("--f-preset", dest="f_preset", choices=[p.replace("_", "-") for p in PRESETS])
    p_brace.add_argument("--f-coeffs", dest="f_coeffs", help="comma-separated rationals")
    p_brace.add_argument("--f-convention", dest="f_convention", choices=CONVENTIONS)
    p_brace.add_argument("--order", type=int)
    p_brace.add_argument("--out")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--n-max", dest="n_max", type=int, default=4)
    p_verify.add_argument("--r-max", dest="r_max", type=int, default=12)
    p_verify.add_argument("--order", type=int)
    p_verify.add_argument("--count", type=int, default=20)
    p_verify.add_argument("--seed", type=int, default=2025)
    p_verify.add_argument("--mutate", choices=("phi2-sign", "b2-sign"))
    p_verify.add_argument("--mutate-term", dest="mutate_term", type=int, default=1)

    p_series = sub.add_parser("series", help="invert or compose series, derive coefficients")
    p_series.add_argument("action", choices=("invert", "compose", "coeffs-c"))
    p_series.add_argument("--preset", choices=[p.replace("_", "-") for p in PRESETS])
    p_series.add_argument("--coeffs", help="comma-separated rationals")
    p_series.add_argument("--outer-preset", dest="outer_preset", choices=[p.replace("_", "-") for p in PRESETS])
    p_series.add_argument("--outer-coeffs", dest="outer_coeffs")
    p_series.add_argument("--inner-preset", dest="inner_preset", choices=[p.replace("_", "-") for p in PRESETS])
    p_series.add_argument("--inner-coeffs", dest="inner_coeffs")
    p_series.add_argument("--order", type=int)
    p_series.add_argument("--convention", choices=CONVENTIONS)
    p_series.add_argument("--r-max", dest="r_max", type=int, default=6)
    p_series.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "brace":
            return cmd_brace(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_series(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BracesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
