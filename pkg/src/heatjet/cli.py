"""``heatjet`` command line.

Exit codes: 0 success, 1 bad input, 2 internal consistency failure
(MISMATCH between the two routes, or a failed identity check).
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import combinatorics as cb
from . import fixtures, heat, kdv, metricfile

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _prefactor(d: int) -> str:
    exp = Fraction(-d, 2)
    return f"(4*pi)^({exp})"


def cmd_compute(args) -> int:
    try:
        g = metricfile.load(args.metric)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except metricfile.MetricFileError as exc:
        print(f"{args.metric}:{exc}", file=sys.stderr)
        return EXIT_INPUT
    forms = heat.FORMS if args.form == "both" else (args.form,)
    try:
        heat.resolve_order(g, args.n, args.order)
    except (heat.InsufficientOrderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"# a_{args.n}(0) = {_prefactor(g.dim)} * value   (d = {g.dim}, normal_form = {str(g.normal_form).lower()})")
    results = []
    for form in forms:
        r = heat.heat_invariant(g, args.n, form, args.order)
        results.append(r)
        print(f"{form}: {r.normalized_value}  (truncation order {r.truncation_order})")
    if len(results) == 2:
        same = results[0].normalized_value == results[1].normalized_value
        print("MATCH" if same else "MISMATCH")
        return EXIT_OK if same else EXIT_MISMATCH
    return EXIT_OK


def cmd_kdv(args) -> int:
    if args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    methods = list(kdv.METHODS) if args.method == "both" else [args.method]
    polys = {m: kdv.METHODS[m](args.n) for m in methods}
    first = polys[methods[0]]
    same = all(p == first for p in polys.values())
    if same:
        print(f"G_{args.n} = {first}")
    else:
        for m, p in polys.items():
            print(f"{m}: G_{args.n} = {p}")
    if args.show_h:
        print(f"h_{args.n} = {kdv.heat_coefficient_h_n(args.n)}")
    if len(methods) == 2:
        print("MATCH" if same else "MISMATCH")
    return EXIT_OK if same else EXIT_MISMATCH


def _verify_comb1(args):
    cases = failures = 0
    for d in range(1, args.d_max + 1):
        for v in range(args.v_max + 1):
            for beta in cb.multi_indices(d, v):
                for u in range(args.u_max + 1):
                    cases += 1
                    if cb.comb1_lhs(beta, u) != cb.comb1_rhs(v, u, d):
                        failures += 1
                        print(f"FAIL d={d} beta={beta} u={u}")
    return cases, failures


def _verify_vandermonde(args):
    cases = failures = 0
    top = cb.HalfInteger.of(args.half_max).twice
    for z2 in range(top + 1):
        for w2 in range(top + 1):
            z, w = cb.HalfInteger(z2), cb.HalfInteger(w2)
            for u in range(args.u_max + 1):
                cases += 1
                if cb.vandermonde_half_lhs(z, w, u) != cb.vandermonde_half_rhs(z, w, u):
                    failures += 1
                    print(f"FAIL z={z} w={w} u={u}")
    return cases, failures


def _verify_multinomial(args):
    cases = failures = 0
    for d in range(1, args.d_max + 1):
        for s in range(args.k_max + 1):
            cases += 1
            if not cb.multinomial_check(s, d):
                failures += 1
                print(f"FAIL d={d} k-n={s}")
    return cases, failures


_IDENTITIES = {
    "comb1": _verify_comb1,
    "vandermonde": _verify_vandermonde,
    "multinomial": _verify_multinomial,
}


def cmd_verify(args) -> int:
    if args.d_max is None:
        args.d_max = 3 if args.identity == "multinomial" else 4
    if args.u_max is None:
        args.u_max = 8 if args.identity == "vandermonde" else 6
    cases, failures = _IDENTITIES[args.identity](args)
    print(f"{args.identity}: {cases} cases, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def cmd_fixture(args) -> int:
    if args.kind == "constant-curvature":
        if args.order < 2 or args.order % 2:
            print("error: --order must be even and >= 2", file=sys.stderr)
            return EXIT_INPUT
        g = fixtures.constant_curvature_metric(args.d, args.curvature, args.order)
    elif args.kind == "flat":
        g = fixtures.flat_metric(args.d, args.order)
    else:
        if args.d < 2:
            print("error: random-2jet needs --d >= 2", file=sys.stderr)
            return EXIT_INPUT
        g = fixtures.random_normal_2jet(args.d, args.seed, args.order)
    text = metricfile.dumps(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        times = fixtures.default_times(args.t_count, args.t_min, args.t_max)
        fitted = fixtures.sphere_trace_fit(args.n_max, times, args.k_max)
    except fixtures.FitConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print("# unit S^2: heat trace fit vs engine a_n (d = 2, K = 1)")
    print(f"{'n':>2}  {'fitted':>20}  {'engine':>8}  {'abs_error':>10}")
    for n, a in enumerate(fitted):
        g = fixtures.constant_curvature_metric(2, 1, max(2, heat.sufficient_order(n)))
        exact = heat.a_n_binomial_form(g, n).normalized_value
        print(f"{n:>2}  {a:>20.15f}  {str(exact):>8}  {abs(a - float(exact)):>10.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heatjet", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="normalized heat invariant of a metric file")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--metric", required=True, metavar="PATH")
    c.add_argument("--form", choices=("multiindex", "binomial", "both"), default="both")
    c.add_argument("--order", type=int, default=None, help="truncation order (default 8n)")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("kdv", help="KdV hierarchy polynomial G_n")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--method", choices=("operator", "expanded", "both"), default="operator")
    k.add_argument("--show-h", action="store_true", help="also print the heat coefficient h_n")
    k.set_defaults(func=cmd_kdv)

    v = sub.add_parser("verify", help="exhaustive check of a combinatorial identity")
    v.add_argument("--identity", choices=sorted(_IDENTITIES), required=True)
    v.add_argument("--d-max", type=int, default=None, help="max dimension (comb1: 4, multinomial: 3)")
    v.add_argument("--u-max", type=int, default=None, help="max u (comb1: 6, vandermonde: 8)")
    v.add_argument("--v-max", type=int, default=4, help="max |beta| (comb1)")
    v.add_argument("--half-max", default="9/2", help="max z, w on the half-integer grid (vandermonde)")
    v.add_argument("--k-max", type=int, default=4, help="max k-n (multinomial)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fixture", help="write a test metric file")
    f.add_argument("kind", choices=("constant-curvature", "flat", "random-2jet"))
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--curvature", type=_fraction, default=Fraction(1), metavar="P/Q")
    f.add_argument("--order", type=int, default=16)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("-o", "--output", metavar="PATH")
    f.set_defaults(func=cmd_fixture)

    o = sub.add_parser("oracle", help="numeric cross-check against the S^2 spectrum")
    o.add_argument("kind", choices=("sphere-trace",))
    o.add_argument("--n-max", type=int, default=2)
    o.add_argument("--k-max", type=int, default=4000)
    o.add_argument("--t-min", type=float, default=0.004)
    o.add_argument("--t-max", type=float, default=0.04)
    o.add_argument("--t-count", type=int, default=8)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
