"""Command-line interface.

Subcommands: count, qpoly, coeffs, psi, analogs, hankel, cumulants,
conjectures, sample, verify.  Every subcommand takes --json for
machine-readable output; big integers are printed as decimal strings.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analysis, golden, qanalogs, qenum, sampler
from .core import triangle_from_json, triangle_from_text
from .enumeration import ResourceLimitError, count_triangles
from .polynomials import NPoly, QPoly, is_log_concave
from .psi import psi_total

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _default_threads() -> int:
    env = os.environ.get("CITRI_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _coeff_tokens(poly: QPoly) -> str:
    return " ".join(str(c) for c in poly.coeffs)


def _cmd_count(args) -> int:
    report = count_triangles(
        args.depth,
        args.colors,
        use_top_symmetry=not args.no_top_symmetry,
        batch_size=args.batch_size,
        threads=args.threads,
    )
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(report.total)
    return EXIT_OK


def _cmd_qpoly(args) -> int:
    if args.sigma:
        sigma = tuple(int(t) for t in args.sigma.split())
        poly = qenum.h_sigma_polynomial(sigma)
        label = {"sigma": list(sigma)}
    else:
        poly = qenum.t2_q_polynomial(args.colors, threads=args.threads)
        label = {}
    if args.json:
        out = {"colors": args.colors, "coefficients": [str(c) for c in poly.coeffs]}
        out.update(label)
        print(json.dumps(out))
    else:
        print(_coeff_tokens(poly))
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    result = qenum.low_coefficients(args.colors, args.kmax, inv_cap=args.inv_cap)
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        print(" ".join(str(v) for v in result.values))
        if result.heuristic:
            print("heuristic: inversion cap applied, completeness unverified", file=sys.stderr)
    return EXIT_OK


def _cmd_psi(args) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    stripped = text.lstrip()
    triangle = triangle_from_json(text) if stripped.startswith("{") else triangle_from_text(text)
    value = psi_total(triangle)
    if args.json:
        print(json.dumps({"psi": value}))
    else:
        print(value)
    return EXIT_OK


def _cmd_analogs(args) -> int:
    producers = {
        "R": qanalogs.q_analog_randrianarivony,
        "HZ": qanalogs.q_analog_han_zeng,
        "ZZ": qanalogs.q_analog_zeng_zhou,
    }
    poly = producers[args.which](args.n)
    if args.json:
        print(json.dumps({"which": args.which, "n": args.n,
                          "coefficients": [str(c) for c in poly.coeffs]}))
    else:
        print(_coeff_tokens(poly))
    return EXIT_OK


def _cmd_hankel(args) -> int:
    need = 2 * args.size - 1 + args.offset
    seq = [QPoly.one()] + [
        qenum.t2_q_polynomial(n, threads=args.threads) for n in range(1, need)
    ]
    det = analysis.hankel_determinant(seq, args.size, args.offset)
    root = analysis.smallest_positive_root(det, tolerance=args.tolerance)
    if args.json:
        print(json.dumps({
            "size": args.size,
            "offset": args.offset,
            "determinant": [str(c) for c in det.coeffs],
            "smallest_positive_root": root,
        }))
    else:
        print(f"determinant degree {det.degree}")
        print(f"smallest positive root in (0,1): {root}")
    return EXIT_OK


def _cmd_cumulants(args) -> int:
    if args.samples:
        with open(args.samples) as fh:
            data = json.load(fh)
        moments = [NPoly.constant(1)]
        fact = 1
        for k in range(1, args.orders + 1):
            fact *= k
            moments.append(NPoly(Fraction(c) for c in data[str(k)]) * fact)
    else:
        laws = golden.load_table("coefficient_laws")["coefficients"]
        if args.orders > len(laws):
            print(f"built-in coefficient laws cover orders 1..{len(laws)}", file=sys.stderr)
            return EXIT_USAGE
        moments = [NPoly.constant(1)]
        fact = 1
        for k in range(1, args.orders + 1):
            fact *= k
            law = laws[str(k)]
            moments.append(NPoly(Fraction(c, law["den"]) for c in law["num"]) * fact)
    kappas = analysis.moments_to_cumulants(moments)
    if args.json:
        print(json.dumps({
            "orders": args.orders,
            "cumulants": [[str(c) for c in k.coeffs] for k in kappas],
        }))
    else:
        for i, kappa in enumerate(kappas, start=1):
            print(f"k{i}: " + " ".join(str(c) for c in kappa.coeffs))
    return EXIT_OK


def _cmd_conjectures(args) -> int:
    checks = []
    for n in range(1, args.n_max + 1):
        poly = qenum.p_polynomial(n, threads=args.threads)
        checks.append((f"log-concavity colors={n}", is_log_concave(poly)))
    laws = golden.load_table("coefficient_laws")["coefficients"]
    for k_str, law in laws.items():
        k = int(k_str)
        if k < 2:
            continue
        want = NPoly(Fraction(c, law["den"]) for c in law["num"])
        samples = [
            (n, qenum.low_coefficients(n, k + 1).values[k])
            for n in range(law["n0"], law["n0"] + k + 3)
        ]
        fit = analysis.fit_coefficient_polynomial(k, samples)
        checks.append((f"coefficient polynomial k={k}", fit == want))
        checks.append((f"leading coefficient k={k}", analysis.leading_coefficient_check(fit, k)))
    failures = [name for name, ok in checks if not ok]
    if args.json:
        print(json.dumps({"checks": [{"name": n, "ok": ok} for n, ok in checks]}))
    else:
        for name, ok in checks:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_VERIFICATION if failures else EXIT_OK


_PRESETS = {
    "fig2-top": dict(colors=50, q=0.2, steps=10**7, burnin=0, thin=10**4, final_state=True),
    "fig2-bottom": dict(colors=50, q=0.98, steps=10**7, burnin=0, thin=10**4, final_state=True),
    "fig3": dict(colors=25, q=(0.2, 0.9), steps=10**6 + 10**9, burnin=10**6, thin=10**4,
                 final_state=False),
}


def _cmd_sample(args) -> int:
    jobs = []
    if args.preset:
        preset = _PRESETS[args.preset]
        qs = preset["q"] if isinstance(preset["q"], tuple) else (preset["q"],)
        for qv in qs:
            out = args.out if len(qs) == 1 else os.path.join(args.out, f"q{qv}")
            jobs.append((preset["colors"], qv, preset["steps"], preset["burnin"],
                         preset["thin"], out, preset["final_state"]))
    else:
        missing = [name for name, val in
                   (("--colors", args.colors), ("--q", args.q), ("--steps", args.steps))
                   if val is None]
        if missing:
            print(f"missing required options: {', '.join(missing)}", file=sys.stderr)
            return EXIT_USAGE
        jobs.append((args.colors, args.q, args.steps, args.burnin, args.thin,
                     args.out, args.final_state))
    for colors, qv, steps, burnin, thin, out, final in jobs:
        cfg = sampler.SamplerConfig(
            n=colors, q=qv, steps=steps, burn_in=burnin, thinning=thin,
            seed=args.seed, collect_final_state=final or args.final_state,
        )
        stats = sampler.run(cfg)
        sampler.write_outputs(stats, out, pgm=args.pgm)
        print(f"wrote {out} (samples={stats.samples}, "
              f"acceptance={stats.acceptance_rate:.4f})")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = golden.run_verification(fast=args.fast, threads=args.threads)
    failures = [r for r in results if not r.ok]
    if args.json:
        print(json.dumps({"checks": [
            {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
        ]}))
    else:
        for r in results:
            line = f"{'PASS' if r.ok else 'FAIL'}  {r.name}"
            if r.detail and not r.ok:
                line += f"  ({r.detail})"
            print(line)
        print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return EXIT_VERIFICATION if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citri",
        description="Colored interlacing triangles: enumeration, q-counting, sampling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count triangles of a given depth and palette size")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--no-top-symmetry", action="store_true",
                   help="disable the final-level involution reduction")
    p.add_argument("--batch-size", type=int, default=10_000_000,
                   help="max frontier rows held at once (default 10 million)")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("qpoly", help="depth-2 q-counting polynomial coefficients")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--sigma", type=str, default=None,
                   help="bottom row, space separated: condition on this row")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_qpoly)

    p = sub.add_parser("coeffs", help="leading coefficients of the normalized q-polynomial")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--inv-cap", type=int, default=None,
                   help="restrict bottom rows by inversion count (heuristic)")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("psi", help="total psi weight of a triangle file")
    p.add_argument("file", help="triangle in text or JSON format; - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_psi)

    p = sub.add_parser("analogs", help="classical q-analogs of the Genocchi medians")
    p.add_argument("--which", choices=("R", "HZ", "ZZ"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_analogs)

    p = sub.add_parser("hankel", help="Hankel determinant and its smallest root in (0,1)")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--offset", type=int, choices=(0, 1), required=True)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_hankel)

    p = sub.add_parser("cumulants", help="moment-cumulant transform of k!*a_k")
    p.add_argument("--orders", type=int, default=5)
    p.add_argument("--samples", type=str, default=None,
                   help="JSON file mapping order k to rational coefficient lists of a_k")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_cumulants)

    p = sub.add_parser("conjectures", help="log-concavity and coefficient-law checkers")
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_conjectures)

    p = sub.add_parser("sample", help="run the depth-2 Metropolis sampler")
    p.add_argument("--colors", type=int)
    p.add_argument("--q", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--burnin", type=int, default=0)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, required=True)
    p.add_argument("--preset", choices=sorted(_PRESETS), default=None)
    p.add_argument("--pgm", action="store_true", help="also write PGM heatmaps")
    p.add_argument("--final-state", action="store_true",
                   help="write the final state as a triangle JSON file")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify", help="recompute and compare the reference tables")
    p.add_argument("--fast", action="store_true",
                   help="skip the larger polynomials and the long sampler run")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
