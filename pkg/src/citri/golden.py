"""Reference-value tables and the golden verification suite.

The data files under ``citri/data`` hold known reference values (count
tables, valuation grids, coefficient lists, root locations) as plain
JSON, one file per table, so they can be audited independently of the
code.  ``run_verification`` recomputes everything it can afford and
compares; it is the engine behind the ``verify`` CLI subcommand and the
acceptance tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import factorial

from . import analysis, qanalogs, qenum, sampler
from .core import Row
from .dumont import count_dumont, dumont_to_top_row, top_row_to_dumont
from .enumeration import count_triangles, extensions, two_adic_valuation
from .polynomials import NPoly, QPoly, is_log_concave, is_palindromic


def load_table(name: str) -> dict:
    with resources.files("citri.data").joinpath(f"{name}.json").open() as fh:
        return json.load(fh)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(results: list, name: str, ok: bool, detail: str = "") -> None:
    results.append(CheckResult(name, bool(ok), detail))


def run_verification(fast: bool = False, threads: int = 1) -> list:
    """Recompute the golden values and compare; returns CheckResults.

    fast skips the checks that need the larger q-polynomials (n = 8)
    and the long sampler run.
    """
    results: list = []

    # counts
    counts = load_table("triangle_counts")
    slow_cells = {tuple(c) for c in counts["slow"]}
    for N_str, row in counts["counts"].items():
        for n_str, want in row.items():
            N, n = int(N_str), int(n_str)
            if (N, n) in slow_cells:
                continue
            got = count_triangles(N, n, threads=threads).total
            _check(results, f"count depth={N} colors={n}", got == want, f"{got} vs {want}")

    # valuations
    vals = load_table("valuations")["valuations"]
    for N_str, row in vals.items():
        for n_str, want in row.items():
            N, n = int(N_str), int(n_str)
            if want is None or (N, n) in slow_cells:
                continue
            got = count_triangles(N, n, threads=threads).two_adic
            _check(results, f"valuation depth={N} colors={n}", got == want, f"{got} vs {want}")

    # Genocchi medians and the depth-2 bijection
    H = load_table("genocchi")["H"]
    got_H = [count_dumont(k) for k in range(len(H))]
    _check(results, "genocchi medians 0..5", got_H == H, f"{got_H}")
    identity_counts = []
    for n in range(1, 6):
        tops = list(extensions(tuple(range(1, n + 1)), n, 1))
        round_trip = all(
            dumont_to_top_row(top_row_to_dumont(Row(n, 2, t))).entries == t for t in tops
        )
        identity_counts.append(len(tops) == count_dumont(n) and round_trip)
    _check(results, "depth-2 bijection n<=5", all(identity_counts))
    _check(
        results,
        "depth-2 counts n!*H_n",
        all(
            count_triangles(2, n).total == factorial(n) * count_dumont(n)
            for n in range(1, 7)
        ),
    )

    # q-polynomials
    ptab = load_table("p_polynomials")
    n_max = 7 if fast else 8
    for n_str, want in ptab["full"].items():
        n = int(n_str)
        if n > n_max:
            continue
        got = qenum.p_polynomial(n, threads=threads)
        _check(
            results,
            f"q-polynomial colors={n}",
            list(got.coeffs) == want
            and is_palindromic(got, n * (n - 1) // 2)
            and got.degree == n * (n - 1) // 2,
            f"degree {got.degree}",
        )

    hs = load_table("h_sigma")
    for n_str, want in hs["identity"].items():
        n = int(n_str)
        got = qenum.h_sigma_polynomial(tuple(range(1, n + 1)))
        _check(results, f"identity-bottom polynomial colors={n}", list(got.coeffs) == want)
    for sigma_str, want in hs["witnesses"].items():
        sigma = tuple(int(t) for t in sigma_str.split())
        got = qenum.h_sigma_polynomial(sigma)
        _check(results, f"conditioned polynomial sigma={sigma_str}", list(got.coeffs) == want)

    # classical q-analogs
    qa = load_table("q_analogs")
    producers = {
        "R": qanalogs.q_analog_randrianarivony,
        "HZ": qanalogs.q_analog_han_zeng,
        "ZZ": qanalogs.q_analog_zeng_zhou,
    }
    for which, table in (("R", qa["R"]), ("HZ", qa["HZ"]), ("ZZ", qa["ZZ"])):
        ok = True
        for n_str, want in table.items():
            got = producers[which](int(n_str))
            ok = ok and list(got.coeffs) == want and got.eval_int(1) == count_dumont(int(n_str))
        _check(results, f"q-analog {which} n<=5", ok)

    # linear-coefficient law
    laws = load_table("coefficient_laws")
    a1_n_max = 9 if fast else 15
    _check(
        results,
        f"linear coefficient 3<=n<={a1_n_max}",
        all(qenum.a1_check(n) for n in range(3, a1_n_max + 1)),
    )

    # low-coefficient prefixes
    for n_str, want in ptab["prefixes"].items():
        n = int(n_str)
        if fast and n > 11:
            continue
        got = qenum.low_coefficients(n, len(want))
        _check(results, f"coefficient prefix colors={n}", list(got.values) == want)

    # conjecture checkers
    log_n_max = 7 if fast else 9
    _check(
        results,
        f"log-concavity n<={log_n_max}",
        all(
            is_log_concave(QPoly(ptab["full"][str(n)])) and
            is_log_concave(qenum.p_polynomial(n, threads=threads))
            for n in range(1, log_n_max + 1)
        ),
    )
    fits_ok = True
    leading_ok = True
    for k_str, law in laws["coefficients"].items():
        k = int(k_str)
        if k < 2:
            continue
        want_poly = NPoly(Fraction(c, law["den"]) for c in law["num"])
        n0 = law["n0"]
        samples = [
            (n, qenum.low_coefficients(n, k + 1).values[k]) for n in range(n0, n0 + k + 3)
        ]
        fit = analysis.fit_coefficient_polynomial(k, samples)
        fits_ok = fits_ok and fit == want_poly
        leading_ok = leading_ok and analysis.leading_coefficient_check(fit, k)
    _check(results, "coefficient polynomial fits k=2..5", fits_ok)
    _check(results, "leading coefficients 5^k", leading_ok)

    # cumulants
    coeff_polys = {
        int(k): NPoly(Fraction(c, law["den"]) for c in law["num"])
        for k, law in laws["coefficients"].items()
    }
    moments = [NPoly.constant(1)]
    f = 1
    for k in range(1, 6):
        f *= k
        moments.append(coeff_polys[k] * f)
    kappas = analysis.moments_to_cumulants(moments)
    want_kappas = [NPoly(laws["cumulants"][str(k)]) for k in range(1, 6)]
    _check(results, "cumulant lines k<=5", kappas == want_kappas)

    # Hankel roots
    if not fast:
        seq = [QPoly.one()] + [qenum.t2_q_polynomial(n, threads=threads) for n in range(1, 9)]
        for target in load_table("hankel")["roots"]:
            det = analysis.hankel_determinant(seq, target["size"], target["offset"])
            root = analysis.smallest_positive_root(det, tolerance=target["tolerance"] / 10)
            ok = root is not None and abs(root - target["root"]) <= target["tolerance"]
            inside = Fraction(target["root"]).limit_denominator(10**6) / 2
            _check(
                results,
                f"hankel root size={target['size']} offset={target['offset']}",
                ok and det.eval_fraction(inside) < 0 and det.eval_int(1) >= 0,
                f"root {root}",
            )

    # sampler distribution
    if not fast:
        tv_ok = True
        details = []
        for qv in (Fraction(1, 5), Fraction(1, 2), Fraction(1)):
            cfg = sampler.SamplerConfig(
                n=3, q=float(qv), steps=10**7, burn_in=10**5, thinning=100,
                seed=20240801, track_states=True,
            )
            stats = sampler.run(cfg)
            tv = sampler.total_variation(stats.state_histogram, sampler.exact_distribution(3, qv))
            details.append(f"q={float(qv)}: {tv:.4f}")
            tv_ok = tv_ok and tv < 0.01
        _check(results, "sampler distribution n=3", tv_ok, "; ".join(details))
    _check(results, "sampler connectivity n<=4", all(sampler.connectivity_check(n) for n in (2, 3, 4)))

    return results

