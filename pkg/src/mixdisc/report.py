"""Reproduction report: one row per published quantity, checked against an
independent route with a fixed tolerance."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import discrimination as disc
from . import fock
from .linalg import DensityOperator, overlap, random_state, trace_norm
from .mc import Scenario, estimate_error
from .qubits import X, Z, balanced_type1, balanced_type2, distinguishable_overlap, single_particle_density, type1_product_state

REPORT_SEED = 20_000_417


@dataclass
class ReportRow:
    label: str
    criterion: int
    computed: float
    reference: float
    abs_err: float
    rel_err: float
    tolerance: str
    status: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("computed", "reference", "abs_err", "rel_err"):
            if isinstance(d[k], float) and not math.isfinite(d[k]):
                d[k] = None if math.isnan(d[k]) else ("-inf" if d[k] < 0 else "inf")
        return d


def _row(label, criterion, computed, reference, ok, tolerance, note="") -> ReportRow:
    abs_err = abs(computed - reference)
    rel_err = abs_err / abs(reference) if reference else (0.0 if abs_err == 0 else math.inf)
    return ReportRow(label, criterion, float(computed), float(reference), float(abs_err), float(rel_err),
                     tolerance, "pass" if ok else "fail", note)


def brute_force_counting_error(n: int) -> Fraction:
    """Bayes error over every one of the 2^(2n) up/down records, in rationals.

    Under the exact-count recipe each record with n ups has probability
    1/C(2n, n) and all others 0; under fair coin flips every record has 4^-n.
    """
    m = 2 * n
    p_exact = Fraction(1, math.comb(m, n))
    p_coin = Fraction(1, 2**m)
    total = Fraction(0)
    for record in range(2**m):
        pa = p_exact if record.bit_count() == n else Fraction(0)
        total += min(pa, p_coin)
    return total / 2


def check_two_photon_mixtures() -> ReportRow:
    rho1, rho2 = fock.two_photon_mixtures()
    res = disc.helstrom_error(rho1, rho2)
    tn = trace_norm(rho1.matrix - rho2.matrix)
    ok = abs(res.p_error - 0.375) <= 1e-12 and abs(tn - 0.5) <= 1e-12
    return _row("Two-photon mixtures: Helstrom error 3/8", 1, res.p_error, 0.375, ok, "abs 1e-12",
                f"trace norm {tn!r}")


def check_counting_exact() -> ReportRow:
    mismatches = [n for n in range(1, 9) if Fraction(disc.counting_test_error(n)) != brute_force_counting_error(n)]
    pins = {1: Fraction(1, 4), 2: Fraction(3, 16), 4: Fraction(35, 256)}
    pinned = all(Fraction(disc.counting_test_error(n)) == v for n, v in pins.items())
    ok = not mismatches and pinned
    return _row("Counting-test error vs brute force, N=1..8", 2, disc.counting_test_error(4), 35 / 256, ok,
                "exact rational", f"mismatched N: {mismatches}" if mismatches else "all N=1..8 exact")


def check_counting_asymptote() -> ReportRow:
    gaps = [abs(disc.counting_test_error(n) * 2 * math.sqrt(math.pi * n) - 1) for n in (10, 100, 1000)]
    ok = gaps[-1] < 1e-3 and gaps[0] > gaps[1] > gaps[2]
    return _row("Counting-test asymptote 1/(2 sqrt(pi N)) at N=1000", 3, gaps[-1], 0.0, ok, "abs 1e-3, decreasing",
                "gaps N=10,100,1000: " + ", ".join(f"{g:.3e}" for g in gaps))


def check_qubit_overlap() -> ReportRow:
    worst = 0.0
    for n in range(1, 6):
        s = abs(overlap(type1_product_state(balanced_type1(n, Z)), type1_product_state(balanced_type1(n, X))))
        worst = max(worst, abs(s - 2.0**-n))
    worst_formula = max(abs(distinguishable_overlap(n) * 2**n - 1) for n in range(1, 21))
    ok = worst <= 1e-12 and worst_formula <= 1e-12
    return _row("Qubit product-state overlap 2^-N", 4, worst, 0.0, ok, "abs 1e-12",
                f"tensor N<=5; product formula rel err to N=20: {worst_formula:.2e}")


def check_photon_overlap() -> ReportRow:
    worst_even, worst_n = 0.0, None
    for n in range(2, 31, 2):
        expanded = fock.fock_overlap_expansion(n)
        closed = fock.fock_overlap_closed_form(n)
        rel = abs(expanded - closed) / closed
        if rel > worst_even:
            worst_even, worst_n = rel, n
    worst_odd = max(fock.fock_overlap_expansion(n) for n in range(1, 32, 2))
    ok = worst_even <= 1e-9 and worst_odd <= 1e-12
    row = _row("Photon-state overlap: expansion vs closed form", 5,
               fock.fock_overlap_expansion(2), fock.fock_overlap_closed_form(2), ok,
               "rel 1e-9 (even N<=30), abs 1e-12 (odd N<=31)",
               f"worst even rel err {worst_even:.3e} at N={worst_n}; worst odd |overlap| {worst_odd:.1e}")
    return row


def check_pure_state_formula(pairs: int = 100) -> ReportRow:
    rng = np.random.default_rng(REPORT_SEED)
    worst = 0.0
    for _ in range(pairs):
        dim = int(rng.integers(2, 17))
        psi, phi = random_state(dim, rng), random_state(dim, rng)
        h = disc.helstrom_error(DensityOperator.pure(psi), DensityOperator.pure(phi)).p_error
        worst = max(worst, abs(h - disc.pure_state_error(abs(overlap(psi, phi)))))
    return _row("Pure-state formula vs Helstrom on random pairs", 6, worst, 0.0, worst <= 1e-10, "abs 1e-10",
                f"{pairs} pairs, dims 2-16")


def check_distinguishable_error() -> ReportRow:
    worst = 0.0
    for n in range(2, 31):
        exact, approx = disc.distinguishable_particles_error(n)
        worst = max(worst, abs(exact - approx) / approx / 4.0**-n)
    exact1, approx1 = disc.distinguishable_particles_error(1)
    ok = worst < 1 and abs(exact1 - 0.06699) < 5e-6 and approx1 == 0.0625
    return _row("Distinguishable-qubit error vs 2^-(2N+2)", 7, exact1, 0.06699, ok,
                "rel gap < 4^-N (N>=2); N=1 to 5e-6",
                f"max (rel gap)/4^-N over N=2..30: {worst:.4f}")


def check_photon_error() -> ReportRow:
    diffs = []
    for n in (10, 20, 30):
        exact, asym = disc.photon_error(n)
        diffs.append(abs(exact.log10 - asym.log10))
    odd_zero = all(disc.photon_error(n)[0].value == 0.0 for n in range(1, 32, 2))
    ok = max(diffs) < 0.1 and odd_zero
    return _row("Photon error asymptote (log10)", 8, max(diffs), 0.0, ok, "abs 0.1 in log10",
                "N=10,20,30: " + ", ".join(f"{d:.4f}" for d in diffs))


def check_maximally_mixed() -> ReportRow:
    rz = single_particle_density(balanced_type2(Z))
    rx = single_particle_density(balanced_type2(X))
    tn = trace_norm(rz.matrix - rx.matrix)
    p = disc.helstrom_error(rz, rx).p_error
    ok = tn < 1e-14 and abs(p - 0.5) <= 1e-14
    return _row("Balanced type-2 z vs x: identical 1/2", 9, p, 0.5, ok, "abs 1e-14", f"trace norm {tn:.1e}")


def check_monte_carlo(trials: int = 10**6, seed: int = REPORT_SEED) -> ReportRow:
    scenario = Scenario(balanced_type1(4, Z), balanced_type2(Z), Z, trials, seed)
    first = estimate_error(scenario)
    second = estimate_error(scenario)
    p = 35 / 256
    band = 4 * math.sqrt(p * (1 - p) / trials)
    ok = abs(first.p_hat - p) <= band and first == second
    return _row("Monte Carlo counting test at N=4", 10, first.p_hat, p, ok, f"abs 4 sigma = {band:.3e}",
                f"seed {seed}, {trials} trials, rerun identical: {first == second}")


def dual_backend_polynomials():
    """Homogeneous test polynomials of total degree up to 40."""
    plus = fock.CreationPolynomial({(1, 0): 1, (0, 1): 1})
    minus = fock.CreationPolynomial({(1, 0): -1, (0, 1): 1})
    for n in range(1, 21):
        yield f"psi2({n})", fock.psi2_polynomial(n)
        yield f"psi1({n})", fock.psi1_polynomial(n)
    for d in range(1, 41):
        for k in range(0, d + 1, max(1, d // 4)):
            yield f"plus^{k} minus^{d - k}", fock.poly_multiply(fock.poly_power(plus, k), fock.poly_power(minus, d - k))


def max_backend_disagreement() -> float:
    worst = 0.0
    for _, poly in dual_backend_polynomials():
        exact = fock.apply_to_vacuum(poly, "exact").amplitudes
        logd = fock.apply_to_vacuum(poly, "log").amplitudes
        nz = exact != 0
        if np.any(logd[~nz] != 0):
            return math.inf
        worst = max(worst, float(np.max(np.abs(logd[nz] - exact[nz]) / np.abs(exact[nz]))))
    return worst


def check_dual_backend() -> ReportRow:
    worst = max_backend_disagreement()
    return _row("Fock amplitudes: exact vs log-domain backend", 11, worst, 0.0, worst <= 1e-12,
                "rel 1e-12, degree <= 40")


CHECKS: list[Callable[[], ReportRow]] = [
    check_two_photon_mixtures,
    check_counting_exact,
    check_counting_asymptote,
    check_qubit_overlap,
    check_photon_overlap,
    check_pure_state_formula,
    check_distinguishable_error,
    check_photon_error,
    check_maximally_mixed,
    check_monte_carlo,
    check_dual_backend,
]


def reproduce_all() -> list[ReportRow]:
    return [check() for check in CHECKS]


def format_table(rows: list[ReportRow]) -> str:
    lines = [f"{'#':>2}  {'status':6}  {'computed':>22}  {'reference':>22}  {'abs_err':>9}  label"]
    for r in rows:
        lines.append(
            f"{r.criterion:>2}  {r.status.upper():6}  {r.computed!r:>22}  {r.reference!r:>22}  "
            f"{r.abs_err:9.2e}  {r.label}"
        )
        lines.append(f"{'':>10}tolerance: {r.tolerance}" + (f"; {r.note}" if r.note else ""))
    n_pass = sum(r.passed for r in rows)
    lines.append(f"{n_pass}/{len(rows)} rows pass")
    return "\n".join(lines)
