"""Acceptance criteria, one test each.

Every test prints a ``criterion k PASS/FAIL`` line (visible with ``-s``); the
conftest hook repeats the outcomes as a summary at the end of every run.
"""
import itertools
import random
import time
from fractions import Fraction

import pytest

from xhahnjacobi import exceptional_hahn as xh
from xhahnjacobi import exceptional_jacobi as xj
from xhahnjacobi.classical import (dual_hahn, dual_hahn_measure, dual_hahn_norm, hahn, jacobi,
                                   verify_duality_hahn_dualhahn)
from xhahnjacobi.family import FamilySpec
from xhahnjacobi.krall import KrallSpec, nu_measure
from xhahnjacobi.legendre import legendre_matches
from xhahnjacobi.perturbed import (hh, hh_expansion, hh_leading_coefficient, hh_window2_closed_form,
                                   pp, pp_expansion, pp_leading_coefficient,
                                   pp_window2_closed_form, windows)


def announce(number, ok, detail=""):
    print(f"criterion {number} {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    return ok


def hahn_test_specs():
    specs = [FamilySpec(-2, -1, (1, 2), {0: m}, 8) for m in (2, 3, Fraction(1, 2))]
    specs.append(FamilySpec(-2, -2, (2, 3), {0: 2, 1: 3}, 9))
    return specs


def jacobi_test_specs():
    return [s.with_N(None) for s in hahn_test_specs()]


@pytest.mark.criterion(1, "Hahn / dual Hahn duality, 0 <= n, m <= 8, 5 parameter draws, < 10 s")
def test_criterion_01_classical_duality():
    draws = [(1, 1, 5), (Fraction(1, 2), Fraction(3, 2), 8), (2, Fraction(-1, 3), Fraction(17, 2)),
             (-2, -1, 8), (-3, -2, 10)]
    start = time.perf_counter()
    bad = [(a, b, N, n, m) for a, b, N in draws for n in range(9) for m in range(9)
           if not verify_duality_hahn_dualhahn(n, m, a, b, N)]
    elapsed = time.perf_counter() - start
    assert announce(1, not bad and elapsed < 10, f"mismatches={len(bad)} time={elapsed:.2f}s")


@pytest.mark.criterion(2, "dual Hahn Gram matrix diagonal with closed-form norms (a=b=1, N=5)")
def test_criterion_02_dual_hahn_gram():
    a, b, N = 1, 1, 5
    measure = dual_hahn_measure(a, b, N)
    polys = [dual_hahn(n, a, b, N) for n in range(N + 1)]
    gram = measure.gram(polys)
    ok = all(gram[i][j] == (dual_hahn_norm(i, a, b, N) if i == j else 0)
             for i in range(N + 1) for j in range(N + 1))
    assert announce(2, ok)


@pytest.mark.criterion(3, "jet construction equals explicit expansions, -4 <= ax <= bx <= -1, n <= 8")
def test_criterion_03_jets_match_expansions():
    failures = []
    for N in (Fraction(7), Fraction(23, 3)):
        for ax, bx in itertools.combinations_with_replacement(range(-4, 0), 2):
            M = {i: Fraction(i + 2, 3) if i != 1 else Fraction(5) for i in range(-bx)}
            first, second = windows(ax, bx)
            for n in range(9):
                h, p = hh(n, ax, bx, N, M), pp(n, ax, bx, M)
                if h.degree != n or h.lc != hh_leading_coefficient(n, ax, bx):
                    failures.append(("hahn degree", ax, bx, n))
                if p.degree != n or p.lc != pp_leading_coefficient(n, ax, bx):
                    failures.append(("jacobi degree", ax, bx, n))
                if n in first:
                    expected = (hh_expansion(n, ax, bx, N), pp_expansion(n, ax, bx))
                elif n in second:
                    expected = (hh_window2_closed_form(n, ax, bx, N, M), pp_window2_closed_form(n, ax, bx, M))
                else:
                    expected = (hahn(n, ax, bx, N), jacobi(n, ax, bx))
                if (h, p) != expected:
                    failures.append(("value", ax, bx, n, N))
    assert announce(3, not failures, f"failures={failures[:3]}")


@pytest.mark.criterion(4, "duality with the Krall dual Hahn family on the n, v grid, < 60 s")
def test_criterion_04_lemma_duality_grid():
    start = time.perf_counter()
    bad = []
    for spec in hahn_test_specs():
        for n in range(6):
            for v in range(7):
                if v not in spec.F and not xh.verify_krall_duality(spec, n, v):
                    bad.append((spec.to_json(), n, v))
    elapsed = time.perf_counter() - start
    assert announce(4, not bad and elapsed < 60, f"mismatches={len(bad)} time={elapsed:.2f}s")


@pytest.mark.criterion(5, "exceptional Hahn eigenvalue equation, n <= 8")
def test_criterion_05_hahn_eigencheck():
    bad = [(spec.to_json(), n) for spec in hahn_test_specs() for n in spec.degrees(8)
           if not xh.eigen_residual(n, spec).is_zero()]
    assert announce(5, not bad, f"nonzero residuals={len(bad)}")


@pytest.mark.criterion(6, "exceptional Hahn Gram matrix exact, closed-form norms, positive masses")
def test_criterion_06_hahn_orthogonality():
    problems = []
    for spec in hahn_test_specs():
        measure = xh.orthogonality_measure(spec)
        if not measure.is_positive():
            problems.append(("masses", spec.to_json()))
        degrees = xh.sigma_N(spec)
        gram = measure.gram([xh.xhahn(n, spec) for n in degrees])
        for i, n in enumerate(degrees):
            for j in range(len(degrees)):
                want = xh.xhahn_norm(n, spec) if i == j else 0
                if gram[i][j] != want:
                    problems.append(("gram", spec.to_json(), n, degrees[j]))
    assert announce(6, not problems, f"problems={problems[:3]}")


def random_admissibility_specs(count, seed=7):
    """Random specs with N >= max(max F, a + b)."""
    rng = random.Random(seed)
    values = [Fraction(-3), Fraction(-1, 2), Fraction(1, 3), Fraction(2), Fraction(5)]
    specs = []
    for _ in range(count):
        ax = rng.randint(-3, -1)
        bx = rng.randint(ax, -1)
        forced = list(range(-bx, -ax - bx))
        extras = [f for f in range(1, -ax - bx + 4) if f not in forced]
        chosen = rng.sample(extras, rng.randint(0, min(2, len(extras))))
        F = tuple(sorted(forced + chosen))
        N = rng.randint(max(max(F), -ax - bx), max(F) + 4)
        specs.append(FamilySpec(ax, bx, F, {i: rng.choice(values) for i in range(-bx)}, N))
    return specs


@pytest.mark.criterion(7, "three admissibility predicates agree on a random grid of >= 50 specs")
def test_criterion_07_admissibility_equivalence():
    specs = random_admissibility_specs(80)
    rows = [(nu_measure(KrallSpec.from_family(s)).is_positive(), xh.admissible(s), xh.admissible_via_omega(s))
            for s in specs]
    disagree = [s.to_json() for s, r in zip(specs, rows) if len(set(r)) != 1]
    both = {r[0] for r in rows}
    assert announce(7, not disagree and len(specs) >= 50,
                    f"specs={len(specs)} disagreements={len(disagree)} outcomes seen={sorted(both)}")


@pytest.mark.criterion(8, "exceptional Jacobi eigenvalue equation, n <= 8")
def test_criterion_08_jacobi_eigencheck():
    bad = [(spec.to_json(), n) for spec in jacobi_test_specs() for n in spec.degrees(8)
           if not xj.eigen_residual(n, spec).is_zero()]
    assert announce(8, not bad, f"nonzero residuals={len(bad)}")


@pytest.mark.criterion(9, "quadrature orthogonality < 1e-10, norms < 1e-8 relative, 200 and 400 nodes, < 120 s")
def test_criterion_09_jacobi_quadrature():
    start = time.perf_counter()
    reports = [xj.verify_xjacobi_orthogonality(spec, spec.uF + 8, nodes=200)
               for spec in (jacobi_test_specs()[0], jacobi_test_specs()[3])]
    elapsed = time.perf_counter() - start
    worst_orth = max(max(r.orthogonality_residual, r.doubled_orthogonality_residual) for r in reports)
    worst_norm = max(max(r.norm_residual, r.doubled_norm_residual) for r in reports)
    ok = all(r.passed for r in reports) and worst_orth < 1e-10 and worst_norm < 1e-8 and elapsed < 120
    assert announce(9, ok, f"orth={worst_orth:.1e} norm={worst_norm:.1e} time={elapsed:.1f}s")


def ratios_in_band(errors, lo=0.3, hi=0.7):
    if not all(e > 0 for e in errors):
        return False
    ratios = [errors[k + 1] / errors[k] for k in range(len(errors) - 1)]
    return all(lo <= r <= hi for r in ratios)


@pytest.mark.criterion(10, "Hahn to Jacobi limit errors shrink by ratios in [0.3, 0.7] over N = 50, 100, 200")
def test_criterion_10_limit_rates():
    bad = []
    samples = (Fraction(0), Fraction(1, 3), Fraction(-2, 5))
    for spec in (jacobi_test_specs()[0], jacobi_test_specs()[3]):
        for n in [d for d in spec.degrees(spec.uF + 6) if d > spec.uF][:2]:
            for x in samples:
                errors = [xj.hahn_to_xjacobi_limit_error(n, spec, N, x) for N in (50, 100, 200)]
                if not ratios_in_band(errors):
                    bad.append(("member", spec.to_json(), n, x))
        for x in samples:
            if not ratios_in_band([xj.omega_limit_error(spec, N, x) for N in (50, 100, 200)]):
                bad.append(("omega", spec.to_json(), x))
    assert announce(10, not bad, f"out of band={bad[:3]}")


@pytest.mark.criterion(11, "exceptional Legendre members proportional to Jacobi members, m1 in {1,2}, t in {1,1/2}")
def test_criterion_11_legendre_equivalence():
    bad = [(m1, t, mt) for m1 in (1, 2) for t in (Fraction(1), Fraction(1, 2))
           for mt in legendre_matches(m1, t, count=4) if not mt.proportional]
    assert announce(11, not bad, f"non-proportional={bad}")


def scan_grid():
    specs = []
    values = [Fraction(-3), Fraction(-1, 2), Fraction(1, 3), Fraction(2), Fraction(5)]
    for ax in range(-3, 0):
        for bx in range(ax, 0):
            forced = list(range(-bx, -ax - bx))
            extras = [f for f in range(1, -ax - bx + 3) if f not in forced]
            for k in range(0, 2):
                for chosen in itertools.combinations(extras, k):
                    F = tuple(sorted(forced + list(chosen)))
                    if not F:
                        continue
                    for Ms in itertools.product(values, repeat=-bx):
                        specs.append(FamilySpec(ax, bx, F, dict(enumerate(Ms))))
    return specs


@pytest.mark.criterion(12, "root free implies admissible on every scanned spec")
def test_criterion_12_rootfree_implies_admissible():
    specs = scan_grid()
    violations = []
    for spec in specs:
        try:
            xj.conjecture_scan([spec])
        except xj.ProvedDirectionViolation:
            violations.append(spec.to_json())
    assert announce(12, not violations and len(specs) > 100,
                    f"specs={len(specs)} violations={len(violations)}")
