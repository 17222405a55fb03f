"""Cross-check suites: every closed form against every other and against
brute-force enumeration, plus the numeric convergence and density checks.

Each check returns a :class:`CheckResult`; failures carry a witness (the
offending parameters and both values) so they can be reproduced.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import enumor, moments, spectral
from .config import current
from .qcore import ONE, QPoly, catalan

Fault = Callable[[str, tuple, object], object]


@dataclass
class CheckResult:
    name: str
    params: dict
    passed: bool
    witness: dict | None = None
    seconds: float = 0.0
    advisory: bool = False  # reported, never fails the run
    info: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.passed:
            return "pass"
        return "violation" if self.advisory else "FAIL"


@dataclass
class VerifyReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed or c.advisory for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        for c in self.checks:
            if not c.passed and not c.advisory:
                return c
        return None

    def rows(self) -> list[tuple]:
        return [
            (c.name, _params_text(c.params), c.status, f"{c.seconds:.3f}",
             _params_text(c.witness or {}), _params_text(c.info))
            for c in self.checks
        ]

    HEADER = ("check", "params", "status", "seconds", "witness", "info")


def _params_text(d: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in d.items())


def _timed(name: str, params: dict, fn, advisory: bool = False) -> CheckResult:
    t = time.perf_counter()
    witness, info = fn()
    return CheckResult(name, params, witness is None, witness, time.perf_counter() - t, advisory, info or {})


def _no_fault(_name, _key, value):
    return value


# ------------------------------------------------------------- exact ----


def check_triple_identity(pairs, budget=None, jobs=1, fault: Fault = _no_fault) -> CheckResult:
    pairs = list(pairs)

    def run():
        counts = []
        for p, j in pairs:
            pos = fault("positive", (p, j), moments.qgue_partial_positive(p, j))
            alt = moments.qgue_partial_alternating(p, j)
            orc = enumor.matching_sum(p, j, budget=budget, jobs=jobs)
            counts.append(f"({p},{j}):{enumor.count_matchings(2 * p + j, p, j)}")
            if not (pos == alt == orc):
                return {"p": p, "j": j, "positive": pos, "alternating": alt, "oracle": orc}, None
        return None, {"matchings": ",".join(counts)}

    return _timed("triple_identity", {"pairs": len(pairs)}, run)


def check_q1_degeneration(max_N=8, max_p=5, fault: Fault = _no_fault) -> CheckResult:
    def run():
        for N in range(1, max_N + 1):
            for p in range(0, max_p + 1):
                ref = moments.gue_moment_positive(N, p)
                vals = {
                    "gue_alternating": moments.gue_moment_alternating(N, p),
                    "gue_hypergeometric": moments.gue_moment_hypergeometric(N, p),
                    "qgue_positive": fault("positive_total", (N, p), moments.qgue_moment_positive(N, p)).evaluate(1),
                    "qgue_alternating": moments.qgue_moment_alternating(N, p).evaluate(1),
                }
                for k, v in vals.items():
                    if v != ref:
                        return {"N": N, "p": p, "form": k, "value": v, "gue_positive": ref}, None
        for p in range(0, max_p + 1):
            for j in range(0, max_N):
                ref = moments.gue_partial_positive(p, j)
                for k, v in {
                    "gue_partial_alternating": moments.gue_partial_alternating(p, j),
                    "qgue_partial_positive": moments.qgue_partial_positive(p, j).evaluate(1),
                    "qgue_partial_alternating": moments.qgue_partial_alternating(p, j).evaluate(1),
                }.items():
                    if v != ref:
                        return {"p": p, "j": j, "form": k, "value": v, "gue_partial_positive": ref}, None
        return None, None

    return _timed("q1_degeneration", {"max_N": max_N, "max_p": max_p}, run)


def check_gue_per_j(max_j=8, max_p=6) -> CheckResult:
    def run():
        for p in range(max_p + 1):
            for j in range(max_j + 1):
                a, b = moments.gue_partial_positive(p, j), moments.gue_partial_alternating(p, j)
                if a != b:
                    return {"p": p, "j": j, "positive": a, "alternating": b}, None
        return None, None

    return _timed("gue_per_j_identity", {"max_j": max_j, "max_p": max_p}, run)


def check_telescoping(max_N=8, max_p=4) -> CheckResult:
    def run():
        for p in range(1, max_p + 1):
            for j in range(1, max_N):
                lhs = moments.qgue_partial_alternating(p, j)
                rhs = moments.qgue_moment_alternating(j + 1, p) - moments.qgue_moment_alternating(j, p)
                if lhs != rhs:
                    return {"p": p, "j": j, "partial": lhs, "difference": rhs}, None
        return None, None

    return _timed("telescoping", {"max_N": max_N, "max_p": max_p}, run)


def check_harer_zagier(p_max=20, N_max=20) -> CheckResult:
    def run():
        if moments.harer_zagier_check(p_max, N_max):
            return None, None
        return {"p_max": p_max, "N_max": N_max}, None

    return _timed("harer_zagier", {"p_max": p_max, "N_max": N_max}, run)


GENUS_SPOTS = {(0, 3): 5, (1, 3): 10, (1, 4): 70, (2, 4): 21}


def check_genus(p_max=12, g_max=4, tr_p_max=10) -> CheckResult:
    def run():
        for p in range(p_max + 1):
            if not moments.genus_expansion_check(p):
                return {"check": "genus_expansion", "p": p}, None
            if not moments.odd_vanishing_check(p):
                return {"check": "odd_vanishing", "p": p}, None
        if not moments.topological_recursion_check(g_max, tr_p_max):
            return {"check": "topological_recursion", "g_max": g_max, "p_max": tr_p_max}, None
        for (g, p), v in GENUS_SPOTS.items():
            got = moments.genus_coefficient(g, p)
            if got != v:
                return {"check": "spot", "g": g, "p": p, "value": got, "expected": v}, None
        for p in range(p_max + 1):
            if moments.genus_coefficient(0, p) != catalan(p):
                return {"check": "catalan", "p": p}, None
        return None, None

    return _timed("genus_expansion", {"p_max": p_max, "g_max": g_max}, run)


def check_refined(max_p=3, max_j=5, budget=None) -> CheckResult:
    def run():
        n = 0
        for p in range(1, max_p + 1):
            for j in range(max_j + 1):
                total = QPoly(0)
                for i in range(min(p, j) + 1):
                    lhs = enumor.refined_sum(p, j, i, budget)
                    rhs = enumor.refined_rhs(p, j, i)
                    n += 1
                    if lhs != rhs:
                        return {"p": p, "j": j, "i": i, "enumerated": lhs, "closed_form": rhs}, None
                    total = total + lhs
                if total != enumor.matching_sum(p, j, budget=budget):
                    return {"p": p, "j": j, "refined_total": total}, None
        return None, {"cases": n}

    return _timed("refined_identity", {"max_p": max_p, "max_j": max_j}, run)


def check_marked_closer(max_sum=8, max_r=2, budget=None) -> CheckResult:
    def run():
        n = 0
        for p in range(1, max_sum + 1):
            for j in range(0, max_sum - p + 1):
                for r in range(0, min(max_r, p, j // 2) + 1):
                    lhs, rhs = enumor.marked_closer_sides(p, j, r, budget)
                    n += 1
                    if lhs != rhs:
                        return {"p": p, "j": j, "r": r, "lhs": lhs, "rhs": rhs}, None
        return None, {"cases": n}

    return _timed("marked_closer", {"max_sum": max_sum, "max_r": max_r}, run, advisory=True)


def exact_suite(max_p=4, max_j=5, max_N=8, budget=None, jobs=1, fault: Fault = _no_fault) -> VerifyReport:
    rep = VerifyReport()
    pairs = [(p, j) for p in range(1, max_p + 1) for j in range(max_j + 1)]
    rep.checks.append(check_triple_identity(pairs, budget, jobs, fault))
    rep.checks.append(check_q1_degeneration(max_N, min(max_p + 1, 5), fault))
    rep.checks.append(check_gue_per_j(max(8, max_j), 6))
    rep.checks.append(check_telescoping(max_N, max_p))
    rep.checks.append(check_harer_zagier())
    rep.checks.append(check_genus())
    rep.checks.append(check_refined(min(max_p, 3), max_j, budget))
    rep.checks.append(check_marked_closer(min(8, max_p + max_j), 2, budget))
    return rep


# ------------------------------------------------------------- numeric ----

LAMBDAS = (0.3, math.log(2.0), 2.0)
CONV_NS = (100, 200, 400, 800)


def convergence_errors(p: int, lam: float, Ns=CONV_NS) -> list[float]:
    c = spectral.asym_coeffs(p, lam)
    return [abs(moments.scaled_moment(N, p, lam) - c.predict(N)) for N in Ns]


def check_convergence(ps=(1, 2, 3, 4), lams=LAMBDAS, min_ratio=6.0, growth=10.0) -> CheckResult:
    def run():
        worst = math.inf
        for p in ps:
            for lam in lams:
                E = convergence_errors(p, lam)
                ratios = [E[i] / E[i + 1] for i in range(len(E) - 1)]
                worst = min(worst, *ratios)
                bounded = E[-1] * CONV_NS[-1] ** 3 <= growth * E[0] * CONV_NS[0] ** 3
                if min(ratios) < min_ratio or not bounded:
                    return {"p": p, "lambda": lam, "errors": E, "ratios": ratios}, None
        return None, {"min_ratio": round(worst, 4)}

    return _timed("asymptotic_convergence", {"ps": list(ps)}, run)


def check_density_moments(ps=range(1, 7), lams=LAMBDAS, tol=None, norm_tol=1e-10) -> CheckResult:
    tol = current().acceptance if tol is None else tol

    def run():
        for lam in lams:
            n = spectral.density_moment_check(0, lam)
            if n >= norm_tol:
                return {"lambda": lam, "p": 0, "error": n}, None
            for p in ps:
                e = spectral.density_moment_check(p, lam)
                if e >= tol:
                    return {"lambda": lam, "p": p, "error": e}, None
        return None, None

    return _timed("density_moments", {"tol": tol}, run)


def check_lattice(max_N=4, max_p=3, qs=(0.3, 0.5), tol=1e-10) -> CheckResult:
    def run():
        for q in qs:
            for N in range(1, max_N + 1):
                ld = spectral.lattice_density(N, q)
                if abs(ld.normalization() - N) >= tol:
                    return {"N": N, "q": q, "normalization": ld.normalization()}, None
                for p in range(1, max_p + 1):
                    exact = (1 - q) ** p * float(moments.qgue_moment_positive(N, p).evaluate(q))
                    got = ld.jackson_moment(p)
                    if abs(got - exact) >= tol:
                        return {"N": N, "q": q, "p": p, "jackson": got, "symbolic": exact}, None
        return None, None

    return _timed("lattice_consistency", {"max_N": max_N, "max_p": max_p}, run)


def check_alternative_forms(max_p=4, max_j=5, qs=(0.3, 0.5, 0.8), tol=None) -> CheckResult:
    tol = current().acceptance if tol is None else tol

    def run():
        for q in qs:
            for p in range(1, max_p + 1):
                for j in range(max_j + 1):
                    ref = float(moments.qgue_partial_positive(p, j).evaluate(q))
                    for mode in ("flsy_double_sum", "cohen_3phi2"):
                        v = moments.qgue_alternative_forms(p, j, mode, q)
                        if abs(v - ref) > tol * max(1.0, abs(ref)):
                            return {"p": p, "j": j, "q": q, "mode": mode, "value": v, "symbolic": ref}, None
        return None, None

    return _timed("alternative_forms", {"max_p": max_p, "max_j": max_j}, run)


def rho1_samples(n=10, seed=20240601) -> list[tuple[float, float]]:
    """Deterministic ``(x, lam)`` pairs inside the bulk ``|x| < b(lam)``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        lam = rng.uniform(0.05, 3.0)
        b = spectral.support_edge(lam)
        x = rng.uniform(-0.95, 0.95) * b
        out.append((x, lam))
    return out


def check_rho1_oracle(samples=None, rel=1e-6) -> CheckResult:
    samples = rho1_samples() if samples is None else samples

    def run():
        worst = 0.0
        for x, lam in samples:
            a = spectral.density_rho1(x, lam)
            b = spectral.density_rho1_oracle(x, lam)
            err = abs(a - b) / abs(b)
            worst = max(worst, err)
            if err >= rel:
                return {"x": x, "lambda": lam, "finite_part": a, "oracle": b}, None
        return None, {"worst_rel": f"{worst:.2e}"}

    return _timed("rho1_oracle", {"samples": len(samples)}, run)


def check_continuum(lam=1e-3, max_p=5) -> CheckResult:
    def run():
        for p in range(1, max_p + 1):
            e0, e1 = spectral.continuum_limit_check(p, lam)
            if abs(e0 - catalan(p)) / catalan(p) >= 1e-2:
                return {"p": p, "M0_over_lam_p": e0, "catalan": catalan(p)}, None
            g1 = float(moments.genus_coefficient(1, p))
            if abs(e1 - g1) >= 1e-2 * max(1.0, g1):
                return {"p": p, "combination": e1, "genus_one": g1}, None
        for x in (0.0, 1.0, -1.0, 1.9, -1.9):
            if spectral.semicircle_limit_check(lam, x) >= 1e-2:
                return {"x": x, "gap": spectral.semicircle_limit_check(lam, x)}, None
        return None, None

    return _timed("continuum_limits", {"lambda": lam}, run)


def numeric_suite() -> VerifyReport:
    rep = VerifyReport()
    rep.checks.append(check_convergence())
    rep.checks.append(check_density_moments())
    rep.checks.append(check_lattice())
    rep.checks.append(check_alternative_forms())
    rep.checks.append(check_rho1_oracle())
    rep.checks.append(check_continuum())
    return rep


def bump_constant(target: tuple) -> Fault:
    """Fault injector that adds 1 to the constant coefficient of one positive-form value."""

    def fault(name, key, value):
        if name == "positive" and key == target:
            return value + ONE
        return value

    return fault


__all__ = [
    "CheckResult", "VerifyReport", "exact_suite", "numeric_suite", "bump_constant",
    "check_triple_identity", "check_q1_degeneration", "check_gue_per_j", "check_telescoping",
    "check_harer_zagier", "check_genus", "check_refined", "check_marked_closer",
    "check_convergence", "check_density_moments", "check_lattice", "check_alternative_forms",
    "check_rho1_oracle", "check_continuum", "convergence_errors", "rho1_samples",
]
